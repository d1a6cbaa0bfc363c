"""
Rank potential checks of the pairings of an extract_min.

Before an extract_min, the children of the root form a chain of trees.
Only the white counts of these trees are needed to know `s` of every node
involved in a pairing: the `s` of a tree root in the chain is the white
count of its tree plus those of all trees to its right. :func:`replay_combine`
follows the pairing events through the chain and checks every pairing with
:func:`check_pairing_rank`.

For a pairing of `a` (left) with `b` (right), with `c` the right neighbour
of `b` before the pairing, the rank gain
`r(winner) + r(loser) - r(a) - r(b)` must not exceed

* (i) `36 log2 s(a) - 36 log2 s(c) - 36` when `a` and `b` are white;
* (ii) `36 log2 s(a) - 36 log2 s(b)`;
* (iii) `36 log2 s(a) - 36 log2 s(c)`.

A missing `c` counts as a lone black node with `s(c) = 1`, and every `s`
below 1 is raised to 1 inside the logarithms.

.. autofunction:: pairaudit.audit.check_pairing_rank
"""

import math

from pairaudit.pairaudit_types import PairingCheck
from pairaudit.heap import FIRST_PASS, SECOND_PASS
from pairaudit.audit.potential import rank_of


PAIR_BOUND_FACTOR = 36.0


def _log2(s):
    return math.log2(max(s, 1))


def check_pairing_rank(event, s_before, s_after, white, tolerance=1e-6):
    """
    Checks the rank gain of one pairing.

    Parameters
    ----------
    event : PairingEvent
        The pairing.
    s_before : tuple of int
        `s(a)`, `s(b)` and `s(c)` just before the pairing, where `a` is
        `event.left` and `b` is `event.right`. `s(c)` is None if `b` has no
        right neighbour.
    s_after : tuple of int
        `s(winner)` and `s(loser)` just after the pairing.
    white : collection
        Handles of the white nodes.
    tolerance : float, optional
        Absolute tolerance of the comparisons.
        Default: 1e-6

    Returns
    -------
    PairingCheck
        `checks` maps 'ii' and 'iii', and 'i' for white-white pairings, to
        (bound, passed) tuples.
    """
    s_a, s_b, s_c = s_before
    s_c = 1 if s_c is None else s_c
    s_w, s_l = s_after

    gain = (rank_of(s_w, event.winner in white) +
            rank_of(s_l, event.loser in white) -
            rank_of(s_a, event.left in white) -
            rank_of(s_b, event.right in white))

    log_a, log_b, log_c = _log2(s_a), _log2(s_b), _log2(s_c)
    bounds = {}
    if event.left in white and event.right in white:
        bounds['i'] = PAIR_BOUND_FACTOR * (log_a - log_c) - PAIR_BOUND_FACTOR
    bounds['ii'] = PAIR_BOUND_FACTOR * (log_a - log_b)
    bounds['iii'] = PAIR_BOUND_FACTOR * (log_a - log_c)

    checks = {name: (bound, gain <= bound + tolerance)
              for name, bound in bounds.items()}
    return PairingCheck(op_index=event.op_index, event=event, s_a=s_a,
                        s_b=s_b, s_c=s_c, gain=gain, checks=checks)


class CombineMismatch(Exception):
    """ Pairing events do not follow the two-pass order of the chain. """


def replay_combine(trees, events, white, tolerance=1e-6):
    """
    Follows the pairings of an extract_min over the chain of trees.

    Parameters
    ----------
    trees : list of tuple
        (root handle, white count of the tree) of the children of the
        removed root, from left to right.
    events : list of PairingEvent
        Pairings of the operation tagged 'first' or 'second', in order.
    white : collection
        Handles of the white nodes.
    tolerance : float, optional
        Absolute tolerance of the comparisons.
        Default: 1e-6

    Returns
    -------
    checks : list of PairingCheck
    w : int
        Number of first pass pairings with two white nodes.
    first_gain : float
        Rank gain of the first pass.
    total_gain : float
        Rank gain of both passes.

    Raises
    ------
    CombineMismatch
        If an event does not pair the trees expected at that point.
    """
    chain = [list(tree) for tree in trees]
    checks = []
    w = 0
    first_gain = 0.0
    total_gain = 0.0
    events = iter(events)

    def suffix(position):
        return sum(count for _, count in chain[position:])

    def pair(position, expected_pass):
        event = next(events, None)
        left, right = chain[position], chain[position + 1]
        if (event is None or event.pass_ != expected_pass or
                event.left != left[0] or event.right != right[0]):
            raise CombineMismatch(f"expected {expected_pass} pairing of "
                                  f"{left[0]} with {right[0]}, got {event}")
        s_a = suffix(position)
        s_b = s_a - left[1]
        s_c = s_b - right[1] if position + 2 < len(chain) else None
        merged = left[1] + right[1]
        s_l = merged - (1 if event.winner in white else 0)
        check = check_pairing_rank(event, (s_a, s_b, s_c), (s_a, s_l),
                                   white, tolerance=tolerance)
        chain[position:position + 2] = [[event.winner, merged]]
        return check

    position = 0
    while position + 1 < len(chain):
        check = pair(position, FIRST_PASS)
        checks.append(check)
        first_gain += check.gain
        if 'i' in check.checks:
            w += 1
        position += 1
    total_gain = first_gain

    while len(chain) > 1:
        check = pair(len(chain) - 2, SECOND_PASS)
        checks.append(check)
        total_gain += check.gain

    if next(events, None) is not None:
        raise CombineMismatch("more pairings than the chain allows")
    return checks, w, first_gain, total_gain
