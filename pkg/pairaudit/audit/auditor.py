"""
Offline audit of the amortized costs of a trace.

The audit replays the trace twice. The first replay colors the nodes
(:func:`pairaudit.audit.color_nodes`). The second replay computes the
potential of the forest after every operation and checks, with an absolute
tolerance, that the actual cost plus the change of potential stays within
the amortized bound of the operation:

============  =========================================
operation     bound on `a + delta_phi`
============  =========================================
make_heap     21
insert        21
meld          0
find_min      1 (with `delta_phi` exactly 0 and `a` 1)
decrease_key  26 + 24 log2(n)
extract_min   102 log2(n + 1) + 17
delete        43 + 126 log2(n + 2)
============  =========================================

where `n` is the size of the heap after the operation. An insert into a
heap right after its make_heap is also checked as one single-node heap
creation (cost 1, bound 21).

Every pairing of an extract_min (and of a delete of the root) is checked
with :func:`pairaudit.audit.check_pairing_rank`, and the rank gain of the
whole operation must not exceed `54 log2(n) - 36 w`, where `w` counts the
first pass pairings of two white nodes (`36 log2(n) - 36 w` for the first
pass alone). No pairing may involve a node whose general-tree parent is
black. Finally the potential starts at 0, ends nonnegative, and the sum of
the actual costs does not exceed the sum of the bounds.

Failed checks are collected in the report; they are not raised.

.. autofunction:: pairaudit.audit.audit_trace

.. autoclass:: pairaudit.audit.AuditReport
    :members:
"""

import logging
import math

from tqdm import tqdm

from pairaudit.pairaudit_types import (AuditEntry, AuditFailure,
                                       ExtractStats, PairingEvent)
from pairaudit.exceptions import AuditLimitError
from pairaudit.heap import PairingForest, FIRST_PASS, SECOND_PASS
from pairaudit.settings import pairaudit_setting
from pairaudit.trace.format import serialize_trace
from pairaudit.trace.replay import TraceReplayer
from pairaudit.audit.potential import (color_nodes, HeapState,
                                       snapshot_potential, WHITE, BLACK)
from pairaudit.audit.rank import replay_combine, CombineMismatch
from pairaudit.utils.files import text_sha256


# Create logger and set configuration
logger = logging.getLogger(__file__)
log_handler = logging.StreamHandler()
log_handler.setFormatter(logging.Formatter("[%(asctime)s] "
                                           "pairaudit.audit.auditor -"
                                           " %(levelname)s: %(message)s"))
logger.addHandler(log_handler)
logger.propagate = False


MAKE_HEAP_BOUND = 21.0
INSERT_BOUND = 21.0
MELD_BOUND = 0.0
FIND_MIN_BOUND = 1.0
FIRST_PASS_RANK_FACTOR = 36.0
TOTAL_RANK_FACTOR = 54.0
WHITE_PAIR_RANK_CREDIT = 36.0

# Tolerance of the comparison between incremental and from-scratch potential
SNAPSHOT_TOLERANCE = 1e-9


def amortized_bound(kind, n):
    """
    Amortized bound of an operation.

    Parameters
    ----------
    kind : str
        Operation name.
    n : int
        Size of the heap after the operation.

    Returns
    -------
    float
    """
    if kind in ('make_heap', 'insert'):
        return INSERT_BOUND
    if kind == 'meld':
        return MELD_BOUND
    if kind == 'find_min':
        return FIND_MIN_BOUND
    if kind == 'decrease_key':
        return 26.0 + 24.0 * math.log2(max(n, 1))
    if kind == 'extract_min':
        return 102.0 * math.log2(n + 1) + 17.0
    if kind == 'delete':
        return 43.0 + 126.0 * math.log2(n + 2)
    raise ValueError(f"unknown operation {kind!r}")


class AuditReport(object):
    """
    Result of :func:`audit_trace`.

    Attributes
    ----------
    entries : list of AuditEntry
        One entry per operation with its actual cost `a`, heap size `n`,
        change of potential, bound and slack `bound - (a + delta_phi)`.
    pairing_checks : list of PairingCheck
        Rank checks of the pairings of every extract_min.
    extract_stats : list of ExtractStats
        Children count, white-white pairings and rank gains of every
        extract_min.
    failures : list of AuditFailure
        Every failed check.
    phi0, phim : float
        Potential before the first and after the last operation.
    sum_a, sum_bound : float
        Sums of the actual costs and of the bounds.
    trace_sha256 : str
        Fingerprint of the audited trace.
    tolerance : float
        Tolerance used in the checks.
    """

    def __init__(self, tolerance, trace_sha256):
        self.tolerance = tolerance
        self.trace_sha256 = trace_sha256
        self.entries = []
        self.pairing_checks = []
        self.extract_stats = []
        self.failures = []
        self.phi0 = 0.0
        self.phim = 0.0
        self.sum_a = 0.0
        self.sum_bound = 0.0

    @property
    def passed(self):
        return not self.failures

    @property
    def verdict(self):
        return 'pass' if self.passed else 'fail'

    @property
    def min_slack(self):
        """ Smallest slack over all operations, None for an empty trace. """
        if not self.entries:
            return None
        return min(entry.slack for entry in self.entries)

    def fail(self, op_index, check, detail):
        failure = AuditFailure(op_index, check, detail)
        self.failures.append(failure)
        logger.warning("operation %s: %s failed: %s", op_index, check, detail)

    def summary(self):
        """ The summary record of the report. """
        return {'phi0': self.phi0,
                'phim': self.phim,
                'sum_a': self.sum_a,
                'sum_bound': self.sum_bound,
                'verdict': self.verdict,
                'failures': len(self.failures),
                'trace_sha256': self.trace_sha256}

    def to_records(self):
        """
        Returns the report as a list of dictionaries: one per operation with
        the keys op_index, kind, a, n, delta_phi, bound and slack, followed
        by the summary record.
        """
        records = [{'op_index': entry.op_index,
                    'kind': entry.kind,
                    'a': entry.a,
                    'n': entry.n,
                    'delta_phi': entry.delta_phi,
                    'bound': entry.bound,
                    'slack': entry.slack} for entry in self.entries]
        records.append(self.summary())
        return records


class _Audit(object):
    # State of the second replay

    def __init__(self, colors, report, check_structure):
        self.colors = colors
        self.report = report
        self.tolerance = report.tolerance
        self.check_structure = check_structure
        self.replayer = TraceReplayer(PairingForest())
        self.forest = self.replayer.forest
        self.white = set()
        self.states = {}
        self.phi = 0.0
        self.last_make_heap = None

    def _forest_heap(self, heap_id):
        return self.replayer.heap_ids[heap_id]

    def _combine_trees(self, heap_id):
        # (handle, white count) of the children of the root, left to right
        state = self.states[heap_id]
        root = self.forest.root(heap_id)
        children = list(root.children())
        trees = []
        for child, right in zip(children, children[1:] + [None]):
            right_s = state.s_of(right.handle) if right is not None else 0
            trees.append((child.handle, state.s_of(child.handle) - right_s))
        return trees

    def _check_captures(self, op_index, events, detached, states):
        # No pairing may involve a node whose general-tree parent is black.
        # `states` hold the heaps before the operation.
        parents = {}
        for handle in detached:
            parents[handle] = None
        for event in events:
            for handle in (event.left, event.right):
                if handle in parents:
                    parent = parents[handle]
                else:
                    parent = None
                    for state in states:
                        if handle in state.index:
                            parent = state.parent_of(handle)
                            break
                if parent is not None and parent not in self.white:
                    self.report.fail(op_index, 'captured_pairing',
                                     f"node {self._name(handle)} is "
                                     f"captured by {self._name(parent)}")
            parents[event.loser] = event.winner

    def _name(self, handle):
        return self.replayer.trace_node(handle)

    def _recompute(self, heap_ids, removed=()):
        for heap_id in removed:
            self.states.pop(heap_id, None)
        for heap_id in heap_ids:
            self.states[heap_id] = HeapState(heap_id,
                                             self.forest.root(heap_id),
                                             self.white)
        phi = math.fsum(state.total for state in self.states.values())
        delta_phi = phi - self.phi
        self.phi = phi
        return delta_phi

    def _rank_checks(self, op_index, trees, events, n):
        report = self.report
        events = [event for event in events
                  if event.pass_ in (FIRST_PASS, SECOND_PASS)]
        try:
            checks, w, first_gain, total_gain = replay_combine(
                trees, events, self.white, tolerance=self.tolerance)
        except CombineMismatch as error:
            report.fail(op_index, 'pairing_order', str(error))
            return
        report.pairing_checks.extend(checks)
        for check in checks:
            for name, (bound, passed) in sorted(check.checks.items()):
                if not passed:
                    report.fail(op_index, f'pairing_rank_{name}',
                                f"gain {check.gain:.6f} > bound "
                                f"{bound:.6f} for pairing "
                                f"{self._name(check.event.left)}/"
                                f"{self._name(check.event.right)}")

        log_n = math.log2(max(n, 1))
        first_bound = FIRST_PASS_RANK_FACTOR * log_n - \
            WHITE_PAIR_RANK_CREDIT * w
        total_bound = TOTAL_RANK_FACTOR * log_n - WHITE_PAIR_RANK_CREDIT * w
        report.extract_stats.append(ExtractStats(
            op_index=op_index, c=len(trees), w=w, n=n,
            first_pass_gain=first_gain, total_gain=total_gain,
            first_pass_bound=first_bound, total_bound=total_bound))
        if first_gain > first_bound + self.tolerance:
            report.fail(op_index, 'first_pass_rank',
                        f"gain {first_gain:.6f} > {first_bound:.6f}")
        if total_gain > total_bound + self.tolerance:
            report.fail(op_index, 'extract_rank',
                        f"gain {total_gain:.6f} > {total_bound:.6f}")

    def _check_snapshot(self, op_index):
        report = self.report
        for problem in self.forest.verify():
            report.fail(op_index, 'structure', problem)
        for state in self.states.values():
            for problem in state.structure_problems():
                report.fail(op_index, 'potential_structure', problem)
        colors = {handle: WHITE if handle in self.white else BLACK
                  for handle in self.forest.handles()}
        snapshot = snapshot_potential(self.forest, colors)
        if abs(snapshot.phi - self.phi) > SNAPSHOT_TOLERANCE:
            report.fail(op_index, 'snapshot',
                        f"incremental potential {self.phi!r} differs from "
                        f"snapshot {snapshot.phi!r}")

    def step(self, op_index, operation):
        report = self.report
        kind = operation.kind
        forest = self.forest

        trees = None
        detached = ()
        if kind in ('extract_min', 'delete'):
            heap_id = self._forest_heap(operation.heap_args[0])
            root = forest.root(heap_id)
            if kind == 'extract_min' or \
                    root.handle == self.replayer.node_ids[operation.node_arg]:
                trees = self._combine_trees(heap_id)
        elif kind == 'decrease_key':
            detached = (self.replayer.node_ids[operation.node_arg],)
        removed = [self._forest_heap(heap_id)
                   for heap_id in operation.heap_args] \
            if kind == 'meld' else ()
        states_before = [self.states[self._forest_heap(heap_id)]
                         for heap_id in operation.heap_args]

        self.replayer.apply(operation)
        log = forest.drain_events()
        cost = forest.last_cost
        events = [item for item in log if isinstance(item, PairingEvent)]

        if kind == 'insert':
            handle = self.replayer.node_ids[operation.out]
            if self.colors.get(operation.out) == WHITE:
                self.white.add(handle)
        delta_phi = self._recompute([cost.heap], removed)

        a = cost.actual_cost
        n = cost.heap_size_after
        bound = amortized_bound(kind, n)
        slack = bound - (a + delta_phi)
        report.entries.append(AuditEntry(op_index=op_index, kind=kind, a=a,
                                         n=n, pairings=cost.pairings,
                                         delta_phi=delta_phi, bound=bound,
                                         slack=slack))
        report.sum_a += a
        report.sum_bound += bound
        logger.debug("operation %d %s: a=%d n=%d delta_phi=%.6f "
                     "bound=%.6f", op_index, kind, a, n, delta_phi, bound)

        if slack < -self.tolerance:
            report.fail(op_index, f'{kind}_bound',
                        f"a + delta_phi = {a + delta_phi:.6f} > {bound:.6f}")
        if kind == 'find_min' and (delta_phi != 0.0 or a != 1):
            report.fail(op_index, 'find_min_unchanged',
                        f"a = {a}, delta_phi = {delta_phi!r}")

        if (kind == 'insert' and self.last_make_heap is not None and
                self.last_make_heap[0] == op_index - 1 and
                self.last_make_heap[1] == operation.heap_args[0] and
                cost.pairings == 0):
            combined = (cost.pairings + 1) + self.last_make_heap[2] + \
                delta_phi
            if combined > MAKE_HEAP_BOUND + self.tolerance:
                report.fail(op_index, 'make_heap_composite',
                            f"a + delta_phi = {combined:.6f} > "
                            f"{MAKE_HEAP_BOUND}")
        self.last_make_heap = (op_index, operation.out, delta_phi) \
            if kind == 'make_heap' else None

        if trees is not None:
            self._rank_checks(op_index, trees, events, n)
        self._check_captures(op_index, events, detached, states_before)
        if self.check_structure:
            self._check_snapshot(op_index)


def audit_trace(trace, tolerance=None, check_structure=None,
                show_progress=False, trace_sha256=None):
    """
    Audits the amortized costs of every operation of `trace`.

    Parameters
    ----------
    trace : Trace
        Valid trace.
    tolerance : float, optional
        Absolute tolerance of all inequalities. If None, the `tolerance`
        setting is used.
        Default: None
    check_structure : bool, optional
        If True, the structure of the forest, the invariants of the
        potential and the incremental potential are checked after every
        operation. If None, the `check_structure` setting is used.
        Default: None
    show_progress : bool, optional
        If True, shows a progress bar.
        Default: False
    trace_sha256 : str, optional
        Fingerprint recorded in the summary. If None, the SHA-256 of the
        canonical text of `trace` is used.
        Default: None

    Returns
    -------
    AuditReport

    Raises
    ------
    AuditLimitError
        If the trace has more operations than the `max_audit_ops` setting.
    PairAuditError
        If the trace cannot be replayed.
    """
    if tolerance is None:
        tolerance = pairaudit_setting('tolerance')
    if check_structure is None:
        check_structure = pairaudit_setting('check_structure')
    limit = pairaudit_setting('max_audit_ops')
    if len(trace.operations) > limit:
        logger.warning("trace has %d operations, audit limit is %d",
                       len(trace.operations), limit)
        raise AuditLimitError(f"trace has {len(trace.operations)} "
                              f"operations, more than the limit of {limit}")
    if trace_sha256 is None:
        trace_sha256 = text_sha256(serialize_trace(trace))

    report = AuditReport(tolerance, trace_sha256)
    audit = _Audit(color_nodes(trace), report, check_structure)

    for op_index, operation in enumerate(
            tqdm(trace.operations, desc="Auditing trace",
                 disable=not show_progress), start=1):
        audit.step(op_index, operation)

    report.phi0 = 0.0
    report.phim = audit.phi
    if report.phim < -tolerance:
        report.fail(None, 'final_potential',
                    f"phi_m = {report.phim:.6f} is negative")
    if report.sum_a > report.sum_bound + tolerance:
        report.fail(None, 'total_cost',
                    f"sum of actual costs {report.sum_a} > sum of bounds "
                    f"{report.sum_bound:.6f}")

    logger.info("audited %d operations: %s (%d failures)",
                len(report.entries), report.verdict, len(report.failures))
    return report
