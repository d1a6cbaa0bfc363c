"""
Node coloring and potential of a forest of pairing heaps.

A node is white if the trace removes it at some point (extract_min or
delete) and black if it survives until the end. For every node, `s` is the
number of white nodes in its subtree of the binary representation (the node,
its descendants and its right siblings with their descendants). The
potential of a node is the sum of four components:

* rank: 18 log2(s) for white nodes, 0 for black nodes;
* weight: 6 for light white nodes, else 0. A white node is heavy when its
  binary left subtree has at least as many white nodes as its binary right
  subtree;
* capture: 0 if the general-tree parent is black, else 6 (black nodes too);
* triple white: 0 for a white node whose immediate left and right siblings
  are white, 6 for the other white nodes, 0 for black nodes.

A heap with `n` white nodes adds `8 - 36 * sum(log2(i), i=1..n)`. The
potential of the forest is the sum over all nodes and live heaps.

.. autofunction:: pairaudit.audit.color_nodes
.. autofunction:: pairaudit.audit.snapshot_potential
"""

import logging
import math

import numpy as np

from pairaudit.pairaudit_types import (NodeAnnotation, HeapPotential,
                                       PotentialSnapshot)
from pairaudit.heap import PairingForest
from pairaudit.trace.replay import TraceReplayer


# Create logger and set configuration
logger = logging.getLogger(__file__)
log_handler = logging.StreamHandler()
log_handler.setFormatter(logging.Formatter("[%(asctime)s] "
                                           "pairaudit.audit.potential -"
                                           " %(levelname)s: %(message)s"))
logger.addHandler(log_handler)
logger.propagate = False


WHITE = 'white'
BLACK = 'black'

RANK_FACTOR = 18.0
WEIGHT_POTENTIAL = 6.0
CAPTURE_POTENTIAL = 6.0
TRIPLE_WHITE_POTENTIAL = 6.0
HEAP_BASE_POTENTIAL = 8.0
HEAP_LOG_FACTOR = 36.0


def color_nodes(trace):
    """
    Colors every node inserted by `trace`.

    The trace is replayed on a :class:`pairaudit.PairingForest`; nodes
    returned by extract_min or removed by delete are white, all others are
    black.

    Parameters
    ----------
    trace : Trace
        Valid trace.

    Returns
    -------
    dict
        Trace node id to 'white' or 'black'.

    Raises
    ------
    PairAuditError
        If the trace cannot be replayed.
    """
    replayer = TraceReplayer(PairingForest(record_events=False))
    colors = {}
    for operation in trace.operations:
        result = replayer.apply(operation)
        if operation.kind == 'insert':
            colors[result] = BLACK
        elif operation.kind == 'extract_min':
            colors[result[0]] = WHITE
        elif operation.kind == 'delete':
            colors[operation.node_arg] = WHITE
    logger.debug("%d of %d nodes are white",
                 sum(1 for color in colors.values() if color == WHITE),
                 len(colors))
    return colors


class _Log2Factorial(object):
    # Table of sum(log2(i), i=1..n), grown on demand

    def __init__(self):
        self._table = np.zeros(1)

    def __call__(self, n):
        if n >= len(self._table):
            size = max(n + 1, 2 * len(self._table))
            self._table = np.concatenate(
                ([0.0], np.cumsum(np.log2(np.arange(1, size)))))
        return float(self._table[n])


log2_factorial = _Log2Factorial()


def heap_base_potential(white_count):
    """ Heap potential `8 - 36 * sum(log2(i), i=1..white_count)`. """
    return HEAP_BASE_POTENTIAL - HEAP_LOG_FACTOR * log2_factorial(white_count)


def rank_of(s, white):
    """ Rank potential of a node with `s` white nodes in its subtree. """
    return RANK_FACTOR * math.log2(s) if white and s > 0 else 0.0


class HeapState(object):
    """
    Potential of one heap with per-node arrays.

    Nodes are indexed in pre-order of the binary representation: index 0 is
    the root, and both binary children of a node have larger indices.

    Attributes
    ----------
    heap_id : int
        Forest heap id.
    handles : list of int
        Node handles in pre-order.
    white, heavy, captured, triple_white : np.ndarray of bool
    s, s_left, s_right : np.ndarray of int
        White counts of the binary subtree, of the binary left subtree
        (children) and of the binary right subtree (right siblings).
    parent : np.ndarray of int
        Index of the general-tree parent, -1 for the root.
    rank, weight_pot, capture_pot, tw_pot, potential : np.ndarray of float
    white_count : int
    heap_pot : float
    total : float
        `heap_pot` plus the potential of all nodes.
    """

    def __init__(self, heap_id, root, white):
        self.heap_id = heap_id
        nodes = []
        parents = []
        if root is not None:
            # Entries are (node, index of the general-tree parent)
            stack = [(root, -1)]
            while stack:
                node, parent = stack.pop()
                index = len(nodes)
                nodes.append(node)
                parents.append(parent)
                if node.right_sibling is not None:
                    stack.append((node.right_sibling, parent))
                if node.leftmost_child is not None:
                    stack.append((node.leftmost_child, index))

        count = len(nodes)
        self.handles = [node.handle for node in nodes]
        self.index = {handle: i for i, handle in enumerate(self.handles)}
        index = self.index
        self.parent = np.array(parents, dtype=np.int64)
        self.white = np.fromiter((handle in white for handle in self.handles),
                                 dtype=bool, count=count)

        child = np.full(count, -1, dtype=np.int64)
        sibling = np.full(count, -1, dtype=np.int64)
        left_sibling = np.full(count, -1, dtype=np.int64)
        for i, node in enumerate(nodes):
            if node.leftmost_child is not None:
                child[i] = index[node.leftmost_child.handle]
            if node.right_sibling is not None:
                j = index[node.right_sibling.handle]
                sibling[i] = j
                left_sibling[j] = i

        s = np.zeros(count, dtype=np.int64)
        s_left = np.zeros(count, dtype=np.int64)
        s_right = np.zeros(count, dtype=np.int64)
        white_int = self.white.astype(np.int64)
        for i in range(count - 1, -1, -1):
            if child[i] >= 0:
                s_left[i] = s[child[i]]
            if sibling[i] >= 0:
                s_right[i] = s[sibling[i]]
            s[i] = white_int[i] + s_left[i] + s_right[i]
        self.s, self.s_left, self.s_right = s, s_left, s_right
        self.child, self.sibling = child, sibling

        is_white = self.white
        has_parent = self.parent >= 0
        parent_white = np.zeros(count, dtype=bool)
        parent_white[has_parent] = is_white[self.parent[has_parent]]
        self.captured = has_parent & ~parent_white

        has_left = left_sibling >= 0
        has_right = sibling >= 0
        left_white = np.zeros(count, dtype=bool)
        left_white[has_left] = is_white[left_sibling[has_left]]
        right_white = np.zeros(count, dtype=bool)
        right_white[has_right] = is_white[sibling[has_right]]
        self.triple_white = is_white & left_white & right_white

        self.heavy = is_white & (s_left >= s_right)
        self.rank = np.where(is_white,
                             RANK_FACTOR * np.log2(np.maximum(s, 1)), 0.0)
        self.weight_pot = np.where(is_white & ~self.heavy,
                                   WEIGHT_POTENTIAL, 0.0)
        self.capture_pot = np.where(self.captured, 0.0, CAPTURE_POTENTIAL)
        self.tw_pot = np.where(is_white & ~self.triple_white,
                               TRIPLE_WHITE_POTENTIAL, 0.0)
        self.potential = (self.rank + self.weight_pot + self.capture_pot +
                          self.tw_pot)

        self.white_count = int(is_white.sum())
        self.heap_pot = heap_base_potential(self.white_count)
        self.total = self.heap_pot + math.fsum(self.potential.tolist())

    def __len__(self):
        return len(self.handles)

    def s_of(self, handle):
        """ `s` of a node of this heap, 0 for None. """
        if handle is None:
            return 0
        return int(self.s[self.index[handle]])

    def parent_of(self, handle):
        """ Handle of the general-tree parent, or None. """
        parent = self.parent[self.index[handle]]
        return self.handles[parent] if parent >= 0 else None

    def heap_potential(self):
        return HeapPotential(heap=self.heap_id, size=len(self),
                             white_count=self.white_count,
                             heap_pot=self.heap_pot, total=self.total)

    def annotations(self, name=None):
        """
        Returns a `NodeAnnotation` per node.

        Parameters
        ----------
        name : callable, optional
            Maps forest handles to the ids used in the result (for example
            trace node ids). If None, forest handles are used.
            Default: None

        Returns
        -------
        dict
        """
        name = name if name is not None else (lambda handle: handle)
        result = {}
        for i, handle in enumerate(self.handles):
            parent = self.parent[i]
            result[name(handle)] = NodeAnnotation(
                handle=name(handle),
                white=bool(self.white[i]),
                s=int(self.s[i]),
                rank=float(self.rank[i]),
                heavy=bool(self.heavy[i]),
                weight_pot=float(self.weight_pot[i]),
                captured=bool(self.captured[i]),
                capture_pot=float(self.capture_pot[i]),
                triple_white=bool(self.triple_white[i]),
                tw_pot=float(self.tw_pot[i]),
                potential=float(self.potential[i]),
                parent=name(self.handles[parent]) if parent >= 0 else None)
        return result

    def structure_problems(self):
        """
        Checks the invariants of the potential on this heap.

        `s` must not increase from a node to its binary children, a white
        root must be heavy, no node may have more than
        `floor(log2(n)) + 1` heavy children when the heap has `n` white
        nodes, and black nodes carry only the capture potential.

        Returns
        -------
        list of str
        """
        problems = []
        count = len(self)
        if count == 0:
            return problems
        has_child = self.child >= 0
        has_sibling = self.sibling >= 0
        if np.any(self.s[self.child[has_child]] > self.s[has_child]) or \
                np.any(self.s[self.sibling[has_sibling]] >
                       self.s[has_sibling]):
            problems.append(f"heap {self.heap_id}: s increases along a "
                            f"binary path")
        if self.white[0] and not self.heavy[0]:
            problems.append(f"heap {self.heap_id}: white root "
                            f"{self.handles[0]} is light")
        heavy_child = self.heavy & (self.parent >= 0)
        if np.any(heavy_child):
            counts = np.bincount(self.parent[heavy_child], minlength=count)
            limit = math.floor(math.log2(max(self.white_count, 1))) + 1
            if counts.max() > limit:
                worst = int(np.argmax(counts))
                problems.append(f"heap {self.heap_id}: node "
                                f"{self.handles[worst]} has "
                                f"{int(counts.max())} heavy children, "
                                f"limit {limit}")
        black = ~self.white
        if np.any(self.potential[black] != self.capture_pot[black]):
            problems.append(f"heap {self.heap_id}: black node potential "
                            f"differs from its capture potential")
        return problems


def white_handles(colors):
    """ Set of the keys of `colors` whose color is white. """
    return {handle for handle, color in colors.items() if color == WHITE}


def snapshot_potential(forest, colors):
    """
    Computes the potential of every node and heap of `forest` from scratch.

    Parameters
    ----------
    forest : PairingForest
        Forest to evaluate.
    colors : dict
        Forest node handle to 'white' or 'black'. Nodes that are missing
        are black.

    Returns
    -------
    PotentialSnapshot
        `nodes` and `heaps` are keyed by forest handles and heap ids.
    """
    white = white_handles(colors)
    nodes = {}
    heaps = {}
    for heap_id in forest.heap_ids():
        state = HeapState(heap_id, forest.root(heap_id), white)
        nodes.update(state.annotations())
        heaps[heap_id] = state.heap_potential()
    phi = math.fsum(heap.total for heap in heaps.values())
    return PotentialSnapshot(nodes=nodes, heaps=heaps, phi=phi)
