"""
Brute-force reference priority queue and differential replay.

:class:`OracleForest` keeps each heap as a sorted list of (key, handle)
pairs. It has the operation interface, id allocation and errors of
:class:`pairaudit.PairingForest`, so both can be driven by the same
:class:`pairaudit.trace.TraceReplayer`.

:func:`diff_run` replays a trace on both and reports the first operation
where the results differ. When several nodes share the minimum key, the
oracle accepts any of them from the pairing heap and then removes the same
node itself.

.. autoclass:: pairaudit.oracle.OracleForest
    :members:

.. autofunction:: pairaudit.oracle.diff_run
"""

import bisect
import logging

from tqdm import tqdm

from pairaudit.pairaudit_types import DiffReport
from pairaudit.exceptions import (PairAuditError, InvalidHeapError,
                                  InvalidHandleError, WrongHeapError,
                                  AliasingError, EmptyHeapError, DomainError)
from pairaudit.heap import PairingForest, as_key
from pairaudit.trace.replay import TraceReplayer


# Create logger and set configuration
logger = logging.getLogger(__file__)
log_handler = logging.StreamHandler()
log_handler.setFormatter(logging.Formatter("[%(asctime)s] pairaudit.oracle -"
                                           " %(levelname)s: %(message)s"))
logger.addHandler(log_handler)
logger.propagate = False


class OracleForest(object):
    """
    Collection of heaps stored as sorted lists.

    Every operation is O(n) in the size of the heap. Ties between equal keys
    are broken by the smaller handle unless :meth:`extract_min` is told
    which node to remove.
    """

    def __init__(self):
        self.op_index = 0
        self._heaps = {}        # heap id -> sorted list of (key, handle)
        self._keys = {}         # live handle -> key
        self._node_heap = {}    # live handle -> heap id
        self._next_heap = 1
        self._next_node = 1

    def __len__(self):
        return len(self._keys)

    def _live(self, heap_id):
        entries = self._heaps.get(heap_id)
        if entries is None:
            if isinstance(heap_id, int) and 0 < heap_id < self._next_heap:
                raise InvalidHeapError(f"stale heap id {heap_id}")
            raise InvalidHeapError(f"unknown heap id {heap_id}")
        return entries

    def _check_node(self, heap_id, handle):
        owner = self._node_heap.get(handle)
        if owner is None:
            if isinstance(handle, int) and 0 < handle < self._next_node:
                raise InvalidHandleError(f"node {handle} was removed")
            raise InvalidHandleError(f"unknown node handle {handle}")
        if owner != heap_id:
            raise WrongHeapError(f"node {handle} belongs to heap {owner}, "
                                 f"not {heap_id}")

    def _remove(self, heap_id, handle):
        entries = self._heaps[heap_id]
        key = self._keys.pop(handle)
        del self._node_heap[handle]
        index = bisect.bisect_left(entries, (key, handle))
        del entries[index]
        return key

    def make_heap(self):
        self.op_index += 1
        heap_id = self._next_heap
        self._next_heap += 1
        self._heaps[heap_id] = []
        return heap_id

    def insert(self, heap_id, key):
        self.op_index += 1
        entries = self._live(heap_id)
        key = as_key(key)
        handle = self._next_node
        self._next_node += 1
        bisect.insort(entries, (key, handle))
        self._keys[handle] = key
        self._node_heap[handle] = heap_id
        return handle

    def meld(self, heap_id1, heap_id2):
        self.op_index += 1
        if heap_id1 == heap_id2:
            raise AliasingError(f"cannot meld heap {heap_id1} with itself")
        first = self._live(heap_id1)
        second = self._live(heap_id2)
        heap_id = self._next_heap
        self._next_heap += 1
        entries = sorted(first + second)
        for _, handle in entries:
            self._node_heap[handle] = heap_id
        del self._heaps[heap_id1]
        del self._heaps[heap_id2]
        self._heaps[heap_id] = entries
        return heap_id

    def min_group(self, heap_id):
        """
        Returns the minimum key of a heap and the sorted handles of all
        nodes with that key.

        Raises
        ------
        EmptyHeapError
            If the heap has no nodes.
        """
        entries = self._live(heap_id)
        if not entries:
            raise EmptyHeapError(f"heap {heap_id} is empty")
        key = entries[0][0]
        end = bisect.bisect_right(entries, (key, float('inf')))
        return key, [handle for _, handle in entries[:end]]

    def find_min(self, heap_id):
        self.op_index += 1
        key, handles = self.min_group(heap_id)
        return handles[0], key

    def extract_min(self, heap_id, prefer=None):
        """
        Removes a node with the minimum key.

        Parameters
        ----------
        heap_id : int
            Live heap id.
        prefer : int, optional
            Handle to remove if its key is the minimum. Otherwise the node
            with the smallest handle among the minima is removed.
            Default: None
        """
        self.op_index += 1
        key, handles = self.min_group(heap_id)
        handle = prefer if prefer in handles else handles[0]
        self._remove(heap_id, handle)
        return handle, key

    def decrease_key(self, heap_id, handle, delta):
        self.op_index += 1
        entries = self._live(heap_id)
        self._check_node(heap_id, handle)
        delta = as_key(delta, what="delta")
        if delta < 0:
            raise DomainError(f"negative delta {delta!r}")
        new_key = self._keys[handle] - delta
        if new_key == float('-inf'):
            raise DomainError(f"key of node {handle} overflows")
        self._remove(heap_id, handle)
        bisect.insort(entries, (new_key, handle))
        self._keys[handle] = new_key
        self._node_heap[handle] = heap_id

    def delete(self, heap_id, handle):
        self.op_index += 1
        self._live(heap_id)
        self._check_node(heap_id, handle)
        self._remove(heap_id, handle)

    def heap_ids(self):
        return sorted(self._heaps)

    def is_live(self, heap_id):
        return heap_id in self._heaps

    def size(self, heap_id):
        return len(self._live(heap_id))

    def has_node(self, handle):
        return handle in self._keys

    def heap_of(self, handle):
        heap_id = self._node_heap.get(handle)
        if heap_id is None:
            raise InvalidHandleError(f"no live node {handle}")
        return heap_id

    def keys(self, heap_id):
        """ Sorted keys of a heap. """
        return [key for key, _ in self._live(heap_id)]


def _outcome(replayer, operation, **kwargs):
    # Result of an operation, or the exception it raised
    try:
        return replayer.apply(operation, **kwargs)
    except PairAuditError as error:
        return error


def _describe(outcome):
    if isinstance(outcome, Exception):
        return f"{type(outcome).__name__}: {outcome}"
    return outcome


def diff_run(trace, forest_factory=PairingForest, show_progress=False):
    """
    Replays `trace` on a pairing forest and on an :class:`OracleForest` and
    compares every result.

    For find_min and extract_min, the keys must be equal, the returned node
    must have the minimum key, and it must be the oracle's node when the
    minimum key is unique. Failed operations must fail with the same
    exception type on both sides. After each successful operation the sizes
    of the heap it produced or changed must agree.

    Parameters
    ----------
    trace : Trace
        Trace to replay.
    forest_factory : callable, optional
        Creates the forest under test.
        Default: :class:`pairaudit.PairingForest`
    show_progress : bool, optional
        If True, shows a progress bar.
        Default: False

    Returns
    -------
    DiffReport
        `equivalent` is True if no difference was found. Otherwise
        `op_index` is the 1-based index of the first differing operation,
        and `expected`/`actual` describe the oracle and forest outcomes.
    """
    actual_side = TraceReplayer(forest_factory())
    oracle_side = TraceReplayer(OracleForest())
    oracle = oracle_side.forest

    for op_index, operation in enumerate(
            tqdm(trace.operations, desc="Differential replay",
                 disable=not show_progress), start=1):
        kind = operation.kind
        actual = _outcome(actual_side, operation)

        if (kind in ('find_min', 'extract_min') and
                not isinstance(actual, Exception)):
            node_id, key = actual
            heap_id = oracle_side.heap_ids.get(operation.heap_args[0])
            try:
                min_key, handles = oracle.min_group(heap_id)
            except PairAuditError as error:
                return DiffReport(False, op_index, _describe(error), actual,
                                  f"{kind} succeeded on the forest only")
            group = [oracle_side.trace_node(handle) for handle in handles]
            expected = (group[0], min_key) if len(group) == 1 \
                else (group, min_key)
            if key != min_key or node_id not in group:
                return DiffReport(False, op_index, expected, actual,
                                  f"{kind} returned a node without the "
                                  f"minimum key")
            if kind == 'extract_min':
                oracle_side.apply(operation,
                                  prefer=oracle_side.node_ids[node_id])
            else:
                oracle_side.apply(operation)
        else:
            expected = _outcome(oracle_side, operation)
            if isinstance(expected, Exception) or \
                    isinstance(actual, Exception):
                if type(expected) is not type(actual):
                    return DiffReport(False, op_index, _describe(expected),
                                      _describe(actual),
                                      f"{kind} outcomes differ")
                continue
            if expected != actual:
                return DiffReport(False, op_index, expected, actual,
                                  f"{kind} results differ")

        heap_id = operation.out if kind == 'meld' else \
            (operation.heap_args[0] if operation.heap_args else operation.out)
        actual_size = actual_side.forest.size(actual_side.heap_ids[heap_id])
        expected_size = oracle.size(oracle_side.heap_ids[heap_id])
        if actual_size != expected_size:
            return DiffReport(False, op_index, expected_size, actual_size,
                              f"size of heap {heap_id} differs after {kind}")

    logger.debug("differential replay of %d operations: equivalent",
                 len(trace.operations))
    return DiffReport(True, None, None, None, "equivalent")
