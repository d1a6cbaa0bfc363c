"""
Replay of traces on a forest and construction of traces in code.

:class:`TraceReplayer` executes `Operation` records on any object with the
operation interface of :class:`pairaudit.PairingForest` (for example
:class:`pairaudit.oracle.OracleForest`). The ids written in the trace are
mapped to the ids issued by the forest, and results are translated back to
trace ids.

:class:`TraceBuilder` creates traces operation by operation, allocating the
explicit output ids.

.. autoclass:: pairaudit.trace.TraceReplayer
    :members:

.. autoclass:: pairaudit.trace.TraceBuilder
    :members:
"""

import logging

from tqdm import tqdm

from pairaudit.pairaudit_types import Operation, Trace
from pairaudit.exceptions import (InvalidHeapError, InvalidHandleError,
                                  WrongHeapError, AliasingError,
                                  EmptyHeapError)
from pairaudit.trace.format import EXPLICIT_IDS


# Create logger and set configuration
logger = logging.getLogger(__file__)
log_handler = logging.StreamHandler()
log_handler.setFormatter(logging.Formatter("[%(asctime)s] "
                                           "pairaudit.trace.replay -"
                                           " %(levelname)s: %(message)s"))
logger.addHandler(log_handler)
logger.propagate = False


class TraceReplayer(object):
    """
    Executes trace operations on a forest.

    Arguments are checked against the trace ids before the forest is
    called, so that error messages refer to trace ids. An operation that
    fails changes neither the forest nor the id maps.

    Parameters
    ----------
    forest : PairingForest or OracleForest
        Forest that executes the operations.

    Attributes
    ----------
    forest : PairingForest or OracleForest
        The forest given at construction.
    heap_ids : dict
        Trace heap id to forest heap id, for every heap created so far.
    node_ids : dict
        Trace node id to forest handle, for every node inserted so far.
    """

    def __init__(self, forest):
        self.forest = forest
        self.heap_ids = {}
        self.node_ids = {}
        self._trace_heaps = {}
        self._trace_nodes = {}

    def trace_heap(self, forest_heap_id):
        """ Trace id of a forest heap id. """
        return self._trace_heaps[forest_heap_id]

    def trace_node(self, forest_handle):
        """ Trace id of a forest node handle. """
        return self._trace_nodes[forest_handle]

    def _heap(self, heap_id):
        forest_id = self.heap_ids.get(heap_id)
        if forest_id is None:
            raise InvalidHeapError(f"unknown heap id {heap_id}")
        if not self.forest.is_live(forest_id):
            raise InvalidHeapError(f"stale heap id {heap_id}")
        return forest_id

    def _nonempty_heap(self, heap_id):
        forest_id = self._heap(heap_id)
        if self.forest.size(forest_id) == 0:
            raise EmptyHeapError(f"empty heap {heap_id}")
        return forest_id

    def _node(self, heap_id, forest_heap_id, node_id):
        handle = self.node_ids.get(node_id)
        if handle is None:
            raise InvalidHandleError(f"unknown node id {node_id}")
        if not self.forest.has_node(handle):
            raise InvalidHandleError(f"stale node id {node_id}")
        if self.forest.heap_of(handle) != forest_heap_id:
            raise WrongHeapError(f"node {node_id} is not in heap {heap_id}")
        return handle

    def _new_heap_id(self, heap_id):
        if heap_id in self.heap_ids:
            raise InvalidHeapError(f"duplicate heap id {heap_id}")

    def _register_heap(self, heap_id, forest_id):
        self.heap_ids[heap_id] = forest_id
        self._trace_heaps[forest_id] = heap_id

    def apply(self, operation, **kwargs):
        """
        Executes one operation.

        Parameters
        ----------
        operation : Operation
            Operation with trace ids.
        **kwargs
            Passed to the `extract_min` method of the forest.

        Returns
        -------
        int or tuple or None
            The trace id of the created heap or node for make_heap, meld and
            insert; a (trace node id, key) tuple for find_min and
            extract_min; None otherwise.

        Raises
        ------
        PairAuditError
            If the operation cannot be executed.
        """
        kind = operation.kind
        forest = self.forest

        if kind == 'make_heap':
            self._new_heap_id(operation.out)
            self._register_heap(operation.out, forest.make_heap())
            return operation.out

        if kind == 'meld':
            first, second = operation.heap_args
            if first == second:
                raise AliasingError(f"meld aliasing of heap {first}")
            forest_first = self._heap(first)
            forest_second = self._heap(second)
            self._new_heap_id(operation.out)
            self._register_heap(operation.out,
                                forest.meld(forest_first, forest_second))
            return operation.out

        heap_id = operation.heap_args[0]

        if kind == 'insert':
            forest_id = self._heap(heap_id)
            if operation.out in self.node_ids:
                raise InvalidHandleError(f"duplicate node id "
                                         f"{operation.out}")
            handle = forest.insert(forest_id, operation.key)
            self.node_ids[operation.out] = handle
            self._trace_nodes[handle] = operation.out
            return operation.out

        if kind in ('find_min', 'extract_min'):
            forest_id = self._nonempty_heap(heap_id)
            if kind == 'find_min':
                handle, key = forest.find_min(forest_id)
            else:
                handle, key = forest.extract_min(forest_id, **kwargs)
            return self._trace_nodes[handle], key

        forest_id = self._heap(heap_id)
        handle = self._node(heap_id, forest_id, operation.node_arg)
        if kind == 'decrease_key':
            forest.decrease_key(forest_id, handle, operation.delta)
        elif kind == 'delete':
            forest.delete(forest_id, handle)
        else:
            raise ValueError(f"unknown operation {kind!r}")
        return None

    def replay(self, trace, show_progress=False):
        """
        Executes all operations of `trace`.

        Returns
        -------
        list
            Result of each operation, as returned by :meth:`apply`.

        Raises
        ------
        PairAuditError
            At the first operation that cannot be executed.
        """
        results = []
        for operation in tqdm(trace.operations, desc="Replaying trace",
                              disable=not show_progress):
            results.append(self.apply(operation))
        logger.debug("replayed %d operations", len(results))
        return results


class TraceBuilder(object):
    """
    Builds a trace with explicit output ids.

    Heap and node ids are allocated from 1 in creation order. The methods
    that create heaps or nodes return the new trace id.

    Examples
    --------
    >>> builder = TraceBuilder()
    >>> heap = builder.make_heap()
    >>> node = builder.insert(heap, 5)
    >>> builder.extract_min(heap)
    >>> trace = builder.build()
    """

    def __init__(self):
        self.operations = []
        self._next_heap = 1
        self._next_node = 1

    def __len__(self):
        return len(self.operations)

    @property
    def last(self):
        """ The last added operation. """
        return self.operations[-1]

    def _add(self, kind, heap_args=(), node_arg=None, key=None, delta=None,
             out=None):
        self.operations.append(Operation(kind=kind, heap_args=heap_args,
                                         node_arg=node_arg, key=key,
                                         delta=delta, out=out))

    def _heap_id(self):
        heap_id = self._next_heap
        self._next_heap += 1
        return heap_id

    def make_heap(self):
        heap_id = self._heap_id()
        self._add('make_heap', out=heap_id)
        return heap_id

    def insert(self, heap_id, key):
        node_id = self._next_node
        self._next_node += 1
        self._add('insert', heap_args=(heap_id,), key=float(key),
                  out=node_id)
        return node_id

    def meld(self, heap_id1, heap_id2):
        heap_id = self._heap_id()
        self._add('meld', heap_args=(heap_id1, heap_id2), out=heap_id)
        return heap_id

    def find_min(self, heap_id):
        self._add('find_min', heap_args=(heap_id,))

    def extract_min(self, heap_id):
        self._add('extract_min', heap_args=(heap_id,))

    def decrease_key(self, heap_id, node_id, delta):
        self._add('decrease_key', heap_args=(heap_id,), node_arg=node_id,
                  delta=float(delta))

    def delete(self, heap_id, node_id):
        self._add('delete', heap_args=(heap_id,), node_arg=node_id)

    def build(self):
        """ Returns the `Trace` with the operations added so far. """
        return Trace(operations=tuple(self.operations),
                     id_convention=EXPLICIT_IDS)
