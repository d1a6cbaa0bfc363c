"""
This module implements the pairing heap.

A :class:`PairingForest` holds any number of heaps. Each heap is a
heap-ordered general tree stored in the leftmost-child, right-sibling binary
representation. Every node keeps a single back pointer that is either its
general-tree parent (when it is a leftmost child) or its immediate left
sibling.

All seven operations (make_heap, insert, meld, find_min, extract_min,
decrease_key and delete) are built on one primitive, the pairing, that
attaches the root with the larger key as the leftmost child of the other
root. When both keys are equal, the node the pairing is performed on (the
left one) wins.

Every operation appends one :class:`pairaudit.pairaudit_types.CostRecord` to
the event log, preceded by one :class:`pairaudit.pairaudit_types.PairingEvent`
per pairing it performed. The log is retrieved with
:meth:`PairingForest.drain_events`.

.. autoclass:: pairaudit.PairingForest
    :members:

.. autoclass:: pairaudit.heap.HeapNode
    :members:

"""

import logging
import math

from pairaudit.pairaudit_types import PairingEvent, CostRecord, TreeShape
from pairaudit.exceptions import (InvalidHeapError, InvalidHandleError,
                                  WrongHeapError, AliasingError,
                                  EmptyHeapError, DomainError)


# Create logger and set configuration
logger = logging.getLogger(__file__)
log_handler = logging.StreamHandler()
log_handler.setFormatter(logging.Formatter("[%(asctime)s] pairaudit.heap -"
                                           " %(levelname)s: %(message)s"))
logger.addHandler(log_handler)
logger.propagate = False


# Pass tags of the pairings
FIRST_PASS = 'first'
SECOND_PASS = 'second'
MELD_PAIRING = 'meld'
INSERT_PAIRING = 'insert'
DECREASE_KEY_PAIRING = 'decrease_key'
DELETE_PAIRING = 'delete'


def as_key(value, what="key"):
    """
    Converts `value` to a float key.

    Raises
    ------
    DomainError
        If `value` is not a real number or is NaN or infinite.
    """
    if isinstance(value, bool):
        raise DomainError(f"{what} must be a number, got {value!r}")
    try:
        key = float(value)
    except (TypeError, ValueError):
        raise DomainError(f"{what} must be a number, got {value!r}")
    if not math.isfinite(key):
        raise DomainError(f"{what} must be finite, got {value!r}")
    return key


class HeapNode(object):
    """
    One element of a pairing heap.

    Attributes
    ----------
    key : float
        Priority of the element.
    handle : int
        Stable identifier returned by :meth:`PairingForest.insert`.
    leftmost_child : HeapNode or None
        First child in the general tree (left child in the binary tree).
    right_sibling : HeapNode or None
        Next sibling in the general tree (right child in the binary tree).
    parent_or_left_neighbor : HeapNode or None
        Binary-representation parent: the general-tree parent if this node is
        a leftmost child, otherwise the immediate left sibling. None for
        roots.
    """

    __slots__ = ('key', 'handle', 'leftmost_child', 'right_sibling',
                 'parent_or_left_neighbor', '_home')

    def __init__(self, key, handle, home):
        self.key = key
        self.handle = handle
        self.leftmost_child = None
        self.right_sibling = None
        self.parent_or_left_neighbor = None
        self._home = home

    def __repr__(self):
        return f"HeapNode(handle={self.handle}, key={self.key!r})"

    @property
    def is_leftmost_child(self):
        prev = self.parent_or_left_neighbor
        return prev is not None and prev.leftmost_child is self

    @property
    def left_sibling(self):
        """ Immediate left sibling in the general tree, or None. """
        prev = self.parent_or_left_neighbor
        if prev is None or prev.leftmost_child is self:
            return None
        return prev

    def children(self):
        """ Yields the general-tree children from left to right. """
        child = self.leftmost_child
        while child is not None:
            yield child
            child = child.right_sibling


class _HeapRecord(object):
    # Bookkeeping of one heap. After a meld, the record of each argument
    # forwards to the record of the result, so that nodes can find their
    # current heap without visiting all of them.

    __slots__ = ('heap_id', 'root', 'size', 'forward')

    def __init__(self, heap_id):
        self.heap_id = heap_id
        self.root = None
        self.size = 0
        self.forward = None


class PairingForest(object):
    """
    A collection of pairing heaps with stable node handles and heap ids.

    Handles and heap ids are positive integers issued by increasing counters
    and never reused. Every public operation validates its arguments before
    changing anything, so a failed operation leaves the forest unchanged.

    Parameters
    ----------
    record_events : bool, optional
        If True, pairing events and cost records are kept in the event log
        until :meth:`drain_events` is called. Set to False for long
        benchmark runs; :attr:`last_cost` is updated in both cases.
        Default: True

    Attributes
    ----------
    last_cost : CostRecord or None
        Cost record of the last successful operation.
    op_index : int
        Number of operations called so far, including failed ones.
    """

    def __init__(self, record_events=True):
        self.record_events = record_events
        self.last_cost = None
        self.op_index = 0
        self._heaps = {}
        self._nodes = {}
        self._next_heap = 1
        self._next_node = 1
        self._log = []
        self._pairings = 0

    def __len__(self):
        return len(self._nodes)

    # Pairing comparison. Subclasses may redefine it for fault injection.
    def _left_wins(self, left, right):
        return left.key <= right.key

    # --------------------------------------------------------------------
    # Bookkeeping helpers
    # --------------------------------------------------------------------

    def _begin(self):
        self.op_index += 1
        self._pairings = 0

    def _finish(self, kind, record):
        cost = CostRecord(op_index=self.op_index, kind=kind,
                          heap=record.heap_id, pairings=self._pairings,
                          actual_cost=self._pairings + 1,
                          heap_size_after=record.size)
        self.last_cost = cost
        if self.record_events:
            self._log.append(cost)

    def _live(self, heap_id):
        record = self._heaps.get(heap_id)
        if record is None:
            if (isinstance(heap_id, int) and
                    0 < heap_id < self._next_heap):
                raise InvalidHeapError(f"stale heap id {heap_id}")
            raise InvalidHeapError(f"unknown heap id {heap_id}")
        return record

    @staticmethod
    def _record_of(node):
        record = node._home
        while record.forward is not None:
            record = record.forward
        # Path compression
        forwarded = node._home
        while forwarded.forward is not None and forwarded.forward is not record:
            forwarded.forward, forwarded = record, forwarded.forward
        node._home = record
        return record

    def _node_in(self, record, handle):
        node = self._nodes.get(handle)
        if node is None:
            if isinstance(handle, int) and 0 < handle < self._next_node:
                raise InvalidHandleError(f"node {handle} was removed")
            raise InvalidHandleError(f"unknown node handle {handle}")
        home = self._record_of(node)
        if home is not record:
            raise WrongHeapError(f"node {handle} belongs to heap "
                                 f"{home.heap_id}, not {record.heap_id}")
        return node

    # --------------------------------------------------------------------
    # Structural primitives
    # --------------------------------------------------------------------

    def _emit(self, left, right, winner, loser, pass_):
        self._pairings += 1
        if self.record_events:
            self._log.append(PairingEvent(left=left.handle,
                                          right=right.handle,
                                          winner=winner.handle,
                                          loser=loser.handle,
                                          pass_=pass_,
                                          op_index=self.op_index))
        logger.debug("op %d %s pairing %d/%d -> winner %d", self.op_index,
                     pass_, left.handle, right.handle, winner.handle)

    @staticmethod
    def _attach(winner, loser):
        first = winner.leftmost_child
        loser.right_sibling = first
        if first is not None:
            first.parent_or_left_neighbor = loser
        winner.leftmost_child = loser
        loser.parent_or_left_neighbor = winner

    def _pair(self, left, right, pass_):
        # Pairs two roots and returns the new root.
        if self._left_wins(left, right):
            winner, loser = left, right
        else:
            winner, loser = right, left
        self._attach(winner, loser)
        self._emit(left, right, winner, loser, pass_)
        return winner

    def _pair_with_right_sibling(self, left, pass_):
        # Pairs `left` with its right sibling inside a chain. The winner takes
        # the position of `left` in the chain and is returned.
        right = left.right_sibling
        after = right.right_sibling
        before = left.parent_or_left_neighbor
        if self._left_wins(left, right):
            winner, loser = left, right
        else:
            winner, loser = right, left

        winner.parent_or_left_neighbor = before
        if before is not None:
            if before.leftmost_child is left:
                before.leftmost_child = winner
            else:
                before.right_sibling = winner
        winner.right_sibling = after
        if after is not None:
            after.parent_or_left_neighbor = winner

        self._attach(winner, loser)
        self._emit(left, right, winner, loser, pass_)
        return winner

    def _combine(self, head, first_pass, second_pass):
        # Two-pass combine of the chain of trees starting at `head`. Returns
        # the root of the resulting tree, or None for an empty chain.
        if head is None:
            return None
        head.parent_or_left_neighbor = None

        # First pass: adjacent pairs from left to right. With an odd number
        # of trees, the rightmost one stays unpaired.
        node = head
        last = head
        while node is not None:
            if node.right_sibling is None:
                last = node
                break
            node = self._pair_with_right_sibling(node, first_pass)
            last = node
            node = node.right_sibling

        # Second pass: incremental pairing from right to left.
        node = last
        while node.parent_or_left_neighbor is not None:
            node = self._pair_with_right_sibling(
                node.parent_or_left_neighbor, second_pass)
        return node

    @staticmethod
    def _detach(node):
        before = node.parent_or_left_neighbor
        after = node.right_sibling
        if before.leftmost_child is node:
            before.leftmost_child = after
        else:
            before.right_sibling = after
        if after is not None:
            after.parent_or_left_neighbor = before
        node.parent_or_left_neighbor = None
        node.right_sibling = None

    def _remove_root(self, record):
        root = record.root
        record.root = self._combine(root.leftmost_child, FIRST_PASS,
                                    SECOND_PASS)
        self._forget(record, root)
        return root

    def _forget(self, record, node):
        node.leftmost_child = None
        node._home = None
        del self._nodes[node.handle]
        record.size -= 1

    # --------------------------------------------------------------------
    # Public operations
    # --------------------------------------------------------------------

    def make_heap(self):
        """
        Creates a new empty heap.

        Returns
        -------
        int
            Id of the new heap.
        """
        self._begin()
        heap_id = self._next_heap
        self._next_heap += 1
        record = _HeapRecord(heap_id)
        self._heaps[heap_id] = record
        self._finish('make_heap', record)
        return heap_id

    def insert(self, heap_id, key):
        """
        Inserts a new node with `key` into heap `heap_id`.

        The new node is paired with the root (the pairing is performed on the
        new node, so it wins ties).

        Parameters
        ----------
        heap_id : int
            Live heap id.
        key : float
            Finite key of the new node.

        Returns
        -------
        int
            Handle of the new node.

        Raises
        ------
        InvalidHeapError
            If `heap_id` is not live.
        DomainError
            If `key` is not finite.
        """
        self._begin()
        record = self._live(heap_id)
        key = as_key(key)

        handle = self._next_node
        self._next_node += 1
        node = HeapNode(key, handle, record)
        self._nodes[handle] = node
        if record.root is None:
            record.root = node
        else:
            record.root = self._pair(node, record.root, INSERT_PAIRING)
        record.size += 1
        self._finish('insert', record)
        return handle

    def meld(self, heap_id1, heap_id2):
        """
        Melds two heaps into a new heap.

        Both argument ids become invalid. If both heaps have nodes, their
        roots are paired with the root of `heap_id1` on the left.

        Returns
        -------
        int
            Id of the resulting heap.

        Raises
        ------
        AliasingError
            If both ids are the same.
        InvalidHeapError
            If one of the ids is not live.
        """
        self._begin()
        if heap_id1 == heap_id2:
            raise AliasingError(f"cannot meld heap {heap_id1} with itself")
        first = self._live(heap_id1)
        second = self._live(heap_id2)

        heap_id = self._next_heap
        self._next_heap += 1
        record = _HeapRecord(heap_id)
        if first.root is not None and second.root is not None:
            record.root = self._pair(first.root, second.root, MELD_PAIRING)
        else:
            record.root = first.root if first.root is not None \
                else second.root
        record.size = first.size + second.size

        for old in (first, second):
            old.forward = record
            old.root = None
            del self._heaps[old.heap_id]
        self._heaps[heap_id] = record
        self._finish('meld', record)
        return heap_id

    def find_min(self, heap_id):
        """
        Returns the handle and key of the root of heap `heap_id`.

        Raises
        ------
        EmptyHeapError
            If the heap has no nodes.
        """
        self._begin()
        record = self._live(heap_id)
        if record.root is None:
            raise EmptyHeapError(f"heap {heap_id} is empty")
        self._finish('find_min', record)
        return record.root.handle, record.root.key

    def extract_min(self, heap_id):
        """
        Removes the root of heap `heap_id` and returns its handle and key.

        The children of the root are paired from left to right in adjacent
        pairs (first pass) and the resulting trees are then combined from
        right to left (second pass). With c children, c - 1 pairings are
        performed.

        Returns
        -------
        tuple of (int, float)

        Raises
        ------
        EmptyHeapError
            If the heap has no nodes.
        """
        self._begin()
        record = self._live(heap_id)
        if record.root is None:
            raise EmptyHeapError(f"heap {heap_id} is empty")
        root = self._remove_root(record)
        self._finish('extract_min', record)
        return root.handle, root.key

    def decrease_key(self, heap_id, handle, delta):
        """
        Decreases the key of node `handle` by `delta`.

        If the node is not the root, its subtree is cut from the heap and
        paired with the root (the pairing is performed on the node). This
        also happens when `delta` is zero.

        Raises
        ------
        InvalidHeapError
            If `heap_id` is not live.
        InvalidHandleError
            If `handle` is unknown or its node was removed.
        WrongHeapError
            If the node belongs to another heap.
        DomainError
            If `delta` is negative or not finite, or the new key overflows.
        """
        self._begin()
        record = self._live(heap_id)
        node = self._node_in(record, handle)
        delta = as_key(delta, what="delta")
        if delta < 0:
            raise DomainError(f"negative delta {delta!r}")
        new_key = node.key - delta
        if not math.isfinite(new_key):
            raise DomainError(f"key of node {handle} overflows")

        node.key = new_key
        if node is not record.root:
            self._detach(node)
            record.root = self._pair(node, record.root,
                                     DECREASE_KEY_PAIRING)
        self._finish('decrease_key', record)

    def delete(self, heap_id, handle):
        """
        Removes node `handle` from heap `heap_id`.

        Deleting the root is an extract_min. Otherwise the subtree of the
        node is cut, the children of the node are combined with the two-pass
        procedure, and the resulting tree is paired with the root (the
        pairing is performed on the root).

        Raises
        ------
        InvalidHeapError, InvalidHandleError, WrongHeapError
            As in :meth:`decrease_key`.
        """
        self._begin()
        record = self._live(heap_id)
        node = self._node_in(record, handle)
        if node is record.root:
            self._remove_root(record)
        else:
            self._detach(node)
            survivor = self._combine(node.leftmost_child, DELETE_PAIRING,
                                     DELETE_PAIRING)
            self._forget(record, node)
            if survivor is not None:
                record.root = self._pair(record.root, survivor,
                                         DELETE_PAIRING)
        self._finish('delete', record)

    def drain_events(self):
        """
        Returns and clears the event log.

        Returns
        -------
        list
            `PairingEvent` and `CostRecord` named tuples in execution order.
            The pairings of an operation precede its cost record.
        """
        log = self._log
        self._log = []
        return log

    # --------------------------------------------------------------------
    # Inspection
    # --------------------------------------------------------------------

    def heap_ids(self):
        """ Sorted list of the live heap ids. """
        return sorted(self._heaps)

    def is_live(self, heap_id):
        return heap_id in self._heaps

    def size(self, heap_id):
        return self._live(heap_id).size

    def root(self, heap_id):
        """ Root `HeapNode` of a live heap, or None if the heap is empty. """
        return self._live(heap_id).root

    def node(self, handle):
        """ Live `HeapNode` with `handle`. """
        node = self._nodes.get(handle)
        if node is None:
            raise InvalidHandleError(f"no live node {handle}")
        return node

    def heap_of(self, handle):
        """ Id of the heap that holds node `handle`. """
        return self._record_of(self.node(handle)).heap_id

    def has_node(self, handle):
        return handle in self._nodes

    def handles(self):
        """ Set of the live node handles. """
        return set(self._nodes)

    def nodes(self, heap_id):
        """
        Yields the nodes of a heap in pre-order of the binary
        representation (node, then its children, then its right siblings).
        """
        root = self._live(heap_id).root
        stack = [root] if root is not None else []
        while stack:
            node = stack.pop()
            yield node
            if node.right_sibling is not None:
                stack.append(node.right_sibling)
            if node.leftmost_child is not None:
                stack.append(node.leftmost_child)

    def shape(self, heap_id):
        """
        Returns the general tree of a heap as nested `TreeShape` tuples, or
        None if the heap is empty.
        """
        order = list(self.nodes(heap_id))
        shapes = {}
        for node in reversed(order):
            shapes[node.handle] = TreeShape(
                node.handle, node.key,
                tuple(shapes[child.handle] for child in node.children()))
        if not order:
            return None
        return shapes[order[0].handle]

    def verify(self):
        """
        Checks the structure of every heap.

        Heap order, the consistency of the binary links, the root
        conditions, node counts and the set of live handles are checked.

        Returns
        -------
        list of str
            Description of every problem found. Empty if the forest is
            consistent.
        """
        problems = []
        seen = set()
        for heap_id, record in sorted(self._heaps.items()):
            root = record.root
            if root is None:
                if record.size != 0:
                    problems.append(f"heap {heap_id}: empty with size "
                                    f"{record.size}")
                continue
            if root.parent_or_left_neighbor is not None:
                problems.append(f"heap {heap_id}: root {root.handle} has a "
                                f"parent or left neighbour")
            if root.right_sibling is not None:
                problems.append(f"heap {heap_id}: root {root.handle} has a "
                                f"right sibling")

            count = 0
            # Entries are (node, general-tree parent)
            stack = [(root, None)]
            while stack:
                node, parent = stack.pop()
                if node.handle in seen:
                    problems.append(f"heap {heap_id}: node {node.handle} "
                                    f"reached twice")
                    continue
                seen.add(node.handle)
                count += 1
                if self._nodes.get(node.handle) is not node:
                    problems.append(f"heap {heap_id}: node {node.handle} is "
                                    f"not live")
                elif self._record_of(node) is not record:
                    problems.append(f"heap {heap_id}: node {node.handle} "
                                    f"points to another heap")
                if parent is not None and node.key < parent.key:
                    problems.append(f"heap {heap_id}: heap order violated "
                                    f"at {parent.handle}->{node.handle}")
                child = node.leftmost_child
                if child is not None:
                    if child.parent_or_left_neighbor is not node:
                        problems.append(f"heap {heap_id}: bad back link of "
                                        f"child {child.handle}")
                    stack.append((child, node))
                sibling = node.right_sibling
                if sibling is not None:
                    if sibling.parent_or_left_neighbor is not node:
                        problems.append(f"heap {heap_id}: bad back link of "
                                        f"sibling {sibling.handle}")
                    stack.append((sibling, parent))
            if count != record.size:
                problems.append(f"heap {heap_id}: {count} nodes, size "
                                f"{record.size}")

        if seen != set(self._nodes):
            problems.append(f"{len(set(self._nodes) - seen)} live nodes are "
                            f"not in any heap")
        return problems
