import unittest

from pairaudit import PairingForest
from pairaudit.pairaudit_types import PairingEvent, CostRecord
from pairaudit.exceptions import (PairAuditError, InvalidHeapError,
                                  InvalidHandleError, WrongHeapError,
                                  AliasingError, EmptyHeapError, DomainError)


def key_shape(shape):
    # Nested (key, children) tuples of a `TreeShape`
    if shape is None:
        return None
    return (shape.key, tuple(key_shape(child) for child in shape.children))


def build_golden_heap(forest):
    # Root 1 with children 4, 3, 7, 2, 5, 9, 8, 6 from left to right
    heap = forest.make_heap()
    handles = {}
    for key in (1, 6, 8, 9, 5, 2, 7, 3, 4):
        handles[key] = forest.insert(heap, key)
    return heap, handles


def split_log(log):
    events = [item for item in log if isinstance(item, PairingEvent)]
    costs = [item for item in log if isinstance(item, CostRecord)]
    return events, costs


class PairingForestMakeHeapTestCase(unittest.TestCase):

    def test_make_heap_is_empty(self):
        forest = PairingForest()
        heap = forest.make_heap()
        self.assertEqual(forest.size(heap), 0)
        self.assertIsNone(forest.root(heap))
        cost = forest.last_cost
        self.assertEqual(cost.pairings, 0)
        self.assertEqual(cost.actual_cost, 1)
        self.assertEqual(cost.kind, 'make_heap')

    def test_distinct_ids(self):
        forest = PairingForest()
        self.assertNotEqual(forest.make_heap(), forest.make_heap())

    def test_find_min_on_empty_heap(self):
        forest = PairingForest()
        heap = forest.make_heap()
        with self.assertRaises(EmptyHeapError):
            forest.find_min(heap)
        with self.assertRaises(IndexError):
            forest.extract_min(heap)


class PairingForestInsertTestCase(unittest.TestCase):

    def setUp(self):
        self.forest = PairingForest()
        self.heap = self.forest.make_heap()
        self.three = self.forest.insert(self.heap, 3)

    def test_insert_into_empty_heap(self):
        self.assertEqual(self.forest.last_cost.actual_cost, 1)
        self.assertEqual(self.forest.root(self.heap).handle, self.three)

    def test_larger_key_loses(self):
        five = self.forest.insert(self.heap, 5)
        self.assertEqual(key_shape(self.forest.shape(self.heap)),
                         (3, ((5, ()),)))
        root = self.forest.root(self.heap)
        self.assertEqual(root.leftmost_child.handle, five)
        self.assertEqual(self.forest.last_cost.pairings, 1)
        self.assertEqual(self.forest.last_cost.actual_cost, 2)

    def test_smaller_key_wins(self):
        two = self.forest.insert(self.heap, 2)
        self.assertEqual(self.forest.root(self.heap).handle, two)
        self.assertEqual(key_shape(self.forest.shape(self.heap)),
                         (2, ((3, ()),)))

    def test_tie_goes_to_new_node(self):
        other = self.forest.insert(self.heap, 3)
        self.assertEqual(self.forest.root(self.heap).handle, other)
        events, _ = split_log(self.forest.drain_events())
        self.assertEqual(events[-1].left, other)
        self.assertEqual(events[-1].winner, other)
        self.assertEqual(events[-1].pass_, 'insert')

    def test_invalid_keys(self):
        for key in (float('nan'), float('inf'), -float('inf'), "a", None,
                    True):
            with self.subTest(key=key):
                with self.assertRaises(DomainError):
                    self.forest.insert(self.heap, key)
        self.assertEqual(self.forest.size(self.heap), 1)

    def test_unknown_heap(self):
        with self.assertRaises(InvalidHeapError):
            self.forest.insert(99, 1)
        with self.assertRaises(KeyError):
            self.forest.insert(99, 1)


class PairingForestMeldTestCase(unittest.TestCase):

    def setUp(self):
        self.forest = PairingForest()

    def test_meld_two_singletons(self):
        first = self.forest.make_heap()
        second = self.forest.make_heap()
        self.forest.insert(first, 1)
        self.forest.insert(second, 2)
        melded = self.forest.meld(first, second)
        self.assertNotIn(melded, (first, second))
        self.assertEqual(key_shape(self.forest.shape(melded)),
                         (1, ((2, ()),)))
        self.assertEqual(self.forest.last_cost.actual_cost, 2)
        self.assertEqual(self.forest.size(melded), 2)

        with self.assertRaises(InvalidHeapError) as error:
            self.forest.find_min(first)
        self.assertIn("stale heap id", str(error.exception))
        with self.assertRaises(InvalidHeapError):
            self.forest.insert(second, 4)

    def test_meld_with_empty_heap(self):
        empty = self.forest.make_heap()
        full = self.forest.make_heap()
        seven = self.forest.insert(full, 7)
        melded = self.forest.meld(empty, full)
        self.assertEqual(self.forest.last_cost.pairings, 0)
        self.assertEqual(self.forest.last_cost.actual_cost, 1)
        self.assertEqual(self.forest.find_min(melded), (seven, 7.0))
        self.assertEqual(self.forest.heap_of(seven), melded)

    def test_meld_aliasing(self):
        heap = self.forest.make_heap()
        with self.assertRaises(AliasingError):
            self.forest.meld(heap, heap)
        self.assertTrue(self.forest.is_live(heap))

    def test_nodes_follow_repeated_melds(self):
        heaps = [self.forest.make_heap() for _ in range(4)]
        handles = [self.forest.insert(heap, key)
                   for key, heap in zip((4, 3, 2, 1), heaps)]
        left = self.forest.meld(heaps[0], heaps[1])
        right = self.forest.meld(heaps[2], heaps[3])
        result = self.forest.meld(left, right)
        for handle in handles:
            self.assertEqual(self.forest.heap_of(handle), result)
        self.forest.decrease_key(result, handles[0], 10)
        self.assertEqual(self.forest.find_min(result), (handles[0], -6.0))
        self.assertEqual(self.forest.verify(), [])


class PairingForestExtractMinTestCase(unittest.TestCase):

    def test_golden_heap(self):
        forest = PairingForest()
        heap, handles = build_golden_heap(forest)
        self.assertEqual(key_shape(forest.shape(heap)),
                         (1, tuple((key, ()) for key in
                                   (4, 3, 7, 2, 5, 9, 8, 6))))
        forest.drain_events()

        self.assertEqual(forest.extract_min(heap), (handles[1], 1.0))
        expected = (2, ((3, ((4, ()),)),
                        (5, ((6, ((8, ()),)), (9, ()))),
                        (7, ())))
        self.assertEqual(key_shape(forest.shape(heap)), expected)
        self.assertEqual(forest.find_min(heap), (handles[2], 2.0))

        events, costs = split_log(forest.drain_events())
        self.assertEqual([event.pass_ for event in events],
                         ['first'] * 4 + ['second'] * 3)
        self.assertEqual([(event.left, event.right) for event in events[:4]],
                         [(handles[4], handles[3]), (handles[7], handles[2]),
                          (handles[5], handles[9]), (handles[8], handles[6])])
        self.assertEqual(costs[0].pairings, 7)
        self.assertEqual(costs[0].actual_cost, 8)
        self.assertEqual(costs[0].heap_size_after, 8)
        self.assertEqual(costs[1].kind, 'find_min')
        self.assertEqual(forest.verify(), [])

    def test_singleton(self):
        forest = PairingForest()
        heap = forest.make_heap()
        four = forest.insert(heap, 4)
        self.assertEqual(forest.extract_min(heap), (four, 4.0))
        self.assertEqual(forest.size(heap), 0)
        self.assertEqual(forest.last_cost.actual_cost, 1)
        with self.assertRaises(InvalidHandleError):
            forest.delete(heap, four)

    def test_odd_number_of_children(self):
        forest = PairingForest()
        heap = forest.make_heap()
        for key in (1, 4, 2, 3):
            forest.insert(heap, key)
        self.assertEqual(key_shape(forest.shape(heap)),
                         (1, ((3, ()), (2, ()), (4, ()))))
        forest.drain_events()
        forest.extract_min(heap)
        self.assertEqual(key_shape(forest.shape(heap)),
                         (2, ((4, ()), (3, ()))))
        events, costs = split_log(forest.drain_events())
        self.assertEqual([event.pass_ for event in events],
                         ['first', 'second'])
        self.assertEqual(costs[0].actual_cost, 3)

    def test_drain_sequence_is_sorted(self):
        forest = PairingForest()
        heap = forest.make_heap()
        keys = [5, 1, 9, 3, 3, 7, 0, 8, 2, 6, 4, 3]
        for key in keys:
            forest.insert(heap, key)
        drained = [forest.extract_min(heap)[1] for _ in keys]
        self.assertEqual(drained, sorted(keys))


class PairingForestDecreaseKeyTestCase(unittest.TestCase):

    def setUp(self):
        self.forest = PairingForest()
        self.heap = self.forest.make_heap()
        self.two = self.forest.insert(self.heap, 2)
        self.five = self.forest.insert(self.heap, 5)
        self.forest.drain_events()

    def test_cut_and_pair(self):
        self.forest.decrease_key(self.heap, self.five, 4)
        self.assertEqual(key_shape(self.forest.shape(self.heap)),
                         (1, ((2, ()),)))
        events, costs = split_log(self.forest.drain_events())
        self.assertEqual(len(events), 1)
        self.assertEqual(events[0].left, self.five)
        self.assertEqual(events[0].pass_, 'decrease_key')
        self.assertEqual(costs[0].actual_cost, 2)

    def test_root_in_place(self):
        self.forest.decrease_key(self.heap, self.two, 10)
        self.assertEqual(key_shape(self.forest.shape(self.heap)),
                         (-8, ((5, ()),)))
        events, costs = split_log(self.forest.drain_events())
        self.assertEqual(events, [])
        self.assertEqual(costs[0].actual_cost, 1)

    def test_zero_delta_still_cuts(self):
        self.forest.decrease_key(self.heap, self.five, 0)
        events, costs = split_log(self.forest.drain_events())
        self.assertEqual(len(events), 1)
        self.assertEqual(costs[0].actual_cost, 2)
        self.assertEqual(self.forest.root(self.heap).handle, self.two)

    def test_cut_from_middle_of_sibling_chain(self):
        forest = PairingForest()
        heap = forest.make_heap()
        handles = [forest.insert(heap, key) for key in (0, 10, 20, 30)]
        # Children of the root: 30, 20, 10
        forest.decrease_key(heap, handles[2], 25)
        self.assertEqual(key_shape(forest.shape(heap)),
                         (-5, ((0, ((30, ()), (10, ()))),)))
        self.assertEqual(forest.verify(), [])

    def test_errors(self):
        other = self.forest.make_heap()
        stranger = self.forest.insert(other, 1)
        with self.assertRaises(DomainError):
            self.forest.decrease_key(self.heap, self.five, -1)
        with self.assertRaises(DomainError):
            self.forest.decrease_key(self.heap, self.five, float('nan'))
        with self.assertRaises(WrongHeapError):
            self.forest.decrease_key(self.heap, stranger, 1)
        with self.assertRaises(InvalidHandleError):
            self.forest.decrease_key(self.heap, 1000, 1)
        self.forest.delete(self.heap, self.five)
        with self.assertRaises(InvalidHandleError):
            self.forest.decrease_key(self.heap, self.five, 1)
        self.assertEqual(key_shape(self.forest.shape(self.heap)),
                         (2, ()))

    def test_failed_operations_advance_counter(self):
        before = self.forest.op_index
        with self.assertRaises(PairAuditError):
            self.forest.decrease_key(self.heap, self.five, -1)
        self.assertEqual(self.forest.op_index, before + 1)
        self.assertEqual(self.forest.drain_events(), [])
        self.assertEqual(self.forest.verify(), [])


class PairingForestDeleteTestCase(unittest.TestCase):

    def test_delete_singleton_root(self):
        forest = PairingForest()
        heap = forest.make_heap()
        node = forest.insert(heap, 1)
        forest.delete(heap, node)
        self.assertEqual(forest.size(heap), 0)
        self.assertEqual(forest.last_cost.actual_cost, 1)

    def test_delete_leaf(self):
        forest = PairingForest()
        heap = forest.make_heap()
        forest.insert(heap, 1)
        leaf = forest.insert(heap, 2)
        forest.delete(heap, leaf)
        self.assertEqual(forest.last_cost.actual_cost, 1)
        self.assertEqual(key_shape(forest.shape(heap)), (1, ()))

    def test_delete_inner_node(self):
        forest = PairingForest()
        inner = forest.make_heap()
        two = forest.insert(inner, 2)
        forest.insert(inner, 3)
        forest.insert(inner, 5)
        outer = forest.make_heap()
        forest.insert(outer, 1)
        heap = forest.meld(outer, inner)
        self.assertEqual(key_shape(forest.shape(heap)),
                         (1, ((2, ((5, ()), (3, ()))),)))
        forest.drain_events()

        forest.delete(heap, two)
        self.assertEqual(key_shape(forest.shape(heap)),
                         (1, ((3, ((5, ()),)),)))
        events, costs = split_log(forest.drain_events())
        self.assertEqual([event.pass_ for event in events],
                         ['delete', 'delete'])
        self.assertEqual(costs[0].pairings, 2)
        self.assertEqual(costs[0].actual_cost, 3)

    def test_delete_root_is_extract_min(self):
        first = PairingForest()
        second = PairingForest()
        heap_first, handles = build_golden_heap(first)
        heap_second, _ = build_golden_heap(second)
        first.delete(heap_first, handles[1])
        second.extract_min(heap_second)
        self.assertEqual(first.shape(heap_first), second.shape(heap_second))
        self.assertEqual(first.drain_events(),
                         [item._replace(kind='delete')
                          if isinstance(item, CostRecord) and
                          item.kind == 'extract_min' else item
                          for item in second.drain_events()])


class PairingForestLogTestCase(unittest.TestCase):

    def test_drain_clears(self):
        forest = PairingForest()
        heap = forest.make_heap()
        forest.insert(heap, 1)
        forest.insert(heap, 2)
        self.assertEqual(len(forest.drain_events()), 4)
        self.assertEqual(forest.drain_events(), [])
        forest.find_min(heap)
        events, costs = split_log(forest.drain_events())
        self.assertEqual(events, [])
        self.assertEqual(len(costs), 1)

    def test_cost_is_pairings_plus_one(self):
        forest = PairingForest()
        heap, handles = build_golden_heap(forest)
        forest.decrease_key(heap, handles[9], 8.5)
        forest.delete(heap, handles[7])
        forest.extract_min(heap)
        log = forest.drain_events()
        pairings = 0
        for item in log:
            if isinstance(item, PairingEvent):
                pairings += 1
            else:
                self.assertEqual(item.pairings, pairings)
                self.assertEqual(item.actual_cost, item.pairings + 1)
                pairings = 0

    def test_without_recording(self):
        forest = PairingForest(record_events=False)
        heap, _ = build_golden_heap(forest)
        forest.extract_min(heap)
        self.assertEqual(forest.drain_events(), [])
        self.assertEqual(forest.last_cost.actual_cost, 8)


class PairingForestInvariantTestCase(unittest.TestCase):

    @staticmethod
    def _workload(forest):
        heaps = [forest.make_heap() for _ in range(3)]
        handles = []
        for i in range(60):
            key = (i * 37) % 101
            heap = heaps[i % 3]
            handles.append((heap, forest.insert(heap, key)))
        for i, (heap, handle) in enumerate(handles[::4]):
            forest.decrease_key(heap, handle, i % 7)
        for heap in heaps:
            for _ in range(5):
                forest.extract_min(heap)
        for heap, handle in handles[1::9]:
            if forest.has_node(handle):
                forest.delete(heap, handle)
        return forest.meld(forest.meld(heaps[0], heaps[1]), heaps[2])

    def test_structure_after_workload(self):
        forest = PairingForest()
        heap = self._workload(forest)
        self.assertEqual(forest.verify(), [])
        self.assertEqual(forest.size(heap), len(forest))
        self.assertEqual(forest.handles(),
                         {node.handle for node in forest.nodes(heap)})

    def test_determinism(self):
        first = PairingForest()
        second = PairingForest()
        self.assertEqual(first.shape(self._workload(first)),
                         second.shape(self._workload(second)))


if __name__ == "__main__":
    unittest.main()
