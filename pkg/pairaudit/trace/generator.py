"""
Random generation of valid traces.

The generator drives a :class:`pairaudit.PairingForest` while it emits
operations, so it always knows which heaps and nodes are live and which node
an extract_min removed. Only operations that can be executed are drawn; the
weights of the other kinds are ignored for that step.

The survivor fraction `f` sets how many of the inserted nodes are still in
the forest at the end of the trace. After `I` inserts the generator aims at
`ceil((1 - f) * I)` removals: extract_min and delete are drawn only while
fewer removals happened, and other operations are drawn only while the
remaining steps can still reach the target.

.. autofunction:: pairaudit.trace.generate_random_trace
.. autofunction:: pairaudit.trace.parse_mix
"""

import logging
import math
from collections import namedtuple

from tqdm import tqdm

from pairaudit.exceptions import GeneratorConfigError
from pairaudit.heap import PairingForest
from pairaudit.trace.format import OPERATION_KINDS
from pairaudit.trace.prng import XorShift64Star, MASK64
from pairaudit.trace.replay import TraceReplayer, TraceBuilder


# Create logger and set configuration
logger = logging.getLogger(__file__)
log_handler = logging.StreamHandler()
log_handler.setFormatter(logging.Formatter("[%(asctime)s] "
                                           "pairaudit.trace.generator -"
                                           " %(levelname)s: %(message)s"))
logger.addHandler(log_handler)
logger.propagate = False


KEY_DISTRIBUTIONS = ('uniform', 'permutation')

DEFAULT_MIX = {'make_heap': 1.0,
               'insert': 8.0,
               'meld': 1.0,
               'find_min': 2.0,
               'extract_min': 4.0,
               'decrease_key': 3.0,
               'delete': 1.0}

REMOVALS = ('extract_min', 'delete')


# In `GeneratorConfig`:
#   `op_count`: number of operations to generate;
#   `weights`: dictionary with the relative weight of each operation kind;
#       missing kinds have weight 0;
#   `key_distribution`: 'uniform' for real keys in `key_range`, or
#       'permutation' for a random permutation of 0, ..., op_count - 1;
#   `key_range`: (lo, hi) tuple for uniform keys;
#   `survivor_fraction`: fraction of inserted nodes left at the end;
#   `seed`: unsigned 64-bit seed.

GeneratorConfig = namedtuple('GeneratorConfig',
                             ('op_count', 'weights', 'key_distribution',
                              'key_range', 'survivor_fraction', 'seed'),
                             defaults=(None, 'uniform', (0.0, 1.0), 0.5, 0))


def parse_mix(text):
    """
    Parses an operation mix such as ``"insert=8,extract_min=4,make_heap=1"``.

    The word ``default`` gives the default mix. Kinds that are not named get
    weight 0.

    Returns
    -------
    dict
        Weight of each operation kind.

    Raises
    ------
    GeneratorConfigError
        If the text names an unknown kind or a weight is not a nonnegative
        number.
    """
    if text is None or text.strip() == 'default':
        return dict(DEFAULT_MIX)
    weights = dict.fromkeys(OPERATION_KINDS, 0.0)
    for item in text.split(','):
        if not item.strip():
            continue
        name, sep, value = item.partition('=')
        name = name.strip()
        if not sep or name not in weights:
            raise GeneratorConfigError(f"invalid mix entry '{item}'")
        try:
            weight = float(value)
        except ValueError:
            raise GeneratorConfigError(f"invalid weight in '{item}'")
        if not math.isfinite(weight) or weight < 0:
            raise GeneratorConfigError(f"invalid weight in '{item}'")
        weights[name] = weight
    return weights


def _weights_of(config):
    weights = dict.fromkeys(OPERATION_KINDS, 0.0)
    given = config.weights if config.weights is not None else DEFAULT_MIX
    for name, weight in given.items():
        if name not in weights:
            raise GeneratorConfigError(f"unknown operation kind '{name}'")
        weight = float(weight)
        if not math.isfinite(weight) or weight < 0:
            raise GeneratorConfigError(f"weight of '{name}' must be a "
                                       f"nonnegative number")
        weights[name] = weight
    return weights


def check_config(config):
    """
    Checks that traces can be generated with `config`.

    Returns
    -------
    dict
        The weight of every operation kind.

    Raises
    ------
    GeneratorConfigError
        If a value is out of range or the mix is infeasible: all weights
        zero, no make_heap weight, or inserts without any removal weight
        when nodes are expected to be removed.
    """
    if type(config.op_count) is not int or config.op_count < 0:
        raise GeneratorConfigError("op_count must be a nonnegative integer")
    weights = _weights_of(config)
    if not any(weights.values()):
        raise GeneratorConfigError("all operation weights are zero")
    if config.op_count > 0 and weights['make_heap'] <= 0:
        raise GeneratorConfigError("make_heap needs a positive weight, "
                                   "otherwise no heap exists")
    fraction = config.survivor_fraction
    if not 0.0 <= fraction <= 1.0:
        raise GeneratorConfigError("survivor_fraction must be in [0, 1]")
    if (fraction < 1.0 and weights['insert'] > 0 and
            not any(weights[kind] > 0 for kind in REMOVALS)):
        raise GeneratorConfigError("survivor_fraction below 1 needs a "
                                   "positive extract_min or delete weight")
    if config.key_distribution not in KEY_DISTRIBUTIONS:
        raise GeneratorConfigError(f"unknown key distribution "
                                   f"'{config.key_distribution}'")
    low, high = config.key_range
    if not (math.isfinite(low) and math.isfinite(high) and low <= high):
        raise GeneratorConfigError("key_range must be finite with lo <= hi")
    if type(config.seed) is not int or not 0 <= config.seed <= MASK64:
        raise GeneratorConfigError("seed must be an unsigned 64-bit integer")
    return weights


class _IndexedList(object):
    # List with O(1) removal of arbitrary items (swap with the last one)

    def __init__(self):
        self.items = []
        self.position = {}

    def __len__(self):
        return len(self.items)

    def __contains__(self, item):
        return item in self.position

    def add(self, item):
        if item not in self.position:
            self.position[item] = len(self.items)
            self.items.append(item)

    def discard(self, item):
        index = self.position.pop(item, None)
        if index is None:
            return
        last = self.items.pop()
        if index < len(self.items):
            self.items[index] = last
            self.position[last] = index

    def pick(self, rng):
        return self.items[rng.below(len(self.items))]


class _TraceGenerator(object):

    def __init__(self, config, weights):
        self.config = config
        self.weights = weights
        self.rng = XorShift64Star(config.seed)
        self.builder = TraceBuilder()
        self.replayer = TraceReplayer(PairingForest(record_events=False))
        self.heaps = _IndexedList()
        self.nonempty = _IndexedList()
        self.nodes = _IndexedList()
        self.inserted = 0
        self.removed = 0

        low, high = config.key_range
        if config.key_distribution == 'permutation':
            self._keys = iter(self.rng.permutation(config.op_count))
            self._delta_limit = max(1, config.op_count // 8) + 1
        else:
            self._keys = None
            self._delta_scale = (high - low) / 8.0

    def _key(self):
        if self._keys is not None:
            return float(next(self._keys))
        low, high = self.config.key_range
        return low + (high - low) * self.rng.uniform()

    def _delta(self):
        if self._keys is not None:
            return float(self.rng.below(self._delta_limit))
        return self.rng.uniform() * self._delta_scale

    def _deficit(self, inserted=None):
        inserted = self.inserted if inserted is None else inserted
        target = math.ceil((1.0 - self.config.survivor_fraction) * inserted)
        return target - self.removed

    def _applicable(self, remaining):
        # Kinds that can be drawn when `remaining` operations follow this one
        deficit = self._deficit()
        allowed = []
        if deficit <= remaining:
            allowed.append('make_heap')
            if len(self.heaps) >= 2:
                allowed.append('meld')
            if self.nonempty:
                allowed.append('find_min')
            if self.nodes:
                allowed.append('decrease_key')
            if self.heaps and self._deficit(self.inserted + 1) <= remaining:
                allowed.append('insert')
        if deficit > 0:
            allowed.append('extract_min')
            allowed.append('delete')
        return [kind for kind in allowed if self.weights[kind] > 0]

    def _heap_of(self, node_id):
        replayer = self.replayer
        forest_heap = replayer.forest.heap_of(replayer.node_ids[node_id])
        return replayer.trace_heap(forest_heap)

    def _update_heap(self, heap_id):
        forest = self.replayer.forest
        if forest.size(self.replayer.heap_ids[heap_id]) > 0:
            self.nonempty.add(heap_id)
        else:
            self.nonempty.discard(heap_id)

    def _step(self, kind):
        builder = self.builder
        rng = self.rng
        if kind == 'make_heap':
            heap_id = builder.make_heap()
            self.replayer.apply(builder.last)
            self.heaps.add(heap_id)
        elif kind == 'insert':
            heap_id = self.heaps.pick(rng)
            node_id = builder.insert(heap_id, self._key())
            self.replayer.apply(builder.last)
            self.nodes.add(node_id)
            self.nonempty.add(heap_id)
            self.inserted += 1
        elif kind == 'meld':
            first = self.heaps.pick(rng)
            self.heaps.discard(first)
            second = self.heaps.pick(rng)
            self.heaps.discard(second)
            heap_id = builder.meld(first, second)
            self.replayer.apply(builder.last)
            self.heaps.add(heap_id)
            self.nonempty.discard(first)
            self.nonempty.discard(second)
            self._update_heap(heap_id)
        elif kind in ('find_min', 'extract_min'):
            heap_id = self.nonempty.pick(rng)
            if kind == 'find_min':
                builder.find_min(heap_id)
                self.replayer.apply(builder.last)
            else:
                builder.extract_min(heap_id)
                node_id, _ = self.replayer.apply(builder.last)
                self.nodes.discard(node_id)
                self.removed += 1
                self._update_heap(heap_id)
        else:
            node_id = self.nodes.pick(rng)
            heap_id = self._heap_of(node_id)
            if kind == 'decrease_key':
                builder.decrease_key(heap_id, node_id, self._delta())
                self.replayer.apply(builder.last)
            else:
                builder.delete(heap_id, node_id)
                self.replayer.apply(builder.last)
                self.nodes.discard(node_id)
                self.removed += 1
                self._update_heap(heap_id)

    def run(self, show_progress=False):
        op_count = self.config.op_count
        for step in tqdm(range(op_count), desc="Generating trace",
                         disable=not show_progress):
            kinds = self._applicable(op_count - step - 1)
            kind = kinds[self.rng.weighted_index(
                [self.weights[name] for name in kinds])]
            self._step(kind)
        logger.debug("generated %d operations: %d inserted, %d removed",
                     op_count, self.inserted, self.removed)
        return self.builder.build()


def generate_random_trace(config, show_progress=False):
    """
    Generates a random valid trace.

    The trace only depends on `config`: the same configuration gives the
    same trace on every run and platform.

    Parameters
    ----------
    config : GeneratorConfig
        Size, operation mix, keys, survivor fraction and seed.
    show_progress : bool, optional
        If True, shows a progress bar.
        Default: False

    Returns
    -------
    Trace

    Raises
    ------
    GeneratorConfigError
        If the configuration is invalid or the mix is infeasible.
    """
    weights = check_config(config)
    return _TraceGenerator(config, weights).run(show_progress=show_progress)
