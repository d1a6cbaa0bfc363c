"""
This module defines named tuples that are used to structure the information
exchanged between the heap, the trace replay and the auditor.
"""

from collections import namedtuple


# NAMED TUPLES EMITTED BY THE PAIRING FOREST

# In `PairingEvent`:
#   `left`: handle of the node the pairing is performed on;
#   `right`: handle of the other root;
#   `winner` and `loser`: handles of the node that stays root and of the
#       node that becomes the leftmost child of the winner, respectively;
#   `pass_`: one of 'first', 'second', 'meld', 'insert', 'decrease_key' or
#       'delete';
#   `op_index`: 1-based position of the operation in the forest history.

PairingEvent = namedtuple('PairingEvent', ('left', 'right', 'winner',
                                           'loser', 'pass_', 'op_index'))

# In `CostRecord`:
#   `op_index`: 1-based position of the operation;
#   `kind`: name of the operation;
#   `heap`: id of the heap acted on (the new id for `make_heap` and `meld`);
#   `pairings`: number of pairings performed by the operation;
#   `actual_cost`: always `pairings + 1`;
#   `heap_size_after`: number of nodes in `heap` after the operation.

CostRecord = namedtuple('CostRecord', ('op_index', 'kind', 'heap',
                                       'pairings', 'actual_cost',
                                       'heap_size_after'))

# Nested tree shape returned by `PairingForest.shape`: `children` is a tuple
# of `TreeShape` in left-to-right order.

TreeShape = namedtuple('TreeShape', ('handle', 'key', 'children'))


# NAMED TUPLES DESCRIBING TRACES

# In `Operation`:
#   `kind`: one of the seven operation names;
#   `heap_args`: tuple with zero to two heap ids;
#   `node_arg`: node id for `decrease_key` and `delete`, otherwise None;
#   `key`: float key for `insert`, otherwise None;
#   `delta`: nonnegative float for `decrease_key`, otherwise None;
#   `out`: explicit output id (`heap_out` of `make_heap`/`meld`, `node_out`
#       of `insert`), otherwise None.

Operation = namedtuple('Operation', ('kind', 'heap_args', 'node_arg', 'key',
                                     'delta', 'out'))

# `Trace` holds a tuple of `Operation` and the id convention of the file.
# Only the 'explicit' convention (output ids written in each record) exists.

Trace = namedtuple('Trace', ('operations', 'id_convention'))

# One problem found by `validate_trace`. `op_index` is 1-based.

Violation = namedtuple('Violation', ('op_index', 'message'))


# NAMED TUPLES PRODUCED BY THE AUDITOR

# In `NodeAnnotation`:
#   `handle`: trace id of the node;
#   `white`: True if the node is removed at some point of the trace;
#   `s`: number of white nodes in the binary subtree rooted at the node;
#   `rank`: 18 log2(s) for white nodes, 0 for black nodes;
#   `heavy`, `weight_pot`: heavy flag and weight potential (0 or 6);
#   `captured`, `capture_pot`: captured flag and capture potential (0 or 6);
#   `triple_white`, `tw_pot`: triple-white flag and its potential (0 or 6);
#   `potential`: sum of the four components;
#   `parent`: trace id of the general-tree parent, None for roots.

NodeAnnotation = namedtuple('NodeAnnotation', ('handle', 'white', 's', 'rank',
                                               'heavy', 'weight_pot',
                                               'captured', 'capture_pot',
                                               'triple_white', 'tw_pot',
                                               'potential', 'parent'))

# `HeapPotential` is the contribution of one heap: `white_count` white nodes,
# `heap_pot` = 8 - 36 sum(log2 i), and `total` = heap_pot plus the node
# potentials of the heap.

HeapPotential = namedtuple('HeapPotential', ('heap', 'size', 'white_count',
                                             'heap_pot', 'total'))

# `PotentialSnapshot`: `nodes` maps node ids to `NodeAnnotation`, `heaps`
# maps heap ids to `HeapPotential`, `phi` is the potential of the forest.

PotentialSnapshot = namedtuple('PotentialSnapshot', ('nodes', 'heaps', 'phi'))

# Outcome of the three per-pairing rank checks of an Extract-Min pairing.
# `s_a`, `s_b`, `s_c` are taken before the pairing (`s_c` is 1 when the
# right neighbour of `right` is missing); `gain` is the change of the rank
# potential of the two paired nodes; `checks` maps 'i', 'ii', 'iii' to
# (bound, passed) pairs; 'i' is only present for white-white pairings.

PairingCheck = namedtuple('PairingCheck', ('op_index', 'event', 's_a', 's_b',
                                           's_c', 'gain', 'checks'))

# One row of the audit report.

AuditEntry = namedtuple('AuditEntry', ('op_index', 'kind', 'a', 'n',
                                       'pairings', 'delta_phi', 'bound',
                                       'slack'))

# One failed check: `check` names the check, `detail` is a readable message.

AuditFailure = namedtuple('AuditFailure', ('op_index', 'check', 'detail'))

# Per Extract-Min aggregates: children of the removed root `c`, white-white
# first pass pairings `w`, and the rank gains of both passes.

ExtractStats = namedtuple('ExtractStats', ('op_index', 'c', 'w', 'n',
                                           'first_pass_gain', 'total_gain',
                                           'first_pass_bound',
                                           'total_bound'))


# NAMED TUPLES OF THE DIFFERENTIAL RUN AND THE BENCHMARK

DiffReport = namedtuple('DiffReport', ('equivalent', 'op_index', 'expected',
                                       'actual', 'message'))

# Key of one benchmark row: workload size, power-of-two heap size bucket
# after the operation, and operation kind.

BenchKey = namedtuple('BenchKey', ('size', 'bucket', 'kind'))

# One row of the benchmark: `count` operations with the sum `total_cost` of
# their actual costs, `pairings` in total, the mean audit slack (None when
# not audited) and the wall time spent in the operations.

BenchRow = namedtuple('BenchRow', ('size', 'bucket', 'kind', 'count',
                                   'total_cost', 'mean_cost', 'pairings',
                                   'mean_slack', 'wall_time'))
