"""
Workload benchmark of the pairing heap.

Each cell of the benchmark generates a random trace of a given size with one
seed, replays it on a :class:`pairaudit.PairingForest` and groups the cost
records by operation kind and by the size of the heap after the operation,
rounded down to a power of two (the bucket). Pairings are the primary
measure; wall time is recorded as well. With `audit=True`, the trace is also
audited and the mean slack of every group is reported.

Cells are independent and run in parallel with `joblib`; their results are
merged in the order of their keys, so the report does not depend on the
number of workers.

.. autofunction:: pairaudit.bench.run_benchmark
"""

import logging
import time
from collections import defaultdict

from joblib import Parallel, delayed
from tqdm import tqdm

from pairaudit.pairaudit_types import BenchKey, BenchRow
from pairaudit.heap import PairingForest
from pairaudit.settings import pairaudit_setting
from pairaudit.trace.generator import (GeneratorConfig, generate_random_trace,
                                        check_config)
from pairaudit.trace.replay import TraceReplayer
from pairaudit.audit.auditor import audit_trace


# Create logger and set configuration
logger = logging.getLogger(__file__)
log_handler = logging.StreamHandler()
log_handler.setFormatter(logging.Formatter("[%(asctime)s] pairaudit.bench -"
                                           " %(levelname)s: %(message)s"))
logger.addHandler(log_handler)
logger.propagate = False


def size_bucket(n):
    """ Largest power of two not above `n`, 0 for `n` = 0. """
    return 1 << (n.bit_length() - 1) if n > 0 else 0


class BenchReport(object):
    """
    Aggregated benchmark results.

    Attributes
    ----------
    rows : list of BenchRow
        One row per (size, bucket, kind), sorted by these keys.
    cells : list of tuple
        (size, seed) of the cells that were run, sorted.
    """

    def __init__(self, rows, cells):
        self.rows = rows
        self.cells = cells

    def total_pairings(self):
        return sum(row.pairings for row in self.rows)

    def total_cost(self):
        return sum(row.total_cost for row in self.rows)

    def row(self, size, bucket, kind):
        """ The row of one key, or None. """
        for row in self.rows:
            if (row.size, row.bucket, row.kind) == (size, bucket, kind):
                return row
        return None


def _run_cell(size, seed, weights, survivor_fraction, audit):
    # Runs one (size, seed) cell and returns its sums per BenchKey
    config = GeneratorConfig(op_count=size, weights=weights,
                             survivor_fraction=survivor_fraction, seed=seed)
    trace = generate_random_trace(config)
    replayer = TraceReplayer(PairingForest(record_events=False))
    forest = replayer.forest

    # Sums are [count, cost, pairings, slack, wall time]
    sums = defaultdict(lambda: [0, 0, 0, 0.0, 0.0])
    keys = []
    for operation in trace.operations:
        start = time.perf_counter()
        replayer.apply(operation)
        elapsed = time.perf_counter() - start
        cost = forest.last_cost
        key = BenchKey(size, size_bucket(cost.heap_size_after),
                       operation.kind)
        keys.append(key)
        cell = sums[key]
        cell[0] += 1
        cell[1] += cost.actual_cost
        cell[2] += cost.pairings
        cell[4] += elapsed

    if audit:
        report = audit_trace(trace)
        for key, entry in zip(keys, report.entries):
            sums[key][3] += entry.slack
    return dict(sums)


def run_benchmark(sizes, weights=None, seeds=1, survivor_fraction=0.5,
                  audit=False, n_jobs=None, show_progress=False):
    """
    Runs the benchmark for every size and seed.

    Parameters
    ----------
    sizes : list of int
        Number of operations of the generated traces.
    weights : dict, optional
        Operation mix. If None, the default mix is used.
        Default: None
    seeds : int, optional
        Number of seeds per size; seeds 0 to `seeds - 1` are used.
        Default: 1
    survivor_fraction : float, optional
        Survivor fraction of the generated traces.
        Default: 0.5
    audit : bool, optional
        If True, every trace is also audited and mean slacks are reported.
        Default: False
    n_jobs : int, optional
        Number of joblib workers. If None, the `n_jobs` setting is used.
        Default: None
    show_progress : bool, optional
        If True, shows a progress bar over the cells.
        Default: False

    Returns
    -------
    BenchReport

    Raises
    ------
    GeneratorConfigError
        If the mix or survivor fraction cannot generate traces.
    """
    check_config(GeneratorConfig(op_count=max(sizes, default=0),
                                 weights=weights,
                                 survivor_fraction=survivor_fraction))
    if n_jobs is None:
        n_jobs = pairaudit_setting('n_jobs')
    cells = sorted((size, seed) for size in sizes for seed in range(seeds))
    results = Parallel(n_jobs=n_jobs)(
        delayed(_run_cell)(size, seed, weights, survivor_fraction, audit)
        for size, seed in tqdm(cells, desc="Benchmark cells",
                               disable=not show_progress))

    totals = defaultdict(lambda: [0, 0, 0, 0.0, 0.0])
    for sums in results:
        for key in sorted(sums):
            total = totals[key]
            for i, value in enumerate(sums[key]):
                total[i] += value

    rows = []
    for key in sorted(totals):
        count, cost, pairings, slack, wall_time = totals[key]
        rows.append(BenchRow(size=key.size, bucket=key.bucket, kind=key.kind,
                             count=count, total_cost=cost,
                             mean_cost=cost / count, pairings=pairings,
                             mean_slack=slack / count if audit else None,
                             wall_time=wall_time))
    logger.info("benchmark of %d cells: %d pairings", len(cells),
                sum(row.pairings for row in rows))
    return BenchReport(rows, cells)
