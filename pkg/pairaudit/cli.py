"""
Command-line interface.

The `pairaudit` command has one subcommand per task::

    pairaudit gen --ops N [--mix SPEC] [--survivors F] [--seed S] --out FILE
    pairaudit validate FILE
    pairaudit run FILE [--events-out FILE] [--graph-out FILE]
    pairaudit diff FILE
    pairaudit audit FILE [--report FILE] [--csv FILE] [--tolerance T]
    pairaudit bench --sizes LIST [--mix SPEC] [--seeds K] [--csv FILE]

Exit codes: 0 on success, 1 when a check fails (invalid trace, divergence,
failed audit or a trace that cannot be replayed), 2 on usage errors and 3
when a file cannot be read or written or a trace file is malformed.

.. autofunction:: pairaudit.cli.main
"""

import argparse
import json
import logging
import os
import sys
from pathlib import Path

from pairaudit.pairaudit_types import PairingEvent
from pairaudit.exceptions import (PairAuditError, TraceFormatError,
                                  GeneratorConfigError, AuditLimitError)
from pairaudit.heap import PairingForest
from pairaudit.settings import pairaudit_setting
from pairaudit.trace import (load_trace, save_trace, validate_trace,
                             TraceReplayer, GeneratorConfig,
                             generate_random_trace, parse_mix)
from pairaudit.trace.generator import KEY_DISTRIBUTIONS
from pairaudit.oracle import diff_run
from pairaudit.audit import (audit_trace, color_nodes, write_report_jsonl,
                             write_report_csv, write_bench_csv)
from pairaudit.bench import run_benchmark
from pairaudit.graph import HeapGraph
from pairaudit.utils.files import file_sha256


# Create logger and set configuration
logger = logging.getLogger(__file__)
log_handler = logging.StreamHandler()
log_handler.setFormatter(logging.Formatter("[%(asctime)s] pairaudit.cli -"
                                           " %(levelname)s: %(message)s"))
logger.addHandler(log_handler)
logger.propagate = False


EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_FILE_ERROR = 3

PACKAGE_DIR = str(Path(__file__).resolve().parent)


class _UsageError(Exception):
    pass


def _set_verbose():
    # Module loggers are named after their source files
    for name, module_logger in logging.Logger.manager.loggerDict.items():
        if (isinstance(module_logger, logging.Logger) and
                os.path.isabs(name) and name.startswith(PACKAGE_DIR)):
            module_logger.setLevel(logging.DEBUG)


def _positive_int(text):
    value = int(text)
    if value <= 0:
        raise argparse.ArgumentTypeError(f"{text} is not a positive integer")
    return value


def _size_list(text):
    try:
        sizes = [int(item) for item in text.split(',') if item.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid size list '{text}'")
    if not sizes or any(size < 0 for size in sizes):
        raise argparse.ArgumentTypeError(f"invalid size list '{text}'")
    return sizes


def build_parser():
    parser = argparse.ArgumentParser(
        prog='pairaudit',
        description="Pairing heap traces: generation, replay, differential "
                    "testing, amortized cost audit and benchmarks.")
    parser.add_argument('--verbose', action='store_true',
                        help="Show debug messages")
    commands = parser.add_subparsers(dest='command', required=True)

    gen = commands.add_parser('gen', help="Generate a random trace")
    gen.add_argument('--ops', type=int, required=True,
                     help="Number of operations")
    gen.add_argument('--mix', default='default',
                     help="Operation weights, e.g. 'insert=8,extract_min=4'")
    gen.add_argument('--survivors', type=float, default=0.5,
                     help="Fraction of inserted nodes left at the end")
    gen.add_argument('--seed', type=int, default=0, help="Generator seed")
    gen.add_argument('--keys', choices=KEY_DISTRIBUTIONS, default='uniform',
                     help="Key distribution")
    gen.add_argument('--key-range', type=float, nargs=2, default=(0.0, 1.0),
                     metavar=('LO', 'HI'), help="Range of uniform keys")
    gen.add_argument('--out', required=True, help="Output trace file")

    validate = commands.add_parser('validate', help="Validate a trace")
    validate.add_argument('file')

    run = commands.add_parser('run', help="Replay a trace")
    run.add_argument('file')
    run.add_argument('--events-out',
                     help="Write pairing events and cost records as JSON "
                          "lines")
    run.add_argument('--graph-out',
                     help="Write the final heaps as a .gexf or .graphml "
                          "graph")

    diff = commands.add_parser('diff',
                               help="Compare the heap with the oracle")
    diff.add_argument('file')
    diff.add_argument('--progress', action='store_true')

    audit = commands.add_parser('audit', help="Audit the amortized costs")
    audit.add_argument('file')
    audit.add_argument('--report', help="JSON lines report file")
    audit.add_argument('--csv', help="CSV report file")
    audit.add_argument('--tolerance', type=float,
                       help="Absolute tolerance of the inequalities")
    audit.add_argument('--max-ops', type=_positive_int,
                       help="Largest trace accepted")
    audit.add_argument('--check-structure', action='store_true',
                       help="Check structural invariants after every "
                            "operation")
    audit.add_argument('--progress', action='store_true')

    bench = commands.add_parser('bench', help="Run a workload benchmark")
    bench.add_argument('--sizes', type=_size_list, required=True,
                       help="Comma separated trace sizes")
    bench.add_argument('--mix', default='default')
    bench.add_argument('--seeds', type=_positive_int, default=1,
                       help="Number of seeds per size")
    bench.add_argument('--survivors', type=float, default=0.5)
    bench.add_argument('--audit', action='store_true',
                       help="Audit every trace and report mean slacks")
    bench.add_argument('--csv', help="CSV report file")
    bench.add_argument('--timing', action='store_true',
                       help="Add the wall time column to the CSV")
    bench.add_argument('--jobs', type=_positive_int,
                       help="Number of parallel workers")
    bench.add_argument('--progress', action='store_true')
    return parser


def _gen(args):
    try:
        weights = parse_mix(args.mix)
        config = GeneratorConfig(op_count=args.ops, weights=weights,
                                 key_distribution=args.keys,
                                 key_range=tuple(args.key_range),
                                 survivor_fraction=args.survivors,
                                 seed=args.seed)
        trace = generate_random_trace(config)
    except GeneratorConfigError as error:
        raise _UsageError(str(error))
    save_trace(trace, args.out)
    print(f"{len(trace.operations)} operations written to {args.out}")
    return EXIT_OK


def _validate(args):
    trace = load_trace(args.file)
    violations = validate_trace(trace)
    for violation in violations:
        print(f"operation {violation.op_index}: {violation.message}")
    if violations:
        return EXIT_CHECK_FAILED
    print(f"ok: {len(trace.operations)} operations")
    return EXIT_OK


def _event_record(item):
    record = item._asdict()
    if isinstance(item, PairingEvent):
        record['type'] = 'pairing'
        record['pass'] = record.pop('pass_')
    else:
        record['type'] = 'cost'
    return record


def _run(args):
    trace = load_trace(args.file)
    replayer = TraceReplayer(PairingForest())
    forest = replayer.forest
    log = []
    for op_index, operation in enumerate(trace.operations, start=1):
        try:
            replayer.apply(operation)
        except PairAuditError as error:
            print(f"operation {op_index}: {error}")
            return EXIT_CHECK_FAILED
        log.extend(forest.drain_events())

    costs = [item for item in log if not isinstance(item, PairingEvent)]
    if args.events_out:
        with open(args.events_out, 'w', encoding='utf-8',
                  newline='\n') as out:
            for item in log:
                out.write(json.dumps(_event_record(item),
                                     separators=(',', ':')) + "\n")
    if args.graph_out:
        colors = {replayer.node_ids[node_id]: color
                  for node_id, color in color_nodes(trace).items()}
        graph = HeapGraph(forest, colors=colors, name=replayer.trace_node,
                          heap_name=replayer.trace_heap)
        try:
            graph.save(args.graph_out)
        except ValueError as error:
            raise _UsageError(str(error))
    print(f"{len(trace.operations)} operations, "
          f"{sum(cost.pairings for cost in costs)} pairings, "
          f"total actual cost {sum(cost.actual_cost for cost in costs)}")
    return EXIT_OK


def _diff(args):
    trace = load_trace(args.file)
    result = diff_run(trace, show_progress=args.progress)
    if result.equivalent:
        print("equivalent")
        return EXIT_OK
    print(f"divergence at operation {result.op_index}: {result.message}")
    print(f"  expected: {result.expected}")
    print(f"  actual:   {result.actual}")
    return EXIT_CHECK_FAILED


def _audit(args):
    trace = load_trace(args.file)
    if args.max_ops is not None:
        pairaudit_setting('max_audit_ops', args.max_ops)
    try:
        report = audit_trace(trace, tolerance=args.tolerance,
                             check_structure=args.check_structure or None,
                             show_progress=args.progress,
                             trace_sha256=file_sha256(args.file))
    except AuditLimitError as error:
        raise _UsageError(f"{error}; use --max-ops to raise the limit")
    except PairAuditError as error:
        print(f"replay failed: {error}")
        return EXIT_CHECK_FAILED

    if args.report:
        write_report_jsonl(report, args.report)
    if args.csv:
        write_report_csv(report, args.csv)
    for failure in report.failures:
        print(f"operation {failure.op_index}: {failure.check}: "
              f"{failure.detail}")
    min_slack = report.min_slack
    print(f"{report.verdict}: {len(report.entries)} operations, "
          f"sum a = {report.sum_a:g}, sum bound = {report.sum_bound:.3f}, "
          f"phi_m = {report.phim:.3f}, min slack = "
          f"{'n/a' if min_slack is None else format(min_slack, '.6f')}")
    return EXIT_OK if report.passed else EXIT_CHECK_FAILED


def _bench(args):
    try:
        weights = parse_mix(args.mix)
        report = run_benchmark(args.sizes, weights=weights, seeds=args.seeds,
                               survivor_fraction=args.survivors,
                               audit=args.audit, n_jobs=args.jobs,
                               show_progress=args.progress)
    except (GeneratorConfigError, AuditLimitError) as error:
        raise _UsageError(str(error))
    if args.csv:
        write_bench_csv(report, args.csv, include_time=args.timing)
    for row in report.rows:
        print(f"size {row.size} bucket {row.bucket} {row.kind}: "
              f"{row.count} ops, mean cost {row.mean_cost:.3f}")
    print(f"total pairings {report.total_pairings()}")
    return EXIT_OK


COMMANDS = {'gen': _gen,
            'validate': _validate,
            'run': _run,
            'diff': _diff,
            'audit': _audit,
            'bench': _bench}


def main(argv=None):
    """
    Runs the `pairaudit` command.

    Parameters
    ----------
    argv : list of str, optional
        Arguments without the program name. If None, `sys.argv[1:]` is used.
        Default: None

    Returns
    -------
    int
        Exit code.
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exit_request:
        return EXIT_OK if exit_request.code == 0 else EXIT_USAGE
    if args.verbose:
        _set_verbose()

    settings = {name: pairaudit_setting(name)
                for name in ('max_audit_ops',)}
    try:
        return COMMANDS[args.command](args)
    except _UsageError as error:
        print(f"pairaudit {args.command}: error: {error}", file=sys.stderr)
        return EXIT_USAGE
    except TraceFormatError as error:
        print(f"pairaudit {args.command}: {error}", file=sys.stderr)
        return EXIT_FILE_ERROR
    except OSError as error:
        print(f"pairaudit {args.command}: {error}", file=sys.stderr)
        return EXIT_FILE_ERROR
    finally:
        for name, value in settings.items():
            pairaudit_setting(name, value)
