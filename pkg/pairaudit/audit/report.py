"""
Writers for audit and benchmark reports.

Audit reports are written as JSON lines (one record per operation and a
trailing summary record) or as CSV with the columns
``op_index, kind, a, n, delta_phi, bound, slack``. Benchmark reports are
written as CSV, one row per (size, bucket, kind) cell.

.. autofunction:: pairaudit.audit.write_report_jsonl
.. autofunction:: pairaudit.audit.write_report_csv
.. autofunction:: pairaudit.audit.write_bench_csv
"""

import csv
import json


REPORT_COLUMNS = ('op_index', 'kind', 'a', 'n', 'delta_phi', 'bound',
                  'slack')

BENCH_COLUMNS = ('size', 'bucket', 'kind', 'count', 'total_cost',
                 'mean_cost', 'pairings', 'mean_slack')

BENCH_TIME_COLUMN = 'wall_time'


def write_report_jsonl(report, file_name):
    """ Writes an `AuditReport` as JSON lines to `file_name`. """
    with open(file_name, 'w', encoding='utf-8', newline='\n') as out:
        for record in report.to_records():
            out.write(json.dumps(record, separators=(',', ':')) + "\n")


def write_report_csv(report, file_name):
    """ Writes the operation entries of an `AuditReport` as CSV. """
    with open(file_name, 'w', encoding='utf-8', newline='') as out:
        writer = csv.writer(out, lineterminator='\n')
        writer.writerow(REPORT_COLUMNS)
        for entry in report.entries:
            writer.writerow([getattr(entry, column)
                             for column in REPORT_COLUMNS])


def write_bench_csv(bench_report, file_name, include_time=False):
    """
    Writes a `BenchReport` as CSV.

    Parameters
    ----------
    bench_report : BenchReport
        Report to write.
    file_name : str or path-like
        Destination.
    include_time : bool, optional
        If True, adds the `wall_time` column. Without it, the same
        benchmark always produces the same file.
        Default: False
    """
    columns = BENCH_COLUMNS + ((BENCH_TIME_COLUMN,) if include_time else ())
    with open(file_name, 'w', encoding='utf-8', newline='') as out:
        writer = csv.writer(out, lineterminator='\n')
        writer.writerow(columns)
        for row in bench_report.rows:
            values = [getattr(row, column) for column in columns]
            writer.writerow(['' if value is None else value
                             for value in values])
