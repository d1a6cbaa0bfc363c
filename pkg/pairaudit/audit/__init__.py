"""
Offline verification of the amortized analysis of pairing heaps: node
coloring, potential snapshots, per-operation bounds and per-pairing rank
checks.
"""

from .potential import (color_nodes, snapshot_potential, HeapState, WHITE,
                        BLACK)
from .rank import check_pairing_rank
from .auditor import audit_trace, amortized_bound, AuditReport
from .report import write_report_jsonl, write_report_csv, write_bench_csv
