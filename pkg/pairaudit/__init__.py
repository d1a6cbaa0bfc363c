"""
pairaudit is a Python package with a pairing heap and an offline auditor
that replays operation traces and verifies the amortized analysis of the
heap operation by operation.
"""

from .heap import PairingForest, HeapNode
from .oracle import OracleForest, diff_run
from .graph import HeapGraph
from .settings import pairaudit_setting
from .utils import files
