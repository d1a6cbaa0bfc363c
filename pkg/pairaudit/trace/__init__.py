"""
Traces are sequences of operations over an initially empty collection of
heaps. This package reads and writes trace files, validates traces, replays
them on a forest and generates random ones.
"""

from .format import (parse_trace, serialize_trace, load_trace, save_trace,
                     OPERATION_KINDS)
from .replay import TraceReplayer, TraceBuilder
from .validation import validate_trace
from .generator import (GeneratorConfig, generate_random_trace, parse_mix,
                        DEFAULT_MIX)
