"""
Validation of traces.

:func:`validate_trace` replays a trace on a :class:`pairaudit.PairingForest`
that does not record events and reports every operation that could not be
executed. Which node an extract_min removes depends on the keys, so the
replay uses real heaps instead of id bookkeeping alone.

.. autofunction:: pairaudit.trace.validate_trace
"""

import logging

from tqdm import tqdm

from pairaudit.pairaudit_types import Violation
from pairaudit.exceptions import PairAuditError
from pairaudit.heap import PairingForest
from pairaudit.trace.replay import TraceReplayer


# Create logger and set configuration
logger = logging.getLogger(__file__)
log_handler = logging.StreamHandler()
log_handler.setFormatter(logging.Formatter("[%(asctime)s] "
                                           "pairaudit.trace.validation -"
                                           " %(levelname)s: %(message)s"))
logger.addHandler(log_handler)
logger.propagate = False


def validate_trace(trace, show_progress=False):
    """
    Checks that every operation of `trace` can be executed.

    A failed operation is reported and skipped; the replay continues with
    the next one.

    Parameters
    ----------
    trace : Trace
        Trace to check.
    show_progress : bool, optional
        If True, shows a progress bar.
        Default: False

    Returns
    -------
    list of Violation
        Problems in trace order, with 1-based operation indices. The list is
        empty if the trace is valid. Messages start with the kind of
        problem: 'stale heap id', 'unknown heap id', 'meld aliasing',
        'empty heap', 'stale node id', 'unknown node id', 'node ... is not
        in heap', 'negative delta', 'duplicate heap id', 'duplicate node id'
        or a key/delta domain error.
    """
    replayer = TraceReplayer(PairingForest(record_events=False))
    violations = []
    for op_index, operation in enumerate(
            tqdm(trace.operations, desc="Validating trace",
                 disable=not show_progress), start=1):
        try:
            replayer.apply(operation)
        except PairAuditError as error:
            violations.append(Violation(op_index, str(error)))
            logger.debug("operation %d (%s): %s", op_index, operation.kind,
                         error)
    return violations
