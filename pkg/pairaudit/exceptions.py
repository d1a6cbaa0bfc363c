"""
Exceptions raised by pairaudit.

All classes derive from :class:`PairAuditError` and from the builtin
exception that a caller would expect for the same problem, so that both
``except PairAuditError`` and ``except KeyError``/``ValueError``/``IndexError``
clauses work.

.. autoclass:: pairaudit.exceptions.PairAuditError
.. autoclass:: pairaudit.exceptions.TraceFormatError
"""


class PairAuditError(Exception):
    """ Base class for all errors raised by pairaudit. """


class InvalidHeapError(PairAuditError, KeyError):
    """ A heap id is unknown or was invalidated by a meld. """

    def __str__(self):
        return Exception.__str__(self)


class InvalidHandleError(PairAuditError, KeyError):
    """ A node handle is unknown or its node was already removed. """

    def __str__(self):
        return Exception.__str__(self)


class WrongHeapError(PairAuditError, ValueError):
    """ A live node handle was used with a heap that does not hold it. """


class AliasingError(PairAuditError, ValueError):
    """ Both arguments of a meld are the same heap. """


class EmptyHeapError(PairAuditError, IndexError):
    """ find_min or extract_min on a heap without nodes. """


class DomainError(PairAuditError, ValueError):
    """ A key or delta is not a finite number, or a delta is negative. """


class TraceFormatError(PairAuditError, ValueError):
    """
    A trace file could not be parsed.

    Attributes
    ----------
    line_number : int or None
        1-based line of the offending record, if known.
    """

    def __init__(self, message, line_number=None):
        self.line_number = line_number
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)


class GeneratorConfigError(PairAuditError, ValueError):
    """ The operation mix of a generator configuration cannot be realized. """


class AuditLimitError(PairAuditError, ValueError):
    """ The trace is longer than the `max_audit_ops` setting. """
