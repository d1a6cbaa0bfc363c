"""
Reading and writing of trace files.

A trace file has one JSON record per line. Each record names the operation
in the field `op` and carries the ids it uses and produces::

    {"op":"make_heap","heap_out":H}
    {"op":"insert","heap":H,"key":K,"node_out":P}
    {"op":"meld","heap1":H1,"heap2":H2,"heap_out":H}
    {"op":"find_min","heap":H}
    {"op":"extract_min","heap":H}
    {"op":"decrease_key","heap":H,"node":P,"delta":D}
    {"op":"delete","heap":H,"node":P}

Ids are positive integers. Keys and deltas are finite decimal numbers;
deltas are nonnegative. Canonical output uses the field order above, no
spaces, integers for integral values below 2**53 and the shortest decimal
that round-trips otherwise.

.. autofunction:: pairaudit.trace.parse_trace
.. autofunction:: pairaudit.trace.serialize_trace
"""

import json
import math

from pairaudit.pairaudit_types import Operation, Trace
from pairaudit.exceptions import TraceFormatError


EXPLICIT_IDS = 'explicit'

OPERATION_KINDS = ('make_heap', 'insert', 'meld', 'find_min', 'extract_min',
                   'decrease_key', 'delete')

# Record fields of each operation, in canonical order
RECORD_FIELDS = {
    'make_heap': ('heap_out',),
    'insert': ('heap', 'key', 'node_out'),
    'meld': ('heap1', 'heap2', 'heap_out'),
    'find_min': ('heap',),
    'extract_min': ('heap',),
    'decrease_key': ('heap', 'node', 'delta'),
    'delete': ('heap', 'node'),
}

HEAP_FIELDS = ('heap', 'heap1', 'heap2')
OUTPUT_FIELDS = ('heap_out', 'node_out')

_MAX_EXACT_INTEGER = 2 ** 53


def _reject_constant(name):
    raise ValueError(f"non-finite number {name}")


def _parse_id(record, field, line_number):
    value = record[field]
    if type(value) is not int or value <= 0:
        raise TraceFormatError(f"'{field}' must be a positive integer, "
                               f"got {value!r}", line_number)
    return value


def _parse_number(record, field, line_number):
    value = record[field]
    if type(value) not in (int, float):
        raise TraceFormatError(f"'{field}' must be a number, got {value!r}",
                               line_number)
    try:
        value = float(value)
    except OverflowError:
        raise TraceFormatError(f"'{field}' is not finite", line_number)
    if not math.isfinite(value):
        raise TraceFormatError(f"'{field}' is not finite", line_number)
    return value


def operation_from_record(record, line_number=None):
    """
    Builds an `Operation` from a decoded JSON record.

    Raises
    ------
    TraceFormatError
        If the operation is unknown, fields are missing or extra, or a value
        has the wrong type or range.
    """
    if not isinstance(record, dict):
        raise TraceFormatError("record must be a JSON object", line_number)
    kind = record.get('op')
    if kind not in RECORD_FIELDS:
        raise TraceFormatError(f"unknown operation {kind!r}", line_number)

    expected = set(RECORD_FIELDS[kind])
    present = set(record) - {'op'}
    if expected - present:
        missing = ", ".join(sorted(expected - present))
        raise TraceFormatError(f"{kind}: missing field(s) {missing}",
                               line_number)
    if present - expected:
        extra = ", ".join(sorted(present - expected))
        raise TraceFormatError(f"{kind}: unexpected field(s) {extra}",
                               line_number)

    heap_args = tuple(_parse_id(record, field, line_number)
                      for field in RECORD_FIELDS[kind]
                      if field in HEAP_FIELDS)
    node_arg = _parse_id(record, 'node', line_number) \
        if 'node' in record else None
    key = _parse_number(record, 'key', line_number) \
        if 'key' in record else None
    delta = None
    if 'delta' in record:
        delta = _parse_number(record, 'delta', line_number)
        if delta < 0:
            raise TraceFormatError(f"delta must be nonnegative, got "
                                   f"{record['delta']!r}", line_number)
    out = None
    for field in OUTPUT_FIELDS:
        if field in record:
            out = _parse_id(record, field, line_number)

    return Operation(kind=kind, heap_args=heap_args, node_arg=node_arg,
                     key=key, delta=delta, out=out)


def parse_trace(text):
    """
    Parses the text of a trace file.

    Blank lines are ignored.

    Parameters
    ----------
    text : str
        Content of the trace file.

    Returns
    -------
    Trace

    Raises
    ------
    TraceFormatError
        On the first malformed line. The exception carries the 1-based line
        number in `line_number`.
    """
    operations = []
    for line_number, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            record = json.loads(line, parse_constant=_reject_constant)
        except ValueError as error:
            raise TraceFormatError(f"invalid JSON ({error})", line_number)
        operations.append(operation_from_record(record, line_number))
    return Trace(operations=tuple(operations), id_convention=EXPLICIT_IDS)


def format_number(value):
    """ Canonical decimal text of a key or delta. """
    value = float(value)
    if (value.is_integer() and abs(value) < _MAX_EXACT_INTEGER and
            not (value == 0 and math.copysign(1.0, value) < 0)):
        return str(int(value))
    return repr(value)


def operation_to_record(operation):
    """ Canonical one-line JSON text of an `Operation`. """
    kind = operation.kind
    values = {'op': json.dumps(kind)}
    heap_args = iter(operation.heap_args)
    for field in RECORD_FIELDS[kind]:
        if field in HEAP_FIELDS:
            values[field] = str(next(heap_args))
        elif field == 'node':
            values[field] = str(operation.node_arg)
        elif field == 'key':
            values[field] = format_number(operation.key)
        elif field == 'delta':
            values[field] = format_number(operation.delta)
        else:
            values[field] = str(operation.out)
    items = [f'"{name}":{text}' for name, text in values.items()]
    return "{" + ",".join(items) + "}"


def serialize_trace(trace):
    """
    Canonical text of a trace: one record per line, each terminated by a
    newline. An empty trace gives an empty string.
    """
    return "".join(operation_to_record(operation) + "\n"
                   for operation in trace.operations)


def load_trace(file_name):
    """ Reads and parses the trace file `file_name`. """
    with open(file_name, 'r', encoding='utf-8') as trace_file:
        return parse_trace(trace_file.read())


def save_trace(trace, file_name):
    """ Writes `trace` in canonical form to `file_name`. """
    with open(file_name, 'w', encoding='utf-8', newline='\n') as trace_file:
        trace_file.write(serialize_trace(trace))
