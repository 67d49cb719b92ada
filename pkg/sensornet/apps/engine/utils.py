import logging

import unicodecsv

from topology.utils import format_number

from .classes import TraceEvent
from .exceptions import TraceFormatError
from .literals import (
    EVENT_KINDS, TRACE_DETAIL_SEPARATOR, TRACE_ENCODING, TRACE_FIELDNAMES,
    TRACE_NODE_SEPARATOR)

logger = logging.getLogger(__name__)


def format_detail(detail):
    return TRACE_DETAIL_SEPARATOR.join(
        '%s=%s' % (key, value if isinstance(value, str) else format_number(value)) for key, value in sorted(detail.items())
    )


def parse_value(value):
    if value == '':
        return None
    if value in ('true', 'false'):
        return value == 'true'
    for kind in (int, float):
        try:
            return kind(value)
        except ValueError:
            pass
    return value


def parse_detail(text):
    detail = {}
    if text:
        for item in text.split(TRACE_DETAIL_SEPARATOR):
            key, _, value = item.partition('=')
            detail[key] = parse_value(value)
    return detail


def write_trace(trace, path):
    """
    One line per event: ``iteration,kind,nodes,joules,detail`` where nodes
    are ``;`` separated ids (-1 being the base station) and detail is a
    ``;`` separated list of ``key=value`` pairs
    """
    with open(path, 'wb') as file_object:
        writer = unicodecsv.writer(file_object, encoding=TRACE_ENCODING, lineterminator='\n')
        writer.writerow(TRACE_FIELDNAMES)
        for event in trace:
            writer.writerow((
                event.iteration, event.kind,
                TRACE_NODE_SEPARATOR.join(str(node_id) for node_id in event.nodes),
                format_number(event.joules), format_detail(event.detail)
            ))

    logger.info('Wrote %d trace events to: %s' % (len(trace), path))


def read_trace(path):
    trace = []
    with open(path, 'rb') as file_object:
        reader = unicodecsv.reader(file_object, encoding=TRACE_ENCODING)
        header = next(reader, None)
        if tuple(header or ()) != TRACE_FIELDNAMES:
            raise TraceFormatError('Expected header: %s' % ','.join(TRACE_FIELDNAMES), path=path, line=1)

        for line_number, row in enumerate(reader, 2):
            try:
                iteration, kind, nodes, joules, detail = row
                if kind not in EVENT_KINDS:
                    raise ValueError('unknown event kind: %s' % kind)
                nodes = tuple(int(node_id) for node_id in nodes.split(TRACE_NODE_SEPARATOR) if node_id)
                trace.append(TraceEvent(int(iteration), kind, nodes, float(joules), parse_detail(detail)))
            except ValueError as exception:
                raise TraceFormatError('Malformed trace event; %s' % exception, path=path, line=line_number)

    return trace
