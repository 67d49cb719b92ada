import io
import logging
import math
import numbers

import unicodecsv

from .classes import Topology
from .exceptions import TopologyFormatError
from .literals import (
    CSV_COMMENT, CSV_COMMENT_AREA, CSV_COMMENT_BASE, CSV_COMMENT_SEED,
    CSV_ENCODING, CSV_FIELDNAMES)

logger = logging.getLogger(__name__)


def distance(a, b):
    return math.hypot(a[0] - b[0], a[1] - b[1])


def format_number(value):
    """Shortest decimal string that reads back to the same number"""
    if value is None:
        return ''
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, numbers.Integral):
        return str(int(value))
    return repr(float(value))


def export_topology(topology, path):
    try:
        with open(path, 'wb') as file_object:
            file_object.write(('%s %s,%s,%s\n' % (CSV_COMMENT, CSV_COMMENT_BASE, format_number(topology.base.x), format_number(topology.base.y))).encode(CSV_ENCODING))
            file_object.write(('%s %s,%s,%s\n' % (CSV_COMMENT, CSV_COMMENT_AREA, format_number(topology.width), format_number(topology.height))).encode(CSV_ENCODING))
            if topology.seed is not None:
                file_object.write(('%s %s,%s\n' % (CSV_COMMENT, CSV_COMMENT_SEED, topology.seed)).encode(CSV_ENCODING))

            writer = unicodecsv.writer(file_object, encoding=CSV_ENCODING, lineterminator='\n')
            writer.writerow(CSV_FIELDNAMES)
            for node_id, position in enumerate(topology.positions):
                writer.writerow((node_id, format_number(position.x), format_number(position.y)))
    except (IOError, OSError) as exception:
        raise TopologyFormatError('Unable to write topology; %s' % exception, path=path)

    logger.info('Exported %d node topology to: %s' % (topology.size, path))


def _parse_comment(line, line_number, path, metadata):
    key, _, values = line.lstrip(CSV_COMMENT).strip().partition(',')
    key = key.strip()
    if key not in (CSV_COMMENT_BASE, CSV_COMMENT_AREA, CSV_COMMENT_SEED):
        # Free form comment
        return

    try:
        if key == CSV_COMMENT_SEED:
            metadata[key] = int(values)
        else:
            first, second = values.split(',')
            metadata[key] = (float(first), float(second))
    except ValueError:
        raise TopologyFormatError('Malformed "%s" comment: %s' % (key, line.strip()), path=path, line=line_number)


def import_topology(path):
    metadata = {}
    data_lines = []

    try:
        with open(path, 'rb') as file_object:
            for line_number, raw_line in enumerate(file_object, 1):
                line = raw_line.decode(CSV_ENCODING)
                if not line.strip():
                    continue
                if line.startswith(CSV_COMMENT):
                    _parse_comment(line, line_number, path, metadata)
                else:
                    data_lines.append((line_number, raw_line))
    except (IOError, OSError) as exception:
        raise TopologyFormatError('Unable to read topology; %s' % exception, path=path)

    if not data_lines:
        raise TopologyFormatError('No header or node rows found', path=path)

    reader = unicodecsv.DictReader(io.BytesIO(b''.join(raw_line for line_number, raw_line in data_lines)), encoding=CSV_ENCODING)
    if tuple(name.strip() for name in reader.fieldnames or ()) != CSV_FIELDNAMES:
        raise TopologyFormatError('Expected header: %s' % ','.join(CSV_FIELDNAMES), path=path, line=data_lines[0][0])

    rows = {}
    for (line_number, raw_line), row in zip(data_lines[1:], reader):
        try:
            node_id = int(row['node_id'])
            position = (float(row['x']), float(row['y']))
        except (TypeError, ValueError):
            raise TopologyFormatError('Malformed node row', path=path, line=line_number)
        if node_id in rows:
            raise TopologyFormatError('Duplicate node id: %d' % node_id, path=path, line=line_number)
        rows[node_id] = position

    if sorted(rows) != list(range(len(rows))):
        raise TopologyFormatError('Node ids must be unique and dense from 0 to %d' % (len(rows) - 1), path=path)

    width, height = metadata.get(CSV_COMMENT_AREA, (None, None))

    topology = Topology(
        [rows[node_id] for node_id in range(len(rows))],
        base=metadata.get(CSV_COMMENT_BASE, (0.0, 0.0)),
        width=width, height=height, seed=metadata.get(CSV_COMMENT_SEED)
    )
    logger.info('Imported %d node topology from: %s' % (topology.size, path))
    return topology
