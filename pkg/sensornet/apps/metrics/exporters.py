import json
import logging
import os

import unicodecsv

from topology.utils import format_number

from .encoders import JSONEncoder
from .exceptions import ExportError
from .literals import (
    CURVE_FIELDNAMES, CURVE_NAME, EXPORT_ENCODING, FORMAT_CSV, FORMAT_JSON,
    FORMATS, NODES_FIELDNAMES, NODES_NAME, SUMMARY_FIELDNAMES, SUMMARY_NAME)
from .utils import curve_rows, lifetime_summary, node_rows, summary_row

logger = logging.getLogger(__name__)


def write_csv(path, fieldnames, rows):
    with open(path, 'wb') as file_object:
        writer = unicodecsv.DictWriter(file_object, fieldnames=fieldnames, encoding=EXPORT_ENCODING, lineterminator='\n')
        writer.writeheader()
        for row in rows:
            writer.writerow(dict((key, format_number(value) if not isinstance(value, str) else value) for key, value in row.items()))


def write_json(path, data):
    with open(path, 'wb') as file_object:
        file_object.write(json.dumps(data, cls=JSONEncoder, indent=2, sort_keys=False).encode(EXPORT_ENCODING))
        file_object.write(b'\n')


def export(result, summary=None, format=FORMAT_CSV, path='.'):
    """
    Write ``nodes``, ``curve`` and ``summary`` tables for one run into the
    directory ``path``. Returns the list of files written.
    """
    if format not in FORMATS:
        raise ExportError('Unknown export format: %s' % format, path=path)
    if result is None or not result.iterations:
        raise ExportError('Nothing to export; the run has no iterations', path=path)

    summary = summary or lifetime_summary(result)
    tables = (
        (NODES_NAME, NODES_FIELDNAMES, list(node_rows(result))),
        (CURVE_NAME, CURVE_FIELDNAMES, list(curve_rows(result))),
        (SUMMARY_NAME, SUMMARY_FIELDNAMES, [summary_row(result, summary)]),
    )

    written = []
    try:
        if not os.path.isdir(path):
            os.makedirs(path)

        for name, fieldnames, rows in tables:
            filename = os.path.join(path, '%s.%s' % (name, format))
            if format == FORMAT_JSON:
                write_json(filename, rows[0] if name == SUMMARY_NAME else rows)
            else:
                write_csv(filename, fieldnames, rows)
            written.append(filename)
    except (IOError, OSError) as exception:
        raise ExportError('Unable to write results; %s' % exception, path=getattr(exception, 'filename', None) or path)

    logger.info('Exported %s results to: %s' % (result.strategy, path))
    return written
