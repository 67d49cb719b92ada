from collections import OrderedDict, namedtuple
import logging
import os

import unicodecsv

from engine.classes import SimConfig, run_simulation
from engine.utils import write_trace
from engine.verification import verify_result
from metrics.aggregates import get_aggregate
from metrics.exporters import export
from metrics.literals import AGGREGATED_FIELDS, EXPORT_ENCODING, SUMMARY_FIELDNAMES
from metrics.utils import lifetime_summary, summary_row
from sensornet.exceptions import SensornetError
from topology.utils import format_number

from .job_processing import JobPool
from .literals import (
    BATCH_SUMMARY_FILENAME, BATCH_SUMMARY_PREFIX, ROW_TYPE_RUN,
    TRACE_FILENAME)

logger = logging.getLogger(__name__)

LOGGER_NAMES = ('topology', 'energy', 'strategies', 'engine', 'metrics', 'experiments')

BatchOutcome = namedtuple('BatchOutcome', 'key row error')

# Aggregate rows written after the run rows, per strategy
BATCH_AGGREGATES = (
    ('Average', AGGREGATED_FIELDS),
    ('Min', AGGREGATED_FIELDS),
    ('Max', AGGREGATED_FIELDS),
    ('Ratio', ('system_lifetime',)),
    ('Count', AGGREGATED_FIELDS),
)


def set_verbosity(verbosity):
    level = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity > 1:
        level = logging.DEBUG

    for name in LOGGER_NAMES:
        logging.getLogger(name).setLevel(level)


def simulate_and_export(config, output_dir, export_format, check_invariants=False):
    """
    Run one simulation, write its exports (and trace when one was
    recorded) into ``output_dir`` and return the summary row
    """
    result = run_simulation(config)
    if check_invariants:
        verify_result(result)

    summary = lifetime_summary(result)
    export(result, summary, format=export_format, path=output_dir)
    if result.trace is not None:
        write_trace(result.trace, os.path.join(output_dir, TRACE_FILENAME))

    return summary_row(result, summary)


def run_job(job):
    try:
        config = SimConfig(
            job.strategy, topology=job.topology, energy=job.energy,
            knobs=job.knobs, max_iterations=job.max_iterations,
            seed=job.seed, trace=job.trace or job.check_invariants
        )
        row = simulate_and_export(config, job.run_directory, job.export_format, check_invariants=job.check_invariants)
    except (SensornetError, IOError, OSError) as exception:
        logger.error('Run %s of topology %d, replicate %d failed; %s' % (job.strategy, job.topology_index, job.replicate, exception))
        return BatchOutcome(job.key, None, str(exception))

    batch_row = OrderedDict((('row_type', ROW_TYPE_RUN), ('topology', job.topology_index), ('replicate', job.replicate)))
    batch_row.update(row)
    return BatchOutcome(job.key, batch_row, None)


def aggregate_rows(rows, strategies):
    for strategy in strategies:
        strategy_rows = [row for row in rows if row['strategy'] == strategy]
        if not strategy_rows:
            continue

        for name, fields in BATCH_AGGREGATES:
            aggregate_row = OrderedDict((field, None) for field in BATCH_SUMMARY_PREFIX + SUMMARY_FIELDNAMES)
            aggregate_row['strategy'] = strategy
            for field in fields:
                aggregate = get_aggregate(name, field)
                aggregate_row[field] = aggregate.execute(strategy_rows)
            aggregate_row['row_type'] = aggregate.label
            yield aggregate_row


def write_batch_summary(path, rows, strategies):
    with open(path, 'wb') as file_object:
        writer = unicodecsv.writer(file_object, encoding=EXPORT_ENCODING, lineterminator='\n')
        writer.writerow(BATCH_SUMMARY_PREFIX + SUMMARY_FIELDNAMES)
        for row in list(rows) + list(aggregate_rows(rows, strategies)):
            writer.writerow([
                row[field] if isinstance(row[field], str) else format_number(row[field])
                for field in BATCH_SUMMARY_PREFIX + SUMMARY_FIELDNAMES
            ])


def run_batch(spec, pool=None):
    """
    Run every job of ``spec`` and write ``batch_summary.csv`` from the runs
    that completed, ordered by topology, replicate and strategy. Returns the
    summary rows and the list of ``(key, error)`` of the failed runs.
    """
    pool = pool or JobPool()
    jobs = spec.jobs()
    logger.info('Running batch of %d simulations' % len(jobs))

    outcomes = sorted(pool.map(run_job, jobs), key=lambda outcome: outcome.key)
    rows = [outcome.row for outcome in outcomes if outcome.row is not None]
    errors = [(outcome.key, outcome.error) for outcome in outcomes if outcome.error is not None]

    if not os.path.isdir(spec.output_dir):
        os.makedirs(spec.output_dir)
    path = os.path.join(spec.output_dir, BATCH_SUMMARY_FILENAME)
    write_batch_summary(path, rows, spec.strategies)

    logger.info('Wrote %d run rows to: %s' % (len(rows), path))
    return rows, errors
