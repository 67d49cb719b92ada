import logging
import multiprocessing

import django

from .settings import BATCH_PROCESSING_MODE_IMMEDIATE, BATCH_WORKERS

logger = logging.getLogger(__name__)


def initialize_worker():
    django.setup()


class JobPool(object):
    """
    Run a function over a list of jobs, in a pool of worker processes or,
    in immediate mode, one after the other in this process. Results come
    back in job order either way.
    """
    def __init__(self, workers=BATCH_WORKERS, immediate=BATCH_PROCESSING_MODE_IMMEDIATE):
        self.workers = workers
        self.immediate = immediate

    def map(self, function, jobs):
        jobs = list(jobs)
        if self.immediate or self.workers == 1 or len(jobs) < 2:
            logger.debug('Running %d jobs in immediate mode' % len(jobs))
            return [function(job) for job in jobs]

        logger.debug('Running %d jobs in background mode' % len(jobs))
        with multiprocessing.Pool(self.workers, initializer=initialize_worker) as pool:
            return pool.map(function, jobs, chunksize=1)
