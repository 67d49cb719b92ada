from collections import namedtuple
import logging
import os

from energy.classes import EnergyParams
from engine.settings import MAX_ITERATIONS
from metrics.literals import FORMAT_CSV
from strategies.classes import get_strategy_class
from strategies.exceptions import InvalidKnob
from strategies.literals import STRATEGY_NAMES
from topology.classes import generate_topology
from topology.settings import AREA_HEIGHT, AREA_WIDTH, BASE_X, BASE_Y, NODE_COUNT

from .exceptions import UsageError
from .literals import SEED_BASE_MULTIPLIER, SEED_TOPOLOGY_MULTIPLIER

logger = logging.getLogger(__name__)


class BatchJob(namedtuple('BatchJob', 'topology_index replicate strategy topology seed knobs energy max_iterations output_dir export_format trace check_invariants')):
    """One simulation of a batch; everything a worker process needs"""
    __slots__ = ()

    @property
    def key(self):
        return (self.topology_index, self.replicate, STRATEGY_NAMES.index(self.strategy))

    @property
    def run_directory(self):
        return os.path.join(self.output_dir, 'topology-%03d' % self.topology_index, 'replicate-%02d' % self.replicate, self.strategy)


class BatchSpec(object):
    """
    A grid of runs: ``topologies`` random placements, each simulated
    ``seeds_per_topology`` times with every strategy in ``strategies``.

    Seeds derive from ``base_seed``:

        topology seed = base_seed * 1000003 + topology_index * 1009
        run seed = (base_seed + replicate) * 1000003 + topology_index * 1009 + strategy_index

    where ``strategy_index`` is the strategy's position in the canonical
    strategy list.
    """
    def __init__(self, topologies=1, seeds_per_topology=1, strategies=STRATEGY_NAMES, base_seed=0, output_dir='.', node_count=NODE_COUNT, width=AREA_WIDTH, height=AREA_HEIGHT, base=(BASE_X, BASE_Y), knobs=None, energy=None, max_iterations=MAX_ITERATIONS, export_format=FORMAT_CSV, trace=False, check_invariants=False):
        self.topologies = topologies
        self.seeds_per_topology = seeds_per_topology
        self.strategies = tuple(strategies)
        self.base_seed = base_seed
        self.output_dir = output_dir
        self.node_count = node_count
        self.width = width
        self.height = height
        self.base = base
        self.knobs = dict(knobs or {})
        self.energy = energy or EnergyParams()
        self.max_iterations = max_iterations
        self.export_format = export_format
        self.trace = trace
        self.check_invariants = check_invariants

        if self.topologies < 1:
            raise UsageError('A batch needs at least one topology; got %s' % self.topologies)
        if self.seeds_per_topology < 1:
            raise UsageError('A batch needs at least one seed per topology; got %s' % self.seeds_per_topology)
        if not self.strategies:
            raise UsageError('A batch needs at least one strategy')
        unknown = [name for name in self.strategies if name not in STRATEGY_NAMES]
        if unknown:
            raise UsageError('Unknown strategies: %s' % ', '.join(unknown))
        if len(set(self.strategies)) != len(self.strategies):
            raise UsageError('Strategies listed more than once: %s' % ', '.join(self.strategies))
        if self.base_seed < 0:
            raise UsageError('Base seed cannot be negative; got %s' % self.base_seed)
        if self.node_count < 1:
            raise UsageError('At least one node is needed; got %s' % self.node_count)
        if self.max_iterations < 0:
            raise UsageError('Maximum iterations cannot be negative; got %s' % self.max_iterations)

        for strategy in self.strategies:
            strategy_class = get_strategy_class(strategy)
            try:
                strategy_class(**self.knobs_for(strategy_class))
            except InvalidKnob as exception:
                raise UsageError(str(exception))

    def topology_seed(self, topology_index):
        return self.base_seed * SEED_BASE_MULTIPLIER + topology_index * SEED_TOPOLOGY_MULTIPLIER

    def run_seed(self, topology_index, replicate, strategy):
        return (self.base_seed + replicate) * SEED_BASE_MULTIPLIER + topology_index * SEED_TOPOLOGY_MULTIPLIER + STRATEGY_NAMES.index(strategy)

    def generate_topologies(self):
        return [
            generate_topology(self.node_count, self.width, self.height, base=self.base, seed=self.topology_seed(index))
            for index in range(self.topologies)
        ]

    def knobs_for(self, strategy_class):
        """Only the knobs a strategy accepts; a batch mixes strategies"""
        return dict((key, value) for key, value in self.knobs.items() if key in strategy_class.knobs)

    def jobs(self):
        jobs = []
        for topology_index, topology in enumerate(self.generate_topologies()):
            for replicate in range(self.seeds_per_topology):
                for strategy in self.strategies:
                    jobs.append(
                        BatchJob(
                            topology_index=topology_index, replicate=replicate,
                            strategy=strategy, topology=topology,
                            seed=self.run_seed(topology_index, replicate, strategy),
                            knobs=self.knobs_for(get_strategy_class(strategy)),
                            energy=self.energy,
                            max_iterations=self.max_iterations,
                            output_dir=self.output_dir,
                            export_format=self.export_format,
                            trace=self.trace,
                            check_invariants=self.check_invariants
                        )
                    )

        return sorted(jobs, key=lambda job: job.key)

    def __repr__(self):
        return '<BatchSpec: %d topologies x %d seeds x %d strategies>' % (self.topologies, self.seeds_per_topology, len(self.strategies))
