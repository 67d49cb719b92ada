from sensornet.exceptions import SensornetError
from strategies.classes import get_strategy_class
from strategies.literals import KNOB_NAMES, STRATEGY_NAMES

from ...classes import BatchSpec
from ...config import parse_strategies
from ...exceptions import BatchError, UsageError
from ...job_processing import JobPool
from ...literals import KEY_SEEDS_PER_TOPOLOGY, KEY_STRATEGIES, KEY_TOPOLOGIES
from ...utils import run_batch
from ..base import ExperimentCommand


class Command(ExperimentCommand):
    help = 'Runs every strategy over a set of random topologies and summarizes the runs'
    option_keys = (
        'nodes', 'area', 'base', 'seed', 'out', 'format', 'max_iterations',
        'clusters', 'round_length', 'max_neighbors', 'max_range',
        'low_power_threshold', 'power_compare_threshold', 'queue_limit',
        'topologies', 'seeds_per_topology', 'strategies',
    )

    def add_arguments(self, parser):
        parser.add_argument('--topologies', dest='topologies', type=int, default=None, help='Random topologies to generate (default: 1)')
        parser.add_argument('--seeds-per-topology', dest='seeds_per_topology', type=int, default=None, help='Runs of every strategy per topology (default: 1)')
        parser.add_argument('--strategies', dest='strategies', type=parse_strategies, default=None, help='Comma separated strategies (default: %s)' % ','.join(STRATEGY_NAMES))
        parser.add_argument('--workers', dest='workers', type=int, default=None, help='Worker processes (default: one per CPU)')
        parser.add_argument('--immediate', dest='immediate', action='store_true', default=False, help='Run the simulations one after the other in this process')
        self.add_network_arguments(parser)
        self.add_run_arguments(parser)

    def get_defaults(self):
        defaults = super(Command, self).get_defaults()
        defaults.update({KEY_TOPOLOGIES: 1, KEY_SEEDS_PER_TOPOLOGY: 1, KEY_STRATEGIES: STRATEGY_NAMES})
        return defaults

    def select_batch_knobs(self, values, strategies):
        strategy_classes = [get_strategy_class(name) for name in strategies]
        for knob in self.flag_knobs:
            if not any(knob in strategy_class.knobs for strategy_class in strategy_classes):
                raise UsageError('--%s does not apply to any of: %s' % (knob.replace('_', '-'), ', '.join(strategies)))
        return dict((knob, values[knob]) for knob in KNOB_NAMES if knob in self.flag_knobs or knob in self.file_knobs)

    def execute_command(self, options):
        values = self.resolve_options(options, self.option_keys)
        width, height = values['area']

        spec = BatchSpec(
            topologies=values[KEY_TOPOLOGIES],
            seeds_per_topology=values[KEY_SEEDS_PER_TOPOLOGY],
            strategies=values[KEY_STRATEGIES], base_seed=values['seed'],
            output_dir=values['out'], node_count=values['nodes'],
            width=width, height=height, base=values['base'],
            knobs=self.select_batch_knobs(values, values[KEY_STRATEGIES]),
            energy=self.get_energy(values),
            max_iterations=values['max_iterations'],
            export_format=values['format'], trace=options['trace'],
            check_invariants=options['check_invariants']
        )

        pool = JobPool()
        if options['workers'] is not None:
            pool.workers = options['workers']
        if options['immediate']:
            pool.immediate = True

        try:
            rows, errors = run_batch(spec, pool=pool)
        except (SensornetError, IOError, OSError) as exception:
            self.fail(exception)

        if errors:
            self.fail(BatchError('%d of %d runs failed; first failure: %s' % (len(errors), len(errors) + len(rows), errors[0][1])))

        self.stdout.write('Ran %d simulations; summary in: %s' % (len(rows), spec.output_dir))
