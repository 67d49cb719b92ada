from engine.classes import SimConfig
from sensornet.exceptions import SensornetError
from strategies.classes import get_strategy_class
from strategies.literals import STRATEGY_NAMES
from topology.exceptions import TopologyError
from topology.utils import import_topology

from ...exceptions import UsageError
from ...literals import KEY_ALGO, KEY_TOPOLOGY, PLACEMENT_KEYS
from ...utils import simulate_and_export
from ..base import ExperimentCommand

SUMMARY_LINE_FIELDS = (
    'strategy', 'seed', 'first_death', 'system_lifetime', 'utility_fraction',
    'sync_messages', 'delivered', 'dropped',
)


class Command(ExperimentCommand):
    help = 'Runs one simulation and exports its results'
    option_keys = (
        'algo', 'topology', 'nodes', 'area', 'base', 'seed', 'out',
        'format', 'max_iterations', 'clusters', 'round_length',
        'max_neighbors', 'max_range', 'low_power_threshold',
        'power_compare_threshold', 'queue_limit',
    )

    def add_arguments(self, parser):
        # Validated by hand so an unknown name is reported like any other
        # usage error
        parser.add_argument('--algo', dest='algo', default=None, help='Routing strategy: %s' % ', '.join(STRATEGY_NAMES))
        parser.add_argument('--topology', dest='topology', default=None, help='Topology CSV to simulate instead of a random placement')
        self.add_network_arguments(parser)
        self.add_run_arguments(parser)

    def build_config(self, options):
        values = self.resolve_options(options, self.option_keys)

        if not values.get(KEY_ALGO):
            raise UsageError('Choose a strategy with --algo; one of: %s' % ', '.join(STRATEGY_NAMES))
        strategy_class = get_strategy_class(values[KEY_ALGO])

        topology = None
        if values.get(KEY_TOPOLOGY):
            placement_flags = ['--%s' % key for key in PLACEMENT_KEYS if options.get(key) is not None]
            if placement_flags:
                raise UsageError('%s cannot be combined with a topology file' % ', '.join(placement_flags))

            try:
                topology = import_topology(values[KEY_TOPOLOGY])
            except TopologyError as exception:
                self.fail(exception)

        width, height = values['area']
        config = SimConfig(
            strategy_class.name, topology=topology, node_count=values['nodes'],
            width=width, height=height, base=values['base'],
            energy=self.get_energy(values),
            knobs=self.select_knobs(values, strategy_class),
            max_iterations=values['max_iterations'], seed=values['seed'],
            trace=options['trace'] or options['check_invariants']
        )
        return config, values

    def execute_command(self, options):
        config, values = self.build_config(options)

        try:
            row = simulate_and_export(config, values['out'], values['format'], check_invariants=options['check_invariants'])
        except (SensornetError, IOError, OSError) as exception:
            self.fail(exception)

        self.stdout.write(' '.join('%s=%s' % (field, '' if row[field] is None else row[field]) for field in SUMMARY_LINE_FIELDS))
