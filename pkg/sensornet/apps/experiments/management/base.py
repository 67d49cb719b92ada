import logging

from django.core.management.base import BaseCommand, CommandError

from energy.classes import EnergyParams
from energy.exceptions import InvalidEnergyParams
from engine.exceptions import InvalidConfiguration
from engine.settings import MAX_ITERATIONS
from metrics.literals import FORMAT_CSV, FORMATS
from strategies.exceptions import UnknownStrategy
from strategies.literals import KNOB_NAMES
from topology.settings import AREA_HEIGHT, AREA_WIDTH, BASE_X, BASE_Y, NODE_COUNT

from ..config import (
    load_config, merge_options, parse_area, parse_base, parse_optional_float)
from ..exceptions import UsageError
from ..literals import ENERGY_KEYS, EXIT_RUNTIME, EXIT_USAGE
from ..utils import set_verbosity

logger = logging.getLogger(__name__)

DEFAULT_OUTPUT_DIR = 'results'

USAGE_ERRORS = (UsageError, UnknownStrategy, InvalidConfiguration, InvalidEnergyParams)


class ExperimentCommand(BaseCommand):
    """
    Options and error handling shared by the simulation commands: usage
    problems exit with status 1, failures while running or writing
    results exit with status 2
    """
    def create_parser(self, prog_name, subcommand, **kwargs):
        parser = super(ExperimentCommand, self).create_parser(prog_name, subcommand, **kwargs)
        original_exit = parser.exit

        def exit(status=0, message=None):
            # argparse reports bad arguments with status 2
            original_exit(EXIT_USAGE if status == 2 else status, message)

        parser.exit = exit
        return parser

    def add_network_arguments(self, parser):
        parser.add_argument('--config', dest='config', default=None, help='key=value configuration file; flags override its values')
        parser.add_argument('--nodes', dest='nodes', type=int, default=None, help='Number of sensor nodes (default: %s)' % NODE_COUNT)
        parser.add_argument('--area', dest='area', type=parse_area, default=None, help='Deployment area as WIDTHxHEIGHT meters (default: %sx%s)' % (AREA_WIDTH, AREA_HEIGHT))
        parser.add_argument('--base', dest='base', type=parse_base, default=None, help='Base station position as X,Y (default: %s,%s)' % (BASE_X, BASE_Y))
        parser.add_argument('--seed', dest='seed', type=int, default=None, help='Seed of every random choice (default: 0)')

    def add_run_arguments(self, parser):
        parser.add_argument('--out', dest='out', default=None, help='Output directory (default: %s)' % DEFAULT_OUTPUT_DIR)
        parser.add_argument('--format', dest='format', choices=FORMATS, default=None, help='Export format (default: %s)' % FORMAT_CSV)
        parser.add_argument('--max-iterations', dest='max_iterations', type=int, default=None, help='Stop after this many iterations (default: %s)' % MAX_ITERATIONS)
        parser.add_argument('--clusters', dest='clusters', type=int, default=None, help='Cluster heads per election')
        parser.add_argument('--round-length', dest='round_length', type=int, default=None, help='Iterations between random cluster elections')
        parser.add_argument('--max-neighbors', dest='max_neighbors', type=int, default=None, help='Neighbor table size of the diffusion strategies')
        parser.add_argument('--max-range', dest='max_range', type=parse_optional_float, default=None, help='Farthest neighbor a diffusion table may hold, in meters')
        parser.add_argument('--low-power-threshold', dest='low_power_threshold', type=float, default=None, help='e3D near death power fraction')
        parser.add_argument('--power-compare-threshold', dest='power_compare_threshold', type=float, default=None, help='e3D power fraction below which receivers compare with senders')
        parser.add_argument('--queue-limit', dest='queue_limit', type=int, default=None, help='e3D packets a receiver relays per iteration before objecting')
        parser.add_argument('--trace', dest='trace', action='store_true', default=False, help='Write a per event trace.csv next to the exports')
        parser.add_argument('--check-invariants', dest='check_invariants', action='store_true', default=False, help='Replay every run against the simulation invariants')

    def get_defaults(self):
        return {
            'nodes': NODE_COUNT,
            'area': (AREA_WIDTH, AREA_HEIGHT),
            'base': (BASE_X, BASE_Y),
            'seed': 0,
            'out': DEFAULT_OUTPUT_DIR,
            'format': FORMAT_CSV,
            'max_iterations': MAX_ITERATIONS,
        }

    def resolve_options(self, options, keys):
        """
        Merge settings, configuration file and flags; ``keys`` are the flag
        destinations that take part
        """
        config_values = {}
        if options.get('config'):
            config_values = load_config(options['config'])

        flag_values = dict((key, options.get(key)) for key in keys)
        self.flag_knobs = set(key for key in KNOB_NAMES if options.get(key) is not None)
        self.file_knobs = set(key for key in KNOB_NAMES if key in config_values)
        return merge_options(self.get_defaults(), config_values, flag_values)

    def select_knobs(self, values, strategy_class):
        """
        Knobs for one strategy. Flags that do not apply are an error,
        configuration file entries that do not apply are skipped.
        """
        knobs = {}
        for knob in KNOB_NAMES:
            if knob not in self.flag_knobs and knob not in self.file_knobs:
                continue
            if knob in strategy_class.knobs:
                knobs[knob] = values[knob]
            elif knob in self.flag_knobs:
                raise UsageError('--%s does not apply to the %s strategy' % (knob.replace('_', '-'), strategy_class.name))
            else:
                logger.debug('ignoring configuration value %s; it does not apply to %s' % (knob, strategy_class.name))
        return knobs

    def get_energy(self, values):
        return EnergyParams(**dict((key, values[key]) for key in ENERGY_KEYS if values.get(key) is not None))

    def execute_command(self, options):
        raise NotImplementedError

    def handle(self, *args, **options):
        set_verbosity(options.get('verbosity', 1))
        try:
            return self.execute_command(options)
        except USAGE_ERRORS as exception:
            raise CommandError(str(exception), returncode=EXIT_USAGE)

    def fail(self, exception):
        raise CommandError(str(exception), returncode=EXIT_RUNTIME)
