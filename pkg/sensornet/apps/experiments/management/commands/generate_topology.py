from topology.classes import generate_topology
from topology.exceptions import TopologyError
from topology.utils import export_topology

from ...exceptions import UsageError
from ..base import ExperimentCommand


class Command(ExperimentCommand):
    help = 'Writes a random node placement to a topology CSV file'

    def add_arguments(self, parser):
        parser.add_argument('path', help='Topology CSV file to write')
        self.add_network_arguments(parser)

    def execute_command(self, options):
        values = self.resolve_options(options, ('nodes', 'area', 'base', 'seed'))
        width, height = values['area']

        try:
            topology = generate_topology(values['nodes'], width, height, base=values['base'], seed=values['seed'])
        except TopologyError as exception:
            raise UsageError(str(exception))

        try:
            export_topology(topology, options['path'])
        except TopologyError as exception:
            self.fail(exception)

        self.stdout.write('Wrote %d nodes to: %s' % (topology.size, options['path']))
