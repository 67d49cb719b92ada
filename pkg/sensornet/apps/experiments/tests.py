from io import StringIO
import os
import shutil
import tempfile

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase

import unicodecsv

from energy.classes import EnergyParams, rx_cost, tx_cost
from engine.classes import SimConfig
from topology.classes import generate_topology
from topology.utils import import_topology

from .classes import BatchSpec
from .config import load_config, merge_options, parse_area, parse_config
from .exceptions import ConfigurationError, UsageError
from .job_processing import JobPool
from .literals import BATCH_SUMMARY_FILENAME, EXIT_RUNTIME, EXIT_USAGE
from .utils import run_batch, simulate_and_export


class ConfigParsingTestCase(SimpleTestCase):
    def test_values(self):
        values = parse_config([
            '# experiment',
            '',
            'algo = e3d',
            'nodes=50   # fewer nodes',
            'area = 200x100',
            'base = 0,50',
            'strategies = direct, e3d',
            'max_range = none',
            'initial_battery = 0.25',
        ])
        self.assertEqual(values, {
            'algo': 'e3d', 'nodes': 50, 'area': (200.0, 100.0),
            'base': (0.0, 50.0), 'strategies': ('direct', 'e3d'),
            'max_range': None, 'initial_battery': 0.25,
        })

    def test_unknown_key(self):
        with self.assertRaises(ConfigurationError) as context:
            parse_config(['nodes = 5', 'speed = 3'], path='run.conf')
        self.assertEqual(context.exception.line, 2)
        self.assertTrue(str(context.exception).startswith('run.conf:2:'))

    def test_duplicate_key(self):
        with self.assertRaises(ConfigurationError) as context:
            parse_config(['seed = 1', '# again', 'seed = 2'])
        self.assertEqual(context.exception.line, 3)

    def test_malformed_line(self):
        with self.assertRaises(ConfigurationError) as context:
            parse_config(['nodes 5'])
        self.assertEqual(context.exception.line, 1)

    def test_bad_value(self):
        with self.assertRaises(ConfigurationError):
            parse_config(['nodes = many'])
        with self.assertRaises(ConfigurationError):
            parse_config(['strategies = direct, flooding'])
        with self.assertRaises(ConfigurationError):
            parse_config(['format = xls'])

    def test_configuration_error_is_usage_error(self):
        self.assertTrue(issubclass(ConfigurationError, UsageError))

    def test_missing_file(self):
        with self.assertRaises(ConfigurationError):
            load_config('/nonexistent/run.conf')

    def test_precedence(self):
        options = merge_options({'nodes': 100, 'seed': 0, 'out': 'results'}, {'nodes': 50, 'seed': 7}, {'nodes': 20, 'seed': None})
        self.assertEqual(options, {'nodes': 20, 'seed': 7, 'out': 'results'})


class ParseAreaTestCase(SimpleTestCase):
    def test_valid(self):
        self.assertEqual(parse_area('100x50'), (100.0, 50.0))
        self.assertEqual(parse_area(' 20.5X10 '), (20.5, 10.0))

    def test_invalid(self):
        for text in ('100', '0x10', '10x-1', 'axb', 'x'):
            with self.assertRaises(ValueError):
                parse_area(text)


class BatchSpecTestCase(SimpleTestCase):
    def test_seeds(self):
        spec = BatchSpec(topologies=3, seeds_per_topology=2, base_seed=3)
        self.assertEqual(spec.topology_seed(2), 3 * 1000003 + 2 * 1009)
        self.assertEqual(spec.run_seed(1, 1, 'direct'), 4 * 1000003 + 1009)
        self.assertEqual(spec.run_seed(1, 1, 'e3d'), 4 * 1000003 + 1009 + 2)
        self.assertEqual(spec.run_seed(0, 0, 'ideal-cluster'), 3 * 1000003 + 5)

    def test_jobs(self):
        spec = BatchSpec(topologies=2, seeds_per_topology=2, strategies=('e3d', 'direct'), node_count=5)
        jobs = spec.jobs()
        self.assertEqual(len(jobs), 8)
        self.assertEqual([job.key for job in jobs], sorted(job.key for job in jobs))
        self.assertEqual(jobs[0].strategy, 'direct')
        self.assertEqual(jobs[0].topology, jobs[3].topology)
        self.assertNotEqual(jobs[0].topology, jobs[4].topology)
        self.assertEqual(jobs[-1].run_directory, os.path.join('.', 'topology-001', 'replicate-01', 'e3d'))

    def test_knobs_filtered_per_strategy(self):
        spec = BatchSpec(strategies=('direct', 'random-cluster', 'e3d'), knobs={'round_length': 5, 'queue_limit': 3})
        knobs = dict((job.strategy, job.knobs) for job in spec.jobs())
        self.assertEqual(knobs['direct'], {})
        self.assertEqual(knobs['random-cluster'], {'round_length': 5})
        self.assertEqual(knobs['e3d'], {'queue_limit': 3})

    def test_validation(self):
        for kwargs in (
            {'topologies': 0},
            {'seeds_per_topology': 0},
            {'strategies': ()},
            {'strategies': ('direct', 'flooding')},
            {'strategies': ('direct', 'direct')},
            {'base_seed': -1},
            {'node_count': 0},
            {'knobs': {'clusters': 0}},
        ):
            with self.assertRaises(UsageError):
                BatchSpec(**kwargs)


class BatchTestCase(SimpleTestCase):
    def setUp(self):
        self.directory = tempfile.mkdtemp()
        self.energy = EnergyParams(initial_battery=0.01)

    def tearDown(self):
        shutil.rmtree(self.directory)

    def spec(self, name, **kwargs):
        values = dict(node_count=10, energy=self.energy, max_iterations=300, output_dir=os.path.join(self.directory, name))
        values.update(kwargs)
        return BatchSpec(**values)

    def test_single_run_matches_simulation(self):
        spec = self.spec('batch', strategies=('direct',), base_seed=4)
        rows, errors = run_batch(spec, pool=JobPool(immediate=True))
        self.assertEqual(errors, [])

        config = SimConfig(
            'direct', topology=generate_topology(10, 100, 100, base=(0, 0), seed=spec.topology_seed(0)),
            energy=self.energy, max_iterations=300, seed=spec.run_seed(0, 0, 'direct')
        )
        expected = simulate_and_export(config, os.path.join(self.directory, 'single'), 'csv')

        row, = rows
        self.assertEqual(row['row_type'], 'run')
        for field, value in expected.items():
            self.assertEqual(row[field], value)
        self.assertTrue(os.path.exists(os.path.join(spec.output_dir, 'topology-000', 'replicate-00', 'direct', 'summary.csv')))

    def test_repeatable(self):
        contents = []
        for name in ('first', 'second'):
            spec = self.spec(name, topologies=2, seeds_per_topology=2, strategies=('direct', 'e3d', 'ideal-cluster'), base_seed=1)
            rows, errors = run_batch(spec, pool=JobPool(immediate=True))
            self.assertEqual(len(rows), 12)
            with open(os.path.join(spec.output_dir, BATCH_SUMMARY_FILENAME), 'rb') as file_object:
                contents.append(file_object.read())
        self.assertEqual(contents[0], contents[1])

    def test_parallel_matches_immediate(self):
        contents = []
        for name, pool in (('immediate', JobPool(immediate=True)), ('parallel', JobPool(workers=2, immediate=False))):
            spec = self.spec(name, topologies=2, seeds_per_topology=3, strategies=('direct', 'e3d'), base_seed=2)
            rows, errors = run_batch(spec, pool=pool)
            self.assertEqual(errors, [])
            self.assertEqual(len(rows), 12)
            with open(os.path.join(spec.output_dir, BATCH_SUMMARY_FILENAME), 'rb') as file_object:
                contents.append(file_object.read())
        self.assertEqual(contents[0], contents[1])

    def test_aggregate_rows(self):
        spec = self.spec('batch', seeds_per_topology=3, strategies=('direct',), max_iterations=100000)
        run_batch(spec, pool=JobPool(immediate=True))

        with open(os.path.join(spec.output_dir, BATCH_SUMMARY_FILENAME), 'rb') as file_object:
            rows = list(unicodecsv.DictReader(file_object, encoding='utf-8'))
        self.assertEqual([row['row_type'] for row in rows], ['run', 'run', 'run', 'mean', 'min', 'max', 'max_min_ratio', 'count'])

        lifetimes = [int(row['system_lifetime']) for row in rows[:3]]
        self.assertEqual(int(rows[5]['system_lifetime']), max(lifetimes))
        self.assertAlmostEqual(float(rows[3]['system_lifetime']), sum(lifetimes) / 3.0)
        self.assertEqual(rows[7]['system_lifetime'], '3')


class CommandTestCase(SimpleTestCase):
    def setUp(self):
        self.directory = tempfile.mkdtemp()
        self.out = os.path.join(self.directory, 'out')

    def tearDown(self):
        shutil.rmtree(self.directory)

    def call(self, name, *args, **options):
        stdout = StringIO()
        call_command(name, *args, stdout=stdout, **options)
        return stdout.getvalue()

    def test_simulate(self):
        output = self.call('simulate', algo='direct', nodes=5, max_iterations=3, out=self.out)
        self.assertIn('strategy=direct', output)
        for name in ('nodes.csv', 'curve.csv', 'summary.csv'):
            self.assertTrue(os.path.exists(os.path.join(self.out, name)))

    def test_simulate_trace(self):
        self.call('simulate', algo='e3d', nodes=5, max_iterations=3, out=self.out, check_invariants=True)
        self.assertTrue(os.path.exists(os.path.join(self.out, 'trace.csv')))

    def test_simulate_knob_not_applicable(self):
        with self.assertRaises(CommandError) as context:
            self.call('simulate', algo='e3d', round_length=5, out=self.out)
        self.assertEqual(context.exception.returncode, EXIT_USAGE)

    def test_simulate_unknown_strategy(self):
        with self.assertRaises(CommandError) as context:
            self.call('simulate', algo='flooding', out=self.out)
        self.assertEqual(context.exception.returncode, EXIT_USAGE)

    def test_simulate_without_strategy(self):
        with self.assertRaises(CommandError) as context:
            self.call('simulate', out=self.out)
        self.assertEqual(context.exception.returncode, EXIT_USAGE)

    def test_simulate_missing_topology(self):
        with self.assertRaises(CommandError) as context:
            self.call('simulate', algo='direct', topology=os.path.join(self.directory, 'missing.csv'), out=self.out)
        self.assertEqual(context.exception.returncode, EXIT_RUNTIME)

    def test_configuration_file(self):
        path = os.path.join(self.directory, 'run.conf')
        with open(path, 'w') as file_object:
            file_object.write('algo = direct\nnodes = 4\nround_length = 5\nmax_iterations = 2\n')

        self.call('simulate', config=path, nodes=6, out=self.out)
        with open(os.path.join(self.out, 'nodes.csv'), 'rb') as file_object:
            self.assertEqual(len(list(unicodecsv.DictReader(file_object, encoding='utf-8'))), 6)

    def test_bad_configuration_file(self):
        path = os.path.join(self.directory, 'run.conf')
        with open(path, 'w') as file_object:
            file_object.write('algo = direct\nspeed = 4\n')

        with self.assertRaises(CommandError) as context:
            self.call('simulate', config=path, out=self.out)
        self.assertEqual(context.exception.returncode, EXIT_USAGE)
        self.assertIn(':2:', str(context.exception))

    def test_generate_topology(self):
        path = os.path.join(self.directory, 'topology.csv')
        self.call('generate_topology', path, nodes=5, seed=2)
        self.assertEqual(import_topology(path).positions, generate_topology(5, 100, 100, base=(0, 0), seed=2).positions)

        self.call('simulate', algo='diffusion', topology=path, max_iterations=2, out=self.out)
        with open(os.path.join(self.out, 'nodes.csv'), 'rb') as file_object:
            self.assertEqual(len(list(unicodecsv.DictReader(file_object, encoding='utf-8'))), 5)

    def test_topology_file_with_placement_flags(self):
        path = os.path.join(self.directory, 'topology.csv')
        self.call('generate_topology', path, nodes=5, seed=2)

        for flags in ({'nodes': 6}, {'area': (50.0, 50.0)}, {'base': (10.0, 10.0)}):
            with self.assertRaises(CommandError) as context:
                self.call('simulate', algo='direct', topology=path, out=self.out, **flags)
            self.assertEqual(context.exception.returncode, EXIT_USAGE)

    def test_simulate_batch(self):
        output = self.call(
            'simulate_batch', strategies=('direct', 'e3d'), nodes=6,
            max_iterations=5, out=self.out, immediate=True
        )
        self.assertIn('Ran 2 simulations', output)
        self.assertTrue(os.path.exists(os.path.join(self.out, BATCH_SUMMARY_FILENAME)))

    def test_simulate_batch_knob_not_applicable(self):
        with self.assertRaises(CommandError) as context:
            self.call('simulate_batch', strategies=('direct',), round_length=5, out=self.out, immediate=True)
        self.assertEqual(context.exception.returncode, EXIT_USAGE)


def delivery_energy_floor(distance, params):
    """
    Least energy any route can spend carrying one data packet over
    ``distance`` meters: ``hops`` transmissions covering the distance in
    equal legs plus ``hops - 1`` receptions at the relays
    """
    bits = params.data_bits
    return min(
        hops * tx_cost(bits, distance / hops, params) + (hops - 1) * rx_cost(bits, params)
        for hops in range(1, 50)
    )


class AcceptanceTestCase(SimpleTestCase):
    def setUp(self):
        self.directory = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.directory)

    def run_spec(self, **kwargs):
        spec = BatchSpec(output_dir=self.directory, **kwargs)
        rows, errors = run_batch(spec, pool=JobPool(immediate=True))
        self.assertEqual(errors, [])
        return spec, rows

    def test_direct_die_off(self):
        spec, rows = self.run_spec(topologies=3, strategies=('direct',), base_seed=1)
        for row in rows:
            self.assertFalse(row['censored'])
            self.assertTrue(row['death_distance_correlation'] <= -0.6)
            self.assertTrue(row['death_spread'] >= 0.6)
            self.assertTrue(row['utility_fraction'] <= 0.25)

    def test_first_death_within_energy_floor(self):
        spec, rows = self.run_spec(topologies=1, base_seed=1)
        topology = spec.jobs()[0].topology
        params = spec.energy

        # Until the first death every packet is delivered, so the network
        # cannot outlast its batteries divided by the cheapest possible
        # delivery of one packet from every node
        floor = sum(delivery_energy_floor(distance, params) for distance in topology.base_distances.tolist())
        latest_first_death = topology.size * params.initial_battery / floor + 1

        for row in rows:
            self.assertTrue(row['first_death'] <= latest_first_death * (1 + 1e-9), row['strategy'])

        # A run with a death spread of at most 0.4 ends by first death / 0.6;
        # the node nearest the base station keeps Direct going far longer
        direct, = [row for row in rows if row['strategy'] == 'direct']
        self.assertTrue(latest_first_death / 0.6 * 1.1 < direct['system_lifetime'])

    def test_random_clustering_spread_over_seeds(self):
        spec, rows = self.run_spec(seeds_per_topology=8, strategies=('direct', 'random-cluster'), base_seed=1)

        with open(os.path.join(spec.output_dir, BATCH_SUMMARY_FILENAME), 'rb') as file_object:
            ratios = dict(
                (row['strategy'], float(row['system_lifetime']))
                for row in unicodecsv.DictReader(file_object, encoding='utf-8')
                if row['row_type'] == 'max_min_ratio'
            )
        self.assertEqual(ratios['direct'], 1.0)
        self.assertTrue(ratios['random-cluster'] > 1.0)
