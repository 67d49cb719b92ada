import json
import os
import shutil
import tempfile

from django.test import SimpleTestCase

import numpy as np
import unicodecsv

from engine.classes import SimConfig, SimulationResult, run_simulation
from topology.classes import Topology

from .aggregates import Average, Count, Max, Min, Ratio, get_aggregate
from .classes import LifetimeSummary
from .exceptions import ExportError, MetricsError, UnknownAggregate
from .exporters import export
from .literals import FORMAT_JSON, SUMMARY_FIELDNAMES
from .utils import (
    death_distance_correlation, lifetime_summary, summary_row, utility_curve)


def line_topology(count):
    return Topology([(10.0 * (index + 1), 0) for index in range(count)], base=(0, 0), width=10.0 * count, height=10)


def make_result(death_iteration, topology=None, **kwargs):
    values = dict(
        topology=topology or line_topology(len(death_iteration)),
        strategy='direct', seed=0, death_iteration=death_iteration,
        iterations=max([0] + [iteration or 0 for iteration in death_iteration]),
        sync_messages=1, sync_energy=0.0, delivered=0, dropped=0, generated=0,
    )
    values.update(kwargs)
    return SimulationResult(**values)


def average_ranks(values):
    ranks = []
    for value in values:
        below = len([other for other in values if other < value])
        equal = len([other for other in values if other == value])
        ranks.append(below + (equal + 1) / 2.0)
    return ranks


def pearson(first, second):
    count = float(len(first))
    first_mean = sum(first) / count
    second_mean = sum(second) / count
    covariance = sum((a - first_mean) * (b - second_mean) for a, b in zip(first, second))
    first_spread = sum((a - first_mean) ** 2 for a in first)
    second_spread = sum((b - second_mean) ** 2 for b in second)
    if not first_spread or not second_spread:
        return 0.0
    return covariance / (first_spread * second_spread) ** 0.5


class LifetimeTestCase(SimpleTestCase):
    def test_utility_curve(self):
        result = make_result([10, 10, 20, 40])
        self.assertEqual(utility_curve(result), [(0, 100.0), (10, 50.0), (20, 25.0), (40, 0.0)])

    def test_summary(self):
        summary = lifetime_summary(make_result([10, 10, 20, 40]))
        self.assertEqual(summary, LifetimeSummary(10, 40, 0.25, 0.75, False))

    def test_simultaneous_deaths(self):
        summary = lifetime_summary(make_result([30, 30, 30]))
        self.assertEqual(summary.utility_fraction, 1.0)
        self.assertEqual(summary.death_spread, 0.0)

    def test_death_during_setup(self):
        summary = lifetime_summary(make_result([0, 0]))
        self.assertEqual(summary, LifetimeSummary(0, 0, 1.0, 0.0, False))

    def test_censored(self):
        result = make_result([12, None, None], iterations=50)
        summary = lifetime_summary(result)
        self.assertTrue(summary.censored)
        self.assertEqual(summary.first_death, 12)
        self.assertEqual(summary.system_lifetime, None)
        self.assertEqual(utility_curve(result)[-1], (12, 100.0 * 2 / 3))

    def test_nobody_died(self):
        summary = lifetime_summary(make_result([None, None], iterations=5))
        self.assertEqual(summary, LifetimeSummary(None, None, None, None, True))

    def test_fraction_bounds(self):
        generator = np.random.Generator(np.random.PCG64(21))
        for _ in range(100):
            deaths = generator.integers(1, 500, size=generator.integers(1, 20)).tolist()
            summary = lifetime_summary(make_result(deaths))
            self.assertTrue(0 < summary.utility_fraction <= 1)
            self.assertAlmostEqual(summary.utility_fraction + summary.death_spread, 1.0, delta=1e-12)


class CorrelationTestCase(SimpleTestCase):
    def test_far_dies_first(self):
        self.assertAlmostEqual(death_distance_correlation(make_result([40, 30, 20, 10])), -1.0, delta=1e-12)

    def test_near_dies_first(self):
        self.assertAlmostEqual(death_distance_correlation(make_result([10, 20, 30, 40])), 1.0, delta=1e-12)

    def test_constant_deaths(self):
        self.assertEqual(death_distance_correlation(make_result([25, 25, 25, 25])), 0.0)

    def test_too_few_deaths(self):
        self.assertEqual(death_distance_correlation(make_result([5, 8, None, None])), None)

    def test_survivors_left_out(self):
        self.assertAlmostEqual(death_distance_correlation(make_result([30, None, 20, 10])), -1.0, delta=1e-12)

    def test_against_rank_definition(self):
        generator = np.random.Generator(np.random.PCG64(5))
        for _ in range(200):
            count = int(generator.integers(3, 21))
            positions = [(float(x), float(y)) for x, y in generator.integers(0, 20, size=(count, 2))]
            topology = Topology(positions, base=(0, 0), width=20, height=20)
            deaths = generator.integers(1, 10, size=count).tolist()

            distances = topology.base_distances.tolist()
            expected = pearson(average_ranks(distances), average_ranks(deaths))
            self.assertAlmostEqual(death_distance_correlation(make_result(deaths, topology=topology)), expected, delta=1e-12)


class SummaryRowTestCase(SimpleTestCase):
    def test_fields(self):
        row = summary_row(make_result([10, 10, 20, 40]))
        self.assertEqual(tuple(row.keys()), SUMMARY_FIELDNAMES)
        self.assertEqual(row['system_lifetime'], 40)
        self.assertEqual(row['censored'], False)


class AggregateTestCase(SimpleTestCase):
    def setUp(self):
        self.rows = [{'first_death': 10}, {'first_death': 30}, {'first_death': None}, {'first_death': 20}]

    def test_missing_values_skipped(self):
        self.assertEqual(Count('first_death').execute(self.rows), 3)
        self.assertEqual(Average('first_death').execute(self.rows), 20.0)
        self.assertEqual(Max('first_death').execute(self.rows), 30)
        self.assertEqual(Min('first_death').execute(self.rows), 10)
        self.assertEqual(Ratio('first_death').execute(self.rows), 3.0)

    def test_all_missing(self):
        self.assertEqual(Average('first_death').execute([{'first_death': None}]), None)

    def test_unknown_field(self):
        with self.assertRaises(MetricsError):
            Average('lifetime').execute(self.rows)

    def test_lookup(self):
        self.assertTrue(isinstance(get_aggregate('Max', 'first_death'), Max))
        with self.assertRaises(UnknownAggregate):
            get_aggregate('Median', 'first_death')


class ExportTestCase(SimpleTestCase):
    def setUp(self):
        self.directory = tempfile.mkdtemp()
        topology = Topology([(10, 0), (100, 0)], base=(0, 0), width=100, height=100)
        self.result = run_simulation(SimConfig('direct', topology=topology, max_iterations=300))

    def tearDown(self):
        shutil.rmtree(self.directory)

    def read_csv(self, path):
        with open(path, 'rb') as file_object:
            return list(unicodecsv.DictReader(file_object, encoding='utf-8'))

    def test_csv(self):
        written = export(self.result, path=self.directory)
        self.assertEqual([os.path.basename(filename) for filename in written], ['nodes.csv', 'curve.csv', 'summary.csv'])

        nodes = self.read_csv(os.path.join(self.directory, 'nodes.csv'))
        self.assertEqual(len(nodes), 2)
        self.assertEqual(nodes[0]['death_iteration'], '')
        self.assertEqual(nodes[1]['death_iteration'], str(self.result.death_iteration[1]))
        self.assertEqual(nodes[1]['dist_to_base'], '100.0')

        summary, = self.read_csv(os.path.join(self.directory, 'summary.csv'))
        self.assertEqual(summary['censored'], 'true')
        self.assertEqual(summary['system_lifetime'], '')

    def test_repeatable(self):
        first = os.path.join(self.directory, 'first')
        second = os.path.join(self.directory, 'second')
        export(self.result, path=first)
        export(self.result, path=second)

        for name in ('nodes.csv', 'curve.csv', 'summary.csv'):
            with open(os.path.join(first, name), 'rb') as one, open(os.path.join(second, name), 'rb') as other:
                self.assertEqual(one.read(), other.read())

    def test_json(self):
        export(self.result, format=FORMAT_JSON, path=self.directory)

        with open(os.path.join(self.directory, 'nodes.json')) as file_object:
            nodes = json.load(file_object)
        self.assertEqual(len(nodes), 2)
        self.assertEqual(nodes[0]['death_iteration'], None)

        with open(os.path.join(self.directory, 'summary.json')) as file_object:
            summary = json.load(file_object)
        self.assertEqual(list(summary.keys()), list(SUMMARY_FIELDNAMES))
        self.assertEqual(summary['strategy'], 'direct')

    def test_nothing_to_export(self):
        with self.assertRaises(ExportError):
            export(make_result([None], iterations=0), path=self.directory)

    def test_unknown_format(self):
        with self.assertRaises(ExportError):
            export(self.result, format='xls', path=self.directory)

    def test_unwritable(self):
        path = os.path.join(self.directory, 'file')
        open(path, 'w').close()
        with self.assertRaises(ExportError):
            export(self.result, path=os.path.join(path, 'results'))
