import os
import shutil
import tempfile

from django.test import SimpleTestCase

import numpy as np

from .classes import Topology, build_neighbor_table, generate_topology
from .exceptions import TopologyError, TopologyFormatError, UnknownNodeError
from .utils import distance, export_topology, format_number, import_topology


class DistanceTestCase(SimpleTestCase):
    def test_three_four_five(self):
        self.assertEqual(distance((0, 0), (3, 4)), 5)

    def test_identity(self):
        self.assertEqual(distance((2, 2), (2, 2)), 0)

    def test_diagonal(self):
        self.assertAlmostEqual(distance((0, 0), (100, 100)), 141.42135623730951, delta=1e-9)

    def test_symmetric(self):
        self.assertEqual(distance((1.5, 7), (-3, 2)), distance((-3, 2), (1.5, 7)))

    def test_matrix_matches_pairwise_distance(self):
        topology = Topology([(0, 0), (3, 4), (6, 8)], width=10, height=10)
        self.assertAlmostEqual(topology.distance_matrix[0, 2], 10.0)
        self.assertAlmostEqual(topology.distance_to_base(1), 5.0)


class GenerateTopologyTestCase(SimpleTestCase):
    def test_hundred_nodes_in_square(self):
        topology = generate_topology(100, 100, 100, base=(0, 0), seed=1)
        self.assertEqual(topology.size, 100)
        for position in topology.positions:
            self.assertTrue(0 <= position.x <= 100)
            self.assertTrue(0 <= position.y <= 100)
        self.assertEqual(topology.base, (0.0, 0.0))

    def test_deterministic(self):
        self.assertEqual(generate_topology(1, 10, 10, seed=7), generate_topology(1, 10, 10, seed=7))

    def test_seed_changes_placement(self):
        self.assertNotEqual(generate_topology(10, 100, 100, seed=1), generate_topology(10, 100, 100, seed=2))

    def test_reference_generator(self):
        draws = np.random.Generator(np.random.PCG64(3)).random(10)
        expected = [(100 * draws[2 * index], 100 * draws[2 * index + 1]) for index in range(5)]

        topology = generate_topology(5, 100, 100, base=(0, 0), seed=3)
        self.assertEqual([tuple(position) for position in topology.positions], expected)
        self.assertEqual(topology.seed, 3)

    def test_no_nodes(self):
        with self.assertRaises(TopologyError):
            generate_topology(0, 100, 100)

    def test_non_positive_area(self):
        with self.assertRaises(TopologyError):
            generate_topology(10, 0, 100)
        with self.assertRaises(TopologyError):
            generate_topology(10, 100, -5)


class TopologyTestCase(SimpleTestCase):
    def test_node_outside_area(self):
        with self.assertRaises(TopologyError):
            Topology([(5, 5), (11, 5)], width=10, height=10)

    def test_node_on_border(self):
        topology = Topology([(0, 0), (10, 10)], width=10, height=10)
        self.assertEqual(topology.size, 2)

    def test_empty(self):
        with self.assertRaises(TopologyError):
            Topology([])

    def test_unknown_node(self):
        topology = Topology([(1, 1)], width=10, height=10)
        with self.assertRaises(UnknownNodeError):
            topology.position(1)
        with self.assertRaises(UnknownNodeError):
            build_neighbor_table(5, topology, 8)

    def test_geometry_is_read_only(self):
        topology = Topology([(1, 1), (2, 2)], width=10, height=10)
        with self.assertRaises(ValueError):
            topology.distance_matrix[0, 1] = 0


class NeighborTableTestCase(SimpleTestCase):
    def setUp(self):
        self.topology = Topology([(50, 50), (40, 40), (45, 45), (1, 1)], base=(0, 0), width=100, height=100)

    def test_ranking(self):
        table = build_neighbor_table(0, self.topology, 2)
        self.assertEqual([entry.neighbor_id for entry in table], [1, 2])
        self.assertAlmostEqual(table[0].cost, 3400)

    def test_costs(self):
        topology = Topology([(50, 50), (40, 40), (45, 45)], base=(0, 0), width=100, height=100)
        table = build_neighbor_table(0, topology, 8)
        self.assertEqual([entry.neighbor_id for entry in table], [1, 2])
        self.assertAlmostEqual(table[0].cost, 3400)
        self.assertAlmostEqual(table[1].cost, 4100)

    def test_truncated(self):
        table = build_neighbor_table(0, self.topology, 1)
        self.assertEqual([entry.neighbor_id for entry in table], [1])

    def test_no_progress_possible(self):
        self.assertEqual(build_neighbor_table(3, self.topology, 8), [])

    def test_progress_constraint(self):
        topology = generate_topology(50, 100, 100, seed=11)
        for node_id in topology.node_ids:
            for entry in build_neighbor_table(node_id, topology, 8):
                self.assertTrue(entry.dist_to_base < topology.distance_to_base(node_id))

    def test_max_range(self):
        table = build_neighbor_table(0, self.topology, 8, max_range=10)
        self.assertEqual([entry.neighbor_id for entry in table], [2])

    def test_negative_size(self):
        with self.assertRaises(TopologyError):
            build_neighbor_table(0, self.topology, -1)


class FormatNumberTestCase(SimpleTestCase):
    def test_values(self):
        self.assertEqual(format_number(None), '')
        self.assertEqual(format_number(True), 'true')
        self.assertEqual(format_number(7), '7')
        self.assertEqual(format_number(np.int64(7)), '7')
        self.assertEqual(format_number(0.1), '0.1')
        self.assertEqual(format_number(100.0), '100.0')
        self.assertEqual(float(format_number(1 / 3.0)), 1 / 3.0)


class TopologyFileTestCase(SimpleTestCase):
    def setUp(self):
        self.directory = tempfile.mkdtemp()
        self.path = os.path.join(self.directory, 'topology.csv')

    def tearDown(self):
        shutil.rmtree(self.directory)

    def write(self, content):
        with open(self.path, 'w') as file_object:
            file_object.write(content)

    def test_round_trip(self):
        topology = generate_topology(20, 100, 50, base=(0, 0), seed=5)
        export_topology(topology, self.path)
        imported = import_topology(self.path)

        self.assertEqual(imported, topology)
        self.assertEqual(imported.seed, 5)
        self.assertEqual(imported.width, 100)
        self.assertEqual(imported.height, 50)

    def test_plain_file(self):
        self.write('node_id,x,y\n1,4,2\n0,1,3\n')
        topology = import_topology(self.path)
        self.assertEqual(topology.positions, ((1.0, 3.0), (4.0, 2.0)))
        self.assertEqual(topology.base, (0.0, 0.0))
        self.assertEqual((topology.width, topology.height), (4.0, 3.0))
        self.assertEqual(topology.seed, None)

    def test_base_comment(self):
        self.write('# base,10,20\n# free text\nnode_id,x,y\n0,1,1\n')
        self.assertEqual(import_topology(self.path).base, (10.0, 20.0))

    def test_bad_header(self):
        self.write('id,x,y\n0,1,1\n')
        with self.assertRaises(TopologyFormatError) as context:
            import_topology(self.path)
        self.assertEqual(context.exception.line, 1)

    def test_malformed_row(self):
        self.write('node_id,x,y\n0,1,1\n1,one,1\n')
        with self.assertRaises(TopologyFormatError) as context:
            import_topology(self.path)
        self.assertEqual(context.exception.line, 3)
        self.assertEqual(context.exception.path, self.path)

    def test_duplicate_ids(self):
        self.write('node_id,x,y\n0,1,1\n0,2,2\n')
        with self.assertRaises(TopologyFormatError):
            import_topology(self.path)

    def test_sparse_ids(self):
        self.write('node_id,x,y\n0,1,1\n2,2,2\n')
        with self.assertRaises(TopologyFormatError):
            import_topology(self.path)

    def test_missing_file(self):
        with self.assertRaises(TopologyFormatError):
            import_topology(os.path.join(self.directory, 'missing.csv'))
