import math

from django.test import SimpleTestCase

import numpy as np

from topology.classes import (
    NeighborEntry, Topology, build_neighbor_table, generate_topology)

from .classes import (
    BasicDiffusionStrategy, E3DStrategy, STRATEGY_CLASS_MAP,
    get_strategy_class)
from .clustering import (
    clustroid_cost, elect_clustroid, ideal_cluster_assign, kmeans,
    random_cluster_elect)
from .diffusion import (
    E3DNodeState, ExceptionMessage, diffusion_select, direct_next_hop,
    e3d_handle_exception, e3d_next_hop, e3d_receive_check)
from .exceptions import (
    InvalidKnob, RoutingTreeError, StrategyError, UnknownStrategy)
from .literals import (
    BASE, EXCEPTION_NEAR_DEATH, EXCEPTION_POWER_IMBALANCE,
    EXCEPTION_QUEUE_FULL, STRATEGY_NAMES)
from .planning import RoutingTree, ideal_diffusion_plan, ideal_parent


def brute_force_parent(node_id, alive, positions, base, fractions):
    """Every valid parent tried; the base station wins ties, then the lowest id"""
    def dist(a, b):
        return math.hypot(a[0] - b[0], a[1] - b[1])

    own = dist(positions[node_id], base)
    best, best_cost = BASE, own ** 2
    for candidate in sorted(alive):
        candidate_distance = dist(positions[candidate], base)
        if candidate_distance >= own:
            continue
        cost = dist(positions[node_id], positions[candidate]) ** 2 / fractions[candidate] + candidate_distance ** 2
        if cost < best_cost:
            best, best_cost = candidate, cost
    return best


def brute_force_clustroid_cost(candidate, members, positions, fractions):
    return sum(
        ((positions[member][0] - positions[candidate][0]) ** 2 + (positions[member][1] - positions[candidate][1]) ** 2) / fractions[candidate]
        for member in members if member != candidate
    )


def ranked(*neighbor_ids):
    return [NeighborEntry(neighbor_id, 1.0, 1.0) for neighbor_id in neighbor_ids]


class DirectTestCase(SimpleTestCase):
    def test_always_base(self):
        for node_id in (0, 5, 99):
            self.assertEqual(direct_next_hop(node_id), BASE)


class DiffusionSelectTestCase(SimpleTestCase):
    def setUp(self):
        self.topology = Topology([(50, 50), (40, 40), (45, 45)], base=(0, 0), width=100, height=100)
        self.table = build_neighbor_table(0, self.topology, 8)

    def test_best_cost(self):
        self.assertEqual(diffusion_select(0, self.table), 1)

    def test_empty_table(self):
        self.assertEqual(diffusion_select(0, []), BASE)

    def test_first_dead(self):
        self.assertEqual(diffusion_select(0, self.table, lambda node_id: node_id != 1), 2)

    def test_all_dead(self):
        self.assertEqual(diffusion_select(0, self.table, lambda node_id: False), BASE)


class E3DNodeStateTestCase(SimpleTestCase):
    def setUp(self):
        self.state = E3DNodeState(9, ranked(1, 2))

    def test_top_of_ranking(self):
        self.assertEqual(e3d_next_hop(self.state), 1)
        self.assertFalse(self.state.ack_pending)

    def test_blacklisted_first(self):
        self.state.blacklist.add(1)
        self.assertEqual(e3d_next_hop(self.state), 2)
        self.assertTrue(self.state.ack_pending)

    def test_all_blacklisted(self):
        self.state.blacklist.update((1, 2))
        self.assertEqual(e3d_next_hop(self.state), BASE)
        self.assertFalse(self.state.ack_pending)
        self.assertTrue(self.state.exhausted)

    def test_current_never_blacklisted(self):
        self.state.blacklist_neighbor(1)
        self.assertNotIn(self.state.current_neighbor, self.state.blacklist)

    def test_bad_thresholds(self):
        with self.assertRaises(StrategyError):
            E3DNodeState(0, [], low_power_threshold=0.5, power_compare_threshold=0.5)
        with self.assertRaises(StrategyError):
            E3DNodeState(0, [], low_power_threshold=0, power_compare_threshold=0.5)
        with self.assertRaises(StrategyError):
            E3DNodeState(0, [], queue_limit=-1)


class E3DReceiveCheckTestCase(SimpleTestCase):
    def setUp(self):
        self.state = E3DNodeState(1, [], low_power_threshold=0.10, power_compare_threshold=0.50, queue_limit=10)

    def test_power_imbalance(self):
        message = e3d_receive_check(0.40, 0.60, 0, self.state, sender_id=4)
        self.assertEqual(message, ExceptionMessage(1, 4, EXCEPTION_POWER_IMBALANCE))

    def test_above_compare_threshold(self):
        self.assertEqual(e3d_receive_check(0.60, 0.90, 0, self.state), None)

    def test_near_death(self):
        self.assertEqual(e3d_receive_check(0.08, 0.05, 0, self.state).reason, EXCEPTION_NEAR_DEATH)

    def test_queue_full(self):
        self.assertEqual(e3d_receive_check(0.90, 0.10, 11, self.state).reason, EXCEPTION_QUEUE_FULL)

    def test_queue_at_limit(self):
        self.assertEqual(e3d_receive_check(0.90, 0.10, 10, self.state), None)

    def test_equal_power(self):
        self.assertEqual(e3d_receive_check(0.40, 0.40, 0, self.state), None)

    def test_priority(self):
        self.assertEqual(e3d_receive_check(0.05, 0.90, 11, self.state).reason, EXCEPTION_QUEUE_FULL)
        self.assertEqual(e3d_receive_check(0.05, 0.90, 0, self.state).reason, EXCEPTION_NEAR_DEATH)

    def test_unknown_reason(self):
        with self.assertRaises(StrategyError):
            ExceptionMessage(1, 2, 'bored')


class E3DHandleExceptionTestCase(SimpleTestCase):
    def setUp(self):
        self.state = E3DNodeState(9, ranked(1, 2))

    def test_blacklists_current(self):
        e3d_handle_exception(self.state, ExceptionMessage(1, 9, EXCEPTION_POWER_IMBALANCE))
        self.assertEqual(self.state.blacklist, set([1]))
        self.assertEqual(self.state.current_neighbor, 2)
        self.assertTrue(self.state.ack_pending)

    def test_repeated_exception(self):
        e3d_handle_exception(self.state, ExceptionMessage(1, 9, EXCEPTION_POWER_IMBALANCE))
        e3d_handle_exception(self.state, ExceptionMessage(1, 9, EXCEPTION_POWER_IMBALANCE))
        self.assertEqual(self.state.blacklist, set([1]))
        self.assertEqual(self.state.current_neighbor, 2)

    def test_non_current_ignored(self):
        e3d_handle_exception(self.state, ExceptionMessage(2, 9, EXCEPTION_NEAR_DEATH))
        self.assertEqual(self.state.blacklist, set())
        self.assertEqual(self.state.current_neighbor, 1)

    def test_other_recipient_ignored(self):
        e3d_handle_exception(self.state, ExceptionMessage(1, 3, EXCEPTION_NEAR_DEATH))
        self.assertEqual(self.state.blacklist, set())

    def test_exhausted(self):
        e3d_handle_exception(self.state, ExceptionMessage(1, 9, EXCEPTION_NEAR_DEATH))
        e3d_handle_exception(self.state, ExceptionMessage(2, 9, EXCEPTION_QUEUE_FULL))
        self.assertEqual(self.state.current_neighbor, BASE)
        self.assertEqual(e3d_next_hop(self.state), BASE)


class IdealDiffusionTestCase(SimpleTestCase):
    def setUp(self):
        self.topology = Topology([(50, 0), (25, 0)], base=(0, 0), width=100, height=100)

    def test_relay(self):
        tree = ideal_diffusion_plan([0, 1], self.topology, [1.0, 1.0])
        self.assertEqual(tree[0], 1)
        self.assertEqual(tree[1], BASE)
        self.assertEqual(tree.path(0), [0, 1, BASE])

    def test_weak_relay(self):
        tree = ideal_diffusion_plan([0, 1], self.topology, [1.0, 0.1])
        self.assertEqual(tree[0], BASE)

    def test_single_node(self):
        tree = ideal_diffusion_plan([0], self.topology, [1.0, 1.0])
        self.assertEqual(len(tree), 1)
        self.assertEqual(tree[0], BASE)

    def test_dead_candidate(self):
        tree = ideal_diffusion_plan([0, 1], self.topology, [1.0, 0.0])
        self.assertEqual(tree[0], BASE)

    def test_brute_force_oracle(self):
        rng = np.random.Generator(np.random.PCG64(2024))
        for case in range(200):
            size = int(rng.integers(1, 7))
            positions = [tuple(point) for point in rng.random((size, 2)) * 100]
            base = (0.0, 0.0)
            topology = Topology(positions, base=base, width=100, height=100)
            fractions = list(rng.uniform(0.05, 1.0, size))
            alive = [node_id for node_id in range(size) if rng.random() < 0.8] or [0]

            tree = ideal_diffusion_plan(alive, topology, fractions)
            tree.validate(topology)
            for node_id in alive:
                expected = brute_force_parent(node_id, alive, positions, base, fractions)
                self.assertEqual(tree[node_id], expected)
                self.assertEqual(ideal_parent(node_id, alive, topology, fractions), expected)


class RoutingTreeTestCase(SimpleTestCase):
    def setUp(self):
        self.topology = Topology([(50, 0), (25, 0), (10, 0)], base=(0, 0), width=100, height=100)

    def test_valid(self):
        RoutingTree({0: 1, 1: 2, 2: BASE}).validate(self.topology)

    def test_cycle(self):
        tree = RoutingTree({0: 1, 1: 0, 2: BASE})
        with self.assertRaises(RoutingTreeError):
            tree.validate(self.topology)
        with self.assertRaises(RoutingTreeError):
            tree.path(0)

    def test_moving_away(self):
        with self.assertRaises(RoutingTreeError):
            RoutingTree({0: BASE, 1: 0, 2: BASE}).validate(self.topology)

    def test_parent_outside_tree(self):
        with self.assertRaises(RoutingTreeError):
            RoutingTree({0: 1}).validate(self.topology)


class RandomClusterTestCase(SimpleTestCase):
    def setUp(self):
        self.topology = generate_topology(100, 100, 100, seed=1)
        self.alive = list(self.topology.node_ids)

    def test_election(self):
        assignment = random_cluster_elect(self.alive, 5, np.random.Generator(np.random.PCG64(1)), self.topology, round_start=1)
        self.assertEqual(len(assignment.heads), 5)
        self.assertEqual(len(assignment.member_of), 100)
        self.assertEqual(assignment.round_start, 1)

        heads = sorted(assignment.heads)
        for node_id in self.alive:
            head = assignment.head_of(node_id)
            self.assertIn(head, assignment.heads)
            if node_id in assignment.heads:
                self.assertEqual(head, node_id)
            else:
                nearest = min(heads, key=lambda candidate: self.topology.distance_matrix[node_id, candidate])
                self.assertEqual(head, nearest)

    def test_everyone_head(self):
        assignment = random_cluster_elect(self.alive[:10], 10, np.random.Generator(np.random.PCG64(1)), self.topology)
        self.assertEqual(sorted(assignment.heads), self.alive[:10])

    def test_clamped(self):
        assignment = random_cluster_elect([3, 4], 5, np.random.Generator(np.random.PCG64(1)), self.topology)
        self.assertEqual(sorted(assignment.heads), [3, 4])

    def test_deterministic(self):
        first = random_cluster_elect(self.alive, 5, np.random.Generator(np.random.PCG64(9)), self.topology)
        second = random_cluster_elect(self.alive, 5, np.random.Generator(np.random.PCG64(9)), self.topology)
        self.assertEqual(first.heads, second.heads)
        self.assertEqual(first.member_of, second.member_of)

    def test_uniform(self):
        rng = np.random.Generator(np.random.PCG64(5))
        alive = list(range(10))
        counts = dict((node_id, 0) for node_id in alive)
        for draw in range(10000):
            head, = random_cluster_elect(alive, 1, rng, self.topology).heads
            counts[head] += 1

        for node_id in alive:
            self.assertAlmostEqual(counts[node_id] / 10000.0, 0.1, delta=0.01)


class ClustroidTestCase(SimpleTestCase):
    def setUp(self):
        self.topology = Topology([(0, 0), (3, 4), (10, 10), (10, 10), (20, 20)], width=100, height=100)

    def test_singleton(self):
        self.assertEqual(clustroid_cost(0, [0], self.topology, [1.0] * 5), 0)

    def test_pair(self):
        self.assertAlmostEqual(clustroid_cost(0, [0, 1], self.topology, [1.0] * 5), 25)
        self.assertAlmostEqual(clustroid_cost(0, [0, 1], self.topology, [0.5] * 5), 50)

    def test_dead_candidate(self):
        self.assertEqual(clustroid_cost(0, [0, 1], self.topology, [0.0] * 5), float('inf'))

    def test_election(self):
        self.assertEqual(elect_clustroid([0, 1], self.topology, [1.0, 0.5, 1.0, 1.0, 1.0]), 0)

    def test_power_breaks_distance_tie(self):
        fractions = [1.0, 1.0, 0.4, 0.9, 1.0]
        self.assertEqual(elect_clustroid([2, 3, 4], self.topology, fractions), 3)

    def test_same_position_pair(self):
        topology = Topology([(10, 10), (10, 10)], width=100, height=100)
        self.assertEqual(elect_clustroid([0, 1], topology, [0.4, 0.9]), 1)
        self.assertEqual(elect_clustroid([0, 1], topology, [0.9, 0.4]), 0)
        self.assertEqual(elect_clustroid([0, 1], topology, [0.7, 0.7]), 0)


class KMeansTestCase(SimpleTestCase):
    def test_two_groups(self):
        points = np.array([[0, 0], [1, 0], [0, 1], [50, 50], [51, 50], [50, 51]], dtype=float)
        labels = kmeans(points, 2, np.random.Generator(np.random.PCG64(3)))
        self.assertEqual(len(set(labels[:3])), 1)
        self.assertEqual(len(set(labels[3:])), 1)
        self.assertNotEqual(labels[0], labels[3])

    def test_no_empty_cluster(self):
        points = np.array([[0, 0], [0, 0], [0, 0], [1, 1]], dtype=float)
        labels = kmeans(points, 3, np.random.Generator(np.random.PCG64(0)))
        self.assertEqual(sorted(set(labels)), [0, 1, 2])


class IdealClusterTestCase(SimpleTestCase):
    def test_single_cluster(self):
        topology = Topology([(0, 0), (10, 0), (0, 10), (10, 10)], width=100, height=100)
        fractions = [0.3, 1.0, 0.8, 0.6]
        assignment = ideal_cluster_assign(range(4), topology, fractions, 1, np.random.Generator(np.random.PCG64(1)))

        costs = [brute_force_clustroid_cost(candidate, range(4), topology.positions, fractions) for candidate in range(4)]
        self.assertEqual(sorted(assignment.heads), [costs.index(min(costs))])

    def test_clamped(self):
        topology = Topology([(0, 0), (10, 0)], width=100, height=100)
        assignment = ideal_cluster_assign([0, 1], topology, [1.0, 1.0], 5, np.random.Generator(np.random.PCG64(1)))
        self.assertEqual(sorted(assignment.heads), [0, 1])

    def test_clustroid_oracle(self):
        rng = np.random.Generator(np.random.PCG64(77))
        for case in range(200):
            size = int(rng.integers(1, 7))
            positions = [tuple(point) for point in rng.random((size, 2)) * 100]
            topology = Topology(positions, width=100, height=100)
            fractions = list(rng.uniform(0.05, 1.0, size))
            k = int(rng.integers(1, size + 1))

            assignment = ideal_cluster_assign(range(size), topology, fractions, k, rng)
            self.assertEqual(sorted(assignment.member_of), list(range(size)))
            for head, members in assignment.clusters().items():
                self.assertEqual(assignment.head_of(head), head)
                costs = dict((candidate, brute_force_clustroid_cost(candidate, members, positions, fractions)) for candidate in members)
                self.assertAlmostEqual(costs[head], min(costs.values()), delta=1e-9)


class StrategyClassTestCase(SimpleTestCase):
    def test_all_registered(self):
        self.assertEqual(sorted(STRATEGY_CLASS_MAP), sorted(STRATEGY_NAMES))
        for name in STRATEGY_NAMES:
            self.assertEqual(get_strategy_class(name).name, name)

    def test_unknown(self):
        with self.assertRaises(UnknownStrategy):
            get_strategy_class('flooding')

    def test_ideal_flags(self):
        for name in STRATEGY_NAMES:
            self.assertEqual(get_strategy_class(name).global_knowledge, name.startswith('ideal'))

    def test_knob_not_applicable(self):
        with self.assertRaises(InvalidKnob):
            E3DStrategy(round_length=5)

    def test_knob_values(self):
        self.assertEqual(BasicDiffusionStrategy(max_neighbors=3).options['max_neighbors'], 3)
        with self.assertRaises(InvalidKnob):
            BasicDiffusionStrategy(max_neighbors=-1)
        with self.assertRaises(InvalidKnob):
            E3DStrategy(low_power_threshold=0.6, power_compare_threshold=0.5)
        with self.assertRaises(InvalidKnob):
            get_strategy_class('random-cluster')(clusters=0)
