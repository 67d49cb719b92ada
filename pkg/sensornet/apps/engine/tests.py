import math
import os
import shutil
import tempfile

from django.test import SimpleTestCase

from energy.classes import Battery, EnergyParams
from strategies.classes import E3DStrategy, IdealDiffusionStrategy
from strategies.exceptions import RoutingTreeError, UnknownStrategy
from strategies.literals import (
    BASE, CONTROL_SETUP, EXCEPTION_POWER_IMBALANCE, EXCEPTION_QUEUE_FULL,
    STRATEGY_NAMES)
from strategies.planning import RoutingTree
from topology.classes import Topology, generate_topology

from .classes import SimConfig, Simulation, run_simulation
from .exceptions import InvalidConfiguration, InvariantViolation
from .literals import (
    EVENT_CONTROL_RX, EVENT_CONTROL_TX, EVENT_ELECTION, EVENT_EXCEPTION,
    EVENT_TX)
from .utils import read_trace, write_trace
from .verification import check_exception_soundness, verify_result


def events(result, kind):
    return [event for event in result.trace if event.kind == kind]


class SimConfigTestCase(SimpleTestCase):
    def test_unknown_strategy(self):
        with self.assertRaises(UnknownStrategy):
            SimConfig('flooding')

    def test_knob_not_applicable(self):
        with self.assertRaises(InvalidConfiguration):
            SimConfig('e3d', knobs={'round_length': 5})

    def test_bad_knob_value(self):
        with self.assertRaises(InvalidConfiguration):
            SimConfig('random-cluster', knobs={'clusters': 0})

    def test_negative_iterations(self):
        with self.assertRaises(InvalidConfiguration):
            SimConfig('direct', max_iterations=-1)

    def test_zero_iterations_clamped(self):
        config = SimConfig('direct', node_count=5, max_iterations=0)
        self.assertEqual(config.max_iterations, 1)
        self.assertEqual(run_simulation(config).iterations, 1)

    def test_bad_seed(self):
        with self.assertRaises(InvalidConfiguration):
            SimConfig('direct', seed='one')
        with self.assertRaises(InvalidConfiguration):
            SimConfig('direct', seed=-3)

    def test_generated_topology(self):
        config = SimConfig('direct', node_count=10, width=50, height=20, seed=4)
        self.assertEqual(config.get_topology(), generate_topology(10, 50, 20, seed=4))


class SetupCostTestCase(SimpleTestCase):
    def test_direct_base_broadcast(self):
        simulation = Simulation(generate_topology(100, 100, 100, seed=1), SimConfig('direct').build_strategy(), trace=True)
        simulation.strategy.prepare(simulation)
        simulation.charge_setup_costs()

        self.assertEqual(len([event for event in simulation.trace if event.kind == EVENT_CONTROL_RX]), 100)
        self.assertEqual(len([event for event in simulation.trace if event.kind == EVENT_CONTROL_TX]), 0)

    def test_ideal_free(self):
        for name in ('ideal-diffusion', 'ideal-cluster'):
            simulation = Simulation(generate_topology(20, 100, 100, seed=1), SimConfig(name).build_strategy())
            simulation.strategy.prepare(simulation)
            simulation.charge_setup_costs()
            self.assertEqual(simulation.sync_messages, 0)
            self.assertEqual(sum(simulation.charged), 0)

    def test_e3d_pairs(self):
        positions = [(90, 90)] + [(10 + 5 * index, 10) for index in range(8)]
        simulation = Simulation(Topology(positions, width=100, height=100), E3DStrategy(max_neighbors=8), trace=True)
        simulation.strategy.prepare(simulation)
        simulation.charge_setup_costs()

        messages = [
            event for event in simulation.trace
            if event.kind == EVENT_CONTROL_TX and 0 in event.nodes and event.detail['message'] == CONTROL_SETUP
        ]
        self.assertEqual(len(messages), 16)


class IterationTestCase(SimpleTestCase):
    def test_single_node_direct(self):
        topology = Topology([(10, 0)], base=(0, 0), width=100, height=100)
        result = run_simulation(SimConfig('direct', topology=topology, max_iterations=1))

        self.assertEqual(result.delivered, 1)
        self.assertAlmostEqual(result.remaining[0], 0.5 - 5e-6 - 1.2e-4, delta=1e-12)

    def test_relay_load(self):
        topology = Topology([(20, 0), (10, 0)], base=(0, 0), width=100, height=100)
        result = run_simulation(SimConfig('diffusion', topology=topology, max_iterations=1))

        self.assertEqual(result.delivered, 2)
        self.assertAlmostEqual(result.charged[1] - result.charged_control[1], 1e-4 + 2 * 1.2e-4, delta=1e-12)
        self.assertAlmostEqual(result.charged[0] - result.charged_control[0], 1.2e-4, delta=1e-12)
        self.assertEqual(result.sync_messages, 2)

    def test_e3d_exception(self):
        topology = Topology([(30, 0), (20, 0), (5, 0)], base=(0, 0), width=100, height=100)
        strategy = E3DStrategy()
        simulation = Simulation(topology, strategy, trace=True)
        strategy.prepare(simulation)
        simulation.charge_setup_costs()
        self.assertEqual(strategy.states[0].current_neighbor, 1)

        simulation.batteries[0] = Battery(0.3, 0.5)
        simulation.batteries[1] = Battery(0.2, 0.5)

        report = simulation.run_iteration()
        self.assertEqual(report.exceptions, 1)
        self.assertEqual(report.delivered, 3)
        exception, = [event for event in simulation.trace if event.kind == EVENT_EXCEPTION]
        self.assertEqual(exception.nodes, (1, 0))
        self.assertEqual(exception.detail['reason'], EXCEPTION_POWER_IMBALANCE)
        self.assertEqual(strategy.states[0].current_neighbor, 2)

        simulation.run_iteration()
        sent = [event.nodes[1] for event in simulation.trace if event.kind == EVENT_TX and event.iteration == 2 and event.nodes[0] == 0]
        self.assertEqual(sent, [2])
        self.assertFalse(strategy.states[0].ack_pending)

    def relay_exceptions(self, senders):
        # Senders on an arc around the base station; node 0 is everyone's
        # only neighbor
        positions = [(10, 0)] + [
            (20 * math.cos(math.radians(3 * index)), 20 * math.sin(math.radians(3 * index)))
            for index in range(senders)
        ]
        strategy = E3DStrategy(max_neighbors=1)
        simulation = Simulation(Topology(positions, base=(0, 0), width=100, height=100), strategy, trace=True)
        strategy.prepare(simulation)
        simulation.charge_setup_costs()
        simulation.run_iteration()
        return [event for event in simulation.trace if event.kind == EVENT_EXCEPTION]

    def test_queue_limit_counts_relayed_packets(self):
        self.assertEqual(self.relay_exceptions(10), [])

        exception, = self.relay_exceptions(11)
        self.assertEqual(exception.nodes[0], 0)
        self.assertEqual(exception.detail['reason'], EXCEPTION_QUEUE_FULL)
        self.assertEqual(exception.detail['queue_depth'], 11)

    def test_dead_network(self):
        topology = Topology([(10, 0)], base=(0, 0), width=100, height=100)
        simulation = Simulation(topology, SimConfig('direct').build_strategy(), params=EnergyParams(initial_battery=1e-4))
        simulation.run()
        self.assertEqual(simulation.alive_count, 0)

        report = simulation.run_iteration()
        self.assertEqual(report.generated, 0)
        self.assertEqual(report.iteration, simulation.iteration)


class RunSimulationTestCase(SimpleTestCase):
    def test_far_node_dies_first(self):
        topology = Topology([(10, 0), (100, 0)], base=(0, 0), width=100, height=100)
        result = run_simulation(SimConfig('direct', topology=topology))

        self.assertTrue(result.all_dead)
        self.assertTrue(result.death_iteration[1] < result.death_iteration[0])
        self.assertEqual(result.alive_curve, [(0, 2), (result.death_iteration[1], 1), (result.death_iteration[0], 0)])

    def test_deterministic(self):
        config = dict(node_count=30, seed=12, energy=EnergyParams(initial_battery=0.02), trace=True)
        for name in STRATEGY_NAMES:
            first = run_simulation(SimConfig(name, **config))
            second = run_simulation(SimConfig(name, **config))
            self.assertEqual(first.death_iteration, second.death_iteration)
            self.assertEqual(first.alive_curve, second.alive_curve)
            self.assertEqual(first.trace, second.trace)

    def test_invariants(self):
        for name in STRATEGY_NAMES:
            result = run_simulation(SimConfig(name, node_count=40, seed=3, energy=EnergyParams(initial_battery=0.02), trace=True))
            self.assertTrue(result.all_dead)
            self.assertEqual(result.generated, result.delivered + result.dropped)
            self.assertTrue(abs(result.ledger_imbalance()) <= 1e-9)
            verify_result(result)

    def test_ideal_strategies_skip_synchronization(self):
        for name in ('ideal-diffusion', 'ideal-cluster'):
            result = run_simulation(SimConfig(name, node_count=20, seed=3, energy=EnergyParams(initial_battery=0.01)))
            self.assertEqual(result.sync_messages, 0)
            self.assertEqual(result.sync_energy, 0)

    def test_random_cluster_rounds(self):
        result = run_simulation(SimConfig('random-cluster', node_count=20, seed=3, knobs={'round_length': 5}, max_iterations=12, trace=True))
        elections = [event.iteration for event in events(result, EVENT_ELECTION)]
        self.assertEqual(elections, [1, 6, 11])

    def test_death_during_setup(self):
        result = run_simulation(SimConfig('e3d', node_count=15, seed=2, energy=EnergyParams(initial_battery=2e-5), trace=True))
        self.assertIn(0, result.death_iteration)
        verify_result(result)

    def test_iteration_cap(self):
        result = run_simulation(SimConfig('direct', node_count=10, seed=1, max_iterations=5))
        self.assertEqual(result.iterations, 5)
        self.assertFalse(result.all_dead)

    def test_traced_routing_tree_checked(self):
        class CyclicTreeStrategy(IdealDiffusionStrategy):
            def build_tree(self, simulation):
                return RoutingTree({0: 1, 1: 0})

        topology = Topology([(50, 0), (25, 0)], base=(0, 0), width=100, height=100)

        untraced = Simulation(topology, CyclicTreeStrategy())
        untraced.strategy.plan_iteration(untraced)

        with self.assertRaises(RoutingTreeError):
            Simulation(topology, CyclicTreeStrategy(), trace=True).run()


class VerificationTestCase(SimpleTestCase):
    def setUp(self):
        self.result = run_simulation(SimConfig('e3d', node_count=25, seed=8, energy=EnergyParams(initial_battery=0.02), trace=True))

    def test_clean(self):
        verify_result(self.result)
        self.assertEqual(check_exception_soundness(self.result), [])

    def test_ledger_tampering(self):
        self.result.remaining[0] += 1e-6
        with self.assertRaises(InvariantViolation):
            verify_result(self.result)

    def test_false_exception(self):
        event = self.result.trace[-1]
        self.result.trace.append(event._replace(kind=EVENT_EXCEPTION, nodes=(1, 0), detail={
            'reason': EXCEPTION_POWER_IMBALANCE, 'receiver_power': 0.9,
            'sender_power': 0.95, 'queue_depth': 1,
        }))
        self.assertEqual(len(check_exception_soundness(self.result)), 1)
        with self.assertRaises(InvariantViolation):
            verify_result(self.result)

    def test_loop(self):
        event = self.result.trace[-1]
        self.result.trace.append(event._replace(kind='deliver', nodes=(4, 2, 4, BASE), detail={}))
        with self.assertRaises(InvariantViolation):
            verify_result(self.result)


class TraceFileTestCase(SimpleTestCase):
    def setUp(self):
        self.directory = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.directory)

    def test_replay_from_file(self):
        result = run_simulation(SimConfig('e3d', node_count=15, seed=5, energy=EnergyParams(initial_battery=0.01), trace=True))
        path = os.path.join(self.directory, 'trace.csv')
        write_trace(result.trace, path)

        result.trace = read_trace(path)
        self.assertEqual(result.trace, run_simulation(SimConfig('e3d', node_count=15, seed=5, energy=EnergyParams(initial_battery=0.01), trace=True)).trace)
        verify_result(result)
