from collections import deque, namedtuple
import logging

import numpy as np

from energy.classes import Battery, EnergyParams, drain, rx_cost, tx_cost
from energy.exceptions import EnergyError
from energy.literals import CHARGE_CONTROL, CHARGE_DATA, DRAIN_OK
from strategies.classes import get_strategy_class
from strategies.exceptions import InvalidKnob
from strategies.literals import (
    BASE, CONTROL_BASE_BROADCAST, CONTROL_SETUP, SETUP_BASE_BROADCAST,
    SETUP_NEIGHBOR_PAIRS)
from topology.classes import generate_topology
from topology.exceptions import TopologyError
from topology.settings import AREA_HEIGHT, AREA_WIDTH, BASE_X, BASE_Y, NODE_COUNT

from .exceptions import InvalidConfiguration, InvariantViolation
from .literals import (
    EVENT_BLACKLIST, EVENT_CONTROL_RX, EVENT_CONTROL_TX, EVENT_DEATH,
    EVENT_DELIVER, EVENT_DROP, EVENT_ELECTION, EVENT_EXCEPTION,
    EVENT_FAILURE, EVENT_GENERATE, EVENT_RX, EVENT_SETUP, EVENT_TX,
    LEDGER_TOLERANCE)
from .settings import MAX_ITERATIONS

logger = logging.getLogger(__name__)


class TraceEvent(namedtuple('TraceEvent', 'iteration kind nodes joules detail')):
    __slots__ = ()


class IterationReport(namedtuple('IterationReport', 'iteration generated delivered dropped deaths exceptions failures sync_messages')):
    __slots__ = ()


class Packet(object):
    __slots__ = ('origin', 'born_at', 'bits', 'path', 'sender_power')

    def __init__(self, origin, born_at, bits):
        self.origin = origin
        self.born_at = born_at
        self.bits = bits
        self.path = [origin]
        # Power fraction of the last transmitting node, carried at no extra
        # bit cost
        self.sender_power = None

    @property
    def hops(self):
        return len(self.path) - 1

    def __repr__(self):
        return '<Packet: from %d born at %d, path %s>' % (self.origin, self.born_at, self.path)


class SimConfig(object):
    """
    Everything a simulation run depends on. Either pass a ``topology`` or
    the parameters ``generate_topology`` needs; the placement seed defaults
    to the run ``seed``.
    """
    def __init__(self, strategy, topology=None, node_count=NODE_COUNT, width=AREA_WIDTH, height=AREA_HEIGHT, base=(BASE_X, BASE_Y), topology_seed=None, energy=None, knobs=None, max_iterations=MAX_ITERATIONS, seed=0, trace=False):
        self.strategy = strategy
        self.topology = topology
        self.node_count = node_count
        self.width = width
        self.height = height
        self.base = base
        self.topology_seed = topology_seed
        self.energy = energy or EnergyParams()
        self.knobs = dict(knobs or {})
        self.max_iterations = max_iterations
        self.seed = seed
        self.trace = trace

        self.validate()

    def validate(self):
        # UnknownStrategy propagates as is
        self.strategy_class = get_strategy_class(self.strategy)

        try:
            self.build_strategy()
        except InvalidKnob as exception:
            raise InvalidConfiguration(str(exception))

        if not isinstance(self.seed, (int, np.integer)) or isinstance(self.seed, bool):
            raise InvalidConfiguration('Seed must be an integer; got %r' % (self.seed,))
        if self.seed < 0:
            raise InvalidConfiguration('Seed cannot be negative; got %s' % self.seed)

        if self.max_iterations < 0:
            raise InvalidConfiguration('Maximum iterations cannot be negative; got %s' % self.max_iterations)
        if self.max_iterations < 1:
            logger.warning('clamping maximum iterations from %s to 1' % self.max_iterations)
            self.max_iterations = 1

        if self.topology is None:
            if self.node_count < 1:
                raise InvalidConfiguration('At least one node is needed; got %s' % self.node_count)
            if self.width <= 0 or self.height <= 0:
                raise InvalidConfiguration('Area dimensions must be positive; got %sx%s' % (self.width, self.height))

    def build_strategy(self):
        return self.strategy_class(**self.knobs)

    def get_topology(self):
        if self.topology is None:
            seed = self.seed if self.topology_seed is None else self.topology_seed
            try:
                self.topology = generate_topology(self.node_count, self.width, self.height, base=self.base, seed=seed)
            except TopologyError as exception:
                raise InvalidConfiguration(str(exception))
        return self.topology

    def __repr__(self):
        return '<SimConfig: %s, seed %s>' % (self.strategy, self.seed)


class SimulationResult(object):
    def __init__(self, **kwargs):
        for key, value in kwargs.items():
            setattr(self, key, value)

    @property
    def size(self):
        return self.topology.size

    @property
    def all_dead(self):
        return all(iteration is not None for iteration in self.death_iteration)

    @property
    def deaths(self):
        return sorted(iteration for iteration in self.death_iteration if iteration is not None)

    def ledger_imbalance(self):
        """Initial energy not accounted for by what remains, was spent or was stranded"""
        total = self.params.initial_battery * self.size
        return total - (sum(self.remaining) + sum(self.charged) + sum(self.stranded))

    def __repr__(self):
        return '<SimulationResult: %s, seed %s, %d iterations>' % (self.strategy, self.seed, self.iterations)


class Simulation(object):
    """
    Round based simulation of one strategy over one topology. Every alive
    node originates one packet per iteration; nodes are processed in the
    order the strategy gives, forwarding their own packet plus everything
    they received earlier in the same iteration.
    """
    def __init__(self, topology, strategy, params=None, seed=0, max_iterations=MAX_ITERATIONS, trace=False):
        self.topology = topology
        self.strategy = strategy
        self.params = params or EnergyParams()
        self.seed = seed
        self.max_iterations = max_iterations
        self.rng = np.random.Generator(np.random.PCG64(seed))

        size = topology.size
        self.batteries = [Battery.full(self.params)] * size
        self.alive = [True] * size
        self.alive_count = size
        self.death_iteration = [None] * size
        self.charged = [0.0] * size
        self.charged_control = [0.0] * size
        self.stranded = [0.0] * size

        # Plain lists are faster than numpy scalars on the per packet path
        self.distances = topology.distance_matrix.tolist()
        self.base_distances = topology.base_distances.tolist()

        self.iteration = 0
        self.queues = {}
        self.processed = set()
        self.alive_curve = [(0, size)]
        self.trace = [] if trace else None

        self.generated = 0
        self.delivered = 0
        self.dropped = 0
        self.sync_messages = 0
        self.exceptions = 0
        self.failures = 0
        self.deaths = 0

    # Queries strategies rely on

    def is_alive(self, node_id):
        return node_id == BASE or self.alive[node_id]

    def alive_nodes(self):
        return [node_id for node_id, alive in enumerate(self.alive) if alive]

    def power_fraction(self, node_id):
        return self.batteries[node_id].power_fraction

    def power_fractions(self):
        return [battery.power_fraction for battery in self.batteries]

    def distance(self, node_id, other):
        if other == BASE:
            return self.base_distances[node_id]
        if node_id == BASE:
            return self.base_distances[other]
        return self.distances[node_id][other]

    def queue_depth(self, node_id):
        """Packets queued at ``node_id`` for relay; its own packet is left out"""
        return len([packet for packet in self.queues.get(node_id, ()) if packet.origin != node_id])

    # Trace

    def record(self, kind, nodes, joules=0.0, **detail):
        if self.trace is not None:
            self.trace.append(TraceEvent(self.iteration, kind, tuple(nodes), joules, detail))

    def record_exception(self, message, receiver_power, sender_power, queue_depth):
        self.exceptions += 1
        self.record(
            EVENT_EXCEPTION, (message.from_node, message.to_node), reason=message.reason,
            receiver_power=receiver_power, sender_power=sender_power, queue_depth=queue_depth
        )

    def record_blacklist(self, node_id, neighbor_id, current):
        self.record(EVENT_BLACKLIST, (node_id, neighbor_id), current=current)

    def record_election(self, assignment):
        self.record(EVENT_ELECTION, sorted(assignment.heads))

    # Energy

    def charge(self, node_id, cost, category=CHARGE_DATA):
        """
        Charge ``cost`` joules to a node; returns whether the action went
        through. A node left with nothing is dead once the action completes.
        """
        if not self.alive[node_id]:
            raise InvariantViolation('Iteration %d: dead node %d was charged' % (self.iteration, node_id))

        battery = self.batteries[node_id]
        try:
            self.batteries[node_id], outcome = drain(battery, cost)
        except EnergyError as exception:
            raise InvariantViolation(str(exception))

        if outcome == DRAIN_OK:
            self.charged[node_id] += cost
            if category == CHARGE_CONTROL:
                self.charged_control[node_id] += cost
            if self.batteries[node_id].exhausted:
                self.kill(node_id)
            return True
        else:
            self.kill(node_id, stranded=battery.remaining)
            return False

    def kill(self, node_id, stranded=0.0):
        self.alive[node_id] = False
        self.alive_count -= 1
        self.deaths += 1
        self.death_iteration[node_id] = self.iteration
        self.stranded[node_id] = stranded
        self.record(EVENT_DEATH, (node_id,), stranded)
        logger.debug('iteration %d: node %d died' % (self.iteration, node_id))

        queue = self.queues.pop(node_id, None)
        while queue:
            self.drop(node_id, queue.popleft())

    def drop(self, holder, packet):
        self.dropped += 1
        self.record(EVENT_DROP, packet.path, holder=holder)

    # Control traffic

    def send_control(self, sender, receiver, kind, detail=None):
        """
        One control message; returns whether it reached an alive receiver
        """
        if not self.alive[sender]:
            return False

        self.sync_messages += 1
        cost = tx_cost(self.params.control_bits, self.distance(sender, receiver), self.params)
        if not self.charge(sender, cost, CHARGE_CONTROL):
            return False
        self.record(EVENT_CONTROL_TX, (sender, receiver), cost, message=kind)

        if receiver == BASE:
            return True
        if not self.alive[receiver]:
            return False
        return self.receive_control(receiver, kind)

    def receive_control(self, receiver, kind):
        cost = rx_cost(self.params.control_bits, self.params)
        if not self.charge(receiver, cost, CHARGE_CONTROL):
            return False
        self.record(EVENT_CONTROL_RX, (receiver,), cost, message=kind)
        return True

    def broadcast_control(self, sender, radius, receivers, kind):
        if not self.alive[sender]:
            return

        self.sync_messages += 1
        cost = tx_cost(self.params.control_bits, radius, self.params)
        if not self.charge(sender, cost, CHARGE_CONTROL):
            return
        self.record(EVENT_CONTROL_TX, (sender,), cost, message=kind, radius=radius)

        for receiver in receivers:
            if self.alive[receiver]:
                self.receive_control(receiver, kind)

    def base_broadcast(self, receivers, kind=CONTROL_BASE_BROADCAST):
        self.sync_messages += 1
        for receiver in receivers:
            if self.alive[receiver]:
                self.receive_control(receiver, kind)

    def charge_setup_costs(self):
        scheme = self.strategy.setup_scheme
        self.record(EVENT_SETUP, (), scheme=scheme)

        if scheme == SETUP_BASE_BROADCAST:
            self.base_broadcast(self.topology.node_ids)
        elif scheme == SETUP_NEIGHBOR_PAIRS:
            # Request and reply for every node and table entry
            for node_id, neighbor_id in self.strategy.setup_pairs(self):
                self.send_control(node_id, neighbor_id, CONTROL_SETUP)
                self.send_control(neighbor_id, node_id, CONTROL_SETUP)

        if self.alive_count != self.alive_curve[-1][1]:
            self.alive_curve.append((0, self.alive_count))

        logger.debug('setup sent %d control messages' % self.sync_messages)

    # Data traffic

    def forward(self, sender, packet):
        failed = set()
        bits = packet.bits

        while True:
            destination = self.strategy.next_hop(self, sender, packet)

            if destination != BASE:
                if destination in packet.path:
                    raise InvariantViolation('Iteration %d: node %d sent a packet back to %d; path %s' % (self.iteration, sender, destination, packet.path))
                if destination in self.processed:
                    raise InvariantViolation('Iteration %d: node %d sent a packet to the already processed node %d' % (self.iteration, sender, destination))
                if destination in failed:
                    raise InvariantViolation('Iteration %d: node %d retried the dead node %d' % (self.iteration, sender, destination))

            packet.sender_power = self.power_fraction(sender)
            cost = tx_cost(bits, self.distance(sender, destination), self.params)
            if not self.charge(sender, cost):
                self.drop(sender, packet)
                return
            self.record(EVENT_TX, (sender, destination), cost, origin=packet.origin)

            if destination == BASE:
                self.delivered += 1
                self.record(EVENT_DELIVER, packet.path + [BASE], hops=packet.hops + 1)
                return

            if not self.alive[destination]:
                # The wasted transmission stays charged
                self.failures += 1
                failed.add(destination)
                self.record(EVENT_FAILURE, (sender, destination))
                if not self.alive[sender]:
                    self.drop(sender, packet)
                    return
                self.strategy.on_delivery_failure(self, sender, destination)
                continue

            cost = rx_cost(bits, self.params)
            if not self.charge(destination, cost):
                self.drop(destination, packet)
                return
            self.record(EVENT_RX, (destination,), cost, origin=packet.origin)

            packet.path.append(destination)
            if not self.alive[destination]:
                self.drop(destination, packet)
                return

            self.queues[destination].append(packet)
            self.strategy.on_received(self, sender, destination, packet)
            return

    def run_iteration(self):
        if not self.alive_count:
            return IterationReport(self.iteration, 0, 0, 0, 0, 0, 0, 0)

        before = (self.generated, self.delivered, self.dropped, self.deaths, self.exceptions, self.failures, self.sync_messages)

        self.iteration += 1
        self.queues = {}
        self.processed = set()

        self.strategy.plan_iteration(self)

        for node_id in self.alive_nodes():
            packet = Packet(node_id, self.iteration, self.params.data_bits)
            self.generated += 1
            self.queues[node_id] = deque([packet])
            self.record(EVENT_GENERATE, (node_id,))

        for node_id in self.strategy.processing_order(self):
            if node_id in self.processed:
                raise InvariantViolation('Iteration %d: node %d processed twice' % (self.iteration, node_id))
            self.processed.add(node_id)

            queue = self.queues.get(node_id)
            while queue and self.alive[node_id]:
                self.forward(node_id, queue.popleft())

        held = sum(len(queue) for queue in self.queues.values())
        if held:
            raise InvariantViolation('Iteration %d ended with %d packets still queued' % (self.iteration, held))

        if self.alive_count != self.alive_curve[-1][1]:
            self.alive_curve.append((self.iteration, self.alive_count))

        after = (self.generated, self.delivered, self.dropped, self.deaths, self.exceptions, self.failures, self.sync_messages)
        return IterationReport(self.iteration, *[now - then for now, then in zip(after, before)])

    def run(self):
        logger.info('Simulating %s over %d nodes, seed %s' % (self.strategy.name, self.topology.size, self.seed))

        self.strategy.prepare(self)
        self.charge_setup_costs()

        while self.alive_count and self.iteration < self.max_iterations:
            self.run_iteration()

        if self.alive_count:
            logger.info('%s stopped at %d iterations with %d nodes alive' % (self.strategy.name, self.iteration, self.alive_count))
        else:
            logger.info('%s network died at iteration %d' % (self.strategy.name, self.iteration))

        return self.result()

    def result(self):
        result = SimulationResult(
            topology=self.topology, strategy=self.strategy.name,
            knobs=self.strategy.options, seed=self.seed, params=self.params,
            max_iterations=self.max_iterations, iterations=self.iteration,
            death_iteration=list(self.death_iteration),
            alive_curve=list(self.alive_curve), generated=self.generated,
            delivered=self.delivered, dropped=self.dropped,
            sync_messages=self.sync_messages,
            sync_energy=sum(self.charged_control),
            charged=list(self.charged),
            charged_control=list(self.charged_control),
            remaining=[battery.remaining for battery in self.batteries],
            stranded=list(self.stranded), exceptions=self.exceptions,
            failures=self.failures, trace=self.trace
        )

        imbalance = result.ledger_imbalance()
        if abs(imbalance) > LEDGER_TOLERANCE:
            raise InvariantViolation('Energy ledger is off by %s J' % imbalance)
        if result.generated != result.delivered + result.dropped:
            raise InvariantViolation('%d packets generated but %d delivered and %d dropped' % (result.generated, result.delivered, result.dropped))

        return result


def run_simulation(config):
    simulation = Simulation(
        config.get_topology(), config.build_strategy(), params=config.energy,
        seed=config.seed, max_iterations=config.max_iterations,
        trace=config.trace
    )
    return simulation.run()
