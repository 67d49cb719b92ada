import logging

from topology.classes import build_neighbor_table

from .clustering import ideal_cluster_assign, random_cluster_elect
from .diffusion import (
    E3DNodeState, diffusion_select, direct_next_hop, e3d_handle_exception,
    e3d_next_hop, e3d_receive_check)
from .exceptions import InvalidKnob, UnknownStrategy
from .literals import (
    BASE, CONTROL_ACK, CONTROL_ADVERTISEMENT, CONTROL_EXCEPTION, CONTROL_JOIN,
    KNOB_CLUSTERS, KNOB_LOW_POWER_THRESHOLD, KNOB_MAX_NEIGHBORS,
    KNOB_MAX_RANGE, KNOB_POWER_COMPARE_THRESHOLD, KNOB_QUEUE_LIMIT,
    KNOB_ROUND_LENGTH, SETUP_BASE_BROADCAST, SETUP_NEIGHBOR_PAIRS, SETUP_NONE,
    STRATEGY_DIFFUSION, STRATEGY_DIRECT, STRATEGY_E3D,
    STRATEGY_IDEAL_CLUSTER, STRATEGY_IDEAL_DIFFUSION, STRATEGY_RANDOM_CLUSTER)
from .planning import ideal_diffusion_plan, ideal_parent
from .settings import (
    CLUSTERS, KMEANS_MAX_SWEEPS, LOW_POWER_THRESHOLD, MAX_NEIGHBORS, MAX_RANGE,
    POWER_COMPARE_THRESHOLD, QUEUE_LIMIT, ROUND_LENGTH)

logger = logging.getLogger(__name__)


class Strategy(object):
    """
    Routing strategy driven by the simulation engine.

    Hooks, in the order the engine calls them: ``prepare`` once before the
    setup phase, ``plan_iteration`` at the start of every iteration,
    ``processing_order`` to sequence the senders, ``next_hop`` for every
    transmission, ``on_received`` after a peer accepted a packet and
    ``on_delivery_failure`` when the chosen peer turned out to be dead.
    """
    name = None
    label = None
    global_knowledge = False
    setup_scheme = SETUP_NONE
    knobs = {}

    def __init__(self, **options):
        for option in options:
            if option not in self.knobs:
                raise InvalidKnob('Option "%s" does not apply to the %s strategy' % (option, self.name))

        for knob, default in self.knobs.items():
            setattr(self, knob, options.get(knob, default))

        self.validate()

    @property
    def options(self):
        return dict((knob, getattr(self, knob)) for knob in self.knobs)

    def validate(self):
        pass

    def prepare(self, simulation):
        pass

    def setup_pairs(self, simulation):
        return []

    def plan_iteration(self, simulation):
        pass

    def processing_order(self, simulation):
        distances = simulation.base_distances
        return sorted(simulation.alive_nodes(), key=lambda node_id: (-distances[node_id], node_id))

    def next_hop(self, simulation, node_id, packet):
        raise NotImplementedError

    def on_received(self, simulation, sender, receiver, packet):
        pass

    def on_delivery_failure(self, simulation, sender, receiver):
        pass

    def __repr__(self):
        return '<%s: %s>' % (self.__class__.__name__, self.name)


class DirectStrategy(Strategy):
    name = STRATEGY_DIRECT
    label = 'Direct communication'
    setup_scheme = SETUP_BASE_BROADCAST

    def next_hop(self, simulation, node_id, packet):
        return direct_next_hop(node_id)


class NeighborTableMixin(object):
    def validate(self):
        if self.max_neighbors < 0:
            raise InvalidKnob('max_neighbors cannot be negative; got %s' % self.max_neighbors)
        if self.max_range is not None and self.max_range <= 0:
            raise InvalidKnob('max_range must be positive; got %s' % self.max_range)

    def build_tables(self, simulation):
        return [
            build_neighbor_table(node_id, simulation.topology, self.max_neighbors, self.max_range)
            for node_id in simulation.topology.node_ids
        ]

    def setup_pairs(self, simulation):
        return [(node_id, entry.neighbor_id) for node_id, table in enumerate(self.tables) for entry in table]


class BasicDiffusionStrategy(NeighborTableMixin, Strategy):
    name = STRATEGY_DIFFUSION
    label = 'Basic diffusion'
    setup_scheme = SETUP_NEIGHBOR_PAIRS
    knobs = {KNOB_MAX_NEIGHBORS: MAX_NEIGHBORS, KNOB_MAX_RANGE: MAX_RANGE}

    def prepare(self, simulation):
        self.tables = self.build_tables(simulation)
        # Peers each sender found dead through a failed delivery
        self.known_dead = [set() for table in self.tables]

    def next_hop(self, simulation, node_id, packet):
        known_dead = self.known_dead[node_id]
        return diffusion_select(node_id, self.tables[node_id], lambda neighbor_id: neighbor_id not in known_dead)

    def on_delivery_failure(self, simulation, sender, receiver):
        logger.debug('node %d lost neighbor %d' % (sender, receiver))
        self.known_dead[sender].add(receiver)


class E3DStrategy(NeighborTableMixin, Strategy):
    name = STRATEGY_E3D
    label = 'e3D diffusion'
    setup_scheme = SETUP_NEIGHBOR_PAIRS
    knobs = {
        KNOB_MAX_NEIGHBORS: MAX_NEIGHBORS, KNOB_MAX_RANGE: MAX_RANGE,
        KNOB_LOW_POWER_THRESHOLD: LOW_POWER_THRESHOLD,
        KNOB_POWER_COMPARE_THRESHOLD: POWER_COMPARE_THRESHOLD,
        KNOB_QUEUE_LIMIT: QUEUE_LIMIT,
    }

    def validate(self):
        super(E3DStrategy, self).validate()
        if not 0 < self.low_power_threshold < self.power_compare_threshold <= 1:
            raise InvalidKnob(
                'Thresholds must satisfy 0 < low_power_threshold (%s) < power_compare_threshold (%s) <= 1' % (self.low_power_threshold, self.power_compare_threshold)
            )
        if self.queue_limit < 0:
            raise InvalidKnob('queue_limit cannot be negative; got %s' % self.queue_limit)

    def prepare(self, simulation):
        self.tables = self.build_tables(simulation)
        self.states = [
            E3DNodeState(
                node_id, table, low_power_threshold=self.low_power_threshold,
                power_compare_threshold=self.power_compare_threshold,
                queue_limit=self.queue_limit
            ) for node_id, table in enumerate(self.tables)
        ]

    def next_hop(self, simulation, node_id, packet):
        return e3d_next_hop(self.states[node_id])

    def on_received(self, simulation, sender, receiver, packet):
        sender_state = self.states[sender]

        if sender_state.ack_pending:
            # First packet to a new neighbor is confirmed by the receiver
            sender_state.ack_pending = False
            simulation.send_control(receiver, sender, CONTROL_ACK)
            if not simulation.is_alive(receiver):
                return

        message = e3d_receive_check(
            simulation.power_fraction(receiver), packet.sender_power,
            simulation.queue_depth(receiver), self.states[receiver], sender_id=sender
        )
        if message:
            simulation.record_exception(message, simulation.power_fraction(receiver), packet.sender_power, simulation.queue_depth(receiver))
            if simulation.send_control(receiver, sender, CONTROL_EXCEPTION, detail=message.reason):
                before = sender_state.current_neighbor
                e3d_handle_exception(sender_state, message)
                if sender_state.current_neighbor != before:
                    simulation.record_blacklist(sender, receiver, sender_state.current_neighbor)

    def on_delivery_failure(self, simulation, sender, receiver):
        # ACK timeout, or the engine noticing the peer is gone
        state = self.states[sender]
        state.blacklist_neighbor(receiver)
        simulation.record_blacklist(sender, receiver, state.current_neighbor)


class IdealDiffusionStrategy(Strategy):
    name = STRATEGY_IDEAL_DIFFUSION
    label = 'Ideal diffusion'
    global_knowledge = True

    def build_tree(self, simulation):
        return ideal_diffusion_plan(simulation.alive_nodes(), simulation.topology, simulation.power_fractions())

    def plan_iteration(self, simulation):
        self.tree = self.build_tree(simulation)
        if simulation.trace is not None:
            # Traced runs double as invariant checks
            self.tree.validate(simulation.topology)

    def next_hop(self, simulation, node_id, packet):
        parent = self.tree[node_id]
        if parent != BASE and not simulation.is_alive(parent):
            # Global knowledge: a parent that died this iteration is replaced
            # without a wasted transmission
            parent = ideal_parent(node_id, simulation.alive_nodes(), simulation.topology, simulation.power_fractions())
            self.tree.parent[node_id] = parent
        return parent


class ClusteringStrategy(Strategy):
    def processing_order(self, simulation):
        # Members first so every head forwards its members' packets in the
        # same iteration
        distances = simulation.base_distances
        assignment = self.assignment
        return sorted(
            simulation.alive_nodes(),
            key=lambda node_id: (assignment.is_head(node_id), -distances[node_id], node_id)
        )

    def validate(self):
        if self.clusters < 1:
            raise InvalidKnob('clusters must be at least 1; got %s' % self.clusters)


class RandomClusteringStrategy(ClusteringStrategy):
    name = STRATEGY_RANDOM_CLUSTER
    label = 'Random clustering'
    knobs = {KNOB_CLUSTERS: CLUSTERS, KNOB_ROUND_LENGTH: ROUND_LENGTH}

    def validate(self):
        super(RandomClusteringStrategy, self).validate()
        if self.round_length < 1:
            raise InvalidKnob('round_length must be at least 1; got %s' % self.round_length)

    def prepare(self, simulation):
        self.assignment = None
        self.unreachable_heads = set()

    def plan_iteration(self, simulation):
        if (simulation.iteration - 1) % self.round_length:
            return

        self.assignment = random_cluster_elect(
            simulation.alive_nodes(), self.clusters, simulation.rng,
            simulation.topology, round_start=simulation.iteration
        )
        self.unreachable_heads = set()
        simulation.record_election(self.assignment)

        for head, members in self.assignment.clusters().items():
            members = [member for member in members if member != head]
            radius = max([simulation.distance(head, member) for member in members] or [0.0])
            simulation.broadcast_control(head, radius, members, CONTROL_ADVERTISEMENT)

        for member, head in sorted(self.assignment.member_of.items()):
            if member != head and simulation.is_alive(member):
                simulation.send_control(member, head, CONTROL_JOIN)

    def next_hop(self, simulation, node_id, packet):
        head = self.assignment.head_of(node_id)
        if head is None or head == node_id or head in self.unreachable_heads:
            return BASE
        return head

    def on_delivery_failure(self, simulation, sender, receiver):
        logger.debug('node %d lost cluster head %d; sending direct until the next election' % (sender, receiver))
        self.unreachable_heads.add(receiver)


class IdealClusteringStrategy(ClusteringStrategy):
    name = STRATEGY_IDEAL_CLUSTER
    label = 'Ideal clustering'
    global_knowledge = True
    knobs = {KNOB_CLUSTERS: CLUSTERS}

    def plan_iteration(self, simulation):
        self.assignment = ideal_cluster_assign(
            simulation.alive_nodes(), simulation.topology,
            simulation.power_fractions(), self.clusters, simulation.rng,
            max_sweeps=KMEANS_MAX_SWEEPS, round_start=simulation.iteration
        )
        simulation.record_election(self.assignment)

    def next_hop(self, simulation, node_id, packet):
        head = self.assignment.head_of(node_id)
        if head is None or head == node_id or not simulation.is_alive(head):
            return BASE
        return head


STRATEGY_CLASS_MAP = dict(
    (strategy_class.name, strategy_class) for strategy_class in (
        DirectStrategy, BasicDiffusionStrategy, E3DStrategy,
        IdealDiffusionStrategy, RandomClusteringStrategy,
        IdealClusteringStrategy,
    )
)


def get_strategy_class(name):
    try:
        return STRATEGY_CLASS_MAP[name]
    except KeyError:
        raise UnknownStrategy('Unknown strategy: %s; choose one of: %s' % (name, ', '.join(sorted(STRATEGY_CLASS_MAP))))
