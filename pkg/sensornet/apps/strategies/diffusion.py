from collections import namedtuple
import logging

from .exceptions import StrategyError
from .literals import (
    BASE, EXCEPTION_NEAR_DEATH, EXCEPTION_POWER_IMBALANCE,
    EXCEPTION_QUEUE_FULL, EXCEPTION_REASONS)
from .settings import LOW_POWER_THRESHOLD, POWER_COMPARE_THRESHOLD, QUEUE_LIMIT

logger = logging.getLogger(__name__)


def direct_next_hop(node_id):
    return BASE


def diffusion_select(node_id, table, is_alive=None):
    """
    First entry of the ranked ``table`` that ``is_alive`` accepts, or the
    base station when none is left.
    """
    for entry in table:
        if is_alive is None or is_alive(entry.neighbor_id):
            return entry.neighbor_id
    return BASE


class ExceptionMessage(namedtuple('ExceptionMessage', 'from_node to_node reason')):
    """
    Control message a data receiver (``from_node``) sends back to the data
    sender (``to_node``) telling it to pick another neighbor
    """
    __slots__ = ()

    def __new__(cls, from_node, to_node, reason):
        if reason not in EXCEPTION_REASONS:
            raise StrategyError('Unknown exception reason: %s' % reason)
        return super(ExceptionMessage, cls).__new__(cls, from_node, to_node, reason)


class E3DNodeState(object):
    def __init__(self, node_id, ranked_neighbors, low_power_threshold=LOW_POWER_THRESHOLD, power_compare_threshold=POWER_COMPARE_THRESHOLD, queue_limit=QUEUE_LIMIT):
        if not 0 < low_power_threshold < power_compare_threshold <= 1:
            raise StrategyError(
                'Thresholds must satisfy 0 < low power (%s) < power compare (%s) <= 1' % (low_power_threshold, power_compare_threshold)
            )
        if queue_limit < 0:
            raise StrategyError('Queue limit cannot be negative; got %s' % queue_limit)

        self.node_id = node_id
        self.ranked_neighbors = list(ranked_neighbors)
        self.blacklist = set()
        self.low_power_threshold = low_power_threshold
        self.power_compare_threshold = power_compare_threshold
        self.queue_limit = queue_limit
        self.ack_pending = False
        self.current_neighbor = self._select()

    def _select(self):
        for entry in self.ranked_neighbors:
            if entry.neighbor_id not in self.blacklist:
                return entry.neighbor_id
        return BASE

    def next_hop(self):
        selected = self._select()
        if selected != self.current_neighbor:
            logger.debug('node %d changes neighbor: %s -> %s' % (self.node_id, self.current_neighbor, selected))
            self.current_neighbor = selected
            # The base station is always there; only peers must confirm
            self.ack_pending = selected != BASE
        return self.current_neighbor

    def blacklist_neighbor(self, neighbor_id):
        self.blacklist.add(neighbor_id)
        return self.next_hop()

    @property
    def exhausted(self):
        return all(entry.neighbor_id in self.blacklist for entry in self.ranked_neighbors)

    def __repr__(self):
        return '<E3DNodeState: node %d, current %s, blacklist %s>' % (self.node_id, self.current_neighbor, sorted(self.blacklist))


def e3d_next_hop(state):
    return state.next_hop()


def e3d_receive_check(receiver_power_fraction, sender_power_fraction, receiver_queue_depth, state, sender_id=None):
    """
    Decide whether the receiver owning ``state`` objects to the packet it
    just took. Queue overflow wins over near death, which wins over a power
    imbalance; the imbalance only counts below the compare threshold.
    """
    reason = None
    if receiver_queue_depth > state.queue_limit:
        reason = EXCEPTION_QUEUE_FULL
    elif receiver_power_fraction < state.low_power_threshold:
        reason = EXCEPTION_NEAR_DEATH
    elif receiver_power_fraction < state.power_compare_threshold and receiver_power_fraction < sender_power_fraction:
        reason = EXCEPTION_POWER_IMBALANCE

    if reason:
        return ExceptionMessage(from_node=state.node_id, to_node=sender_id, reason=reason)


def e3d_handle_exception(state, message):
    if message.to_node is not None and message.to_node != state.node_id:
        logger.debug('node %d ignoring exception addressed to node %s' % (state.node_id, message.to_node))
        return state

    if message.from_node != state.current_neighbor:
        logger.debug('node %d ignoring %s exception from non current neighbor %s' % (state.node_id, message.reason, message.from_node))
        return state

    logger.debug('node %d blacklists node %d; reason: %s' % (state.node_id, message.from_node, message.reason))
    state.blacklist_neighbor(message.from_node)
    return state
