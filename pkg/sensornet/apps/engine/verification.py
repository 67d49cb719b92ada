"""
Checks run against a finished simulation. The trace based checks need a
result recorded with tracing enabled and are skipped otherwise.
"""
import logging

from strategies.literals import (
    BASE, EXCEPTION_NEAR_DEATH, EXCEPTION_POWER_IMBALANCE,
    EXCEPTION_QUEUE_FULL, KNOB_LOW_POWER_THRESHOLD,
    KNOB_POWER_COMPARE_THRESHOLD, KNOB_QUEUE_LIMIT, STRATEGY_DIFFUSION,
    STRATEGY_E3D, STRATEGY_IDEAL_DIFFUSION)

from .exceptions import InvariantViolation
from .literals import (
    EVENT_BLACKLIST, EVENT_DELIVER, EVENT_DROP, EVENT_EXCEPTION, EVENT_TX,
    LEDGER_TOLERANCE)

logger = logging.getLogger(__name__)

PROGRESSIVE_STRATEGIES = (STRATEGY_DIFFUSION, STRATEGY_E3D, STRATEGY_IDEAL_DIFFUSION)


def check_packet_conservation(result):
    if result.generated != result.delivered + result.dropped:
        return ['%d packets generated but %d delivered and %d dropped' % (result.generated, result.delivered, result.dropped)]
    return []


def check_energy_ledger(result):
    imbalance = result.ledger_imbalance()
    if abs(imbalance) > LEDGER_TOLERANCE:
        return ['Energy ledger is off by %s J' % imbalance]
    return []


def check_alive_curve(result):
    errors = []
    curve = result.alive_curve
    if not curve or curve[0] != (0, result.size):
        errors.append('Alive curve must start at (0, %d); got %s' % (result.size, curve[:1]))

    for (iteration, alive), (next_iteration, next_alive) in zip(curve, curve[1:]):
        if next_iteration < iteration or next_alive > alive:
            errors.append('Alive curve goes up between %s and %s' % ((iteration, alive), (next_iteration, next_alive)))

    survivors = len([iteration for iteration in result.death_iteration if iteration is None])
    if curve and curve[-1][1] != survivors:
        errors.append('Alive curve ends at %d nodes but %d survived' % (curve[-1][1], survivors))
    return errors


def check_loop_freedom(result):
    errors = []
    distances = result.topology.base_distances
    progressive = result.strategy in PROGRESSIVE_STRATEGIES

    for event in result.trace:
        if event.kind not in (EVENT_DELIVER, EVENT_DROP):
            continue

        hops = [node_id for node_id in event.nodes if node_id != BASE]
        if len(set(hops)) != len(hops):
            errors.append('Iteration %d: packet path %s revisits a node' % (event.iteration, event.nodes))

        if progressive:
            for node_id, next_node in zip(event.nodes, event.nodes[1:]):
                if next_node != BASE and not distances[next_node] < distances[node_id]:
                    errors.append('Iteration %d: hop %d -> %d does not get closer to the base station' % (event.iteration, node_id, next_node))
    return errors


def check_blacklists(result):
    """
    A blacklisted neighbor never receives another packet from the node that
    blacklisted it; a node left with only the base station sends nowhere else
    """
    errors = []
    blacklists = {}
    direct_only = set()

    for event in result.trace:
        if event.kind == EVENT_BLACKLIST:
            node_id, neighbor_id = event.nodes
            blacklists.setdefault(node_id, set()).add(neighbor_id)
            if event.detail.get('current') == BASE:
                direct_only.add(node_id)
        elif event.kind == EVENT_TX:
            sender, destination = event.nodes
            if destination in blacklists.get(sender, ()):
                errors.append('Iteration %d: node %d sent to blacklisted node %d' % (event.iteration, sender, destination))
            if sender in direct_only and destination != BASE:
                errors.append('Iteration %d: node %d exhausted its neighbors but sent to node %d' % (event.iteration, sender, destination))
    return errors


def expected_exception(receiver_power, sender_power, queue_depth, low_power_threshold, power_compare_threshold, queue_limit):
    if queue_depth > queue_limit:
        return EXCEPTION_QUEUE_FULL
    if receiver_power < low_power_threshold:
        return EXCEPTION_NEAR_DEATH
    if receiver_power < power_compare_threshold and receiver_power < sender_power:
        return EXCEPTION_POWER_IMBALANCE


def check_exception_soundness(result):
    errors = []
    low = result.knobs[KNOB_LOW_POWER_THRESHOLD]
    compare = result.knobs[KNOB_POWER_COMPARE_THRESHOLD]
    limit = result.knobs[KNOB_QUEUE_LIMIT]

    for event in result.trace:
        if event.kind != EVENT_EXCEPTION:
            continue
        detail = event.detail
        expected = expected_exception(detail['receiver_power'], detail['sender_power'], detail['queue_depth'], low, compare, limit)
        if expected != detail['reason']:
            errors.append(
                'Iteration %d: node %d raised %s towards node %d but the conditions call for %s' % (event.iteration, event.nodes[0], detail['reason'], event.nodes[1], expected)
            )
    return errors


def verify_result(result):
    errors = check_packet_conservation(result) + check_energy_ledger(result) + check_alive_curve(result)

    if result.trace is not None:
        errors.extend(check_loop_freedom(result))
        if result.strategy == STRATEGY_E3D:
            errors.extend(check_blacklists(result))
            errors.extend(check_exception_soundness(result))
    else:
        logger.debug('no trace recorded; skipping trace replay checks')

    if errors:
        raise InvariantViolation('%d invariant violations: %s' % (len(errors), '; '.join(errors[:10])))

    logger.info('All invariants hold for %s, seed %s' % (result.strategy, result.seed))
