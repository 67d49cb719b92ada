from collections import OrderedDict
import logging

import numpy as np
from scipy.stats import rankdata

from .classes import LifetimeSummary
from .literals import CORRELATION_MIN_DEATHS

logger = logging.getLogger(__name__)


def utility_curve(result):
    """
    Percentage of nodes alive as a step series: 100% at iteration 0, then
    one step at every iteration in which nodes died
    """
    size = float(result.size)
    curve = [(0, 100.0)]
    alive = result.size
    deaths = result.deaths

    for iteration in sorted(set(deaths)):
        alive -= deaths.count(iteration)
        curve.append((iteration, 100.0 * alive / size))

    return curve


def lifetime_summary(result):
    deaths = result.deaths
    first_death = deaths[0] if deaths else None

    if not result.all_dead:
        logger.debug('%s run with %d survivors gives a censored summary' % (result.strategy, result.size - len(deaths)))
        return LifetimeSummary(first_death, None, None, None, True)

    system_lifetime = deaths[-1]
    if system_lifetime == 0:
        # Everyone died together during setup
        return LifetimeSummary(first_death, system_lifetime, 1.0, 0.0, False)

    return LifetimeSummary(
        first_death, system_lifetime,
        first_death / float(system_lifetime),
        (system_lifetime - first_death) / float(system_lifetime),
        False
    )


def death_distance_correlation(result, topology=None):
    """
    Spearman rank correlation between distance to the base station and death
    iteration over the dead nodes, tied values sharing their mean rank.
    Negative when far nodes die first. None below three deaths.
    """
    topology = topology or result.topology
    dead = [node_id for node_id, iteration in enumerate(result.death_iteration) if iteration is not None]
    if len(dead) < CORRELATION_MIN_DEATHS:
        return None

    distance_ranks = rankdata(topology.base_distances[dead], method='average')
    death_ranks = rankdata([result.death_iteration[node_id] for node_id in dead], method='average')

    if np.ptp(distance_ranks) == 0 or np.ptp(death_ranks) == 0:
        return 0.0

    distance_ranks = distance_ranks - distance_ranks.mean()
    death_ranks = death_ranks - death_ranks.mean()
    return float(np.dot(distance_ranks, death_ranks) / np.sqrt(np.dot(distance_ranks, distance_ranks) * np.dot(death_ranks, death_ranks)))


def node_rows(result):
    topology = result.topology
    for node_id, position in enumerate(topology.positions):
        yield OrderedDict((
            ('node_id', node_id), ('x', position.x), ('y', position.y),
            ('dist_to_base', float(topology.base_distances[node_id])),
            ('death_iteration', result.death_iteration[node_id]),
        ))


def curve_rows(result):
    for iteration, percent_alive in utility_curve(result):
        yield OrderedDict((('iteration', iteration), ('percent_alive', percent_alive)))


def summary_row(result, summary=None):
    summary = summary or lifetime_summary(result)
    return OrderedDict((
        ('strategy', result.strategy),
        ('seed', result.seed),
        ('first_death', summary.first_death),
        ('system_lifetime', summary.system_lifetime),
        ('utility_fraction', summary.utility_fraction),
        ('death_spread', summary.death_spread),
        ('censored', summary.censored),
        ('sync_messages', result.sync_messages),
        ('sync_energy', result.sync_energy),
        ('delivered', result.delivered),
        ('dropped', result.dropped),
        ('generated', result.generated),
        ('iterations', result.iterations),
        ('death_distance_correlation', death_distance_correlation(result)),
    ))
