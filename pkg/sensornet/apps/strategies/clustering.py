import logging

import numpy as np
from scipy.spatial.distance import cdist

from .exceptions import StrategyError
from .settings import KMEANS_MAX_SWEEPS

logger = logging.getLogger(__name__)


class ClusterAssignment(object):
    """Cluster heads and the head every alive node reports to"""

    def __init__(self, heads=(), member_of=None, round_start=0):
        self.heads = frozenset(heads)
        self.member_of = dict(member_of or {})
        self.round_start = round_start

        for head in self.heads:
            if self.member_of.get(head, head) != head:
                raise StrategyError('Cluster head %s must report to itself' % head)
            self.member_of[head] = head

    def head_of(self, node_id):
        return self.member_of.get(node_id)

    def is_head(self, node_id):
        return node_id in self.heads

    def clusters(self):
        result = dict((head, []) for head in sorted(self.heads))
        for node_id in sorted(self.member_of):
            result[self.member_of[node_id]].append(node_id)
        return result

    def members(self, head):
        return [node_id for node_id in sorted(self.member_of) if self.member_of[node_id] == head and node_id != head]

    def __repr__(self):
        return '<ClusterAssignment: heads %s, round start %s>' % (sorted(self.heads), self.round_start)


def _nearest_heads(node_ids, heads, topology):
    """Nearest head per node; ``heads`` sorted so ties go to the lowest id"""
    distances = topology.distance_matrix[np.ix_(node_ids, heads)]
    return [heads[index] for index in np.argmin(distances, axis=1)]


def random_cluster_elect(alive, k, rng, topology, round_start=0):
    alive_ids = sorted(alive)
    if not alive_ids:
        return ClusterAssignment(round_start=round_start)

    if k > len(alive_ids):
        logger.warning('clamping %d requested cluster heads to %d alive nodes' % (k, len(alive_ids)))
        k = len(alive_ids)
    if k < 1:
        raise StrategyError('At least one cluster head is needed; got %s' % k)

    heads = sorted(int(head) for head in rng.choice(np.array(alive_ids), size=k, replace=False))
    head_set = set(heads)
    members = [node_id for node_id in alive_ids if node_id not in head_set]

    member_of = dict((head, head) for head in heads)
    if members:
        member_of.update(zip(members, _nearest_heads(members, heads, topology)))

    logger.debug('round starting at %s elected heads: %s' % (round_start, heads))
    return ClusterAssignment(heads, member_of, round_start)


def clustroid_cost(candidate, members, topology, power_fractions):
    """
    Sum over the other members of the squared distance to ``candidate``,
    divided by the candidate's power fraction
    """
    fraction = power_fractions[candidate]
    if fraction <= 0:
        return float('inf')

    total = 0.0
    for member in members:
        if member != candidate:
            total += topology.distance_matrix[member, candidate] ** 2
    return total / fraction


def elect_clustroid(members, topology, power_fractions):
    """
    Member with the lowest ``clustroid_cost``; ties go to the higher power
    fraction, then to the lowest node id
    """
    members = sorted(members)
    return min(
        members,
        key=lambda candidate: (clustroid_cost(candidate, members, topology, power_fractions), -power_fractions[candidate], candidate)
    )


def kmeans(points, k, rng, max_sweeps=KMEANS_MAX_SWEEPS):
    """
    Lloyd's k-means over ``points`` seeded with ``k`` distinct points drawn
    from ``rng``. Returns one label per point; label order follows the
    index order of the seed points.
    """
    count = len(points)
    seeds = np.sort(rng.choice(count, size=k, replace=False))
    centroids = points[seeds].astype(float)

    labels = None
    for sweep in range(max(1, max_sweeps)):
        distances = cdist(points, centroids)
        # argmin keeps the lowest centroid index on ties
        new_labels = np.argmin(distances, axis=1)
        own = distances[np.arange(count), new_labels]

        for cluster in range(k):
            if np.any(new_labels == cluster):
                continue
            sizes = np.bincount(new_labels, minlength=k)
            candidates = np.where(sizes[new_labels] > 1, own, -np.inf)
            farthest = int(np.argmax(candidates))
            logger.debug('reseeding empty cluster %d with point %d' % (cluster, farthest))
            new_labels[farthest] = cluster
            own[farthest] = 0.0
            centroids[cluster] = points[farthest]

        if labels is not None and np.array_equal(labels, new_labels):
            break

        labels = new_labels
        for cluster in range(k):
            centroids[cluster] = points[labels == cluster].mean(axis=0)

    return labels


def ideal_cluster_assign(alive, topology, power_fractions, k, rng, max_sweeps=KMEANS_MAX_SWEEPS, round_start=0):
    alive_ids = sorted(alive)
    if not alive_ids:
        return ClusterAssignment(round_start=round_start)

    if k > len(alive_ids):
        logger.warning('clamping %d requested clusters to %d alive nodes' % (k, len(alive_ids)))
        k = len(alive_ids)
    if k < 1:
        raise StrategyError('At least one cluster is needed; got %s' % k)

    labels = kmeans(topology.coordinates[alive_ids], k, rng, max_sweeps=max_sweeps)

    heads = []
    member_of = {}
    for cluster in range(k):
        members = [alive_ids[index] for index in np.flatnonzero(labels == cluster)]
        if not members:
            continue
        head = elect_clustroid(members, topology, power_fractions)
        heads.append(head)
        for member in members:
            member_of[member] = head

    return ClusterAssignment(heads, member_of, round_start)
