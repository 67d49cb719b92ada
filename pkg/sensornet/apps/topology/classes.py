from collections import namedtuple
import logging

from django.utils.functional import cached_property

import numpy as np
from scipy.spatial.distance import cdist
from shapely.geometry import Point, box

from .exceptions import TopologyError, UnknownNodeError
from .literals import DEFAULT_BASE

logger = logging.getLogger(__name__)


class Position(namedtuple('Position', 'x y')):
    __slots__ = ()

    def __str__(self):
        return '(%s, %s)' % (self.x, self.y)


class NeighborEntry(namedtuple('NeighborEntry', 'neighbor_id dist_to_me dist_to_base')):
    """
    One row of a node's neighbor table; signal strength is stood in for by
    the exact distance between the owner and the neighbor
    """
    __slots__ = ()

    @property
    def cost(self):
        return self.dist_to_me ** 2 + self.dist_to_base ** 2


class Topology(object):
    """
    Immutable node placement. Node ids are the dense indexes 0..n-1 of
    ``positions``.
    """
    def __init__(self, positions, base=DEFAULT_BASE, width=None, height=None, seed=None):
        self.positions = tuple(Position(float(x), float(y)) for x, y in positions)
        if not self.positions:
            raise TopologyError('A topology needs at least one node')

        self.base = Position(float(base[0]), float(base[1]))

        if width is None:
            width = max(position.x for position in self.positions)
        if height is None:
            height = max(position.y for position in self.positions)

        self.width = float(width)
        self.height = float(height)
        self.seed = seed

        if self.width <= 0 or self.height <= 0:
            raise TopologyError('Area dimensions must be positive; got %sx%s' % (self.width, self.height))

        area = box(0, 0, self.width, self.height)
        for node_id, position in enumerate(self.positions):
            if not area.covers(Point(position)):
                raise TopologyError('Node %d at %s lies outside the %sx%s area' % (node_id, position, self.width, self.height))

    @property
    def size(self):
        return len(self.positions)

    @property
    def node_ids(self):
        return range(len(self.positions))

    def position(self, node_id):
        if not 0 <= node_id < len(self.positions):
            raise UnknownNodeError('Unknown node id: %s' % node_id)
        return self.positions[node_id]

    @cached_property
    def coordinates(self):
        coordinates = np.array(self.positions, dtype=float)
        coordinates.flags.writeable = False
        return coordinates

    @cached_property
    def distance_matrix(self):
        matrix = cdist(self.coordinates, self.coordinates)
        matrix.flags.writeable = False
        return matrix

    @cached_property
    def base_distances(self):
        distances = cdist(self.coordinates, np.array([self.base], dtype=float))[:, 0]
        distances.flags.writeable = False
        return distances

    def distance_to_base(self, node_id):
        self.position(node_id)
        return float(self.base_distances[node_id])

    def __eq__(self, other):
        if not isinstance(other, Topology):
            return NotImplemented
        return (
            self.positions == other.positions and self.base == other.base and
            self.width == other.width and self.height == other.height
        )

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    __hash__ = None

    def __repr__(self):
        return '<Topology: %d nodes, %sx%s, base %s, seed %s>' % (self.size, self.width, self.height, self.base, self.seed)


def generate_topology(n, width, height, base=DEFAULT_BASE, seed=0):
    """
    Place ``n`` nodes uniformly at random in the ``width`` x ``height``
    rectangle.

    The stream is numpy's PCG64 bit generator seeded with ``seed``: draw
    ``u = Generator(PCG64(seed)).random(2 * n)`` and put node ``i`` at
    ``(width * u[2i], height * u[2i + 1])``.
    """
    if n < 1:
        raise TopologyError('A topology needs at least one node; got %s' % n)
    if width <= 0 or height <= 0:
        raise TopologyError('Area dimensions must be positive; got %sx%s' % (width, height))

    rng = np.random.Generator(np.random.PCG64(seed))
    draws = rng.random(2 * n)
    positions = [(width * draws[2 * index], height * draws[2 * index + 1]) for index in range(n)]

    logger.debug('generated %d node placements with seed: %s' % (n, seed))
    return Topology(positions, base=base, width=width, height=height, seed=seed)


def build_neighbor_table(node_id, topology, max_neighbors, max_range=None):
    """
    Return up to ``max_neighbors`` entries for the nodes strictly closer to
    the base station than ``node_id``, best diffusion cost first
    (distance to me squared plus distance to base squared, then node id).
    """
    topology.position(node_id)
    if max_neighbors < 0:
        raise TopologyError('max_neighbors cannot be negative; got %s' % max_neighbors)

    own_distance = topology.base_distances[node_id]
    distances = topology.distance_matrix[node_id]

    entries = []
    for other in topology.node_ids:
        if other == node_id:
            continue
        other_distance = topology.base_distances[other]
        if not other_distance < own_distance:
            continue
        if max_range is not None and distances[other] > max_range:
            continue
        entries.append(NeighborEntry(other, float(distances[other]), float(other_distance)))

    entries.sort(key=lambda entry: (entry.cost, entry.neighbor_id))
    return entries[:max_neighbors]
