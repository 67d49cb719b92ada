import logging

import networkx as nx
import numpy as np

from .exceptions import RoutingTreeError
from .literals import BASE

logger = logging.getLogger(__name__)


class RoutingTree(object):
    """Parent pointers of a tree rooted at the base station"""

    def __init__(self, parent=None):
        self.parent = dict(parent or {})

    def __getitem__(self, node_id):
        return self.parent[node_id]

    def __contains__(self, node_id):
        return node_id in self.parent

    def __len__(self):
        return len(self.parent)

    def path(self, node_id):
        path = [node_id]
        while path[-1] != BASE:
            path.append(self.parent[path[-1]])
            if len(path) > len(self.parent) + 1:
                raise RoutingTreeError('Cycle found while following node %s to the base station' % node_id)
        return path

    def as_graph(self):
        graph = nx.DiGraph()
        graph.add_node(BASE)
        graph.add_edges_from(self.parent.items())
        return graph

    def validate(self, topology):
        graph = self.as_graph()
        if not nx.is_directed_acyclic_graph(graph):
            raise RoutingTreeError('Routing tree has a cycle: %s' % nx.find_cycle(graph))

        for node_id, parent in self.parent.items():
            if parent == BASE:
                continue
            if parent not in self.parent:
                raise RoutingTreeError('Node %s routes through %s which is not part of the tree' % (node_id, parent))
            if not topology.base_distances[parent] < topology.base_distances[node_id]:
                raise RoutingTreeError('Edge %s -> %s does not get closer to the base station' % (node_id, parent))

        stranded = set(self.parent) - nx.ancestors(graph, BASE)
        if stranded:
            raise RoutingTreeError('Nodes %s have no path to the base station' % sorted(stranded))

    def __repr__(self):
        return '<RoutingTree: %d nodes>' % len(self.parent)


def edge_cost(distance_to_candidate, candidate_power_fraction, candidate_distance_to_base):
    if candidate_power_fraction <= 0:
        return float('inf')
    return distance_to_candidate ** 2 / candidate_power_fraction + candidate_distance_to_base ** 2


def _fractions(alive_ids, power_fractions):
    return np.array([power_fractions[node_id] for node_id in alive_ids], dtype=float)


def ideal_diffusion_plan(alive, topology, power_fractions):
    """
    Pick, for every alive node, the parent minimising

        d(node, c)^2 / power(c) + d(c, base)^2

    over the alive nodes strictly closer to the base station, against the
    plain d(node, base)^2 of going straight to the base station. The base
    station wins ties, then the lowest node id.
    """
    alive_ids = np.array(sorted(alive), dtype=int)
    if not len(alive_ids):
        return RoutingTree()

    squared = topology.distance_matrix[np.ix_(alive_ids, alive_ids)] ** 2
    to_base = topology.base_distances[alive_ids]
    fractions = _fractions(alive_ids, power_fractions)

    with np.errstate(divide='ignore', invalid='ignore'):
        costs = squared / fractions[np.newaxis, :] + (to_base ** 2)[np.newaxis, :]

    costs[:, fractions <= 0] = np.inf
    costs[~(to_base[np.newaxis, :] < to_base[:, np.newaxis])] = np.inf

    best = np.argmin(costs, axis=1)
    best_costs = costs[np.arange(len(alive_ids)), best]
    direct_costs = to_base ** 2

    parents = np.where(best_costs < direct_costs, alive_ids[best], BASE)
    return RoutingTree(zip(alive_ids.tolist(), parents.tolist()))


def ideal_parent(node_id, alive, topology, power_fractions):
    """Best parent for a single node; same rule as ``ideal_diffusion_plan``"""
    own_distance = topology.base_distances[node_id]
    best, best_cost = BASE, own_distance ** 2

    for candidate in sorted(alive):
        candidate_distance = topology.base_distances[candidate]
        if not candidate_distance < own_distance:
            continue
        cost = edge_cost(topology.distance_matrix[node_id, candidate], power_fractions[candidate], candidate_distance)
        if cost < best_cost:
            best, best_cost = candidate, cost

    return best
