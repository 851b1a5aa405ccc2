"""Primary interference: links conflict iff they share an endpoint.

The conflict graph is then the line graph of the network, and the admission
tests can be phrased directly in terms of node loads ``tau(v)`` (total demand
of the links incident to ``v``) and network triangles.
"""

from dataclasses import dataclass
from fractions import Fraction

from .conditions import _budget, _verdict
from .errors import ConsistencyError, DomainError
from .graphs import ConflictGraph, demand_sum
from .analysis import induced_star_number

__all__ = [
    "CLIQUE_THRESHOLD",
    "SHANNON_THRESHOLD",
    "NodeLoadView",
    "line_conflict_graph",
    "node_load_view",
    "check_row_network",
    "check_clique_network",
    "check_shannon_network",
    "verify_line_graph_sigma",
    "classify_line_clique",
    "triangles_through",
    "NETWORK_CONDITIONS",
]

CLIQUE_THRESHOLD = Fraction(4, 5)
SHANNON_THRESHOLD = Fraction(2, 3)


@dataclass(frozen=True)
class NodeLoadView:
    load: dict        # node -> total demand of incident links
    triangles: list   # ((u, v, w), total demand of links among u, v, w)


def line_conflict_graph(net):
    ids = net.link_ids
    edges = []
    for i, a in enumerate(ids):
        ea = set(net.links[a])
        for b in ids[i + 1:]:
            if ea.intersection(net.links[b]):
                edges.append((a, b))
    return ConflictGraph(ids, edges)


def _check_domain(net, tau):
    if set(tau) != set(net.links):
        raise DomainError("demand domain must equal the network's link set")


def node_load_view(net, tau):
    _check_domain(net, tau)
    load = {v: Fraction(0) for v in net.sorted_nodes}
    for lid, (u, v) in net.links.items():
        load[u] += tau[lid]
        load[v] += tau[lid]
    tri = [(t, demand_sum(tau, net.links_among(t))) for t in net.triangles()]
    return NodeLoadView(load, tri)


def check_row_network(net, tau, T):
    """Row test on the network graph: ``tau(u) + tau(v) - tau(l) <= T`` per link.

    With parallel links the subtracted term is the demand of every link
    between ``u`` and ``v``, which keeps the test identical to the row test on
    the line graph.
    """
    T = _budget(T)
    view = node_load_view(net, tau)
    values = {}
    for lid, (u, v) in net.links.items():
        between = demand_sum(tau, net.links_among((u, v)))
        values[lid] = (view.load[u] + view.load[v] - between, "row")
    return _verdict("row-network", T, values).with_guarantee(2)


def check_clique_network(net, tau, T):
    """Node loads and triangle sums must stay within 4/5 of the budget."""
    T = _budget(T)
    view = node_load_view(net, tau)
    values = {("node", v): (x, "node-load") for v, x in view.load.items()}
    for (u, v, w), x in view.triangles:
        values[("triangle", u, v, w)] = (x, "triangle")
    bound = CLIQUE_THRESHOLD * T
    verdict = _verdict("clique-network", T, values, bounds={"node-load": bound, "triangle": bound})
    return verdict.with_guarantee(Fraction(5, 4))


def check_shannon_network(net, tau, T):
    """Node loads must stay within 2/3 of the budget."""
    T = _budget(T)
    view = node_load_view(net, tau)
    values = {("node", v): (x, "node-load") for v, x in view.load.items()}
    verdict = _verdict("shannon-network", T, values,
                       bounds={"node-load": SHANNON_THRESHOLD * T})
    return verdict.with_guarantee(Fraction(3, 2))


def verify_line_graph_sigma(net, cap=None):
    sigma = induced_star_number(line_conflict_graph(net), cap)
    if sigma > 2:
        raise ConsistencyError(f"line graph with induced star number {sigma} > 2")
    return sigma


def classify_line_clique(net, links):
    """Name the network structure behind a clique of the line graph.

    Returns ``("node", v)`` if ``links`` is exactly the set of links at node
    ``v``, ``("triangle", u, v, w)`` if it is exactly the set of links among a
    network triangle, else ``None``.
    """
    links = frozenset(links)
    for v in net.sorted_nodes:
        if links == frozenset(net.incident(v)):
            return ("node", v)
    for t in net.triangles():
        if links == frozenset(net.links_among(t)):
            return ("triangle",) + t
    return None


def triangles_through(net, link):
    u, v = net.endpoints(link)
    return [t for t in net.triangles() if u in t and v in t]


NETWORK_CONDITIONS = {
    "row-network": check_row_network,
    "clique-network": check_clique_network,
    "shannon-network": check_shannon_network,
}
