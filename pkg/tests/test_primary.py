import random
from fractions import Fraction

import networkx as nx
import pytest
from hypothesis import given, settings

from linkadmit.conditions import check_row
from linkadmit.errors import DomainError
from linkadmit.graphs import DemandVector, NetworkGraph, enumerate_maximal_cliques
from linkadmit.oracle import minimum_duration
from linkadmit.primary import (
    check_clique_network,
    check_row_network,
    check_shannon_network,
    classify_line_clique,
    line_conflict_graph,
    node_load_view,
    triangles_through,
    verify_line_graph_sigma,
)

from conftest import networks, random_network

F = Fraction
TRI = NetworkGraph.from_pairs([("a", "b"), ("b", "c"), ("a", "c")])
PATH4 = NetworkGraph.from_pairs([("a", "b"), ("b", "c"), ("c", "d")])


def hub(d):
    return NetworkGraph.from_pairs([("h", f"x{i}") for i in range(d)])


def uniform(net, x):
    return DemandVector.uniform(net.link_ids, F(x))


def test_line_graph_examples():
    g = line_conflict_graph(TRI)
    assert g.edge_count == 3
    assert line_conflict_graph(hub(5)).edge_count == 10
    p = line_conflict_graph(PATH4)
    assert set(p.edges) == {("a-b", "b-c"), ("b-c", "c-d")}


def test_line_graph_matches_networkx():
    rng = random.Random(5)
    for _ in range(30):
        net = random_network(rng)
        g = line_conflict_graph(net)
        h = nx.line_graph(nx.Graph([net.links[k] for k in net.link_ids]))
        name = {net.links[k]: k for k in net.link_ids}
        want = {frozenset((name[tuple(sorted(a))], name[tuple(sorted(b))])) for a, b in h.edges}
        assert {frozenset(e) for e in g.edges} == want


def test_row_network_examples():
    path = NetworkGraph.from_pairs([("a", "b"), ("b", "c")])
    v = check_row_network(path, uniform(path, F(1, 2)), 1)
    assert v.admitted and v.per_link["a-b"].lhs == 1
    v = check_row_network(TRI, uniform(TRI, F(1, 3)), 1)
    assert v.admitted and all(c.lhs == 1 for c in v.per_link.values())
    assert minimum_duration(line_conflict_graph(TRI), uniform(TRI, F(1, 3))).t_star == 1
    v = check_row_network(hub(9), uniform(hub(9), F(1, 10)), 1)
    assert v.admitted and all(c.lhs == F(9, 10) for c in v.per_link.values())
    assert v.guarantee_factor == 2


def test_clique_network_examples():
    v = check_clique_network(TRI, uniform(TRI, F(1, 4)), 1)
    assert v.admitted and v.per_link[("triangle", "a", "b", "c")].lhs == F(3, 4)
    assert v.per_link[("node", "a")].lhs == F(1, 2)
    v = check_clique_network(TRI, uniform(TRI, "0.27"), 1)
    assert not v.admitted
    assert v.violations == [("triangle", "a", "b", "c")]
    assert minimum_duration(line_conflict_graph(TRI), uniform(TRI, "0.27")).t_star == F(81, 100)
    h = hub(4)
    tau = DemandVector({k: F(79, 400) for k in h.link_ids})
    v = check_clique_network(h, tau, 1)
    assert v.admitted and v.per_link[("node", "h")].lhs == F(79, 100)
    assert v.guarantee_factor == F(5, 4)


def test_shannon_examples():
    h = hub(2)
    v = check_shannon_network(h, DemandVector({"h-x0": F(1, 3), "h-x1": F(1, 3)}), 1)
    assert v.admitted and v.per_link[("node", "h")].slack == 0
    assert check_shannon_network(TRI, uniform(TRI, F(1, 4)), 1).admitted
    tau = DemandVector({"h-x0": F(35, 100), "h-x1": F(35, 100)})
    assert not check_shannon_network(h, tau, 1).admitted
    assert check_clique_network(h, tau, 1).admitted


def test_sigma_examples():
    assert verify_line_graph_sigma(PATH4) == 2
    assert verify_line_graph_sigma(TRI) == 1
    assert verify_line_graph_sigma(NetworkGraph.from_pairs([(1, 2)])) == 0


def test_node_load_view_and_triangles():
    view = node_load_view(TRI, uniform(TRI, F(1, 5)))
    assert view.load == {"a": F(2, 5), "b": F(2, 5), "c": F(2, 5)}
    assert view.triangles == [(("a", "b", "c"), F(3, 5))]
    assert triangles_through(TRI, "a-b") == [("a", "b", "c")]
    assert triangles_through(PATH4, "a-b") == []
    with pytest.raises(DomainError):
        node_load_view(TRI, DemandVector({"a-b": 1}))


def test_parallel_links_conflict():
    net = NetworkGraph.from_pairs([("u", "v"), ("u", "v"), ("v", "w")])
    g = line_conflict_graph(net)
    assert g.adjacent("u-v", "u-v#2")
    tau = DemandVector({"u-v": F(1, 3), "u-v#2": F(1, 3), "v-w": F(1, 3)})
    assert check_row_network(net, tau, 1).per_link["u-v"].lhs == check_row(g, tau, 1).per_link["u-v"].lhs


@settings(max_examples=120, deadline=None)
@given(networks())
def test_row_network_equals_line_graph_row(net):
    rng = random.Random(len(net.links))
    g = line_conflict_graph(net)
    for _ in range(3):
        tau = DemandVector({k: F(rng.randint(0, 10), 20) for k in net.link_ids})
        a, b = check_row_network(net, tau, 1), check_row(g, tau, 1)
        assert a.admitted == b.admitted
        assert {k: c.lhs for k, c in a.per_link.items()} == {k: c.lhs for k, c in b.per_link.items()}


@settings(max_examples=120, deadline=None)
@given(networks())
def test_clique_correspondence_and_sigma(net):
    g = line_conflict_graph(net)
    assert verify_line_graph_sigma(net) <= 2
    for clique in enumerate_maximal_cliques(g):
        assert classify_line_clique(net, clique) is not None


@settings(max_examples=80, deadline=None)
@given(networks(parallel=False))
def test_network_conditions_sound(net):
    rng = random.Random(sum(map(len, net.link_ids)))
    g = line_conflict_graph(net)
    for _ in range(4):
        tau = DemandVector({k: F(rng.randint(0, 8), 20) for k in net.link_ids})
        t_star = minimum_duration(g, tau).t_star
        clique = check_clique_network(net, tau, 1).admitted
        shannon = check_shannon_network(net, tau, 1).admitted
        if clique or shannon:
            assert t_star <= 1
        if shannon and not net.triangles():
            assert clique
