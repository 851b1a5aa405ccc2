"""Node-level tests when links conflict only by sharing an endpoint.

Under this model the conflict graph is the line graph of the network, and
the admission tests can be phrased with node loads and network triangles.
"""

from fractions import Fraction

from linkadmit import DemandVector, NetworkGraph, check_clique_network, check_row_network, \
    check_shannon_network, line_conflict_graph, minimum_duration
from linkadmit.analysis import imperfection_ratio, induced_star_number

net = NetworkGraph.from_pairs([("a", "b"), ("b", "c"), ("a", "c"), ("c", "d"), ("d", "e")])
g = line_conflict_graph(net)
print("links:", ", ".join(net.link_ids))
print("conflicts:", ", ".join(f"{u}~{v}" for u, v in g.edges))
print("induced star number of the line graph:", induced_star_number(g))
print("imperfection ratio:", imperfection_ratio(g))
print()

tau = DemandVector({"a-b": "0.25", "b-c": "0.25", "a-c": "0.25", "c-d": "0.3", "d-e": "0.4"})
print("oracle T* =", minimum_duration(g, tau).t_star)
for check in (check_row_network, check_clique_network, check_shannon_network):
    v = check(net, tau, 1)
    print(f"{v.condition:<16} admitted={v.admitted}  factor<= {v.guarantee_factor}")
print()
print(check_clique_network(net, tau, 1).table())

# a node load of 7/10: beyond the 2/3 load test, inside the 4/5 test
hub = NetworkGraph.from_pairs([("h", "x"), ("h", "y")])
t = DemandVector({"h-x": Fraction(35, 100), "h-y": Fraction(35, 100)})
print()
print("hub load 7/10: shannon", check_shannon_network(hub, t, 1).admitted,
      "/ clique-network", check_clique_network(hub, t, 1).admitted)
