"""Clique sums are necessary but not sufficient.

On the 5-cycle every clique is an edge.  Demand 1/2 everywhere keeps every
edge sum at 1, so the clique test cannot refute it, but the shortest schedule
needs 5/4.  Scaling the clique sums by the imperfection ratio turns the test
into a sufficient one.
"""

from fractions import Fraction

from linkadmit import DemandVector, check_clique_necessary, check_clique_scaled, cycle_graph, \
    imperfection_ratio, minimum_duration, t_clique

for n in (5, 6, 7, 9):
    g = cycle_graph(n)
    ones = DemandVector.uniform(g.vertices, 1)
    print(f"C{n}: T*(1) = {minimum_duration(g, ones).t_star}, T_clique(1) = {t_clique(g, ones)}, "
          f"imperfection ratio = {imperfection_ratio(g)}")

g = cycle_graph(5)
half = DemandVector.uniform(g.vertices, Fraction(1, 2))
print()
print("C5, demand 1/2 each, T = 1")
print("  clique test refutes:", not check_clique_necessary(g, half, 1).admitted)
print("  oracle T* =", minimum_duration(g, half).t_star)

two_fifths = DemandVector.uniform(g.vertices, Fraction(2, 5))
v = check_clique_scaled(g, two_fifths, 1, imperfection_ratio(g))
print("C5, demand 2/5 each: scaled clique test admits:", v.admitted,
      "; oracle T* =", minimum_duration(g, two_fifths).t_star)
