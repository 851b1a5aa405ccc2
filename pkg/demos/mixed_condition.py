"""Taking the smaller of the row and degree sums per link.

On a star with hub demand 1/10 and leaf demand 9/10 the row test rejects
(hub sum 82/10) and the degree test rejects (each leaf has degree 1, so
9/10 * 2 > 1).  The per-link minimum admits, and the oracle agrees that one
time unit is enough.
"""

from fractions import Fraction

from linkadmit import DemandVector, check_degree, check_mixed, check_row, minimum_duration, star_graph
from linkadmit.analysis import beta_mixed_formula, beta_mixed_lp

g = star_graph(9)
tau = DemandVector({0: Fraction(1, 10), **{i: Fraction(9, 10) for i in range(1, 10)}})

for check in (check_row, check_degree, check_mixed):
    v = check(g, tau, 1)
    print(f"{v.condition:<7} admitted={v.admitted}  worst lhs={v.max_lhs}")
print("oracle T* =", minimum_duration(g, tau).t_star)
print()
print(check_mixed(g, tau, 1).table())

print()
print("worst-case factor of the mixed test on stars (closed form vs LP):")
for d in (2, 3, 5, 9):
    print(f"  d={d}: {beta_mixed_formula(star_graph(d))} / {beta_mixed_lp(star_graph(d))}")
