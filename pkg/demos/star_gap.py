"""How conservative the row test can be: the star conflict graph.

A hub link conflicts with d leaf links that do not conflict with each other.
Give the hub a tiny demand and every leaf almost a full unit.  The leaves can
all transmit together, so one time unit suffices, yet the hub's row sum is
close to d.
"""

from fractions import Fraction

from linkadmit import DemandVector, check_row, minimum_duration, report, star_graph

eps = Fraction(1, 100)
print(f"{'d':>3} {'T*':>4} {'hub row sum':>12} {'sigma':>6} {'beta_row':>9}")
for d in (1, 2, 3, 5, 9, 15):
    g = star_graph(d)
    tau = DemandVector({0: eps, **{i: 1 - eps for i in range(1, d + 1)}})
    t_star = minimum_duration(g, tau).t_star
    hub = check_row(g, tau, 1).per_link[0].lhs
    r = report(g, with_imperfection=False)
    print(f"{d:>3} {str(t_star):>4} {str(hub):>12} {r.sigma:>6} {str(r.beta_row):>9}")

# The optimal schedule: leaves together, then the hub.
res = minimum_duration(star_graph(3), DemandVector({0: eps, 1: 1 - eps, 2: 1 - eps, 3: 1 - eps}))
print()
print(res.schedule.table())
