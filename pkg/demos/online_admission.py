"""Online admission: links come and go, each decision uses local state only.

Every policy runs on the same seeded random arrival sequence.  Admitted links
are placed first-fit; a policy that admits something first-fit cannot place
shows up as "blocked".
"""

from fractions import Fraction

from linkadmit import ConflictGraph
from linkadmit.simulation import POLICIES, metrics, random_scenario, simulate

g = ConflictGraph(range(8), [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (4, 5), (5, 6), (6, 7), (7, 4),
                             (2, 6)])
events = random_scenario(g, arrivals=40, seed=5, T=1, max_demand=Fraction(3, 5))

print(f"{'policy':<18} {'admit':>5} {'reject':>6} {'blocked':>7} {'messages':>8} {'admitted demand':>16}")
for policy in POLICIES:
    if policy.endswith("-network"):
        continue
    m = metrics(simulate(g, events, policy, 1, seed=5))
    print(f"{policy:<18} {m['admitted']:>5} {m['rejected']:>6} {m['blocked']:>7} {m['messages']:>8} "
          f"{str(m['admitted_demand']):>16}")
