"""Building an actual schedule from local information.

Each link, in any order, takes the earliest free time not held by its
conflicting neighbors, split across gaps if necessary.  Whenever the row test
holds this never runs out of room.
"""

import random
from fractions import Fraction

from linkadmit import DemandVector, build_schedule_row, check_row, cycle_graph, to_activation, \
    verify_schedule

g = cycle_graph(7)
rng = random.Random(3)
tau = DemandVector({v: Fraction(rng.randint(1, 6), 12) for v in g.vertices})
scale = check_row(g, tau, 1).max_lhs
tau = tau.scaled(1 / scale) if scale > 1 else tau
print("demands:", {k: str(v) for k, v in tau.items()})

order = list(g.vertices)
rng.shuffle(order)
sched = build_schedule_row(g, tau, 1, order)
print("insertion order:", order)
print(sched.table())

act = to_activation(sched, g)
print()
print(act.table())
print("valid:", verify_schedule(g, tau, act, 1))
