"""Ground-truth feasibility: minimum schedule duration by exact LP.

The covering LP ``min sum t_j  s.t.  sum_{j: l in I_j} t_j >= tau(l), t >= 0``
over the maximal independent sets ``I_j`` is solved through its dual
``max tau.y  s.t.  y(I_j) <= 1, y >= 0``, whose right-hand side is all ones.
The schedule durations are the optimal dual multipliers of that problem.

Restricting to maximal sets loses nothing: any activation set can be
enlarged to a maximal one without reducing coverage.
"""

from dataclasses import dataclass
from fractions import Fraction

from .errors import ConsistencyError
from .graphs import DemandVector, demand_sum, maximal_clique_masks, maximal_independent_masks, order_key
from .lp import maximize
from .rationals import to_fraction

__all__ = [
    "ActivationSchedule",
    "OracleResult",
    "minimum_duration",
    "is_feasible",
    "verify_schedule",
    "schedule_violations",
    "t_clique",
    "fractional_chromatic_number",
]


@dataclass(frozen=True)
class ActivationSchedule:
    """Independent sets of links, each active for a nonnegative duration."""

    entries: tuple = ()

    def __post_init__(self):
        entries = tuple((frozenset(links), to_fraction(d, nonnegative=True, what="duration"))
                        for links, d in self.entries)
        object.__setattr__(self, "entries", entries)

    @property
    def total_duration(self):
        return sum((d for _, d in self.entries), Fraction(0))

    def coverage(self, link):
        return sum((d for links, d in self.entries if link in links), Fraction(0))

    def satisfies(self, tau):
        return all(self.coverage(k) >= v for k, v in tau.items())

    def table(self):
        lines = [f"{'duration':>12}  links"]
        for links, d in self.entries:
            names = ", ".join(str(v) for v in sorted(links, key=order_key))
            lines.append(f"{str(d):>12}  {{{names}}}")
        lines.append(f"{str(self.total_duration):>12}  (total)")
        return "\n".join(lines)


@dataclass(frozen=True)
class OracleResult:
    t_star: Fraction
    schedule: ActivationSchedule
    basis_size: int


def minimum_duration(g, tau, cap=None, deadline=None):
    """Exact minimum duration of a schedule meeting ``tau`` on conflict graph ``g``."""
    tau.check_domain(g)
    sets = maximal_independent_masks(g, cap)
    n = len(g)
    if not sets or not any(tau.values()):
        return OracleResult(Fraction(0), ActivationSchedule(()), 0)
    weights = [tau[v] for v in g.vertices]
    rows = [[1 if m >> i & 1 else 0 for i in range(n)] for m in sets]
    res = maximize(weights, rows, [1] * len(rows), deadline=deadline)
    entries = [(g.unmask(m), t) for m, t in zip(sets, res.dual) if t > 0]
    schedule = ActivationSchedule(tuple(entries))
    if schedule.total_duration != res.value:
        raise ConsistencyError("LP duality gap; simplex bug")
    return OracleResult(res.value, schedule, len(entries))


def is_feasible(g, tau, T, cap=None):
    return minimum_duration(g, tau, cap).t_star <= to_fraction(T)


def fractional_chromatic_number(g, cap=None):
    return minimum_duration(g, DemandVector.uniform(g.vertices, 1), cap).t_star


def schedule_violations(g, tau, schedule, T):
    """Human-readable list of everything wrong with ``schedule``; empty means valid."""
    problems = []
    T = to_fraction(T)
    for links, d in schedule.entries:
        unknown = [v for v in links if v not in g]
        if unknown:
            problems.append(f"unknown links {sorted(unknown, key=order_key)} in activation set")
            continue
        if not g.is_independent(links):
            names = sorted(links, key=order_key)
            problems.append(f"non-independent activation set {names}")
    for k, need in tau.items():
        got = schedule.coverage(k)
        if got < need:
            problems.append(f"unmet demand on {k!r}: covered {got} < {need}")
    total = schedule.total_duration
    if total > T:
        problems.append(f"duration {total} exceeds budget {T}")
    return problems


def verify_schedule(g, tau, schedule, T):
    return not schedule_violations(g, tau, schedule, T)


def t_clique(g, tau, cap=None):
    """Largest total demand over the cliques of ``g``; a lower bound on the duration."""
    tau.check_domain(g)
    best = Fraction(0)
    for m in maximal_clique_masks(g, cap):
        best = max(best, demand_sum(tau, g.unmask(m)))
    return best
