"""First-fit interval scheduling on a conflict graph.

A link is placed using only the intervals already held by its neighbors: it
takes the earliest free time in ``[0, T)``, split across as many gaps as
needed.  When the row condition holds the free measure at every link is at
least its demand, so inserting links in any order never fails.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from .conditions import check_row
from .errors import DomainError, PreconditionError, RejectionError
from .graphs import order_key
from .oracle import ActivationSchedule
from .rationals import to_fraction

__all__ = [
    "IntervalSchedule",
    "merge_intervals",
    "first_fit_insert",
    "build_schedule_row",
    "to_activation",
]


def merge_intervals(intervals):
    out = []
    for a, b in sorted(intervals):
        if out and a <= out[-1][1]:
            if b > out[-1][1]:
                out[-1] = (out[-1][0], b)
        else:
            out.append((a, b))
    return out


def _measure(intervals):
    return sum((b - a for a, b in intervals), Fraction(0))


@dataclass(frozen=True)
class IntervalSchedule:
    """Per-link sets of disjoint half-open intervals inside ``[0, horizon)``."""

    horizon: Fraction
    assignments: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "horizon", to_fraction(self.horizon, what="horizon"))
        clean = {}
        for k, ivs in dict(self.assignments).items():
            clean[k] = tuple((to_fraction(a), to_fraction(b)) for a, b in ivs)
        object.__setattr__(self, "assignments",
                           dict(sorted(clean.items(), key=lambda kv: order_key(kv[0]))))

    def measure(self, link):
        return _measure(self.assignments.get(link, ()))

    def busy(self, links):
        ivs = []
        for k in links:
            ivs.extend(self.assignments.get(k, ()))
        return merge_intervals(ivs)

    def with_link(self, link, intervals):
        d = dict(self.assignments)
        d[link] = tuple(intervals)
        return IntervalSchedule(self.horizon, d)

    def without(self, link):
        d = dict(self.assignments)
        d.pop(link, None)
        return IntervalSchedule(self.horizon, d)

    def active_at(self, t):
        return frozenset(k for k, ivs in self.assignments.items() if any(a <= t < b for a, b in ivs))

    def problems(self, g, tau=None):
        """Every invariant violation, as text; empty means the schedule is valid."""
        out = []
        T = self.horizon
        for k, ivs in self.assignments.items():
            if k not in g:
                out.append(f"unknown link {k!r}")
                continue
            prev_end = None
            for a, b in sorted(ivs):
                if not (0 <= a < b <= T):
                    out.append(f"link {k!r}: interval [{a}, {b}) outside [0, {T}) or empty")
                if prev_end is not None and a < prev_end:
                    out.append(f"link {k!r}: overlapping intervals")
                prev_end = b if prev_end is None else max(prev_end, b)
            if tau is not None and k in tau and _measure(ivs) < tau[k]:
                out.append(f"link {k!r}: holds {_measure(ivs)} < demand {tau[k]}")
        for a, b in g.edges:
            if a in self.assignments and b in self.assignments:
                if _overlap(self.assignments[a], self.assignments[b]):
                    out.append(f"conflicting links {a!r} and {b!r} overlap in time")
        return out

    def table(self):
        lines = [f"horizon {self.horizon}"]
        for k, ivs in self.assignments.items():
            text = " ".join(f"[{a}, {b})" for a, b in ivs) or "-"
            lines.append(f"{str(k):<12} {text}")
        return "\n".join(lines)


def _overlap(xs, ys):
    return any(a < d and c < b for a, b in xs for c, d in ys)


def first_fit_insert(g, sched, link, demand):
    """Return a new schedule with ``link`` holding the earliest ``demand`` of free time."""
    g.index(link)
    demand = to_fraction(demand, nonnegative=True, what="demand")
    if link in sched.assignments:
        raise DomainError(f"link {link!r} already holds intervals")
    T = sched.horizon
    busy = sched.busy(g.neighbors(link))
    if demand + _measure(busy) > T:
        raise RejectionError(
            f"link {link!r}: demand {demand} exceeds free time {T - _measure(busy)}", link=link)
    got, need, cursor = [], demand, Fraction(0)
    for a, b in busy + [(T, T)]:
        if need <= 0:
            break
        if a > cursor:
            take = min(a - cursor, need)
            got.append((cursor, cursor + take))
            need -= take
        cursor = max(cursor, b)
    return sched.with_link(link, got)


def build_schedule_row(g, tau, T, order=None):
    """Place every link first-fit in ``order``; requires the row condition at ``T``."""
    verdict = check_row(g, tau, T)
    if not verdict.admitted:
        bad = verdict.violations[0]
        raise PreconditionError(f"row condition fails at link {bad!r}", witness=bad)
    order = list(g.vertices) if order is None else list(order)
    if sorted(order, key=order_key) != list(g.vertices):
        raise DomainError("insertion order must list every link exactly once")
    sched = IntervalSchedule(verdict.budget)
    for link in order:
        sched = first_fit_insert(g, sched, link, tau[link])
    return sched


def to_activation(sched, g):
    """Slice the horizon at every interval endpoint and group slices by active set.

    Idle slices are dropped; slices with the same active set are merged, in
    order of first appearance.
    """
    problems = sched.problems(g)
    if problems:
        raise DomainError("invalid interval schedule: " + "; ".join(problems))
    cuts = sorted({x for ivs in sched.assignments.values() for iv in ivs for x in iv})
    durations = {}
    for a, b in zip(cuts, cuts[1:]):
        active = sched.active_at(a)
        if active:
            durations[active] = durations.get(active, Fraction(0)) + (b - a)
    return ActivationSchedule(tuple(durations.items()))
