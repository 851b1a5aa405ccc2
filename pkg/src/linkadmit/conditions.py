"""Localized admission tests over a conflict graph.

Every check is a pure function of ``(g, tau, T)`` returning a :class:`Verdict`
that carries the left-hand side and slack of every constraint it evaluated,
whether or not the demand was admitted.
"""

from dataclasses import dataclass, replace
from fractions import Fraction

from .errors import DomainError, PreconditionError
from .graphs import (
    component_masks,
    demand_sum,
    is_complete,
    is_connected,
    is_odd_cycle,
    maximal_clique_masks,
    order_key,
)
from .rationals import to_fraction

__all__ = [
    "ConstraintValue",
    "Verdict",
    "check_row",
    "check_row_strengthened_designated",
    "check_row_strengthened",
    "check_row_strengthened_auto",
    "check_degree",
    "check_mixed",
    "check_clique_necessary",
    "check_clique_scaled",
    "CONDITIONS",
]


@dataclass(frozen=True)
class ConstraintValue:
    """One evaluated constraint ``lhs <= bound``; ``slack = bound - lhs``."""

    lhs: Fraction
    bound: Fraction
    rule: str = "link"

    @property
    def slack(self):
        return self.bound - self.lhs


@dataclass(frozen=True)
class Verdict:
    """Outcome of one admission test.

    ``per_link`` maps a constraint key to its value.  Keys are link ids for the
    per-link conditions, sorted tuples of link ids for clique conditions, and
    ``("node", v)`` / ``("triangle", u, v, w)`` for the network-graph tests.
    For a necessary condition (``necessary=True``) ``admitted`` means only
    "not refuted".
    """

    condition: str
    budget: Fraction
    admitted: bool
    per_link: dict
    guarantee_factor: Fraction | None = None
    necessary: bool = False

    @property
    def violations(self):
        return [k for k, c in self.per_link.items() if c.slack < 0]

    @property
    def max_lhs(self):
        return max((c.lhs for c in self.per_link.values()), default=Fraction(0))

    def with_guarantee(self, factor):
        return replace(self, guarantee_factor=None if factor is None else Fraction(factor))

    def table(self):
        status = ("not refuted" if self.admitted else "refuted") if self.necessary else \
            ("admitted" if self.admitted else "rejected")
        lines = [f"condition {self.condition}, T = {self.budget}: {status}"]
        if self.guarantee_factor is not None:
            lines.append(f"worst-case factor: {self.guarantee_factor}")
        lines.append(f"{'constraint':<24} {'lhs':>12} {'bound':>10} {'slack':>12}  rule")
        for k, c in self.per_link.items():
            name = key_text(k)
            flag = "" if c.slack >= 0 else "  <-- violated"
            lines.append(f"{name:<24} {str(c.lhs):>12} {str(c.bound):>10} {str(c.slack):>12}  "
                         f"{c.rule}{flag}")
        return "\n".join(lines)


def key_text(k):
    if isinstance(k, tuple):
        if k and k[0] in ("node", "triangle") and len(k) in (2, 4):
            return f"{k[0]}:" + ",".join(str(x) for x in k[1:])
        return "{" + ",".join(str(x) for x in k) + "}"
    return str(k)


def _budget(T):
    T = to_fraction(T, what="T")
    if T <= 0:
        raise DomainError(f"budget T must be positive, got {T}")
    return T


def _verdict(condition, T, values, necessary=False, bounds=None):
    """``values`` maps key -> (lhs, rule); ``bounds`` maps rule -> bound (default T)."""
    bounds = bounds or {}
    per = {k: ConstraintValue(lhs, bounds.get(rule, T), rule) for k, (lhs, rule) in values.items()}
    admitted = all(c.slack >= 0 for c in per.values())
    return Verdict(condition, T, admitted, per, necessary=necessary)


def _row_lhs(g, tau, v):
    return tau[v] + demand_sum(tau, g.neighbors(v))


def _min_subtracted_lhs(g, tau, v):
    nbrs = g.neighbors(v)
    if not nbrs:
        return tau[v]
    return tau[v] + demand_sum(tau, nbrs) - min(tau[u] for u in nbrs)


def check_row(g, tau, T):
    T = _budget(T)
    tau.check_domain(g)
    return _verdict("row", T, {v: (_row_lhs(g, tau, v), "row") for v in g.vertices})


def check_row_strengthened_designated(g, tau, T, designated):
    T = _budget(T)
    tau.check_domain(g)
    if designated not in g:
        raise DomainError(f"designated link {designated!r} is not in the conflict graph")
    if not is_connected(g):
        raise DomainError("designated-link variant needs a connected conflict graph; "
                          "apply it per component")
    values = {}
    for v in g.vertices:
        if v == designated:
            values[v] = (_row_lhs(g, tau, v), "designated")
        else:
            values[v] = (_min_subtracted_lhs(g, tau, v), "strengthened")
    return _verdict("row-designated", T, values)


def check_row_strengthened(g, tau, T):
    T = _budget(T)
    tau.check_domain(g)
    if not is_connected(g):
        raise PreconditionError("strengthened row constraints need a connected conflict graph")
    if is_odd_cycle(g):
        raise PreconditionError("strengthened row constraints do not apply to odd cycles")
    if len(g) >= 2 and is_complete(g):
        raise PreconditionError("strengthened row constraints do not apply to complete graphs")
    values = {v: (_min_subtracted_lhs(g, tau, v), "strengthened") for v in g.vertices}
    return _verdict("row-strengthened", T, values)


def check_row_strengthened_auto(g, tau, T, designated=None):
    """Strengthened row test applied per component.

    Components that are odd cycles or complete graphs fall back to the
    designated-link variant; the designated link is ``designated`` when it lies
    in the component, otherwise the component's smallest link id.
    """
    T = _budget(T)
    tau.check_domain(g)
    values = {}
    for cm in component_masks(g):
        comp = g.unmask(cm)
        h = g.subgraph(comp)
        sub = tau.restrict(comp)
        if len(h) == 1 or not (is_odd_cycle(h) or is_complete(h)):
            part = check_row_strengthened(h, sub, T)
        else:
            d = designated if designated in comp else min(comp, key=order_key)
            part = check_row_strengthened_designated(h, sub, T, d)
        for k, c in part.per_link.items():
            values[k] = (c.lhs, c.rule)
    values = dict(sorted(values.items(), key=lambda kv: order_key(kv[0])))
    return _verdict("row-strengthened", T, values)


def check_degree(g, tau, T):
    T = _budget(T)
    tau.check_domain(g)
    return _verdict("degree", T, {v: (tau[v] * (g.degree(v) + 1), "degree") for v in g.vertices})


def check_mixed(g, tau, T):
    T = _budget(T)
    tau.check_domain(g)
    values = {}
    for v in g.vertices:
        row = _row_lhs(g, tau, v)
        deg = tau[v] * (g.degree(v) + 1)
        values[v] = (row, "row") if row <= deg else (deg, "degree")
    return _verdict("mixed", T, values)


def _clique_values(g, tau, scale, cap):
    values = {}
    for m in maximal_clique_masks(g, cap):
        members = tuple(sorted(g.unmask(m), key=order_key))
        values[members] = (scale * demand_sum(tau, members), "clique")
    return values


def check_clique_necessary(g, tau, T, cap=None):
    T = _budget(T)
    tau.check_domain(g)
    return _verdict("clique-necessary", T, _clique_values(g, tau, Fraction(1), cap), necessary=True)


def check_clique_scaled(g, tau, T, scale, cap=None):
    T = _budget(T)
    tau.check_domain(g)
    scale = to_fraction(scale, what="scale")
    if scale < 1:
        raise DomainError(f"clique scale must be >= 1, got {scale}")
    return _verdict("clique-scaled", T, _clique_values(g, tau, scale, cap))


CONDITIONS = {
    "row": check_row,
    "row-strengthened": check_row_strengthened_auto,
    "row-designated": check_row_strengthened_designated,
    "degree": check_degree,
    "mixed": check_mixed,
    "clique-necessary": check_clique_necessary,
    "clique-scaled": check_clique_scaled,
}
