"""Worst-case scaling factors of the admission tests.

Each ``beta_*`` quantity is the supremum of a constraint functional over the
independent-set polytope, i.e. over convex combinations of independent-set
indicator vectors.  Functionals that are nondecreasing in every coordinate
attain their maximum at a maximal independent set, so the linear ones reduce
to a scan over the enumeration; the mixed functional (a pointwise minimum) is
solved as a small LP per vertex.
"""

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple

from .errors import ConsistencyError, PreconditionError
from .graphs import (
    DemandVector,
    _bits,
    _max_independent_size,
    _popcount,
    _check_cap,
    component_masks,
    maximal_clique_masks,
    maximal_independent_masks,
    order_key,
)
from .lp import maximize
from .oracle import minimum_duration, t_clique
from .polytope import packing_polytope_vertices
from .rationals import to_fraction

__all__ = [
    "Extremal",
    "PerformanceReport",
    "induced_star_number",
    "neighborhood_components",
    "beta_row_extremal",
    "beta_row_lp",
    "beta_degree_extremal",
    "beta_degree_lp",
    "beta_row_strengthened_extremal",
    "strengthened_row_factor",
    "beta_mixed_extremal",
    "beta_mixed_lp",
    "beta_mixed_formula",
    "mixed_formula_applies",
    "imperfection_extremal",
    "imperfection_ratio",
    "imperfection_lower_bound",
    "guarantee_factor",
    "report",
]


class Extremal(NamedTuple):
    """A supremum together with a demand vector attaining it."""

    value: Fraction
    witness: DemandVector
    vertex: object = None


def _indicator(g, mask):
    return DemandVector({v: int(mask >> i & 1) for i, v in enumerate(g.vertices)})


def _star_numbers(g):
    masks = g._masks
    return [_max_independent_size(masks, m) for m in masks]


def induced_star_number(g, cap=None):
    """Largest number of pairwise non-adjacent neighbors of any single vertex."""
    _check_cap(g, cap)
    return max(_star_numbers(g), default=0)


def neighborhood_components(g):
    """Map each vertex to the number of connected components its neighborhood induces."""
    return {v: len(component_masks(g.subgraph(g.neighbors(v)))) for v in g.vertices}


def _closed(g, i):
    return g._masks[i] | (1 << i)


def _scan(g, cap, score):
    # max of score(mask, i) over maximal independent sets and vertices i
    best = None
    for m in maximal_independent_masks(g, cap):
        for i in range(len(g)):
            val = score(m, i)
            if best is None or val > best[0]:
                best = (val, m, i)
    if best is None:
        return Extremal(Fraction(1), DemandVector({}), None)
    val, m, i = best
    return Extremal(Fraction(val), _indicator(g, m), g.vertices[i])


def beta_row_extremal(g, cap=None):
    return _scan(g, cap, lambda m, i: _popcount(m & _closed(g, i)))


def beta_row_lp(g, cap=None):
    return beta_row_extremal(g, cap).value


def beta_degree_extremal(g, cap=None):
    return _scan(g, cap, lambda m, i: (_popcount(g._masks[i]) + 1) if m >> i & 1 else 0)


def beta_degree_lp(g, cap=None):
    return beta_degree_extremal(g, cap).value


def beta_row_strengthened_extremal(g, designated=None, cap=None):
    """Scaling factor of the min-subtracted row test (designated link keeps its full row)."""
    d_index = None if designated is None else g.index(designated)

    def score(m, i):
        full = _popcount(m & _closed(g, i))
        nbrs = g._masks[i]
        if i == d_index or not nbrs:
            return full
        # min over neighbors of the indicator is 1 only if every neighbor is in the set
        return full - (1 if nbrs & m == nbrs else 0)

    return _scan(g, cap, score)


def strengthened_row_factor(g, designated=None, cap=None):
    """Return ``(factor, label)``; label is ``"sigma"``, ``"sigma-1"`` or ``"other"``."""
    beta = beta_row_strengthened_extremal(g, designated, cap).value
    sigma = induced_star_number(g, cap)
    if beta == max(1, sigma):
        label = "sigma"
    elif beta == max(1, sigma - 1):
        label = "sigma-1"
    else:
        label = "other"
    return beta, label


def _mixed_at_vertex(g, sets, i):
    # maximize z s.t. z <= row functional, z <= degree functional, sum(lambda) <= 1
    closed = _closed(g, i)
    deg1 = _popcount(g._masks[i]) + 1
    columns, seen = [], set()
    for m in sets:
        a = _popcount(m & closed)
        b = deg1 if m >> i & 1 else 0
        if (a, b) not in seen:
            seen.add((a, b))
            columns.append((m, a, b))
    k = len(columns)
    c = [0] * k + [1]
    A = [
        [-a for _, a, _ in columns] + [1],
        [-b for _, _, b in columns] + [1],
        [1] * k + [0],
    ]
    res = maximize(c, A, [0, 0, 1])
    weights = [0] * len(g)
    for (m, _, _), lam in zip(columns, res.x[:k]):
        if lam:
            for j in _bits(m):
                weights[j] += lam
    return res.value, DemandVector(dict(zip(g.vertices, weights)))


def beta_mixed_extremal(g, cap=None):
    sets = maximal_independent_masks(g, cap)
    best = None
    for i in range(len(g)):
        val, witness = _mixed_at_vertex(g, sets, i)
        if best is None or val > best[0]:
            best = (val, witness, g.vertices[i])
    if best is None:
        return Extremal(Fraction(1), DemandVector({}), None)
    return Extremal(*best)


def beta_mixed_lp(g, cap=None):
    return beta_mixed_extremal(g, cap).value


def mixed_formula_applies(g):
    """``(True, None)`` if every neighborhood induces a disjoint union of cliques,
    else ``(False, witness_vertex)``."""
    for v in g.vertices:
        h = g.subgraph(g.neighbors(v))
        if max(_star_numbers(h), default=0) > 1:
            return False, v
    return True, None


def beta_mixed_formula(g):
    ok, witness = mixed_formula_applies(g)
    if not ok:
        raise PreconditionError(
            f"neighborhood of {witness!r} is not a disjoint union of cliques", witness=witness)
    eta = neighborhood_components(g)
    best = Fraction(1)
    for v in g.vertices:
        d = g.degree(v)
        if d == 0:
            continue
        best = max(best, Fraction(eta[v] * (1 + d), eta[v] + d))
    return best


def _imp_component(h, cap):
    cliques = maximal_clique_masks(h, cap)
    best = (Fraction(1), None)
    for vertex in packing_polytope_vertices(len(h), cliques):
        if all(x.denominator == 1 for x in vertex):
            continue
        tau = DemandVector(dict(zip(h.vertices, vertex)))
        ratio = minimum_duration(h, tau, cap).t_star / t_clique(h, tau, cap)
        if ratio > best[0]:
            best = (ratio, tau)
    if best[1] is None:
        # perfect component: any single link attains ratio 1
        best = (Fraction(1), _indicator(h, 1))
    return best


def imperfection_lower_bound(g, samples=32, seed=0, cap=None):
    """Largest ``T*/T_clique`` over randomly sampled demand vectors."""
    rng = random.Random(seed)
    best = Extremal(Fraction(1), _indicator(g, 1) if len(g) else DemandVector({}), None)
    for _ in range(samples if len(g) else 0):
        support = [v for v in g.vertices if rng.random() < 0.75] or [g.vertices[0]]
        tau = DemandVector({v: Fraction(rng.randint(1, 12), 12) if v in support else 0
                            for v in g.vertices})
        tc = t_clique(g, tau, cap)
        tau = tau.scaled(1 / tc)
        ratio = minimum_duration(g, tau, cap).t_star
        if ratio > best.value:
            best = Extremal(ratio, tau, None)
    return best


def imperfection_extremal(g, check_samples=16, seed=0, cap=None):
    """Exact imperfection ratio with a witness demand vector.

    The duration is a convex function of the demand, so its maximum over the
    clique-constrained polytope sits at a vertex; vertices are enumerated per
    connected component and every fractional one is priced by the oracle.
    A random-sampling lower bound is checked against the result.
    """
    _check_cap(g, cap)
    if not len(g):
        return Extremal(Fraction(1), DemandVector({}), None)
    best_val, best_tau = Fraction(0), None
    for cm in component_masks(g):
        h = g.subgraph(g.unmask(cm))
        val, tau = _imp_component(h, cap)
        if val > best_val:
            best_val, best_tau = val, tau
    witness = DemandVector({v: best_tau.get(v, 0) for v in g.vertices})
    if check_samples:
        lower = imperfection_lower_bound(g, check_samples, seed, cap)
        if lower.value > best_val:
            raise ConsistencyError(
                f"sampled ratio {lower.value} exceeds computed imperfection ratio {best_val}")
    return Extremal(best_val, witness, None)


def imperfection_ratio(g, cap=None, check_samples=16):
    return imperfection_extremal(g, check_samples=check_samples, cap=cap).value


def guarantee_factor(g, condition, scale=None, cap=None):
    """Worst-case factor by which ``condition`` can be conservative on ``g``."""
    if condition == "row":
        return beta_row_lp(g, cap)
    if condition == "degree":
        return Fraction(g.max_degree + 1)
    if condition == "mixed":
        return beta_mixed_lp(g, cap)
    if condition in ("row-strengthened", "row-designated"):
        return beta_row_strengthened_extremal(g, cap=cap).value
    if condition == "clique-necessary":
        return imperfection_ratio(g, cap)
    if condition == "clique-scaled":
        return to_fraction(scale) if scale is not None else imperfection_ratio(g, cap)
    return None


@dataclass(frozen=True)
class PerformanceReport:
    sigma: int
    delta_plus_one: int
    beta_row: Fraction
    beta_degree: Fraction
    beta_mixed_bounds: tuple
    beta_mixed_exact: Fraction | None
    eta: dict
    beta_mixed_lp: Fraction | None = None
    beta_row_strengthened: Fraction | None = None
    strengthened_label: str | None = None
    imperfection_ratio: Fraction | None = None
    witnesses: dict = field(default_factory=dict)

    def table(self):
        rows = [
            ("induced star number", self.sigma),
            ("max degree + 1", self.delta_plus_one),
            ("beta_row", self.beta_row),
            ("beta_degree", self.beta_degree),
            ("beta_mixed bounds", f"[{self.beta_mixed_bounds[0]}, {self.beta_mixed_bounds[1]}]"),
            ("beta_mixed (formula)", self.beta_mixed_exact),
            ("beta_mixed (LP)", self.beta_mixed_lp),
            ("beta_row_strengthened", None if self.beta_row_strengthened is None
             else f"{self.beta_row_strengthened} ({self.strengthened_label})"),
            ("imperfection ratio", self.imperfection_ratio),
        ]
        return "\n".join(f"{k:<24} {'-' if v is None else v}" for k, v in rows)


def report(g, cap=None, with_imperfection=True, witnesses=False):
    _check_cap(g, cap)
    sigma = induced_star_number(g, cap)
    delta1 = g.max_degree + 1
    row = beta_row_extremal(g, cap)
    degree = beta_degree_extremal(g, cap)
    mixed = beta_mixed_extremal(g, cap)
    ok, _ = mixed_formula_applies(g)
    exact = beta_mixed_formula(g) if ok else None
    if sigma >= 1:
        bounds = (Fraction(1 + sigma, 2), Fraction(sigma))
    else:
        bounds = (Fraction(1), Fraction(1))
    strengthened, label = strengthened_row_factor(g, cap=cap)
    imp = imperfection_extremal(g, cap=cap) if with_imperfection else None

    if g.edge_count and row.value != sigma:
        raise ConsistencyError(f"beta_row LP {row.value} != induced star number {sigma}")
    if not bounds[0] <= mixed.value <= bounds[1]:
        raise ConsistencyError(f"beta_mixed {mixed.value} outside {bounds}")
    if exact is not None and exact != mixed.value:
        raise ConsistencyError(f"beta_mixed formula {exact} != LP {mixed.value}")

    wit = {}
    if witnesses:
        wit = {"beta_row": row.witness, "beta_degree": degree.witness, "beta_mixed": mixed.witness}
        if imp is not None:
            wit["imperfection_ratio"] = imp.witness
    return PerformanceReport(
        sigma=sigma,
        delta_plus_one=delta1,
        beta_row=row.value,
        beta_degree=degree.value,
        beta_mixed_bounds=bounds,
        beta_mixed_exact=exact,
        eta=dict(sorted(neighborhood_components(g).items(), key=lambda kv: order_key(kv[0]))),
        beta_mixed_lp=mixed.value,
        beta_row_strengthened=strengthened,
        strengthened_label=label,
        imperfection_ratio=None if imp is None else imp.value,
        witnesses=wit,
    )
