"""Exact rational simplex for ``max c.x  s.t.  A x <= b, x >= 0`` with ``b >= 0``.

Every LP in this package has a nonnegative right-hand side, so the all-slack
basis is feasible and no phase one is needed.  The tableau is kept in compact
(dictionary) form: one row per constraint, one column per nonbasic variable.
Bland's rule on the variable labels prevents cycling and makes the final basis
a deterministic function of the input.
"""

from dataclasses import dataclass
from fractions import Fraction

__all__ = ["LPResult", "UnboundedLP", "maximize"]


class UnboundedLP(ArithmeticError):
    pass


@dataclass(frozen=True)
class LPResult:
    value: Fraction
    x: tuple      # primal optimum, one entry per column of A
    dual: tuple   # one nonnegative multiplier per row of A
    pivots: int


def maximize(c, A, b, deadline=None):
    """Solve the LP exactly.

    ``A`` is a sequence of rows (any numbers convertible to ``Fraction``).
    ``deadline`` is an optional zero-argument callable; if it returns true the
    solve is abandoned with :class:`TimeoutError`.
    """
    m, n = len(A), len(c)
    F = Fraction
    T = [[F(a) for a in row] for row in A]
    rhs = [F(x) for x in b]
    obj = [F(x) for x in c]
    if any(len(row) != n for row in T) or len(rhs) != m:
        raise ValueError("inconsistent LP dimensions")
    if any(x < 0 for x in rhs):
        raise ValueError("right-hand side must be nonnegative")

    # labels: 0..n-1 structural, n..n+m-1 slacks
    nonbasic = list(range(n))
    basic = list(range(n, n + m))
    value = F(0)
    pivots = 0

    while True:
        if deadline is not None and deadline():
            raise TimeoutError("LP solve cancelled")
        entering = None
        for j in sorted(range(n), key=nonbasic.__getitem__):
            if obj[j] > 0:
                entering = j
                break
        if entering is None:
            break
        s = entering
        row, best = None, None
        for i in range(m):
            a = T[i][s]
            if a > 0:
                ratio = rhs[i] / a
                if best is None or ratio < best or (ratio == best and basic[i] < basic[row]):
                    row, best = i, ratio
        if row is None:
            raise UnboundedLP("objective is unbounded")

        r = row
        p = T[r][s]
        prow = T[r]
        prow_new = [a / p for a in prow]
        prow_new[s] = 1 / p
        rhs_r = rhs[r] / p
        for i in range(m):
            if i == r:
                continue
            a = T[i][s]
            if not a:
                continue
            Ti = T[i]
            for j in range(n):
                if j != s and prow_new[j]:
                    Ti[j] -= a * prow_new[j]
            Ti[s] = -a / p
            rhs[i] -= a * rhs_r
        cs = obj[s]
        for j in range(n):
            if j != s and prow_new[j]:
                obj[j] -= cs * prow_new[j]
        obj[s] = -cs / p
        value += cs * rhs_r
        T[r] = prow_new
        rhs[r] = rhs_r
        basic[r], nonbasic[s] = nonbasic[s], basic[r]
        pivots += 1

    x = [F(0)] * n
    for i, lab in enumerate(basic):
        if lab < n:
            x[lab] = rhs[i]
    dual = [F(0)] * m
    for j, lab in enumerate(nonbasic):
        if lab >= n:
            dual[lab - n] = -obj[j]
    return LPResult(value, tuple(x), tuple(dual), pivots)
