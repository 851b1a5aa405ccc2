"""Vertex enumeration for packing polytopes ``{x >= 0 : x(S) <= 1 for S in family}``.

Double description method on the homogenized cone
``{(x0, x) : x0 >= 0, x >= 0, x0 - x(S) >= 0}``, starting from the
nonnegative orthant and adding one set constraint at a time.  Rays are kept
as primitive integer vectors; adjacency uses the combinatorial zero-set test.
"""

from fractions import Fraction
from math import gcd

__all__ = ["packing_polytope_vertices"]


def _primitive(v):
    g = 0
    for x in v:
        g = gcd(g, x)
    return tuple(x // g for x in v) if g > 1 else tuple(v)


def _bitcount(m):
    return bin(m).count("1")


def packing_polytope_vertices(n, sets):
    """All vertices, as tuples of ``Fraction``, in a deterministic order.

    ``sets`` are bitmasks over ``range(n)``; each coordinate must belong to at
    least one set so the polytope is bounded.
    """
    covered = 0
    for s in sets:
        covered |= s
    if covered != (1 << n) - 1:
        raise ValueError("every coordinate must appear in some set")
    d = n + 1
    # constraint k < d: coordinate k >= 0 (k = 0 is x0); constraint d + t: set t
    rays = []
    all_coord = (1 << d) - 1
    for k in range(d):
        v = [0] * d
        v[k] = 1
        rays.append((tuple(v), all_coord & ~(1 << k)))

    for t, s in enumerate(sorted(set(sets))):
        bit = 1 << (d + t)
        members = [i + 1 for i in range(n) if s >> i & 1]
        pos, neg, keep = [], [], []
        for v, z in rays:
            val = v[0] - sum(v[i] for i in members)
            if val > 0:
                pos.append((v, z, val))
            elif val < 0:
                neg.append((v, z, val))
            else:
                keep.append((v, z | bit))
        if not neg:
            rays = [(v, z) for v, z, _ in pos] + keep
            continue
        zsets = [z for _, z in rays]
        new = []
        for vp, zp, ap in pos:
            for vq, zq, aq in neg:
                common = zp & zq
                if _bitcount(common) < d - 2:
                    continue
                adjacent = True
                for z in zsets:
                    if z & common == common and z != zp and z != zq:
                        adjacent = False
                        break
                if not adjacent:
                    continue
                w = _primitive([ap * b - aq * a for a, b in zip(vp, vq)])
                new.append((w, common | bit))
        rays = [(v, z) for v, z, _ in pos] + keep + new

    out = set()
    for v, _ in rays:
        if v[0] > 0:
            out.add(tuple(Fraction(x, v[0]) for x in v[1:]))
        elif any(v):
            raise ValueError("polytope is unbounded")
    return sorted(out)
