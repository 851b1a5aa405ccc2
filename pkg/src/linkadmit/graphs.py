"""Graph data model: network graphs, conflict graphs and demand vectors.

Conflict graphs keep their vertices in a fixed sorted order and store the
adjacency relation as one integer bitmask per vertex, which is what the
enumeration routines below operate on.
"""

import os
import random
from collections.abc import Mapping
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import CapacityError, DomainError
from .rationals import to_fraction

__all__ = [
    "DEFAULT_ENUMERATION_CAP",
    "CAP_ENV_VAR",
    "enumeration_cap",
    "order_key",
    "ConflictGraph",
    "NetworkGraph",
    "DemandVector",
    "RawDemandSpec",
    "neighbors",
    "demand_sum",
    "induced_subgraph",
    "independence_number",
    "enumerate_maximal_independent_sets",
    "enumerate_maximal_cliques",
    "connected_components",
    "is_odd_cycle",
    "is_complete",
    "normalize_demands",
    "complete_graph",
    "cycle_graph",
    "path_graph",
    "star_graph",
    "empty_graph",
    "disjoint_union",
    "random_graph",
]

DEFAULT_ENUMERATION_CAP = 25
CAP_ENV_VAR = "LINKADMIT_ENUM_CAP"


def enumeration_cap(cap=None):
    """Resolve the effective cap: explicit argument, then env var, then default."""
    if cap is not None:
        return int(cap)
    raw = os.environ.get(CAP_ENV_VAR)
    if raw:
        try:
            return int(raw)
        except ValueError:
            raise DomainError(f"{CAP_ENV_VAR}={raw!r} is not an integer") from None
    return DEFAULT_ENUMERATION_CAP


def order_key(x):
    # ints sort numerically and before strings; everything else by str()
    if isinstance(x, int) and not isinstance(x, bool):
        return (0, x, "")
    return (1, 0, str(x))


def _bits(mask):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _popcount(mask):
    return bin(mask).count("1")


def _compress(mask, within):
    # renumber the bits of `mask` to positions among the set bits of `within`
    out = 0
    for k, i in enumerate(_bits(within)):
        if mask >> i & 1:
            out |= 1 << k
    return out


class ConflictGraph:
    """Undirected simple graph whose vertices are link identifiers.

    Immutable after construction.  ``vertices`` is sorted by :func:`order_key`
    and every iteration in the package follows that order.
    """

    __slots__ = ("_vertices", "_index", "_masks", "_hash")

    def __init__(self, vertices, edges=()):
        verts = sorted(set(vertices), key=order_key)
        self._vertices = tuple(verts)
        self._index = {v: i for i, v in enumerate(verts)}
        masks = [0] * len(verts)
        for edge in edges:
            try:
                a, b = edge
            except (TypeError, ValueError):
                raise DomainError(f"edge {edge!r} is not a pair") from None
            if a not in self._index or b not in self._index:
                raise DomainError(f"edge {edge!r} mentions an unknown vertex")
            if a == b:
                raise DomainError(f"self-loop on {a!r}")
            i, j = self._index[a], self._index[b]
            masks[i] |= 1 << j
            masks[j] |= 1 << i
        self._masks = tuple(masks)
        self._hash = None

    @classmethod
    def _from_masks(cls, vertices, masks):
        g = cls.__new__(cls)
        g._vertices = tuple(vertices)
        g._index = {v: i for i, v in enumerate(g._vertices)}
        g._masks = tuple(masks)
        g._hash = None
        return g

    @property
    def vertices(self):
        return self._vertices

    @property
    def edges(self):
        out = []
        for i, m in enumerate(self._masks):
            for j in _bits(m >> (i + 1)):
                out.append((self._vertices[i], self._vertices[i + 1 + j]))
        return out

    def __len__(self):
        return len(self._vertices)

    def __iter__(self):
        return iter(self._vertices)

    def __contains__(self, v):
        return v in self._index

    def __eq__(self, other):
        if not isinstance(other, ConflictGraph):
            return NotImplemented
        return self._vertices == other._vertices and self._masks == other._masks

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._vertices, self._masks))
        return self._hash

    def __repr__(self):
        return f"ConflictGraph(n={len(self)}, m={self.edge_count})"

    @property
    def edge_count(self):
        return sum(_popcount(m) for m in self._masks) // 2

    def index(self, v):
        try:
            return self._index[v]
        except (KeyError, TypeError):
            raise DomainError(f"unknown vertex {v!r}") from None

    def mask(self, vs):
        m = 0
        for v in vs:
            m |= 1 << self.index(v)
        return m

    def unmask(self, mask):
        return frozenset(self._vertices[i] for i in _bits(mask))

    def adjacency_mask(self, v):
        return self._masks[self.index(v)]

    def neighbors(self, v):
        return self.unmask(self._masks[self.index(v)])

    def degree(self, v):
        return _popcount(self._masks[self.index(v)])

    def adjacent(self, u, v):
        return bool(self._masks[self.index(u)] >> self.index(v) & 1)

    @property
    def max_degree(self):
        return max((_popcount(m) for m in self._masks), default=0)

    def is_independent(self, vs):
        m = self.mask(vs)
        return all(not (self._masks[i] & m) for i in _bits(m))

    def is_clique(self, vs):
        m = self.mask(vs)
        return all((self._masks[i] | (1 << i)) & m == m for i in _bits(m))

    def complement(self):
        full = (1 << len(self)) - 1
        masks = [full & ~m & ~(1 << i) for i, m in enumerate(self._masks)]
        return ConflictGraph._from_masks(self._vertices, masks)

    def subgraph(self, vs):
        m = self.mask(vs)
        keep = [self._vertices[i] for i in _bits(m)]
        return ConflictGraph._from_masks(keep, [_compress(self._masks[i] & m, m) for i in _bits(m)])

    def relabel(self, mapping):
        return ConflictGraph([mapping(v) for v in self._vertices],
                             [(mapping(a), mapping(b)) for a, b in self.edges])


@dataclass(frozen=True)
class NetworkGraph:
    """Nodes plus undirected links; parallel links between a node pair are allowed."""

    nodes: frozenset
    links: Mapping = field(default_factory=dict)  # link id -> (u, v)

    def __post_init__(self):
        nodes = frozenset(self.nodes)
        links = {}
        for lid, ends in dict(self.links).items():
            try:
                u, v = ends
            except (TypeError, ValueError):
                raise DomainError(f"link {lid!r}: endpoints must be a pair") from None
            if u == v:
                raise DomainError(f"link {lid!r}: self-loop at node {u!r}")
            if u not in nodes or v not in nodes:
                raise DomainError(f"link {lid!r}: endpoint not in node set")
            links[lid] = tuple(sorted((u, v), key=order_key))
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "links", dict(sorted(links.items(), key=lambda kv: order_key(kv[0]))))

    @classmethod
    def from_pairs(cls, pairs, nodes=None):
        """Build from ``(u, v)`` pairs; links are named ``"u-v"`` (suffixed when parallel)."""
        links = {}
        for u, v in pairs:
            base = f"{u}-{v}"
            lid, k = base, 1
            while lid in links:
                k += 1
                lid = f"{base}#{k}"
            links[lid] = (u, v)
        all_nodes = set(nodes or ())
        for u, v in links.values():
            all_nodes.update((u, v))
        return cls(frozenset(all_nodes), links)

    @property
    def link_ids(self):
        return tuple(self.links)

    @property
    def sorted_nodes(self):
        return tuple(sorted(self.nodes, key=order_key))

    def endpoints(self, link):
        try:
            return self.links[link]
        except KeyError:
            raise DomainError(f"unknown link {link!r}") from None

    def incident(self, node):
        if node not in self.nodes:
            raise DomainError(f"unknown node {node!r}")
        return tuple(lid for lid, ends in self.links.items() if node in ends)

    def links_among(self, node_set):
        s = set(node_set)
        return tuple(lid for lid, (u, v) in self.links.items() if u in s and v in s)

    def triangles(self):
        """Node triples ``(u, v, w)`` (sorted) with all three pairs joined by a link."""
        adj = {n: set() for n in self.nodes}
        for u, v in self.links.values():
            adj[u].add(v)
            adj[v].add(u)
        order = {n: i for i, n in enumerate(self.sorted_nodes)}
        out = []
        for u in self.sorted_nodes:
            higher = sorted((x for x in adj[u] if order[x] > order[u]), key=order.get)
            for i, v in enumerate(higher):
                for w in higher[i + 1:]:
                    if w in adj[v]:
                        out.append((u, v, w))
        return out


class DemandVector(Mapping):
    """Exact nonnegative demand per link (fraction of one time unit)."""

    __slots__ = ("_d",)

    def __init__(self, demands=()):
        items = dict(demands).items()
        d = {}
        for k, v in items:
            d[k] = to_fraction(v, nonnegative=True, what=f"demand of {k!r}")
        self._d = dict(sorted(d.items(), key=lambda kv: order_key(kv[0])))

    @classmethod
    def uniform(cls, links, value):
        value = to_fraction(value, nonnegative=True, what="demand")
        return cls({k: value for k in links})

    def __getitem__(self, k):
        return self._d[k]

    def __iter__(self):
        return iter(self._d)

    def __len__(self):
        return len(self._d)

    def __repr__(self):
        inner = ", ".join(f"{k!r}: {v}" for k, v in self._d.items())
        return f"DemandVector({{{inner}}})"

    def sum(self, links):
        return demand_sum(self, links)

    def scaled(self, c):
        c = to_fraction(c, nonnegative=True, what="scale")
        return DemandVector({k: c * v for k, v in self._d.items()})

    def restrict(self, links):
        return DemandVector({k: self[k] for k in links})

    def support(self):
        return frozenset(k for k, v in self._d.items() if v)

    def check_domain(self, g):
        """Raise :class:`DomainError` unless the keys are exactly ``g``'s vertices."""
        mine, theirs = set(self._d), set(g.vertices)
        if mine != theirs:
            missing = sorted(theirs - mine, key=order_key)
            extra = sorted(mine - theirs, key=order_key)
            raise DomainError(f"demand domain mismatch: missing={missing} unknown={extra}")


@dataclass(frozen=True)
class RawDemandSpec:
    """Requested rates and link capacities in bits/second."""

    rates: Mapping
    capacities: Mapping
    bandwidth: Fraction

    def __post_init__(self):
        rates = {k: to_fraction(v, what=f"rate of {k!r}") for k, v in dict(self.rates).items()}
        caps = {k: to_fraction(v, what=f"capacity of {k!r}") for k, v in dict(self.capacities).items()}
        bw = to_fraction(self.bandwidth, what="bandwidth")
        if set(rates) != set(caps):
            raise DomainError("rates and capacities must cover the same links")
        for k, f in rates.items():
            if f < 0:
                raise DomainError(f"negative rate on link {k!r}")
            if caps[k] <= 0:
                raise DomainError(f"capacity of link {k!r} must be positive")
            if caps[k] > bw:
                raise DomainError(f"capacity of link {k!r} exceeds the medium bandwidth")
        object.__setattr__(self, "rates", rates)
        object.__setattr__(self, "capacities", caps)
        object.__setattr__(self, "bandwidth", bw)


def normalize_demands(spec):
    """Demand as the fraction of time each link must be active: rate / capacity."""
    out = {}
    for k, f in spec.rates.items():
        c = spec.capacities[k]
        if c == 0:
            raise DomainError(f"link {k!r} has zero capacity")
        out[k] = f / c
    return DemandVector(out)


def neighbors(g, v):
    return g.neighbors(v)


def demand_sum(tau, links):
    total = Fraction(0)
    for k in links:
        try:
            total += tau[k]
        except KeyError:
            raise DomainError(f"unknown link {k!r} in demand sum") from None
    return total


def induced_subgraph(g, vs):
    return g.subgraph(vs)


def _check_cap(g, cap):
    limit = enumeration_cap(cap)
    if len(g) > limit:
        raise CapacityError(f"graph has {len(g)} vertices; enumeration cap is {limit}")


def _max_independent_size(masks, P):
    if not P:
        return 0
    best_v, best_deg, edges2 = -1, -1, 0
    for v in _bits(P):
        d = _popcount(masks[v] & P)
        edges2 += d
        if d > best_deg:
            best_v, best_deg = v, d
    if best_deg == 0:
        return _popcount(P)
    if best_deg == 1:
        return _popcount(P) - edges2 // 2
    without = _max_independent_size(masks, P & ~(1 << best_v))
    with_v = 1 + _max_independent_size(masks, P & ~(1 << best_v) & ~masks[best_v])
    return max(without, with_v)


def independence_number(g, cap=None):
    _check_cap(g, cap)
    return _max_independent_size(g._masks, (1 << len(g)) - 1)


def _maximal_cliques_masks(masks, n):
    out = []

    def expand(R, P, X):
        if not P and not X:
            out.append(R)
            return
        # pivot maximizing |P & N(u)| keeps the branching small
        u = max(_bits(P | X), key=lambda w: _popcount(P & masks[w]))
        for v in list(_bits(P & ~masks[u])):
            bit = 1 << v
            expand(R | bit, P & masks[v], X & masks[v])
            P &= ~bit
            X |= bit

    if n:
        expand(0, (1 << n) - 1, 0)
    return sorted(out, key=lambda m: tuple(_bits(m)))


def maximal_clique_masks(g, cap=None):
    _check_cap(g, cap)
    return _maximal_cliques_masks(g._masks, len(g))


def maximal_independent_masks(g, cap=None):
    _check_cap(g, cap)
    return _maximal_cliques_masks(g.complement()._masks, len(g))


def enumerate_maximal_cliques(g, cap=None):
    return [g.unmask(m) for m in maximal_clique_masks(g, cap)]


def enumerate_maximal_independent_sets(g, cap=None):
    return [g.unmask(m) for m in maximal_independent_masks(g, cap)]


def component_masks(g):
    seen, out = 0, []
    for i in range(len(g)):
        if seen >> i & 1:
            continue
        comp, frontier = 1 << i, 1 << i
        while frontier:
            nxt = 0
            for v in _bits(frontier):
                nxt |= g._masks[v]
            frontier = nxt & ~comp
            comp |= frontier
        seen |= comp
        out.append(comp)
    return out


def connected_components(g):
    return [g.unmask(m) for m in component_masks(g)]


def is_connected(g):
    return len(component_masks(g)) <= 1


def is_odd_cycle(g):
    n = len(g)
    return (n >= 3 and n % 2 == 1 and is_connected(g)
            and all(_popcount(m) == 2 for m in g._masks))


def is_complete(g):
    return all(_popcount(m) == len(g) - 1 for m in g._masks)


def complete_graph(n):
    return ConflictGraph(range(n), [(i, j) for i in range(n) for j in range(i + 1, n)])


def cycle_graph(n):
    if n < 3:
        raise DomainError("a cycle needs at least 3 vertices")
    return ConflictGraph(range(n), [(i, (i + 1) % n) for i in range(n)])


def path_graph(n):
    return ConflictGraph(range(n), [(i, i + 1) for i in range(n - 1)])


def star_graph(d):
    """K_{1,d}: vertex 0 is the center, 1..d are leaves."""
    return ConflictGraph(range(d + 1), [(0, i) for i in range(1, d + 1)])


def empty_graph(n):
    return ConflictGraph(range(n))


def disjoint_union(*graphs):
    """Union with vertex ``v`` of the k-th graph renamed to ``"k:v"``."""
    verts, edges = [], []
    for k, g in enumerate(graphs):
        verts += [f"{k}:{v}" for v in g.vertices]
        edges += [(f"{k}:{a}", f"{k}:{b}") for a, b in g.edges]
    return ConflictGraph(verts, edges)


def random_graph(n, p, rng=None):
    """Erdos-Renyi G(n, p) on vertices ``0..n-1``; ``rng`` is a seed or ``random.Random``."""
    if not isinstance(rng, random.Random):
        rng = random.Random(rng)
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    return ConflictGraph(range(n), edges)
