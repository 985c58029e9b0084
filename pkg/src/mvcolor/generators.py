"""Deterministic constructors for the graph families used throughout the package.

Every constructor returns a :class:`LabeledGraph`, whose ``labels`` map
human-readable vertex names (``"(12)_1"``, ``"x_3"``, ``"v_7"``...) to the
dense integer ids of the underlying :class:`~mvcolor.graph.Graph`.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Any, Iterable, Sequence

from .graph import (
    Graph,
    GraphError,
    UNREACHABLE,
    all_pairs_distances,
    diameter,
    from_edge_list,
    is_connected,
)


@dataclass(frozen=True)
class LabeledGraph:
    graph: Graph
    labels: dict[str, int]
    family: str
    params: dict[str, Any] = field(default_factory=dict)
    # factor graphs of products, kept for audits that need them
    factors: tuple["LabeledGraph", ...] = field(default=(), compare=False, repr=False)

    @property
    def n(self) -> int:
        return self.graph.n

    def id(self, name: str) -> int:
        return self.labels[name]

    def ids(self, names: Iterable[str]) -> list[int]:
        return [self.labels[x] for x in names]

    def names(self) -> list[str]:
        """Vertex names indexed by id."""
        out = [""] * self.graph.n
        for name, v in self.labels.items():
            out[v] = name
        return out

    def sidecar(self) -> dict[str, Any]:
        return {"family": self.family, "params": self.params, "labels": self.labels}


def _labeled(n, edges, family, params, names=None, factors=()):
    if names is None:
        names = [str(i) for i in range(n)]
    labels = {name: i for i, name in enumerate(names)}
    if len(labels) != n:
        raise GraphError(f"vertex names for {family} are not distinct")
    return LabeledGraph(from_edge_list(n, edges), labels, family, params, factors)


def _require(cond, message):
    if not cond:
        raise GraphError(message)


def wrap(g: Graph, family: str = "custom", params: dict | None = None) -> LabeledGraph:
    """Attach default labels ``"0".."n-1"`` to a bare graph."""
    return _labeled(g.n, g.edges, family, params or {})


# Basic families ---------------------------------------------------------------

def path(n: int) -> LabeledGraph:
    _require(n >= 1, f"path needs n >= 1, got {n}")
    return _labeled(n, [(i, i + 1) for i in range(n - 1)], "path", {"n": n})


def cycle(n: int) -> LabeledGraph:
    _require(n >= 3, f"cycle needs n >= 3, got {n}")
    return _labeled(n, [(i, (i + 1) % n) for i in range(n)], "cycle", {"n": n})


def complete(n: int) -> LabeledGraph:
    _require(n >= 1, f"complete graph needs n >= 1, got {n}")
    return _labeled(n, itertools.combinations(range(n), 2), "complete", {"n": n})


def empty(n: int) -> LabeledGraph:
    _require(n >= 1, f"empty graph needs n >= 1, got {n}")
    return _labeled(n, [], "empty", {"n": n})


def complete_bipartite(r: int, t: int) -> LabeledGraph:
    _require(r >= 1 and t >= 1, f"complete bipartite graph needs r, t >= 1, got {r}, {t}")
    edges = [(i, r + j) for i in range(r) for j in range(t)]
    return _labeled(r + t, edges, "kbip", {"r": r, "t": t})


def star(n: int) -> LabeledGraph:
    """``K_{1,n-1}`` with the centre at id 0."""
    _require(n >= 1, f"star needs n >= 1, got {n}")
    return _labeled(n, [(0, i) for i in range(1, n)], "star", {"n": n})


def petersen() -> LabeledGraph:
    edges = [(i, (i + 1) % 5) for i in range(5)]
    edges += [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    edges += [(i, 5 + i) for i in range(5)]
    return _labeled(10, edges, "petersen", {})


def heawood() -> LabeledGraph:
    """Point-line incidence graph of the Fano plane: points 0-6, lines 7-13."""
    edges = [(p % 7, 7 + i) for i in range(7) for p in (i, i + 1, i + 3)]
    names = [f"p{i}" for i in range(7)] + [f"L{i}" for i in range(7)]
    return _labeled(14, edges, "heawood", {}, names)


# Families from the coloring constructions ---------------------------------------

_GK_CORE_EDGES = ((1, 2), (2, 3), (3, 4), (4, 1))


def g_k(k: int) -> LabeledGraph:
    """The 4-cycle ``1,2,3,4`` with ``k`` private 4-cycles glued on every edge.

    For core edge ``{a, b}`` the i-th private cycle is ``a, (ab)_i, (ba)_i, b``.
    """
    _require(k >= 1, f"g_k needs k >= 1, got {k}")
    names = ["1", "2", "3", "4"]
    edges = [(a - 1, b - 1) for a, b in _GK_CORE_EDGES]
    for i in range(1, k + 1):
        for a, b in _GK_CORE_EDGES:
            ab, ba = len(names), len(names) + 1
            names += [f"({a}{b})_{i}", f"({b}{a})_{i}"]
            edges += [(a - 1, ab), (ab, ba), (ba, b - 1)]
    return _labeled(len(names), edges, "gk", {"k": k}, names)


def g_k_partition(k: int) -> tuple[list[str], list[str]]:
    """The two-class coloring drawn black/white for ``g_k``, as vertex names."""
    black = ["1", "2"]
    for i in range(1, k + 1):
        black += [f"(32)_{i}", f"(41)_{i}", f"(34)_{i}", f"(43)_{i}"]
    white = [x for x in g_k(k).names() if x not in black]
    return black, white


def frog(k: int) -> LabeledGraph:
    """``C_{4k}`` on ``x_1..x_{4k}`` plus the path ``y_2..y_{2k}`` hung from ``x_1``."""
    _require(k >= 2, f"frog graph needs k >= 2, got {k}")
    c = 4 * k
    names = [f"x_{i}" for i in range(1, c + 1)] + [f"y_{j}" for j in range(2, 2 * k + 1)]
    edges = [(i, (i + 1) % c) for i in range(c)]
    edges += [(c + j, c + j + 1) for j in range(2 * k - 2)]
    edges.append((0, c))
    return _labeled(len(names), edges, "frog", {"k": k}, names)


def broom(n: int, k: int) -> LabeledGraph:
    """Path ``v_1..v_p`` (``p = 2k-1``) with ``q = n-p`` leaves on ``v_p``."""
    _require(2 <= k <= n // 2 - 1, f"broom needs 2 <= k <= floor(n/2)-1, got n={n}, k={k}")
    p, q = 2 * k - 1, n - 2 * k + 1
    edges = [(i, i + 1) for i in range(p - 1)] + [(p - 1, p + j) for j in range(q)]
    names = [f"v_{i}" for i in range(1, n + 1)]
    return _labeled(n, edges, "broom", {"n": n, "k": k, "p": p, "q": q}, names)


# Products ---------------------------------------------------------------------

def _pair_names(g: LabeledGraph, h: LabeledGraph):
    gn, hn = g.names(), h.names()
    return [f"({a},{b})" for a in gn for b in hn]


def cartesian_product(g: LabeledGraph, h: LabeledGraph) -> LabeledGraph:
    """Vertex ``(a, b)`` gets id ``a * n(h) + b``."""
    nh = h.n
    edges = [(a * nh + u, a * nh + v) for a in range(g.n) for u, v in h.graph.edges]
    edges += [(u * nh + b, v * nh + b) for u, v in g.graph.edges for b in range(nh)]
    params = {"g": {"family": g.family, **g.params}, "h": {"family": h.family, **h.params}}
    return _labeled(g.n * nh, edges, "cartesian", params, _pair_names(g, h), (g, h))


def strong_product(g: LabeledGraph, h: LabeledGraph) -> LabeledGraph:
    nh = h.n
    edges = list(cartesian_product(g, h).graph.edges)
    for u, v in g.graph.edges:
        for a, b in h.graph.edges:
            edges += [(u * nh + a, v * nh + b), (u * nh + b, v * nh + a)]
    params = {"g": {"family": g.family, **g.params}, "h": {"family": h.family, **h.params}}
    return _labeled(g.n * nh, edges, "strong", params, _pair_names(g, h), (g, h))


def corona_product(g: LabeledGraph, h: LabeledGraph) -> LabeledGraph:
    """``G`` on ids ``0..n(G)-1``; copy ``H^i`` on ``n(G) + i*n(H) + j``."""
    _require(g.n >= 1 and is_connected(g.graph), "corona needs a connected first factor")
    ng, nh = g.n, h.n
    edges = list(g.graph.edges)
    for i in range(ng):
        base = ng + i * nh
        edges += [(base + u, base + v) for u, v in h.graph.edges]
        edges += [(i, base + j) for j in range(nh)]
    gn, hn = g.names(), h.names()
    names = gn + [f"({a},{b})" for a in gn for b in hn]
    params = {"g": {"family": g.family, **g.params}, "h": {"family": h.family, **h.params}}
    return _labeled(ng * (1 + nh), edges, "corona", params, names, (g, h))


def corona_copy(lg: LabeledGraph, i: int) -> list[int]:
    """Ids of the copy of ``H`` attached to vertex ``i`` of the first factor."""
    g, h = lg.factors
    base = g.n + i * h.n
    return list(range(base, base + h.n))


# Families with chromatic number two ------------------------------------------------

def family_a(
    a_r: Graph, a_s: Graph, r: int, s: int, cross_edges: Sequence[tuple[int, int]]
) -> tuple[LabeledGraph, bool]:
    """Join ``A_r`` to ``K_r`` and ``A_s`` to ``K_s``, then add ``A_r``-``A_s`` edges.

    Returns the graph and whether every non-adjacent pair inside ``A_r`` has a
    common neighbour in ``A_s`` (and vice versa). The flag is reported, not
    enforced, so that failing instances can still be built.
    """
    _require(r >= 1 and s >= 1, f"family_a needs r, s >= 1, got {r}, {s}")
    nr, ns = a_r.n, a_s.n
    off_s, off_kr, off_ks = nr, nr + ns, nr + ns + r
    edges = list(a_r.edges)
    edges += [(off_s + u, off_s + v) for u, v in a_s.edges]
    edges += [(off_kr + i, off_kr + j) for i, j in itertools.combinations(range(r), 2)]
    edges += [(off_ks + i, off_ks + j) for i, j in itertools.combinations(range(s), 2)]
    edges += [(u, off_kr + i) for u in range(nr) for i in range(r)]
    edges += [(off_s + u, off_ks + i) for u in range(ns) for i in range(s)]
    cross = 0
    cross_adj_r = [0] * nr
    cross_adj_s = [0] * ns
    for x, y in cross_edges:
        if not (0 <= x < nr and 0 <= y < ns):
            raise GraphError(f"cross edge ({x}, {y}) is not in V(A_r) x V(A_s)")
        edges.append((x, off_s + y))
        cross_adj_r[x] |= 1 << y
        cross_adj_s[y] |= 1 << x
        cross += 1

    def ok(side: Graph, cadj):
        return all(
            side.has_edge(u, v) or cadj[u] & cadj[v]
            for u, v in itertools.combinations(range(side.n), 2)
        )

    valid = ok(a_r, cross_adj_r) and ok(a_s, cross_adj_s)
    names = (
        [f"Ar_{i}" for i in range(nr)]
        + [f"As_{i}" for i in range(ns)]
        + [f"Kr_{i}" for i in range(r)]
        + [f"Ks_{i}" for i in range(s)]
    )
    params = {"r": r, "s": s, "n_ar": nr, "n_as": ns, "cross_edges": cross}
    return _labeled(len(names), edges, "family-a", params, names), valid


def family_a_sides(lg: LabeledGraph) -> tuple[list[int], list[int]]:
    """``V(A_r) + V(K_r)`` and ``V(A_s) + V(K_s)`` as id lists."""
    p = lg.params
    nr, ns, r, s = p["n_ar"], p["n_as"], p["r"], p["s"]
    side_r = list(range(nr)) + list(range(nr + ns, nr + ns + r))
    side_s = list(range(nr, nr + ns)) + list(range(nr + ns + r, nr + ns + r + s))
    return side_r, side_s


@dataclass(frozen=True)
class FamilyBStep:
    side: str  # "B" or "B'"
    pair: tuple[int, int]
    distance: int
    chosen: tuple[int, int]


def family_b(b: Graph, b2: Graph, selector: str = "lex") -> tuple[LabeledGraph, list[FamilyBStep]]:
    """Glue ``B`` (ids ``0..n(B)-1``) and ``B'`` (after it) by distance gadgets.

    For each non-adjacent pair ``x, y`` of one factor at distance ``d`` the
    selector picks ``x', y'`` in the other factor with distance ``d - 2`` and
    the edges ``xx'``, ``yy'`` are added. Distances are those of the factors
    themselves, before any cross edge exists. ``selector="lex"`` takes the
    lexicographically first eligible ordered pair.
    """
    if selector != "lex":
        raise GraphError(f"unknown family_b selector {selector!r}")
    _require(is_connected(b) and is_connected(b2), "family_b factors must be connected")
    _require(abs(diameter(b) - diameter(b2)) <= 2, "family_b needs |diam(B) - diam(B')| <= 2")
    nb = b.n
    log: list[FamilyBStep] = []
    cross = []

    def gadgets(src: Graph, dst: Graph, side: str, src_off: int, dst_off: int):
        ds, dd = all_pairs_distances(src), all_pairs_distances(dst)
        by_distance: dict[int, tuple[int, int]] = {}
        for u in range(dst.n):
            for v in range(dst.n):
                by_distance.setdefault(dd[u][v], (u, v))
        for x, y in itertools.combinations(range(src.n), 2):
            d = ds[x][y]
            if d is UNREACHABLE or d < 2:
                continue
            if d - 2 not in by_distance:
                raise GraphError(
                    f"no pair at distance {d - 2} in the other factor for {side} pair ({x}, {y})"
                )
            xp, yp = by_distance[d - 2]
            log.append(FamilyBStep(side, (x + src_off, y + src_off), d, (xp + dst_off, yp + dst_off)))
            cross.extend([(x + src_off, xp + dst_off), (y + src_off, yp + dst_off)])

    gadgets(b, b2, "B", 0, nb)
    gadgets(b2, b, "B'", nb, 0)
    edges = list(b.edges) + [(nb + u, nb + v) for u, v in b2.edges] + cross
    names = [f"b_{i}" for i in range(nb)] + [f"b'_{i}" for i in range(b2.n)]
    params = {"n_b": nb, "n_b2": b2.n, "selector": selector}
    return _labeled(nb + b2.n, edges, "family-b", params, names), log


def family_b_sides(lg: LabeledGraph) -> tuple[list[int], list[int]]:
    nb, nb2 = lg.params["n_b"], lg.params["n_b2"]
    return list(range(nb)), list(range(nb, nb + nb2))


# Random instances ---------------------------------------------------------------

def random_tree(n: int, seed: int = 0) -> LabeledGraph:
    """Uniform labelled tree decoded from a random Pruefer sequence."""
    _require(n >= 1, f"random_tree needs n >= 1, got {n}")
    rng = random.Random(seed)
    if n <= 2:
        return _labeled(n, [(0, 1)] if n == 2 else [], "random-tree", {"n": n, "seed": seed})
    seq = [rng.randrange(n) for _ in range(n - 2)]
    degree = [1] * n
    for v in seq:
        degree[v] += 1
    edges = []
    for v in seq:
        leaf = min(u for u in range(n) if degree[u] == 1)
        edges.append((leaf, v))
        degree[leaf] -= 1
        degree[v] -= 1
    u, w = [x for x in range(n) if degree[x] == 1]
    edges.append((u, w))
    return _labeled(n, edges, "random-tree", {"n": n, "seed": seed})


def random_connected_graph(n: int, p: float, seed: int = 0, max_tries: int = 1000) -> LabeledGraph:
    """G(n, p) sample, resampled until connected."""
    _require(n >= 1, f"random_connected_graph needs n >= 1, got {n}")
    _require(0 < p <= 1, f"edge probability must lie in (0, 1], got {p}")
    rng = random.Random(seed)
    pairs = list(itertools.combinations(range(n), 2))
    for _ in range(max_tries):
        edges = [e for e in pairs if rng.random() < p]
        g = from_edge_list(n, edges)
        if is_connected(g):
            return _labeled(n, edges, "random-connected", {"n": n, "p": p, "seed": seed})
    raise GraphError(
        f"no connected G({n}, {p}) sample in {max_tries} tries; use a larger p"
    )


def random_graph(n: int, p: float, seed: int = 0) -> Graph:
    """Plain G(n, p) sample, possibly disconnected."""
    rng = random.Random(seed)
    return from_edge_list(n, [e for e in itertools.combinations(range(n), 2) if rng.random() < p])


FAMILIES = (
    "path", "cycle", "complete", "kbip", "star", "petersen", "heawood", "gk", "frog",
    "broom", "cartesian", "strong", "corona", "family-a", "family-b", "random-tree",
    "random-connected",
)
