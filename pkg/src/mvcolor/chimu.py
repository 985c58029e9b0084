"""Mutual-visibility colorings: exact chromatic number, greedy, and constructions."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import networkx as nx

from ._budget import Budget, BudgetExceeded
from .graph import (
    Graph,
    GraphError,
    all_pairs_distances,
    bits,
    components,
    diameter,
    induced_subgraph,
    is_complete,
    is_connected,
    is_geodetic,
    mask_of,
    shortest_path_counts,
    vertex_set,
)
from .visibility import (
    check_partition,
    engine,
    is_mv_set,
    max_mv_subset,
    mu_exact,
    verify_coloring,
)

PROVENANCES = ("n-over-mu", "geodetic-diameter", "unique-geodesic-path", "exhaustive-search")


class ScriptError(GraphError):
    """A scripted greedy round is not a legal greedy choice."""

    def __init__(self, message: str, round_no: int):
        self.round = round_no
        super().__init__(f"round {round_no}: {message}")


@dataclass(frozen=True)
class Coloring:
    classes: tuple[tuple[int, ...], ...]
    class_of: tuple[int, ...] = field(repr=False)

    @classmethod
    def from_classes(cls, n: int, classes: Iterable[Iterable[int]]) -> "Coloring":
        parts = check_partition(n, classes)
        class_of = [0] * n
        for i, members in enumerate(parts):
            for v in members:
                class_of[v] = i
        return cls(tuple(parts), tuple(class_of))

    @property
    def n(self) -> int:
        return len(self.class_of)

    def __len__(self) -> int:
        return len(self.classes)


@dataclass(frozen=True)
class LowerBound:
    amount: int
    provenance: str


@dataclass(frozen=True)
class ChimuCertificate:
    value: int
    coloring: Coloring
    lower_bound: LowerBound
    exact: bool

    def to_json(self, valid: bool = True) -> dict:
        return {
            "n": self.coloring.n,
            "classes": [list(c) for c in self.coloring.classes],
            "valid": valid,
            "value": self.value,
            "exact": self.exact,
            "lower_bound": {
                "amount": self.lower_bound.amount,
                "provenance": self.lower_bound.provenance,
            },
        }


@dataclass(frozen=True)
class GreedyTrace:
    rounds: tuple[tuple[tuple[int, ...], int], ...]
    strategy: str
    total_colors: int
    optimal_rounds: bool = True  # False if some round hit the budget

    def coloring(self, n: int) -> Coloring:
        return Coloring.from_classes(n, [s for s, _ in self.rounds])

    def to_json(self) -> dict:
        return {
            "strategy": self.strategy,
            "total_colors": self.total_colors,
            "rounds": [{"color": c, "set": list(s)} for s, c in self.rounds],
            "exact_rounds": self.optimal_rounds,
        }


# Lower bounds -------------------------------------------------------------------

def unique_geodesic_bound(g: Graph) -> int:
    """``ceil(L/2)`` for the longest unique geodesic, ``L`` counted in vertices.

    No three vertices of a unique geodesic can share a color, since subpaths
    of a unique geodesic are unique geodesics as well.
    """
    d = all_pairs_distances(g)
    best = 1 if g.n else 0
    for s in range(g.n):
        sigma = shortest_path_counts(g, s, d)
        for t in range(s + 1, g.n):
            if sigma[t] == 1:
                best = max(best, math.ceil((d[s][t] + 1) / 2))
    return best


def _lower_bound(g: Graph, mu: int | None) -> LowerBound:
    cands = [LowerBound(1, "n-over-mu")]
    if mu:
        cands.append(LowerBound(math.ceil(g.n / mu), "n-over-mu"))
    if g.n > 1:
        amount = unique_geodesic_bound(g)
        geo = amount == math.ceil((diameter(g) + 1) / 2) and is_geodetic(g)
        cands.append(LowerBound(amount, "geodetic-diameter" if geo else "unique-geodesic-path"))
    return max(cands, key=lambda b: b.amount)


# Exact search -------------------------------------------------------------------

def _color_connected(g: Graph, budget: Budget) -> ChimuCertificate:
    n = g.n
    if is_complete(g):
        return ChimuCertificate(1, Coloring.from_classes(n, [range(n)]), LowerBound(1, "n-over-mu"), True)
    mu = mu_exact(g, budget=budget)
    lb = _lower_bound(g, mu.value if mu.optimal else None)
    trace = greedy_coloring(g, budget=budget)
    best = [mask_of(s) for s, _ in trace.rounds]
    # lb only uses mu when mu is certified, so a finished search is a proof either way
    exact = True
    if len(best) > lb.amount:
        eng = engine(g)
        order = eng.order
        mu_val = mu.value if mu.optimal else n
        classes: list[int] = []

        def assign(i: int) -> None:
            nonlocal best
            budget.tick()
            if i == n:
                best = list(classes)
                if len(best) <= lb.amount:
                    raise _Done
                return
            k = len(classes)
            v = order[i]
            orphans = 0
            for u in order[i + 1:]:
                if not any(eng.can_add(c, u) for c in classes):
                    orphans += 1
            fits = [c for c in range(k) if eng.can_add(classes[c], v)]
            if not fits:
                orphans += 1
            if k + math.ceil(orphans / mu_val) >= len(best):
                return
            for c in fits:
                classes[c] |= 1 << v
                assign(i + 1)
                classes[c] &= ~(1 << v)
            if k + 1 < len(best):
                classes.append(1 << v)
                assign(i + 1)
                classes.pop()

        try:
            assign(0)
            if len(best) > lb.amount:
                lb = LowerBound(len(best), "exhaustive-search")
        except _Done:
            pass
        except BudgetExceeded:
            exact = False
    coloring = Coloring.from_classes(n, [bits(c) for c in best])
    return ChimuCertificate(len(best), coloring, lb, exact and lb.amount == len(best))


class _Done(Exception):
    pass


def chimu_exact(g: Graph, budget=None) -> ChimuCertificate:
    """Exact mutual-visibility chromatic number with a verified coloring.

    Disconnected graphs are solved per component and the values summed.
    If the budget runs out the best coloring found so far is returned with
    ``exact=False``.
    """
    budget = Budget.of(budget)
    if g.n == 0:
        return ChimuCertificate(0, Coloring((), ()), LowerBound(0, "n-over-mu"), True)
    comps = components(g)
    if len(comps) == 1:
        return _color_connected(g, budget)
    classes, value, amount, provs, exact = [], 0, 0, [], True
    for comp in comps:
        sub, index = induced_subgraph(g, comp)
        cert = _color_connected(sub, budget)
        classes += [[index[v] for v in cls] for cls in cert.coloring.classes]
        value += cert.value
        amount += cert.lower_bound.amount
        provs.append(cert.lower_bound.provenance)
        exact &= cert.exact
    prov = ",".join(sorted(set(provs)))
    return ChimuCertificate(value, Coloring.from_classes(g.n, classes), LowerBound(amount, prov), exact)


# Greedy -------------------------------------------------------------------------

def greedy_coloring(
    g: Graph,
    selector: str = "solver",
    script: Sequence[Iterable[int]] | None = None,
    budget=None,
) -> GreedyTrace:
    """Repeatedly color a largest mutual-visibility set among uncolored vertices.

    With ``selector="scripted"`` the first rounds use the sets in ``script``;
    each is checked to be a maximum mutual-visibility set among the vertices
    still uncolored. Once the script runs out the solver picks the rest.
    """
    if selector not in ("solver", "scripted"):
        raise GraphError(f"unknown greedy selector {selector!r}")
    if not is_connected(g):
        raise GraphError("greedy coloring needs a connected graph")
    if selector == "scripted" and script is None:
        raise GraphError("scripted greedy needs a script")
    budget = Budget.of(budget)
    script = list(script or []) if selector == "scripted" else []
    uncolored = set(range(g.n))
    rounds = []
    all_optimal = True
    c = 1
    while uncolored:
        best = max_mv_subset(g, None, uncolored, budget)
        if c <= len(script):
            chosen = vertex_set(script[c - 1], g.n)
            outside = [v for v in chosen if v not in uncolored]
            if outside or not chosen:
                raise ScriptError(f"vertices {outside or '[]'} are not uncolored", c)
            ok, pair = is_mv_set(g, None, chosen)
            if not ok:
                raise ScriptError(f"set is not mutual-visibility (pair {pair} blocked)", c)
            if len(chosen) < best.value:
                raise ScriptError(
                    f"set has {len(chosen)} vertices but a mutual-visibility set of "
                    f"{best.value} uncolored vertices exists",
                    c,
                )
        else:
            chosen = best.witness
            all_optimal &= best.optimal
        rounds.append((tuple(chosen), c))
        uncolored.difference_update(chosen)
        c += 1
    return GreedyTrace(tuple(rounds), selector, len(rounds), all_optimal)


# Constructions ------------------------------------------------------------------

def is_block_graph(g: Graph) -> bool:
    """Connected, and every biconnected component is a clique."""
    if not is_connected(g):
        return False
    if g.n <= 2:
        return True
    h = nx.Graph(g.edges)
    for block in nx.biconnected_components(h):
        k = len(block)
        if h.subgraph(block).number_of_edges() != k * (k - 1) // 2:
            return False
    return True


def tree_block_coloring(g: Graph) -> Coloring:
    """Peel off the simplicial vertices, one color per layer."""
    if not is_block_graph(g):
        raise GraphError("tree_block_coloring needs a connected block graph")
    remaining = (1 << g.n) - 1
    classes = []
    while remaining:
        layer = []
        for v in bits(remaining):
            nb = g.adj[v] & remaining
            if all(nb & ~g.adj[u] & ~(1 << u) == 0 for u in bits(nb)):
                layer.append(v)
        classes.append(layer)
        remaining &= ~mask_of(layer)
    return Coloring.from_classes(g.n, classes)


def pad_with_pairs(g: Graph, seed_set: Iterable[int]) -> Coloring:
    """The seed set as one class, the remaining vertices paired off in id order."""
    seed = vertex_set(seed_set, g.n)
    ok, pair = is_mv_set(g, None, seed)
    if not ok:
        raise GraphError(f"seed set is not mutual-visibility: pair {pair} is blocked")
    rest = [v for v in range(g.n) if v not in set(seed)]
    classes = ([list(seed)] if seed else []) + [rest[i:i + 2] for i in range(0, len(rest), 2)]
    return Coloring.from_classes(g.n, classes)


def _norm_edge(e) -> tuple[int, int]:
    u, v = int(e[0]), int(e[1])
    return (u, v) if u < v else (v, u)


def has_c4(n: int, edges: Iterable[tuple[int, int]]) -> bool:
    adj = [0] * n
    for u, v in edges:
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return any((adj[u] & adj[v]).bit_count() >= 2 for u in range(n) for v in range(u + 1, n))


def _span_has_c4(g: Graph, span: int) -> bool:
    """Does the subgraph of ``g`` induced by ``span`` contain a 4-cycle?"""
    vs = bits(span)
    return any(
        (g.adj[u] & g.adj[v] & span).bit_count() >= 2
        for i, u in enumerate(vs) for v in vs[i + 1:]
    )


def c4_free_edge_partition(g: Graph) -> list[list[tuple[int, int]]]:
    """Greedy first-fit split of ``E(g)`` into C4-free parts.

    An edge joins the first part whose vertex span, with the edge's ends
    added, still induces a C4-free subgraph of ``g``. That is stronger than
    the part itself being C4-free, and it is what makes the classes built by
    :func:`diam2_c4_coloring` mutual-visibility sets. No bound on the
    number of parts is guaranteed.
    """
    parts: list[list[tuple[int, int]]] = []
    spans: list[int] = []
    for u, v in g.edges:
        grown = (1 << u) | (1 << v)
        for i, span in enumerate(spans):
            if (span | grown) == span or not _span_has_c4(g, span | grown):
                break
        else:
            i = len(parts)
            parts.append([])
            spans.append(0)
        parts[i].append((u, v))
        spans[i] |= grown
    return parts


def diam2_c4_coloring(g: Graph, edge_partition: Sequence[Iterable[tuple[int, int]]]) -> Coloring:
    """Vertex ``v`` joins class ``min{i : v is incident to an edge of part i}``.

    Each part must be C4-free and its vertex span must induce a C4-free
    subgraph of ``g``. A merely C4-free part is not enough: a spanning path
    is C4-free yet would put every vertex in one class.
    """
    if diameter(g) != 2:
        raise GraphError("diam2_c4_coloring needs a graph of diameter 2")
    d = all_pairs_distances(g)
    for u in range(g.n):
        for v in range(u + 1, g.n):
            if d[u][v] == 2 and (g.adj[u] & g.adj[v]).bit_count() < 2:
                raise GraphError(f"distance-2 pair ({u}, {v}) lies on no 4-cycle")
    parts = [[_norm_edge(e) for e in part] for part in edge_partition]
    owner: dict[tuple[int, int], int] = {}
    for i, part in enumerate(parts):
        for e in part:
            if e in owner:
                raise GraphError(f"edge {e} appears in parts {owner[e]} and {i}")
            if not g.has_edge(*e):
                raise GraphError(f"{e} is not an edge of the graph")
            owner[e] = i
    missing = [e for e in g.edges if e not in owner]
    if missing:
        raise GraphError(f"edge {missing[0]} is not covered by the partition")
    for i, part in enumerate(parts):
        if has_c4(g.n, part):
            raise GraphError(f"edge part {i} contains a 4-cycle")
        span = mask_of([x for e in part for x in e])
        if _span_has_c4(g, span):
            raise GraphError(f"vertices of edge part {i} induce a 4-cycle in the graph")
    first = [len(parts)] * g.n
    for i, part in enumerate(parts):
        for u, v in part:
            first[u] = min(first[u], i)
            first[v] = min(first[v], i)
    used = sorted(set(first))
    return Coloring.from_classes(g.n, [[v for v in range(g.n) if first[v] == i] for i in used])


def frog_coloring(k: int) -> Coloring:
    """``{x_1, x_{2k+1}}`` and ``{y_j, x_j, x_{4k-(j-2)}}`` for ``j = 2..2k``."""
    if k < 2:
        raise GraphError(f"frog coloring needs k >= 2, got {k}")
    c = 4 * k
    x = lambda i: i - 1  # noqa: E731
    y = lambda j: c + j - 2  # noqa: E731
    classes = [[x(1), x(2 * k + 1)]]
    classes += [[y(j), x(j), x(c - (j - 2))] for j in range(2, 2 * k + 1)]
    return Coloring.from_classes(6 * k - 1, classes)


def corona_lift(g_coloring, g: Graph, h: Graph) -> Coloring:
    """Extend a coloring of ``G`` to ``G ⊙ H`` by one extra class of all copy vertices.

    Uses the id layout of :func:`mvcolor.generators.corona_product`. For a
    complete ``G`` the two classes ``V(G)`` and the copies are returned.
    """
    if g.n < 2 or not is_connected(g):
        raise GraphError("corona_lift needs a connected first factor with at least 2 vertices")
    total = g.n * (1 + h.n)
    copies = list(range(g.n, total))
    if is_complete(g):
        classes = [list(range(g.n))] + ([copies] if copies else [])
        return Coloring.from_classes(total, classes)
    report = verify_coloring(g, None, g_coloring)
    if not report.valid:
        raise GraphError(f"coloring of the first factor is invalid (classes {report.failing_classes})")
    classes = [list(c) for c in getattr(g_coloring, "classes", g_coloring)]
    if copies:
        classes.append(copies)
    return Coloring.from_classes(total, classes)
