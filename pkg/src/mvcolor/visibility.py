"""S-visibility, mutual-visibility sets and the exact mutual-visibility number.

All checks run on a per-graph :class:`VisibilityEngine` that precomputes
distance spheres and geodesic intervals as bitmasks. Two vertices ``x, y``
are S-visible when the layered BFS from ``x`` through the interval
``I(x, y)`` minus ``S`` reaches ``y`` in exactly ``d(x, y)`` steps.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from typing import Iterable

from ._budget import Budget, BudgetExceeded
from .graph import (
    UNREACHABLE,
    DistanceMatrix,
    Graph,
    GraphError,
    all_pairs_distances,
    bits,
    degrees,
    is_connected,
    mask_of,
    vertex_set,
)


class ColoringError(GraphError):
    """A proposed coloring is not a partition of the vertex set."""

    def __init__(self, message: str, vertex: int | None = None):
        self.vertex = vertex
        super().__init__(message)


class VisibilityEngine:
    def __init__(self, g: Graph, d: DistanceMatrix | None = None):
        self.g = g
        self.n = n = g.n
        self.adj = g.adj
        self.d = d if d is not None else all_pairs_distances(g)
        dist = self.d.dist
        self.sphere = []
        for x in range(n):
            ecc = max((t for t in dist[x] if t is not UNREACHABLE), default=0)
            sph = [0] * (ecc + 1)
            for w, t in enumerate(dist[x]):
                if t is not UNREACHABLE:
                    sph[t] |= 1 << w
            self.sphere.append(sph)
        self.interior = [[0] * n for _ in range(n)]
        self.through: list[list[tuple[int, int]]] = [[] for _ in range(n)]
        for x, y in itertools.combinations(range(n), 2):
            dxy = dist[x][y]
            if dxy is UNREACHABLE or dxy < 2:
                continue
            m = 0
            for i in range(1, dxy):
                m |= self.sphere[x][i] & self.sphere[y][dxy - i]
            self.interior[x][y] = self.interior[y][x] = m
            for w in bits(m):
                self.through[w].append((x, y))
        deg = degrees(g)[0]
        self.order = sorted(range(n), key=lambda v: (-deg[v], v))
        self._memo: dict[tuple[int, int, int], bool] = {}

    def distance(self, x: int, y: int) -> int:
        dxy = self.d.dist[x][y]
        if dxy is UNREACHABLE:
            raise GraphError(f"vertices {x} and {y} lie in different components")
        return dxy

    def visible(self, x: int, y: int, s: int) -> bool:
        """Is some ``x,y``-geodesic free of ``s`` in its interior?"""
        dxy = self.distance(x, y)
        if dxy <= 1:
            return True
        interior = self.interior[x][y]
        block = s & interior
        if not block:
            return True
        if block == interior:
            return False
        if x > y:
            x, y = y, x
        key = (x, y, block)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        sx, sy, adj = self.sphere[x], self.sphere[y], self.adj
        frontier = 1 << x
        for i in range(1, dxy):
            reach = 0
            for w in bits(frontier):
                reach |= adj[w]
            frontier = reach & sx[i] & sy[dxy - i] & ~block
            if not frontier:
                break
        result = bool(frontier)
        self._memo[key] = result
        return result

    def first_failure(self, s: int) -> tuple[int, int] | None:
        members = bits(s)
        for i, x in enumerate(members):
            for y in members[i + 1:]:
                if not self.visible(x, y, s):
                    return (x, y)
        return None

    def is_mv(self, s: int) -> bool:
        return self.first_failure(s) is None

    def can_add(self, s: int, v: int) -> bool:
        """Is ``s + v`` mutual-visibility, given that ``s`` already is?"""
        t = s | 1 << v
        for a in bits(s):
            if not self.visible(a, v, t):
                return False
        for a, b in self.through[v]:
            if s >> a & 1 and s >> b & 1 and not self.visible(a, b, t):
                return False
        return True

    def max_subset(self, allowed: int, budget: Budget) -> tuple[int, bool]:
        """Largest mutual-visibility set inside ``allowed``; flag is optimality."""
        cands = [v for v in self.order if allowed >> v & 1]
        best = 0
        for v in cands:
            nb = self.adj[v] & allowed
            if nb.bit_count() > best.bit_count():
                best = nb
        if not best and cands:
            best = 1 << cands[0]
        best_size = best.bit_count()

        def extend(cur: int, size: int, cands: list[int]) -> None:
            nonlocal best, best_size
            budget.tick()
            if size > best_size:
                best, best_size = cur, size
            for i, v in enumerate(cands):
                if size + len(cands) - i <= best_size:
                    return
                nxt = cur | 1 << v
                rest = [u for u in cands[i + 1:] if self.can_add(nxt, u)]
                extend(nxt, size + 1, rest)

        try:
            extend(0, 0, cands)
        except BudgetExceeded:
            return best, False
        return best, True


@functools.lru_cache(maxsize=256)
def engine(g: Graph) -> VisibilityEngine:
    return VisibilityEngine(g)


def _engine(g: Graph, d: DistanceMatrix | None) -> VisibilityEngine:
    # distances are a function of g, so a cached engine is always consistent with d
    return engine(g)


@dataclass(frozen=True)
class VisibilityVerdict:
    visible: bool
    witness_length: int | None


@dataclass(frozen=True)
class MuCertificate:
    value: int
    witness: tuple[int, ...]
    optimal: bool
    proof: str  # "exhaustion" or "budget-exhausted"

    def to_json(self) -> dict:
        return {
            "value": self.value,
            "witness": list(self.witness),
            "exact": self.optimal,
            "proof": self.proof,
        }


def _require_connected(g: Graph) -> None:
    if not is_connected(g):
        raise GraphError("graph must be connected")


def is_pair_visible(
    g: Graph, d: DistanceMatrix | None, s: Iterable[int], x: int, y: int
) -> VisibilityVerdict:
    if x == y:
        raise GraphError("visibility is defined for two distinct vertices")
    eng = _engine(g, d)
    dxy = eng.distance(x, y)
    ok = eng.visible(x, y, mask_of(vertex_set(s, g.n)))
    return VisibilityVerdict(ok, dxy if ok else None)


def is_mv_set(
    g: Graph, d: DistanceMatrix | None, s: Iterable[int]
) -> tuple[bool, tuple[int, int] | None]:
    """Check ``s``; on failure also return the lexicographically first bad pair."""
    _require_connected(g)
    fail = _engine(g, d).first_failure(mask_of(vertex_set(s, g.n)))
    return fail is None, fail


@dataclass(frozen=True)
class ClassReport:
    index: int
    members: tuple[int, ...]
    valid: bool
    failing_pair: tuple[int, int] | None


@dataclass(frozen=True)
class ColoringReport:
    valid: bool
    classes: tuple[ClassReport, ...]

    @property
    def failing_classes(self) -> list[int]:
        return [c.index for c in self.classes if not c.valid]


def check_partition(n: int, classes: Iterable[Iterable[int]]) -> list[tuple[int, ...]]:
    seen: dict[int, int] = {}
    out = []
    for i, cls in enumerate(classes):
        members = [int(v) for v in cls]
        if not members:
            raise ColoringError(f"color class {i} is empty")
        for v in members:
            if not 0 <= v < n:
                raise ColoringError(f"vertex {v} of class {i} is outside 0..{n - 1}", v)
            if v in seen:
                raise ColoringError(f"vertex {v} appears in classes {seen[v]} and {i}", v)
            seen[v] = i
        out.append(tuple(sorted(members)))
    for v in range(n):
        if v not in seen:
            raise ColoringError(f"vertex {v} is not colored", v)
    return out


def verify_coloring(g: Graph, d: DistanceMatrix | None, coloring) -> ColoringReport:
    """Check that every class of ``coloring`` is a mutual-visibility set of ``g``.

    ``coloring`` may be a :class:`~mvcolor.chimu.Coloring` or any iterable of
    vertex collections. Components are handled independently, so classes may
    not mix components of a disconnected graph.
    """
    classes = getattr(coloring, "classes", coloring)
    classes = check_partition(g.n, classes)
    eng = _engine(g, d)
    reports = []
    for i, members in enumerate(classes):
        try:
            fail = eng.first_failure(mask_of(members))
        except GraphError:
            fail = next(
                (x, y)
                for x, y in itertools.combinations(members, 2)
                if eng.d.dist[x][y] is UNREACHABLE
            )
        reports.append(ClassReport(i, members, fail is None, fail))
    return ColoringReport(all(r.valid for r in reports), tuple(reports))


def max_mv_subset(
    g: Graph, d: DistanceMatrix | None, allowed: Iterable[int], budget=None
) -> MuCertificate:
    """Largest mutual-visibility set of ``g`` among the ``allowed`` vertices.

    Geodesics may pass through vertices outside ``allowed``.
    """
    _require_connected(g)
    allowed = vertex_set(allowed, g.n)
    if not allowed:
        raise GraphError("allowed vertex set must be non-empty")
    best, optimal = _engine(g, d).max_subset(mask_of(allowed), Budget.of(budget))
    return MuCertificate(best.bit_count(), tuple(bits(best)), optimal,
                         "exhaustion" if optimal else "budget-exhausted")


def mu_exact(g: Graph, d: DistanceMatrix | None = None, budget=None) -> MuCertificate:
    """Mutual-visibility number with a witness set, by branch and bound."""
    _require_connected(g)
    if g.n == 0:
        return MuCertificate(0, (), True, "exhaustion")
    return max_mv_subset(g, d, range(g.n), budget)
