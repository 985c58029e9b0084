"""Simple undirected graphs on vertices ``0..n-1`` and their metric properties.

Adjacency is kept as one integer bitmask per vertex; the visibility engine
does its set algebra directly on these masks.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

#: Distance between vertices in different components.
UNREACHABLE = None


class GraphError(ValueError):
    """Raised for malformed graph input or unmet graph preconditions."""


class EdgeListError(GraphError):
    """Parse failure in the edge-list text format; carries the 1-based line."""

    def __init__(self, message: str, lineno: int | None = None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


@dataclass(frozen=True)
class Graph:
    n: int
    edges: tuple[tuple[int, int], ...]
    adj: tuple[int, ...] = field(repr=False, compare=False)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def neighbors(self, v: int) -> list[int]:
        return bits(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def __hash__(self):
        return hash((self.n, self.edges))


def bits(mask: int) -> list[int]:
    """Indices of the set bits of ``mask`` in increasing order."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def from_edge_list(n: int, edges: Iterable[Sequence[int]]) -> Graph:
    """Build a canonical graph; duplicate edges collapse, order is irrelevant."""
    if n < 0:
        raise GraphError(f"vertex count must be non-negative, got {n}")
    seen = set()
    adj = [0] * n
    for e in edges:
        u, v = int(e[0]), int(e[1])
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u}, {v}) has a vertex outside 0..{n - 1}")
        if u == v:
            raise GraphError(f"self-loop ({u}, {v}) is not allowed")
        if u > v:
            u, v = v, u
        if (u, v) in seen:
            continue
        seen.add((u, v))
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return Graph(n, tuple(sorted(seen)), tuple(adj))


def vertex_set(vertices: Iterable[int], n: int) -> tuple[int, ...]:
    """Normalise to a strictly increasing tuple of ids in ``0..n-1``."""
    vs = tuple(sorted(set(int(v) for v in vertices)))
    if vs and (vs[0] < 0 or vs[-1] >= n):
        raise GraphError(f"vertex set {vs} is not contained in 0..{n - 1}")
    return vs


@dataclass(frozen=True)
class DistanceMatrix:
    """Hop distances; ``dist[u][v]`` is :data:`UNREACHABLE` across components."""

    dist: tuple[tuple[int | None, ...], ...]

    def __getitem__(self, u):
        return self.dist[u]

    def __len__(self):
        return len(self.dist)


def bfs_distances(g: Graph, source: int) -> list[int | None]:
    dist: list[int | None] = [UNREACHABLE] * g.n
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        du = dist[u] + 1
        for w in g.neighbors(u):
            if dist[w] is UNREACHABLE:
                dist[w] = du
                queue.append(w)
    return dist


def all_pairs_distances(g: Graph) -> DistanceMatrix:
    return DistanceMatrix(tuple(tuple(bfs_distances(g, s)) for s in range(g.n)))


def _eccentricities(g: Graph, d: DistanceMatrix | None):
    d = d if d is not None else all_pairs_distances(g)
    ecc = []
    for row in d.dist:
        if any(x is UNREACHABLE for x in row):
            return None
        ecc.append(max(row))
    return ecc


def diameter(g: Graph, d: DistanceMatrix | None = None) -> float:
    """Maximum eccentricity, ``math.inf`` when disconnected."""
    if g.n == 0:
        return 0
    ecc = _eccentricities(g, d)
    return math.inf if ecc is None else max(ecc)


def radius(g: Graph, d: DistanceMatrix | None = None) -> float:
    if g.n == 0:
        return 0
    ecc = _eccentricities(g, d)
    return math.inf if ecc is None else min(ecc)


def girth(g: Graph) -> float:
    """Length of a shortest cycle, ``math.inf`` for forests."""
    best = math.inf
    for s in range(g.n):
        dist = {s: 0}
        parent = {s: -1}
        queue = deque([s])
        while queue:
            u = queue.popleft()
            if 2 * dist[u] + 1 >= best:
                break
            for w in g.neighbors(u):
                if w not in dist:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
                elif parent[u] != w:
                    best = min(best, dist[u] + dist[w] + 1)
    return best


def is_connected(g: Graph) -> bool:
    if g.n <= 1:
        return True
    return all(x is not UNREACHABLE for x in bfs_distances(g, 0))


def components(g: Graph) -> list[tuple[int, ...]]:
    """Vertex sets of the connected components, ordered by smallest member."""
    seen = [False] * g.n
    out = []
    for s in range(g.n):
        if seen[s]:
            continue
        comp = [v for v, x in enumerate(bfs_distances(g, s)) if x is not UNREACHABLE]
        for v in comp:
            seen[v] = True
        out.append(tuple(comp))
    return out


def shortest_path_counts(g: Graph, source: int, d: DistanceMatrix | None = None) -> list[int]:
    """Number of shortest paths from ``source`` to every vertex (0 if unreachable)."""
    row = d[source] if d is not None else bfs_distances(g, source)
    order = sorted((x, v) for v, x in enumerate(row) if x is not UNREACHABLE)
    sigma = [0] * g.n
    sigma[source] = 1
    for dv, v in order:
        if v == source:
            continue
        sigma[v] = sum(sigma[u] for u in g.neighbors(v) if row[u] == dv - 1)
    return sigma


def is_geodetic(g: Graph, d: DistanceMatrix | None = None) -> bool:
    """True iff every pair of vertices has exactly one shortest path."""
    if not is_connected(g):
        raise GraphError("geodeticity is only defined here for connected graphs")
    d = d if d is not None else all_pairs_distances(g)
    return all(c == 1 for s in range(g.n) for c in shortest_path_counts(g, s, d))


def complement(g: Graph) -> Graph:
    full = (1 << g.n) - 1
    edges = [(u, v) for u in range(g.n) for v in bits(full & ~g.adj[u] & ~(1 << u)) if u < v]
    return from_edge_list(g.n, edges)


def induced_subgraph(g: Graph, s: Iterable[int]) -> tuple[Graph, tuple[int, ...]]:
    """Subgraph induced by ``s``; the index map sends new ids to original ids."""
    index_map = vertex_set(s, g.n)
    new_id = {v: i for i, v in enumerate(index_map)}
    edges = [(new_id[u], new_id[v]) for u, v in g.edges if u in new_id and v in new_id]
    return from_edge_list(len(index_map), edges), index_map


def degrees(g: Graph) -> tuple[list[int], int, int]:
    """Per-vertex degrees together with the maximum and minimum degree."""
    deg = [a.bit_count() for a in g.adj]
    if not deg:
        return deg, 0, 0
    return deg, max(deg), min(deg)


def is_complete(g: Graph) -> bool:
    return g.edge_count == g.n * (g.n - 1) // 2


def disjoint_union(*graphs: Graph) -> Graph:
    edges, offset = [], 0
    for h in graphs:
        edges.extend((u + offset, v + offset) for u, v in h.edges)
        offset += h.n
    return from_edge_list(offset, edges)


# Edge-list text format ------------------------------------------------------

def parse_edge_list(text: str) -> Graph:
    lines = [(i, ln.strip()) for i, ln in enumerate(text.splitlines(), start=1)]
    lines = [(i, ln) for i, ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise EdgeListError("missing '<n> <m>' header", 1)
    lineno, header = lines[0]
    parts = header.split()
    if len(parts) != 2 or not all(p.isdigit() for p in parts):
        raise EdgeListError(f"expected '<n> <m>', got {header!r}", lineno)
    n, m = int(parts[0]), int(parts[1])
    body = lines[1:]
    if len(body) != m:
        where = body[m][0] if len(body) > m else (body[-1][0] if body else lineno) + 1
        raise EdgeListError(f"header declares {m} edges but {len(body)} follow", where)
    edges = []
    for lineno, ln in body:
        parts = ln.split()
        if len(parts) != 2 or not all(p.isdigit() for p in parts):
            raise EdgeListError(f"expected '<u> <v>', got {ln!r}", lineno)
        u, v = int(parts[0]), int(parts[1])
        if u >= n or v >= n:
            raise EdgeListError(f"vertex id out of range 0..{n - 1}", lineno)
        if u == v:
            raise EdgeListError(f"self-loop on vertex {u}", lineno)
        edges.append((u, v))
    return from_edge_list(n, edges)


def format_edge_list(g: Graph, comment: str | None = None) -> str:
    out = []
    if comment:
        out.extend(f"# {c}" for c in comment.splitlines())
    out.append(f"{g.n} {g.edge_count}")
    out.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(out) + "\n"


def read_edge_list(path) -> Graph:
    with open(path) as fh:
        return parse_edge_list(fh.read())


def write_edge_list(g: Graph, path, comment: str | None = None) -> None:
    with open(path, "w") as fh:
        fh.write(format_edge_list(g, comment))
