"""Closed-form bounds on the mutual-visibility chromatic number, checked against exact values."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any

from ._budget import Budget, BudgetExceeded
from .chimu import chimu_exact, is_block_graph
from .generators import LabeledGraph
from .graph import (
    Graph,
    GraphError,
    all_pairs_distances,
    bits,
    complement,
    degrees,
    diameter,
    girth,
    is_complete,
    is_connected,
    is_geodetic,
    radius,
)
from .visibility import mu_exact


# Chromatic number ----------------------------------------------------------------

@dataclass(frozen=True)
class ChromaticNumber:
    value: int
    coloring: tuple[int, ...]  # color per vertex
    exact: bool


def _greedy_clique(g: Graph) -> int:
    best = 0
    for v in range(g.n):
        clique, cand = 1, g.adj[v]
        while cand:
            u = max(bits(cand), key=lambda w: (g.adj[w] & cand).bit_count())
            clique += 1
            cand &= g.adj[u]
        best = max(best, clique)
    return best


def chromatic_number_exact(g: Graph, budget=None) -> ChromaticNumber:
    """Proper-coloring chromatic number by DSATUR branch and bound."""
    n = g.n
    if n == 0:
        return ChromaticNumber(0, (), True)
    budget = Budget.of(budget)
    lower = _greedy_clique(g)
    colors = [-1] * n
    best = list(range(n))
    best_k = n

    def pick() -> int:
        top, key = -1, None
        for v in range(n):
            if colors[v] >= 0:
                continue
            sat = len({colors[u] for u in bits(g.adj[v]) if colors[u] >= 0})
            k = (sat, g.adj[v].bit_count(), -v)
            if key is None or k > key:
                top, key = v, k
        return top

    def solve(done: int, used: int) -> None:
        nonlocal best, best_k
        budget.tick()
        if done == n:
            best, best_k = list(colors), used
            if best_k <= lower:
                raise _Found
            return
        v = pick()
        taken = {colors[u] for u in bits(g.adj[v])}
        for c in range(min(used + 1, best_k - 1)):
            if c in taken:
                continue
            colors[v] = c
            solve(done + 1, max(used, c + 1))
            colors[v] = -1

    exact = True
    try:
        solve(0, 0)
    except _Found:
        pass
    except BudgetExceeded:
        exact = False
    return ChromaticNumber(best_k, tuple(best), exact)


class _Found(Exception):
    pass


# Zarankiewicz numbers --------------------------------------------------------------

def zarankiewicz_z22(m: int, n: int) -> int:
    """Most 1s in an ``m x n`` 0/1 matrix with no all-ones ``2 x 2`` submatrix.

    Rows are column bitmasks; two rows may share at most one column. Rows are
    chosen in a fixed order (by weight, then value) with repetition, since row
    permutations do not change the count.
    """
    if not (1 <= m <= 5 and 1 <= n <= 5):
        raise GraphError(f"zarankiewicz_z22 supports 1 <= m, n <= 5, got {m}, {n}")
    pop = [x.bit_count() for x in range(1 << n)]
    masks = sorted(range(1 << n), key=lambda x: (-pop[x], -x))
    best = 0

    def rec(rows: list[int], start: int, total: int) -> None:
        nonlocal best
        best = max(best, total)
        left = m - len(rows)
        if not left:
            return
        for i in range(start, len(masks)):
            r = masks[i]
            if total + left * pop[r] <= best:
                return
            if any((r & q).bit_count() > 1 for q in rows):
                continue
            rows.append(r)
            rec(rows, i, total + pop[r])
            rows.pop()

    rec([], 0, 0)
    return best


# Audit -----------------------------------------------------------------------------

@dataclass
class BoundEntry:
    id: str
    applicable: bool
    value: int | None = None
    satisfied: bool | None = None
    reason: str | None = None

    def to_json(self) -> dict:
        out: dict[str, Any] = {
            "id": self.id,
            "applicable": self.applicable,
            "value": self.value,
            "satisfied": self.satisfied,
        }
        if self.reason:
            out["reason"] = self.reason
        return out


@dataclass
class BoundReport:
    graph: str
    exact: dict[str, Any]
    bounds: list[BoundEntry] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def violations(self) -> list[BoundEntry]:
        return [b for b in self.bounds if b.applicable and not b.satisfied]

    def entry(self, bound_id: str) -> BoundEntry:
        return next(b for b in self.bounds if b.id == bound_id)

    def to_json(self) -> dict:
        return {
            "graph": self.graph,
            "exact": self.exact,
            "bounds": [b.to_json() for b in self.bounds],
            "notes": list(self.notes),
        }


NG_COROLLARY_NOTE = (
    "nordhaus-gaddum-corollary: ceil((n+5)/2) is checked as written; deriving it from "
    "the first Nordhaus-Gaddum bound relies on mu(G) >= Delta(G), not chimu(G) >= Delta(G)."
)


def _ceil_half(x: int) -> int:
    return -(-x // 2)


def _finite(x):
    return None if x == math.inf else x


def _complete_params(p: dict) -> int | None:
    return p.get("n") if p.get("family") == "complete" else None


def audit(g, budget=None, graph_id: str | None = None) -> BoundReport:
    """Exact mu and chi_mu of a connected graph, then every applicable bound.

    ``g`` may be a :class:`LabeledGraph`; its family tag enables the
    Zarankiewicz identity (Cartesian products of complete graphs) and the
    corona sandwich.
    """
    lg = g if isinstance(g, LabeledGraph) else None
    g = lg.graph if lg else g
    if not is_connected(g) or g.n == 0:
        raise GraphError("audit needs a connected graph (component sums do not obey these bounds)")
    budget = Budget.of(budget)
    graph_id = graph_id or (f"{lg.family}{lg.params}" if lg else f"graph(n={g.n},m={g.edge_count})")

    n, m = g.n, g.edge_count
    d = all_pairs_distances(g)
    _, dmax, dmin = degrees(g)
    diam, rad, gir = diameter(g, d), radius(g, d), girth(g)
    geodetic = is_geodetic(g, d)
    block = is_block_graph(g)
    tree = m == n - 1
    complete = is_complete(g)

    mu = mu_exact(g, d, budget)
    cm = chimu_exact(g, budget)
    certified = mu.optimal and cm.exact
    chi = chromatic_number_exact(g, budget) if diam == 2 else None
    gbar = complement(g)
    cbar_connected = n >= 2 and is_connected(gbar)
    cbar = chimu_exact(gbar, budget) if cbar_connected else None

    exact = {
        "n": n, "m": m, "mu": mu.value, "chimu": cm.value,
        "chi": chi.value if chi else None,
        "max_degree": dmax, "min_degree": dmin,
        "diameter": diam, "radius": rad, "girth": _finite(gir),
        "geodetic": geodetic, "block_graph": block,
        "chimu_complement": cbar.value if cbar else None,
        "certified": certified,
    }
    report = BoundReport(graph_id, exact)
    add = report.bounds.append
    x, mv = cm.value, mu.value

    def check(bid, applicable, value, ok, reason=None):
        if applicable and not certified:
            add(BoundEntry(bid, False, value, None, "budget exhausted before exact values"))
        elif applicable:
            add(BoundEntry(bid, True, value, bool(ok)))
        else:
            add(BoundEntry(bid, False, value, None, reason))

    lo = math.ceil(n / mv)
    check("n-over-mu", True, lo, x >= lo)
    if chi is not None and not chi.exact:
        add(BoundEntry("diam2-chi", False, chi.value, None, "chromatic number not certified"))
    else:
        check("diam2-chi", diam == 2, chi.value if chi else None,
              chi is not None and x <= chi.value, "diameter is not 2")
    geo_lo = math.ceil((diam + 1) / 2)
    check("geodetic-diameter", geodetic, geo_lo, x >= geo_lo, "not geodetic")
    check("block-graph-equality", block, geo_lo, x == geo_lo, "not a block graph")
    tree_val = rad + 1 if diam % 2 == 0 else rad
    check("tree-formula", tree, tree_val, x == tree_val, "not a tree")
    check("n-minus-mu", True, _ceil_half(n - mv + 2), x <= _ceil_half(n - mv + 2))
    check("n-minus-delta", True, _ceil_half(n - dmax + 2), x <= _ceil_half(n - dmax + 2))
    check("dominating-vertex", dmax == n - 1 and not complete, 2, x == 2,
          "no dominating vertex or graph complete")
    odd_path = tree and dmax <= 2 and n % 2 == 1
    lhs = n % 2 == 1 and x == (n + 1) // 2
    check("odd-path", True, _ceil_half(n), lhs == odd_path)
    regular = dmax == dmin
    check("regular-girth6", regular and dmax >= 2 and gir >= 6,
          _ceil_half(n - dmax * dmax + 4), x <= _ceil_half(n - dmax * dmax + 4),
          "not r-regular (r >= 2) with girth >= 6")
    check("complete-iff-one", True, 1, (x == 1) == complete)

    ng_reason = "complement is disconnected"
    if cbar is not None and not cbar.exact:
        ng_reason, cbar = "complement value not certified", None
    total = x + cbar.value if cbar else None
    ng = _ceil_half(n - mv + 2) + _ceil_half(dmin + 3)
    check("nordhaus-gaddum", cbar is not None, ng, total is not None and total <= ng, ng_reason)
    ngc = _ceil_half(n + 5)
    check("nordhaus-gaddum-corollary", cbar is not None, ngc,
          total is not None and total <= ngc, ng_reason)
    if cbar is not None:
        report.notes.append(NG_COROLLARY_NOTE)

    if lg and lg.family == "cartesian":
        a, b = (_complete_params(lg.params["g"]), _complete_params(lg.params["h"]))
        applicable = a is not None and b is not None and 2 <= a <= 4 and 2 <= b <= 4
        z = zarankiewicz_z22(a, b) if applicable else None
        check("zarankiewicz", applicable, z, mv == z, "not K_m x K_n with 2 <= m, n <= 4")
    if lg and lg.family == "corona":
        base = lg.factors[0].graph
        applicable = base.n >= 2 and is_connected(base)
        lower = chimu_exact(base, budget) if applicable else None
        ok = lower is not None and lower.exact and lower.value <= x <= lower.value + 1
        check("corona-sandwich", applicable, lower.value if lower else None, ok,
              "first factor has fewer than 2 vertices")
    if geodetic and block and certified and x == geo_lo:
        report.notes.append(f"geodetic-diameter bound attained with equality: {x} = ceil(({diam}+1)/2)")
    return report
