"""Brute-force reference implementations. None of these touch mvcolor's search code."""

import itertools

import networkx as nx


def to_nx(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return h


def dfs_distances(g):
    """All-pairs distances by exhaustive simple-path DFS (tiny graphs only)."""
    n = g.n
    adj = [set(g.neighbors(v)) for v in range(n)]
    dist = [[None] * n for _ in range(n)]

    def walk(src, v, seen, length):
        if dist[src][v] is None or length < dist[src][v]:
            dist[src][v] = length
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                walk(src, w, seen, length + 1)
                seen.remove(w)

    for s in range(n):
        walk(s, s, {s}, 0)
    return dist


def mv_oracle(h, s):
    """Every pair of ``s`` has a shortest path avoiding ``s`` internally."""
    s = set(s)
    for x, y in itertools.combinations(sorted(s), 2):
        if not any(
            not (set(p[1:-1]) & s) for p in nx.all_shortest_paths(h, x, y)
        ):
            return False
    return True


def mv_table(g):
    h = to_nx(g)
    table = {}
    for mask in range(1 << g.n):
        members = [v for v in range(g.n) if mask >> v & 1]
        table[mask] = mv_oracle(h, members)
    return table


def mu_bruteforce(g, table=None):
    table = table or mv_table(g)
    return max(bin(m).count("1") for m, ok in table.items() if ok)


def set_partitions(items):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in set_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]
        yield [[first]] + part


def chimu_bruteforce(g, table=None):
    table = table or mv_table(g)
    best = g.n
    for part in set_partitions(list(range(g.n))):
        if len(part) < best and all(table[sum(1 << v for v in b)] for b in part):
            best = len(part)
    return best


def zarankiewicz_bruteforce(m, n):
    """Scan all ``2^(mn)`` matrices."""
    best = 0
    cols = list(itertools.combinations(range(n), 2))
    for bits in range(1 << (m * n)):
        ones = bin(bits).count("1")
        if ones <= best:
            continue
        rows = [(bits >> (r * n)) & ((1 << n) - 1) for r in range(m)]
        bad = any(
            all(rows[a] >> c & 1 and rows[b] >> c & 1 for c in pair)
            for a, b in itertools.combinations(range(m), 2)
            for pair in cols
        )
        if not bad:
            best = ones
    return best


def geodesic_counts(g):
    h = to_nx(g)
    return {
        (x, y): len(list(nx.all_shortest_paths(h, x, y)))
        for x, y in itertools.combinations(range(g.n), 2)
    }
