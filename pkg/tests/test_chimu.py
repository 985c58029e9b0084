import math
import random

import pytest

from oracles import chimu_bruteforce, mv_table
from mvcolor import generators as gen
from mvcolor.chimu import (
    Coloring,
    ScriptError,
    c4_free_edge_partition,
    chimu_exact,
    corona_lift,
    diam2_c4_coloring,
    frog_coloring,
    greedy_coloring,
    has_c4,
    is_block_graph,
    pad_with_pairs,
    tree_block_coloring,
    unique_geodesic_bound,
)
from mvcolor.graph import (
    GraphError,
    degrees,
    diameter,
    disjoint_union,
    from_edge_list,
    is_complete,
    radius,
)
from mvcolor.visibility import is_mv_set, mu_exact, verify_coloring


def tree_formula(g):
    diam, rad = diameter(g), radius(g)
    return rad + 1 if diam % 2 == 0 else rad


def assert_valid(g, coloring):
    rep = verify_coloring(g, None, coloring)
    assert rep.valid, rep.failing_classes


def test_chimu_small_examples():
    assert chimu_exact(gen.complete(4).graph).value == 1
    p5 = chimu_exact(gen.path(5).graph)
    assert p5.value == 3 and p5.exact
    # n/mu and the geodesic bound tie at 3 here
    assert p5.lower_bound.amount == 3
    assert p5.lower_bound.provenance in ("n-over-mu", "geodetic-diameter")
    p6 = chimu_exact(gen.path(6).graph).lower_bound
    assert p6.amount == 3
    assert_valid(gen.path(5).graph, p5.coloring)
    c4 = chimu_exact(gen.cycle(4).graph)
    assert c4.value == 2 and c4.lower_bound.provenance == "n-over-mu"


def test_component_sum():
    g = disjoint_union(gen.complete(3).graph, from_edge_list(2, []))
    cert = chimu_exact(g)
    assert cert.value == 3 and cert.exact
    assert len(cert.coloring) == 3
    for p, q in ((2, 1), (3, 2), (4, 3)):
        g = disjoint_union(gen.complete(p).graph, from_edge_list(q, []))
        assert chimu_exact(g).value == q + 1


def test_named_chimu_values():
    cases = [
        (gen.petersen(), 2), (gen.heawood(), 2), (gen.g_k(1), 2), (gen.g_k(2), 2),
        (gen.frog(2), 4), (gen.broom(9, 3), 3),
        (gen.strong_product(gen.path(4), gen.path(4)), 2),
        (gen.corona_product(gen.cycle(4), gen.complete(5)), 2),
    ]
    for lg, want in cases:
        cert = chimu_exact(lg.graph)
        assert (cert.value, cert.exact) == (want, True), lg.family
        assert_valid(lg.graph, cert.coloring)


def test_budget_returns_inexact_valid_coloring():
    k5 = gen.complete(5)
    g = gen.cartesian_product(k5, k5).graph
    cert = chimu_exact(g, budget=1)
    assert not cert.exact
    assert_valid(g, cert.coloring)
    # the greedy incumbent is always available
    assert cert.value >= cert.lower_bound.amount


def test_to_json_shape():
    doc = chimu_exact(gen.cycle(5).graph).to_json()
    assert set(doc) == {"n", "classes", "valid", "value", "exact", "lower_bound"}
    assert doc["n"] == 5 and doc["value"] == len(doc["classes"])


def test_greedy_solver_is_valid_for_strong_grid():
    grid = gen.strong_product(gen.path(4), gen.path(4))
    trace = greedy_coloring(grid.graph)
    assert trace.total_colors == 2 and trace.rounds[0][1] == 1
    assert_valid(grid.graph, trace.coloring(grid.n))


def test_scripted_greedy_g1():
    g1 = gen.g_k(1)
    outer = [v for v in range(g1.n) if v not in g1.ids("1234")]
    trace = greedy_coloring(g1.graph, "scripted", [outer])
    assert trace.total_colors == 3
    assert [c for _, c in trace.rounds] == [1, 2, 3]


def test_scripted_greedy_frog():
    f2 = gen.frog(2)
    script = [f2.ids(["x_1", "x_2", "x_5"]), f2.ids(["x_3", "x_4", "x_7"])]
    trace = greedy_coloring(f2.graph, "scripted", script)
    assert trace.total_colors >= 2 + math.ceil(5 / 2)
    assert chimu_exact(f2.graph).value == 4


def test_scripted_greedy_boundary_first():
    grid = gen.strong_product(gen.path(4), gen.path(4))
    deg = degrees(grid.graph)[0]
    boundary = [v for v in range(grid.n) if deg[v] < 8]
    trace = greedy_coloring(grid.graph, "scripted", [boundary])
    assert trace.total_colors == 2 == unique_geodesic_bound(grid.graph)


def test_script_rejects_bad_rounds():
    g1 = gen.g_k(1)
    with pytest.raises(ScriptError) as err:
        greedy_coloring(g1.graph, "scripted", [[0, 1, 2]])
    assert err.value.round == 1
    outer = [v for v in range(g1.n) if v not in g1.ids("1234")]
    with pytest.raises(ScriptError, match="not uncolored"):
        greedy_coloring(g1.graph, "scripted", [outer, outer[:1]])
    with pytest.raises(ScriptError, match="mutual-visibility"):
        greedy_coloring(gen.path(3).graph, "scripted", [[0, 1, 2]])
    with pytest.raises(GraphError):
        greedy_coloring(g1.graph, "scripted")
    with pytest.raises(GraphError):
        greedy_coloring(g1.graph, "random")


def test_tree_block_coloring_examples():
    assert len(tree_block_coloring(gen.path(7).graph)) == 4
    assert len(tree_block_coloring(gen.star(5).graph)) == 2
    assert len(tree_block_coloring(gen.complete(4).graph)) == 1
    with pytest.raises(GraphError):
        tree_block_coloring(gen.cycle(4).graph)
    assert is_block_graph(from_edge_list(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4)]))
    assert not is_block_graph(gen.cycle(5).graph)


def test_tree_block_coloring_on_random_trees():
    for seed in range(100):
        t = gen.random_tree(1 + seed % 14, seed).graph
        col = tree_block_coloring(t)
        assert_valid(t, col)
        if t.n > 1:
            assert len(col) == tree_formula(t)


def test_tree_formula_against_exact():
    for seed in range(100):
        t = gen.random_tree(2 + seed % 11, 1000 + seed).graph
        assert chimu_exact(t).value == tree_formula(t)


def test_pad_with_pairs():
    c7 = gen.cycle(7).graph
    col = pad_with_pairs(c7, [0, 2, 4])
    assert len(col) == 3
    assert_valid(c7, col)
    with pytest.raises(GraphError, match="seed"):
        pad_with_pairs(gen.path(3).graph, [0, 1, 2])


def test_c4_free_partition():
    tree = gen.random_tree(10, 2).graph
    assert len(c4_free_edge_partition(tree)) == 1
    k22 = gen.complete_bipartite(2, 2).graph
    parts = c4_free_edge_partition(k22)
    assert len(parts) >= 2 and not any(has_c4(4, p) for p in parts)
    k4 = gen.complete(4)
    grid = gen.cartesian_product(k4, k4).graph
    parts = c4_free_edge_partition(grid)
    assert sum(map(len, parts)) == grid.edge_count
    assert not any(has_c4(grid.n, p) for p in parts)
    # first-fit has no part-count guarantee; compare against ceil(sqrt(Delta)) loosely
    assert math.isqrt(degrees(grid)[1] - 1) + 1 <= len(parts) <= grid.n


@pytest.mark.parametrize("n", [3, 4])
def test_diam2_coloring_on_rook_graphs(n):
    kn = gen.complete(n)
    g = gen.cartesian_product(kn, kn).graph
    parts = c4_free_edge_partition(g)
    col = diam2_c4_coloring(g, parts)
    assert_valid(g, col)
    assert len(col) <= len(parts)
    with pytest.raises(GraphError, match="4-cycle"):
        diam2_c4_coloring(g, [list(g.edges)])


def test_diam2_coloring_validation():
    k22 = gen.complete_bipartite(2, 2).graph
    col = diam2_c4_coloring(k22, [[e] for e in k22.edges])
    assert_valid(k22, col)
    with pytest.raises(GraphError, match="diameter"):
        diam2_c4_coloring(gen.path(4).graph, [])
    with pytest.raises(GraphError, match="4-cycle"):
        diam2_c4_coloring(gen.star(4).graph, [list(gen.star(4).graph.edges)])
    with pytest.raises(GraphError, match="not covered"):
        diam2_c4_coloring(k22, [list(k22.edges)[:2]])
    with pytest.raises(GraphError, match="appears"):
        e = list(k22.edges)
        diam2_c4_coloring(k22, [e, e[:1]])
    with pytest.raises(GraphError, match="diameter"):
        k4 = gen.complete(4).graph
        diam2_c4_coloring(disjoint_union(k4, k4), [])
    # K4 as one part: rejected (diameter 1, and the part holds 4-cycles)
    with pytest.raises(GraphError):
        diam2_c4_coloring(gen.complete(4).graph, [list(gen.complete(4).graph.edges)])


def test_c4_free_parts_alone_are_not_enough():
    # a Hamiltonian path of K3 x K3 is C4-free but touches every vertex,
    # so the single class it would produce is not mutual-visibility
    k3 = gen.complete(3)
    g = gen.cartesian_product(k3, k3).graph
    path = []
    for a in range(3):
        row = [3 * a + b for b in (range(3) if a % 2 == 0 else range(2, -1, -1))]
        path += list(zip(row, row[1:]))
        if a < 2:
            path.append((row[-1], row[-1] + 3))
    assert not has_c4(g.n, path)
    assert not is_mv_set(g, None, range(g.n))[0]
    rest = [e for e in g.edges if e not in {tuple(sorted(p)) for p in path}]
    with pytest.raises(GraphError, match="induce a 4-cycle"):
        diam2_c4_coloring(g, [path, rest])


@pytest.mark.parametrize("k", [2, 3, 4])
def test_frog_coloring(k):
    f = gen.frog(k)
    col = frog_coloring(k)
    assert len(col) == 2 * k
    assert_valid(f.graph, col)


def test_frog3_exact():
    assert chimu_exact(gen.frog(3).graph).value == 6


def test_corona_lift():
    c4, k5 = gen.cycle(4), gen.complete(5)
    base = chimu_exact(c4.graph).coloring
    grown = gen.corona_product(c4, k5).graph
    col = corona_lift(base, c4.graph, k5.graph)
    assert len(col) == 3
    assert_valid(grown, col)
    k3 = gen.complete(3)
    col = corona_lift(None, k3.graph, k5.graph)
    assert len(col) == 2
    assert_valid(gen.corona_product(k3, k5).graph, col)
    with pytest.raises(GraphError, match="invalid"):
        p5 = gen.path(5).graph
        corona_lift([range(5)], p5, k5.graph)


def test_coloring_from_classes_checks_partition():
    col = Coloring.from_classes(4, [[0, 3], [1, 2]])
    assert col.class_of == (0, 1, 1, 0)
    with pytest.raises(GraphError):
        Coloring.from_classes(3, [[0], [1]])


def _seeded_connected(count, max_n, seed):
    rng = random.Random(seed)
    for _ in range(count):
        n = rng.randint(1, max_n)
        yield gen.random_connected_graph(n, rng.choice([0.3, 0.45, 0.6]), rng.getrandbits(32)).graph


def test_chimu_matches_partition_oracle():
    for g in _seeded_connected(200, 7, seed=21):
        cert = chimu_exact(g)
        assert cert.exact
        assert cert.value == chimu_bruteforce(g, mv_table(g))
        assert cert.lower_bound.amount <= cert.value
        assert_valid(g, cert.coloring)


def test_greedy_never_beats_exact():
    for g in _seeded_connected(150, 8, seed=4):
        assert greedy_coloring(g).total_colors >= chimu_exact(g).value


def test_one_color_iff_complete():
    for g in _seeded_connected(200, 7, seed=17):
        assert (chimu_exact(g).value == 1) == is_complete(g)


def test_strong_product_with_k2():
    rng = random.Random(31)
    k2 = gen.complete(2)
    done = 0
    while done < 10:
        h = gen.random_connected_graph(rng.randint(3, 5), 0.5, rng.getrandbits(32))
        if is_complete(h.graph):
            continue
        assert chimu_exact(gen.strong_product(h, k2).graph).value == 2
        done += 1


def test_lower_bound_below_value_on_named_graphs():
    for lg in (gen.petersen(), gen.frog(2), gen.broom(9, 3), gen.heawood(), gen.path(8)):
        cert = chimu_exact(lg.graph)
        assert cert.lower_bound.amount == cert.value
        assert math.ceil(lg.n / mu_exact(lg.graph).value) <= cert.value
