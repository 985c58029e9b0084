"""Command line interface: ``mvcolor {gen,compute,greedy,verify,audit,zarankiewicz}``.

Exit codes: 0 success, 1 invalid coloring, 2 bad input, 3 budget-limited
(inexact) result, 4 illegal greedy script round, 5 coloring is not a
partition, 6 an audited bound was violated.
"""

from __future__ import annotations

import argparse
import json
import random
import re
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from . import generators as gen
from .bounds import audit, chromatic_number_exact, zarankiewicz_z22
from .chimu import ScriptError, chimu_exact, greedy_coloring
from .graph import (
    EdgeListError,
    GraphError,
    format_edge_list,
    from_edge_list,
    is_connected,
    parse_edge_list,
)
from .visibility import ColoringError, mu_exact, verify_coloring

EXIT_OK, EXIT_INVALID, EXIT_INPUT, EXIT_INEXACT = 0, 1, 2, 3
EXIT_SCRIPT, EXIT_PARTITION, EXIT_VIOLATION = 4, 5, 6

DEFAULT_BUDGET_MS = 30_000


class CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_INPUT):
        self.code = code
        super().__init__(message)


@dataclass(frozen=True)
class RunConfig:
    subcommand: str
    source: str | None
    seed: int = 0
    budget_ms: int = DEFAULT_BUDGET_MS
    fmt: str = "edgelist"
    out: str | None = None

    def __post_init__(self):
        if self.budget_ms <= 0:
            raise CliError("--budget-ms must be positive")


def _dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True)


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


# Family specs ------------------------------------------------------------------
#
#   name[:a,b,...]            e.g. complete:4, kbip:2,3, broom:9,3, petersen
#   product(spec;spec)        e.g. cartesian(complete:3;complete:3)

_SIMPLE = {
    "path": (gen.path, 1), "cycle": (gen.cycle, 1), "complete": (gen.complete, 1),
    "empty": (gen.empty, 1), "kbip": (gen.complete_bipartite, 2), "star": (gen.star, 1),
    "petersen": (gen.petersen, 0), "heawood": (gen.heawood, 0), "gk": (gen.g_k, 1),
    "frog": (gen.frog, 1), "broom": (gen.broom, 2),
}
_PRODUCTS = {
    "cartesian": gen.cartesian_product, "strong": gen.strong_product,
    "corona": gen.corona_product,
}


def parse_family_spec(spec: str, seed: int = 0) -> gen.LabeledGraph:
    spec = spec.strip()
    m = re.fullmatch(r"([a-z-]+)\((.*)\)", spec)
    if m:
        name, inner = m.groups()
        if name not in _PRODUCTS:
            raise CliError(f"unknown product {name!r}")
        depth, cut = 0, None
        for i, ch in enumerate(inner):
            depth += ch == "("
            depth -= ch == ")"
            if ch == ";" and depth == 0:
                cut = i
        if cut is None:
            raise CliError(f"product spec {spec!r} needs two factors separated by ';'")
        return _PRODUCTS[name](parse_family_spec(inner[:cut], seed), parse_family_spec(inner[cut + 1:], seed))
    name, _, args = spec.partition(":")
    try:
        nums = [float(a) if "." in a else int(a) for a in args.split(",")] if args else []
    except ValueError:
        raise CliError(f"bad parameters in family spec {spec!r}") from None
    if name == "random-tree" and len(nums) == 1:
        return gen.random_tree(int(nums[0]), seed)
    if name == "random-connected" and len(nums) == 2:
        return gen.random_connected_graph(int(nums[0]), nums[1], seed)
    if name not in _SIMPLE:
        raise CliError(f"unknown family {name!r}")
    fn, arity = _SIMPLE[name]
    if len(nums) != arity:
        raise CliError(f"family {name!r} takes {arity} parameter(s), got {len(nums)}")
    return fn(*[int(x) for x in nums])


def _cross_edges(text: str | None, nr: int, ns: int) -> list[tuple[int, int]]:
    if not text:
        return []
    if text == "all":
        return [(x, y) for x in range(nr) for y in range(ns)]
    out = []
    for item in text.split(","):
        a, _, b = item.partition("-")
        if not (a.isdigit() and b.isdigit()):
            raise CliError(f"bad cross edge {item!r}; expected 'x-y'")
        out.append((int(a), int(b)))
    return out


def _need(args, *names):
    missing = [f"--{n.replace('_', '-')}" for n in names if getattr(args, n) is None]
    if missing:
        raise CliError(f"family {args.family!r} needs {' '.join(missing)}")


def build_family(args) -> gen.LabeledGraph:
    fam = args.family
    if fam in ("path", "cycle", "complete", "star"):
        _need(args, "n")
        return _SIMPLE[fam][0](args.n)
    if fam == "kbip":
        _need(args, "r", "t")
        return gen.complete_bipartite(args.r, args.t)
    if fam in ("petersen", "heawood"):
        return _SIMPLE[fam][0]()
    if fam in ("gk", "frog"):
        _need(args, "k")
        return _SIMPLE[fam][0](args.k)
    if fam == "broom":
        _need(args, "n", "k")
        return gen.broom(args.n, args.k)
    if fam in _PRODUCTS:
        _need(args, "g", "h")
        return _PRODUCTS[fam](parse_family_spec(args.g, args.seed), parse_family_spec(args.h, args.seed))
    if fam == "family-a":
        _need(args, "g", "h", "r", "s")
        ar, as_ = parse_family_spec(args.g, args.seed), parse_family_spec(args.h, args.seed)
        lg, valid = gen.family_a(ar.graph, as_.graph, args.r, args.s,
                                 _cross_edges(args.cross, ar.n, as_.n))
        return gen.LabeledGraph(lg.graph, lg.labels, lg.family, {**lg.params, "valid": valid})
    if fam == "family-b":
        _need(args, "g", "h")
        b, b2 = parse_family_spec(args.g, args.seed), parse_family_spec(args.h, args.seed)
        lg, log = gen.family_b(b.graph, b2.graph)
        return gen.LabeledGraph(lg.graph, lg.labels, lg.family, {**lg.params, "gadgets": len(log)})
    if fam == "random-tree":
        _need(args, "n")
        return gen.random_tree(args.n, args.seed)
    if fam == "random-connected":
        _need(args, "n", "p")
        return gen.random_connected_graph(args.n, args.p, args.seed)
    raise CliError(f"unknown family {fam!r}; choose from {', '.join(gen.FAMILIES)}")


# Subcommands -------------------------------------------------------------------

def cmd_gen(args) -> int:
    cfg = RunConfig("gen", args.family, args.seed, DEFAULT_BUDGET_MS, args.format, args.out)
    lg = build_family(args)
    if cfg.fmt == "json":
        doc = {"n": lg.n, "edges": [list(e) for e in lg.graph.edges], **lg.sidecar()}
        _emit(_dumps(doc) + "\n", cfg.out)
        return EXIT_OK
    header = f"family {lg.family} {_dumps(lg.params)}"
    _emit(format_edge_list(lg.graph, header), cfg.out)
    if cfg.out:
        Path(cfg.out + ".json").write_text(_dumps(lg.sidecar()) + "\n")
    return EXIT_OK


def read_graph(path: str):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}") from None
    if path.endswith(".json"):
        try:
            doc = json.loads(text)
            return from_edge_list(doc["n"], doc["edges"])
        except (ValueError, KeyError, TypeError) as exc:
            raise CliError(f"{path}: not a graph JSON document ({exc})") from None
    try:
        return parse_edge_list(text)
    except EdgeListError as exc:
        raise CliError(f"{path}: {exc}") from None


def _with_elapsed(doc: dict, start: float) -> dict:
    doc["elapsed_ms"] = round((time.perf_counter() - start) * 1000, 3)
    return doc


def cmd_compute(args) -> int:
    cfg = RunConfig("compute", args.input, 0, args.budget_ms, "json", args.out)
    g = read_graph(cfg.source)
    start = time.perf_counter()
    if args.param == "mu":
        if not is_connected(g):
            raise CliError("mu is computed for connected graphs only")
        cert = mu_exact(g, budget=cfg.budget_ms)
        doc, exact = {"param": "mu", **cert.to_json()}, cert.optimal
    elif args.param == "chimu":
        cert = chimu_exact(g, budget=cfg.budget_ms)
        valid = verify_coloring(g, None, cert.coloring).valid
        doc, exact = {"param": "chimu", **cert.to_json(valid)}, cert.exact
    else:
        res = chromatic_number_exact(g, budget=cfg.budget_ms)
        doc = {"param": "chi", "value": res.value, "coloring": list(res.coloring), "exact": res.exact}
        exact = res.exact
    _emit(_dumps(_with_elapsed(doc, start)) + "\n", cfg.out)
    return EXIT_OK if exact else EXIT_INEXACT


def cmd_greedy(args) -> int:
    cfg = RunConfig("greedy", args.input, 0, args.budget_ms, "json", args.out)
    g = read_graph(cfg.source)
    script = None
    if args.strategy == "scripted":
        if not args.script:
            raise CliError("--strategy scripted needs --script")
        try:
            script = json.loads(Path(args.script).read_text())
        except (OSError, ValueError) as exc:
            raise CliError(f"cannot read script {args.script}: {exc}") from None
    if not is_connected(g):
        raise CliError("greedy coloring needs a connected graph")
    mode = "scripted" if args.strategy == "scripted" else "solver"
    start = time.perf_counter()
    try:
        trace = greedy_coloring(g, mode, script, cfg.budget_ms)
    except ScriptError as exc:
        raise CliError(str(exc), EXIT_SCRIPT) from None
    _emit(_dumps(_with_elapsed(trace.to_json(), start)) + "\n", cfg.out)
    return EXIT_OK if trace.optimal_rounds else EXIT_INEXACT


def cmd_verify(args) -> int:
    g = read_graph(args.input)
    try:
        doc = json.loads(Path(args.coloring).read_text())
    except (OSError, ValueError) as exc:
        raise CliError(f"cannot read coloring {args.coloring}: {exc}") from None
    classes = doc["classes"] if isinstance(doc, dict) else doc
    try:
        report = verify_coloring(g, None, classes)
    except ColoringError as exc:
        raise CliError(str(exc), EXIT_PARTITION) from None
    out = {
        "valid": report.valid,
        "value": len(report.classes),
        "classes": [
            {"index": c.index, "members": list(c.members), "valid": c.valid,
             "failing_pair": list(c.failing_pair) if c.failing_pair else None}
            for c in report.classes
        ],
    }
    _emit(_dumps(out) + "\n", args.out)
    return EXIT_OK if report.valid else EXIT_INVALID


def instance_seeds(seed: int, count: int) -> list[int]:
    rng = random.Random(seed)
    return [rng.getrandbits(63) for _ in range(count)]


def _audit_random(job) -> dict:
    index, n, p, seed, budget_ms = job
    lg = gen.random_connected_graph(n, p, seed)
    report = audit(lg, budget_ms, graph_id=f"random-{index}")
    doc = report.to_json()
    doc["seed"] = seed
    doc["edges"] = [list(e) for e in lg.graph.edges]
    return doc


def cmd_audit(args) -> int:
    docs = []
    if args.random:
        n, p, count, seed = args.random
        try:
            n, p, count, seed = int(n), float(p), int(count), int(seed)
        except ValueError:
            raise CliError("--random expects <n> <p> <count> <seed>") from None
        jobs = [(i, n, p, s, args.budget_ms) for i, s in enumerate(instance_seeds(seed, count))]
        if args.workers > 1:
            with ProcessPoolExecutor(args.workers) as pool:
                docs = list(pool.map(_audit_random, jobs, chunksize=8))
        else:
            docs = [_audit_random(j) for j in jobs]
    else:
        if args.family:
            target, name = parse_family_spec(args.family, args.seed), args.family
        elif args.input:
            target, name = read_graph(args.input), args.input
        else:
            raise CliError("audit needs an input file, --family or --random")
        lg = target if isinstance(target, gen.LabeledGraph) else None
        if not is_connected(lg.graph if lg else target):
            raise CliError("audit needs a connected graph; the input is disconnected")
        docs = [audit(target, args.budget_ms, graph_id=name).to_json()]
    violations = sum(1 for d in docs for b in d["bounds"] if b["applicable"] and not b["satisfied"])
    inconclusive = sum(1 for d in docs if not d["exact"]["certified"])
    lines = [_dumps(d) for d in docs]
    lines.append(_dumps({"summary": {"instances": len(docs), "violations": violations,
                                     "uncertified": inconclusive}}))
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_VIOLATION if violations else EXIT_OK


def cmd_zarankiewicz(args) -> int:
    value = zarankiewicz_z22(args.m, args.n)
    _emit(_dumps({"m": args.m, "n": args.n, "value": value}) + "\n", args.out)
    return EXIT_OK


# Parser ------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mvcolor", description="Mutual-visibility colorings of graphs.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, budget=True):
        sp.add_argument("--out", help="write output here instead of standard output")
        sp.add_argument("--seed", type=int, default=0)
        if budget:
            sp.add_argument("--budget-ms", type=int, default=DEFAULT_BUDGET_MS)

    g = sub.add_parser("gen", help="generate a graph family")
    g.add_argument("family")
    for flag, typ in (("n", int), ("k", int), ("r", int), ("t", int), ("s", int), ("p", float)):
        g.add_argument(f"--{flag}", type=typ)
    g.add_argument("--g", help="first factor spec, e.g. complete:3")
    g.add_argument("--h", help="second factor spec")
    g.add_argument("--cross", help="family-a cross edges: 'all' or 'x-y,x-y,...'")
    g.add_argument("--format", choices=("edgelist", "json"), default="edgelist")
    common(g, budget=False)
    g.set_defaults(func=cmd_gen)

    c = sub.add_parser("compute", help="compute mu, chimu or chi with a certificate")
    c.add_argument("param", choices=("mu", "chimu", "chi"))
    c.add_argument("input")
    common(c)
    c.set_defaults(func=cmd_compute)

    gr = sub.add_parser("greedy", help="run the greedy mutual-visibility coloring")
    gr.add_argument("input")
    gr.add_argument("--strategy", choices=("solver", "scripted"), default="solver")
    gr.add_argument("--script", help="JSON list of vertex-id lists, one per round")
    common(gr)
    gr.set_defaults(func=cmd_greedy)

    v = sub.add_parser("verify", help="check a coloring JSON against a graph")
    v.add_argument("input")
    v.add_argument("coloring")
    common(v, budget=False)
    v.set_defaults(func=cmd_verify)

    a = sub.add_parser("audit", help="evaluate every applicable bound against exact values")
    a.add_argument("input", nargs="?")
    a.add_argument("--family", help="audit a generated family, e.g. 'broom:9,3'")
    a.add_argument("--random", nargs=4, metavar=("N", "P", "COUNT", "SEED"))
    a.add_argument("--workers", type=int, default=1)
    common(a)
    a.set_defaults(func=cmd_audit)

    z = sub.add_parser("zarankiewicz", help="brute-force z(m, n; 2, 2)")
    z.add_argument("m", type=int)
    z.add_argument("n", type=int)
    common(z, budget=False)
    z.set_defaults(func=cmd_zarankiewicz)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"mvcolor: {exc}", file=sys.stderr)
        return exc.code
    except GraphError as exc:
        print(f"mvcolor: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
