"""Command-line front end: ``matchcut <verb> ...`` printing JSON on standard output."""
from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path
from typing import Optional

from . import oracles, reductions, solvers
from .colouring import (
    CutCertificate,
    check_colouring,
    colouring_from_cut,
    colouring_value,
    is_perfect_colouring,
    is_valid_d_colouring,
)
from .errors import (
    BudgetExceeded,
    ClassViolation,
    GraphError,
    PreconditionError,
    SearchTimeout,
    UnsupportedGraphClass,
)
from .graph import Graph, build_graph, format_graph, is_connected, load_graph, structural_report

EXIT_OK, EXIT_USAGE, EXIT_CLASS, EXIT_BUDGET = 0, 2, 3, 4
PROBLEMS = ("mc", "pmc", "dpm", "dcut", "maxmc", "maxdpm")
GEN_ATTEMPTS = 100_000


class UsageError(Exception):
    pass


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, sort_keys=True) + "\n")


def _need_d(args) -> int:
    if args.problem == "dcut":
        if args.d is None or args.d < 1:
            raise UsageError("--problem dcut needs --d D with D >= 1")
        return args.d
    if args.d not in (None, 1):
        raise UsageError(f"--d only applies to dcut (problem {args.problem} is d = 1)")
    return 1


# --- solve ------------------------------------------------------------------------

def _poly(problem: str, algorithm: str):
    """The polynomial solver for (problem, algorithm), or None if there is none."""
    table = {
        ("pmc", "diam3"): lambda g, d, cc: solvers.pmc_bipartite_diam3(g, cc),
        ("mc", "diam3"): lambda g, d, cc: solvers.dcut_bipartite_diam3(g, 1, cc),
        ("dcut", "diam3"): lambda g, d, cc: solvers.dcut_bipartite_diam3(g, d, cc),
        ("maxmc", "diam3"): lambda g, d, cc: solvers.maxmc_bipartite_diam3(g, cc),
        ("maxdpm", "diam3"): lambda g, d, cc: solvers.maxdpm_bipartite_diam3(g, cc),
        ("dpm", "diam3"): lambda g, d, cc: _as_dpm(solvers.maxdpm_bipartite_diam3(g, cc)),
        ("mc", "rad2"): lambda g, d, cc: solvers.dcut_bipartite_rad2(g, 1, cc),
        ("dcut", "rad2"): lambda g, d, cc: solvers.dcut_bipartite_rad2(g, d, cc),
        ("maxmc", "rad2"): lambda g, d, cc: solvers.maxmc_bipartite_rad2(g, cc),
        ("maxdpm", "rad2"): lambda g, d, cc: solvers.maxdpm_bipartite_rad2(g, cc),
        ("dpm", "rad2"): lambda g, d, cc: _as_dpm(solvers.maxdpm_bipartite_rad2(g, cc)),
    }
    return table.get((problem, algorithm))


def _as_dpm(res: solvers.SolveResult) -> solvers.SolveResult:
    res.problem = "dpm"
    return res


def _solve(g: Graph, problem: str, d: int, algorithm: str, class_check: bool, timeout: float):
    if algorithm == "oracle":
        return oracles.oracle_search(g, problem, d if problem == "dcut" else None, timeout)
    if algorithm in ("diam3", "rad2"):
        fn = _poly(problem, algorithm)
        if fn is None:
            raise UsageError(f"no {algorithm} solver for problem {problem}")
        return fn(g, d, class_check)
    rep = structural_report(g)
    if rep.connected and rep.bipartite is not None:
        if rep.diameter <= 3 and _poly(problem, "diam3"):
            return _poly(problem, "diam3")(g, d, True)
        if rep.radius <= 2 and _poly(problem, "rad2"):
            return _poly(problem, "rad2")(g, d, True)
    return oracles.oracle_search(g, problem, d if problem == "dcut" else None, timeout)


def cmd_solve(args) -> int:
    d = _need_d(args)
    g = load_graph(args.graph)
    res = _solve(g, args.problem, d, args.algorithm, not args.no_class_check, args.timeout)
    _emit(res.to_dict())
    return EXIT_OK


# --- verify -----------------------------------------------------------------------

def _read_colouring(path, g: Graph) -> str:
    text = Path(path).read_text().strip()
    if text.startswith("{"):
        data = json.loads(text)
        if "colouring" in data and data["colouring"] is not None:
            return data["colouring"]
        if isinstance(data.get("cut"), dict):
            data = data["cut"]
        return colouring_from_cut(g, CutCertificate.from_dict(data))
    return text


def verify_colouring(g: Graph, problem: str, c: str, d: int = 1) -> bool:
    check_colouring(g, c)
    if problem == "pmc":
        return is_perfect_colouring(g, c)
    if problem == "dcut":
        return is_valid_d_colouring(g, c, d)
    if not is_valid_d_colouring(g, c, 1):
        return False
    if problem in ("dpm", "maxdpm"):
        return oracles.extendable(g, c)
    return True


def cmd_verify(args) -> int:
    d = _need_d(args)
    g = load_graph(args.graph)
    try:
        c = _read_colouring(args.colouring, g)
        ok = verify_colouring(g, args.problem, c, d)
        value = colouring_value(g, c)
    except PreconditionError:
        ok, value = False, None
    _emit({"ok": ok, "value": value})
    return EXIT_OK


# --- oracle -----------------------------------------------------------------------

def cmd_oracle(args) -> int:
    g = load_graph(args.graph)
    ds = [int(x) for x in args.d.split(",")] if args.d else [1]
    if any(x < 1 for x in ds):
        raise UsageError("--d values must be positive")
    if args.blocks:
        side = Path(args.sidecar or str(args.graph) + ".json")
        meta = json.loads(side.read_text()).get("meta", {})
        if "blocks" not in meta:
            raise UsageError(f"{side} has no blocks in its meta")
        rep = oracles.oracle_blocks(g, meta["blocks"], ds, args.budget, args.timeout)
    else:
        rep = oracles.oracle_enumerate(g, ds, args.budget, args.timeout)
    _emit(rep.to_dict())
    return EXIT_OK


# --- reduce -----------------------------------------------------------------------

def cmd_reduce(args) -> int:
    inst = reductions.load_instance(args.instance)
    kind = args.source
    if kind in ("nae-pmc", "nae-dcut") and not isinstance(inst, reductions.NaeSatInstance):
        raise UsageError(f"{kind} needs an NAE-SAT instance")
    if kind == "x3c-maxmc" and not isinstance(inst, reductions.X3cInstance):
        raise UsageError("x3c-maxmc needs an X3C instance")
    if kind == "nae-pmc":
        lg = reductions.reduce_nae_to_pmc(inst)
    elif kind == "nae-dcut":
        if args.d is None:
            raise UsageError("nae-dcut needs --d D with D >= 2")
        lg = reductions.reduce_nae_to_dcut(inst, args.d)
    else:
        lg = reductions.reduce_x3c_to_maxmc(inst)
    reductions.save_labelled(lg, args.output, labels=args.labels)
    meta = {k: v for k, v in lg.meta.items() if k != "blocks"}
    _emit({"output": str(args.output), "n": lg.graph.n, "m": lg.graph.m, "meta": meta})
    return EXIT_OK


# --- gen / stats ------------------------------------------------------------------

def random_bipartite(n: int, target: str, seed: int, attempts: int = GEN_ATTEMPTS) -> Optional[Graph]:
    """Rejection-sample a connected bipartite graph on n vertices meeting the target class."""
    rng = random.Random(seed)
    for _ in range(attempts):
        k = rng.randint(1, n - 1)
        p = rng.random()
        edges = [(u, v) for u in range(k) for v in range(k, n) if rng.random() < p]
        g = build_graph(n, edges)
        if not is_connected(g):
            continue
        rep = structural_report(g)
        if (target == "diam3" and rep.diameter <= 3) or (target == "rad2" and rep.radius <= 2):
            return g
    return None


def cmd_gen(args) -> int:
    if not args.bipartite:
        raise UsageError("only --bipartite generation is supported")
    if args.n < 2:
        raise UsageError("--n must be at least 2")
    g = random_bipartite(args.n, args.target, args.seed, args.attempts)
    if g is None:
        raise BudgetExceeded(f"no graph found in {args.attempts} attempts")
    text = format_graph(g, comments=[f"gen bipartite n={args.n} target={args.target} seed={args.seed}"])
    if args.output:
        Path(args.output).write_text(text)
        _emit({"output": args.output, "n": g.n, "m": g.m})
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_stats(args) -> int:
    _emit(structural_report(load_graph(args.graph)).to_dict())
    return EXIT_OK


# --- parser -----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="matchcut", description="Matching-cut family solvers, oracles and reductions.")
    sub = p.add_subparsers(dest="verb", required=True)

    s = sub.add_parser("stats", help="connectivity, bipartiteness, radius, diameter")
    s.add_argument("graph")
    s.set_defaults(func=cmd_stats)

    s = sub.add_parser("solve", help="solve one problem on a graph")
    s.add_argument("--problem", required=True, choices=PROBLEMS)
    s.add_argument("--d", type=int)
    s.add_argument("--algorithm", default="auto", choices=("auto", "diam3", "rad2", "oracle"))
    s.add_argument("--no-class-check", action="store_true",
                   help="run a polynomial solver outside its radius/diameter class (no guarantee)")
    s.add_argument("--timeout", type=float, default=oracles.DEFAULT_TIMEOUT)
    s.add_argument("graph")
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("verify", help="check a colouring or cut certificate")
    s.add_argument("--problem", required=True, choices=PROBLEMS)
    s.add_argument("--d", type=int)
    s.add_argument("graph")
    s.add_argument("colouring", help="R/B string file, or JSON with a colouring or cut")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("oracle", help="exhaustive reference report")
    s.add_argument("--d", help="comma-separated d values for the d-cut fields")
    s.add_argument("--budget", type=int, default=oracles.DEFAULT_BUDGET)
    s.add_argument("--timeout", type=float, default=oracles.DEFAULT_TIMEOUT)
    s.add_argument("--blocks", action="store_true",
                   help="enumerate colourings constant on the blocks listed in the reduction sidecar")
    s.add_argument("--sidecar", help="sidecar JSON with meta.blocks (default <graph>.json)")
    s.add_argument("graph")
    s.set_defaults(func=cmd_oracle)

    s = sub.add_parser("reduce", help="build a hardness-reduction graph")
    s.add_argument("--from", dest="source", required=True, choices=("nae-pmc", "nae-dcut", "x3c-maxmc"))
    s.add_argument("--d", type=int)
    s.add_argument("--labels", action="store_true", help="also write <out>.json with labels and meta")
    s.add_argument("-o", "--output", required=True)
    s.add_argument("instance")
    s.set_defaults(func=cmd_reduce)

    s = sub.add_parser("gen", help="random connected bipartite graph in a class")
    s.add_argument("--bipartite", action="store_true")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--target", required=True, choices=("diam3", "rad2"))
    s.add_argument("--seed", type=int, required=True)
    s.add_argument("--attempts", type=int, default=GEN_ATTEMPTS)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_gen)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    try:
        return args.func(args)
    except (UsageError, GraphError, PreconditionError, UnsupportedGraphClass, FileNotFoundError,
            json.JSONDecodeError) as e:
        print(f"matchcut: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ClassViolation as e:
        print(f"matchcut: class violation: {e}", file=sys.stderr)
        return EXIT_CLASS
    except (BudgetExceeded, SearchTimeout) as e:
        print(f"matchcut: {e}", file=sys.stderr)
        return EXIT_BUDGET


def main() -> None:
    sys.exit(run())
