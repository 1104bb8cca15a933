"""Exact reference answers by enumeration and by propagate-and-branch search."""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np

from .colouring import (
    BLUE,
    RED,
    Colouring,
    colouring_value,
    is_perfect_colouring,
    is_perfect_extendable,
    is_valid_d_colouring,
    propagate,
)
from .errors import BudgetExceeded, PreconditionError, SearchTimeout, UnsupportedGraphClass
from .graph import Graph, induced_subgraph, is_connected
from .solvers import SolveResult, make_result

DEFAULT_BUDGET = 22
DEFAULT_TIMEOUT = 60.0
_CHUNK = 1 << 16


@dataclass
class OracleReport:
    has_mc: bool = False
    max_mc: Optional[int] = None
    min_mc: Optional[int] = None
    has_pmc: bool = False
    has_dpm: bool = False
    max_dpm: Optional[int] = None
    has_dcut: dict = field(default_factory=dict)
    witnesses: dict = field(default_factory=dict)
    perfect_count: int = 0

    def to_dict(self) -> dict:
        return {
            "has_mc": self.has_mc,
            "max_mc": self.max_mc,
            "min_mc": self.min_mc,
            "has_pmc": self.has_pmc,
            "has_dpm": self.has_dpm,
            "max_dpm": self.max_dpm,
            "has_dcut": {str(d): v for d, v in sorted(self.has_dcut.items())},
            "perfect_count": self.perfect_count,
            "witnesses": dict(sorted(self.witnesses.items())),
        }


def enumerate_perfect_matchings(g: Graph, vertices: Optional[Iterable[int]] = None) -> list[frozenset]:
    """Every perfect matching of G[vertices] (all of G by default), by recursive pairing."""
    pool = sorted(range(g.n) if vertices is None else set(vertices))
    out: list[frozenset] = []

    def rec(free: list, acc: list):
        if not free:
            out.append(frozenset(acc))
            return
        x, rest = free[0], free[1:]
        for i, y in enumerate(rest):
            if g.has_edge(x, y):
                rec(rest[:i] + rest[i + 1:], acc + [(x, y)])

    rec(pool, [])
    return out


def extendable(g: Graph, c: Colouring) -> bool:
    try:
        return is_perfect_extendable(g, c)
    except UnsupportedGraphClass:
        covered = {x for u, v in g.edges if c[u] != c[v] for x in (u, v)}
        rest = [v for v in range(g.n) if v not in covered]
        sub, _ = induced_subgraph(g, rest)
        return bool(enumerate_perfect_matchings(sub)) if len(rest) % 2 == 0 else False


def _codes_to_string(bits: int, owner: Sequence[int], n: int) -> Colouring:
    return "".join(BLUE if (bits >> owner[v]) & 1 else RED for v in range(n))


def _scan(g: Graph, owner: Sequence[int], k: int, ds: Sequence[int], deadline: Optional[float]):
    """Evaluate every assignment of k blocks (block 0 fixed red); vertex v follows block owner[v].

    Yields per-chunk arrays (codes, value, max_opposite, min_opposite, monochromatic).
    """
    total = 1 << (k - 1) if k else 1
    adj = g.adjacency
    for start in range(0, total, _CHUNK):
        if deadline is not None and time.monotonic() > deadline:
            raise SearchTimeout("enumeration timed out")
        codes = (np.arange(start, min(total, start + _CHUNK), dtype=np.int64) << 1)
        bits = [((codes >> b) & 1).astype(np.int8) for b in range(max(k, 1))]
        vb = [bits[owner[v]] for v in range(g.n)]
        value = np.zeros(codes.shape, dtype=np.int32)
        for u, v in g.edges:
            value += (vb[u] != vb[v])
        mx = np.zeros(codes.shape, dtype=np.int32)
        mn = np.full(codes.shape, 1 << 20, dtype=np.int32)
        for v in range(g.n):
            opp = np.zeros(codes.shape, dtype=np.int32)
            for w in adj[v]:
                opp += (vb[w] != vb[v])
            np.maximum(mx, opp, out=mx)
            np.minimum(mn, opp, out=mn)
        mono = codes == 0
        yield codes, value, mx, mn, mono


def _report(g: Graph, owner: Sequence[int], k: int, ds: Sequence[int], deadline) -> OracleReport:
    rep = OracleReport()
    ds = sorted(set(ds) | {1})
    n = g.n
    mc_candidates = []  # (value, code)
    dcut_hit = {d: None for d in ds}
    pmc_code = None
    perfect_total = 0
    for codes, value, mx, mn, mono in _scan(g, owner, k, ds, deadline):
        ok = ~mono
        for d in ds:
            if dcut_hit[d] is None:
                hit = np.flatnonzero(ok & (mx <= d))
                if hit.size:
                    dcut_hit[d] = int(codes[hit[0]])
        valid = np.flatnonzero(ok & (mx <= 1))
        mc_candidates.extend(zip(value[valid].tolist(), codes[valid].tolist()))
        perf = np.flatnonzero(ok & (mx == 1) & (mn == 1))
        perfect_total += perf.size
        if pmc_code is None and perf.size:
            pmc_code = int(codes[perf[0]])

    def s(code):
        return _codes_to_string(code, owner, n)

    for d in ds:
        rep.has_dcut[d] = dcut_hit[d] is not None
        if dcut_hit[d] is not None:
            rep.witnesses[f"dcut_{d}"] = s(dcut_hit[d])
    if mc_candidates:
        rep.has_mc = True
        top = max(mc_candidates, key=lambda t: (t[0], -t[1]))
        low = min(mc_candidates, key=lambda t: (t[0], t[1]))
        rep.max_mc, rep.min_mc = top[0], low[0]
        rep.witnesses["mc"] = s(min(code for _, code in mc_candidates))
        rep.witnesses["max_mc"] = s(top[1])
        rep.witnesses["min_mc"] = s(low[1])
        for val, code in sorted(mc_candidates, key=lambda t: (-t[0], t[1])):
            c = s(code)
            if extendable(g, c):
                rep.has_dpm, rep.max_dpm = True, val
                rep.witnesses["max_dpm"] = c
                break
    if pmc_code is not None:
        rep.has_pmc = True
        rep.witnesses["pmc"] = s(pmc_code)
    rep.perfect_count = perfect_total
    return rep


def _require_connected(g: Graph) -> None:
    if not is_connected(g):
        raise PreconditionError("oracle needs a connected graph; solve each component separately")


def oracle_enumerate(g: Graph, ds: Sequence[int] = (1,), budget: int = DEFAULT_BUDGET,
                     timeout: Optional[float] = None) -> OracleReport:
    """Classify all 2^(n-1) colourings with vertex 0 red."""
    _require_connected(g)
    if g.n > budget:
        raise BudgetExceeded(f"n={g.n} exceeds the enumeration budget {budget}")
    deadline = time.monotonic() + timeout if timeout else None
    return _report(g, list(range(g.n)), g.n, ds, deadline)


def oracle_blocks(g: Graph, blocks: Sequence[Sequence[int]], ds: Sequence[int] = (1,),
                  budget: int = DEFAULT_BUDGET, timeout: Optional[float] = None) -> OracleReport:
    """Like ``oracle_enumerate`` but over colourings constant on each block.

    Exact whenever every colouring of interest is forced to be monochromatic on
    each block (e.g. large bicliques). Blocks must partition the vertex set.
    """
    _require_connected(g)
    owner = [-1] * g.n
    for i, blk in enumerate(blocks):
        for v in blk:
            if owner[v] != -1:
                raise PreconditionError(f"vertex {v} lies in two blocks")
            owner[v] = i
    if -1 in owner:
        raise PreconditionError("blocks do not cover every vertex")
    if len(blocks) > budget:
        raise BudgetExceeded(f"{len(blocks)} blocks exceed the enumeration budget {budget}")
    deadline = time.monotonic() + timeout if timeout else None
    return _report(g, owner, len(blocks), ds, deadline)


def valid_colourings(g: Graph, d: int = 1, both_orientations: bool = False) -> list[Colouring]:
    """All red-blue d-colourings (vertex 0 red unless ``both_orientations``)."""
    out = []
    for codes, value, mx, mn, mono in _scan(g, list(range(g.n)), g.n, (d,), None):
        for code in codes[np.flatnonzero(~mono & (mx <= d))].tolist():
            out.append(_codes_to_string(code, range(g.n), g.n))
    if both_orientations:
        out += [c.translate(str.maketrans("RB", "BR")) for c in out]
    return out


def perfect_colourings(g: Graph) -> list[Colouring]:
    """All perfect colourings with vertex 0 red (one per swap class)."""
    out = []
    for codes, value, mx, mn, mono in _scan(g, list(range(g.n)), g.n, (1,), None):
        for code in codes[np.flatnonzero(~mono & (mx == 1) & (mn == 1))].tolist():
            out.append(_codes_to_string(code, range(g.n), g.n))
    return out


# --- search -------------------------------------------------------------------

PROBLEMS = ("mc", "pmc", "dpm", "dcut", "maxmc", "maxdpm", "minmc")


class _Search:
    def __init__(self, g: Graph, problem: str, d: int, deadline: Optional[float]):
        self.g = g
        self.problem = problem
        self.d = d
        self.perfect = problem == "pmc"
        self.deadline = deadline
        self.best: Optional[tuple] = None
        self.nodes = 0
        self.moves = 0

    def accept(self, c: Colouring) -> bool:
        g, p = self.g, self.problem
        if p == "pmc":
            return is_perfect_colouring(g, c)
        if not is_valid_d_colouring(g, c, self.d):
            return False
        if p in ("dpm", "maxdpm"):
            return extendable(g, c)
        return True

    def bound(self, red: set, blue: set) -> Optional[int]:
        """Bound on the value reachable from this partial state, in the optimising direction."""
        g = self.g
        if self.problem == "minmc":
            return sum(1 for u, v in g.edges
                       if (u in red and v in blue) or (u in blue and v in red))
        dead = 0
        for v in range(g.n):
            mine = red if v in red else blue if v in blue else None
            if mine is None:
                continue
            nb = g.adjacency[v]
            if all(w in red or w in blue for w in nb) and all(w in mine for w in nb):
                dead += 1
        return (g.n - dead) // 2

    def run(self, red: Optional[set] = None, blue: Optional[set] = None) -> Optional[Colouring]:
        if red is None and blue is None:
            red, blue = {0}, set()
        return self._dfs(set(red or ()), set(blue or ()))

    def _dfs(self, red: set, blue: set) -> Optional[Colouring]:
        g = self.g
        self.nodes += 1
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise SearchTimeout(f"search exceeded its time limit after {self.nodes} nodes")
        moves = propagate(g, red, blue, self.d, self.perfect)
        if moves is None:
            return None
        self.moves += moves
        maximise = self.problem in ("maxmc", "maxdpm")
        if self.best is not None:
            b = self.bound(red, blue)
            if (maximise and b <= self.best[1]) or (self.problem == "minmc" and b >= self.best[1]):
                return None
        free = [v for v in range(g.n) if v not in red and v not in blue]
        if not free:
            c = "".join(RED if v in red else BLUE for v in range(g.n))
            if not self.accept(c):
                return None
            if maximise or self.problem == "minmc":
                val = colouring_value(g, c)
                if self.best is None or (val > self.best[1] if maximise else val < self.best[1]):
                    self.best = (c, val)
                return None
            return c
        x = max(free, key=lambda v: (sum(1 for w in g.adjacency[v] if w in red or w in blue), -v))
        for into_red in (True, False):
            r2, b2 = set(red), set(blue)
            (r2 if into_red else b2).add(x)
            c = self._dfs(r2, b2)
            if c is not None:
                return c
        return None


def oracle_search(g: Graph, problem: str, d: Optional[int] = None,
                  timeout: Optional[float] = DEFAULT_TIMEOUT) -> SolveResult:
    """Exact answer by branching on the most-constrained vertex with rule propagation."""
    if problem not in PROBLEMS:
        raise PreconditionError(f"unknown problem {problem!r}")
    _require_connected(g)
    if problem == "dcut":
        if d is None or d < 1:
            raise PreconditionError("dcut needs a positive d")
    else:
        d = 1
    deadline = time.monotonic() + timeout if timeout else None
    s = _Search(g, problem, d, deadline)
    if g.n < 2:
        c = None
    else:
        c = s.run()
        if s.best is not None:
            c = s.best[0]
    stats = {"branches": s.nodes, "rule_applications": s.moves}
    return make_result(g, problem, c, "oracle-search", stats, d if problem == "dcut" else None)


def oracle_extend(g: Graph, problem: str, red: Iterable[int], blue: Iterable[int],
                  d: int = 1, timeout: Optional[float] = DEFAULT_TIMEOUT) -> Optional[Colouring]:
    """First colouring (search order) solving ``problem`` that extends the given precolouring."""
    if problem not in PROBLEMS:
        raise PreconditionError(f"unknown problem {problem!r}")
    deadline = time.monotonic() + timeout if timeout else None
    s = _Search(g, problem, d if problem == "dcut" else 1, deadline)
    c = s.run(set(red), set(blue))
    return s.best[0] if s.best is not None else c


def oracle_search_report(g: Graph, ds: Sequence[int] = (1,),
                         timeout: Optional[float] = DEFAULT_TIMEOUT) -> OracleReport:
    """OracleReport assembled from one search per field."""
    rep = OracleReport()
    mx = oracle_search(g, "maxmc", timeout=timeout)
    rep.has_mc = mx.answer
    if mx.answer:
        rep.max_mc = mx.value
        rep.min_mc = oracle_search(g, "minmc", timeout=timeout).value
        rep.witnesses["max_mc"] = mx.colouring
    rep.has_pmc = oracle_search(g, "pmc", timeout=timeout).answer
    dp = oracle_search(g, "maxdpm", timeout=timeout)
    rep.has_dpm, rep.max_dpm = dp.answer, dp.value
    for d in sorted(set(ds) | {1}):
        rep.has_dcut[d] = rep.has_mc if d == 1 else oracle_search(g, "dcut", d, timeout).answer
    return rep
