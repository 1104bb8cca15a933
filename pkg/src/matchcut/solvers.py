"""Branching solvers for bipartite graphs of diameter at most 3 or radius at most 2.

Every solver colours one vertex blue (colour-swap symmetry), branches over
colourings of small vertex sets, colour-processes after each branch and checks
complete colourings with the verifiers. Branching is exhaustive, so a solver's
answer is exact; the graph-class gate only guards the polynomial bound.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Iterator, Optional

from .colouring import (
    BLUE,
    RED,
    Colouring,
    CutCertificate,
    PartialColouring,
    colouring_value,
    cut_from_colouring,
    is_perfect_colouring,
    is_perfect_extendable,
    is_valid_d_colouring,
    propagate,
    uses_both,
)
from .errors import ClassViolation, PreconditionError
from .graph import Bipartition, Graph, induced_distances, structural_report
from .subroutines import (
    max_extendable_independent_z,
    max_valid_independent_z,
    perfect_mono_components,
)


@dataclass
class SolveResult:
    problem: str
    answer: bool
    colouring: Optional[Colouring] = None
    value: Optional[int] = None
    cut: Optional[CutCertificate] = None
    algorithm: str = ""
    d: Optional[int] = None
    stats: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "problem": self.problem,
            "answer": "yes" if self.answer else "no",
            "d": self.d,
            "value": self.value,
            "colouring": self.colouring,
            "cut": self.cut.to_dict() if self.cut is not None else None,
            "algorithm": self.algorithm,
            "stats": dict(self.stats),
        }


@dataclass
class _Stats:
    branches: int = 0
    rule_moves: int = 0

    def as_dict(self) -> dict:
        return {"branches": self.branches, "rule_applications": self.rule_moves}


def make_result(g: Graph, problem: str, colouring: Optional[Colouring], algorithm: str,
                stats: dict, d: Optional[int] = None) -> SolveResult:
    if colouring is None:
        return SolveResult(problem, False, algorithm=algorithm, d=d, stats=stats)
    cut = cut_from_colouring(g, colouring) if (d or 1) == 1 else None
    return SolveResult(problem, True, colouring, colouring_value(g, colouring), cut,
                       algorithm, d, stats)


def _better(c: Colouring, value: int, best: Optional[tuple]) -> bool:
    return best is None or value > best[1] or (value == best[1] and c < best[0])


# --- class gates ------------------------------------------------------------

def _gate(g: Graph, diameter: Optional[int] = None, radius: Optional[int] = None,
          class_check: bool = True):
    """Return (bipartition, report). Connectivity and bipartiteness are always required."""
    rep = structural_report(g)
    if not rep.connected:
        raise ClassViolation("graph is not connected")
    if rep.bipartite is None:
        raise ClassViolation("graph is not bipartite")
    if class_check:
        if diameter is not None and rep.diameter > diameter:
            raise ClassViolation(f"diameter {rep.diameter} exceeds {diameter}")
        if radius is not None and rep.radius > radius:
            raise ClassViolation(f"radius {rep.radius} exceeds {radius}")
    return rep.bipartite, rep


# --- helpers ----------------------------------------------------------------

def _colourings_of(g: Graph, X: list, red: set, blue: set, d: int) -> Iterator[tuple[set, set]]:
    """All colourings of X (B before R, ascending ids) that keep every coloured vertex
    at most d opposite-coloured coloured neighbours."""
    col = {v: RED for v in red}
    col.update({v: BLUE for v in blue})

    def ok(x: int) -> bool:
        for y in (x, *g.adjacency[x]):
            cy = col.get(y)
            if cy is None:
                continue
            if sum(1 for w in g.adjacency[y] if col.get(w, cy) != cy) > d:
                return False
        return True

    def rec(i: int):
        if i == len(X):
            yield ({v for v, c in col.items() if c == RED}, {v for v, c in col.items() if c == BLUE})
            return
        x = X[i]
        for c in (BLUE, RED):
            col[x] = c
            if ok(x):
                yield from rec(i + 1)
        del col[x]

    yield from rec(0)


def _small_subsets(items, k: int):
    for size in range(k + 1):
        yield from combinations(items, size)


# --- perfect matching cut, diameter <= 3 -------------------------------------

def pmc_bipartite_diam3(g: Graph, class_check: bool = True) -> SolveResult:
    bip, _ = _gate(g, diameter=3, class_check=class_check)
    stats = _Stats()
    algo = "pmc-diam3"
    V1 = bip.class1
    if min(len(bip.class1), len(bip.class2)) <= 1:
        c = "RB" if (g.n == 2 and g.m == 1) else None
        return make_result(g, "pmc", c, algo, stats.as_dict())
    oriented = [(u, v) if u in V1 else (v, u) for u, v in g.edges]

    # Phase 1: two bichromatic edges u1v1, u2v2 with u1, v2 red and v1, u2 blue.
    seen = set()
    for u1, v1 in oriented:
        for u2, v2 in oriented:
            if u1 == u2 or v1 == v2:
                continue
            red, blue = frozenset((u1, v2)), frozenset((v1, u2))
            key = min((tuple(sorted(red)), tuple(sorted(blue))), (tuple(sorted(blue)), tuple(sorted(red))))
            if key in seen:
                continue
            seen.add(key)
            stats.branches += 1
            r, b = set(red), set(blue)
            moves = propagate(g, r, b, 1, perfect=True)
            if moves is None:
                continue
            stats.rule_moves += moves
            c = perfect_mono_components(g, PartialColouring(r, b))
            if c is not None:
                out = make_result(g, "pmc", c, algo, stats.as_dict())
                out.stats["phase"] = 1
                return out
    phase1 = stats.branches

    # Phase 2: one bichromatic edge; every other uncoloured vertex takes the colour of its side.
    for u, v in oriented:
        stats.branches += 1
        r, b = {u}, {v}
        moves = propagate(g, r, b, 1, perfect=True)
        if moves is None:
            continue
        stats.rule_moves += moves
        c = "".join(RED if (x in r or (x not in b and x in V1)) else BLUE for x in range(g.n))
        if is_perfect_colouring(g, c):
            out = make_result(g, "pmc", c, algo, stats.as_dict())
            out.stats["phase"] = 2
            return out
    out = make_result(g, "pmc", None, algo, stats.as_dict())
    out.stats["phase1_branches"] = phase1
    return out


# --- d-cut, diameter <= 3 ------------------------------------------------------

class _Diam3Search:
    def __init__(self, g: Graph, d: int, bip: Bipartition, collect: bool):
        self.g = g
        self.d = d
        self.bip = bip
        self.collect = collect
        self.found: list[Colouring] = []
        self.stats = _Stats()
        self.root = 0
        self.root_side = bip.side(0)

    def run(self) -> Optional[Colouring]:
        g, v = self.g, self.root
        for reds in _small_subsets(g.adjacency[v], self.d):
            red = set(reds)
            blue = {v} | (set(g.adjacency[v]) - red)
            c = self._branch(red, blue)
            if c is not None:
                return c
        return None

    def _branch(self, red: set, blue: set) -> Optional[Colouring]:
        g = self.g
        self.stats.branches += 1
        moves = propagate(g, red, blue, self.d)
        if moves is None:
            return None
        self.stats.rule_moves += moves
        Z = [x for x in range(g.n) if x not in red and x not in blue]
        if not Z:
            c = "".join(RED if x in red else BLUE for x in range(g.n))
            if not uses_both(c):
                return None
            if self.collect:
                self.found.append(c)
                return None
            return c
        X = self._branch_set(Z)
        for r2, b2 in _colourings_of(g, X, red, blue, self.d):
            c = self._branch(r2, b2)
            if c is not None:
                return c
        return None

    def _branch_set(self, Z: list) -> list:
        g = self.g
        comps = g.induced_components(Z)
        A = [z for z in Z if self.bip.side(z) == self.root_side]
        B = [z for z in Z if self.bip.side(z) != self.root_side]
        if len(comps) >= 2:
            # Case 1: several components of G[Z]
            if len(comps) == 2 and all(len(c) == 1 for c in comps):
                return Z
            for P in (A, B):
                pset = set(P)
                if sum(1 for comp in comps if pset.intersection(comp)) >= 2:
                    return P
            return Z
        # Case 2: G[Z] connected
        dominators = []
        for P in (A, B):
            if not P:
                continue
            dists = {p: induced_distances(g, Z, p) for p in P}
            dom = next((p for p in P if all(dists[p].get(z, 3) <= 2 for z in P)), None)
            if dom is None:
                u = P[0]
                return [z for z in P if dists[u].get(z, 3) > 2]
            dominators.append(dom)
        zset = set(Z)
        X = set()
        for u in dominators:
            X.add(u)
            X.update(w for w in g.adjacency[u] if w in zset)
        return sorted(X)


def dcut_bipartite_diam3(g: Graph, d: int = 1, class_check: bool = True) -> SolveResult:
    if d < 1:
        raise PreconditionError("d must be positive")
    bip, _ = _gate(g, diameter=3, class_check=class_check)
    search = _Diam3Search(g, d, bip, collect=False)
    c = search.run()
    return make_result(g, "dcut" if d > 1 else "mc", c, "dcut-diam3", search.stats.as_dict(), d)


def _diam3_all_valid(g: Graph, class_check: bool) -> tuple[list[Colouring], _Stats]:
    bip, _ = _gate(g, diameter=3, class_check=class_check)
    search = _Diam3Search(g, 1, bip, collect=True)
    search.run()
    return search.found, search.stats


def _pick_max(g: Graph, candidates, keep: Callable[[Colouring], bool]) -> Optional[Colouring]:
    best = None
    for c in candidates:
        if not keep(c):
            continue
        val = colouring_value(g, c)
        if _better(c, val, best):
            best = (c, val)
    return best[0] if best else None


def maxmc_bipartite_diam3(g: Graph, class_check: bool = True) -> SolveResult:
    found, stats = _diam3_all_valid(g, class_check)
    c = _pick_max(g, found, lambda c: True)
    out = make_result(g, "maxmc", c, "maxmc-diam3", stats.as_dict())
    out.stats["colourings_seen"] = len(found)
    return out


def maxdpm_bipartite_diam3(g: Graph, class_check: bool = True) -> SolveResult:
    if g.n % 2:
        _gate(g, diameter=3, class_check=class_check)
        return make_result(g, "maxdpm", None, "maxdpm-diam3", _Stats().as_dict())
    found, stats = _diam3_all_valid(g, class_check)
    c = _pick_max(g, found, lambda c: is_perfect_extendable(g, c))
    out = make_result(g, "maxdpm", c, "maxdpm-diam3", stats.as_dict())
    out.stats["colourings_seen"] = len(found)
    return out


# --- d-cut, radius <= 2 ----------------------------------------------------------

def dcut_bipartite_rad2(g: Graph, d: int = 1, class_check: bool = True) -> SolveResult:
    if d < 1:
        raise PreconditionError("d must be positive")
    _, rep = _gate(g, radius=2, class_check=class_check)
    stats = _Stats()
    problem = "dcut" if d > 1 else "mc"
    v = rep.center
    nv = g.adjacency[v]
    closed = set(nv) | {v}
    for reds in _small_subsets(nv, d):
        if reds:
            seeds = [list(reds)]
        else:
            seeds = [[w] for w in range(g.n) if w not in closed]
        for seed in seeds:
            red = set(seed)
            blue = {v} | (set(nv) - red)
            for r2, b2 in _red_neighbourhoods(g, list(reds), red, blue, d):
                stats.branches += 1
                c = "".join(RED if x in r2 else BLUE for x in range(g.n))
                if is_valid_d_colouring(g, c, d):
                    return make_result(g, problem, c, "dcut-rad2", stats.as_dict(), d)
    return make_result(g, problem, None, "dcut-rad2", stats.as_dict(), d)


def _red_neighbourhoods(g: Graph, reds: list, red: set, blue: set, d: int):
    """Colour the neighbourhood of each red centre-neighbour in turn: at most d blue."""
    if not reds:
        yield red, blue
        return
    r, rest = reds[0], reds[1:]
    open_nbrs = [x for x in g.adjacency[r] if x not in red and x not in blue]
    room = d - sum(1 for x in g.adjacency[r] if x in blue)
    if room < 0:
        return
    for chosen in _small_subsets(open_nbrs, min(room, len(open_nbrs))):
        b2 = blue | set(chosen)
        r2 = red | (set(open_nbrs) - set(chosen))
        yield from _red_neighbourhoods(g, rest, r2, b2, d)


# --- maximum matching cut / disconnected perfect matching, radius <= 2 -----------

def _star_best(g: Graph, centre: int) -> Optional[Colouring]:
    best = None
    for leaf in g.adjacency[centre]:
        c = "".join(RED if x == leaf else BLUE for x in range(g.n))
        for cand in (c, c.translate(str.maketrans("RB", "BR"))):
            if is_valid_d_colouring(g, cand, 1) and _better(cand, 1, best):
                best = (cand, 1)
    return best[0] if best else None


def _rad2_max(g: Graph, problem: str, class_check: bool, subroutine) -> SolveResult:
    _, rep = _gate(g, radius=2, class_check=class_check)
    algo = f"{problem}-rad2"
    stats = _Stats()
    if rep.radius <= 1:
        if g.n < 2 or (problem == "maxdpm" and g.n != 2):
            return make_result(g, problem, None, algo, stats.as_dict())
        return make_result(g, problem, _star_best(g, rep.center), algo, stats.as_dict())
    v = rep.center
    nv = list(g.adjacency[v])
    closed = set(nv) | {v}
    branches = [({u}, {v} | (set(nv) - {u})) for u in nv]
    branches += [({w}, set(closed)) for w in range(g.n) if w not in closed]
    best = None
    for red, blue in branches:
        stats.branches += 1
        moves = propagate(g, red, blue, 1)
        if moves is None:
            continue
        stats.rule_moves += moves
        c = subroutine(g, PartialColouring(red, blue))
        if c is None:
            continue
        val = colouring_value(g, c)
        if _better(c, val, best):
            best = (c, val)
    return make_result(g, problem, best[0] if best else None, algo, stats.as_dict())


def maxmc_bipartite_rad2(g: Graph, class_check: bool = True) -> SolveResult:
    return _rad2_max(g, "maxmc", class_check, max_valid_independent_z)


def maxdpm_bipartite_rad2(g: Graph, class_check: bool = True) -> SolveResult:
    if g.n % 2:
        _gate(g, radius=2, class_check=class_check)
        return make_result(g, "maxdpm", None, "maxdpm-rad2", _Stats().as_dict())
    return _rad2_max(g, "maxdpm", class_check, max_extendable_independent_z)
