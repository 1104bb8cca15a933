"""Hardness-reduction generators, their source instances and brute-force checkers.

Three constructions are provided:

* NAE-SAT (positive, 3-literal clauses) to perfect matching cut, radius 4;
* NAE-SAT (positive, 2- or 3-literal clauses) to d-cut for d >= 2, radius 3, diameter 4;
* exact cover by 3-sets to maximum matching cut, radius 3, diameter 4.

Every generated graph checks its own bipartiteness, radius and diameter.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations, product
from pathlib import Path
from typing import Optional, Sequence

from .colouring import BLUE, RED, Colouring, apply_rules_r1_r4, PartialColouring
from .errors import BudgetExceeded, PreconditionError
from .graph import Graph, build_graph, format_graph, structural_report

NAE_BUDGET = 24
X3C_BUDGET = 24


@dataclass(frozen=True)
class NaeSatInstance:
    """Positive NAE-SAT instance; variables are numbered 1..var_count."""
    var_count: int
    clauses: tuple

    def __post_init__(self):
        clauses = tuple(tuple(c) for c in self.clauses)
        object.__setattr__(self, "clauses", clauses)
        if self.var_count < 0:
            raise PreconditionError("var_count must be non-negative")
        for c in clauses:
            if len(c) not in (2, 3):
                raise PreconditionError(f"clause {list(c)} must have 2 or 3 literals")
            if len(set(c)) != len(c):
                raise PreconditionError(f"clause {list(c)} repeats a variable")
            for x in c:
                if not 1 <= x <= self.var_count:
                    raise PreconditionError(f"variable {x} outside 1..{self.var_count}")

    def occurrences(self, var: int) -> list[int]:
        return [j for j, c in enumerate(self.clauses) if var in c]


@dataclass(frozen=True)
class X3cInstance:
    """Exact 3-cover instance over the universe 1..universe_size."""
    universe_size: int
    sets: tuple

    def __post_init__(self):
        sets = tuple(tuple(sorted(s)) for s in self.sets)
        object.__setattr__(self, "sets", sets)
        if self.universe_size <= 0 or self.universe_size % 3:
            raise PreconditionError("universe size must be a positive multiple of 3")
        for s in sets:
            if len(s) != 3 or len(set(s)) != 3:
                raise PreconditionError(f"set {list(s)} must have 3 distinct elements")
            for x in s:
                if not 1 <= x <= self.universe_size:
                    raise PreconditionError(f"element {x} outside 1..{self.universe_size}")

    @property
    def q(self) -> int:
        return self.universe_size // 3


@dataclass
class LabelledGraph:
    graph: Graph
    labels: list
    meta: dict = field(default_factory=dict)

    def index(self) -> dict:
        return {lab: v for v, lab in enumerate(self.labels)}

    def sidecar(self) -> dict:
        return {"labels": {str(v + 1): lab for v, lab in enumerate(self.labels)}, "meta": self.meta}


class _Builder:
    def __init__(self):
        self.labels: list[str] = []
        self.ids: dict[str, int] = {}
        self.edges: list[tuple[int, int]] = []

    def add(self, label: str) -> int:
        if label in self.ids:
            raise PreconditionError(f"duplicate label {label!r}")
        self.ids[label] = len(self.labels)
        self.labels.append(label)
        return self.ids[label]

    def edge(self, a: str, b: str) -> None:
        self.edges.append((self.ids[a], self.ids[b]))

    def finish(self, meta: dict) -> LabelledGraph:
        g = build_graph(len(self.labels), self.edges)
        rep = structural_report(g)
        actual = {"bipartite": rep.bipartite is not None, "radius": rep.radius, "diameter": rep.diameter}
        for key, want in meta.items():
            if key in actual and actual[key] != want:
                raise RuntimeError(f"self-check failed: {key} is {actual[key]}, expected {want}")
        return LabelledGraph(g, self.labels, dict(meta, n=g.n, m=g.m))


# --- checkers -----------------------------------------------------------------

def nae_check(inst: NaeSatInstance, assignment: Sequence[bool]) -> bool:
    if len(assignment) != inst.var_count:
        raise PreconditionError(f"assignment has {len(assignment)} values for {inst.var_count} variables")
    return all(len({bool(assignment[x - 1]) for x in c}) == 2 for c in inst.clauses)


def nae_brute_force(inst: NaeSatInstance) -> Optional[tuple]:
    """Lexicographically first NAE-satisfying assignment (False < True), or None."""
    if inst.var_count > NAE_BUDGET:
        raise BudgetExceeded(f"{inst.var_count} variables exceed the budget {NAE_BUDGET}")
    for a in product((False, True), repeat=inst.var_count):
        if nae_check(inst, a):
            return a
    return None


def x3c_brute_force(inst: X3cInstance) -> Optional[tuple]:
    """Indices (0-based, ascending) of the first exact cover in combination order, or None."""
    if len(inst.sets) > X3C_BUDGET:
        raise BudgetExceeded(f"{len(inst.sets)} sets exceed the budget {X3C_BUDGET}")
    universe = set(range(1, inst.universe_size + 1))
    for pick in combinations(range(len(inst.sets)), inst.q):
        covered = [x for i in pick for x in inst.sets[i]]
        if len(covered) == len(set(covered)) and set(covered) == universe:
            return pick
    return None


def _check_cover(inst: X3cInstance, cover: Sequence[int]) -> None:
    covered = [x for i in cover for x in inst.sets[i]]
    if len(covered) != len(set(covered)) or set(covered) != set(range(1, inst.universe_size + 1)):
        raise PreconditionError("the chosen sets are not an exact cover")


# --- NAE-SAT to perfect matching cut --------------------------------------------

# cube positions 1..8; clause vertices k^2, k^1, k^3 at 2, 3, 8 and the auxiliary a at 5
_CUBE_EDGES = [(1, 2), (1, 3), (1, 5), (2, 4), (2, 6), (3, 4), (3, 7), (4, 8), (5, 6), (6, 8), (7, 5), (8, 7)]
_CUBE_ROLE = {2: "k_{j}^2", 3: "k_{j}^1", 5: "a_{j}", 8: "k_{j}^3"}


def _cube_label(j: int, pos: int) -> str:
    role = _CUBE_ROLE.get(pos)
    return role.format(j=j) if role else f"K_{j}:v{pos}"


def _connector(b: _Builder, tag: str, left: str, right: str) -> None:
    l, m, r, h = (f"conn[{tag}]:{x}" for x in "lmrh")
    for x in (l, m, r, h):
        b.add(x)
    for x, y in ((left, l), (l, m), (m, r), (r, right), (l, h), (r, h), (h, "u")):
        b.edge(x, y)


def reduce_nae_to_pmc(inst: NaeSatInstance) -> LabelledGraph:
    for c in inst.clauses:
        if len(c) != 3:
            raise PreconditionError("the perfect-matching-cut reduction needs 3-literal clauses")
    for i in range(1, inst.var_count + 1):
        if not inst.occurrences(i):
            raise PreconditionError(f"variable x_{i} occurs in no clause")
    if not inst.clauses:
        raise PreconditionError("the instance has no clauses")
    b = _Builder()
    b.add("u")
    b.add("u'")
    b.edge("u", "u'")
    for i in range(1, inst.var_count + 1):
        b.add(f"x_{i}")
        b.add(f"x_{i}'")
        b.edge(f"x_{i}", f"x_{i}'")
    for j, clause in enumerate(inst.clauses, start=1):
        for pos in range(1, 9):
            b.add(_cube_label(j, pos))
        for p, q in _CUBE_EDGES:
            b.edge(_cube_label(j, p), _cube_label(j, q))
        b.add(f"b_{j}^1")
        b.add(f"b_{j}^2")
        b.edge(f"a_{j}", f"b_{j}^1")
        b.edge(f"b_{j}^1", f"b_{j}^2")
        for t, x in enumerate(clause, start=1):
            b.edge(f"k_{j}^{t}", f"x_{x}")
            _connector(b, f"C_{j},x_{x}", f"k_{j}^{t}", f"x_{x}'")
        _connector(b, f"C_{j},b", f"b_{j}^2", f"a_{j}")
    return b.finish({"reduction": "nae-pmc", "bipartite": True, "radius": 4})


# --- NAE-SAT to d-cut -------------------------------------------------------------

def reduce_nae_to_dcut(inst: NaeSatInstance, d: int) -> LabelledGraph:
    if d < 2:
        raise PreconditionError("the d-cut reduction needs d >= 2")
    m = len(inst.clauses)
    if m < 2:
        raise PreconditionError("the d-cut reduction needs at least two clauses")
    for i in range(1, inst.var_count + 1):
        if len(inst.occurrences(i)) > 3:
            raise PreconditionError(f"variable x_{i} occurs in more than three clauses")

    b = _Builder()
    for side in "ab":
        for j in range(1, m + 1):
            for t in range(1, d + 1):
                b.add(f"K_{side}:C_{{{j}_{t}}}^{side}")
                b.add(f"K'_{side}:C_{{{j}_{t}}}'^{side}")

    # occurrence slots, allocated greedily in clause order
    slots: dict[tuple[int, str], list[int]] = {}  # (var, side) -> clause index per used vertex
    for j, clause in enumerate(inst.clauses, start=1):
        for pos, x in enumerate(clause):
            if len(clause) == 3:
                width = d - 1 if pos == 0 else 1
            else:
                width = d if pos == 0 else 1
            for side in "ab":
                slots.setdefault((x, side), []).extend([j] * width)

    anchors: list[tuple[str, str]] = []  # (gadget vertex, K-side it hangs from)
    for i in range(1, inst.var_count + 1):
        for side in "ab":
            used = slots.get((i, side), [])
            if len(used) > 3 * d:
                raise PreconditionError(f"variable x_{i} needs {len(used)} gadget slots, only {3 * d} exist")
            per_clause: dict[int, int] = {}
            for k in range(3 * d):
                if k < len(used):
                    j = used[k]
                    per_clause[j] = per_clause.get(j, 0) + 1
                    lab = b.add(f"X_{i}^{side}:C_{j}#{per_clause[j]}")
                    other = "b" if side == "a" else "a"
                    for t in range(1, d + 1):
                        b.edge(b.labels[lab], f"K_{other}:C_{{{j}_{t}}}^{other}")
                        b.edge(b.labels[lab], f"K'_{other}:C_{{{j}_{t}}}'^{other}")
                else:
                    lab = b.add(f"X_{i}^{side}:aux#{k + 1 - len(used)}")
                    anchors.append((b.labels[lab], "b" if side == "a" else "a"))
    for i in range(1, inst.var_count + 1):
        for x in (y for y in b.labels if y.startswith(f"X_{i}^a:")):
            for y in (z for z in b.labels if z.startswith(f"X_{i}^b:")):
                b.edge(x, y)
    for vert, side in anchors:
        for K in ("K", "K'"):
            lab = f"{K}_{side}:aux-anchor[{vert}]"
            b.add(lab)
            b.edge(vert, lab)
    for lab in ("u_a", "u_b", "u'_a", "u'_b"):
        b.add(lab)
    b.edge("u_a", "u'_b")
    b.edge("u_b", "u'_a")
    # complete the two bicliques
    for K, ua, ub in (("K", "u_a", "u_b"), ("K'", "u'_a", "u'_b")):
        A = [x for x in b.labels if x.startswith(f"{K}_a:")] + [ua]
        B = [x for x in b.labels if x.startswith(f"{K}_b:")] + [ub]
        for x in A:
            for y in B:
                b.edge(x, y)
    lg = b.finish({"reduction": "nae-dcut", "d": d, "bipartite": True, "radius": 3, "diameter": 4})
    lg.meta["blocks"] = _blocks(lg.labels, ["K", "K'"] + [f"X_{i}" for i in range(1, inst.var_count + 1)])
    return lg


def _block_of(label: str) -> str:
    if label in ("u_a", "u_b"):
        return "K"
    if label in ("u'_a", "u'_b"):
        return "K'"
    head = label.split(":", 1)[0]
    return head.rsplit("_", 1)[0] if head.startswith(("K_", "K'_")) else head.split("^", 1)[0]


def _blocks(labels: list, names: list) -> list:
    out = {name: [] for name in names}
    for v, lab in enumerate(labels):
        out[_block_of(lab)].append(v)
    return [out[name] for name in names]


# --- X3C to maximum matching cut ----------------------------------------------------

def reduce_x3c_to_maxmc(inst: X3cInstance) -> LabelledGraph:
    k = len(inst.sets)
    if k < 2:
        raise PreconditionError("the reduction needs at least two sets")
    size = inst.universe_size
    b = _Builder()
    for h in range(1, size + 1):
        b.add(f"K_X:x_{h}")
    for h in range(1, size + 1):
        b.add(f"K_X:y_{h}")
    for h in range(1, size + 1):
        for g_ in range(1, size + 1):
            b.edge(f"K_X:x_{h}", f"K_X:y_{g_}")
    for s, S in enumerate(inst.sets, start=1):
        for h in S:
            b.add(f"K_S{s}^1:x_{h}")
        for h in S:
            b.add(f"K_S{s}^2:x_{h}")
        for h in S:
            for g_ in S:
                b.edge(f"K_S{s}^1:x_{h}", f"K_S{s}^2:x_{g_}")
            b.edge(f"K_X:x_{h}", f"K_S{s}^1:x_{h}")
            b.edge(f"K_X:y_{h}", f"K_S{s}^2:x_{h}")
    lg = b.finish({"reduction": "x3c-maxmc", "bipartite": True, "radius": 3, "diameter": 4,
                   "threshold": 6 * inst.q})
    names = ["K_X"] + [f"K_S{s}" for s in range(1, k + 1)]
    groups = {name: [] for name in names}
    for v, lab in enumerate(lg.labels):
        groups[lab.split(":", 1)[0].split("^", 1)[0]].append(v)
    lg.meta["blocks"] = [groups[name] for name in names]
    return lg


# --- witness colourings -------------------------------------------------------------

def assignment_colouring(kind: str, inst, witness, lg: LabelledGraph) -> Colouring:
    """The forward-direction colouring for a satisfying assignment or an exact cover."""
    n = lg.graph.n
    ids = lg.index()
    if kind == "nae-dcut":
        if not nae_check(inst, witness):
            raise PreconditionError("assignment is not NAE-satisfying")
        red = set()
        for v, lab in enumerate(lg.labels):
            blk = _block_of(lab)
            if blk == "K" or (blk.startswith("X_") and witness[int(blk[2:]) - 1]):
                red.add(v)
        return "".join(RED if v in red else BLUE for v in range(n))
    if kind == "x3c-maxmc":
        _check_cover(inst, witness)
        chosen = {f"K_S{i + 1}" for i in witness}
        return "".join(BLUE if lab.split(":", 1)[0].split("^", 1)[0] in chosen else RED
                       for lab in lg.labels)
    if kind == "nae-pmc":
        return _pmc_witness(inst, witness, lg, ids)
    raise PreconditionError(f"unknown reduction {kind!r}")


def _pmc_witness(inst: NaeSatInstance, assignment, lg: LabelledGraph, ids: dict) -> Colouring:
    from .oracles import oracle_extend

    if not nae_check(inst, assignment):
        raise PreconditionError("assignment is not NAE-satisfying")
    red, blue = set(), {ids["u"]}
    for i in range(1, inst.var_count + 1):
        (blue if assignment[i - 1] else red).add(ids[f"x_{i}"])
    for j, clause in enumerate(inst.clauses, start=1):
        vals = [assignment[x - 1] for x in clause]
        for t, val in enumerate(vals, start=1):
            (blue if val else red).add(ids[f"k_{j}^{t}"])
        # a_j takes the colour of the clause vertex that is alone in its colour
        lone = next(val for val in vals if vals.count(val) == 1)
        (blue if lone else red).add(ids[f"a_{j}"])
    pc = apply_rules_r1_r4(lg.graph, PartialColouring(red, blue))
    if pc is None:
        raise RuntimeError("witness precolouring is inconsistent")
    c = oracle_extend(lg.graph, "pmc", pc.red, pc.blue)
    if c is None:
        raise RuntimeError("witness precolouring does not extend to a perfect colouring")
    return c


# --- instance I/O -------------------------------------------------------------------

def load_instance(path):
    data = json.loads(Path(path).read_text())
    if "vars" in data:
        return NaeSatInstance(int(data["vars"]), tuple(tuple(c) for c in data["clauses"]))
    if "universe" in data:
        return X3cInstance(int(data["universe"]), tuple(tuple(s) for s in data["sets"]))
    raise PreconditionError("instance JSON needs either 'vars'/'clauses' or 'universe'/'sets'")


def instance_to_dict(inst) -> dict:
    if isinstance(inst, NaeSatInstance):
        return {"vars": inst.var_count, "clauses": [list(c) for c in inst.clauses]}
    return {"universe": inst.universe_size, "sets": [list(s) for s in inst.sets]}


def save_labelled(lg: LabelledGraph, out, labels: bool = True) -> None:
    out = Path(out)
    out.write_text(format_graph(lg.graph, comments=[f"reduction {lg.meta.get('reduction', '')}"]))
    if labels:
        Path(str(out) + ".json").write_text(json.dumps(lg.sidecar(), indent=1, sort_keys=True) + "\n")
