"""Red-blue colourings, the propagation rules and the colouring verifiers.

A total colouring is a string over ``{"R", "B"}`` indexed by vertex id; that is
also its serialised form. A partial colouring is a pair of disjoint vertex sets.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Iterable, Optional

from .errors import PreconditionError
from .graph import Graph, induced_subgraph
from .matching import has_perfect_matching, is_matching

RED, BLUE = "R", "B"
Colouring = str


@dataclass(frozen=True)
class PartialColouring:
    red: frozenset
    blue: frozenset

    def __post_init__(self):
        object.__setattr__(self, "red", frozenset(self.red))
        object.__setattr__(self, "blue", frozenset(self.blue))
        if self.red & self.blue:
            raise PreconditionError(f"vertices coloured both ways: {sorted(self.red & self.blue)}")

    def uncoloured(self, n: int) -> list[int]:
        return [v for v in range(n) if v not in self.red and v not in self.blue]

    def is_total(self, n: int) -> bool:
        return len(self.red) + len(self.blue) == n

    def to_colouring(self, n: int) -> Colouring:
        if not self.is_total(n):
            raise PreconditionError("partial colouring is not total")
        return "".join(RED if v in self.red else BLUE for v in range(n))

    @classmethod
    def from_colouring(cls, c: Colouring) -> "PartialColouring":
        return cls(frozenset(i for i, x in enumerate(c) if x == RED),
                   frozenset(i for i, x in enumerate(c) if x == BLUE))


@dataclass(frozen=True)
class CutCertificate:
    cut_edges: tuple
    side_a: frozenset
    side_b: frozenset

    def to_dict(self) -> dict:
        return {"cut": [list(e) for e in self.cut_edges],
                "side_a": sorted(self.side_a), "side_b": sorted(self.side_b)}

    @classmethod
    def from_dict(cls, data: dict) -> "CutCertificate":
        cut = tuple(sorted((min(u, v), max(u, v)) for u, v in data["cut"]))
        return cls(cut, frozenset(data["side_a"]), frozenset(data["side_b"]))


def check_colouring(g: Graph, c: Colouring) -> None:
    if len(c) != g.n or set(c) - {RED, BLUE}:
        raise PreconditionError(f"colouring must be {g.n} characters over R/B, got {c!r}")


def swap(c: Colouring) -> Colouring:
    return c.translate(str.maketrans("RB", "BR"))


def uses_both(c: Colouring) -> bool:
    return RED in c and BLUE in c


def opposite_counts(g: Graph, c: Colouring) -> list[int]:
    counts = [0] * g.n
    for u, v in g.edges:
        if c[u] != c[v]:
            counts[u] += 1
            counts[v] += 1
    return counts


def bichromatic_edges(g: Graph, c: Colouring) -> list[tuple[int, int]]:
    return [(u, v) for u, v in g.edges if c[u] != c[v]]


def colouring_value(g: Graph, c: Colouring) -> int:
    check_colouring(g, c)
    return sum(1 for u, v in g.edges if c[u] != c[v])


def is_valid_d_colouring(g: Graph, c: Colouring, d: int) -> bool:
    check_colouring(g, c)
    if d < 1:
        raise PreconditionError("d must be positive")
    return uses_both(c) and max(opposite_counts(g, c)) <= d


def is_valid_colouring(g: Graph, c: Colouring) -> bool:
    return is_valid_d_colouring(g, c, 1)


def is_perfect_colouring(g: Graph, c: Colouring) -> bool:
    check_colouring(g, c)
    return uses_both(c) and all(k == 1 for k in opposite_counts(g, c))


def is_perfect_extendable(g: Graph, c: Colouring) -> bool:
    """True iff some perfect matching of g contains every bichromatic edge of c."""
    if not is_valid_colouring(g, c):
        raise PreconditionError("perfect-extendability is defined for valid colourings only")
    covered = set()
    for u, v in bichromatic_edges(g, c):
        covered.update((u, v))
    residual, _ = induced_subgraph(g, (v for v in range(g.n) if v not in covered))
    return has_perfect_matching(residual)


def cut_from_colouring(g: Graph, c: Colouring) -> CutCertificate:
    if not is_valid_colouring(g, c):
        raise PreconditionError("colouring is not a valid red-blue colouring")
    red = frozenset(i for i, x in enumerate(c) if x == RED)
    return CutCertificate(tuple(bichromatic_edges(g, c)), red, frozenset(range(g.n)) - red)


def colouring_from_cut(g: Graph, cert: CutCertificate) -> Colouring:
    a, b = cert.side_a, cert.side_b
    if a & b or a | b != frozenset(range(g.n)) or not a or not b:
        raise PreconditionError("cut sides must be two nonempty sets partitioning V")
    crossing = {(u, v) for u, v in g.edges if (u in a) != (v in a)}
    if crossing != set(cert.cut_edges):
        raise PreconditionError("cut edges differ from the edges between the two sides")
    if not is_matching(g, cert.cut_edges):
        raise PreconditionError("cut edges do not form a matching")
    return "".join(RED if v in a else BLUE for v in range(g.n))


# --- propagation ------------------------------------------------------------

def propagate(g: Graph, red: set, blue: set, d: int = 1, perfect: bool = False) -> Optional[int]:
    """Apply R1-R2 (and R3-R4 when ``perfect``) to fixpoint, mutating ``red``/``blue``.

    Returns the number of vertices moved, or None when a rule answers No.
    ``perfect`` requires d == 1.
    """
    n = g.n
    adj = g.adjacency
    col = [0] * n
    for v in red:
        col[v] = 1
    for v in blue:
        col[v] = 2
    cr = [0] * n
    cb = [0] * n
    for v in range(n):
        for w in adj[v]:
            if col[w] == 1:
                cr[v] += 1
            elif col[w] == 2:
                cb[v] += 1
    lim = d + 1
    heap = list(range(n))
    queued = [True] * n
    moves = 0

    def push(x):
        if not queued[x]:
            queued[x] = True
            heapq.heappush(heap, x)

    while heap:
        v = heapq.heappop(heap)
        queued[v] = False
        c = col[v]
        if c == 1:
            if cb[v] >= lim:
                return None
            if perfect and cr[v] == len(adj[v]):
                return None
            continue
        if c == 2:
            if cr[v] >= lim:
                return None
            if perfect and cb[v] == len(adj[v]):
                return None
            continue
        if cr[v] >= lim and cb[v] >= lim:
            return None
        if cr[v] >= lim:
            new = 1
        elif cb[v] >= lim:
            new = 2
        elif perfect and any(col[w] == 1 and cb[w] for w in adj[v]):
            new = 1
        elif perfect and any(col[w] == 2 and cr[w] for w in adj[v]):
            new = 2
        else:
            continue
        col[v] = new
        moves += 1
        (red if new == 1 else blue).add(v)
        counts = cr if new == 1 else cb
        push(v)
        for w in adj[v]:
            counts[w] += 1
            push(w)
            if perfect:
                for x in adj[w]:
                    push(x)
    return moves


def _process(g: Graph, pc: PartialColouring, d: int, perfect: bool) -> Optional[PartialColouring]:
    for v in pc.red | pc.blue:
        if not 0 <= v < g.n:
            raise PreconditionError(f"vertex {v} out of range")
    red, blue = set(pc.red), set(pc.blue)
    if propagate(g, red, blue, d, perfect) is None:
        return None
    return PartialColouring(frozenset(red), frozenset(blue))


def apply_rules_r1_r2(g: Graph, pc: PartialColouring, d: int = 1) -> Optional[PartialColouring]:
    """Colour-process (S, T) with R1 and R2; None means no red-blue (S,T)-d-colouring exists."""
    if d < 1:
        raise PreconditionError("d must be positive")
    return _process(g, pc, d, perfect=False)


def apply_rules_r1_r4(g: Graph, pc: PartialColouring) -> Optional[PartialColouring]:
    """Colour-process (S, T) with R1-R4 for d = 1; None means no perfect (S,T)-colouring exists."""
    return _process(g, pc, 1, perfect=True)


def extends(c: Colouring, pc: PartialColouring) -> bool:
    return all(c[v] == RED for v in pc.red) and all(c[v] == BLUE for v in pc.blue)


def colouring_from_sets(n: int, red: Iterable[int]) -> Colouring:
    red = set(red)
    return "".join(RED if v in red else BLUE for v in range(n))
