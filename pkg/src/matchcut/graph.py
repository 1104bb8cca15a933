"""Simple undirected graphs on vertices 0..n-1, BFS metrics and the text format.

Graphs are immutable once built. Neighbour lists are sorted ascending so every
downstream branching order is reproducible.
"""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Optional, TextIO

from .errors import GraphError

INF = math.inf


@dataclass(frozen=True)
class Graph:
    n: int
    edges: tuple[tuple[int, int], ...]
    adjacency: tuple[tuple[int, ...], ...] = field(repr=False, compare=False)
    _nbsets: tuple[frozenset, ...] = field(repr=False, compare=False)

    @property
    def m(self) -> int:
        return len(self.edges)

    def neighbours(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def nbset(self, v: int) -> frozenset:
        return self._nbsets[v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._nbsets[u]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def induced_components(self, vertices: Iterable[int]) -> list[list[int]]:
        """Connected components of G[vertices], each sorted, ordered by smallest vertex."""
        inside = set(vertices)
        seen: set[int] = set()
        comps = []
        for s in sorted(inside):
            if s in seen:
                continue
            seen.add(s)
            comp = [s]
            queue = deque([s])
            while queue:
                x = queue.popleft()
                for y in self.adjacency[x]:
                    if y in inside and y not in seen:
                        seen.add(y)
                        comp.append(y)
                        queue.append(y)
            comps.append(sorted(comp))
        return comps


def build_graph(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    if n < 0:
        raise GraphError(f"vertex count must be nonnegative, got {n}")
    canon = []
    seen = set()
    for e in edges:
        u, v = int(e[0]), int(e[1])
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"endpoint out of range in edge ({u}, {v}) for n={n}")
        if u == v:
            raise GraphError(f"self-loop at vertex {u}")
        key = (u, v) if u < v else (v, u)
        if key in seen:
            raise GraphError(f"duplicate edge {key}")
        seen.add(key)
        canon.append(key)
    canon.sort()
    adj: list[list[int]] = [[] for _ in range(n)]
    for u, v in canon:
        adj[u].append(v)
        adj[v].append(u)
    adjacency = tuple(tuple(sorted(a)) for a in adj)
    return Graph(n, tuple(canon), adjacency, tuple(frozenset(a) for a in adjacency))


@dataclass(frozen=True)
class Bipartition:
    class1: frozenset
    class2: frozenset

    def side(self, v: int) -> int:
        return 1 if v in self.class1 else 2


@dataclass(frozen=True)
class StructuralReport:
    n: int
    m: int
    connected: bool
    bipartite: Optional[Bipartition]
    odd_cycle: Optional[tuple[int, ...]]
    radius: float
    diameter: float
    center: Optional[int]

    def to_dict(self) -> dict:
        def num(x):
            return "inf" if x == INF else int(x)
        bip = None
        if self.bipartite is not None:
            bip = {"class1": sorted(self.bipartite.class1), "class2": sorted(self.bipartite.class2)}
        return {
            "n": self.n,
            "m": self.m,
            "connected": self.connected,
            "bipartite": self.bipartite is not None,
            "bipartition": bip,
            "odd_cycle": list(self.odd_cycle) if self.odd_cycle is not None else None,
            "radius": num(self.radius),
            "diameter": num(self.diameter),
            "center": self.center,
        }


def _check_vertex(g: Graph, v: int) -> None:
    if not 0 <= v < g.n:
        raise GraphError(f"vertex {v} out of range for n={g.n}")


def bfs_distances(g: Graph, v: int) -> list:
    """Shortest-path distance from v to every vertex; INF where unreachable."""
    _check_vertex(g, v)
    dist: list = [INF] * g.n
    dist[v] = 0
    queue = deque([v])
    while queue:
        x = queue.popleft()
        for y in g.adjacency[x]:
            if dist[y] == INF:
                dist[y] = dist[x] + 1
                queue.append(y)
    return dist


def eccentricity(g: Graph, v: int) -> float:
    return max(bfs_distances(g, v))


def connected_components(g: Graph) -> list[list[int]]:
    return g.induced_components(range(g.n))


def is_connected(g: Graph) -> bool:
    return g.n > 0 and len(connected_components(g)) == 1


def bipartition(g: Graph) -> tuple[Optional[Bipartition], Optional[tuple[int, ...]]]:
    """Two-colour g by BFS. Returns (bipartition, None) or (None, odd cycle)."""
    side = [-1] * g.n
    parent = [-1] * g.n
    for s in range(g.n):
        if side[s] != -1:
            continue
        side[s] = 0
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y in g.adjacency[x]:
                if side[y] == -1:
                    side[y] = 1 - side[x]
                    parent[y] = x
                    queue.append(y)
                elif side[y] == side[x]:
                    return None, _odd_cycle(parent, x, y)
    c1 = frozenset(v for v in range(g.n) if side[v] == 0)
    c2 = frozenset(v for v in range(g.n) if side[v] == 1)
    return Bipartition(c1, c2), None


def _odd_cycle(parent: list[int], x: int, y: int) -> tuple[int, ...]:
    # x and y sit on the same BFS level, so walking up in lockstep meets at their LCA
    left, right = [x], [y]
    while left[-1] != right[-1]:
        left.append(parent[left[-1]])
        right.append(parent[right[-1]])
    return tuple(left + right[-2::-1])


def structural_report(g: Graph) -> StructuralReport:
    if g.n < 1:
        raise GraphError("structural report needs at least one vertex")
    bip, cycle = bipartition(g)
    eccs = [eccentricity(g, v) for v in range(g.n)]
    radius = min(eccs)
    diameter = max(eccs)
    connected = diameter != INF
    center = eccs.index(radius) if connected else None
    return StructuralReport(g.n, g.m, connected, bip, cycle, radius, diameter, center)


def common_neighbours(g: Graph, u: int, v: int) -> frozenset:
    _check_vertex(g, u)
    _check_vertex(g, v)
    if u == v:
        raise GraphError("common_neighbours needs two distinct vertices")
    return g.nbset(u) & g.nbset(v)


def induced_distances(g: Graph, vertices: Iterable[int], source: int) -> dict[int, int]:
    """BFS distances from source inside G[vertices]; unreachable vertices are omitted."""
    inside = set(vertices)
    dist = {source: 0}
    queue = deque([source])
    while queue:
        x = queue.popleft()
        for y in g.adjacency[x]:
            if y in inside and y not in dist:
                dist[y] = dist[x] + 1
                queue.append(y)
    return dist


# --- text format ------------------------------------------------------------

def parse_graph(text: str) -> Graph:
    """Read the DIMACS-like format: ``p <n> <m>`` then ``e <u> <v>`` lines, 1-based."""
    n = m = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        tok = line.split()
        if tok[0] == "p":
            if n is not None:
                raise GraphError(f"line {lineno}: second problem line")
            nums = tok[2:] if len(tok) == 4 else tok[1:]
            try:
                n, m = int(nums[0]), int(nums[1])
            except (IndexError, ValueError):
                raise GraphError(f"line {lineno}: malformed problem line {line!r}") from None
        elif tok[0] == "e":
            if n is None:
                raise GraphError(f"line {lineno}: edge before problem line")
            try:
                u, v = int(tok[1]), int(tok[2])
            except (IndexError, ValueError):
                raise GraphError(f"line {lineno}: malformed edge line {line!r}") from None
            edges.append((u - 1, v - 1))
        else:
            raise GraphError(f"line {lineno}: unknown line {line!r}")
    if n is None:
        raise GraphError("missing problem line")
    if len(edges) != m:
        raise GraphError(f"problem line declares {m} edges, found {len(edges)}")
    return build_graph(n, edges)


def format_graph(g: Graph, comments: Iterable[str] = ()) -> str:
    lines = [f"c {c}" for c in comments]
    lines.append(f"p {g.n} {g.m}")
    lines.extend(f"e {u + 1} {v + 1}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


def read_graph(fh: TextIO) -> Graph:
    return parse_graph(fh.read())


def load_graph(path) -> Graph:
    with open(path) as fh:
        return read_graph(fh)


def save_graph(g: Graph, path) -> None:
    with open(path, "w") as fh:
        fh.write(format_graph(g))


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> tuple[Graph, list[int]]:
    """G[vertices] relabelled to 0..k-1; the second value maps new ids back to old ones."""
    keep = sorted(set(vertices))
    index = {v: i for i, v in enumerate(keep)}
    edges = [(index[u], index[v]) for u, v in g.edges if u in index and v in index]
    return build_graph(len(keep), edges), keep
