"""Maximum-cardinality matching in bipartite graphs (augmenting paths)."""
from __future__ import annotations

from typing import Optional

from .errors import PreconditionError, UnsupportedGraphClass
from .graph import Bipartition, Graph, bipartition

Matching = frozenset  # of (u, v) pairs with u < v


def _augment(x: int, adj, match_right: dict, seen: set) -> bool:
    for y in adj[x]:
        if y in seen:
            continue
        seen.add(y)
        if y not in match_right or _augment(match_right[y], adj, match_right, seen):
            match_right[y] = x
            return True
    return False


def kuhn(left: list, adj, match_right: Optional[dict] = None) -> dict:
    """Grow ``match_right`` (right -> left) by one augmenting-path search per free left vertex.

    Starting from any matching, every left vertex that was matched stays matched,
    and the result is maximum over the given left set.
    """
    match_right = {} if match_right is None else match_right
    matched_left = set(match_right.values())
    for x in left:
        if x not in matched_left and _augment(x, adj, match_right, set()):
            matched_left.add(x)
    return match_right


def max_bipartite_matching(g: Graph, bip: Bipartition) -> Matching:
    if bip.class1 | bip.class2 != frozenset(range(g.n)) or bip.class1 & bip.class2:
        raise PreconditionError("bipartition does not partition the vertex set")
    for u, v in g.edges:
        if (u in bip.class1) == (v in bip.class1):
            raise PreconditionError(f"edge ({u}, {v}) does not cross the bipartition")
    left = sorted(bip.class1)
    match_right = kuhn(left, g.adjacency)
    return frozenset((min(x, y), max(x, y)) for y, x in match_right.items())


def is_matching(g: Graph, edges) -> bool:
    used = set()
    for u, v in edges:
        if not g.has_edge(u, v) or u in used or v in used:
            return False
        used.update((u, v))
    return True


def has_perfect_matching(g: Graph) -> bool:
    if g.n == 0:
        return True
    if g.n % 2:
        return False
    bip, _ = bipartition(g)
    if bip is None:
        raise UnsupportedGraphClass("perfect matching on non-bipartite graphs of even order is not supported")
    if len(bip.class1) != len(bip.class2):
        return False
    return 2 * len(max_bipartite_matching(g, bip)) == g.n
