"""Completion subroutines the polynomial solvers delegate to.

* ``perfect_mono_components`` completes a processed pair to a perfect colouring
  in which every component of the uncoloured subgraph is monochromatic.
* ``max_valid_independent_z`` / ``max_extendable_independent_z`` complete a
  processed pair whose uncoloured set is independent, maximising the value.

Ties between optimal completions go to the lexicographically smallest string.
"""
from __future__ import annotations

from typing import Optional

from .colouring import (
    BLUE,
    RED,
    Colouring,
    PartialColouring,
    is_perfect_colouring,
    is_perfect_extendable,
    is_valid_colouring,
)
from .errors import PreconditionError
from .graph import Graph
from .matching import kuhn


def _assignment(g: Graph, pc: PartialColouring, extra: dict) -> Colouring:
    out = []
    for v in range(g.n):
        if v in pc.red:
            out.append(RED)
        elif v in pc.blue:
            out.append(BLUE)
        else:
            out.append(extra[v])
    return "".join(out)


def perfect_mono_components(g: Graph, pc: PartialColouring) -> Optional[Colouring]:
    """Perfect colouring extending pc with every component of G[Z] monochromatic, or None."""
    n = g.n
    colour = {v: RED for v in pc.red}
    colour.update({v: BLUE for v in pc.blue})
    comps = g.induced_components(pc.uncoloured(n))
    if not comps:
        c = _assignment(g, pc, {})
        return c if is_perfect_colouring(g, c) else None

    comp_of = {}
    for i, comp in enumerate(comps):
        for z in comp:
            comp_of[z] = i

    # A component may take colour X only if each of its vertices sees exactly one
    # precoloured vertex of the other colour.
    domains = []
    for comp in comps:
        dom = []
        for x, other in ((BLUE, RED), (RED, BLUE)):
            if all(sum(1 for w in g.adjacency[z] if colour.get(w) == other) == 1 for z in comp):
                dom.append(x)
        if not dom:
            return None
        domains.append(dom)

    # Each coloured vertex w needs exactly ``need[w]`` more opposite neighbours, all
    # coming from adjacent components coloured against it.
    need = {}
    touching = {}
    for w, cw in colour.items():
        fixed = sum(1 for x in g.adjacency[w] if colour.get(x, cw) != cw)
        need[w] = 1 - fixed
        if need[w] < 0:
            return None
        weights = {}
        for x in g.adjacency[w]:
            if x in comp_of:
                weights[comp_of[x]] = weights.get(comp_of[x], 0) + 1
        touching[w] = weights

    constraints = [(w, colour[w], need[w], touching[w]) for w in sorted(colour)]
    by_comp: dict[int, list] = {i: [] for i in range(len(comps))}
    for k, (w, cw, nd, wts) in enumerate(constraints):
        for i in wts:
            by_comp[i].append(k)

    assigned: list[Optional[str]] = [None] * len(comps)

    def consistent(i: int) -> bool:
        for k in by_comp[i]:
            w, cw, nd, wts = constraints[k]
            got = 0
            possible = 0
            for j, wt in wts.items():
                if assigned[j] is None:
                    if any(x != cw for x in domains[j]):
                        possible += wt
                elif assigned[j] != cw:
                    got += wt
            if got > nd or got + possible < nd:
                return False
        return True

    def dfs(i: int) -> bool:
        if i == len(comps):
            return True
        for x in domains[i]:
            assigned[i] = x
            if consistent(i) and dfs(i + 1):
                return True
        assigned[i] = None
        return False

    if not dfs(0):
        return None
    extra = {z: assigned[comp_of[z]] for z in comp_of}
    c = _assignment(g, pc, extra)
    return c if is_perfect_colouring(g, c) else None


class _IndependentZ:
    """Shared bookkeeping for a processed pair with an independent uncoloured set."""

    def __init__(self, g: Graph, pc: PartialColouring):
        self.g = g
        self.pc = pc
        self.Z = pc.uncoloured(g.n)
        zset = set(self.Z)
        for z in self.Z:
            if zset & g.nbset(z):
                raise PreconditionError("uncoloured vertices are not independent")
        if not pc.red or not pc.blue:
            raise PreconditionError("both colours must already be present")
        colour = {v: RED for v in pc.red}
        colour.update({v: BLUE for v in pc.blue})
        self.colour = colour
        self.base = sum(1 for u, v in g.edges if u in colour and v in colour and colour[u] != colour[v])
        self.cap = {}
        for w, cw in colour.items():
            self.cap[w] = 1 - sum(1 for x in g.adjacency[w] if colour.get(x, cw) != cw)
        self.feasible = all(k >= 0 for k in self.cap.values())
        # options[z]: colour -> the precoloured partner that edge would consume (or None)
        self.options = {}
        for z in self.Z:
            reds = [w for w in g.adjacency[z] if colour[w] == RED]
            blues = [w for w in g.adjacency[z] if colour[w] == BLUE]
            if len(reds) > 1 or len(blues) > 1:
                raise PreconditionError("pair is not processed with R1-R2 (d=1)")
            self.options[z] = {BLUE: reds[0] if reds else None, RED: blues[0] if blues else None}


def _best_matching(iz: _IndependentZ, fixed: dict) -> Optional[dict]:
    """Largest set of bichromatic z-edges given colour choices in ``fixed``.

    Returns a map z -> partner for the z that end up bichromatic, or None if no
    choice respects the capacities.
    """
    forced, optional = [], []
    adj = {}
    for z in iz.Z:
        if z in fixed:
            p = iz.options[z][fixed[z]]
            if p is None:
                continue
            adj[z] = [p] if iz.cap[p] > 0 else []
            forced.append(z)
            continue
        partners = [p for p in (iz.options[z][BLUE], iz.options[z][RED]) if p is not None]
        adj[z] = sorted(p for p in partners if iz.cap[p] > 0)
        if len(partners) == 2:
            forced.append(z)
        else:
            optional.append(z)
    match_right = kuhn(forced, adj)
    if len(match_right) < len(forced):
        return None
    match_right = kuhn(optional, adj, match_right)
    return {z: p for p, z in match_right.items()}


def _colour_from_matching(iz: _IndependentZ, fixed: dict, partner: dict) -> Colouring:
    extra = {}
    for z in iz.Z:
        if z in partner:
            extra[z] = RED if iz.colour[partner[z]] == BLUE else BLUE
        elif z in fixed:
            extra[z] = fixed[z]
        else:
            # no bichromatic edge: take the colour of the (single-coloured) neighbourhood
            extra[z] = BLUE if iz.options[z][RED] is not None else RED
    return _assignment(iz.g, iz.pc, extra)


def max_valid_independent_z(g: Graph, pc: PartialColouring) -> Optional[Colouring]:
    """Maximum-value valid colouring extending pc when Z is independent, or None."""
    iz = _IndependentZ(g, pc)
    if not iz.feasible:
        return None
    best = _best_matching(iz, {})
    if best is None:
        return None
    target = len(best)
    fixed: dict = {}
    for z in iz.Z:
        for x in (BLUE, RED):
            trial = dict(fixed)
            trial[z] = x
            m = _best_matching(iz, trial)
            if m is not None and len(m) == target:
                fixed = trial
                best = m
                break
    c = _colour_from_matching(iz, fixed, best)
    assert is_valid_colouring(g, c)
    return c


def max_extendable_independent_z(g: Graph, pc: PartialColouring) -> Optional[Colouring]:
    """Maximum-value perfect-extendable colouring extending pc when Z is independent, or None.

    Branch and bound over the colour of each z (B before R), bounded by the
    unconstrained optimum from the matching formulation.
    """
    iz = _IndependentZ(g, pc)
    if not iz.feasible:
        return None
    unconstrained = _best_matching(iz, {})
    if unconstrained is None:
        return None
    ceiling = len(unconstrained)
    cap = dict(iz.cap)
    choice: dict = {}
    best: list = [None, -1]

    def dfs(i: int, gained: int) -> bool:
        if i == len(iz.Z):
            c = _assignment(g, pc, choice)
            if gained > best[1] and is_valid_colouring(g, c) and is_perfect_extendable(g, c):
                best[0], best[1] = c, gained
                return gained == ceiling
            return False
        if gained + (len(iz.Z) - i) <= best[1]:
            return False
        z = iz.Z[i]
        for x in (BLUE, RED):
            p = iz.options[z][x]
            if p is not None:
                if cap[p] <= 0:
                    continue
                cap[p] -= 1
            choice[z] = x
            done = dfs(i + 1, gained + (p is not None))
            if p is not None:
                cap[p] += 1
            if done:
                return True
        choice.pop(z, None)
        return False

    dfs(0, 0)
    return best[0]
