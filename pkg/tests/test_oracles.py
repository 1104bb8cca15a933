import random
from itertools import product

import pytest

from conftest import complete, complete_bipartite, cube, cycle, path
from corpus import random_connected_graph
from matchcut.colouring import (
    colouring_value,
    is_perfect_colouring,
    is_perfect_extendable,
    is_valid_colouring,
    is_valid_d_colouring,
)
from matchcut.errors import BudgetExceeded, PreconditionError, SearchTimeout
from matchcut.graph import build_graph
from matchcut.oracles import (
    enumerate_perfect_matchings,
    extendable,
    oracle_blocks,
    oracle_enumerate,
    oracle_search,
    oracle_search_report,
    perfect_colourings,
    valid_colourings,
)
from matchcut.reductions import NaeSatInstance, reduce_nae_to_pmc


def test_enumerate_p4(p4):
    rep = oracle_enumerate(p4)
    assert (rep.has_mc, rep.max_mc, rep.min_mc) == (True, 2, 1)
    assert (rep.has_pmc, rep.has_dpm, rep.max_dpm) == (True, True, 2)


def test_enumerate_k33(k33):
    rep = oracle_enumerate(k33, ds=(1, 2))
    assert not (rep.has_mc or rep.has_pmc or rep.has_dpm)
    assert rep.max_mc is None and rep.min_mc is None and not rep.has_dcut[1]
    # classes of size 3 < 2d do not force monochromatic 2-colourings
    assert rep.has_dcut[2]


def test_enumerate_c6(c6):
    rep = oracle_enumerate(c6)
    assert (rep.has_mc, rep.max_mc, rep.min_mc, rep.has_pmc) == (True, 2, 2, False)
    # RRBBBB cuts {12, 05}, which extends to the perfect matching {12, 05, 34}
    assert (rep.has_dpm, rep.max_dpm) == (True, 2)


def test_k44_has_a_2_cut():
    # splitting both classes 2/2 gives every vertex exactly two opposite neighbours
    rep = oracle_enumerate(complete_bipartite(4, 4), ds=(2,))
    assert rep.has_dcut[2]
    assert is_valid_d_colouring(complete_bipartite(4, 4), rep.witnesses["dcut_2"], 2)
    assert oracle_search(complete_bipartite(4, 4), "dcut", 2).answer
    assert not oracle_search(complete_bipartite(4, 5), "dcut", 2).answer


def test_search_examples(q3):
    r = oracle_search(q3, "pmc")
    assert r.answer and is_perfect_colouring(q3, r.colouring) and r.value == 4
    lg = reduce_nae_to_pmc(NaeSatInstance(3, [(1, 2, 3)]))
    assert lg.graph.n == 34
    r = oracle_search(lg.graph, "pmc")
    assert r.answer and is_perfect_colouring(lg.graph, r.colouring)


def test_cube_has_three_perfect_colourings(q3):
    cols = perfect_colourings(q3)
    assert len(cols) == 3
    assert oracle_enumerate(q3).perfect_count == 3


def test_budget_and_refusals():
    with pytest.raises(BudgetExceeded):
        oracle_enumerate(path(23))
    with pytest.raises(BudgetExceeded):
        oracle_enumerate(path(6), budget=5)
    with pytest.raises(PreconditionError):
        oracle_enumerate(build_graph(4, [(0, 1), (2, 3)]))
    with pytest.raises(PreconditionError):
        oracle_search(build_graph(4, [(0, 1), (2, 3)]), "mc")
    with pytest.raises(PreconditionError):
        oracle_search(path(4), "dcut")
    with pytest.raises(PreconditionError):
        oracle_search(path(4), "nope")


def test_search_timeout_is_distinct():
    g = complete_bipartite(9, 9)
    with pytest.raises(SearchTimeout):
        oracle_search(g, "maxmc", timeout=1e-9)


def _report_invariants(rep):
    if rep.max_mc is not None:
        assert rep.min_mc <= rep.max_mc
    assert not rep.has_pmc or rep.has_dpm
    assert not rep.has_dpm or rep.has_mc
    assert rep.has_mc == rep.has_dcut[1]
    if rep.has_dpm:
        assert rep.max_dpm <= rep.max_mc


def _full_enumeration(g, ds):
    """Reference without swap canonicalisation: all 2^n strings, plain verifiers."""
    out = {"valid": [], "perfect": 0, "dcut": {d: False for d in ds}}
    for t in product("RB", repeat=g.n):
        c = "".join(t)
        for d in ds:
            if is_valid_d_colouring(g, c, d):
                out["dcut"][d] = True
        if is_valid_colouring(g, c):
            out["valid"].append(c)
        if is_perfect_colouring(g, c):
            out["perfect"] += 1
    return out


def test_canonical_enumeration_matches_full_enumeration():
    rng = random.Random(31)
    for _ in range(120):
        g = random_connected_graph(rng.randint(2, 8), rng, bipartite=rng.random() < 0.8)
        rep = oracle_enumerate(g, ds=(1, 2))
        _report_invariants(rep)
        full = _full_enumeration(g, (1, 2))
        vals = [colouring_value(g, c) for c in full["valid"]]
        assert rep.has_dcut == full["dcut"]
        assert rep.max_mc == (max(vals) if vals else None)
        assert rep.min_mc == (min(vals) if vals else None)
        assert 2 * rep.perfect_count == full["perfect"]
        assert rep.has_pmc == bool(full["perfect"])
        if g.n % 2 == 0 and full["valid"]:
            ext = [colouring_value(g, c) for c in full["valid"] if extendable(g, c)]
            assert rep.max_dpm == (max(ext) if ext else None)


def test_search_agrees_with_enumeration():
    rng = random.Random(37)
    for i in range(60):
        n = rng.randint(4, 14) if i % 2 else rng.randint(4, 9)
        g = random_connected_graph(n, rng, bipartite=rng.random() < 0.8)
        a = oracle_enumerate(g, ds=(1, 2))
        b = oracle_search_report(g, ds=(1, 2))
        for f in ("has_mc", "max_mc", "min_mc", "has_pmc", "has_dpm", "max_dpm", "has_dcut"):
            assert getattr(a, f) == getattr(b, f), (f, g.edges)


def test_witnesses_verify():
    rng = random.Random(41)
    for _ in range(80):
        g = random_connected_graph(rng.randint(3, 10), rng, bipartite=True)
        rep = oracle_enumerate(g, ds=(1, 2))
        w = rep.witnesses
        if rep.has_mc:
            assert colouring_value(g, w["max_mc"]) == rep.max_mc and is_valid_colouring(g, w["max_mc"])
            assert colouring_value(g, w["min_mc"]) == rep.min_mc
        if rep.has_pmc:
            assert is_perfect_colouring(g, w["pmc"])
        if rep.has_dpm:
            assert is_perfect_extendable(g, w["max_dpm"])
        if rep.has_dcut[2]:
            assert is_valid_d_colouring(g, w["dcut_2"], 2)


def test_block_oracle_matches_enumeration_when_blocks_are_singletons():
    g = cycle(6)
    a = oracle_enumerate(g)
    b = oracle_blocks(g, [[v] for v in range(g.n)])
    assert a.to_dict() == b.to_dict()
    with pytest.raises(PreconditionError):
        oracle_blocks(g, [[0, 1], [1, 2, 3, 4, 5]])
    with pytest.raises(PreconditionError):
        oracle_blocks(g, [[0, 1]])


def test_valid_colourings_helper(p4):
    assert sorted(valid_colourings(p4)) == ["RBBB", "RBBR", "RRBB", "RRRB"]
    assert len(valid_colourings(p4, both_orientations=True)) == 8


def test_perfect_matching_enumerator():
    assert len(enumerate_perfect_matchings(cycle(6))) == 2
    assert len(enumerate_perfect_matchings(complete(4))) == 3
    assert len(enumerate_perfect_matchings(complete_bipartite(3, 3))) == 6
    assert enumerate_perfect_matchings(path(3)) == []


def test_report_serialisation(p4):
    d = oracle_enumerate(p4, ds=(1, 2)).to_dict()
    assert set(d) == {"has_mc", "max_mc", "min_mc", "has_pmc", "has_dpm", "max_dpm", "has_dcut",
                      "perfect_count", "witnesses"}
    assert d["has_dcut"] == {"1": True, "2": True}
