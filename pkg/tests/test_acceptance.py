"""Acceptance criteria 1-9. Each test records one PASS/FAIL line for the terminal summary.

Tolerances are exact (0) everywhere; time limits are asserted as stated.
"""
import random
import time
from itertools import permutations

import pytest

import conftest
from conftest import cube
from corpus import atlas_connected_bipartite, in_class, random_class_graphs, random_connected_graph
from matchcut.colouring import (
    PartialColouring,
    apply_rules_r1_r2,
    apply_rules_r1_r4,
    colouring_from_cut,
    colouring_value,
    cut_from_colouring,
    extends,
    is_perfect_colouring,
    is_perfect_extendable,
    is_valid_colouring,
    is_valid_d_colouring,
    swap,
)
from matchcut.graph import structural_report
from matchcut.oracles import (
    enumerate_perfect_matchings,
    extendable,
    oracle_blocks,
    oracle_enumerate,
    oracle_search,
    perfect_colourings,
    valid_colourings,
)
from matchcut.reductions import (
    NaeSatInstance,
    X3cInstance,
    assignment_colouring,
    nae_brute_force,
    reduce_nae_to_dcut,
    reduce_nae_to_pmc,
    reduce_x3c_to_maxmc,
    x3c_brute_force,
)
from matchcut.solvers import (
    dcut_bipartite_diam3,
    dcut_bipartite_rad2,
    maxdpm_bipartite_diam3,
    maxdpm_bipartite_rad2,
    maxmc_bipartite_diam3,
    maxmc_bipartite_rad2,
    pmc_bipartite_diam3,
)

RANDOM_GRAPHS = 1200   # per class, 8 <= n <= 10
FIG7 = X3cInstance(6, [(1, 2, 4), (2, 4, 5), (3, 5, 6)])


def record(key, ok, detail):
    conftest.ACCEPTANCE[key] = (ok, detail)
    print(f"{'PASS' if ok else 'FAIL'}  criterion {key}: {detail}")
    assert ok, detail


def _corpus(target):
    exhaustive = [g for g in atlas_connected_bipartite(7) if in_class(g, target)]
    return exhaustive, random_class_graphs(target, RANDOM_GRAPHS, seed=2024)


def _equivalence(target, checks):
    t0 = time.monotonic()
    exhaustive, rand = _corpus(target)
    mismatches = []
    compared = 0
    for g in exhaustive + rand:
        rep = oracle_enumerate(g, ds=(1, 2, 3))
        for name, fn, want in checks:
            got = fn(g)
            expected = want(rep)
            compared += 1
            if got != expected:
                mismatches.append((name, g.n, g.edges, got, expected))
    elapsed = time.monotonic() - t0
    return exhaustive, rand, compared, mismatches, elapsed


def test_criterion_1_diameter3_oracle_equivalence():
    checks = [("pmc", lambda g: pmc_bipartite_diam3(g).answer, lambda r: r.has_pmc)]
    for d in (1, 2, 3):
        checks.append((f"dcut{d}", lambda g, d=d: dcut_bipartite_diam3(g, d).answer, lambda r, d=d: r.has_dcut[d]))
    checks.append(("maxmc", lambda g: maxmc_bipartite_diam3(g).value, lambda r: r.max_mc))
    checks.append(("maxdpm", lambda g: maxdpm_bipartite_diam3(g).value, lambda r: r.max_dpm))
    ex, rand, compared, bad, elapsed = _equivalence("diam3", checks)
    ok = not bad and len(rand) >= 1000 and elapsed < 300
    record(1, ok, f"{len(ex)} exhaustive + {len(rand)} random diameter<=3 graphs, {compared} comparisons, "
                  f"{len(bad)} mismatches, {elapsed:.1f}s (limit 300s)" + (f"; first: {bad[0]}" if bad else ""))


def test_criterion_2_radius2_oracle_equivalence():
    checks = []
    for d in (1, 2, 3):
        checks.append((f"dcut{d}", lambda g, d=d: dcut_bipartite_rad2(g, d).answer, lambda r, d=d: r.has_dcut[d]))
    checks.append(("maxmc", lambda g: maxmc_bipartite_rad2(g).value, lambda r: r.max_mc))
    checks.append(("maxdpm", lambda g: maxdpm_bipartite_rad2(g).value, lambda r: r.max_dpm))
    ex, rand, compared, bad, elapsed = _equivalence("rad2", checks)
    ok = not bad and len(rand) >= 1000 and elapsed < 300
    record(2, ok, f"{len(ex)} exhaustive + {len(rand)} random radius<=2 graphs, {compared} comparisons, "
                  f"{len(bad)} mismatches, {elapsed:.1f}s (limit 300s)" + (f"; first: {bad[0]}" if bad else ""))


def test_criterion_3_cube():
    t0 = time.monotonic()
    q3 = cube()
    r = pmc_bipartite_diam3(q3)
    count = oracle_enumerate(q3).perfect_count
    listed = len(perfect_colourings(q3))
    elapsed = time.monotonic() - t0
    ok = r.answer and r.value == 4 and is_perfect_colouring(q3, r.colouring) and count == listed == 3 and elapsed < 1
    record(3, ok, f"Q3 pmc answer={'yes' if r.answer else 'no'} value={r.value}, "
                  f"{count} perfect colourings up to swap, {elapsed:.3f}s (limit 1s)")


def test_criterion_4_exact_cover_six_elements():
    t0 = time.monotonic()
    lg = reduce_x3c_to_maxmc(FIG7)
    rep = structural_report(lg.graph)
    best = oracle_blocks(lg.graph, lg.meta["blocks"]).max_mc
    c = assignment_colouring("x3c-maxmc", FIG7, x3c_brute_force(FIG7), lg)
    value = colouring_value(lg.graph, c)
    elapsed = time.monotonic() - t0
    ok = (lg.graph.n == 30 and rep.bipartite is not None and rep.radius == 3 and rep.diameter == 4
          and best == 12 and is_valid_colouring(lg.graph, c) and value == 12 and elapsed < 10)
    record(4, ok, f"n={lg.graph.n}, bipartite={rep.bipartite is not None}, radius={rep.radius}, "
                  f"diameter={rep.diameter}, block max={best}, cover colouring value={value}, {elapsed:.2f}s")


def _random_nae(rng):
    while True:
        n = rng.randint(2, 5)
        m = rng.randint(2, 3)
        clauses = []
        for _ in range(m):
            size = rng.choice([2, 3]) if n >= 3 else 2
            clauses.append(tuple(rng.sample(range(1, n + 1), size)))
        inst = NaeSatInstance(n, clauses)
        if all(sum(1 for c in clauses if x in c) <= 3 for x in range(1, n + 1)):
            return inst


def _random_x3c(rng):
    size = rng.choice([3, 6, 9])
    k = rng.randint(2, 6)
    return X3cInstance(size, [tuple(rng.sample(range(1, size + 1), 3)) for _ in range(k)])


def test_criterion_5_reduction_equivalence():
    t0 = time.monotonic()
    rng = random.Random(55)
    bad = []
    nae_seen = {True: 0, False: 0}
    odd_cycles = [NaeSatInstance(k, [(i, i % k + 1) for i in range(1, k + 1)]) for k in (3, 5)]
    odd_cycles.append(NaeSatInstance(4, [(1, 2), (2, 3), (1, 3), (3, 4)]))
    for inst in odd_cycles + [_random_nae(rng) for _ in range(80)]:
        lg = reduce_nae_to_dcut(inst, 2)
        got = oracle_blocks(lg.graph, lg.meta["blocks"], ds=(2,)).has_dcut[2]
        want = nae_brute_force(inst) is not None
        nae_seen[want] += 1
        if got != want:
            bad.append(("nae-dcut", inst))
    x3c_seen = {True: 0, False: 0}
    for _ in range(40):
        inst = _random_x3c(rng)
        lg = reduce_x3c_to_maxmc(inst)
        best = oracle_blocks(lg.graph, lg.meta["blocks"]).max_mc
        got = best == lg.meta["threshold"]
        want = x3c_brute_force(inst) is not None
        x3c_seen[want] += 1
        if got != want:
            bad.append(("x3c", inst))
    pmc = 0
    for clause in permutations((1, 2, 3)):
        inst = NaeSatInstance(3, [clause])
        got = oracle_search(reduce_nae_to_pmc(inst).graph, "pmc").answer
        pmc += 1
        if got != (nae_brute_force(inst) is not None):
            bad.append(("nae-pmc", inst))
    elapsed = time.monotonic() - t0
    ok = (not bad and sum(nae_seen.values()) >= 50 and sum(x3c_seen.values()) >= 20 and pmc >= 5
          and min(nae_seen.values()) > 0 and min(x3c_seen.values()) > 0 and elapsed < 600)
    record(5, ok, f"nae-dcut {sum(nae_seen.values())} (sat {nae_seen[True]}/unsat {nae_seen[False]}), "
                  f"x3c {sum(x3c_seen.values())} (cover {x3c_seen[True]}/none {x3c_seen[False]}), "
                  f"nae-pmc one-clause {pmc}; {len(bad)} disagreements, {elapsed:.1f}s (limit 600s)")


def test_criterion_6_structural_claims():
    t0 = time.monotonic()
    rng = random.Random(66)
    graphs = []
    for _ in range(40):
        graphs.append(("dcut", reduce_nae_to_dcut(_random_nae(rng), rng.choice([2, 3]))))
    for _ in range(40):
        graphs.append(("x3c", reduce_x3c_to_maxmc(_random_x3c(rng))))
    for clauses in ([(1, 2, 3)], [(1, 2, 3), (2, 3, 4)], [(1, 2, 3), (1, 4, 5), (1, 6, 7), (2, 4, 6),
                                                         (2, 5, 7), (3, 4, 7), (3, 5, 6)]):
        graphs.append(("pmc", reduce_nae_to_pmc(NaeSatInstance(max(map(max, clauses)), clauses))))
    claims = {"pmc": (4, None), "dcut": (3, 4), "x3c": (3, 4)}
    bad = 0
    for kind, lg in graphs:
        rep = structural_report(lg.graph)
        radius, diameter = claims[kind]
        if rep.bipartite is None or rep.radius != radius or (diameter is not None and rep.diameter != diameter):
            bad += 1
    elapsed = time.monotonic() - t0
    ok = bad == 0 and elapsed < 60
    record(6, ok, f"{len(graphs)} reduction graphs, {bad} violating bipartite/radius/diameter claims, "
                  f"{elapsed:.1f}s (limit 60s)")


def test_criterion_7_rule_soundness():
    t0 = time.monotonic()
    rng = random.Random(77)
    pairs = unsound = 0
    while pairs < 10_000:
        g = random_connected_graph(rng.randint(2, 8), rng, bipartite=rng.random() < 0.6)
        sols = {d: valid_colourings(g, d, both_orientations=True) for d in (1, 2)}
        perfect = [c for c in sols[1] if is_perfect_colouring(g, c)]
        for _ in range(25):
            k = rng.randint(1, min(3, g.n))
            chosen = rng.sample(range(g.n), k)
            cut = rng.randint(0, k)
            pc = PartialColouring(frozenset(chosen[:cut]), frozenset(chosen[cut:]))
            mode = rng.choice(["r12d1", "r12d2", "r14"])
            if mode == "r14":
                out, space = apply_rules_r1_r4(g, pc), perfect
            else:
                d = 1 if mode == "r12d1" else 2
                out, space = apply_rules_r1_r2(g, pc, d), sols[d]
            respecting = [c for c in space if extends(c, pc)]
            pairs += 1
            if out is None:
                unsound += bool(respecting)
            elif not (pc.red <= out.red and pc.blue <= out.blue and all(extends(c, out) for c in respecting)):
                unsound += 1
    elapsed = time.monotonic() - t0
    ok = unsound == 0 and elapsed < 300
    record(7, ok, f"{pairs} precoloured pairs on graphs with n<=8, {unsound} unsound outcomes, "
                  f"{elapsed:.1f}s (limit 300s)")


def test_criterion_8_duality_and_symmetry():
    t0 = time.monotonic()
    rng = random.Random(88)
    seen = bad = perfect = 0
    while seen < 10_000:
        g = random_connected_graph(rng.randint(2, 10), rng, bipartite=rng.random() < 0.7)
        cols = valid_colourings(g, 1, both_orientations=True)
        if not cols:
            continue
        for c in rng.sample(cols, min(len(cols), 20)):
            seen += 1
            cert = cut_from_colouring(g, c)
            back = colouring_from_cut(g, cert)
            s = swap(c)
            if back != c or cut_from_colouring(g, back).cut_edges != cert.cut_edges:
                bad += 1
            if (not is_valid_colouring(g, s) or colouring_value(g, s) != colouring_value(g, c)
                    or is_perfect_colouring(g, s) != is_perfect_colouring(g, c)
                    or extendable(g, s) != extendable(g, c)
                    or set(cut_from_colouring(g, s).cut_edges) != set(cert.cut_edges)):
                bad += 1
            if is_perfect_colouring(g, c):
                perfect += 1
                bad += 2 * colouring_value(g, c) != g.n
    elapsed = time.monotonic() - t0
    ok = bad == 0 and elapsed < 60
    record(8, ok, f"{seen} valid colourings ({perfect} perfect), {bad} violations, {elapsed:.1f}s (limit 60s)")


def test_criterion_9_extendability_equivalence():
    t0 = time.monotonic()
    graphs = list(atlas_connected_bipartite(7))
    graphs += random_class_graphs("diam3", 300, seed=99) + random_class_graphs("rad2", 300, seed=100)
    checked = bad = 0
    for g in graphs:
        pms = [set(m) for m in enumerate_perfect_matchings(g)]
        for c in valid_colourings(g, 1):
            cut = {(u, v) for u, v in g.edges if c[u] != c[v]}
            want = any(cut <= m for m in pms)
            checked += 1
            bad += is_perfect_extendable(g, c) != want
    elapsed = time.monotonic() - t0
    ok = bad == 0 and checked > 0 and elapsed < 120
    record(9, ok, f"{checked} valid colourings on {len(graphs)} corpus graphs (n<=10), {bad} disagreements "
                  f"with perfect-matching enumeration, {elapsed:.1f}s (limit 120s)")
