"""Exit criteria, one test each, with their time budgets.

Run ``pytest tests/test_acceptance.py -s`` to see the per-criterion lines
(they are also printed in the terminal summary of any run).
"""

import itertools
import time
from math import comb

import pytest

from c4tile.absorbing import absorbs, reach_count
from c4tile.constructions import build_H0, build_H1, steiner, threshold, two_cliques
from c4tile.errors import PipelineError
from c4tile.extremal import extremal_tiling, partition_ABC
from c4tile.hypergraph import is_C_free, min_degree1
from c4tile.lemma3 import solve_lemma3
from c4tile.solver import BOUND, SAT, UNSAT, find_perfect_tiling, max_tiling, verify_tiling

from conftest import oracle_perfect_8, pipeline_suite, random_hypergraph
from test_extremal import check_trace
from test_lemma3 import check_internal_invariants, full_xz, picky_xz

acceptance = pytest.mark.acceptance


def _report(number, ok, detail):
    print(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}")


def _big_int_threshold(n):
    # 8 * threshold, all in integers
    c8 = 8 if n % 8 == 0 else -4
    return 8 * comb(n - 1, 2) - 8 * comb(3 * n // 4, 2) + 3 * n + c8


@acceptance(1, "threshold arithmetic, n = 8..48, exact, < 1 ms")
def test_criterion_1_threshold():
    ns = range(8, 49, 4)
    t0 = time.perf_counter()
    values = [threshold(n).value for n in ns]
    elapsed = time.perf_counter() - t0
    ok = all(8 * v == _big_int_threshold(n) for n, v in zip(ns, values))
    _report(1, ok and elapsed < 1e-3, f"{len(values)} values, {elapsed * 1e3:.3f} ms")
    assert ok
    assert elapsed < 1e-3


@acceptance(2, "H0(8), H1(12): one below threshold, UNSAT, BOUND(n/4 - 1), < 10 s each")
@pytest.mark.parametrize("builder, n", [(build_H0, 8), (build_H1, 12)])
def test_criterion_2_tightness(builder, n):
    t0 = time.perf_counter()
    H = builder(n).hypergraph
    assert min_degree1(H) == threshold(n).value - 1
    perfect = find_perfect_tiling(H)
    assert perfect.verdict == UNSAT and perfect.nodes_explored >= 1
    best = max_tiling(H)
    assert (best.verdict, best.k) == (BOUND, n // 4 - 1)
    assert verify_tiling(H, best.tiling)
    elapsed = time.perf_counter() - t0
    _report(2, elapsed < 10, f"n={n}: nodes={perfect.nodes_explored}, max={best.k}, {elapsed:.2f} s")
    assert elapsed < 10


@acceptance(3, "Steiner systems valid for all feasible m <= 99, < 5 s")
def test_criterion_3_steiner():
    t0 = time.perf_counter()
    orders = [m for m in range(3, 100) if m % 6 in (1, 3)]
    for m in orders:
        s = steiner(m)
        cover = {p: 0 for p in itertools.combinations(range(m), 2)}
        for t in s.triples:
            for p in itertools.combinations(sorted(t), 2):
                cover[p] += 1
        assert set(cover.values()) == {1}
        H = s.as_hypergraph()
        assert {H.degree(v) for v in range(m)} == {(m - 1) // 2}
        assert is_C_free(H)
    elapsed = time.perf_counter() - t0
    _report(3, elapsed < 5, f"{len(orders)} orders, {elapsed:.2f} s")
    assert elapsed < 5


@acceptance(4, "solver agrees with the 35-split oracle on 200+ random n=8 instances, < 30 s")
def test_criterion_4_oracle():
    import random

    rng = random.Random(2024)
    t0 = time.perf_counter()
    disagreements = sat = 0
    total = 240
    for i in range(total):
        H = random_hypergraph(8, 0.05 + 0.9 * (i % 24) / 23, rng)
        cert = find_perfect_tiling(H)
        got = cert.verdict == SAT
        sat += got
        if got != oracle_perfect_8(H.edges) or (got and not verify_tiling(H, cert.tiling, True)):
            disagreements += 1
    elapsed = time.perf_counter() - t0
    _report(4, disagreements == 0 and elapsed < 30,
            f"{total} instances ({sat} SAT), {disagreements} disagreements, {elapsed:.2f} s")
    assert disagreements == 0
    assert 0 < sat < total
    assert elapsed < 30


@acceptance(5, "two cliques on 12: no cross reach, straddling 4-sets never absorbed, < 60 s")
def test_criterion_5_two_cliques():
    t0 = time.perf_counter()
    con = two_cliques(12)
    H = con.hypergraph
    left, right = set(con.part_A), set(con.part_B)
    cross = [(u, v) for u in sorted(left) for v in sorted(right)]
    assert all(reach_count(H, u, v, 1).count == 0 for u, v in cross)
    inside = [q for side in (left, right) for q in itertools.combinations(sorted(side), 4)]
    straddling = [q for q in itertools.combinations(range(12), 4)
                  if set(q) & left and set(q) & right]
    checked = 0
    for B in straddling:
        for A in inside:
            assert not absorbs(H, A, B)
            checked += 1
    elapsed = time.perf_counter() - t0
    _report(5, elapsed < 60, f"{len(cross)} cross pairs, {checked} (A, B) pairs, {elapsed:.2f} s")
    assert checked == len(straddling) * len(inside) == 465 * 30
    assert elapsed < 60


@acceptance(6, "pipeline soundness on 50+ near-extremal instances, n in {16, 24, 32}, < 5 min")
def test_criterion_6_pipeline():
    t0 = time.perf_counter()
    suite = pipeline_suite()
    assert len(suite) >= 50
    assert {ne.hypergraph.n for ne in suite} == {16, 24, 32}
    outcomes = {"ok": 0}
    for ne in suite:
        H = ne.hypergraph
        try:
            tiling, trace = extremal_tiling(H, C_hint=ne.C)
        except PipelineError as exc:
            assert exc.stage and exc.trace is not None
            # identities recorded so far on the partial trace still hold
            assert all(c.holds for c in exc.trace.claims if c.name.startswith(("4s", "s =", "|A2|", "|C2|")))
            outcomes[exc.code] = outcomes.get(exc.code, 0) + 1
            continue
        assert verify_tiling(H, tiling, require_perfect=True)
        check_trace(H, trace)
        outcomes["ok"] += 1
    elapsed = time.perf_counter() - t0
    _report(6, elapsed < 300, f"{len(suite)} instances {outcomes}, {elapsed:.2f} s")
    assert outcomes["ok"] > 0
    assert elapsed < 300


@acceptance(7, "X + Z tiling for |X| in {4, 8, 12} and the picky instance, invariants hold, < 30 s")
def test_criterion_7_lemma3():
    t0 = time.perf_counter()
    for size in (4, 8, 12):
        H, X, Z = full_xz(size)
        inst = solve_lemma3(H, X, Z, 0.25)
        assert len(inst.tiling) == size
        check_internal_invariants(H, inst)
    H, X, Z, x0, zstar = picky_xz()
    inst = solve_lemma3(H, X, Z, 0.25)
    assert inst.X0 == [x0] and inst.matching[x0] < inst.q
    assert zstar in inst.slots[inst.matching[x0]]
    check_internal_invariants(H, inst)
    elapsed = time.perf_counter() - t0
    _report(7, elapsed < 30, f"picky vertex {x0} took reserved triple {inst.slots[inst.matching[x0]]}, "
                             f"{elapsed:.2f} s")
    assert elapsed < 30


@acceptance(8, "asymptotic regime not reproducible; replaced by criteria 2, 5, 6, 7")
def test_criterion_8_replacement():
    # With the asymptotic constants the partition bounds leave nothing to test at
    # desk scale: |B| < alpha^2 n forces B empty and |C| >= (1 - eps) 3n/4 forces |C| = 3n/4.
    alpha, eps = 1e-6, 1e-18
    for n in range(16, 49, 4):
        assert alpha ** 2 * n < 1
        assert (1 - eps) * 3 * n / 4 > 3 * n / 4 - 1
    # the one instance shape that regime admits is already covered by the pipeline suite
    ne = next(ne for ne in pipeline_suite() if not ne.B and len(ne.A) == ne.hypergraph.n // 4)
    part = partition_ABC(ne.hypergraph, ne.C, alpha, eps)
    assert part.B_set == [] and all(c.holds for c in part.claims)
    replacements = {
        2: test_criterion_2_tightness, 5: test_criterion_5_two_cliques,
        6: test_criterion_6_pipeline, 7: test_criterion_7_lemma3,
    }
    assert all(callable(f) for f in replacements.values())
    _report(8, True, "documented replacement; see criteria 2, 5, 6, 7")
