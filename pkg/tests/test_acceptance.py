"""Acceptance suite: one test per criterion.

The conftest prints one PASS/FAIL line per criterion in the terminal summary.
"""

from __future__ import annotations

import random
import time
from itertools import permutations

import pytest

from mixvol import criteria as cr
from mixvol import systems as sy
from mixvol.fixtures import (E1, E2, bottom_edge, dense_linear_system, pentagon_strict_system,
                             pentagon_system, prism_system, square, standard_simplex)
from mixvol.mixed import METHODS, mixed_volume
from mixvol.polytope import Polytope
from mixvol.sampling import (example_support_construction, random_collection, random_cramer_system,
                             random_equal_instance, random_failing_system, random_lattice_polytope,
                             random_nested_instance, random_sub_polytope)


def _all_methods(Ps):
    r = mixed_volume(Ps, "all")
    assert set(r.methods) == set(METHODS) and r.agree
    return r.normalized


def _faces_by_label(reports):
    return {r.labels: r for r in reports}


def test_criterion_01_pentagon_equality():
    t0 = time.perf_counter()
    S = pentagon_system()
    Ps, Q = sy.newton_polytopes(S)
    assert _all_methods(Ps) == 6 == Q.normalized_volume
    assert not cr.strict_monotonicity_equal(Ps, Q).strict
    ok, reps = sy.ber_check(S)
    assert ok
    for r in reps:
        assert (r.rank_C, r.rank_Abar) == ((2, 2) if r.dim_F == 1 else (1, 1))
    assert time.perf_counter() - t0 < 1.0


def test_criterion_02_pentagon_strict():
    t0 = time.perf_counter()
    S = pentagon_strict_system()
    Ps, Q = sy.newton_polytopes(S)
    v = cr.strict_monotonicity_equal(Ps, Q)
    assert v.strict
    labels = sy.face_labels(S, Q.face_in_direction(v.witness["normal"]))
    assert tuple(j + 1 for j in labels) == (2, 3)
    ok, reps = sy.ber_check(S)
    r = _faces_by_label(reps)[(2, 3)]
    assert not ok and r.rank_C == 1 and r.rank_Abar == 2
    mv = _all_methods(Ps)
    assert mv < 6
    assert time.perf_counter() - t0 < 1.0


def test_criterion_03_prism():
    t0 = time.perf_counter()
    S = prism_system()
    _, Q = sy.newton_polytopes(S)
    assert Q.normalized_volume == 3
    ok, reps = sy.ber_check(S)
    r = _faces_by_label(reps)[(5, 6)]
    assert not ok and r.rank_C == 1 and r.rank_Abar == 2
    rep = sy.analyze_system(S)
    assert any("strictly less than n!Vol(Q) isolated solutions or infinitely many" in c for c in rep.conclusions)
    assert time.perf_counter() - t0 < 1.0


def test_criterion_04_criteria_vs_oracle():
    t0 = time.perf_counter()
    rng = random.Random(4)
    counts = {"equal": 0, "general": 0, "equivalence": 0}
    verdicts = {"equal": set(), "general": set()}
    for n, box, N in [(2, 5, 200), (3, 3, 50)]:
        for _ in range(N):
            Ps, Q = random_equal_instance(rng, n, box)
            v = cr.strict_monotonicity_equal(Ps, Q)
            lhs = mixed_volume(Ps, "inductive").normalized
            assert v.strict == (lhs < Q.normalized_volume)
            counts["equal"] += 1
            verdicts["equal"].add(v.strict)

            while True:
                Ps, Qs = random_nested_instance(rng, n, box)
                if len(set(Qs)) > 1:
                    break
            g = cr.strict_monotonicity_general(Ps, Qs)
            lhs = mixed_volume(Ps, "inductive").normalized
            rhs = mixed_volume(Qs, "inductive").normalized
            assert g.strict == (lhs < rhs)
            counts["general"] += 1
            verdicts["general"].add(g.strict)
            assert cr.main3_essential_direction(Ps, Qs).strict == g.strict
            counts["equivalence"] += 1
    assert counts == {"equal": 250, "general": 250, "equivalence": 250}
    # both outcomes must be exercised
    assert verdicts == {"equal": {True, False}, "general": {True, False}}
    assert time.perf_counter() - t0 < 300


def test_criterion_05_algorithm_agreement():
    t0 = time.perf_counter()
    fixtures = [[Polytope(E1), Polytope(E2)], [square(), square()], [bottom_edge(), square()]]
    for S in (pentagon_system(), pentagon_strict_system(), prism_system(), dense_linear_system()):
        fixtures.append(sy.newton_polytopes(S)[0])
    fixtures.append([sy.newton_polytopes(prism_system())[1]] * 3)
    for Ps in fixtures:
        _all_methods(Ps)
    rng = random.Random(5)
    for n, box, N in [(2, 5, 200), (3, 3, 50)]:
        for _ in range(N):
            _all_methods(random_collection(rng, n, box))
    assert time.perf_counter() - t0 < 300


def test_criterion_06_axioms():
    rng = random.Random(6)
    ind = lambda Ps: mixed_volume(Ps, "inductive").normalized
    for _ in range(30):
        Ps = random_collection(rng, 3, 2)
        base = ind(Ps)
        # symmetry
        for perm in permutations(range(3)):
            assert ind([Ps[i] for i in perm]) == base
        # translation invariance
        moved = [P.translate(tuple(rng.randint(-3, 3) for _ in range(3))) for P in Ps]
        assert mixed_volume(moved, "all").normalized == base
        # diagonal
        assert mixed_volume([Ps[0]] * 3, "all").value == Ps[0].euclidean_volume
    for _ in range(30):
        P, P2, R = (random_lattice_polytope(rng, 2, 4) for _ in range(3))
        # multilinearity in the first slot
        assert ind([P + R, P2]) == ind([P, P2]) + ind([R, P2])
        # homogeneity
        assert ind([P.dilate(3), P2]) == 3 * ind([P, P2])
    for _ in range(30):
        Qs = [random_lattice_polytope(rng, 2, 4) for _ in range(2)]
        Ps = [random_sub_polytope(rng, Q) for Q in Qs]
        # monotonicity
        assert ind(Ps) <= ind(Qs)


def test_criterion_07_deficit_bound():
    d = cr.volume_deficit_bound([bottom_edge(), square()], square(), (0, 1), [0])
    assert d.bound == 1 and d.actual_deficit == 1
    rng = random.Random(7)
    certified = 0
    tries = 0
    while certified < 50:
        tries += 1
        assert tries < 5000
        n = 2 if tries % 3 else 3
        Ps, Q = random_equal_instance(rng, n, 5 if n == 2 else 3)
        best = cr.best_deficit_bound(Ps, Q)
        if best is None:
            continue
        assert best.actual_deficit >= best.bound
        certified += 1
    for n in (2, 3):
        simplex = standard_simplex(n)
        origin = Polytope([tuple(0 for _ in range(n))])
        v = tuple(1 for _ in range(n))
        for m in range(2, n + 1):
            with pytest.raises(cr.HypothesisError) as exc:
                cr.volume_deficit_bound([origin] * n, simplex, v, list(range(m)))
            assert exc.value.hypothesis == "essential"


def test_criterion_08_generalized_cramer():
    rng = random.Random(8)
    for k in range(100):
        S = random_cramer_system(rng, 2 if k < 70 else 3)
        assert all(m != 0 for _, m in sy.maximal_minors(S))
        rep = sy.analyze_system(S)
        assert rep.ber_pass and rep.cramer_pass
        assert any(sy.MAXIMAL_CONCLUSION in c and c.endswith(f"= {rep.volume_bound}") for c in rep.conclusions)
    rep = sy.analyze_system(dense_linear_system())
    assert rep.cramer_pass and rep.volume_bound == 1
    assert any(c.endswith("= 1") for c in rep.conclusions)


def test_criterion_09_failure_linkage():
    rng = random.Random(9)
    systems = [prism_system(), pentagon_strict_system()]
    systems += [random_failing_system(rng, 2 if k % 2 else 3) for k in range(50)]
    checked = 0
    for S in systems:
        _, reps = sy.ber_check(S)
        for r in reps:
            if r.passed:
                continue
            link = sy.failure_linkage(S, r)
            Ps, Q = sy.newton_polytopes(link.transformed)
            touching = [i for i, P in enumerate(Ps) if P.support(r.face.normal) == Q.support(r.face.normal)]
            assert len(touching) <= r.dim_F
            assert len(link.zero_rows) >= r.rank_Abar - r.rank_C
            assert any(F.key() == r.face.key() for F, _ in cr.touch_deficient_faces(Ps, Q))
            assert cr.strict_monotonicity_equal(Ps, Q).strict
            checked += 1
    assert checked >= 52


def test_criterion_10_support_construction():
    rng = random.Random(10)
    for n in (2, 3):
        for _ in range(100):
            Ps, Q = example_support_construction(rng, n, 4 if n == 2 else 3)
            v = cr.strict_monotonicity_equal(Ps, Q)
            assert not v.strict
            assert mixed_volume(Ps, "inductive").normalized == Q.normalized_volume
