from __future__ import annotations

import random
from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given, strategies as st

from mixvol import mixed as mv
from mixvol.criteria import is_essential
from mixvol.errors import CrossCheckError, DimensionError, InputError
from mixvol.fixtures import E1, E2, PRISM_POINTS, SQUARE
from mixvol.polytope import Polytope, minkowski_sum

from .oracles import normalized_mv_oracle
from .strategies import collection, nested_instance

P1 = [(0, 0), (1, 2), (2, 1)]
P2_EQUAL = [(2, 0), (0, 1), (1, 2)]
P2_STRICT = [(2, 0), (0, 1), (1, 1)]


def polys(*groups):
    return [Polytope(g) for g in groups]


# ---------------------------------------------------------------- examples

def test_polarization_examples():
    assert mv.mixed_volume_polarization(polys(E1, E2)) == Fraction(1, 2)
    assert mv.normalized_mixed_volume_polarization(polys(E1, E2)) == 1
    assert mv.mixed_volume_polarization(polys(SQUARE, SQUARE)) == 1
    assert mv.mixed_volume_polarization(polys(P1, P2_EQUAL)) == 3


def test_polarization_needs_n_members():
    with pytest.raises(DimensionError):
        mv.mixed_volume_polarization(polys(SQUARE, SQUARE, SQUARE))


def test_oracle_values_frozen():
    # computed once with the shoelace/scipy oracle in tests/oracles.py
    assert normalized_mv_oracle([P1, P2_EQUAL]) == 6
    assert normalized_mv_oracle([P1, P2_STRICT]) == 5
    assert normalized_mv_oracle([PRISM_POINTS] * 3) == 3


def test_cayley_examples():
    C = mv.cayley(polys(E1, E2))
    assert C.polytope.dim == 3 and len(C.polytope.vertices) == 4
    C1 = mv.cayley(polys(P1))
    assert C1.polytope == Polytope(P1)
    C = mv.cayley(polys(P1, P2_EQUAL))
    assert C.polytope.dim == 3 and len(C.polytope.vertices) == 6
    for j in range(len(C.points)):
        i, a = C.tags[j]
        assert C.full_point(j)[:2] == C.factors[i].vertices[a]
    with pytest.raises(DimensionError):
        mv.cayley([Polytope([(0, 0)]), Polytope([(0, 0, 0)])])


def test_cayley_support_faces():
    C = mv.cayley(polys(P1, P2_EQUAL))
    assert mv.cayley_support_face(C, (0, 0), (5, 5)).dim == 3
    F = mv.cayley_support_face(C, (0, 0), (1, 0))
    assert F.dim == 2 and len(F.vertex_indices) == 3
    G = mv.cayley_support_face(C, (1, 1), (0, 0))
    # both triangles reach the edge (1,2)-(2,1): P1 contributes an edge, P2 a vertex
    assert len(G.vertex_indices) == 3 and G.dim == 2


def test_regular_subdivision_examples():
    sub = mv.regular_subdivision(SQUARE, (0, 0, 1, 0))
    assert sub.is_triangulation and len(sub.cells) == 2
    assert mv.regular_subdivision(SQUARE, (0, 0, 0, 0)).cells == [(0, 1, 2, 3)]
    rng = random.Random(0)
    pent = [(0, 0), (1, 2), (2, 1), (2, 0), (0, 1)]
    sub = mv.regular_subdivision(pent, [rng.randint(0, 100) for _ in pent])
    assert sub.is_triangulation and len(sub.cells) == 3


def test_pure_mixed_subdivision_examples():
    sub = mv.pure_mixed_subdivision(polys(E1, E2))
    assert len(sub.cells) == 1 and sub.cells[0].fully_mixed
    assert sub.cells[0].polytope() == Polytope(SQUARE)
    sub = mv.pure_mixed_subdivision(polys(SQUARE, SQUARE))
    assert sub.normalized_mixed_volume == 2
    assert sub.total_volume() == 4
    assert mv.pure_mixed_subdivision(polys(P1, P2_EQUAL)).normalized_mixed_volume == 6


def test_subdivision_values():
    assert mv.mixed_volume_subdivision(polys(E1, E2)) == Fraction(1, 2)
    assert mv.mixed_volume_subdivision(polys(PRISM_POINTS, PRISM_POINTS, PRISM_POINTS)) == Fraction(1, 2)
    assert mv.mixed_volume_subdivision(polys(P1, P2_STRICT)) < 3


def test_subdivision_deterministic():
    a = mv.pure_mixed_subdivision(polys(P1, P2_EQUAL), seed=7)
    b = mv.pure_mixed_subdivision(polys(P1, P2_EQUAL), seed=7)
    assert a.lifting == b.lifting and a.cells == b.cells


def test_inductive_examples():
    assert mv.mixed_volume_inductive([Polytope([(2,), (5,)])]) == 3
    assert mv.mixed_volume_inductive(polys(E1, E2)) == 1
    assert mv.mixed_volume_inductive(polys(P1, P2_EQUAL)) == 6
    with pytest.raises(InputError):
        mv.mixed_volume_inductive([Polytope([(0, 0), (Fraction(1, 2), 0)]), Polytope(SQUARE)])


def test_dispatcher():
    r = mv.mixed_volume(polys(SQUARE, SQUARE))
    assert r.value == 1 and r.agree and set(r.methods) == set(mv.METHODS)
    assert mv.mixed_volume(polys(P1, P2_EQUAL)).value == 3
    half = Polytope([(0, 0), (Fraction(1, 2), 0), (0, Fraction(1, 2))])
    r = mv.mixed_volume([half, Polytope(SQUARE)])
    assert r.skipped == ["inductive"] and set(r.methods) == {"polarization", "subdivision"}
    assert r.normalized == 1
    with pytest.raises(InputError):
        mv.mixed_volume(polys(SQUARE, SQUARE), "magic")


def test_disagreement_is_surfaced(monkeypatch):
    monkeypatch.setattr(mv, "mixed_volume_inductive", lambda Ps: 99)
    with pytest.raises(CrossCheckError):
        mv.mixed_volume(polys(SQUARE, SQUARE))


# ---------------------------------------------------------------- properties

@given(collection(2, 4))
def test_algorithms_agree_2d(Ps):
    r = mv.mixed_volume(Ps, "all")
    assert r.normalized == normalized_mv_oracle([P.vertices for P in Ps])


@given(collection(3, 2))
def test_algorithms_agree_3d(Ps):
    r = mv.mixed_volume(Ps, "all")
    assert r.normalized == normalized_mv_oracle([P.vertices for P in Ps])


@given(collection(3, 2), st.integers(0, 100))
def test_symmetry(Ps, seed):
    base = mv.mixed_volume(Ps, "inductive").normalized
    for perm in permutations(range(3)):
        assert mv.mixed_volume([Ps[i] for i in perm], "inductive").normalized == base


@given(collection(2, 3), st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3)), min_size=1, max_size=4))
def test_multilinearity(Ps, extra):
    P, P2 = Ps
    R = Polytope(extra)
    lhs = mv.mixed_volume([P + R, P2], "inductive").normalized
    assert lhs == mv.mixed_volume([P, P2], "inductive").normalized + mv.mixed_volume([R, P2], "inductive").normalized


@given(collection(3, 2), st.lists(st.tuples(*[st.integers(-4, 4)] * 3), min_size=3, max_size=3))
def test_translation_invariance(Ps, shifts):
    base = mv.mixed_volume(Ps, "polarization").normalized
    moved = [P.translate(t) for P, t in zip(Ps, shifts)]
    assert mv.mixed_volume(moved, "all").normalized == base


@given(collection(3, 2))
def test_diagonal_is_volume(Ps):
    P = Ps[0]
    assert mv.mixed_volume([P, P, P], "all").value == P.euclidean_volume


@given(nested_instance(2, 4))
def test_monotonicity(inst):
    Ps, Qs = inst
    assert mv.mixed_volume(Ps, "inductive").value <= mv.mixed_volume(Qs, "inductive").value


@given(collection(3, 2))
def test_positivity_iff_essential(Ps):
    assert (mv.mixed_volume(Ps, "inductive").normalized > 0) == is_essential(Ps)


@given(collection(2, 4), st.integers(0, 50))
def test_subdivision_tiles_sum(Ps, seed):
    sub = mv.pure_mixed_subdivision(Ps, seed)
    assert sub.total_volume() == minkowski_sum(*Ps).euclidean_volume
    for cell in sub.cells:
        assert cell.fully_mixed == (all(len(p) == 2 for p in cell.parts) and cell.euclidean_volume > 0)
