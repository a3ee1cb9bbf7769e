"""Essential collections and strict monotonicity of the mixed volume.

Two equivalent criteria decide whether V(P1..Pn) < V(Q1..Qn) for Pi ⊆ Qi:
the touch-set criterion (faces Qi^u for touching members, whole Qi for the
others, must form an essential collection for some direction u) and the
truncation criterion (the bodies B_{i,u} = {x in Qi : <u,x> >= h_Pi(u)} must
be essential for some u).  The "exists u" is finitized by taking one
representative per cone of the normal fan of Q1 + ... + Qn: touch sets and
faces are constant on the relative interior of each cone.

Member indices are 0-based in the Python API and 1-based in JSON output.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations
from typing import Sequence

from . import linalg
from .errors import ContainmentError, CrossCheckError, DimensionError, HypothesisError, InputError, PreconditionError
from .mixed import cayley, mixed_volume
from .polytope import Face, Polytope, lattice_distance, minkowski_sum


def _fmt(x) -> str | int:
    x = Fraction(x)
    return int(x) if x.denominator == 1 else str(x)


def _vec_json(v) -> list:
    return [_fmt(x) for x in v]


def _int_vector(u) -> tuple:
    """Integer representative of a rational direction when it has one."""
    if all(Fraction(x).denominator == 1 for x in u):
        return tuple(int(x) for x in u)
    return tuple(Fraction(x) for x in u)


# ------------------------------------------------------------ essentiality

def _essential(Ks: Sequence[Polytope]) -> bool:
    """dim(sum over I) >= |I| for all I with |I| <= n; the empty collection is essential."""
    if not Ks:
        return True
    n = Ks[0].ambient_dim
    dirs = [K.direction_vectors() for K in Ks]
    if any(K.dim < 1 for K in Ks):
        return False
    m = len(Ks)
    for size in range(2, min(m, n) + 1):
        for I in combinations(range(m), size):
            vecs = [v for i in I for v in dirs[i]]
            if linalg.rank(vecs) < size:
                return False
    return True


def is_essential(Ks: Sequence[Polytope]) -> bool:
    """Whether {K1..Km} is essential: dim of every sub-sum of size <= n is at least its size."""
    if not Ks:
        raise InputError("essentiality of an empty collection")
    n = Ks[0].ambient_dim
    if any(K.ambient_dim != n for K in Ks):
        raise DimensionError("collection members live in different dimensions")
    return _essential(Ks)


@dataclass
class SegmentWitness:
    segments: list[tuple[tuple, tuple]]
    rank: int

    @property
    def directions(self) -> list[tuple]:
        return [linalg.sub(b, a) for a, b in self.segments]

    def to_json(self) -> dict:
        return {"kind": "segments",
                "segments": [[_vec_json(a), _vec_json(b)] for a, b in self.segments]}


def _rado_feasible(chosen: list, pools: list[list]) -> bool:
    """Can every pool still contribute a vector independent of the rest (Rado's condition)?"""
    base = len(chosen)
    for size in range(1, len(pools) + 1):
        for I in combinations(range(len(pools)), size):
            vecs = chosen + [v for i in I for v in pools[i]]
            if linalg.rank(vecs) - base < size:
                return False
    return True


def independent_segments(Ks: Sequence[Polytope]) -> SegmentWitness | None:
    """Segments E_i ⊆ K_i with linearly independent directions, or None."""
    if not Ks:
        raise InputError("empty collection")
    n = Ks[0].ambient_dim
    if len(Ks) > n:
        return None
    if not _essential(Ks):
        return None
    # edges span the affine hull of each member, so they suffice for a transversal
    pools = [list(K.edges()) for K in Ks]
    chosen_vecs: list[tuple] = []
    segments = []
    for i, pool in enumerate(pools):
        rest = [[linalg.sub(b, a) for a, b in p] for p in pools[i + 1:]]
        for a, b in pool:
            vec = linalg.sub(b, a)
            cand = chosen_vecs + [vec]
            if linalg.rank(cand) == len(cand) and _rado_feasible(cand, rest):
                chosen_vecs = cand
                segments.append((a, b))
                break
        else:
            raise AssertionError("essential collection without an independent transversal")
    witness = SegmentWitness(segments, linalg.rank(chosen_vecs))
    assert witness.rank == len(Ks)
    for (a, b), K in zip(segments, Ks):
        assert K.contains(a) and K.contains(b)
    return witness


# ------------------------------------------------------------ touch sets

def _check_nested(Ps: Sequence[Polytope], Qs: Sequence[Polytope]) -> int:
    if not Ps or len(Ps) != len(Qs):
        raise InputError("need equally many inner and outer polytopes")
    n = Ps[0].ambient_dim
    if any(K.ambient_dim != n for K in list(Ps) + list(Qs)):
        raise DimensionError("polytopes live in different dimensions")
    if len(Ps) != n:
        raise DimensionError(f"need exactly {n} polytopes in R^{n}, got {len(Ps)}")
    for i, (P, Q) in enumerate(zip(Ps, Qs)):
        if not Q.contains_polytope(P):
            raise ContainmentError(f"P{i + 1} is not contained in Q{i + 1}")
    return n


@dataclass(frozen=True)
class TouchSet:
    direction: tuple
    members: frozenset


def _touching(P: Polytope, Q: Polytope, u) -> bool:
    return P.support(u) == Q.support(u)


def touch_set(Ps: Sequence[Polytope], Qs: Sequence[Polytope], u) -> TouchSet:
    _check_nested(Ps, Qs)
    return TouchSet(tuple(u), frozenset(i for i, (P, Q) in enumerate(zip(Ps, Qs)) if _touching(P, Q, u)))


def normal_fan_representatives(S: Polytope) -> list[tuple]:
    """One outer normal per proper face of S, in face-lattice order."""
    if S.dim < 1:
        raise InputError("normal fan of a point is trivial")
    return [_int_vector(F.normal) for F in S.proper_faces()]


# ------------------------------------------------------------ verdicts

@dataclass
class MonotonicityVerdict:
    strict: bool
    witness: dict | None = None
    lhs_normalized_mv: Fraction | None = None
    rhs_normalized_mv: Fraction | None = None
    criterion: str = ""
    extra: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out: dict = {"strict": self.strict, "witness": self.witness}
        if self.lhs_normalized_mv is not None:
            out["lhs_normalized_mv"] = str(Fraction(self.lhs_normalized_mv))
            out["rhs_normalized_mv"] = str(Fraction(self.rhs_normalized_mv))
        out.update(self.extra)
        return out


def _compare(Ps, Qs, verdict: MonotonicityVerdict, seed: int) -> MonotonicityVerdict:
    method = "inductive" if all(K.is_lattice for K in list(Ps) + list(Qs)) else "polarization"
    lhs = mixed_volume(list(Ps), method, seed).normalized
    rhs = mixed_volume(list(Qs), method, seed).normalized
    verdict.lhs_normalized_mv = Fraction(lhs)
    verdict.rhs_normalized_mv = Fraction(rhs)
    if verdict.strict != (lhs < rhs):
        raise CrossCheckError(f"criterion says strict={verdict.strict} but n!V = {lhs} vs {rhs}")
    return verdict


def _collection_at(Ps, Qs, u):
    T = [i for i, (P, Q) in enumerate(zip(Ps, Qs)) if _touching(P, Q, u)]
    coll = [Q.face_in_direction(u).as_polytope if i in T else Q for i, Q in enumerate(Qs)]
    return T, coll


def strict_monotonicity_general(Ps: Sequence[Polytope], Qs: Sequence[Polytope],
                                compare: bool = False, seed: int = 0) -> MonotonicityVerdict:
    """Touch-set criterion for V(P1..Pn) < V(Q1..Qn); witness is a direction u."""
    n = _check_nested(Ps, Qs)
    S = minkowski_sum(*Qs)
    verdict = MonotonicityVerdict(False, None, criterion="touch-set")
    if S.dim < n:
        verdict.extra["degenerate"] = "dim(Q1+...+Qn) < n, both mixed volumes vanish"
    else:
        full = all(Q.dim == n for Q in Qs)
        for u in normal_fan_representatives(S):
            T, coll = _collection_at(Ps, Qs, u)
            ok = _essential(coll)
            if full:
                # with full-dimensional Qi only the faces of touching members matter
                simple = _essential([coll[i] for i in T])
                if simple != ok:
                    raise CrossCheckError(f"full-dimensional simplification disagrees at u={u}")
            if ok:
                verdict.strict = True
                verdict.witness = {
                    "kind": "direction",
                    "u": _vec_json(u),
                    "touch_set": [i + 1 for i in T],
                    "collection": ["face" if i in T else "body" for i in range(n)],
                }
                break
    if compare:
        _compare(Ps, Qs, verdict, seed)
    return verdict


def _face_json(F: Face) -> dict:
    return {"dim": F.dim, "normal": _vec_json(F.normal),
            "vertices": [_vec_json(v) for v in F.vertices]}


def touch_deficient_faces(Ps: Sequence[Polytope], Q: Polytope) -> list[tuple[Face, list[int]]]:
    """Proper faces of Q of dimension t touched by at most t members, with the touching members."""
    out = []
    for F in Q.proper_faces():
        touching = [i for i, P in enumerate(Ps) if _touching(P, Q, F.normal)]
        if len(touching) <= F.dim:
            out.append((F, touching))
    return out


def strict_monotonicity_equal(Ps: Sequence[Polytope], Q: Polytope,
                              compare: bool = False, seed: int = 0) -> MonotonicityVerdict:
    """V(P1..Pn) < Vol(Q) iff some proper t-face of Q is touched by at most t members."""
    n = _check_nested(Ps, [Q] * len(Ps))
    verdict = MonotonicityVerdict(False, None, criterion="face-touch")
    if Q.dim < n:
        verdict.extra["degenerate"] = "dim Q < n, both sides vanish"
    else:
        bad = touch_deficient_faces(Ps, Q)
        if bad:
            F, touching = bad[0]
            verdict.strict = True
            verdict.witness = {"kind": "face", **_face_json(F),
                               "touching": [i + 1 for i in touching],
                               "touch_count": len(touching)}
    if compare:
        _compare(Ps, [Q] * n, verdict, seed)
    return verdict


# ------------------------------------------------------------ truncations

@dataclass
class BPolytope:
    inner: Polytope
    base: Polytope
    direction: tuple
    polytope: Polytope


def b_polytope(P: Polytope, Q: Polytope, u) -> BPolytope:
    """B = {x in Q : <u,x> >= h_P(u)}: the part of Q on top of P in direction u."""
    if not any(u):
        raise InputError("direction u must be non-zero")
    if not Q.contains_polytope(P):
        raise ContainmentError("P is not contained in Q")
    c = P.support(u)
    pts = [v for v in Q.vertices if linalg.dot(u, v) >= c]
    for a, b in Q.edges() if Q.dim >= 1 else []:
        ha, hb = linalg.dot(u, a) - c, linalg.dot(u, b) - c
        if ha * hb < 0:
            t = Fraction(-ha) / (hb - ha)
            pts.append(tuple(x + t * (y - x) for x, y in zip(a, b)))
    B = Polytope(pts)
    assert B.support(u) == Q.support(u)
    assert B.support([-x for x in u]) == -c
    assert all(B.contains(v) for v in P.face_in_direction(u).vertices)
    assert Q.contains_polytope(B)
    return BPolytope(P, Q, tuple(u), B)


def main3_essential_direction(Ps: Sequence[Polytope], Qs: Sequence[Polytope],
                              compare: bool = False, seed: int = 0) -> MonotonicityVerdict:
    """Truncation criterion: some u with {B_{1,u}, ..., B_{n,u}} essential."""
    n = _check_nested(Ps, Qs)
    S = minkowski_sum(*Qs)
    verdict = MonotonicityVerdict(False, None, criterion="truncation")
    if S.dim == n:
        for u in normal_fan_representatives(S):
            Bs = [b_polytope(P, Q, u).polytope for P, Q in zip(Ps, Qs)]
            ok = _essential(Bs)
            if ok != _essential(_collection_at(Ps, Qs, u)[1]):
                raise CrossCheckError(f"truncation and touch-set criteria disagree at u={u}")
            if ok:
                verdict.strict = True
                verdict.witness = {"kind": "direction", "u": _vec_json(u),
                                   "b_dims": [B.dim for B in Bs]}
                break
    general = strict_monotonicity_general(Ps, Qs)
    if general.strict != verdict.strict:
        raise CrossCheckError("truncation criterion disagrees with the touch-set criterion")
    if compare:
        _compare(Ps, Qs, verdict, seed)
    return verdict


@dataclass
class CayleyWitness:
    """A fully mixed Cayley simplex C(E1..En) separated from C(P1..Pn)."""

    u: tuple
    v: tuple
    segments: SegmentWitness
    simplex_dim: int
    level: Fraction          # h_{C(P)}(u, v)

    def to_json(self) -> dict:
        return {"kind": "segments", "u": _vec_json(self.u), "v": _vec_json(self.v),
                "segments": self.segments.to_json()["segments"],
                "simplex_dim": self.simplex_dim, "level": _fmt(self.level)}


def fully_mixed_simplex_witness(Ps: Sequence[Polytope], Qs: Sequence[Polytope], u) -> CayleyWitness:
    """Segments Ei ⊆ B_{i,u} whose Cayley simplex lies on the far side of a supporting
    hyperplane of C(P1..Pn)."""
    n = _check_nested(Ps, Qs)
    if not any(u):
        raise PreconditionError("direction u must be non-zero")
    Bs = [b_polytope(P, Q, u).polytope for P, Q in zip(Ps, Qs)]
    seg = independent_segments(Bs)
    if seg is None:
        raise PreconditionError("the truncated bodies B_{i,u} are not essential for this u")
    v = tuple(-P.support(u) for P in Ps)
    CP = cayley(list(Ps))
    direct = max(linalg.dot(u, CP.points[j][:n]) + v[CP.tags[j][0]] for j in range(len(CP.points)))
    level = max(P.support(u) + vi for P, vi in zip(Ps, v))
    if direct != level:
        raise CrossCheckError("Cayley support value disagrees with the slice formula")
    for i, (a, b) in enumerate(seg.segments):
        for x in (a, b):
            if linalg.dot(u, x) < level - v[i]:
                raise CrossCheckError(f"segment {i + 1} crosses the separating hyperplane")
    simplex = cayley([Polytope([a, b]) for a, b in seg.segments])
    if simplex.polytope.dim != 2 * n - 1 or len(simplex.polytope.vertices) != 2 * n:
        raise CrossCheckError("Cayley simplex of the segments is not fully mixed")
    return CayleyWitness(tuple(u), v, seg, simplex.polytope.dim, level)


# ------------------------------------------------------------ deficit bound

@dataclass
class DeficitBound:
    normal: tuple[int, ...]
    order: tuple[int, ...]
    distances: tuple[int, ...]
    actual_deficit: int | None = None

    @property
    def bound(self) -> int:
        return sum(self.distances)

    def to_json(self) -> dict:
        return {"normal": list(self.normal), "order": [i + 1 for i in self.order],
                "distances": list(self.distances), "bound": self.bound,
                "actual_deficit": self.actual_deficit}


def _deficit_hypotheses(Ps, Q: Polytope, v, order) -> tuple[int, ...]:
    n = Q.ambient_dim
    if not all(P.is_lattice for P in Ps) or not Q.is_lattice:
        raise HypothesisError("lattice", "all polytopes must be lattice polytopes")
    if len(Ps) != n:
        raise DimensionError(f"need exactly {n} polytopes in R^{n}")
    if Q.dim != n:
        raise HypothesisError("full-dimensional Q")
    for i, P in enumerate(Ps):
        if not Q.contains_polytope(P):
            raise HypothesisError("containment", f"P{i + 1} is not contained in Q")
    if not linalg.is_integral(v) or not any(v):
        raise HypothesisError("primitive normal", f"{tuple(v)}")
    v = tuple(int(x) for x in v)
    try:
        linalg.unimodular_completion(v)
    except ValueError as exc:
        raise HypothesisError("primitive normal", str(exc)) from None
    if Q.face_in_direction(v).dim != n - 1:
        raise HypothesisError("facet", f"Q^v for v={v} is not a facet")
    order = tuple(order)
    if not order or len(set(order)) != len(order) or not all(0 <= i < n for i in order):
        raise HypothesisError("index list", "need distinct member indices")
    for i in order:
        if _touching(Ps[i], Q, v):
            raise HypothesisError("non-touching", f"P{i + 1} touches the facet Q^v")
    head = [Ps[i].face_in_direction(v).as_polytope for i in order[:-1]]
    if head and not _essential(head):
        raise HypothesisError("essential", "the faces P^v of the first m-1 members are not essential")
    return tuple(lattice_distance(Ps[i], Q, v) for i in order)


def _actual_deficit(Ps, Q) -> int:
    lhs = mixed_volume(list(Ps), "inductive").normalized
    return int(Q.normalized_volume - lhs)


def volume_deficit_bound(Ps: Sequence[Polytope], Q: Polytope, v, order) -> DeficitBound:
    """Lower bound l_1 + ... + l_m on n!Vol(Q) - n!V(P1..Pn) from a facet Q^v missed by P_i, i in order."""
    dists = _deficit_hypotheses(Ps, Q, v, order)
    result = DeficitBound(tuple(int(x) for x in v), tuple(order), dists)
    result.actual_deficit = _actual_deficit(Ps, Q)
    if result.actual_deficit < result.bound:
        raise CrossCheckError(f"deficit {result.actual_deficit} below the bound {result.bound}")
    return result


def best_deficit_bound(Ps: Sequence[Polytope], Q: Polytope, v=None) -> DeficitBound | None:
    """Try every ordering of every subset of non-touching members (n <= 4) and keep the best bound."""
    n = Q.ambient_dim
    if n > 4:
        raise InputError("ordering search is limited to n <= 4")
    if Q.dim != n:
        raise HypothesisError("full-dimensional Q")
    normals = [tuple(int(x) for x in v)] if v is not None else [f.normal for f in Q.facets]
    best: DeficitBound | None = None
    for w in normals:
        free = [i for i, P in enumerate(Ps) if not _touching(P, Q, w)]
        for m in range(len(free), 0, -1):
            for subset in combinations(free, m):
                for order in permutations(subset):
                    try:
                        dists = _deficit_hypotheses(Ps, Q, w, order)
                    except HypothesisError:
                        continue
                    if best is None or sum(dists) > best.bound:
                        best = DeficitBound(w, order, dists)
    if best is not None:
        best.actual_deficit = _actual_deficit(Ps, Q)
        if best.actual_deficit < best.bound:
            raise CrossCheckError(f"deficit {best.actual_deficit} below the bound {best.bound}")
    return best
