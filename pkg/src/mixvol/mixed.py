"""Mixed volumes by three independent routes.

* ``polarization``: inclusion-exclusion over volumes of partial Minkowski sums.
* ``subdivision``: a regular triangulation of the Cayley polytope gives a pure
  mixed subdivision; the fully mixed cells carry n! V.
* ``inductive``: the lattice recursion over primitive facet normals of
  P2 + ... + Pn, with faces flattened to Z^(n-1) by a unimodular frame.

All values are exact.  ``mixed_volume(..., method="all")`` runs every
applicable route and raises :class:`CrossCheckError` if they disagree.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import factorial
from typing import Sequence

from . import linalg
from .errors import CrossCheckError, DimensionError, InputError, NonGenericLiftingError
from .polytope import (Face, Polytope, affine_dim, affine_integer_coordinates, integer_hull,
                       minkowski_sum)

METHODS = ("polarization", "subdivision", "inductive")


def _check_collection(Ps: Sequence[Polytope]) -> int:
    if not Ps:
        raise InputError("empty collection")
    n = Ps[0].ambient_dim
    if any(P.ambient_dim != n for P in Ps):
        raise DimensionError("polytopes live in different dimensions")
    if len(Ps) != n:
        raise DimensionError(f"need exactly {n} polytopes in R^{n}, got {len(Ps)}")
    return n


# ------------------------------------------------------------ polarization

def normalized_mixed_volume_polarization(Ps: Sequence[Polytope]) -> Fraction:
    """n! V: the alternating sum of Euclidean volumes of the partial sums."""
    n = _check_collection(Ps)
    total = Fraction(0)
    for m in range(1, n + 1):
        sign = (-1) ** (n + m)
        for I in combinations(range(n), m):
            total += sign * minkowski_sum(*(Ps[i] for i in I)).euclidean_volume
    return total


def mixed_volume_polarization(Ps: Sequence[Polytope]) -> Fraction:
    """V(K1, ..., Kn) by inclusion-exclusion over the 2^n - 1 partial sums."""
    n = _check_collection(Ps)
    return normalized_mixed_volume_polarization(Ps) / factorial(n)


# ------------------------------------------------------------ Cayley polytopes

@dataclass
class CayleyPolytope:
    """Cayley embedding of k polytopes in reduced coordinates R^(n+k-1).

    Point ``j`` of ``points`` is ``(x, y_1, ..., y_{k-1})`` for the vertex
    ``x = factors[i].vertices[tags[j][1]]`` with ``i = tags[j][0]``; the last
    coordinate y_k = 1 - sum(y) is dropped.
    """

    factors: list[Polytope]
    points: list[tuple]
    tags: list[tuple[int, int]]
    polytope: Polytope

    @property
    def k(self) -> int:
        return len(self.factors)

    def full_point(self, j: int) -> tuple:
        i, _ = self.tags[j]
        x = self.points[j][: self.factors[0].ambient_dim]
        return tuple(x) + tuple(Fraction(int(t == i)) for t in range(self.k))

    def vertex_index(self, j: int) -> int:
        return self._index[self.points[j]]

    def __post_init__(self):
        self._index = {v: i for i, v in enumerate(self.polytope.vertices)}


def _embed(i: int, k: int, x) -> tuple:
    return tuple(x) + tuple(Fraction(int(t == i)) for t in range(k - 1))


def cayley(Ps: Sequence[Polytope]) -> CayleyPolytope:
    if not Ps:
        raise InputError("Cayley polytope of an empty collection")
    n = Ps[0].ambient_dim
    if any(P.ambient_dim != n for P in Ps):
        raise DimensionError("Cayley factors live in different dimensions")
    k = len(Ps)
    points, tags = [], []
    for i, P in enumerate(Ps):
        for j, v in enumerate(P.vertices):
            points.append(_embed(i, k, v))
            tags.append((i, j))
    poly = Polytope(points)
    # every factor vertex is a vertex of the Cayley polytope
    assert len(poly.vertices) == len(points)
    expected = minkowski_sum(*Ps).dim + k - 1
    if poly.dim != expected:
        raise AssertionError(f"Cayley dimension {poly.dim} != dim(sum) + k - 1 = {expected}")
    return CayleyPolytope(list(Ps), points, tags, poly)


def cayley_support_face(CP: CayleyPolytope, u, v) -> Face:
    """Face of the Cayley polytope in direction (u, v), checked against the slice formula."""
    k = CP.k
    if len(v) != k:
        raise DimensionError("v must have one entry per Cayley factor")
    vals = [linalg.dot(u, CP.points[j][: len(u)]) + v[CP.tags[j][0]] for j in range(len(CP.points))]
    top = max(vals)
    direct = frozenset(j for j, x in enumerate(vals) if x == top)

    levels = [P.support(u) + v[i] for i, P in enumerate(CP.factors)]
    best = max(levels)
    if best != top:
        raise AssertionError("Cayley support value disagrees with max(h_Pi(u) + v_i)")
    I = [i for i, x in enumerate(levels) if x == best]
    by_formula = frozenset(j for j, (i, a) in enumerate(CP.tags)
                           if i in I and a in CP.factors[i].argmax(u))
    if direct != by_formula:
        raise AssertionError("Cayley face disagrees with the union of slice faces")
    idx = frozenset(CP.vertex_index(j) for j in direct)
    pts = [CP.polytope.vertices[i] for i in idx]
    normal = tuple(u) + tuple(Fraction(v[i]) - Fraction(v[k - 1]) for i in range(k - 1))
    return Face(CP.polytope, idx, affine_dim(pts), normal)


# ------------------------------------------------------------ regular subdivisions

@dataclass(frozen=True)
class Lifting:
    heights: tuple[int, ...]
    seed: int | None = None


@dataclass
class RegularSubdivision:
    cells: list[tuple[int, ...]]     # point indices of each maximal cell
    dim: int
    is_triangulation: bool


def regular_subdivision(points: Sequence[Sequence], heights: Lifting | Sequence[int]) -> RegularSubdivision:
    """Project the lower faces of the lifted configuration {(a, h(a))}.

    Works inside the affine hull of ``points``.  The result is a
    triangulation exactly when every cell has dim + 1 points.
    """
    h = heights.heights if isinstance(heights, Lifting) else tuple(heights)
    pts = [tuple(linalg.as_fraction(x) for x in p) for p in points]
    if len(set(pts)) != len(pts):
        raise InputError("subdivision points must be distinct")
    if len(h) != len(pts):
        raise InputError("one height per point required")
    Y, d = affine_integer_coordinates(pts)
    if d == 0:
        return RegularSubdivision([(0,)], 0, len(pts) == 1)
    Z = [tuple(y) + (int(hh),) for y, hh in zip(Y, h)]
    _, lifted_dim = affine_integer_coordinates(Z)
    if lifted_dim == d:
        cell = tuple(range(len(pts)))
        return RegularSubdivision([cell], d, len(cell) == d + 1)
    hull = integer_hull(Z)
    cells = sorted(tuple(sorted(on)) for nrm, _, on in hull.hyperplanes if nrm[-1] < 0)
    return RegularSubdivision(cells, d, all(len(c) == d + 1 for c in cells))


# ------------------------------------------------------------ mixed subdivisions

@dataclass
class MixedCell:
    parts: tuple[tuple[tuple, ...], ...]   # vertex lists of sigma_1, ..., sigma_n
    fully_mixed: bool

    def edge_vectors(self) -> list[tuple]:
        vecs = []
        for part in self.parts:
            vecs.extend(linalg.sub(p, part[0]) for p in part[1:])
        return vecs

    @property
    def euclidean_volume(self) -> Fraction:
        """Volume of sigma_1 + ... + sigma_n (the simplices span complementary subspaces)."""
        vecs = self.edge_vectors()
        n = len(self.parts[0][0])
        if len(vecs) != n:
            return Fraction(0)
        denom = 1
        for part in self.parts:
            denom *= factorial(len(part) - 1)
        return Fraction(abs(linalg.det(vecs)), denom)

    def polytope(self) -> Polytope:
        return minkowski_sum(*(Polytope(part) for part in self.parts))


@dataclass
class MixedSubdivision:
    factors: list[Polytope]
    cells: list[MixedCell]
    lifting: Lifting
    attempts: int = 1

    @property
    def fully_mixed_cells(self) -> list[MixedCell]:
        return [c for c in self.cells if c.fully_mixed]

    @property
    def normalized_mixed_volume(self) -> Fraction:
        return sum((c.euclidean_volume for c in self.fully_mixed_cells), Fraction(0))

    @property
    def mixed_volume(self) -> Fraction:
        return self.normalized_mixed_volume / factorial(len(self.factors))

    def total_volume(self) -> Fraction:
        return sum((c.euclidean_volume for c in self.cells), Fraction(0))


MAX_RETRIES = 32
MAX_WIDENINGS = 6


def _is_fully_mixed(parts) -> bool:
    if any(len(p) != 2 for p in parts):
        return False
    vecs = [linalg.sub(p[1], p[0]) for p in parts]
    return linalg.rank(vecs) == len(parts[0][0])


def pure_mixed_subdivision(Ps: Sequence[Polytope], seed: int = 0) -> MixedSubdivision:
    """Pure mixed subdivision of P1 + ... + Pn from a random regular Cayley triangulation."""
    n = _check_collection(Ps)
    CP = cayley(Ps)
    L = len(CP.points)
    M = max([1] + [abs(x) for P in Ps for v in P.vertices for x in v])
    bound = 4 * L * int(-(-M // 1))
    rng = random.Random(seed)
    attempts = 0
    for widening in range(MAX_WIDENINGS + 1):
        for _ in range(MAX_RETRIES):
            attempts += 1
            heights = tuple(rng.randint(0, bound) for _ in range(L))
            sub = regular_subdivision(CP.points, heights)
            if sub.is_triangulation:
                cells = []
                for cell in sub.cells:
                    parts = [[] for _ in range(n)]
                    for j in cell:
                        i, a = CP.tags[j]
                        parts[i].append(Ps[i].vertices[a])
                    parts = tuple(tuple(p) for p in parts)
                    cells.append(MixedCell(parts, _is_fully_mixed(parts)))
                return MixedSubdivision(list(Ps), cells, Lifting(heights, seed), attempts)
        bound *= 16
    raise NonGenericLiftingError(f"no triangulating lifting found after {attempts} attempts")


def mixed_volume_subdivision(Ps: Sequence[Polytope], seed: int = 0) -> Fraction:
    """V(P1, ..., Pn) as (1/n!) times the total volume of fully mixed cells."""
    return pure_mixed_subdivision(Ps, seed).mixed_volume


# ------------------------------------------------------------ lattice recursion

def _flatten(points, u) -> list[tuple[int, ...]]:
    basis, v = linalg.unimodular_completion(u)
    return linalg.lattice_coordinates(points, basis, [v])


def _inductive(Ps: Sequence[Polytope]) -> int:
    n = Ps[0].ambient_dim
    if n == 1:
        return int(Ps[0].support((1,)) + Ps[0].support((-1,)))
    S = minkowski_sum(*Ps[1:])
    if S.dim == n:
        normals = [f.normal for f in S.facets]
    elif S.dim == n - 1:
        w = S.equations[0][0]
        normals = [tuple(w), tuple(-x for x in w)]
    else:
        return 0
    total = 0
    weighted = [0] * n
    base = Ps[0].vertices[0]
    for u in normals:
        faces = [[P.vertices[i] for i in sorted(P.argmax(u))] for P in Ps[1:]]
        flat = [Polytope(_flatten(F, u)) for F in faces]
        sub = _inductive(flat)
        if sub:
            # P1 is measured from its first vertex; the weighted normals must
            # cancel for the formula to be translation invariant
            total += int(Ps[0].support(u) - linalg.dot(u, base)) * sub
            weighted = [a + sub * b for a, b in zip(weighted, u)]
    if any(weighted):
        raise CrossCheckError("lattice recursion is not translation invariant")
    return total


def mixed_volume_inductive(Ps: Sequence[Polytope]) -> int:
    """n! V(P1, ..., Pn) for lattice polytopes by the recursion over primitive normals."""
    _check_collection(Ps)
    if not all(P.is_lattice for P in Ps):
        raise InputError("the inductive formula needs lattice polytopes")
    return _inductive(list(Ps))


# ------------------------------------------------------------ dispatcher

@dataclass
class MixedVolumeResult:
    value: Fraction                  # V(P1, ..., Pn)
    normalized: Fraction | int       # n! V
    methods: dict[str, Fraction | int] = field(default_factory=dict)
    timings: dict[str, float] = field(default_factory=dict)
    skipped: list[str] = field(default_factory=list)

    @property
    def agree(self) -> bool:
        return len(set(Fraction(x) for x in self.methods.values())) <= 1


def mixed_volume(Ps: Sequence[Polytope], method: str = "all", seed: int = 0) -> MixedVolumeResult:
    n = _check_collection(Ps)
    lattice = all(P.is_lattice for P in Ps)
    if method == "all":
        chosen = [m for m in METHODS if lattice or m != "inductive"]
    elif method in METHODS:
        chosen = [method]
    else:
        raise InputError(f"unknown method {method!r}")
    if "inductive" in chosen and not lattice:
        raise InputError("the inductive formula needs lattice polytopes")
    values: dict[str, Fraction | int] = {}
    timings: dict[str, float] = {}
    for m in chosen:
        t0 = time.perf_counter()
        if m == "polarization":
            val = normalized_mixed_volume_polarization(Ps)
        elif m == "subdivision":
            val = pure_mixed_subdivision(Ps, seed).normalized_mixed_volume
        else:
            val = mixed_volume_inductive(Ps)
        timings[m] = time.perf_counter() - t0
        values[m] = int(val) if Fraction(val).denominator == 1 else Fraction(val)
    distinct = set(Fraction(x) for x in values.values())
    if len(distinct) != 1:
        detail = ", ".join(f"{k}={v}" for k, v in values.items())
        raise CrossCheckError(f"mixed volume methods disagree: {detail}")
    norm = next(iter(values.values()))
    skipped = [m for m in METHODS if m not in chosen] if method == "all" else []
    return MixedVolumeResult(Fraction(norm) / factorial(n), norm, values, timings, skipped)


def normalized_mixed_volume(Ps: Sequence[Polytope], method: str = "polarization", seed: int = 0):
    return mixed_volume(Ps, method, seed).normalized
