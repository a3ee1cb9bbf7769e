"""Exact convex polytopes: hulls, faces, support functions and volumes.

A :class:`Polytope` is always built from a finite point set through an exact
incremental (beneath-beyond) hull.  Coordinates are stored as ``Fraction``;
internally the points are scaled to integers by a common denominator and
projected onto a set of coordinates that is injective on their affine hull,
so every hull computation runs on full-dimensional integer input.
"""

from __future__ import annotations

import threading
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import factorial, gcd, lcm
from typing import Iterable, Sequence

from . import linalg
from .errors import ContainmentError, DimensionError, InputError

MAX_DIM = 8

Point = tuple  # tuple[Fraction, ...]


# ------------------------------------------------------------ hull kernel

def _primitive_int(vec: list[int]) -> list[int]:
    g = 0
    for x in vec:
        g = gcd(g, x)
    return [x // g for x in vec] if g > 1 else list(vec)


def _hyperplane(pts: Sequence[Sequence[int]]) -> tuple[list[int], int]:
    """Primitive integer normal and offset of the hyperplane through d points in Z^d."""
    base = pts[0]
    d = len(base)
    rows = [[a - b for a, b in zip(p, base)] for p in pts[1:]]
    normal = []
    for j in range(d):
        minor = [row[:j] + row[j + 1:] for row in rows]
        c = linalg.int_det(minor)
        normal.append(-c if j % 2 else c)
    normal = _primitive_int(normal)
    return normal, sum(a * b for a, b in zip(normal, base))


def _initial_simplex(Y: Sequence[Sequence[int]], d: int) -> list[int]:
    idx = [0]
    rows: list[list[int]] = []
    for i in range(1, len(Y)):
        cand = rows + [[a - b for a, b in zip(Y[i], Y[0])]]
        if linalg.rank(cand) == len(cand):
            rows = cand
            idx.append(i)
            if len(idx) == d + 1:
                return idx
    raise AssertionError("points are not full-dimensional")


@dataclass
class HullData:
    """Result of the integer hull kernel on full-dimensional points in Z^d."""

    simplices: list[tuple[int, ...]]       # oriented boundary triangulation
    hyperplanes: list[tuple[tuple[int, ...], int, frozenset]]  # (normal, offset, points on it)
    vertices: list[int]                    # indices of extreme points


def integer_hull(Y: Sequence[Sequence[int]]) -> HullData:
    """Beneath-beyond hull of distinct full-dimensional integer points."""
    d = len(Y[0])
    if d == 1:
        vals = [p[0] for p in Y]
        lo, hi = min(vals), max(vals)
        ilo, ihi = vals.index(lo), vals.index(hi)
        planes = [((-1,), -lo, frozenset(i for i, v in enumerate(vals) if v == lo)),
                  ((1,), hi, frozenset(i for i, v in enumerate(vals) if v == hi))]
        return HullData([(ilo,), (ihi,)], planes, sorted({ilo, ihi}))

    init = _initial_simplex(Y, d)
    centre = [sum(Y[i][k] for i in init) for k in range(d)]  # (d+1) * barycentre

    def oriented(key: Iterable[int]):
        normal, off = _hyperplane([Y[i] for i in key])
        if sum(a * b for a, b in zip(normal, centre)) > (d + 1) * off:
            normal = [-x for x in normal]
            off = -off
        return normal, off

    facets: dict[frozenset, tuple[list[int], int]] = {}
    for omit in init:
        key = frozenset(init) - {omit}
        facets[key] = oriented(sorted(key))
    in_init = set(init)
    for i, p in enumerate(Y):
        if i in in_init:
            continue
        visible = [k for k, (nrm, off) in facets.items()
                   if sum(a * b for a, b in zip(nrm, p)) > off]
        if not visible:
            continue
        ridges: Counter = Counter()
        for k in visible:
            for j in k:
                ridges[k - {j}] += 1
            del facets[k]
        for ridge, cnt in ridges.items():
            if cnt == 1:
                key = ridge | {i}
                facets[key] = oriented(sorted(key))

    groups: dict[tuple, None] = {}
    for nrm, off in facets.values():
        groups.setdefault((tuple(nrm), off), None)
    planes = []
    incidence: dict[int, list[tuple[int, ...]]] = {}
    for nrm, off in groups:
        on = frozenset(i for i, p in enumerate(Y)
                       if sum(a * b for a, b in zip(nrm, p)) == off)
        planes.append((nrm, off, on))
        for i in on:
            incidence.setdefault(i, []).append(nrm)
    vertices = [i for i in range(len(Y))
                if len(incidence.get(i, ())) >= d and linalg.rank(incidence[i]) == d]
    return HullData([tuple(sorted(k)) for k in facets], planes, vertices)


def affine_integer_coordinates(points: Sequence[Sequence]) -> tuple[list[tuple[int, ...]], int]:
    """Integer coordinates for distinct points on which they are full-dimensional.

    Points are scaled by a common denominator and projected onto pivot
    coordinates of their affine hull; the projection is injective there, so
    hull and subdivision combinatorics are unchanged.  Returns ``(Y, dim)``.
    """
    fr = [tuple(linalg.as_fraction(x) for x in p) for p in points]
    den = lcm(*(x.denominator for p in fr for x in p))
    X = [tuple(int(x * den) for x in p) for p in fr]
    diffs = [[a - b for a, b in zip(p, X[0])] for p in X[1:]]
    pivots = linalg.pivot_columns(diffs) if diffs else []
    return [tuple(p[c] for c in pivots) for p in X], len(pivots)


# ------------------------------------------------------------ polytopes

@dataclass(frozen=True)
class Facet:
    normal: tuple[int, ...]      # primitive integer outer normal (ambient coordinates)
    offset: Fraction
    vertex_indices: frozenset


@dataclass(frozen=True, eq=False)
class Face:
    """A face P^u of a polytope, stored by the indices of its vertices."""

    polytope: "Polytope"
    vertex_indices: frozenset
    dim: int
    normal: tuple

    @property
    def vertices(self) -> list[Point]:
        return [self.polytope.vertices[i] for i in sorted(self.vertex_indices)]

    @property
    def is_proper(self) -> bool:
        return len(self.vertex_indices) < len(self.polytope.vertices)

    @cached_property
    def as_polytope(self) -> "Polytope":
        return Polytope(self.vertices)

    def key(self) -> tuple:
        return (self.dim, tuple(sorted(self.vertex_indices)))

    def __eq__(self, other):
        if not isinstance(other, Face):
            return NotImplemented
        return self.polytope == other.polytope and self.vertex_indices == other.vertex_indices

    def __hash__(self):
        return hash((self.polytope, self.vertex_indices))

    def __repr__(self):
        pts = ", ".join(_fmt_point(v) for v in self.vertices)
        return f"Face(dim={self.dim}, vertices=[{pts}])"


def _fmt_point(p) -> str:
    return "(" + ",".join(str(x) for x in p) + ")"


class Polytope:
    """Convex hull of a finite set of rational points.

    ``vertices`` holds exactly the extreme points, in order of first
    appearance in the input.  Facets are relative facets when the polytope
    is not full-dimensional; their normals are primitive integer vectors.
    """

    def __init__(self, points: Iterable[Sequence], ambient_dim: int | None = None):
        pts: list[tuple[Fraction, ...]] = []
        seen = set()
        for p in points:
            q = tuple(linalg.as_fraction(x) for x in p)
            if q not in seen:
                seen.add(q)
                pts.append(q)
        if not pts:
            raise InputError("convex hull of an empty point set")
        n = len(pts[0])
        if any(len(p) != n for p in pts):
            raise DimensionError("points have different dimensions")
        if ambient_dim is not None and ambient_dim != n:
            raise DimensionError(f"expected points in R^{ambient_dim}, got R^{n}")
        if n > MAX_DIM:
            raise DimensionError(f"ambient dimension {n} exceeds the limit {MAX_DIM}")
        self.ambient_dim = n
        self._lock = threading.Lock()
        self._faces: list[Face] | None = None

        den = lcm(*(x.denominator for p in pts for x in p))
        X = [tuple(int(x * den) for x in p) for p in pts]
        diffs = [[a - b for a, b in zip(p, X[0])] for p in X[1:]]
        pivots = linalg.pivot_columns(diffs) if diffs else []
        self.dim = len(pivots)
        self._den = den
        self._pivots = tuple(pivots)

        if self.dim == 0:
            self.vertices = (pts[0],)
            self.facets: tuple[Facet, ...] = ()
            self._simplices: list[tuple[tuple[int, ...], ...]] = []
            self._Y = [()]
        else:
            Y = [tuple(p[c] for c in pivots) for p in X]
            hull = integer_hull(Y)
            keep = hull.vertices
            remap = {old: new for new, old in enumerate(keep)}
            self.vertices = tuple(pts[i] for i in keep)
            self._Y = [Y[i] for i in keep]
            facets = []
            for nrm, off, on in hull.hyperplanes:
                full = [0] * n
                for c, a in zip(pivots, nrm):
                    full[c] = a
                facets.append(Facet(tuple(full), Fraction(off, den),
                                    frozenset(remap[i] for i in on if i in remap)))
            self.facets = tuple(facets)
            self._simplices = [tuple(Y[i] for i in s) for s in hull.simplices]

        if self.dim < n:
            null = linalg.nullspace(diffs, n) if diffs else linalg.nullspace([], n)
            eqs = []
            for w in null:
                w = linalg.primitive(w)
                eqs.append((w, linalg.dot(w, pts[0])))
            self.equations: tuple = tuple(eqs)
        else:
            self.equations = ()

    # -------------------------------------------------------- basics
    @classmethod
    def from_points(cls, points) -> "Polytope":
        return cls(points)

    def __repr__(self):
        return f"Polytope(dim={self.dim}, vertices=[{', '.join(_fmt_point(v) for v in self.vertices)}])"

    def __eq__(self, other):
        if not isinstance(other, Polytope):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and set(self.vertices) == set(other.vertices)

    def __hash__(self):
        return hash((self.ambient_dim, frozenset(self.vertices)))

    @property
    def is_lattice(self) -> bool:
        return all(x.denominator == 1 for v in self.vertices for x in v)

    def integer_vertices(self) -> list[tuple[int, ...]]:
        if not self.is_lattice:
            raise InputError("polytope is not a lattice polytope")
        return [tuple(int(x) for x in v) for v in self.vertices]

    # -------------------------------------------------------- support
    def support(self, u) -> Fraction:
        """h_P(u) = max over vertices of <u, x>."""
        return max(linalg.dot(u, v) for v in self.vertices)

    def argmax(self, u) -> frozenset:
        vals = [linalg.dot(u, v) for v in self.vertices]
        top = max(vals)
        return frozenset(i for i, x in enumerate(vals) if x == top)

    def face_in_direction(self, u) -> Face:
        idx = self.argmax(u)
        return Face(self, idx, affine_dim([self.vertices[i] for i in idx]),
                    tuple(Fraction(x) for x in u))

    def contains(self, x) -> bool:
        x = tuple(linalg.as_fraction(c) for c in x)
        if len(x) != self.ambient_dim:
            raise DimensionError("point has the wrong dimension")
        for w, c in self.equations:
            if linalg.dot(w, x) != c:
                return False
        if self.dim == 0:
            return x == self.vertices[0]
        return all(linalg.dot(f.normal, x) <= f.offset for f in self.facets)

    def contains_polytope(self, other: "Polytope") -> bool:
        return all(self.contains(v) for v in other.vertices)

    # -------------------------------------------------------- transforms
    def translate(self, t) -> "Polytope":
        t = tuple(linalg.as_fraction(x) for x in t)
        return Polytope([linalg.add(v, t) for v in self.vertices])

    def dilate(self, lam) -> "Polytope":
        lam = linalg.as_fraction(lam)
        if lam < 0:
            raise InputError("dilation factor must be non-negative")
        return Polytope([linalg.scale(lam, v) for v in self.vertices])

    def __add__(self, other: "Polytope") -> "Polytope":
        return minkowski_sum(self, other)

    # -------------------------------------------------------- volumes
    @cached_property
    def normalized_volume(self) -> Fraction | int:
        """n! * Vol_n(P); an int for lattice polytopes, zero unless full-dimensional."""
        n = self.ambient_dim
        if self.dim < n:
            return 0
        p0 = self._Y[0]
        total = 0
        for s in self._simplices:
            total += abs(linalg.int_det([[a - b for a, b in zip(q, p0)] for q in s]))
        val = Fraction(total, self._den ** n)
        if self.is_lattice:
            if val.denominator != 1:
                raise AssertionError(f"non-integral normalized volume {val} of a lattice polytope")
            return int(val)
        return val

    @property
    def euclidean_volume(self) -> Fraction:
        return Fraction(self.normalized_volume) / factorial(self.ambient_dim)

    def lattice_volume(self) -> int:
        """Volume normalized to the lattice of the affine hull (dim! * intrinsic volume)."""
        pts = self.integer_vertices()
        if self.dim == 0:
            return 1
        base = pts[0]
        diffs = [linalg.sub(p, base) for p in pts]
        W = [list(w) for w, _ in self.equations] or [[0] * self.ambient_dim]
        basis = linalg.integer_kernel_basis(W)
        assert len(basis) == self.dim
        comp = linalg.extend_to_basis(basis, self.ambient_dim)[self.dim:]
        # completion only needs to make a rational frame; coordinates along
        # the kernel basis are integral because the basis is saturated
        frame = [[Fraction(vec[i]) for vec in list(basis) + comp] for i in range(self.ambient_dim)]
        inv = linalg.inverse(frame)
        coords = [tuple(int(linalg.dot(inv[i], d)) for i in range(self.dim)) for d in diffs]
        return Polytope(coords).normalized_volume

    # -------------------------------------------------------- faces
    def face_lattice(self) -> list[Face]:
        """All faces, proper ones sorted by (dim, vertex indices), improper face last."""
        with self._lock:
            if self._faces is None:
                self._faces = self._compute_faces()
            return list(self._faces)

    def _compute_faces(self) -> list[Face]:
        n = self.ambient_dim
        zero = tuple(Fraction(0) for _ in range(n))
        improper = Face(self, frozenset(range(len(self.vertices))), self.dim, zero)
        facet_sets = [f.vertex_indices for f in self.facets]
        found = set(facet_sets)
        frontier = set(facet_sets)
        while frontier:
            new = set()
            for F in frontier:
                for G in facet_sets:
                    H = F & G
                    if H and H not in found:
                        found.add(H)
                        new.add(H)
            frontier = new
        faces = []
        for S in found:
            normal = [0] * n
            for f in self.facets:
                if S <= f.vertex_indices:
                    normal = [a + b for a, b in zip(normal, f.normal)]
            faces.append(Face(self, S, affine_dim([self.vertices[i] for i in S]),
                              tuple(Fraction(x) for x in normal)))
        faces.sort(key=Face.key)
        faces.append(improper)
        return faces

    def proper_faces(self) -> list[Face]:
        return [F for F in self.face_lattice() if F.is_proper]

    def faces_of_dim(self, k: int) -> list[Face]:
        return [F for F in self.face_lattice() if F.dim == k and F.is_proper]

    def edges(self) -> list[tuple[Point, Point]]:
        if self.dim == 1:
            return [tuple(self.vertices)]
        return [tuple(F.vertices) for F in self.faces_of_dim(1)]

    def direction_vectors(self) -> list[tuple]:
        """Vectors v - v0 spanning the linear space parallel to aff(P)."""
        v0 = self.vertices[0]
        return [linalg.sub(v, v0) for v in self.vertices[1:]]


# ------------------------------------------------------------ free functions

def convex_hull(points: Iterable[Sequence]) -> Polytope:
    return Polytope(points)


def affine_dim(points) -> int:
    """Affine dimension of a point set (a polytope's vertex list or any iterable)."""
    if isinstance(points, Polytope):
        return points.dim
    pts = list(points)
    if not pts:
        raise InputError("affine dimension of an empty set")
    return linalg.rank([linalg.sub(p, pts[0]) for p in pts[1:]]) if len(pts) > 1 else 0


def minkowski_sum(*polys: Polytope) -> Polytope:
    if not polys:
        raise InputError("Minkowski sum of nothing")
    acc = polys[0]
    for P in polys[1:]:
        if P.ambient_dim != acc.ambient_dim:
            raise DimensionError("Minkowski summands live in different dimensions")
        acc = Polytope([linalg.add(a, b) for a in acc.vertices for b in P.vertices])
    return acc


def euclidean_volume(P: Polytope) -> Fraction:
    return P.euclidean_volume


def normalized_volume(P: Polytope):
    return P.normalized_volume


def support_value(P: Polytope, u) -> Fraction:
    return P.support(u)


def face_in_direction(P: Polytope, u) -> Face:
    return P.face_in_direction(u)


def face_lattice(P: Polytope) -> list[Face]:
    return P.face_lattice()


def _check_primitive(u) -> tuple[int, ...]:
    if not linalg.is_integral(u):
        raise InputError(f"{tuple(u)} is not an integer vector")
    ints = tuple(int(x) for x in u)
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g != 1:
        raise InputError(f"{ints} is not primitive")
    return ints


def lattice_distance(P: Polytope, Q: Polytope, u) -> int:
    """h_Q(u) - h_P(u) for lattice polytopes P ⊆ Q and primitive u."""
    u = _check_primitive(u)
    if not (P.is_lattice and Q.is_lattice):
        raise InputError("lattice distance needs lattice polytopes")
    if not Q.contains_polytope(P):
        raise ContainmentError("P is not contained in Q")
    return int(Q.support(u) - P.support(u))


def touches(K: Polytope, F: Face) -> bool:
    """Whether K meets the face F of its ambient polytope."""
    A = F.polytope
    if not A.contains_polytope(K):
        raise ContainmentError("K is not contained in the face's polytope")
    if not F.is_proper:
        return True
    # K ⊆ A and F = A ∩ {<n,x> = h_A(n)}, so K meets F iff K reaches that level
    return K.support(F.normal) == A.support(F.normal)


def sublattice_basis(u) -> list[tuple[int, ...]]:
    return linalg.sublattice_basis(_check_primitive(u))


def exact_rank(M) -> int:
    return linalg.rank(M)


def lattice_points(P: Polytope) -> list[tuple[int, ...]]:
    """All integer points of P, by scanning its bounding box."""
    lo = [min(v[k] for v in P.vertices) for k in range(P.ambient_dim)]
    hi = [max(v[k] for v in P.vertices) for k in range(P.ambient_dim)]
    ranges = [range(int(-((-a) // 1)), int(b // 1) + 1) for a, b in zip(lo, hi)]

    out = []

    def rec(prefix, k):
        if k == len(ranges):
            if P.contains(prefix):
                out.append(tuple(prefix))
            return
        for x in ranges[k]:
            rec(prefix + [x], k + 1)

    rec([], 0)
    return out
