"""Seeded random instances: lattice polytopes, nested pairs and sparse systems."""

from __future__ import annotations

import random

from . import linalg
from .polytope import Polytope, lattice_points
from .systems import SparseSystem, ber_check, cramer_check


def random_points(rng: random.Random, n: int, box: int, k: int) -> list[tuple[int, ...]]:
    return [tuple(rng.randint(0, box) for _ in range(n)) for _ in range(k)]


def random_lattice_polytope(rng: random.Random, n: int, box: int, kmin: int = 1, kmax: int | None = None,
                            full: bool = False) -> Polytope:
    kmax = kmax or n + 3
    while True:
        P = Polytope(random_points(rng, n, box, rng.randint(kmin, kmax)))
        if not full or P.dim == n:
            return P


def random_sub_polytope(rng: random.Random, Q: Polytope, kmax: int = 4) -> Polytope:
    """Hull of a few lattice points of Q (so P ⊆ Q)."""
    pts = lattice_points(Q)
    return Polytope(rng.sample(pts, rng.randint(1, min(kmax, len(pts)))))


def random_vertex_sub_polytope(rng: random.Random, Q: Polytope) -> Polytope:
    """Hull of most of Q's vertices plus a few lattice points; often touches every face."""
    verts = list(Q.vertices)
    keep = rng.sample(verts, rng.randint(max(1, len(verts) - 2), len(verts)))
    pts = lattice_points(Q)
    extra = rng.sample(pts, rng.randint(0, min(2, len(pts))))
    return Polytope(keep + extra)


def _inner(rng: random.Random, Q: Polytope) -> Polytope:
    return random_vertex_sub_polytope(rng, Q) if rng.random() < 0.5 else random_sub_polytope(rng, Q)


def random_equal_instance(rng: random.Random, n: int, box: int) -> tuple[list[Polytope], Polytope]:
    Q = random_lattice_polytope(rng, n, box, n + 1, n + 4, full=True)
    return [_inner(rng, Q) for _ in range(n)], Q


def random_nested_instance(rng: random.Random, n: int, box: int) -> tuple[list[Polytope], list[Polytope]]:
    Qs = [random_lattice_polytope(rng, n, box, 1, n + 3) for _ in range(n)]
    return [_inner(rng, Q) for Q in Qs], Qs


def random_collection(rng: random.Random, n: int, box: int) -> list[Polytope]:
    return [random_lattice_polytope(rng, n, box, 1, n + 3) for _ in range(n)]


def _nonzero(rng: random.Random, lo: int = -5, hi: int = 5) -> int:
    while True:
        x = rng.randint(lo, hi)
        if x:
            return x


def random_support(rng: random.Random, n: int, box: int, kmin: int, kmax: int) -> list[tuple[int, ...]]:
    while True:
        pts = list(dict.fromkeys(random_points(rng, n, box, rng.randint(kmin, kmax))))
        if Polytope(pts).dim == n:
            return pts


def random_cramer_system(rng: random.Random, n: int, box: int = 3) -> SparseSystem:
    """Dense C with every maximal minor non-zero (rejection sampled)."""
    pts = random_support(rng, n, box, n + 1, n + 4)
    while True:
        C = [[_nonzero(rng) for _ in pts] for _ in range(n)]
        S = SparseSystem.from_matrix(pts, C)
        if cramer_check(S):
            return S


def random_failing_system(rng: random.Random, n: int, box: int = 3) -> SparseSystem:
    """A system whose coefficient columns on some face of Q have rank 1 < dim F + 1."""
    while True:
        pts = random_support(rng, n, box, n + 2, n + 5)
        Q = Polytope(pts)
        faces = [F for F in Q.proper_faces() if F.dim >= 1]
        F = rng.choice(faces)
        on = {j for j, a in enumerate(pts) if linalg.dot(F.normal, a) == Q.support(F.normal)}
        col = [_nonzero(rng) for _ in range(n)]
        C = [[0] * len(pts) for _ in range(n)]
        for j in range(len(pts)):
            if j in on:
                s = _nonzero(rng, -3, 3)
                for i in range(n):
                    C[i][j] = s * col[i]
            else:
                for i in range(n):
                    C[i][j] = rng.randint(-5, 5)
        try:
            S = SparseSystem.from_matrix(pts, C)
        except ValueError:
            continue
        if linalg.rank(S.C) == n and not ber_check(S)[0]:
            return S


def example_support_construction(rng: random.Random, n: int, box: int) -> tuple[list[Polytope], Polytope]:
    """Supports A_i = (A minus {a_1..a_n}) plus {a_i} for a random A and a random choice of a_i."""
    pts = random_support(rng, n, box, n + 1, n + 5)
    chosen = rng.sample(range(len(pts)), n)
    rest = [p for j, p in enumerate(pts) if j not in chosen]
    Ps = [Polytope(rest + [pts[c]]) for c in chosen]
    return Ps, Polytope(pts)

