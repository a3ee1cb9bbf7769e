"""Exact linear algebra over the rationals and the integers.

Matrices are plain sequences of rows.  Entries may be ``int`` or
``fractions.Fraction``; every routine here is exact.  Ranks and
determinants go through fraction-free (Bareiss) elimination on an
integer copy of the matrix, which keeps intermediate numbers small.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

Matrix = Sequence[Sequence]


def as_fraction(value) -> Fraction:
    """Parse an int, Fraction or ``"p/q"`` string into a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not coordinates")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot read {value!r} as an exact rational")


def is_integral(vec) -> bool:
    return all(Fraction(x).denominator == 1 for x in vec)


def dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def sub(u, v) -> tuple:
    return tuple(a - b for a, b in zip(u, v))


def add(u, v) -> tuple:
    return tuple(a + b for a, b in zip(u, v))


def scale(s, v) -> tuple:
    return tuple(s * a for a in v)


def primitive(vec) -> tuple[int, ...]:
    """Smallest positive multiple of a rational vector that is integral and has gcd 1."""
    fr = [Fraction(x) for x in vec]
    den = lcm(*(x.denominator for x in fr)) if fr else 1
    ints = [int(x * den) for x in fr]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        raise ValueError("zero vector has no primitive multiple")
    return tuple(x // g for x in ints)


def integer_rows(M: Matrix) -> list[list[int]]:
    """Scale every row by the lcm of its denominators; rank is unchanged."""
    out = []
    for row in M:
        fr = [Fraction(x) for x in row]
        den = lcm(*(x.denominator for x in fr)) if fr else 1
        out.append([int(x * den) for x in fr])
    return out


def _bareiss_echelon(A: list[list[int]]) -> tuple[int, list[int], int]:
    """In-place fraction-free row echelon form.

    Returns ``(rank, pivot_columns, sign)`` where ``sign`` tracks row swaps.
    Integer division by the previous pivot is exact at every step.
    """
    m = len(A)
    ncols = len(A[0]) if m else 0
    r = 0
    prev = 1
    sign = 1
    pivots: list[int] = []
    for c in range(ncols):
        if r == m:
            break
        p = r
        while p < m and A[p][c] == 0:
            p += 1
        if p == m:
            continue
        if p != r:
            A[p], A[r] = A[r], A[p]
            sign = -sign
        piv = A[r][c]
        row_r = A[r]
        for i in range(r + 1, m):
            row_i = A[i]
            f = row_i[c]
            for j in range(c + 1, ncols):
                row_i[j] = (piv * row_i[j] - f * row_r[j]) // prev
            row_i[c] = 0
        # rows above the pivot row keep their scale; rows below are now
        # multiples of piv, so later steps divide by it
        prev = piv
        pivots.append(c)
        r += 1
    return r, pivots, sign


def rank(M: Matrix) -> int:
    """Rank over the rationals via fraction-free elimination."""
    if not M or not len(M[0]):
        return 0
    A = integer_rows(M)
    return _bareiss_echelon(A)[0]


def pivot_columns(M: Matrix) -> list[int]:
    if not M or not len(M[0]):
        return []
    A = integer_rows(M)
    return _bareiss_echelon(A)[1]


def det(M: Matrix):
    """Exact determinant of a square matrix (int for integer input)."""
    n = len(M)
    if n == 0:
        return 1
    if any(len(row) != n for row in M):
        raise ValueError("determinant of a non-square matrix")
    fr = [[Fraction(x) for x in row] for row in M]
    dens = [lcm(*(x.denominator for x in row)) for row in fr]
    A = [[int(x * d) for x in row] for row, d in zip(fr, dens)]
    if n == 1:
        val = A[0][0]
    else:
        r, _, sign = _bareiss_echelon(A)
        val = 0 if r < n else sign * A[n - 1][n - 1]
    scale_ = 1
    for d in dens:
        scale_ *= d
    if scale_ == 1:
        return val
    return Fraction(val, scale_)


def int_det(A: Sequence[Sequence[int]]) -> int:
    """Determinant of an integer matrix (no Fraction round trip)."""
    n = len(A)
    if n == 0:
        return 1
    if n == 1:
        return A[0][0]
    if n == 2:
        return A[0][0] * A[1][1] - A[0][1] * A[1][0]
    B = [list(row) for row in A]
    r, _, sign = _bareiss_echelon(B)
    return 0 if r < n else sign * B[n - 1][n - 1]


def transpose(M: Matrix) -> list[list]:
    return [list(col) for col in zip(*M)] if M else []


def matmul(A: Matrix, B: Matrix) -> list[list]:
    Bt = transpose(B)
    return [[dot(row, col) for col in Bt] for row in A]


def rref(M: Matrix) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Fractions and the pivot columns."""
    A = [[Fraction(x) for x in row] for row in M]
    m = len(A)
    ncols = len(A[0]) if m else 0
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, m) if A[i][c] != 0), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        pv = A[r][c]
        A[r] = [x / pv for x in A[r]]
        for i in range(m):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return A, pivots


def nullspace(M: Matrix, ncols: int | None = None) -> list[list[Fraction]]:
    """Basis of the right kernel {x : M x = 0}."""
    if not M:
        if ncols is None:
            raise ValueError("ncols required for an empty matrix")
        return [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    R, pivots = rref(M)
    ncols = len(M[0])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, pc in zip(R, pivots):
            v[pc] = -row[f]
        basis.append(v)
    return basis


def left_nullspace(M: Matrix, nrows: int | None = None) -> list[list[Fraction]]:
    """Basis of {y : y^T M = 0}."""
    if not M or not len(M[0]):
        n = len(M) if M else (nrows or 0)
        return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    return nullspace(transpose(M))


def inverse(M: Matrix) -> list[list[Fraction]]:
    n = len(M)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(M)]
    R, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return [row[n:] for row in R]


def extend_to_basis(vectors: Sequence[Sequence], n: int) -> list[list[Fraction]]:
    """Complete linearly independent ``vectors`` with standard basis vectors."""
    basis = [[Fraction(x) for x in v] for v in vectors]
    r = rank(basis) if basis else 0
    if r != len(basis):
        raise ValueError("input vectors are dependent")
    for i in range(n):
        e = [Fraction(int(i == j)) for j in range(n)]
        if rank(basis + [e]) > r:
            basis.append(e)
            r += 1
        if r == n:
            break
    return basis


# ---------------------------------------------------------------- lattices

def _column_reduce(W: list[list[int]]) -> tuple[list[list[int]], list[list[int]], int]:
    """Unimodular column reduction of an integer matrix.

    Finds unimodular ``U`` with ``W U = [H | 0]`` where ``H`` has ``r`` columns
    in echelon form.  Returns ``(WU, U, r)``; the last ``n - r`` columns of
    ``U`` are a basis of the integer kernel of ``W``.
    """
    m = len(W)
    n = len(W[0]) if m else 0
    A = [list(row) for row in W]
    U = [[int(i == j) for j in range(n)] for i in range(n)]

    def col_op(j, k, q):
        # column j -= q * column k
        for row in A:
            row[j] -= q * row[k]
        for row in U:
            row[j] -= q * row[k]

    def swap(j, k):
        for row in A:
            row[j], row[k] = row[k], row[j]
        for row in U:
            row[j], row[k] = row[k], row[j]

    r = 0
    for i in range(m):
        if r == n:
            break
        while True:
            nz = [j for j in range(r, n) if A[i][j] != 0]
            if not nz:
                break
            k = min(nz, key=lambda j: abs(A[i][j]))
            for j in nz:
                if j != k:
                    col_op(j, k, A[i][j] // A[i][k])
            if all(A[i][j] == 0 for j in range(r, n) if j != k):
                if k != r:
                    swap(k, r)
                r += 1
                break
    return A, U, r


def integer_kernel_basis(W: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Lattice basis of {x in Z^n : W x = 0}."""
    _, U, r = _column_reduce([list(map(int, row)) for row in W])
    n = len(U)
    return [tuple(U[i][j] for i in range(n)) for j in range(r, n)]


def sublattice_basis(u: Sequence[int]) -> list[tuple[int, ...]]:
    """Basis of the sublattice u^perp ∩ Z^n for a primitive integer vector u."""
    return unimodular_completion(u)[0]


def unimodular_completion(u: Sequence[int]) -> tuple[list[tuple[int, ...]], tuple[int, ...]]:
    """Return ``(B, v)``: a basis ``B`` of u^perp ∩ Z^n and ``v`` with <u, v> = 1.

    The matrix with columns ``B + [v]`` is unimodular.
    """
    u = [int(x) for x in u]
    if any(Fraction(x).denominator != 1 for x in u):
        raise ValueError("u must be integral")
    g = 0
    for x in u:
        g = gcd(g, x)
    if g == 0:
        raise ValueError("u must be non-zero")
    if g != 1:
        raise ValueError(f"u = {tuple(u)} is not primitive (gcd {g})")
    A, U, r = _column_reduce([u])
    assert r == 1 and abs(A[0][0]) == 1
    n = len(u)
    v = tuple(A[0][0] * U[i][0] for i in range(n))
    basis = [tuple(U[i][j] for i in range(n)) for j in range(1, n)]
    return basis, v


def lattice_coordinates(points: Sequence[Sequence[int]], basis: Sequence[Sequence[int]],
                        completion: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Coordinates of ``points`` along ``basis`` inside the unimodular frame ``basis + completion``.

    The coordinates along ``completion`` are dropped; for points lying in a
    translate of span(basis) they are constant, so the map is a lattice
    isometry onto Z^len(basis) up to translation.
    """
    n = len(basis) + len(completion)
    frame = [[Fraction(vec[i]) for vec in list(basis) + list(completion)] for i in range(n)]
    inv = inverse(frame)
    k = len(basis)
    out = []
    for p in points:
        c = [dot(inv[i], p) for i in range(k)]
        assert all(x.denominator == 1 for x in c)
        out.append(tuple(int(x) for x in c))
    return out
