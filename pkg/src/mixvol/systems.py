"""Sparse Laurent polynomial systems f_i = sum_j c_ij x^{a_j}.

A system is stored as its total support (an ordered, duplicate-free list of
exponent vectors a_1..a_l) and its n x l coefficient matrix C.  The audits
below only look at ranks and minors of C and of the augmented exponent
matrix (a row of ones on top of the exponents); nothing here solves a
system.  Point labels in reports are 1-based to match the usual column
numbering of C.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from . import linalg
from .criteria import strict_monotonicity_equal, touch_deficient_faces
from .errors import CrossCheckError, DimensionError, InputError, ParseError, PreconditionError
from .mixed import mixed_volume
from .polytope import Face, Polytope

log = logging.getLogger(__name__)

FEWER_CONCLUSION = "strictly less than n!Vol(Q) isolated solutions or infinitely many"
MAXIMAL_CONCLUSION = "exactly n!Vol(Q) isolated solutions counted with multiplicity"


def _frac_str(x) -> str | int:
    x = Fraction(x)
    return int(x) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class LaurentTerm:
    coefficient: Fraction
    exponent: tuple[int, ...]

    def __post_init__(self):
        if self.coefficient == 0:
            raise InputError("a term needs a non-zero coefficient")


@dataclass(frozen=True)
class SparseSystem:
    """n equations in n unknowns, given by C and the ordered total support."""

    variables: tuple[str, ...]
    points: tuple[tuple[int, ...], ...]
    C: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        n = len(self.variables)
        if n == 0:
            raise InputError("a system needs at least one variable")
        if len(self.C) != n:
            raise InputError(f"{len(self.C)} equations in {n} variables")
        if len(set(self.points)) != len(self.points):
            raise InputError("support points must be distinct")
        if any(len(p) != n for p in self.points):
            raise DimensionError("exponent vectors must have one entry per variable")
        if any(len(row) != len(self.points) for row in self.C):
            raise InputError("every row of C needs one entry per support point")
        for i, row in enumerate(self.C):
            if not any(row):
                raise InputError(f"equation {i + 1} is the zero polynomial")
        for j in range(len(self.points)):
            if not any(row[j] for row in self.C):
                raise InputError(f"support point {j + 1} has no non-zero coefficient")

    @classmethod
    def from_matrix(cls, points, C, variables: Sequence[str] | None = None) -> "SparseSystem":
        pts = tuple(tuple(int(x) for x in p) for p in points)
        n = len(pts[0]) if pts else len(C)
        rows = tuple(tuple(linalg.as_fraction(x) for x in row) for row in C)
        return cls(tuple(variables) if variables else default_variables(n), pts, rows)

    @property
    def n(self) -> int:
        return len(self.variables)

    @property
    def ell(self) -> int:
        return len(self.points)

    def support(self, i: int) -> list[int]:
        """Column indices (0-based) of the individual support of equation i."""
        return [j for j, c in enumerate(self.C[i]) if c != 0]

    def terms(self, i: int) -> list[LaurentTerm]:
        return [LaurentTerm(self.C[i][j], self.points[j]) for j in self.support(i)]

    def to_json(self) -> dict:
        return {"n": self.n, "variables": list(self.variables),
                "points": [list(p) for p in self.points],
                "C": [[_frac_str(x) for x in row] for row in self.C]}

    def to_text(self) -> str:
        return "\n".join(_format_poly(self.terms(i), self.variables) + " = 0" for i in range(self.n))


def default_variables(n: int) -> tuple[str, ...]:
    if n <= 3:
        return ("x", "y", "z")[:n]
    return tuple(f"x{i + 1}" for i in range(n))


def _format_poly(terms: list[LaurentTerm], names: Sequence[str]) -> str:
    out = []
    for t in terms:
        mono = "*".join(v if e == 1 else f"{v}^{e}" for v, e in zip(names, t.exponent) if e != 0)
        c = t.coefficient
        sign = "-" if c < 0 else "+"
        c = abs(c)
        if mono:
            body = mono if c == 1 else f"{_frac_str(c)}*{mono}"
        else:
            body = str(_frac_str(c))
        out.append((sign, body))
    text = ("-" if out[0][0] == "-" else "") + out[0][1]
    for sign, body in out[1:]:
        text += f" {sign} {body}"
    return text


# ------------------------------------------------------------ parsing

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<var>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*^=()]))")


def _tokenize(text: str, line: int) -> list[tuple[str, str, int]]:
    toks = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            col = pos + len(text[pos:]) - len(text[pos:].lstrip()) + 1
            raise ParseError(f"unexpected character {text[col - 1]!r}", col, line)
        kind = m.lastgroup
        toks.append((kind, m.group(kind), m.start(kind) + 1))
        pos = m.end()
    return toks


class _Parser:
    def __init__(self, toks, line: int, eol: int):
        self.toks = toks
        self.i = 0
        self.line = line
        self.eol = eol

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def error(self, msg):
        tok = self.peek()
        raise ParseError(msg, tok[2] if tok else self.eol, self.line)

    def take(self, kind=None, value=None):
        tok = self.peek()
        if tok is None or (kind and tok[0] != kind) or (value and tok[1] != value):
            self.error(f"expected {value or kind}")
        self.i += 1
        return tok

    def integer(self) -> int:
        sign = 1
        if self.peek() and self.peek()[1] in "+-":
            sign = -1 if self.take()[1] == "-" else 1
        tok = self.peek()
        if tok is None or tok[0] != "num" or "/" in tok[1]:
            self.error("expected an integer exponent")
        self.i += 1
        return sign * int(tok[1])

    def exponent(self) -> int:
        if self.peek() and self.peek()[1] == "(":
            self.take(value="(")
            e = self.integer()
            self.take(value=")")
            return e
        return self.integer()

    def factor(self, powers: dict):
        name = self.take("var")[1]
        e = 1
        if self.peek() and self.peek()[1] == "^":
            self.take(value="^")
            e = self.exponent()
        powers[name] = powers.get(name, 0) + e

    def term(self, sign: int):
        coeff = Fraction(sign)
        powers: dict[str, int] = {}
        tok = self.peek()
        if tok is None:
            self.error("expected a term")
        if tok[0] == "num":
            coeff *= Fraction(self.take()[1])
            if self.peek() and self.peek()[1] == "*":
                self.take(value="*")
                self.factor(powers)
        elif tok[0] == "var":
            self.factor(powers)
        else:
            self.error("expected a coefficient or a variable")
        while self.peek() and self.peek()[1] == "*":
            self.take(value="*")
            self.factor(powers)
        return coeff, powers

    def equation(self):
        terms = []
        sign = 1
        if self.peek() and self.peek()[1] in "+-":
            sign = -1 if self.take()[1] == "-" else 1
        terms.append(self.term(sign))
        while self.peek() and self.peek()[1] in "+-":
            sign = -1 if self.take()[1] == "-" else 1
            terms.append(self.term(sign))
        if self.peek() and self.peek()[1] == "=":
            self.take(value="=")
            tok = self.take("num")
            if Fraction(tok[1]) != 0:
                raise ParseError("right-hand side must be 0", tok[2], self.line)
        if self.peek() is not None:
            self.error("unexpected token")
        return terms


def _natural_key(name: str):
    return [int(p) if p.isdigit() else p for p in re.split(r"(\d+)", name)]


def _split_equations(text: str) -> list[tuple[str, int, int]]:
    """Pieces of text with their line number and column offset."""
    out = []
    for ln, line in enumerate(text.splitlines(), start=1):
        start = 0
        for piece in line.split(";"):
            if piece.strip() and not piece.strip().startswith("#"):
                out.append((piece, ln, start))
            start += len(piece) + 1
    return out


def parse_system(text: str, variables: Sequence[str] | None = None) -> SparseSystem:
    """Parse equations separated by newlines or ';' into a SparseSystem.

    >>> parse_system("x*y - 1 = 0; x - y = 0").points
    ((1, 1), (0, 0), (1, 0), (0, 1))
    """
    parsed = []
    for piece, ln, offset in _split_equations(text):
        try:
            toks = _tokenize(piece, ln)
            parsed.append(_Parser(toks, ln, len(piece) + 1).equation())
        except ParseError as exc:
            if exc.position is not None:
                raise ParseError(str(exc.args[0]).split(" (line")[0], exc.position + offset, ln) from None
            raise
    if not parsed:
        raise ParseError("no equations found")
    used = sorted({v for eq in parsed for _, powers in eq for v in powers}, key=_natural_key)
    if variables is None:
        names = tuple(used)
    else:
        names = tuple(variables)
        unknown = [v for v in used if v not in names]
        if unknown:
            raise InputError(f"undeclared variables: {', '.join(unknown)}")
    if not names:
        raise InputError("the system has no variables")
    if len(parsed) != len(names):
        raise InputError(f"{len(parsed)} equations in {len(names)} variables")

    rows: list[dict[tuple, Fraction]] = []
    order: list[tuple] = []
    seen_any: list[tuple] = []
    for eq in parsed:
        row: dict[tuple, Fraction] = {}
        for coeff, powers in eq:
            a = tuple(powers.get(v, 0) for v in names)
            row[a] = row.get(a, Fraction(0)) + coeff
            if a not in seen_any:
                seen_any.append(a)
        rows.append({a: c for a, c in row.items() if c != 0})
    for i, row in enumerate(rows):
        if not row:
            raise InputError(f"equation {i + 1} is the zero polynomial")
    for a in seen_any:
        if any(a in row for row in rows):
            order.append(a)
        else:
            log.warning("exponent %s cancelled everywhere and was dropped from the support", a)
    C = tuple(tuple(row.get(a, Fraction(0)) for a in order) for row in rows)
    return SparseSystem(names, tuple(order), C)


def load_system(text: str) -> SparseSystem:
    """Accept either system text or the JSON matrix format."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        import json
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc.msg}", exc.colno, exc.lineno) from None
        return system_from_json(data)
    return parse_system(text)


def system_from_json(data: dict) -> SparseSystem:
    try:
        n = int(data["n"])
        pts = data["points"]
        C = data["C"]
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"system JSON needs keys n, points, C ({exc})") from None
    if any(len(p) != n for p in pts):
        raise DimensionError("points must have n coordinates")
    try:
        return SparseSystem.from_matrix(pts, C, data.get("variables"))
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        if isinstance(exc, InputError):
            raise
        raise InputError(f"bad matrix entry: {exc}") from None


# ------------------------------------------------------------ matrices and polytopes

def matrices(S: SparseSystem) -> tuple[list[list[Fraction]], list[list[int]], list[list[int]]]:
    """(C, A, Abar) with the exponents as columns of A."""
    C = [list(row) for row in S.C]
    A = [[p[k] for p in S.points] for k in range(S.n)]
    Abar = [[1] * S.ell] + A
    return C, A, Abar


def newton_polytopes(S: SparseSystem) -> tuple[list[Polytope], Polytope]:
    Ps = [Polytope([S.points[j] for j in S.support(i)], S.n) for i in range(S.n)]
    return Ps, Polytope(S.points, S.n)


def bkk_bound(S: SparseSystem, method: str = "all", seed: int = 0) -> int:
    """n!V(P1..Pn): an upper bound on the number of isolated solutions in the torus."""
    Ps, _ = newton_polytopes(S)
    return int(mixed_volume(Ps, method, seed).normalized)


@dataclass
class RestrictedSystem:
    direction: tuple
    points: tuple
    C: list[list[Fraction]]

    def to_json(self) -> dict:
        return {"u": [_frac_str(x) for x in self.direction],
                "points": [list(p) for p in self.points],
                "C": [[_frac_str(x) for x in row] for row in self.C]}


def restricted_system(S: SparseSystem, u) -> RestrictedSystem:
    """Keep in equation i only the terms on the face P_i^u (zero rows allowed)."""
    if len(u) != S.n:
        raise DimensionError("direction has the wrong length")
    if not any(u):
        raise InputError("direction u must be non-zero")
    rows = []
    for i in range(S.n):
        sup = S.support(i)
        top = max(linalg.dot(u, S.points[j]) for j in sup)
        rows.append([S.C[i][j] if j in sup and linalg.dot(u, S.points[j]) == top else Fraction(0)
                     for j in range(S.ell)])
    return RestrictedSystem(tuple(u), S.points, rows)


# ------------------------------------------------------------ rank audits

@dataclass
class FaceRankReport:
    face: Face
    labels: tuple[int, ...]          # 1-based columns of C on the face
    rank_C: int
    rank_Abar: int
    dim_F: int

    @property
    def passed(self) -> bool:
        return self.rank_C >= self.rank_Abar

    def to_json(self) -> dict:
        return {"labels": list(self.labels), "dim": self.dim_F, "rank_C": self.rank_C,
                "rank_Abar": self.rank_Abar, "pass": self.passed}


def _require_full(S: SparseSystem) -> Polytope:
    Q = Polytope(S.points, S.n)
    if Q.dim != S.n:
        raise PreconditionError(f"dim Q = {Q.dim} < n = {S.n}")
    return Q


def face_labels(S: SparseSystem, F: Face) -> tuple[int, ...]:
    """0-based indices j with a_j on the face F."""
    c = F.polytope.support(F.normal)
    return tuple(j for j, a in enumerate(S.points) if linalg.dot(F.normal, a) == c)


def ber_check(S: SparseSystem) -> tuple[bool, list[FaceRankReport]]:
    """rank C_F >= rank Abar_F on every proper face F of Q."""
    Q = _require_full(S)
    C, _, Abar = matrices(S)
    reports = []
    for F in Q.proper_faces():
        idx = face_labels(S, F)
        rC = linalg.rank([[row[j] for j in idx] for row in C])
        rA = linalg.rank([[row[j] for j in idx] for row in Abar])
        if rA != F.dim + 1:
            raise CrossCheckError(f"rank of Abar on a {F.dim}-face is {rA}")
        reports.append(FaceRankReport(F, tuple(j + 1 for j in idx), rC, rA, F.dim))
    return all(r.passed for r in reports), reports


def maximal_minors(S: SparseSystem):
    for cols in combinations(range(S.ell), S.n):
        yield cols, linalg.det([[row[j] for j in cols] for row in S.C])


def cramer_check(S: SparseSystem) -> bool:
    """True iff no maximal minor of C vanishes."""
    _require_full(S)
    return all(m != 0 for _, m in maximal_minors(S))


def simplicial_nondegeneracy_check(S: SparseSystem) -> str:
    """'yes', 'no' or 'not-applicable' for the all-simplicial-faces special case."""
    Ps, Q = newton_polytopes(S)
    if Q.dim != S.n or any(P != Q for P in Ps):
        return "not-applicable"
    for F in Q.proper_faces():
        if len(F.vertex_indices) != F.dim + 1:
            return "not-applicable"
        if len(face_labels(S, F)) != len(F.vertex_indices):
            return "not-applicable"
    return "yes" if ber_check(S)[0] else "no"


# ------------------------------------------------------------ invariance operations

def left_multiply(S: SparseSystem, L) -> SparseSystem:
    """Replace C by L C; the total support is unchanged for invertible L."""
    n = S.n
    if len(L) != n or any(len(row) != n for row in L):
        raise DimensionError(f"L must be {n} x {n}")
    if linalg.det(L) == 0:
        raise InputError("L is singular")
    C = linalg.matmul([[Fraction(x) for x in row] for row in L], S.C)
    for j in range(S.ell):
        if not any(row[j] for row in C):
            raise CrossCheckError("an invertible L removed a support point")
    for i, row in enumerate(C):
        if not any(row):
            raise InputError(f"L C has a zero row {i + 1} (C has rank < n)")
    return SparseSystem(S.variables, S.points, tuple(tuple(row) for row in C))


def monomial_transform(S: SparseSystem, Mbar) -> SparseSystem:
    """Replace Abar by Mbar Abar, i.e. a -> b + M a with Mbar = [[1, 0], [b, M]]."""
    n = S.n
    if len(Mbar) != n + 1 or any(len(row) != n + 1 for row in Mbar):
        raise DimensionError(f"Mbar must be {n + 1} x {n + 1}")
    if not all(linalg.is_integral(row) for row in Mbar):
        raise InputError("Mbar must be an integer matrix")
    M = [[int(x) for x in row] for row in Mbar]
    if M[0] != [1] + [0] * n:
        raise InputError("first row of Mbar must be (1, 0, ..., 0)")
    if abs(linalg.int_det(M)) != 1:
        raise InputError("Mbar is not unimodular")
    _, _, Abar = matrices(S)
    new = linalg.matmul(M, Abar)
    pts = tuple(tuple(new[k][j] for k in range(1, n + 1)) for j in range(S.ell))
    return SparseSystem(S.variables, pts, S.C)


@dataclass
class FailureLinkage:
    """An invertible L making s = n - rank C_F rows of L C vanish on the face F."""

    report: FaceRankReport
    L: list[list[Fraction]]
    zero_rows: tuple[int, ...]
    transformed: SparseSystem
    touching: tuple[int, ...]

    def to_json(self) -> dict:
        return {"labels": list(self.report.labels),
                "L": [[_frac_str(x) for x in row] for row in self.L],
                "zero_rows": [i + 1 for i in self.zero_rows],
                "touching": [i + 1 for i in self.touching]}


def failure_linkage(S: SparseSystem, report: FaceRankReport) -> FailureLinkage:
    """Build L from the left kernel of C_F and confirm the face becomes a strictness witness."""
    if report.passed:
        raise PreconditionError("the face passes the rank condition")
    if linalg.rank(S.C) < S.n:
        raise PreconditionError("C has rank < n; a zero polynomial would appear")
    idx = [j - 1 for j in report.labels]
    CF = [[row[j] for j in idx] for row in S.C]
    kernel = linalg.left_nullspace(CF, S.n)
    L = linalg.extend_to_basis(kernel, S.n)
    T = left_multiply(S, L)
    zero_rows = tuple(range(len(kernel)))
    for i in zero_rows:
        if any(T.C[i][j] for j in idx):
            raise CrossCheckError("kernel row does not vanish on the face")
    Ps, Q = newton_polytopes(T)
    F = report.face
    touching = tuple(i for i, P in enumerate(Ps) if P.support(F.normal) == Q.support(F.normal))
    if len(touching) > F.dim:
        raise CrossCheckError(f"{len(touching)} members still touch a {F.dim}-face")
    if not any(G.key() == F.key() for G, _ in touch_deficient_faces(Ps, Q)):
        raise CrossCheckError("the failing face is not a touch-deficient face after the transform")
    if not strict_monotonicity_equal(Ps, Q).strict:
        raise CrossCheckError("transformed system is not strictly monotone")
    return FailureLinkage(report, L, zero_rows, T, touching)


# ------------------------------------------------------------ full report

@dataclass
class SystemReport:
    system: SparseSystem
    bkk: int
    volume_bound: int
    faces: list[FaceRankReport]
    ber_pass: bool
    cramer_pass: bool
    simplicial: str
    conclusions: list[str] = field(default_factory=list)

    @property
    def failing(self) -> list[FaceRankReport]:
        return [r for r in self.faces if not r.passed]

    def to_json(self) -> dict:
        return {
            "n": self.system.n,
            "ell": self.system.ell,
            "bkk_bound": self.bkk,
            "volume_bound": self.volume_bound,
            "ber_pass": self.ber_pass,
            "cramer_pass": self.cramer_pass,
            "simplicial_nondegenerate": self.simplicial,
            "failing_faces": [list(r.labels) for r in self.failing],
            "faces": [r.to_json() for r in self.faces],
            "conclusions": self.conclusions,
        }

    def to_table(self) -> str:
        head = f"{'dim':>3}  {'rank C':>6}  {'rank Abar':>9}  {'pass':>4}  face"
        lines = [head, "-" * len(head)]
        for r in self.faces:
            lines.append(f"{r.dim_F:>3}  {r.rank_C:>6}  {r.rank_Abar:>9}  {'yes' if r.passed else 'NO':>4}  "
                         "{" + ",".join(map(str, r.labels)) + "}")
        lines.append("")
        lines.append(f"BKK bound n!V(P1..Pn) = {self.bkk}; volume bound n!Vol(Q) = {self.volume_bound}")
        lines.append(f"rank condition: {'pass' if self.ber_pass else 'fail'}; "
                     f"maximal minors non-zero: {'yes' if self.cramer_pass else 'no'}; "
                     f"simplicial non-degeneracy: {self.simplicial}")
        lines.extend(self.conclusions)
        return "\n".join(lines)


def analyze_system(S: SparseSystem, seed: int = 0) -> SystemReport:
    Q = _require_full(S)
    bkk = bkk_bound(S, "all", seed)
    vol = int(Q.normalized_volume)
    if bkk > vol:
        raise CrossCheckError(f"BKK bound {bkk} exceeds n!Vol(Q) = {vol}")
    ok, faces = ber_check(S)
    cramer = cramer_check(S)
    if cramer and not ok:
        raise CrossCheckError("non-vanishing maximal minors but the rank condition fails")
    simp = simplicial_nondegeneracy_check(S)
    notes = []
    if not ok:
        notes.append(f"rank condition fails: {FEWER_CONCLUSION}")
    if cramer:
        notes.append(f"no maximal minor of C vanishes: {MAXIMAL_CONCLUSION} = {vol}")
    if simp == "yes":
        notes.append(f"simplicial faces and rank condition: {MAXIMAL_CONCLUSION} = {vol}")
    return SystemReport(S, bkk, vol, faces, ok, cramer, simp, notes)
