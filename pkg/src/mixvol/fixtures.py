"""Small named instances used by the tests, the scripts and the data files."""

from __future__ import annotations

from .polytope import Polytope
from .systems import SparseSystem, parse_system

SQUARE = [(0, 0), (1, 0), (1, 1), (0, 1)]
BOTTOM_EDGE = [(0, 0), (1, 0)]
E1 = [(0, 0), (1, 0)]
E2 = [(0, 0), (0, 1)]
TRIANGLE = [(0, 0), (1, 0), (0, 1)]

# two triangles filling a pentagon without mixed-volume loss
PENTAGON_SYSTEM = "1 + x*y^2 + x^2*y = 0\nx^2 + y + x*y^2 = 0"
# same first triangle, second triangle moved off the edge (1,2)-(2,1)
PENTAGON_STRICT_SYSTEM = "1 + x*y^2 + x^2*y = 0\nx^2 + y + x*y = 0"

PRISM_POINTS = [(0, 0, 0), (1, 0, 0), (1, 1, 0), (0, 1, 0), (0, 0, 1), (0, 1, 1)]
PRISM_C = [
    [1, 3, 5, 1, -2, 2],
    [1, 1, -3, 3, 1, -1],
    [1, 3, 1, 3, -1, 1],
]
DENSE_LINEAR_SYSTEM = "1 + 2*x + 3*y = 0\n4 + 5*x + 7*y = 0"


def square() -> Polytope:
    return Polytope(SQUARE)


def bottom_edge() -> Polytope:
    return Polytope(BOTTOM_EDGE)


def pentagon_system() -> SparseSystem:
    return parse_system(PENTAGON_SYSTEM)


def pentagon_strict_system() -> SparseSystem:
    return parse_system(PENTAGON_STRICT_SYSTEM)


def prism_system() -> SparseSystem:
    return SparseSystem.from_matrix(PRISM_POINTS, PRISM_C)


def dense_linear_system() -> SparseSystem:
    return parse_system(DENSE_LINEAR_SYSTEM)


def standard_simplex(n: int) -> Polytope:
    return Polytope([tuple(0 for _ in range(n))] + [tuple(int(i == j) for j in range(n)) for i in range(n)])
