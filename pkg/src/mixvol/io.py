"""JSON formats for polytopes, collections and subdivision dumps.

Coordinates are written as ints when integral and as "p/q" strings
otherwise; both forms are accepted on input.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from . import linalg
from .errors import DimensionError, InputError, ParseError
from .mixed import MixedSubdivision
from .polytope import Polytope


def rat_json(x) -> int | str:
    x = Fraction(x)
    return int(x) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def point_json(p) -> list:
    return [rat_json(x) for x in p]


def _read_point(p, dim: int | None):
    if not isinstance(p, (list, tuple)):
        raise InputError(f"point {p!r} is not a list")
    try:
        q = tuple(linalg.as_fraction(x) for x in p)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad coordinate in {p!r}: {exc}") from None
    if dim is not None and len(q) != dim:
        raise DimensionError(f"point {p!r} does not have {dim} coordinates")
    return q


def polytope_to_json(P: Polytope) -> dict:
    return {"dim": P.ambient_dim, "points": [point_json(v) for v in P.vertices]}


def polytope_from_json(data, dim: int | None = None) -> Polytope:
    if isinstance(data, list):
        pts = data
    elif isinstance(data, dict) and "points" in data:
        pts = data["points"]
        dim = data.get("dim", dim)
    else:
        raise InputError("a polytope is {\"dim\": n, \"points\": [...]} or a list of points")
    if not pts:
        raise InputError("a polytope needs at least one point")
    return Polytope([_read_point(p, dim) for p in pts], dim)


def collection_to_json(Ps) -> dict:
    return {"dim": Ps[0].ambient_dim, "polytopes": [polytope_to_json(P) for P in Ps]}


def collection_from_json(data) -> list[Polytope]:
    if not isinstance(data, dict) or "polytopes" not in data:
        raise InputError("a collection is {\"dim\": n, \"polytopes\": [...]}")
    dim = data.get("dim")
    Ps = [polytope_from_json(p, dim) for p in data["polytopes"]]
    if not Ps:
        raise InputError("empty collection")
    return Ps


def read_json(path) -> object:
    text = Path(path).read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON in {path}: {exc.msg}", exc.colno, exc.lineno) from None


def load_polytope_or_collection(path) -> list[Polytope]:
    """A collection file gives its members; a single polytope file gives [P]."""
    data = read_json(path)
    if isinstance(data, dict) and "polytopes" in data:
        return collection_from_json(data)
    return [polytope_from_json(data)]


def subdivision_to_json(sub: MixedSubdivision) -> dict:
    return {
        "seed": sub.lifting.seed,
        "attempts": sub.attempts,
        "cells": [
            {"parts": [[point_json(v) for v in part] for part in cell.parts],
             "fully_mixed": cell.fully_mixed,
             "volume": rat_json(cell.euclidean_volume)}
            for cell in sub.cells
        ],
    }


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False)
