"""JSON encodings for every shared artifact.

Scalars travel as strings "p/q" (rational) or "p/q+r/s*i" (Gaussian) in all
file formats; JSON files carry exact values and are the source of truth,
while CSV renderings round to 12 significant digits for human reading.
"""

from __future__ import annotations

import json
from dataclasses import is_dataclass
from fractions import Fraction
from typing import Any

from .designs import DesignMatrix
from .geometry import Hyperplane, Line
from .pointsets import PointSet
from .scalars import format_scalar, parse_point, parse_scalar
from .veronese import Polynomial


def pointset_to_dict(ps: PointSet) -> dict:
    out = {
        "dim": ps.dim,
        "field": ps.field,
        "points": [[format_scalar(c) for c in p] for p in ps.points],
    }
    if ps.labels:
        out["labels"] = list(ps.labels)
    return out


def pointset_from_dict(data: dict) -> PointSet:
    field = data.get("field", "Q")
    pts = tuple(parse_point(p, field) for p in data["points"])
    labels = tuple(data["labels"]) if data.get("labels") else None
    return PointSet(int(data["dim"]), field, pts, labels)


def line_to_dict(line: Line) -> dict:
    return {
        "dir": [format_scalar(c) for c in line.direction],
        "base": [format_scalar(c) for c in line.base],
        "points": list(line.points),
    }


def line_from_dict(data: dict, field: str = "Q") -> Line:
    return Line(
        parse_point(data["dir"], field),
        parse_point(data["base"], field),
        tuple(int(i) for i in data.get("points", [])),
    )


def hyperplane_to_dict(plane: Hyperplane) -> dict:
    return {
        "normal": [format_scalar(c) for c in plane.normal],
        "offset": format_scalar(plane.offset),
    }


def hyperplane_from_dict(data: dict, field: str = "Q") -> Hyperplane:
    return Hyperplane(
        parse_point(data["normal"], field), parse_scalar(data["offset"], field)
    )


def polynomial_to_dict(f: Polynomial) -> dict:
    return {
        "dim": f.dim,
        "terms": [
            {"exp": list(exp), "coef": format_scalar(coef)}
            for exp, coef in f.sorted_terms()
        ],
    }


def polynomial_from_dict(data: dict, field: str = "Q") -> Polynomial:
    return Polynomial(
        int(data["dim"]),
        {
            tuple(int(e) for e in term["exp"]): parse_scalar(term["coef"], field)
            for term in data["terms"]
        },
    )


def design_to_dict(A: DesignMatrix) -> dict:
    entries = sorted(A.entries.items())
    out = {
        "rows": A.rows,
        "cols": A.cols,
        "params": {"q": A.q, "k": A.k, "t": A.t},
        "entries": [[i, j, format_scalar(v)] for (i, j), v in entries],
    }
    if A.cover is not None:
        out["tuples"] = [
            [list(block) for block in line] for line in A.cover.per_line
        ]
    return out


def jsonable(value: Any) -> Any:
    """Recursively convert package values into JSON-ready structures."""
    if isinstance(value, Fraction):
        return format_scalar(value)
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if isinstance(value, float):
        return value
    if isinstance(value, PointSet):
        return pointset_to_dict(value)
    if isinstance(value, Line):
        return line_to_dict(value)
    if isinstance(value, Hyperplane):
        return hyperplane_to_dict(value)
    if isinstance(value, Polynomial):
        return polynomial_to_dict(value)
    if isinstance(value, DesignMatrix):
        return design_to_dict(value)
    from .scalars import GaussianRational

    if isinstance(value, GaussianRational):
        return format_scalar(value)
    if is_dataclass(value) and not isinstance(value, type):
        return {k: jsonable(v) for k, v in vars(value).items()}
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        items = list(value)
        if isinstance(value, (set, frozenset)):
            items = sorted(items, key=repr)
        return [jsonable(v) for v in items]
    raise TypeError(f"cannot serialize {type(value)!r}")


def dump_json(value: Any, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(jsonable(value), fh, indent=2, sort_keys=True)
        fh.write("\n")


def dumps_json(value: Any) -> str:
    return json.dumps(jsonable(value), indent=2, sort_keys=True) + "\n"


def load_json(path: str) -> Any:
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)
