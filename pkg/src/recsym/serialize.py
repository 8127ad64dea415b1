"""JSON encoding shared by the CLI and the checker reports.

Exact scalars serialize their parts as ``"p/q"`` strings so nothing is
lost at the process boundary; float scalars serialize as JSON numbers.
Deserialization infers the backend from those types and rejects mixtures.
"""

from __future__ import annotations

from fractions import Fraction

from .algebra import Quat4
from .pauli import Mat2
from .scalars import Backend, CScalar

__all__ = [
    "cscalar_from_json",
    "cscalar_to_json",
    "mat_from_json",
    "mat_to_json",
    "quat_from_json",
    "quat_to_json",
    "value_to_json",
]


def cscalar_to_json(c: CScalar) -> dict:
    if c.backend is Backend.EXACT:
        return {"re": str(c.re), "im": str(c.im)}
    return {"re": float(c.re), "im": float(c.im)}


def cscalar_from_json(obj: dict) -> CScalar:
    re, im = obj["re"], obj["im"]
    if isinstance(re, str) != isinstance(im, str):
        raise ValueError("scalar parts must be both strings (exact) or both numbers (float)")
    if isinstance(re, str):
        return CScalar(Fraction(re), Fraction(im), Backend.EXACT)
    return CScalar.approx(complex(float(re), float(im)))


def quat_to_json(q: Quat4) -> dict:
    return {"s": cscalar_to_json(q.s), "v": [cscalar_to_json(c) for c in q.v]}


def quat_from_json(obj: dict) -> Quat4:
    return Quat4(cscalar_from_json(obj["s"]),
                 tuple(cscalar_from_json(c) for c in obj["v"]))


def mat_to_json(m: Mat2) -> dict:
    return {"m": [[cscalar_to_json(c) for c in row] for row in m.m]}


def mat_from_json(obj: dict) -> Mat2:
    return Mat2(tuple(tuple(cscalar_from_json(c) for c in row) for row in obj["m"]))


def value_to_json(value):
    """Dispatch on the printable value kinds the expression language returns."""
    if isinstance(value, Quat4):
        return quat_to_json(value)
    if isinstance(value, Mat2):
        return mat_to_json(value)
    if isinstance(value, CScalar):
        return cscalar_to_json(value)
    raise TypeError(f"cannot serialize {type(value).__name__}")
