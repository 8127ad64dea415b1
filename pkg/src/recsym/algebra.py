"""Complex 4-vectors and their two composition rules.

A :class:`Quat4` is a scalar part plus a 3-component vector part, all
sharing one scalar backend.  Two products are defined on these values:

* ``le_compose``, the Lorentz-Einstein rule.  Its vector output stays in
  the plane spanned by the operand vector parts and it reproduces
  relativistic velocity addition on unit-quadratic-form boosts.
* ``rs_compose``, the reciprocal-symmetric rule.  It is biquaternion
  multiplication: closed, associative, and carrying an ``i A x B`` cross
  term that the Lorentz-Einstein rule never produces.

Both rules leave the Minkowski-signature quadratic form
``qform(A) = a0^2 - A.A`` multiplicative: qform(A o B) = qform(A) qform(B).
All dot products here are complex-bilinear (no conjugation).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import (
    BackendMismatch,
    NotAUnitBoost,
    SuperluminalVelocity,
    VectorResidueNonzero,
)
from .scalars import (
    ABS_FLOOR,
    Backend,
    CScalar,
    REL_TOL_SINGLE,
    format_cscalar,
    magnitude,
    scalars_close,
    sqrt_scalar,
)

__all__ = [
    "Quat4",
    "Rule",
    "Vector3",
    "Velocity3",
    "add",
    "boost_from_velocity",
    "conj",
    "cross",
    "dot",
    "einstein_add",
    "euclid_norm_sq",
    "format_quat",
    "le_compose",
    "qform",
    "qform_via_conj",
    "rs_compose",
    "scale",
    "sub",
    "velocity_from_boost",
]

Vector3 = tuple[CScalar, CScalar, CScalar]
Velocity3 = tuple[float, float, float]

# below this magnitude a float B.B is treated as exactly null in le_compose
_NULL_EPS = 1e-30


class Rule(Enum):
    """Which composition rule an operation should use."""

    LE = "le"
    RS = "rs"


def _coerce_component(x, backend: Backend) -> CScalar:
    if isinstance(x, CScalar):
        if x.backend is not backend:
            raise BackendMismatch("component backend does not match requested backend")
        return x
    if backend is Backend.EXACT:
        if isinstance(x, tuple):
            return CScalar.exact(*x)
        return CScalar.exact(x)
    return CScalar.approx(x)


@dataclass(frozen=True, slots=True)
class Quat4:
    """Scalar part ``s`` plus vector part ``v``; backend-homogeneous."""

    s: CScalar
    v: Vector3

    def __post_init__(self):
        v = tuple(self.v)
        if len(v) != 3:
            raise ValueError("vector part must have exactly 3 components")
        for c in (self.s, *v):
            if not isinstance(c, CScalar):
                raise TypeError("Quat4 components must be CScalar values")
            if c.backend is not self.s.backend:
                raise BackendMismatch("all four components must share one backend")
        object.__setattr__(self, "v", v)

    @property
    def backend(self) -> Backend:
        return self.s.backend

    @classmethod
    def exact(cls, s, v: Sequence) -> "Quat4":
        """Build from ints, Fractions, ``"p/q"`` strings, ``(re, im)`` pairs
        or ready-made exact scalars."""
        vs = tuple(_coerce_component(x, Backend.EXACT) for x in v)
        return cls(_coerce_component(s, Backend.EXACT), vs)

    @classmethod
    def approx(cls, s, v: Sequence) -> "Quat4":
        vs = tuple(_coerce_component(x, Backend.FLOAT) for x in v)
        return cls(_coerce_component(s, Backend.FLOAT), vs)

    @classmethod
    def one(cls, backend: Backend) -> "Quat4":
        z = CScalar.zero(backend)
        return cls(CScalar.one(backend), (z, z, z))

    @classmethod
    def zero(cls, backend: Backend) -> "Quat4":
        z = CScalar.zero(backend)
        return cls(z, (z, z, z))

    def __str__(self) -> str:
        return format_quat(self)


def format_quat(q: Quat4) -> str:
    parts = ", ".join(format_cscalar(c) for c in q.v)
    return f"({format_cscalar(q.s)}; {parts})"


def _require_same_backend(a: Quat4, b: Quat4) -> Backend:
    if a.backend is not b.backend:
        raise BackendMismatch(
            f"cannot compose {a.backend.value} and {b.backend.value} 4-vectors"
        )
    return a.backend


def dot(u: Iterable[CScalar], v: Iterable[CScalar]) -> CScalar:
    """Complex-bilinear dot product (no conjugation)."""
    acc = None
    for x, y in zip(u, v):
        term = x * y
        acc = term if acc is None else acc + term
    assert acc is not None
    return acc


def cross(u: Vector3, v: Vector3) -> Vector3:
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def conj(a: Quat4) -> Quat4:
    """Scalar part kept, vector part negated; an involution."""
    return Quat4(a.s, (-a.v[0], -a.v[1], -a.v[2]))


def euclid_norm_sq(a: Quat4) -> CScalar:
    """Euclidean-signature form s^2 + v.v.

    Distinct from :func:`qform`; every invariance statement in this package
    binds to the Minkowski form, this one is kept for completeness.
    """
    return a.s * a.s + dot(a.v, a.v)


def qform(a: Quat4) -> CScalar:
    """Minkowski-signature quadratic form s^2 - v.v."""
    return a.s * a.s - dot(a.v, a.v)


def add(a: Quat4, b: Quat4) -> Quat4:
    _require_same_backend(a, b)
    return Quat4(a.s + b.s, tuple(x + y for x, y in zip(a.v, b.v)))


def sub(a: Quat4, b: Quat4) -> Quat4:
    _require_same_backend(a, b)
    return Quat4(a.s - b.s, tuple(x - y for x, y in zip(a.v, b.v)))


def scale(k, a: Quat4) -> Quat4:
    if not isinstance(k, CScalar):
        k = CScalar.exact(k) if a.backend is Backend.EXACT else CScalar.approx(k)
    if k.backend is not a.backend:
        raise BackendMismatch("scale factor backend does not match the 4-vector")
    return Quat4(k * a.s, tuple(k * x for x in a.v))


def _is_null(s: CScalar) -> bool:
    if s.backend is Backend.EXACT:
        return s.is_zero()
    return magnitude(s) < _NULL_EPS


def le_compose(a: Quat4, b: Quat4) -> Quat4:
    """Lorentz-Einstein composition.

    Scalar part a0*b0 + A.B; vector part A*sqrt(b0^2 - B.B) plus
    {(b0 - sqrt(b0^2 - B.B)) * (A.B)/(B.B) + a0} * B.  When B.B = 0 the
    singular term is replaced by its continuous limit 0, so the braced
    coefficient collapses to a0.  The square root takes the principal
    branch; in the exact backend it must be a Gaussian rational or
    SqrtNotExact is raised.
    """
    _require_same_backend(a, b)
    bb = dot(b.v, b.v)
    ab = dot(a.v, b.v)
    scalar = a.s * b.s + ab
    if _is_null(bb):
        root = sqrt_scalar(b.s * b.s)
        braced = a.s
    else:
        root = sqrt_scalar(b.s * b.s - bb)
        braced = (b.s - root) * ab / bb + a.s
    vec = tuple(x * root + braced * y for x, y in zip(a.v, b.v))
    return Quat4(scalar, vec)


def rs_compose(a: Quat4, b: Quat4) -> Quat4:
    """Reciprocal-symmetric composition.

    Scalar part a0*b0 + A.B; vector part b0*A + a0*B + i (A x B).  Closed
    over both backends with no radicals.
    """
    backend = _require_same_backend(a, b)
    i = CScalar.imag_unit(backend)
    cr = cross(a.v, b.v)
    scalar = a.s * b.s + dot(a.v, b.v)
    vec = tuple(b.s * av + a.s * bv + i * c for av, bv, c in zip(a.v, b.v, cr))
    return Quat4(scalar, vec)


def compose(a: Quat4, b: Quat4, rule: Rule) -> Quat4:
    return le_compose(a, b) if rule is Rule.LE else rs_compose(a, b)


def qform_via_conj(a: Quat4, rule: Rule) -> CScalar:
    """Compose ``a`` with its conjugate and return the scalar part.

    The vector part must vanish; equals :func:`qform` for both rules.
    """
    r = compose(a, conj(a), rule)
    if a.backend is Backend.EXACT:
        bad = any(not c.is_zero() for c in r.v)
    else:
        m = max(magnitude(c) for c in (a.s, *a.v))
        tol = max(ABS_FLOOR, REL_TOL_SINGLE * max(1.0, m * m))
        bad = any(magnitude(c) > tol for c in r.v)
    if bad:
        raise VectorResidueNonzero(
            f"conjugate product has vector residue {format_quat(r)}"
        )
    return r.s


def _speed_sq(v: Sequence[float]) -> float:
    vx, vy, vz = (float(c) for c in v)
    return vx * vx + vy * vy + vz * vz


def boost_from_velocity(v: Sequence, backend: Backend = Backend.FLOAT) -> Quat4:
    """(gamma; gamma*v) for subluminal v, in units of c; qform is 1.

    The float backend accepts any real components.  The exact backend
    accepts rational components and succeeds only when gamma is itself
    rational (1 - v.v a perfect rational square), raising SqrtNotExact
    otherwise.
    """
    if backend is Backend.EXACT:
        vv = sum((Fraction(c) ** 2 for c in v), start=Fraction(0))
        if vv >= 1:
            raise SuperluminalVelocity(f"|v|^2 = {vv} is not < 1")
        g = CScalar.one(Backend.EXACT) / sqrt_scalar(CScalar.exact(1 - vv))
        return Quat4(g, tuple(g * CScalar.exact(Fraction(c)) for c in v))
    vv = _speed_sq(v)
    if vv >= 1.0:
        raise SuperluminalVelocity(f"|v| = {math.sqrt(vv)} is not < 1")
    g = 1.0 / math.sqrt(1.0 - vv)
    return Quat4.approx(g, tuple(g * float(c) for c in v))


def velocity_from_boost(b: Quat4) -> Velocity3:
    """Inverse of :func:`boost_from_velocity`: v = vec(B)/b0.

    Requires real components, positive scalar part and unit quadratic form
    (within the float tolerance policy).
    """
    for c in (b.s, *b.v):
        if b.backend is Backend.EXACT:
            real = c.is_real()
        else:
            real = abs(float(c.im)) <= max(ABS_FLOOR, REL_TOL_SINGLE * magnitude(c))
        if not real:
            raise NotAUnitBoost(f"{format_quat(b)} has complex components")
    if not float(b.s.re) > 0.0:
        raise NotAUnitBoost(f"{format_quat(b)} has non-positive scalar part")
    if not scalars_close(qform(b), CScalar.one(b.backend)):
        raise NotAUnitBoost(
            f"{format_quat(b)} has quadratic form {format_cscalar(qform(b))}, expected 1"
        )
    s = float(b.s.re)
    return tuple(float(c.re) / s for c in b.v)


def einstein_add(u: Sequence[float], v: Sequence[float]) -> Velocity3:
    """Relativistic velocity addition u (+) v, implemented directly.

    Implemented without reference to :func:`le_compose` so the two can be
    cross-checked.  Convention: ``u`` is the frame velocity and ``v`` the
    velocity measured in that frame; for parallel inputs this is
    (u + v)/(1 + u.v).
    """
    uu = _speed_sq(u)
    vv = _speed_sq(v)
    if uu >= 1.0 or vv >= 1.0:
        raise SuperluminalVelocity("both speeds must be < 1")
    ux, uy, uz = (float(c) for c in u)
    vx, vy, vz = (float(c) for c in v)
    uv = ux * vx + uy * vy + uz * vz
    gu = 1.0 / math.sqrt(1.0 - uu)
    f = 1.0 / (1.0 + uv)
    cu = f * (1.0 + (gu / (1.0 + gu)) * uv)
    cv = f / gu
    return (cu * ux + cv * vx, cu * uy + cv * vy, cu * uz + cv * vz)
