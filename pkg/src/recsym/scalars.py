"""Complex scalars over two strictly separated numeric backends.

The EXACT backend stores Gaussian rationals (a pair of
:class:`fractions.Fraction` values).  It is closed under +, -, * and /
with no rounding, so algebraic identities can be checked for literal
equality.  The FLOAT backend stores ordinary double-precision parts.
The backends never mix: combining values from different backends raises
:class:`~recsym.errors.BackendMismatch` instead of promoting silently.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .errors import BackendMismatch, SqrtNotExact

__all__ = [
    "ABS_FLOOR",
    "Backend",
    "CScalar",
    "REL_TOL_CHAINED",
    "REL_TOL_SINGLE",
    "abs_residual",
    "format_cscalar",
    "magnitude",
    "rel_residual",
    "scalars_close",
    "sqrt_scalar",
]

# Float comparison policy: a comparison passes when the absolute difference
# is within max(ABS_FLOOR, rel * larger magnitude).
REL_TOL_SINGLE = 1e-12  # one composition deep
REL_TOL_CHAINED = 1e-9  # composition chains up to depth 8
ABS_FLOOR = 1e-15


class Backend(Enum):
    """Tag selecting the arithmetic backing a value."""

    EXACT = "exact"
    FLOAT = "float"


def _as_fraction(x) -> Fraction:
    if isinstance(x, float):
        raise TypeError("exact scalars must be built from ints, Fractions or 'p/q' strings")
    return Fraction(x)


@dataclass(frozen=True, slots=True)
class CScalar:
    """One complex scalar; ``re``/``im`` are Fractions (EXACT) or floats (FLOAT)."""

    re: Fraction | float
    im: Fraction | float
    backend: Backend

    @classmethod
    def exact(cls, re=0, im=0) -> "CScalar":
        """Gaussian rational from ints, Fractions or strings like ``"15/17"``."""
        return cls(_as_fraction(re), _as_fraction(im), Backend.EXACT)

    @classmethod
    def approx(cls, value: complex | float | int = 0.0) -> "CScalar":
        z = complex(value)
        # adding 0.0 normalises -0.0 so formatting stays sign-free
        return cls(z.real + 0.0, z.imag + 0.0, Backend.FLOAT)

    @classmethod
    def zero(cls, backend: Backend) -> "CScalar":
        return cls.exact() if backend is Backend.EXACT else cls.approx()

    @classmethod
    def one(cls, backend: Backend) -> "CScalar":
        return cls.exact(1) if backend is Backend.EXACT else cls.approx(1.0)

    @classmethod
    def imag_unit(cls, backend: Backend) -> "CScalar":
        return cls.exact(0, 1) if backend is Backend.EXACT else cls.approx(1j)

    # -- predicates ------------------------------------------------------

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def is_real(self) -> bool:
        return self.im == 0

    def to_complex(self) -> complex:
        return complex(float(self.re), float(self.im))

    # -- arithmetic ------------------------------------------------------

    def _coerce(self, other) -> "CScalar":
        if isinstance(other, CScalar):
            if other.backend is not self.backend:
                raise BackendMismatch(
                    f"cannot combine {self.backend.value} and {other.backend.value} scalars"
                )
            return other
        if isinstance(other, int):
            if self.backend is Backend.EXACT:
                return CScalar.exact(other)
            return CScalar.approx(float(other))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.backend is Backend.EXACT:
            return CScalar(self.re + other.re, self.im + other.im, Backend.EXACT)
        z = self.to_complex() + other.to_complex()
        return CScalar.approx(z)

    __radd__ = __add__

    def __neg__(self):
        if self.backend is Backend.EXACT:
            return CScalar(-self.re, -self.im, Backend.EXACT)
        return CScalar.approx(-self.to_complex())

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.backend is Backend.EXACT:
            a, b, c, d = self.re, self.im, other.re, other.im
            return CScalar(a * c - b * d, a * d + b * c, Backend.EXACT)
        return CScalar.approx(self.to_complex() * other.to_complex())

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.backend is Backend.EXACT:
            a, b, c, d = self.re, self.im, other.re, other.im
            n = c * c + d * d
            if n == 0:
                raise ZeroDivisionError("division by zero scalar")
            return CScalar((a * c + b * d) / n, (b * c - a * d) / n, Backend.EXACT)
        return CScalar.approx(self.to_complex() / other.to_complex())

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __str__(self) -> str:
        return format_cscalar(self)

    def __repr__(self) -> str:
        return f"CScalar({format_cscalar(self)}, {self.backend.value})"


def magnitude(s: CScalar) -> float:
    """|s| as a float, for residual reporting in either backend."""
    return math.hypot(float(s.re), float(s.im))


def abs_residual(a: CScalar, b: CScalar) -> float:
    """|a - b| as a float; literal 0.0 when two exact values are equal."""
    if a.backend is Backend.EXACT and b.backend is Backend.EXACT:
        if a.re == b.re and a.im == b.im:
            return 0.0
    return abs(a.to_complex() - b.to_complex())


def rel_residual(a: CScalar, b: CScalar) -> float:
    d = abs_residual(a, b)
    if d == 0.0:
        return 0.0
    m = max(magnitude(a), magnitude(b))
    return d / m if m > 0.0 else d


def scalars_close(a: CScalar, b: CScalar, rel: float = REL_TOL_SINGLE,
                  floor: float = ABS_FLOOR) -> bool:
    """max(abs, rel) comparison with an absolute floor."""
    return abs_residual(a, b) <= max(floor, rel * max(magnitude(a), magnitude(b)))


def _rational_sqrt(q: Fraction) -> Fraction | None:
    """Exact non-negative square root of a non-negative rational, or None."""
    if q < 0:
        return None
    num, den = q.numerator, q.denominator
    rn, rd = math.isqrt(num), math.isqrt(den)
    if rn * rn == num and rd * rd == den:
        return Fraction(rn, rd)
    return None


def _sqrt_exact(s: CScalar) -> CScalar:
    c, d = s.re, s.im
    if d == 0:
        if c >= 0:
            r = _rational_sqrt(c)
            if r is not None:
                return CScalar(r, Fraction(0), Backend.EXACT)
        else:
            r = _rational_sqrt(-c)
            if r is not None:
                return CScalar(Fraction(0), r, Backend.EXACT)
        raise SqrtNotExact(f"{format_cscalar(s)} has no exact rational square root")
    # general Gaussian case: (a+bi)^2 = s needs |s| rational and (|s|+c)/2 square
    m = _rational_sqrt(c * c + d * d)
    if m is None:
        raise SqrtNotExact(f"{format_cscalar(s)} has no exact Gaussian-rational square root")
    a = _rational_sqrt((m + c) / 2)
    if a is None or a == 0:
        raise SqrtNotExact(f"{format_cscalar(s)} has no exact Gaussian-rational square root")
    return CScalar(a, d / (2 * a), Backend.EXACT)


def sqrt_scalar(s: CScalar) -> CScalar:
    """Principal square root.

    FLOAT: principal complex branch (non-negative real part; purely
    imaginary results take a non-negative imaginary part).  EXACT: succeeds
    only when the root is itself a Gaussian rational, otherwise raises
    :class:`~recsym.errors.SqrtNotExact`.
    """
    if s.backend is Backend.FLOAT:
        return CScalar.approx(cmath.sqrt(s.to_complex()))
    return _sqrt_exact(s)


def _format_part(x, backend: Backend) -> str:
    if backend is Backend.EXACT:
        return str(x)
    return f"{x:.17g}"


def format_cscalar(c: CScalar) -> str:
    """Render as ``12``, ``15/17``, ``1+1i``, ``-3/4i`` or float equivalents."""
    if c.im == 0:
        return _format_part(c.re, c.backend)
    if c.re == 0:
        return _format_part(c.im, c.backend) + "i"
    sign = "+" if c.im > 0 else "-"
    return f"{_format_part(c.re, c.backend)}{sign}{_format_part(abs(c.im), c.backend)}i"
