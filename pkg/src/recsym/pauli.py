"""2x2 complex-matrix representation of the 4-vector algebra.

``embed`` maps a 4-vector to sigma0*a0 + sigma_x*a1 + sigma_y*a2 +
sigma_z*a3.  Matrix multiplication then realises the reciprocal-symmetric
composition exactly: embed(A) @ embed(B) == embed(rs_compose(A, B)).  That
makes this module the independent oracle for the algebra: two unrelated
code paths must agree, and det(embed(A)) reproduces the quadratic form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .algebra import Quat4, Vector3
from .errors import BackendMismatch, ZeroMomentum
from .scalars import Backend, CScalar, format_cscalar

__all__ = [
    "Mat2",
    "Spinor2",
    "cross_term",
    "det",
    "embed",
    "extract",
    "format_mat",
    "identity",
    "mat_add",
    "mat_apply",
    "mat_mul",
    "mat_scale",
    "mat_sub",
    "massless_dirac",
    "null_spinor",
    "sigma",
    "spinor_residual",
    "trace",
]


@dataclass(frozen=True, slots=True)
class Mat2:
    """Row-major 2x2 matrix of complex scalars; backend-homogeneous."""

    m: tuple[tuple[CScalar, CScalar], tuple[CScalar, CScalar]]

    def __post_init__(self):
        rows = tuple(tuple(row) for row in self.m)
        if len(rows) != 2 or any(len(r) != 2 for r in rows):
            raise ValueError("Mat2 requires a 2x2 grid of entries")
        bk = rows[0][0].backend
        for row in rows:
            for c in row:
                if not isinstance(c, CScalar):
                    raise TypeError("Mat2 entries must be CScalar values")
                if c.backend is not bk:
                    raise BackendMismatch("all entries must share one backend")
        object.__setattr__(self, "m", rows)

    @property
    def backend(self) -> Backend:
        return self.m[0][0].backend

    def __str__(self) -> str:
        return format_mat(self)


def format_mat(mat: Mat2) -> str:
    (a, b), (c, d) = mat.m
    f = format_cscalar
    return f"[[{f(a)}, {f(b)}], [{f(c)}, {f(d)}]]"


def _require_same_backend(m: Mat2, n: Mat2) -> Backend:
    if m.backend is not n.backend:
        raise BackendMismatch("matrix backends differ")
    return m.backend


def identity(backend: Backend) -> Mat2:
    one, zero = CScalar.one(backend), CScalar.zero(backend)
    return Mat2(((one, zero), (zero, one)))


def sigma(k: int, backend: Backend = Backend.EXACT) -> Mat2:
    """Standard basis: sigma(0) identity, then the three Pauli matrices."""
    if k not in (0, 1, 2, 3):
        raise IndexError(f"sigma index {k} not in 0..3")
    one, zero = CScalar.one(backend), CScalar.zero(backend)
    i = CScalar.imag_unit(backend)
    if k == 0:
        return Mat2(((one, zero), (zero, one)))
    if k == 1:
        return Mat2(((zero, one), (one, zero)))
    if k == 2:
        return Mat2(((zero, -i), (i, zero)))
    return Mat2(((one, zero), (zero, -one)))


def mat_add(m: Mat2, n: Mat2) -> Mat2:
    _require_same_backend(m, n)
    return Mat2(tuple(tuple(a + b for a, b in zip(r1, r2)) for r1, r2 in zip(m.m, n.m)))


def mat_sub(m: Mat2, n: Mat2) -> Mat2:
    _require_same_backend(m, n)
    return Mat2(tuple(tuple(a - b for a, b in zip(r1, r2)) for r1, r2 in zip(m.m, n.m)))


def mat_scale(k: CScalar, m: Mat2) -> Mat2:
    if k.backend is not m.backend:
        raise BackendMismatch("scale factor backend does not match the matrix")
    return Mat2(tuple(tuple(k * a for a in row) for row in m.m))


def mat_mul(m: Mat2, n: Mat2) -> Mat2:
    _require_same_backend(m, n)
    (a, b), (c, d) = m.m
    (e, f), (g, h) = n.m
    return Mat2(((a * e + b * g, a * f + b * h), (c * e + d * g, c * f + d * h)))


def det(m: Mat2) -> CScalar:
    (a, b), (c, d) = m.m
    return a * d - b * c


def trace(m: Mat2) -> CScalar:
    return m.m[0][0] + m.m[1][1]


def embed(q: Quat4) -> Mat2:
    """Linear map onto the sigma basis: sigma0*s + sigma.v."""
    acc = mat_scale(q.s, sigma(0, q.backend))
    for k, comp in enumerate(q.v, start=1):
        acc = mat_add(acc, mat_scale(comp, sigma(k, q.backend)))
    return acc


def extract(m: Mat2) -> Quat4:
    """Inverse of :func:`embed` via trace projections; exact round-trip."""
    (m00, m01), (m10, m11) = m.m
    two = CScalar.one(m.backend) + CScalar.one(m.backend)
    two_i = two * CScalar.imag_unit(m.backend)
    s = (m00 + m11) / two
    v1 = (m01 + m10) / two
    v2 = (m10 - m01) / two_i
    v3 = (m00 - m11) / two
    return Quat4(s, (v1, v2, v3))


def cross_term(bv: Vector3, cv: Vector3) -> tuple[CScalar, Vector3]:
    """Product of two pure-vector embeddings, split back into scalar+vector.

    Constructively equals (B.C, i (B x C)): the dot part is spin-free, the
    cross part carries the factor i.
    """
    zero = CScalar.zero(bv[0].backend)
    qb = Quat4(zero, tuple(bv))
    qc = Quat4(zero, tuple(cv))
    q = extract(mat_mul(embed(qb), embed(qc)))
    return q.s, q.v


def massless_dirac(energy: CScalar, p: Vector3) -> Mat2:
    """Wave operator sigma0*E - sigma.p; det is E^2 - p.p."""
    return embed(Quat4(energy, tuple(-c for c in p)))


@dataclass(frozen=True, slots=True)
class Spinor2:
    """2-component spinor; backend-homogeneous, never the zero vector when
    produced by :func:`null_spinor`."""

    components: tuple[CScalar, CScalar]

    def __post_init__(self):
        comps = tuple(self.components)
        if len(comps) != 2:
            raise ValueError("Spinor2 requires exactly 2 components")
        if comps[0].backend is not comps[1].backend:
            raise BackendMismatch("spinor components must share one backend")
        object.__setattr__(self, "components", comps)

    @property
    def backend(self) -> Backend:
        return self.components[0].backend


def mat_apply(m: Mat2, psi: Spinor2) -> Spinor2:
    (a, b), (c, d) = m.m
    x, y = psi.components
    return Spinor2((a * x + b * y, c * x + d * y))


def spinor_residual(m: Mat2, psi: Spinor2) -> float:
    """Euclidean norm of m @ psi, as a float."""
    out = mat_apply(m, psi)
    return math.hypot(*(abs(c.to_complex()) for c in out.components))


# fallback window around the -z pole where the closed form degenerates
_POLE_EPS = 1e-12


def null_spinor(p) -> Spinor2:
    """Positive-helicity unit eigenspinor of sigma.p_hat, float backend.

    Solves (sigma0*|p| - sigma.p) psi = 0.  Phase convention: the first
    nonzero component is real and positive.  For p along -z the closed form
    degenerates and the exact eigenvector (0, 1) is returned.
    """
    px, py, pz = (float(c) for c in p)
    norm = math.hypot(px, py, pz)
    if norm == 0.0:
        raise ZeroMomentum("helicity is undefined for zero momentum")
    x, y, z = px / norm, py / norm, pz / norm
    if 1.0 + z <= _POLE_EPS:
        return Spinor2((CScalar.approx(0.0), CScalar.approx(1.0)))
    n = math.sqrt(2.0 * (1.0 + z))
    return Spinor2((
        CScalar.approx((1.0 + z) / n),
        CScalar.approx(complex(x, y) / n),
    ))
