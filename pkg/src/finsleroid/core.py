"""Scalar building blocks of the Finsleroid space.

An N-dimensional euclidean vector space with a preferred axis (the last
coordinate, written Z) is deformed by a single characteristic parameter
g in (-2, 2).  The deformed norm is

    K(g; R) = sqrt(B) * exp(G * Phi / 2),
    B = Z^2 + g*q*Z + q^2,     q = sqrt(r_ab R^a R^b),

with h = sqrt(1 - g^2/4), G = g/h, and Phi an angle-like function of
(q, Z).  At g = 0 everything collapses to the euclidean norm.  The
level set K = 1 (the "finsleroid") replaces the unit sphere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NumericalDomainError, OutOfRangeError, ZeroVectorError

__all__ = [
    "GParameter",
    "MetricContext",
    "ScalarBundle",
    "make_parameter",
    "q_norm",
    "scalar_bundle",
    "kfun",
    "phi_function",
    "generating_v",
    "generating_j",
]


@dataclass(frozen=True)
class GParameter:
    """The characteristic parameter g and every derived constant.

    Attributes
    ----------
    g : characteristic parameter, -2 < g < 2
    h : sqrt(1 - g^2/4)
    big_g : G = g/h
    g_plus, g_minus : g/2 + h, g/2 - h (roots of the B-form factorization)
    g_up_plus, g_up_minus : -g/2 + h, -g/2 - h
    gamma : h - 1, the conformal-flattening exponent
    """

    g: float
    h: float
    big_g: float
    g_plus: float
    g_minus: float
    g_up_plus: float
    g_up_minus: float
    gamma: float


def make_parameter(g: float) -> GParameter:
    """Validate g and populate the derived constants."""
    g = float(g)
    if not -2.0 < g < 2.0 or not math.isfinite(g):
        raise OutOfRangeError(f"characteristic parameter must satisfy -2 < g < 2, got {g!r}")
    h = math.sqrt(1.0 - 0.25 * g * g)
    return GParameter(
        g=g,
        h=h,
        big_g=g / h,
        g_plus=0.5 * g + h,
        g_minus=0.5 * g - h,
        g_up_plus=-0.5 * g + h,
        g_up_minus=-0.5 * g - h,
        gamma=h - 1.0,
    )


def _check_vector(x, n: int | None = None) -> np.ndarray:
    v = np.asarray(x, dtype=float)
    if v.ndim != 1:
        raise OutOfRangeError(f"expected a 1-d vector, got shape {v.shape}")
    if n is not None and v.size != n:
        raise OutOfRangeError(f"expected a vector of length {n}, got {v.size}")
    if not np.all(np.isfinite(v)):
        raise OutOfRangeError("vector components must be finite")
    return v


class MetricContext:
    """Dimension N plus the input euclidean tensor.

    ``r_ab`` is a symmetric positive-definite (N-1) x (N-1) matrix over the
    non-axis coordinates; ``r_pq`` is its N x N extension with r_NN = 1 and
    r_Na = 0.  Positive definiteness is checked by Cholesky factorization
    at construction; the factor doubles as the vielbein used by the
    two-vector frame.
    """

    def __init__(self, n: int, r_ab=None):
        n = int(n)
        if n < 2:
            raise OutOfRangeError(f"dimension must be >= 2, got {n}")
        if r_ab is None:
            r_ab = np.eye(n - 1)
        r_ab = np.asarray(r_ab, dtype=float)
        if r_ab.shape != (n - 1, n - 1):
            raise OutOfRangeError(f"r_ab must be {(n - 1, n - 1)}, got {r_ab.shape}")
        if not np.all(np.isfinite(r_ab)):
            raise OutOfRangeError("r_ab entries must be finite")
        if not np.allclose(r_ab, r_ab.T, rtol=1e-12, atol=1e-12):
            raise NumericalDomainError("r_ab must be symmetric")
        r_ab = 0.5 * (r_ab + r_ab.T)
        try:
            np.linalg.cholesky(r_ab)
        except np.linalg.LinAlgError as exc:
            raise NumericalDomainError("r_ab must be positive definite") from exc

        r_pq = np.eye(n)
        r_pq[: n - 1, : n - 1] = r_ab

        self.n = n
        self.r_ab = r_ab
        self.r_pq = r_pq
        self.r_ab_inv = np.linalg.inv(r_ab)
        self.r_pq_inv = np.linalg.inv(r_pq)
        # vielbein: r_pq = sum_R e[R,p] e[R,q], frame components t^R = e[R,p] t^p
        self.vielbein = np.linalg.cholesky(r_pq).T
        for arr in (self.r_ab, self.r_pq, self.r_ab_inv, self.r_pq_inv, self.vielbein):
            arr.setflags(write=False)

    def q(self, bold) -> float:
        """Euclidean norm of an (N-1)-vector under r_ab."""
        bold = np.asarray(bold, dtype=float)
        return math.sqrt(max(float(bold @ self.r_ab @ bold), 0.0))

    def m(self, t) -> float:
        """Norm of the non-axis part of a full N-vector."""
        return self.q(np.asarray(t, dtype=float)[:-1])

    def dot(self, x, y) -> float:
        """Full euclidean product r_pq x^p y^q."""
        return float(np.asarray(x, dtype=float) @ self.r_pq @ np.asarray(y, dtype=float))

    def s_norm(self, t) -> float:
        """Euclidean length S(t) = sqrt(r_pq t^p t^q)."""
        return math.sqrt(max(self.dot(t, t), 0.0))

    def codot(self, xi, eta) -> float:
        """Product of two covectors, r^pq xi_p eta_q."""
        return float(np.asarray(xi, dtype=float) @ self.r_pq_inv @ np.asarray(eta, dtype=float))

    def lower(self, t) -> np.ndarray:
        return self.r_pq @ np.asarray(t, dtype=float)

    def raise_(self, xi) -> np.ndarray:
        return self.r_pq_inv @ np.asarray(xi, dtype=float)

    def check_vector(self, x, nonzero: bool = False) -> np.ndarray:
        v = _check_vector(x, self.n)
        if nonzero and not np.any(v):
            raise ZeroVectorError("operation requires a nonzero vector")
        return v

    def __repr__(self):  # pragma: no cover
        return f"MetricContext(n={self.n})"


@dataclass(frozen=True)
class ScalarBundle:
    """Every scalar attached to one vector R = (bold R, Z).

    Q and E live on the chart w = q/Z and are NaN on the plane Z = 0.
    Identities maintained (and tested): A^2 + h^2 q^2 = B,
    L^2 + h^2 Z^2 = B, -pi/2 <= Phi <= pi/2, K = sqrt(B) J.
    """

    q: float
    B: float
    Q: float
    E: float
    A: float
    L: float
    phi: float
    J: float
    K: float


def q_norm(ctx: MetricContext, R) -> float:
    """q(R) = sqrt(r_ab R^a R^b), the norm of the non-axis part."""
    R = ctx.check_vector(R)
    return ctx.q(R[:-1])


def phi_function(par: GParameter, q: float, z: float) -> float:
    """Angle-like function Phi of the pair (q, Z), q >= 0.

    Computed as pi/2 - atan2(h*q, A) with A = Z + g*q/2, which is smooth
    across q = 0 for Z > 0 and continues the principal branch through
    A = 0 (plain arctan of hq/A picks the wrong branch when sign(A)
    differs from sign(Z)).  At q = 0 the value is +-pi/2 with the sign
    of Z; Z = 0 with q = 0 is excluded (zero vector).
    """
    a = z + 0.5 * par.g * q
    return 0.5 * math.pi - math.atan2(par.h * q, a)


def _phi_qz_form(par: GParameter, q: float, z: float) -> float:
    # printed primary branch family; needs Z != 0
    base = 0.5 * math.pi if z >= 0 else -0.5 * math.pi
    return base + math.atan(0.5 * par.big_g) - math.atan(q / (par.h * z) + 0.5 * par.big_g)


def _phi_lz_form(par: GParameter, q: float, z: float) -> float:
    # same family written through L = q + g*Z/2; needs Z != 0
    base = 0.5 * math.pi if z >= 0 else -0.5 * math.pi
    lfun = q + 0.5 * par.g * z
    return base + math.atan(0.5 * par.big_g) - math.atan(lfun / (par.h * z))


def _phi_a_form(par: GParameter, q: float, z: float) -> float:
    # plain-arctan A-form; valid only while sign(A) == sign(Z)
    a = z + 0.5 * par.g * q
    base = 0.5 * math.pi if z >= 0 else -0.5 * math.pi
    return base - math.atan(par.h * q / a)


def _bundle_from_qz(par: GParameter, q: float, z: float) -> ScalarBundle:
    b = z * z + par.g * q * z + q * q
    a = z + 0.5 * par.g * q
    lfun = q + 0.5 * par.g * z
    phi = phi_function(par, q, z)
    j = math.exp(0.5 * par.big_g * phi)
    k = math.sqrt(b) * j
    if z != 0.0:
        w = q / z
        qw = 1.0 + par.g * w + w * w
        ew = 1.0 + 0.5 * par.g * w
    else:
        qw = math.nan
        ew = math.nan
    return ScalarBundle(q=q, B=b, Q=qw, E=ew, A=a, L=lfun, phi=phi, J=j, K=k)


def scalar_bundle(par: GParameter, ctx: MetricContext, R) -> ScalarBundle:
    """Evaluate q, B, Q, E, A, L, Phi, J and K at a nonzero vector."""
    R = ctx.check_vector(R, nonzero=True)
    return _bundle_from_qz(par, ctx.q(R[:-1]), float(R[-1]))


def kfun(par: GParameter, ctx: MetricContext, R) -> float:
    """The metric function K(g; R)."""
    return scalar_bundle(par, ctx, R).K


def generating_j(par: GParameter, w: float) -> float:
    """j(g; w), the exponential factor on the chart w = q/Z."""
    q = abs(float(w))
    z = 1.0 if w >= 0 else -1.0
    return math.exp(0.5 * par.big_g * phi_function(par, q, z))


def generating_v(par: GParameter, w: float) -> float:
    """Generating metric function V(g; w) = sqrt(1 + g*w + w^2) * j(g; w).

    Satisfies K(g; R) = |Z| * V(g; q/Z) whenever Z != 0; negative w
    encodes the lower half-space Z < 0.
    """
    w = float(w)
    qw = 1.0 + par.g * w + w * w
    return math.sqrt(qw) * generating_j(par, w)
