"""Two-vector metric tensor, its orthonormal frame, the covariant version
with inversion, and the first-order parallelogram law.

The scalar product <t1, t2> = |t1||t2| cos(alpha) has a mixed second
derivative n_pq(t1, t2) that reduces to the one-vector quasi-euclidean
metric at coincidence.  Vector addition compatible with the geodesic
tetragon ("equal opposite sides") is known in closed form only to first
order in k = 1/h - 1; an exact numeric solver is provided on top.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .core import GParameter, MetricContext
from .errors import (
    CollinearError,
    MaxIterationsError,
    NoRootError,
    NumericalDomainError,
    ObtuseInputError,
    ZeroVectorError,
)
from .geodesics import PairInvariants, pair_invariants
from .quasimap import quasi_metric

__all__ = [
    "TwoVectorTensor",
    "CovectorPair",
    "CoincidenceReport",
    "two_vector_metric",
    "two_vector_determinant_reference",
    "co_orientation",
    "frame",
    "frame_reconstruct",
    "coincidence_limits",
    "covector_pair",
    "invert_covectors",
    "solve_co_angle",
    "oplus_first_order",
    "ominus_first_order",
    "parallelogram_residuals",
    "parallelogram_refine",
]


@dataclass(frozen=True)
class TwoVectorTensor:
    """n_pq(g; t1, t2) with the scalars of its three-term decomposition.

    n_pq = (|t1||t2| sin(alpha) / (h u)) r_pq
         + (a1 / (|t1||t2|)) t1_p t2_q - (a2 / (h |t1||t2|)) d1_p d2_q
    """

    n_lower: np.ndarray
    a1: float
    a2: float
    z: float
    pair: PairInvariants


def _pair_scalars(inv: PairInvariants):
    s1 = math.sqrt(inv.dot11)
    s2 = math.sqrt(inv.dot22)
    return s1, s2, math.cos(inv.alpha), math.sin(inv.alpha)


def two_vector_metric(par: GParameter, ctx: MetricContext, t1, t2) -> TwoVectorTensor:
    """Closed form of the mixed second derivative of the scalar product."""
    inv = pair_invariants(par, ctx, t1, t2)
    s1, s2, ca, sa = _pair_scalars(inv)
    a1 = ca - inv.dot12 * sa / (par.h * inv.u)
    a2 = ca / par.h - inv.dot12 * sa / inv.u
    t1l = ctx.lower(ctx.check_vector(t1))
    t2l = ctx.lower(ctx.check_vector(t2))
    d1l = ctx.lower(inv.d1)
    d2l = ctx.lower(inv.d2)
    n = (
        (s1 * s2 * sa / (par.h * inv.u)) * ctx.r_pq
        + (a1 / (s1 * s2)) * np.outer(t1l, t2l)
        - (a2 / (par.h * s1 * s2)) * np.outer(d1l, d2l)
    )
    zsq = inv.dot11 * inv.dot22 * sa / inv.u
    z = math.sqrt(zsq) if zsq >= 0.0 else math.nan
    return TwoVectorTensor(n_lower=n, a1=a1, a2=a2, z=z, pair=inv)


def two_vector_determinant_reference(par: GParameter, ctx: MetricContext, t1, t2) -> float:
    """det n_pq = (|t1||t2| sin(alpha)/u)^(N-2) h^(-N) det(r_ab)."""
    inv = pair_invariants(par, ctx, t1, t2)
    s1, s2, _, sa = _pair_scalars(inv)
    return (s1 * s2 * sa / inv.u) ** (ctx.n - 2) * par.h ** (-ctx.n) * float(
        np.linalg.det(ctx.r_ab)
    )


def _frame_pieces(par, ctx, inv):
    s1, s2, ca, sa = _pair_scalars(inv)
    if sa < 0.0:
        raise NumericalDomainError("frame needs sin(alpha) >= 0 (alpha <= pi)")
    x = inv.dot12
    zsq = inv.dot11 * inv.dot22 * sa / inv.u
    delta_p = par.h * ca - x * sa / inv.u
    delta_m = ca / par.h - x * sa / inv.u
    p_rad = zsq + x * delta_p  # equals h (t1t2) cos(alpha) + u sin(alpha)
    m_rad = zsq + x * delta_m
    if p_rad < 0.0 or m_rad < 0.0:
        raise NumericalDomainError("negative frame radicand for this pair")
    z = math.sqrt(zsq)
    p = math.sqrt(p_rad)
    m = math.sqrt(m_rad)
    # (z - p)/x rationalized to stay finite for euclid-orthogonal pairs
    c_p = -delta_p / (z + p)
    c_m = -delta_m / (z + m)
    return s1, s2, z, p, m, c_p, c_m


def frame(par: GParameter, ctx: MetricContext, t1, t2) -> np.ndarray:
    """Orthonormal-frame matrix f[R, p] of the pair.

    Rows are frame covectors; contractions with t1, t2 and the sum over
    the frame index against frame components of t1, t2 have closed forms.
    Raises NumericalDomain when a radicand is negative (large angles).
    """
    inv = pair_invariants(par, ctx, t1, t2)
    s1, s2, z, p, m, c_p, c_m = _frame_pieces(par, ctx, inv)
    t1l = ctx.lower(ctx.check_vector(t1))
    d2l = ctx.lower(inv.d2)
    t2_frame = ctx.vielbein @ ctx.check_vector(t2)
    d1_frame = ctx.vielbein @ inv.d1
    out = (
        z * ctx.vielbein
        - c_p * np.outer(t2_frame, t1l)
        + c_m * np.outer(d1_frame, d2l)
    )
    return out / math.sqrt(par.h * s1 * s2)


def frame_reconstruct(par: GParameter, ctx: MetricContext, t1, t2) -> np.ndarray:
    """sum_R f^R_p(t1, t2) f^R_q(t2, t1).

    Equals the two-vector tensor with its d-slot transposed (d2 (x) d1);
    the symmetric part coincides with the tensor itself.
    """
    f12 = frame(par, ctx, t1, t2)
    f21 = frame(par, ctx, t2, t1)
    return np.einsum("rp,rq->pq", f12, f21)


@dataclass(frozen=True)
class CoincidenceReport:
    """Convergence data for the coincidence limit t2 -> t1."""

    eps: np.ndarray
    tensor_error: np.ndarray
    derivative_error: np.ndarray
    a1: np.ndarray
    a2_over_u: np.ndarray
    a1_limit: float


def coincidence_limits(par: GParameter, ctx: MetricContext, t, eps_sequence, v) -> CoincidenceReport:
    """Probe n(t, t + eps v) -> n(t) and the derivative-sum limit.

    The sum of the two partial derivatives of the two-vector tensor tends
    to the derivative of the one-vector metric; each partial is estimated
    by central differences with step eps/1000 (the global step convention
    is too coarse this close to coincidence).
    """
    from . import numdiff
    from .quasimap import quasi_metric_derivative

    t = ctx.check_vector(t, nonzero=True)
    v = ctx.check_vector(v)
    n_one = quasi_metric(par, ctx, t).n_lower
    dn_one = quasi_metric_derivative(par, ctx, t)
    eps_sequence = np.asarray(eps_sequence, dtype=float)

    tensor_err = np.empty_like(eps_sequence)
    deriv_err = np.empty_like(eps_sequence)
    a1_vals = np.empty_like(eps_sequence)
    a2u_vals = np.empty_like(eps_sequence)
    for i, eps in enumerate(eps_sequence):
        t2 = t + eps * v
        tv = two_vector_metric(par, ctx, t, t2)
        tensor_err[i] = float(np.max(np.abs(tv.n_lower - n_one)))
        a1_vals[i] = tv.a1
        a2u_vals[i] = tv.a2 / tv.pair.u
        step = eps / 1000.0
        j1 = numdiff.jacobian(lambda x: two_vector_metric(par, ctx, x, t2).n_lower, t, scale=step)
        j2 = numdiff.jacobian(lambda y: two_vector_metric(par, ctx, t, y).n_lower, t2, scale=step)
        deriv_err[i] = float(np.max(np.abs(j1 + j2 - dn_one)))
    return CoincidenceReport(
        eps=eps_sequence,
        tensor_error=tensor_err,
        derivative_error=deriv_err,
        a1=a1_vals,
        a2_over_u=a2u_vals,
        a1_limit=1.0 - 1.0 / par.h**2,
    )


@dataclass(frozen=True)
class CovectorPair:
    """Covariant counterparts T1 = n(t1,t2) t2 and T2 = t1 n(t1,t2).

    D1, D2 are the transverse companions built from the T products and
    f_scale = -sqrt((T1T1)(T2T2)-(T1T2)^2) / sqrt((t1t1)(t2t2)-(t1t2)^2).
    """

    T1: np.ndarray
    T2: np.ndarray
    D1: np.ndarray
    D2: np.ndarray
    f_scale: float


def _co_gram(ctx, big_t1, big_t2):
    """Products of a covector pair with the cancellation-free Gram root."""
    tt11 = ctx.codot(big_t1, big_t1)
    tt22 = ctx.codot(big_t2, big_t2)
    tt12 = ctx.codot(big_t1, big_t2)
    t2p = big_t2 - (tt12 / tt11) * big_t1
    t1p = big_t1 - (tt12 / tt22) * big_t2
    cap_u = (tt11 * tt22 * ctx.codot(t2p, t2p) * ctx.codot(t1p, t1p)) ** 0.25
    return tt11, tt22, tt12, cap_u


def co_orientation(par: GParameter, alpha: float) -> float:
    """Sign of (2/h)(t1t2) sin cos - (cos^2 - sin^2/h^2) u, from alpha alone.

    The covariant-side closed forms (inversion, implicit angle equation)
    are printed for the regime where this is +1; it flips once the angle
    h*alpha - 2*atan2(sin(alpha)/h, cos(alpha)) of the co-pair wraps past
    -pi, which happens for large alpha at large |g|.
    """
    phi1 = math.atan2(math.sin(alpha) / par.h, math.cos(alpha))
    s = math.sin(par.h * alpha - 2.0 * phi1)
    return -1.0 if s > 0.0 else 1.0


def covector_pair(par: GParameter, ctx: MetricContext, t1, t2) -> CovectorPair:
    """Closed forms of the co-vectors and their companions."""
    inv = pair_invariants(par, ctx, t1, t2)
    s1, s2, ca, sa = _pair_scalars(inv)
    t1l = ctx.lower(ctx.check_vector(t1))
    t2l = ctx.lower(ctx.check_vector(t2))
    big_t1 = (s2 / s1) * (ca * t1l + (sa / par.h) * ctx.lower(inv.d1))
    big_t2 = (s1 / s2) * (ca * t2l + (sa / par.h) * ctx.lower(inv.d2))
    tt11, tt22, tt12, cap_u = _co_gram(ctx, big_t1, big_t2)
    if cap_u <= 1e-12 * math.sqrt(tt11 * tt22):
        raise CollinearError("co-vectors of the pair are collinear")
    big_d1 = (tt11 * big_t2 - tt12 * big_t1) / cap_u
    big_d2 = (tt22 * big_t1 - tt12 * big_t2) / cap_u
    # direct form of the inversion denominator scale; equals
    # -co_orientation * cap_u / u
    f_scale = ca * ca - sa * sa / par.h**2 - 2.0 * sa * ca * inv.dot12 / (par.h * inv.u)
    return CovectorPair(T1=big_t1, T2=big_t2, D1=big_d1, D2=big_d2, f_scale=f_scale)


def invert_covectors(par: GParameter, ctx: MetricContext, T1, T2, alpha: float):
    """Recover (t1, t2) from the co-vector pair and the angle alpha."""
    big_t1 = ctx.check_vector(T1, nonzero=True)
    big_t2 = ctx.check_vector(T2, nonzero=True)
    tt11, tt22, tt12, cap_u = _co_gram(ctx, big_t1, big_t2)
    if cap_u <= 1e-12 * math.sqrt(tt11 * tt22):
        raise CollinearError("co-vector pair is collinear")
    if not 0.0 < alpha < math.pi:
        raise NumericalDomainError("inversion needs 0 < alpha < pi")
    big_d1 = (tt11 * big_t2 - tt12 * big_t1) / cap_u
    big_d2 = (tt22 * big_t1 - tt12 * big_t2) / cap_u
    ca = math.cos(alpha)
    sa = math.sin(alpha)
    eps = co_orientation(par, alpha)
    den = ca * ca + sa * sa / par.h**2
    t1_low = math.sqrt(tt22 / tt11) * (ca * big_t1 + (sa / par.h) * eps * big_d1) / den
    t2_low = math.sqrt(tt11 / tt22) * (ca * big_t2 + (sa / par.h) * eps * big_d2) / den
    return ctx.raise_(t1_low), ctx.raise_(t2_low)


def _co_angle_sides(par, tt11, tt22, tt12, cap_u, alpha):
    ca = math.cos(alpha)
    sa = math.sin(alpha)
    cap_u = co_orientation(par, alpha) * cap_u
    den = (ca * ca + sa * sa / par.h**2) * math.sqrt(tt11 * tt22)
    cos_side = ((ca * ca - sa * sa / par.h**2) * tt12 + (2.0 / par.h) * sa * ca * cap_u) / den
    sin_side = ((2.0 / par.h) * tt12 * sa * ca - (ca * ca - sa * sa / par.h**2) * cap_u) / den
    return cos_side, sin_side


def solve_co_angle(par: GParameter, ctx: MetricContext, T1, T2) -> float:
    """Solve the implicit co-angle equation for alpha in (0, pi/h).

    The cosine equation alone admits spurious roots, so the solver works
    with the matched (cos, sin) pair: it brackets the zero of
    h*alpha - atan2(sin_side, cos_side) and polishes with Brent.
    """
    big_t1 = ctx.check_vector(T1, nonzero=True)
    big_t2 = ctx.check_vector(T2, nonzero=True)
    tt11, tt22, tt12, cap_u = _co_gram(ctx, big_t1, big_t2)
    if cap_u <= 1e-12 * math.sqrt(tt11 * tt22):
        raise CollinearError("co-vector pair is collinear")

    def wfun(alpha):
        cos_side, sin_side = _co_angle_sides(par, tt11, tt22, tt12, cap_u, alpha)
        return par.h * alpha - math.atan2(sin_side, cos_side)

    def cos_residual(alpha):
        cos_side, _ = _co_angle_sides(par, tt11, tt22, tt12, cap_u, alpha)
        return abs(math.cos(par.h * alpha) - cos_side)

    lo, hi = 1e-12, math.pi / par.h - 1e-12
    grid = np.linspace(lo, hi, 4001)
    vals = np.array([wfun(a) for a in grid])
    roots = []
    for i in range(len(grid) - 1):
        if vals[i] == 0.0:
            root = grid[i]
        elif vals[i] * vals[i + 1] < 0.0 and abs(vals[i + 1] - vals[i]) < math.pi:
            root = brentq(wfun, grid[i], grid[i + 1], xtol=1e-15, rtol=8.9e-16)
        else:
            continue
        res = cos_residual(root)
        if res < 1e-10:
            roots.append((root, res))
    if not roots:
        raise NoRootError("implicit co-angle equation has no admissible root in (0, pi/h)")
    # the co-pair determines the primal pair only up to a two-fold regime
    # ambiguity; return the main-regime representative when it exists
    main = [r for r in roots if co_orientation(par, r[0]) > 0.0]
    pool = main if main else roots
    return float(min(pool, key=lambda r: r[1])[0])


def _euclid_angle(ctx, x, y) -> float:
    arg = ctx.dot(x, y) / (ctx.s_norm(x) * ctx.s_norm(y))
    return math.acos(min(max(arg, -1.0), 1.0))


def oplus_first_order(par: GParameter, ctx: MetricContext, t1, t2) -> np.ndarray:
    """First-order sum vector of the parallelogram law.

    t1 (+) t2 ~ t1 + t2 + (1/h - 1)(m(t1,t2) t1 + m(t2,t1) t2), exact at
    g = 0; the defining-equation residuals are O(k^2) in k = 1/h - 1.
    """
    inv = pair_invariants(par, ctx, t1, t2)
    if math.cos(inv.alpha) <= 0.0:
        raise ObtuseInputError("parallelogram law assumes an acute pair")
    t1 = ctx.check_vector(t1)
    t2 = ctx.check_vector(t2)
    total = t1 + t2
    th1 = _euclid_angle(ctx, t1, total)
    th2 = _euclid_angle(ctx, t2, total)
    m12 = (inv.dot12 * th1 - inv.dot22 * th2) / inv.u
    m21 = (inv.dot12 * th2 - inv.dot11 * th1) / inv.u
    k = 1.0 / par.h - 1.0
    return total + k * (m12 * t1 + m21 * t2)


def ominus_first_order(par: GParameter, ctx: MetricContext, t1, t3) -> np.ndarray:
    """First-order difference vector t3 (-) t1, inverse of the sum to O(k^2)."""
    t1 = ctx.check_vector(t1, nonzero=True)
    t3 = ctx.check_vector(t3, nonzero=True)
    v = t3 - t1
    if not np.any(v):
        raise ZeroVectorError("difference of coincident vectors")
    dot11 = ctx.dot(t1, t1)
    dot33 = ctx.dot(t3, t3)
    dot13 = ctx.dot(t1, t3)
    u2 = dot11 * dot33 - dot13 * dot13
    u = math.sqrt(max(u2, 0.0))
    if u <= 1e-12 * math.sqrt(dot11 * dot33):
        raise CollinearError("difference undefined for a collinear configuration")
    ang_a = _euclid_angle(ctx, t1, t3)
    ang_b = _euclid_angle(ctx, v, t3)
    vt1 = ctx.dot(v, t1)
    vv = ctx.dot(v, v)
    s_vec = ((dot11 * ang_a - vt1 * ang_b) * v + (vv * ang_b - vt1 * ang_a) * t1) / u
    k = 1.0 / par.h - 1.0
    return v + k * s_vec


def parallelogram_residuals(par: GParameter, ctx: MetricContext, t1, t2, t3):
    """Residuals of the two defining side-length equations of the tetragon."""
    t1 = ctx.check_vector(t1, nonzero=True)
    t2 = ctx.check_vector(t2, nonzero=True)
    t3 = ctx.check_vector(t3, nonzero=True)
    s1 = ctx.s_norm(t1)
    s2 = ctx.s_norm(t2)
    s3 = ctx.s_norm(t3)
    a13 = _euclid_angle(ctx, t1, t3) / par.h
    a23 = _euclid_angle(ctx, t2, t3) / par.h
    r1 = s3 - (s2 * s2 - s1 * s1) / s3 - 2.0 * s1 * math.cos(a13)
    r2 = s3 - (s1 * s1 - s2 * s2) / s3 - 2.0 * s2 * math.cos(a23)
    return r1, r2


def parallelogram_refine(
    par: GParameter,
    ctx: MetricContext,
    t1,
    t2,
    tol: float = 1e-12,
    max_iter: int = 200,
) -> np.ndarray:
    """Solve the parallelogram equations exactly (numerically) for t3.

    The sum vector lies in span{t1, t2}; writing t3 = rho * (direction at
    deformed angle a13 from t1) reduces the two equations to one scalar
    equation in rho, since planar euclidean angles are additive:
    h*(arccos c1(rho) + arccos c2(rho)) = euclidean angle(t1, t2), where
    c1, c2 are the law-of-cosines expressions for cos(a13), cos(a23).
    Seeded and bracketed; first-order sum agreement is O(k^2).
    """
    inv = pair_invariants(par, ctx, t1, t2)
    if math.cos(inv.alpha) <= 0.0:
        raise ObtuseInputError("parallelogram law assumes an acute pair")
    t1 = ctx.check_vector(t1)
    t2 = ctx.check_vector(t2)
    if par.g == 0.0:
        return t1 + t2

    s1 = math.sqrt(inv.dot11)
    s2 = math.sqrt(inv.dot22)
    theta12 = _euclid_angle(ctx, t1, t2)

    def c1(rho):
        return min(max((s1 * s1 + rho * rho - s2 * s2) / (2.0 * s1 * rho), -1.0), 1.0)

    def c2(rho):
        return min(max((s2 * s2 + rho * rho - s1 * s1) / (2.0 * s2 * rho), -1.0), 1.0)

    def gap(rho):
        return par.h * (math.acos(c1(rho)) + math.acos(c2(rho))) - theta12

    lo = abs(s1 - s2) + 1e-14 * (s1 + s2)
    hi = (s1 + s2) * (1.0 - 1e-15)
    if lo >= hi or gap(lo) * gap(hi) > 0.0:
        raise MaxIterationsError("failed to bracket the sum-vector radius")
    try:
        rho = brentq(gap, lo, hi, xtol=1e-15, rtol=8.9e-16, maxiter=max_iter)
    except (ValueError, RuntimeError) as exc:
        raise MaxIterationsError("sum-vector radius iteration did not converge") from exc

    theta13 = par.h * math.acos(c1(rho))
    e1 = t1 / s1
    e2 = inv.d1 / s1  # unit, euclid-orthogonal to t1, towards t2
    t3 = rho * (math.cos(theta13) * e1 + math.sin(theta13) * e2)
    r1, r2 = parallelogram_residuals(par, ctx, t1, t2, t3)
    scale = max(s1, s2)
    if max(abs(r1), abs(r2)) > max(tol, 1e-12) * max(scale, 1.0):
        raise MaxIterationsError("refined sum vector misses the residual target")
    return t3
