"""Pullback of the two-vector machinery to the original coordinates:
scalar product of two vectors, deformed angle, two-vector tensor,
geodesics, and the angles a vector makes with the axis and the plane.

Everything here is the image-space construction transported through the
quasi-euclidean map, with closed forms in the scalars A, B, L, K of
:mod:`finsleroid.core`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import numdiff
from .core import GParameter, MetricContext, scalar_bundle
from .errors import CollinearError, NumericalDomainError
from .geodesics import GeodesicChord, _clamped_arccos, solve_chord, geodesic_point
from .quasimap import mu_map, sigma_map
from .tensors import gradient_covector

__all__ = [
    "FinslerPairProduct",
    "finsler_product",
    "finsler_angle",
    "m_vector",
    "s_vector",
    "finsler_two_vector_tensor",
    "product_gradients",
    "finsler_chord",
    "finsler_geodesic",
    "axis_angles",
]

_COLLINEAR_W = 1e-12


def _pair_core(par: GParameter, ctx: MetricContext, R, S):
    R = ctx.check_vector(R, nonzero=True)
    S = ctx.check_vector(S, nonzero=True)
    sb_r = scalar_bundle(par, ctx, R)
    sb_s = scalar_bundle(par, ctx, S)
    dot_bold = float(R[:-1] @ ctx.r_ab @ S[:-1])
    num = sb_r.A * sb_s.A + par.h**2 * dot_bold
    root_b = math.sqrt(sb_r.B * sb_s.B)
    if abs(num / root_b) > 1.0 + 1e-12:
        raise NumericalDomainError("angle cosine outside [-1, 1] beyond rounding slack")
    # W^2 = B(R)B(S) - num^2 loses half its digits near coincidence when
    # formed literally; expand with B = A^2 + h^2 q^2 and split off the
    # transverse unit-vector gap so every piece stays O(separation^2):
    #   W^2/h^2 = (A_R q_S - A_S q_R)^2
    #           + q_R q_S |bhat_R - bhat_S|^2/2 (2 A_R A_S + h^2(q_R q_S + X))
    cross = sb_r.A * sb_s.q - sb_s.A * sb_r.q
    w2 = cross * cross
    if sb_r.q > 0.0 and sb_s.q > 0.0:
        bgap = R[:-1] / sb_r.q - S[:-1] / sb_s.q
        delta = 0.5 * float(bgap @ ctx.r_ab @ bgap)
        w2 += (
            sb_r.q
            * sb_s.q
            * delta
            * (2.0 * sb_r.A * sb_s.A + par.h**2 * (sb_r.q * sb_s.q + dot_bold))
        )
    w = par.h * math.sqrt(max(w2, 0.0))
    alpha = math.atan2(w, num) / par.h
    return R, S, sb_r, sb_s, dot_bold, num, w, alpha


def finsler_angle(par: GParameter, ctx: MetricContext, R, S) -> float:
    """Deformed angle between two vectors in the original coordinates."""
    return _pair_core(par, ctx, R, S)[-1]


def m_vector(par: GParameter, ctx: MetricContext, R, S) -> np.ndarray:
    """The transverse covector M_p(g; R, S); satisfies M_p R^p = 0.

    Simplified components: M_N = q(R)^2 A(S) - (r R S) A(R) and
    M_a = r_ab(-Z R^b A(S) + S^b B(R) - (r R S)(q + g Z/2) R^b/q).
    The axis q(R) = 0 is a removable limit: M_a -> r_ab S^b B(R).
    """
    R, S, sb_r, sb_s, dot_bold, _, _, _ = _pair_core(par, ctx, R, S)
    out = np.empty(ctx.n)
    out[-1] = sb_r.q**2 * sb_s.A - dot_bold * sb_r.A
    if sb_r.q > 0.0:
        bold = (
            -R[-1] * R[:-1] * sb_s.A
            + S[:-1] * sb_r.B
            - dot_bold * (sb_r.q + 0.5 * par.g * R[-1]) * R[:-1] / sb_r.q
        )
    else:
        bold = S[:-1] * sb_r.B
    out[:-1] = ctx.r_ab @ bold
    return out


def s_vector(par: GParameter, ctx: MetricContext, R, S) -> np.ndarray:
    """s_p(g; R, S) = M_p K(R) / (W B(R)); annihilates R^p."""
    _, _, sb_r, sb_s, _, _, w, _ = _pair_core(par, ctx, R, S)
    if w <= _COLLINEAR_W * math.sqrt(sb_r.B * sb_s.B):
        raise CollinearError("s-vector undefined for image-collinear pairs")
    return m_vector(par, ctx, R, S) * sb_r.K / (w * sb_r.B)


def _s_matrix(par: GParameter, ctx: MetricContext, R, S) -> np.ndarray:
    """s_pq = K(S) d s_p(R, S)/dS^q by central differences.

    The s-vector turns over the pair-separation scale near coincidence,
    so the step shrinks with sin(h alpha) and a fourth-order stencil
    keeps the truncation error below the separation itself.
    """
    _, _, sb_r, sb_s, _, num, w, _ = _pair_core(par, ctx, R, S)
    sin_sep = w / math.sqrt(sb_r.B * sb_s.B)
    scale = min(numdiff.DEFAULT_SCALE, max(sin_sep / 50.0, 1e-9))
    jac = numdiff.jacobian4(
        lambda y: s_vector(par, ctx, R, y), np.asarray(S, dtype=float), scale=scale
    )
    return sb_s.K * jac


@dataclass(frozen=True)
class FinslerPairProduct:
    """Scalar product of a vector pair with its building blocks.

    ``product`` = K(R) K(S) cos(alpha); W = sqrt(B(R)B(S) - num^2) where
    num is the arccos numerator; s_r and g_lower are None for
    image-collinear pairs (W = 0), where only the product survives.
    """

    product: float
    alpha: float
    w: float
    m_r: np.ndarray
    s_r: np.ndarray | None
    g_lower: np.ndarray | None


def finsler_product(par: GParameter, ctx: MetricContext, R, S) -> FinslerPairProduct:
    """Scalar product <R, S>; equals K^2 at S = R and the euclidean
    product at g = 0."""
    R, S, sb_r, sb_s, dot_bold, num, w, alpha = _pair_core(par, ctx, R, S)
    product = sb_r.K * sb_s.K * math.cos(alpha)
    m_r = m_vector(par, ctx, R, S)
    if w <= _COLLINEAR_W * math.sqrt(sb_r.B * sb_s.B):
        return FinslerPairProduct(product=product, alpha=alpha, w=w, m_r=m_r, s_r=None, g_lower=None)
    s_r = m_r * sb_r.K / (w * sb_r.B)
    return FinslerPairProduct(
        product=product,
        alpha=alpha,
        w=w,
        m_r=m_r,
        s_r=s_r,
        g_lower=finsler_two_vector_tensor(par, ctx, R, S),
    )


def finsler_two_vector_tensor(par: GParameter, ctx: MetricContext, R, S) -> np.ndarray:
    """G_pq(g; R, S), the mixed second derivative of the scalar product.

    Closed form up to s_pq, which is a finite-difference derivative of
    the closed-form s-vector.  Reduces to the one-vector metric tensor in
    the coincidence limit and to the Jacobian pullback of the two-vector
    image tensor.
    """
    R, S, sb_r, sb_s, _, _, w, alpha = _pair_core(par, ctx, R, S)
    if w <= _COLLINEAR_W * math.sqrt(sb_r.B * sb_s.B):
        raise CollinearError("two-vector tensor needs image-independent vectors")
    r_low = gradient_covector(par, ctx, R)
    s_low = gradient_covector(par, ctx, S)
    s_rs = s_vector(par, ctx, R, S)
    s_sr = s_vector(par, ctx, S, R)
    s_pq = _s_matrix(par, ctx, R, S)
    ca = math.cos(alpha)
    sa = math.sin(alpha)
    term_c = np.outer(r_low, s_low) / (sb_r.K * sb_s.K) - par.h**2 * np.outer(s_rs, s_sr)
    term_s = (
        np.outer(r_low / sb_r.K, s_sr)
        + np.outer(s_rs, s_low / sb_s.K)
        + s_pq
    )
    return term_c * ca + par.h * term_s * sa


def product_gradients(par: GParameter, ctx: MetricContext, R, S):
    """(d<R,S>/dR^p, d<R,S>/dS^q) in closed form."""
    R, S, sb_r, sb_s, _, _, w, alpha = _pair_core(par, ctx, R, S)
    if w <= _COLLINEAR_W * math.sqrt(sb_r.B * sb_s.B):
        raise CollinearError("gradients need image-independent vectors")
    product = sb_r.K * sb_s.K * math.cos(alpha)
    sa = math.sin(alpha)
    d_r = gradient_covector(par, ctx, R) * product / sb_r.K**2 + par.h * sb_s.K * s_vector(
        par, ctx, R, S
    ) * sa
    d_s = gradient_covector(par, ctx, S) * product / sb_s.K**2 + par.h * sb_r.K * s_vector(
        par, ctx, S, R
    ) * sa
    return d_r, d_s


def finsler_chord(par: GParameter, ctx: MetricContext, R1, R2) -> GeodesicChord:
    """Chord of the image-space geodesic joining sigma(R1) to sigma(R2)."""
    return solve_chord(par, ctx, sigma_map(par, ctx, R1), sigma_map(par, ctx, R2))


def finsler_geodesic(par: GParameter, ctx: MetricContext, R1, R2, s):
    """Geodesic through the pullback: R(s) = mu(t(s)) over the image chord.

    Endpoints are reproduced at s = 0 and s = Delta s; the arc length of
    the curve in the direction-dependent metric equals Delta s.
    """
    chord = finsler_chord(par, ctx, R1, R2)
    pts = geodesic_point(chord, s)
    if pts.ndim == 1:
        return mu_map(par, ctx, pts)
    return np.array([mu_map(par, ctx, t) for t in pts])


def axis_angles(par: GParameter, ctx: MetricContext, R):
    """Angles of R with the axis, (1/h) arccos(A/sqrt(B)), and with the
    non-axis plane, (1/h) arccos(L/sqrt(B))."""
    R = ctx.check_vector(R, nonzero=True)
    sb = scalar_bundle(par, ctx, R)
    root_b = math.sqrt(sb.B)
    return (
        _clamped_arccos(sb.A / root_b) / par.h,
        _clamped_arccos(sb.L / root_b) / par.h,
    )
