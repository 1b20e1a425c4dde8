#!/usr/bin/env python3
"""Walk through the scalar layer: the deformed norm K, its building
blocks, and the constant-curvature indicatrix that replaces the sphere.

The space deforms N-dimensional euclidean geometry with one parameter
g in (-2, 2).  Everything is driven by q (norm of the non-axis part),
Z (the axis component), the quadratic form B = Z^2 + g q Z + q^2, and
an angle-like function Phi; the norm is K = sqrt(B) exp(G Phi / 2).
"""

import math

import numpy as np

import finsleroid as fl

par = fl.make_parameter(1.0)
ctx = fl.MetricContext(3)

print(f"g = {par.g},  h = sqrt(1 - g^2/4) = {par.h:.12f},  G = g/h = {par.big_g:.12f}")
print(f"root split: g+ = {par.g_plus:.12f}, g- = {par.g_minus:.12f} "
      f"(sum {par.g_plus + par.g_minus:+.1e} = g, squares sum to "
      f"{par.g_plus**2 + par.g_minus**2:.12f})")
print()

R = np.array([0.6, -0.3, 0.9])
sb = fl.scalar_bundle(par, ctx, R)
print(f"scalar bundle at R = {R}:")
print(f"  q = {sb.q:.12f}   B = {sb.B:.12f}   Phi = {sb.phi:.12f}")
print(f"  A = {sb.A:.12f}   L = {sb.L:.12f}   J = {sb.J:.12f}")
print(f"  K = {sb.K:.12f}  (euclidean length would be {ctx.s_norm(R):.12f})")
print(f"  identity A^2 + h^2 q^2 - B = {sb.A**2 + par.h**2*sb.q**2 - sb.B:+.2e}")
print()

# The norm is direction dependent: walk the upper and lower axis.
up = fl.kfun(par, ctx, np.array([0.0, 0.0, 1.0]))
down = fl.kfun(par, ctx, np.array([0.0, 0.0, -1.0]))
side = fl.kfun(par, ctx, np.array([1.0, 0.0, 0.0]))
print("direction dependence of K on unit euclidean vectors:")
print(f"  +axis {up:.6f}   -axis {down:.6f}   plane {side:.6f}")
print("  (at g = 0 all three would be 1)")
print()

# Indicatrix: the level set K = 1.  Its radius profile against the
# polar angle is exp(-G Phi / 2) in the 2-plane (q, Z).
print("indicatrix radius r(theta) with direction (sin t, 0, cos t):")
for deg in (0, 45, 90, 135, 180):
    t = math.radians(deg)
    d = np.array([math.sin(t), 0.0, math.cos(t)])
    r = 1.0 / fl.kfun(par, ctx, d)
    print(f"  theta = {deg:3d} deg   r = {r:.6f}")
print()
print(f"the indicatrix is a constant-curvature surface with curvature "
      f"h^2 = {par.h**2:.6f} (unit sphere has 1)")

# Generating function on the chart w = q/Z: K = |Z| V(w).
print()
w = 0.75
print(f"chart check at w = {w}: V(w) = {fl.generating_v(par, w):.12f}, "
      f"K(q={w}, Z=1) = {fl.kfun(par, ctx, np.array([w, 0.0, 1.0])):.12f}")
