"""Where the sharp constants come from.

r0 is both the root of a transcendental equation and the maximizer of h;
theta0 is both the argmax of the boundary argument of q and a root of
varsigma' - varsigma^2 - 1.  This script computes each constant both ways.
"""
import numpy as np

from univalent import constants as K

r0 = K.solve_r0()
print(f"r0 (root)        = {r0:.14f}")
print(f"r0 (argmax of h) = {K.r0_by_maximization():.14f}")
print(f"h(r0)            = {K.h(r0):.14f}   1/h(r0) = {1 / K.h(r0):.14f}")

# h rises from 1 at r = 0, peaks at r0 and falls off again
for r in (1e-6, 0.1, r0, 0.5, 0.9, 0.999):
    print(f"    h({r:<8.6g}) = {K.h(r):.10f}")

theta0, beta0, alpha0, d = K.solve_theta0_beta0_alpha0(return_details=True)
print(f"\npole of varsigma at theta = {d['pole_theta']:.10f}")
print(f"theta0 (argmax)  = {theta0:.12f}")
print(f"theta0 (root)    = {d['theta0_root']:.12f}")
print(f"beta0 = {beta0:.12f}, alpha0 = 1/beta0 = {alpha0:.12f}")

# the boundary argument of q creeps back to 0 only logarithmically as theta -> 0
for t in (1e-2, 1e-4, 1e-16, 1e-100):
    print(f"    arg q(e^(i {t:g})) = {K.arg_q_boundary(t):.6f}")

# g has non-positive coefficients, which is what reduces sup |g| to the real axis
c = K.g_series(256).coeffs.real
print(f"\ng_1 = {c[1]:.15f}, g_2 = {c[2]:.15f}, max g_n = {c.max():.3e}")

ok, worst, arg = K.sector_containment_check("catalog:q-dominant", beta0 + 1e-3)
print(f"q(D) inside the sector |arg w| < (beta0 + 1e-3) pi/2: {ok}; "
      f"largest |arg q| = {arg:.6f} at angle {np.angle(worst):.4f}")
