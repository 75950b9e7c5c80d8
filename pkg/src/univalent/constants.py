"""Sharp constants for J_alpha on the Noshiro-Warschawski class.

r0 maximizes

    h(r) = -(1+r)^2 / (r + 2 log(1-r)) - (1-r^2)/r

on (0, 1) and is the root of the transcendental equation in ``equation2``.
theta0 maximizes the boundary argument of the dominant
q(z) = (-z - 2 log(1-z))/z, and beta0 = (2/pi) arg q(e^{i theta0}), alpha0 = 1/beta0.
Each constant is obtained twice, by root finding and by direct maximization,
and the two routes are compared.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np
from scipy import optimize

from .errors import BracketFailure, DomainError, PoleProximity
from .funclang import as_function, eval_series, parse
from .series import DEFAULT_ORDER, PowerSeries

REFERENCE = {
    "r0": 0.329423,
    "h_r0": 1.055681,
    "inv_h_r0": 0.947255,
    "theta0": 1.141377,
    "beta0": 0.580356,
    "alpha0": 1.723078,
}

BISECT_XTOL = 1e-13
FD_STEP = 1e-7


def h(r):
    r = np.asarray(r, dtype=float)
    if np.any((r <= 0) | (r >= 1)):
        raise DomainError("h needs 0 < r < 1")
    out = -(1 + r) ** 2 / (r + 2 * np.log1p(-r)) - (1 - r * r) / r
    return float(out) if out.ndim == 0 else out


def _h_complex(r):
    # same formula on complex input, for complex-step differentiation
    return -(1 + r) ** 2 / (r + 2 * np.log(1 - r)) - (1 - r * r) / r


def h_prime(r):
    """h'(r) by complex-step differentiation (no subtractive cancellation)."""
    step = 1e-30
    return float(np.imag(_h_complex(complex(r, step))) / step)


def equation2(r):
    L = np.log1p(-np.asarray(r, dtype=float))
    return 2 * (r * r + 1) * (r - 1) * L ** 2 - 2 * r * (r - 1) ** 2 * L + r ** 3 * (r + 3)


def _newton_polish(F, x, lo, hi, iters=10):
    for _ in range(iters):
        d = (F(x + FD_STEP) - F(x - FD_STEP)) / (2 * FD_STEP)
        if d == 0 or not np.isfinite(d):
            break
        x_new = x - F(x) / d
        if not lo <= x_new <= hi or abs(F(x_new)) >= abs(F(x)):
            break
        x = x_new
    return x


def _bracket_root(F, lo, hi, n=4000):
    xs = np.linspace(lo, hi, n)
    vals = np.array([F(x) for x in xs])
    idx = np.nonzero(np.sign(vals[:-1]) * np.sign(vals[1:]) < 0)[0]
    if idx.size == 0:
        raise BracketFailure(f"no sign change on [{lo}, {hi}]")
    return xs[idx[0]], xs[idx[0] + 1]


def solve_r0(tol=BISECT_XTOL):
    a, b = _bracket_root(equation2, 1e-3, 0.999)
    x = optimize.bisect(equation2, a, b, xtol=tol)
    return _newton_polish(equation2, x, a, b)


def r0_by_maximization():
    """Argmax of h: golden section on h, then the zero of h' inside the final bracket."""
    res = optimize.minimize_scalar(lambda r: -h(r), bounds=(1e-3, 0.999), method="bounded",
                                   options={"xatol": 1e-10})
    lo, hi = res.x - 1e-4, res.x + 1e-4
    if h_prime(lo) * h_prime(hi) > 0:
        return float(res.x)
    return optimize.bisect(h_prime, lo, hi, xtol=BISECT_XTOL)


# ---------------------------------------------------------------- varsigma and arg q

def _varsigma_den(theta):
    return np.cos(theta) + 2 * np.log(2 * np.sin(theta / 2))


def varsigma(theta):
    den = _varsigma_den(theta)
    if np.any(np.abs(den) < 1e-12):
        raise PoleProximity(f"varsigma denominator vanishes near theta = {theta}")
    return (np.sin(theta) + theta - np.pi) / den


def pole_theta():
    """The zero of cos(theta) + 2 log(2 sin(theta/2)) in (0, pi/2)."""
    return optimize.bisect(_varsigma_den, 0.1, np.pi / 2, xtol=BISECT_XTOL)


def arg_q_boundary(theta):
    """arg q(e^{i theta}) from the two-argument angle of the numerator, in (-pi, pi]."""
    theta = np.asarray(theta, dtype=float)
    w = -np.exp(1j * theta) - 2 * np.log(2 * np.sin(theta / 2)) - 1j * (theta - np.pi)
    a = np.angle(w) - theta
    a = np.angle(np.exp(1j * a))  # wrap to (-pi, pi]
    return float(a) if a.ndim == 0 else a


def _theta_root_condition(theta):
    d = (varsigma(theta + FD_STEP) - varsigma(theta - FD_STEP)) / (2 * FD_STEP)
    return d - varsigma(theta) ** 2 - 1


def solve_theta0_beta0_alpha0(n_scan=100_000, return_details=False, tol=1e-12):
    p = pole_theta()
    lo = p + 1e-6
    grid = np.linspace(lo, np.pi, n_scan)
    vals = arg_q_boundary(grid)
    k = int(np.argmax(vals))
    a, b = grid[max(k - 1, 0)], grid[min(k + 1, n_scan - 1)]
    res = optimize.minimize_scalar(lambda t: -arg_q_boundary(t), bounds=(a, b), method="bounded",
                                   options={"xatol": tol})
    theta0 = float(res.x)
    beta0 = 2 / np.pi * arg_q_boundary(theta0)
    alpha0 = 1 / beta0
    if not return_details:
        return theta0, beta0, alpha0
    # independent characterization: varsigma' - varsigma^2 - 1 = 0 right of the pole
    ra, rb = _bracket_root(_theta_root_condition, max(lo, theta0 - 0.2), min(np.pi - 1e-3, theta0 + 0.2), 400)
    theta_root = optimize.bisect(_theta_root_condition, ra, rb, xtol=1e-12)
    return theta0, beta0, alpha0, {
        "pole_theta": p,
        "theta0_root": theta_root,
        "root_residual_at_theta0": float(_theta_root_condition(theta0)),
        "max_location": "(0, pi/2)" if theta0 < np.pi / 2 else "[pi/2, pi)",
    }


# ---------------------------------------------------------------- checks


def sector_containment_check(f, beta, n_samples=200_000, r_max=0.9999):
    """True iff |arg f(z)| < beta*pi/2 on a polar grid; also returns the worst point."""
    if not 0 < beta <= 2:
        raise ValueError("beta must lie in (0, 2]")
    f = as_function(f)
    n_r = max(int(np.sqrt(n_samples / 2)), 2)
    n_t = max(n_samples // n_r, 1)
    r = r_max * np.sin(0.5 * np.pi * np.arange(1, n_r + 1) / n_r)
    th = 2 * np.pi * np.arange(n_t) / n_t
    z = (r[:, None] * np.exp(1j * th[None, :])).ravel()
    vals = np.broadcast_to(np.asarray(f.value(z)), z.shape)
    args = np.abs(np.angle(vals))
    if not np.all(np.isfinite(vals)):
        raise DomainError(f"{f.label} is not finite on the sample grid")
    k = int(np.argmax(args))
    return bool(args[k] < beta * np.pi / 2), complex(z[k]), float(args[k])


G_FORMULA = "1+((1+z)/(1-z))*(z/(z+2*log(1-z)))"


def g_series(order=DEFAULT_ORDER) -> PowerSeries:
    return eval_series(parse(G_FORMULA), order)


# ---------------------------------------------------------------- report


@dataclass
class PaperConstants:
    r0: float
    h_r0: float
    inv_h_r0: float
    theta0: float
    beta0: float
    alpha0: float
    pole_theta: float

    def check(self):
        assert abs(self.inv_h_r0 * self.h_r0 - 1) < 1e-12
        assert abs(self.alpha0 * self.beta0 - 1) < 1e-10
        assert self.theta0 > self.pole_theta


def compute_constants(tol=BISECT_XTOL) -> PaperConstants:
    r0 = solve_r0(tol)
    hr = h(r0)
    theta0, beta0, alpha0 = solve_theta0_beta0_alpha0(tol=max(tol, 1e-12))
    return PaperConstants(r0, hr, 1 / hr, theta0, beta0, alpha0, pole_theta())


def constants_report(tol=BISECT_XTOL):
    """All constants, the reference six-decimal values, deviations and cross-checks."""
    c = compute_constants(tol)
    theta0, _, _, details = solve_theta0_beta0_alpha0(return_details=True, tol=max(tol, 1e-12))
    r0_max = r0_by_maximization()
    q_at = complex(as_function("catalog:q-dominant").value(np.exp(1j * c.theta0)))
    values = asdict(c)
    return {
        "constants": values,
        "reference": dict(REFERENCE),
        "deviation": {k: abs(values[k] - v) for k, v in REFERENCE.items()},
        "cross_checks": {
            "r0_root": c.r0,
            "r0_argmax": r0_max,
            "r0_difference": abs(c.r0 - r0_max),
            "theta0_argmax": theta0,
            "theta0_root": details["theta0_root"],
            "theta0_difference": abs(theta0 - details["theta0_root"]),
            "theta0_found_in": details["max_location"],
        },
        "alpha0_readings": {
            "one_over_beta0": c.alpha0,
            "pi_over_2q_literal": [(np.pi / (2 * q_at)).real, (np.pi / (2 * q_at)).imag],
        },
        "tolerance": tol,
    }
