"""Loewner chains for Re f' > 0, dilatation evaluators, and the explicit
quasiconformal extension of a lambda-spirallike function.

For f with Re{e^{-i lambda} z f'/f} > 0 the spiral flow w -> e^{e^{i lambda} t} w
expands f(D).  A point z outside the closed disk is sent to

    Phi(z) = f(e^{i theta})^2 / f(1/conj z),

where (t, theta), t >= 0, solve e^{e^{i lambda} t} f(1/conj z) = f(e^{i theta}):
the boundary point reached by flowing the reflected interior value outwards.
Equivalently Phi(z) = e^{e^{i lambda} t} f(e^{i theta}).
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DegenerateDenominator,
    DivergentP,
    ExtensionAborted,
    NewtonDivergence,
    NotSpirallike,
    PoleAtMinusOne,
)
from .funclang import as_function

# ---------------------------------------------------------------- chains for class R


def herglotz_of_chain_R(f, z, t):
    """p(z, t) for f_t = f + t z, i.e. 1/p = f'(z) + t."""
    d = as_function(f).derivative_jet(z).f1 + t
    if np.any(np.abs(d) < 1e-14):
        raise DivergentP(f"f'(z) + t vanishes at z = {z}, t = {t}")
    return 1 / d


@dataclass
class ChainR:
    f: object

    def __post_init__(self):
        self.f = as_function(self.f)

    def a1(self, t):
        return 1.0 + np.asarray(t, dtype=float)

    def herglotz(self, z, t):
        return herglotz_of_chain_R(self.f, z, t)

    def value(self, z, t):
        return self.f.value(z) + t * np.asarray(z)


def becker_dilatation(p):
    p = np.asarray(p, dtype=complex)
    den = np.abs(1 + p)
    if np.any(den < 1e-14):
        raise PoleAtMinusOne("p = -1")
    out = np.abs(1 - p) / den
    return float(out) if out.ndim == 0 else out


def betker_dilatation(p, q):
    """|(p - conj q)/(p + q)|; equals becker_dilatation(p) when q = 1."""
    p = np.asarray(p, dtype=complex)
    q = np.asarray(q, dtype=complex)
    den = np.abs(p + q)
    if np.any(den < 1e-14):
        raise DegenerateDenominator("p + q = 0")
    out = np.abs(p - np.conj(q)) / den
    return float(out) if out.ndim == 0 else out


# ---------------------------------------------------------------- spirallike functions


def spiral_quantity(f, lam, z):
    """e^{-i lambda} z f'(z)/f(z)."""
    j = as_function(f).jet(z)
    with np.errstate(all="ignore"):
        return np.exp(-1j * lam) * np.asarray(z) * j.f1 / j.f0


def spirallike_check(f, lam, n_r=50, n_theta=200, r_max=0.999):
    """(min Re of e^{-i lambda} z f'/f over a polar grid, where)."""
    r = r_max * np.arange(1, n_r + 1) / n_r
    th = 2 * np.pi * np.arange(n_theta) / n_theta
    z = (r[:, None] * np.exp(1j * th[None, :])).ravel()
    v = spiral_quantity(f, lam, z).real
    v = np.where(np.isfinite(v), v, -np.inf)
    k = int(np.argmin(v))
    return float(v[k]), complex(z[k])


def sector_exponent(f, lam, n=4096, r=1.0):
    """alpha_hat = (2/pi) max |arg(e^{-i lambda} z f'/f)| over boundary nodes."""
    th = 2 * np.pi * (np.arange(n) + 0.5) / n
    v = spiral_quantity(f, lam, r * np.exp(1j * th))
    v = v[np.isfinite(v)]
    return float(2 / np.pi * np.abs(np.angle(v)).max())


@dataclass
class SpirallikeChain:
    f: object
    lam: float = 0.0
    verify: bool = True

    def __post_init__(self):
        self.f = as_function(self.f)
        if not -np.pi / 2 < self.lam < np.pi / 2:
            raise ValueError("lambda must lie in (-pi/2, pi/2)")
        if self.verify:
            m, where = spirallike_check(self.f, self.lam)
            if not m > 0:
                raise NotSpirallike(f"{self.f.label}: Re(e^(-i lambda) z f'/f) = {m:.3g} at z = {where}")

    def value(self, z, t):
        return np.exp(np.exp(1j * self.lam) * t) * self.f.value(z)


class BoundaryTable:
    """f(e^{i theta}) on 4096 nodes with a continuous log and unwrapped lambda-argument.

    A(theta) = Im(e^{-i lambda} log f(e^{i theta})) increases with theta for a
    spirallike f and A(theta + 2 pi) = A(theta) + 2 pi cos(lambda).
    """

    def __init__(self, f, lam, n=4096):
        self.f, self.lam, self.n = f, lam, n
        self.theta = 2 * np.pi * (np.arange(n) + 0.5) / n
        z = np.exp(1j * self.theta)
        vals = f.value(z)
        # log f = i theta + log(f/z), the second continued around the circle
        lg = np.log(vals / z)
        lg = lg.real + 1j * np.unwrap(lg.imag)
        self.log = 1j * self.theta + lg
        self.A = (np.exp(-1j * lam) * self.log).imag
        self.period = 2 * np.pi * np.cos(lam)
        self.monotone = bool(np.all(np.diff(self.A) > 0))

    def log_at(self, theta):
        """Continuous log f(e^{i theta}) for theta in [0, 2 pi)."""
        z = np.exp(1j * theta)
        j = self.f.jet(z)
        principal = np.log(j.f0)
        # Im log(f/z) is periodic, so interpolate it and add theta back
        guess = np.interp(theta, self.theta, self.log.imag - self.theta, period=2 * np.pi) + theta
        k = np.rint((guess - principal.imag) / (2 * np.pi))
        return principal + 2j * np.pi * k, 1j * z * j.f1 / j.f0


@dataclass
class ExtensionPoint:
    phi: complex
    t: float
    theta: float
    ok: bool
    residual: float


def _solve_flow(table: BoundaryTable, zeta0, tol=1e-12, max_iter=30):
    """Vectorized Newton for (t, theta): log f(e^{i theta}) = zeta0 + 2 pi i m + e^{i lambda} t."""
    lam = table.lam
    e = np.exp(1j * lam)
    a = (np.exp(-1j * lam) * zeta0).imag
    # reduce the target into the table's range of A and record the winding
    shift = np.floor((a - table.A[0]) / table.period)
    a_red = a - shift * table.period
    k = np.searchsorted(table.A, a_red)
    th = np.empty(a.shape)
    inside = (k > 0) & (k < table.n)
    k_in = np.clip(k, 1, table.n - 1)
    A0, A1 = table.A[k_in - 1], table.A[k_in]
    t0, t1 = table.theta[k_in - 1], table.theta[k_in]
    with np.errstate(all="ignore"):
        th_lin = t0 + (a_red - A0) / (A1 - A0) * (t1 - t0)
    th[inside] = th_lin[inside]
    # wrap-around gap between the last and first node
    lo_gap = ~inside
    A_last, A_first = table.A[-1], table.A[0] + table.period
    a_gap = np.where(a_red < table.A[0], a_red + table.period, a_red)
    frac = (a_gap - A_last) / (A_first - A_last)
    th_gap = table.theta[-1] + frac * (table.theta[0] + 2 * np.pi - table.theta[-1])
    th[lo_gap] = np.mod(th_gap[lo_gap], 2 * np.pi)
    # winding m so that zeta0 + 2 pi i m matches the branch of the table's log
    L, dL = table.log_at(th)
    zeta = zeta0 + 2j * np.pi * np.rint(((np.exp(-1j * lam) * (L - zeta0)).imag) / table.period)
    t = (np.exp(-1j * lam) * (L - zeta)).real
    for _ in range(max_iter):
        L, dL = table.log_at(np.mod(th, 2 * np.pi))
        rho = L - zeta - e * t
        if np.all(np.abs(rho) <= tol * np.maximum(1, np.abs(zeta))):
            break
        # J = [[-Re e, Re dL], [-Im e, Im dL]] acting on (dt, dtheta)
        det = -e.real * dL.imag + e.imag * dL.real
        with np.errstate(all="ignore"):
            dt = (dL.imag * rho.real - dL.real * rho.imag) / det
            dth = (e.imag * rho.real - e.real * rho.imag) / det
        step_ok = np.isfinite(dt) & np.isfinite(dth)
        t = np.where(step_ok, t - dt, t)
        th = np.where(step_ok, th - np.clip(dth, -0.5, 0.5), th)
    L, _ = table.log_at(np.mod(th, 2 * np.pi))
    rho = np.abs(L - zeta - e * t)
    return t, np.mod(th, 2 * np.pi), rho


def spirallike_extension(f, lam, z_exterior, table=None, check=True, tol=1e-10):
    """Phi at |z| > 1 with the flow coordinates; vectorized over ``z_exterior``."""
    f = as_function(f)
    if check:
        SpirallikeChain(f, lam)
    table = table or BoundaryTable(f, lam)
    z = np.asarray(z_exterior, dtype=complex)
    if np.any(np.abs(z) <= 1):
        raise ValueError("spirallike_extension needs |z| > 1")
    zi = 1 / np.conj(z)
    w0 = f.value(zi.ravel())
    zeta0 = np.log(w0)
    t, th, res = _solve_flow(table, zeta0)
    fb = f.value(np.exp(1j * th))
    with np.errstate(all="ignore"):
        phi = fb * fb / w0
    ok = np.isfinite(phi) & (res <= tol * np.maximum(1, np.abs(zeta0))) & (t >= -1e-9)
    out = (phi.reshape(z.shape), t.reshape(z.shape), th.reshape(z.shape), ok.reshape(z.shape),
           res.reshape(z.shape))
    if z.ndim == 0:
        if not ok.item():
            raise NewtonDivergence(f"no converged flow coordinates at z = {complex(z)}", float(res.item()))
        return ExtensionPoint(complex(out[0]), float(out[1]), float(out[2]), True, float(out[4]))
    return out


# ---------------------------------------------------------------- grids


@dataclass
class ExtensionOptions:
    r_out_max: float = 3.0
    n_r: int = 50
    n_theta: int = 180
    fd_step: float = 1e-4
    max_failure_fraction: float = 0.01


@dataclass
class ExtensionGrid:
    z: np.ndarray
    phi: np.ndarray
    mu_abs: np.ndarray
    t: np.ndarray
    theta: np.ndarray
    ok: np.ndarray
    k_bound: float
    alpha_hat: float
    continuity_gap: float
    lam: float
    label: str = ""
    extra: dict = field(default_factory=dict)

    @property
    def failures(self):
        return int((~self.ok).sum())

    @property
    def convergence_rate(self):
        return float(self.ok.mean())

    @property
    def max_mu(self):
        m = self.mu_abs[self.ok & np.isfinite(self.mu_abs)]
        return float(m.max()) if m.size else float("nan")

    def injective_on_grid(self, tol=1e-9):
        v = self.phi[self.ok]
        key = np.round(np.column_stack([v.real, v.imag]) / tol)
        return np.unique(key, axis=0).shape[0] == v.size

    def summary(self):
        return {"k_bound": self.k_bound, "max_mu": self.max_mu, "failures": self.failures,
                "cells": int(self.ok.size), "alpha_hat": self.alpha_hat,
                "continuity_gap": self.continuity_gap, "lambda": self.lam, "function": self.label}

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["x", "y", "u", "v", "mu_abs", "t", "theta", "ok"])
        for z, p, m, t, th, ok in zip(self.z.ravel(), self.phi.ravel(), self.mu_abs.ravel(),
                                      self.t.ravel(), self.theta.ravel(), self.ok.ravel()):
            w.writerow([f"{v:.17g}" for v in (z.real, z.imag, p.real, p.imag, m, t, th)] + [int(ok)])
        return buf.getvalue()

    def summary_json(self) -> str:
        return json.dumps(self.summary(), indent=2)


def beltrami_estimate(fun, z, h):
    """mu = Phi_zbar / Phi_z by central differences in x and y (step h, per point)."""
    px = (fun(z + h) - fun(z - h)) / (2 * h)
    py = (fun(z + 1j * h) - fun(z - 1j * h)) / (2 * h)
    with np.errstate(all="ignore"):
        return 0.5 * (px + 1j * py) / (0.5 * (px - 1j * py))


def exterior_grid(opts: ExtensionOptions):
    r = 1 + (opts.r_out_max - 1) * np.arange(1, opts.n_r + 1) / opts.n_r
    th = 2 * np.pi * (np.arange(opts.n_theta) + 0.5) / opts.n_theta
    return r[:, None] * np.exp(1j * th[None, :])


def continuity_gap(f, lam, n=180, table=None, eps=1e-3):
    """max |Phi((1+eps) e^{i theta}) - f((1-eps) e^{i theta})| over n directions."""
    f = as_function(f)
    table = table or BoundaryTable(f, lam)
    th = 2 * np.pi * (np.arange(n) + 0.5) / n
    u = np.exp(1j * th)
    phi, _, _, ok, _ = spirallike_extension(f, lam, (1 + eps) * u, table=table, check=False)
    gap = np.abs(phi - f.value((1 - eps) * u))
    gap = np.where(ok, gap, np.inf)
    return float(gap.max())


def extension_grid(f, lam, opts: ExtensionOptions | None = None, abort=True) -> ExtensionGrid:
    opts = opts or ExtensionOptions()
    f = as_function(f)
    SpirallikeChain(f, lam)
    table = BoundaryTable(f, lam)
    z = exterior_grid(opts)
    phi, t, th, ok, _ = spirallike_extension(f, lam, z, table=table, check=False)

    h = opts.fd_step * np.abs(z)

    def Phi(w):
        p, _, _, good, _ = spirallike_extension(f, lam, w, table=table, check=False)
        return np.where(good, p, np.nan)

    mu = np.abs(beltrami_estimate(Phi, z, h))
    near = np.abs(z) - 1 < 2 * h
    mu = np.where(near, np.nan, mu)
    ok = ok & (np.isfinite(mu) | near)
    # unconverged Newton iterates carry no meaning downstream
    phi, t, th = np.where(ok, phi, np.nan), np.where(ok, t, np.nan), np.where(ok, th, np.nan)
    alpha_hat = sector_exponent(f, lam)
    grid = ExtensionGrid(z, phi, mu, t, th, ok, float(np.sin(np.pi * alpha_hat / 2)), alpha_hat,
                         continuity_gap(f, lam, table=table), lam, f.label)
    if abort and grid.failures > opts.max_failure_fraction * ok.size:
        raise ExtensionAborted(
            f"{grid.failures} of {ok.size} cells failed (limit {opts.max_failure_fraction:.0%}); "
            f"boundary table monotone: {table.monotone}", grid)
    return grid
