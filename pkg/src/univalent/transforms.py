"""The integral transforms J_alpha, I_alpha, the Alexander transform and the
Hallenbeck-Ruscheweyh dominant.

    J_alpha[f](z) = int_0^z (f(u)/u)^alpha du
    I_alpha[f](z) = int_0^z (f'(u))^alpha du

with the branch of the power equal to 1 at u = 0.  Every transform has a
series route (exact up to truncation) and a pointwise route (Gauss-Legendre
quadrature along the radial segment [0, z] with the logarithm of the
integrand continued from 0).  The segment is only a convenience; by
analyticity any path in the disk gives the same value.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import BadGamma, BranchTrackingFailure, DomainError, NotNormalized
from .funclang import AnalyticFunction, FunctionSpec, as_function
from .jets import Jet3, jet_div, jet_pow
from .series import (
    DEFAULT_ORDER,
    PowerSeries,
    series_derive,
    series_integrate,
    series_pow,
    series_shift_div_z,
)

GL_POINTS = 32
INITIAL_PANELS = 8
MAX_DEPTH = 12
# node-to-node change of the tracked log above which the panel is refined
JUMP_TOL = 1.0

_NORM_TOL = 1e-10


def _require_normalized_series(f: PowerSeries):
    c = f.coeffs
    if abs(c[0]) > _NORM_TOL or abs(c[1] - 1) > _NORM_TOL:
        raise NotNormalized(f"need f(0)=0, f'(0)=1; got c0={c[0]:.3g}, c1={c[1]:.3g}")


def j_alpha_series(f: PowerSeries, alpha, N=None) -> PowerSeries:
    _require_normalized_series(f)
    N = f.truncation_order if N is None else N
    out = series_integrate(series_pow(series_shift_div_z(f), alpha))
    return out.truncate(min(N, out.truncation_order))


def i_alpha_series(f: PowerSeries, alpha, N=None) -> PowerSeries:
    _require_normalized_series(f)
    N = f.truncation_order if N is None else N
    out = series_integrate(series_pow(series_derive(f), alpha))
    return out.truncate(min(N, out.truncation_order))


def alexander_series(f: PowerSeries, N=None) -> PowerSeries:
    return j_alpha_series(f, 1, N)


@lru_cache(maxsize=None)
def _panel_nodes(n_panels):
    x, w = np.polynomial.legendre.leggauss(GL_POINTS)
    left = np.arange(n_panels) / n_panels
    s = (left[:, None] + (x[None, :] + 1) / (2 * n_panels)).ravel()
    ws = np.tile(w / (2 * n_panels), n_panels)
    return s, ws


def integrate_power(base, alpha, z, with_log=False):
    """``int_0^z base(u)^alpha du`` along the segment, base(0) = 1.

    ``base`` maps an array of points to values.  The log of the integrand is
    continued node by node from log base(0) = 0; when two neighbouring nodes
    differ by more than ``JUMP_TOL`` the panel count is doubled (up to
    ``MAX_DEPTH`` times) before giving up with BranchTrackingFailure.

    Returns the integral and, with ``with_log``, the continued log of base at z.
    """
    z_arr = np.atleast_1d(np.asarray(z, dtype=complex))
    shape = z_arr.shape
    zf = z_arr.ravel()
    total = np.full(zf.shape, np.nan + 0j)
    log_end = np.full(zf.shape, np.nan + 0j)
    at_origin = zf == 0
    total[at_origin], log_end[at_origin] = 0, 0
    pending = np.nonzero(~at_origin)[0]
    alpha = complex(alpha)
    for depth in range(MAX_DEPTH + 1):
        if pending.size == 0:
            break
        s, ws = _panel_nodes(INITIAL_PANELS * 2 ** depth)
        s_ext = np.concatenate([s, [1.0]])
        zp = zf[pending]
        with np.errstate(all="ignore"):
            vals = base(zp[:, None] * s_ext[None, :])
            logs = np.log(vals)
        im = np.unwrap(np.concatenate([np.zeros((zp.size, 1)), logs.imag], axis=1), axis=1)
        jumps = np.abs(np.diff(im, axis=1)).max(axis=1)
        bad_value = ~np.isfinite(logs).all(axis=1)
        ok = (jumps <= JUMP_TOL) | bad_value
        cont = logs.real + 1j * im[:, 1:]
        integrand = np.exp(alpha * cont[:, :-1])
        done = pending[ok]
        total[done] = (integrand[ok] @ ws) * zp[ok]
        log_end[done] = cont[ok, -1]
        pending = pending[~ok]
    if pending.size:
        raise BranchTrackingFailure(
            f"log of the integrand jumps by more than {JUMP_TOL} between nodes even with "
            f"{INITIAL_PANELS * 2 ** MAX_DEPTH} panels at z = {zf[pending[0]]}")
    total = total.reshape(shape)
    log_end = log_end.reshape(shape)
    if np.ndim(z) == 0:
        total, log_end = complex(total[0]), complex(log_end[0])
        if not np.isfinite(total):
            raise DomainError(f"integrand singular on the segment [0, {z}]")
    return (total, log_end) if with_log else total


def _log_offset(continued, principal):
    m = np.rint((np.asarray(continued).imag - np.asarray(principal).imag) / (2 * np.pi))
    m = np.where(np.isfinite(m), m, 0).astype(int)
    return m if m.ndim else int(m)


def _check_normalized_function(f: AnalyticFunction):
    try:
        j = f.jet(0j)
        c0, c1 = j.f0, j.f1
    except (DomainError, ZeroDivisionError):
        s = f.series(4)
        c0, c1 = s.coeffs[0], s.coeffs[1]
    if abs(c0) > 1e-9 or abs(c1 - 1) > 1e-9:
        raise NotNormalized(f"{f.label}: need f(0)=0, f'(0)=1; got {c0:.3g}, {c1:.3g}")


class _Transform(AnalyticFunction):
    def __init__(self, f, alpha, check=True):
        self.f = as_function(f)
        self.alpha = complex(alpha)
        if check:
            _check_normalized_function(self.f)

    # subclasses supply the base of the power and its jet (order 2 suffices)
    def _base_values(self, u):
        raise NotImplementedError

    def _base_jet(self, z) -> Jet3:
        raise NotImplementedError

    def _series_at_zero(self):
        raise NotImplementedError

    def _assemble(self, value, z, log_offset):
        g = jet_pow(self._base_jet(z), self.alpha, log_offset)
        return Jet3(value, g.f0, g.f1, g.f2)

    def jet(self, z):
        if np.ndim(z) == 0 and z == 0:
            c = self._series_at_zero().coeffs
            return Jet3(0j, complex(c[1]), complex(2 * c[2]), complex(6 * c[3]))
        value, log_end = integrate_power(self._base_values, self.alpha, z, with_log=True)
        with np.errstate(all="ignore"):
            principal = np.log(self._base_jet(z).f0)
            return self._assemble(value, z, _log_offset(log_end, principal))

    def derivative_jet(self, z):
        """Principal-branch derivative channels; T and S do not see the branch."""
        if np.ndim(z) == 0 and z == 0:
            return self.jet(z)
        with np.errstate(all="ignore"):
            nan = np.full(np.shape(z), np.nan + 0j) if np.ndim(z) else complex("nan")
            return self._assemble(nan, z, 0)

    def value(self, z):
        return integrate_power(self._base_values, self.alpha, z)


class JAlphaFunction(_Transform):
    """J_alpha[f] evaluated pointwise."""

    def __init__(self, f, alpha, check=True):
        super().__init__(f, alpha, check)
        self.label = f"J_{self.alpha}[{self.f.label}]"

    def _base_values(self, u):
        return self.f.value(u) / u

    def _base_jet(self, z):
        return jet_div(self.f.jet(z), Jet3.identity(z))

    def _series_at_zero(self):
        return j_alpha_series(self.f.series(8), self.alpha)

    def series(self, order=DEFAULT_ORDER):
        return j_alpha_series(self.f.series(order + 1), self.alpha, order)


class IAlphaFunction(_Transform):
    """I_alpha[f] evaluated pointwise."""

    def __init__(self, f, alpha, check=True):
        super().__init__(f, alpha, check)
        self.label = f"I_{self.alpha}[{self.f.label}]"

    def _base_values(self, u):
        return self.f.jet(u).f1

    def _base_jet(self, z):
        j = self.f.jet(z)
        return Jet3(j.f1, j.f2, j.f3, np.nan * j.f3)

    def _series_at_zero(self):
        return i_alpha_series(self.f.series(8), self.alpha)

    def series(self, order=DEFAULT_ORDER):
        return i_alpha_series(self.f.series(order + 1), self.alpha, order)


def alexander(f) -> JAlphaFunction:
    return JAlphaFunction(f, 1)


_OPS = {"J_alpha": JAlphaFunction, "I_alpha": IAlphaFunction, "alexander": JAlphaFunction}


@dataclass(frozen=True)
class TransformRequest:
    f: FunctionSpec
    alpha: complex = 1.0
    op: str = "J_alpha"
    representation: str = "pointwise"
    order: int = DEFAULT_ORDER
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.op not in _OPS:
            raise ValueError(f"op must be one of {sorted(_OPS)}")
        if self.representation not in ("series", "pointwise"):
            raise ValueError("representation must be 'series' or 'pointwise'")

    @property
    def effective_alpha(self):
        return 1.0 if self.op == "alexander" else complex(self.alpha)

    def function(self) -> _Transform:
        return _OPS[self.op](as_function(self.f), self.effective_alpha)

    def series(self) -> PowerSeries:
        f = as_function(self.f).series(self.order + 1)
        if self.op == "I_alpha":
            return i_alpha_series(f, self.effective_alpha, self.order)
        return j_alpha_series(f, self.effective_alpha, self.order)


def transform_pointwise(req: TransformRequest, z):
    """Value of the requested transform at ``z`` (scalar or array, ``|z| < 1``)."""
    if np.any(np.abs(np.asarray(z)) >= 1):
        raise DomainError("transform evaluation needs |z| < 1")
    return req.function().value(z)


def evaluate_transform(req: TransformRequest, z):
    if req.representation == "series":
        return req.series()(z)
    return transform_pointwise(req, z)


def hr_dominant(q, gamma, N=DEFAULT_ORDER) -> PowerSeries:
    """Series of  gamma z^-gamma int_0^z u^(gamma-1) q(u) du  (coefficient gamma q_n/(gamma+n))."""
    gamma = complex(gamma)
    if gamma == 0 or gamma.real <= 0:
        raise BadGamma(f"need Re gamma > 0, got {gamma}")
    qs = q if isinstance(q, PowerSeries) else as_function(q).series(N)
    if abs(qs.coeffs[0] - 1) > 1e-10:
        raise NotNormalized(f"dominant needs q(0) = 1, got {qs.coeffs[0]:.6g}")
    n = np.arange(qs.coeffs.size)
    return PowerSeries(gamma * qs.coeffs / (gamma + n))
