"""Truncated power series ``c0 + c1 z + ... + cN z^N`` with complex coefficients.

Coefficients beyond the truncation order are unknown, not zero, so every
operation returns a series whose order is the smallest order it can vouch for.
Evaluation by summation is trusted only for ``|z| <= 0.9`` (log-type
coefficients decay slowly near the unit circle); grid searches closer to the
boundary should use jets or closed forms instead.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DivisorConstantZero, NonzeroConstantTerm, NotNormalized
from .jets import Jet3, jet_polynomial

DEFAULT_ORDER = 256
TRUSTED_RADIUS = 0.9
_NORMALIZATION_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class PowerSeries:
    coeffs: np.ndarray

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=complex).ravel()
        if c.size < 2:
            raise ValueError("a PowerSeries needs truncation order >= 1")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def from_coeffs(cls, coeffs, order=None):
        c = np.asarray(coeffs, dtype=complex).ravel()
        if order is not None:
            out = np.zeros(order + 1, dtype=complex)
            out[: min(order + 1, c.size)] = c[: order + 1]
            c = out
        return cls(c)

    @classmethod
    def constant(cls, value, order=DEFAULT_ORDER):
        return cls.from_coeffs([value], order)

    @classmethod
    def variable(cls, order=DEFAULT_ORDER):
        return cls.from_coeffs([0, 1], order)

    @property
    def truncation_order(self) -> int:
        return self.coeffs.size - 1

    def __len__(self):
        return self.coeffs.size

    def __getitem__(self, n):
        return self.coeffs[n]

    def __repr__(self):
        head = ", ".join(f"{c:.6g}" for c in self.coeffs[:5])
        return f"PowerSeries([{head}, ...], order={self.truncation_order})"

    def truncate(self, order):
        if order > self.truncation_order:
            raise ValueError(f"cannot raise order {self.truncation_order} to {order}")
        return PowerSeries(self.coeffs[: order + 1])

    def __call__(self, z):
        return series_eval(self, z)

    def jet(self, z) -> Jet3:
        return jet_polynomial(self.coeffs, z)

    # arithmetic sugar; the module-level functions carry the contracts
    def _coerce(self, other):
        if isinstance(other, PowerSeries):
            return other
        return PowerSeries.constant(other, self.truncation_order)

    def __add__(self, other):
        other = self._coerce(other)
        n = min(self.truncation_order, other.truncation_order)
        return PowerSeries(self.coeffs[: n + 1] + other.coeffs[: n + 1])

    __radd__ = __add__

    def __neg__(self):
        return PowerSeries(-self.coeffs)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, PowerSeries):
            return series_mul(self, other)
        return PowerSeries(self.coeffs * other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, PowerSeries):
            return series_div(self, other)
        return PowerSeries(self.coeffs / other)

    def __rtruediv__(self, other):
        return series_div(self._coerce(other), self)


def series_eval(s: PowerSeries, z):
    """Horner summation; vectorized over ``z``."""
    z = np.asarray(z, dtype=complex)
    acc = np.zeros_like(z)
    for c in s.coeffs[::-1]:
        acc = acc * z + c
    return acc if acc.ndim else complex(acc)


def series_mul(a: PowerSeries, b: PowerSeries) -> PowerSeries:
    n = min(a.truncation_order, b.truncation_order)
    return PowerSeries(np.convolve(a.coeffs[: n + 1], b.coeffs[: n + 1])[: n + 1])


def series_div(a: PowerSeries, b: PowerSeries) -> PowerSeries:
    n = min(a.truncation_order, b.truncation_order)
    b0 = b.coeffs[0]
    if b0 == 0:
        raise DivisorConstantZero("divisor series has zero constant term")
    bc = b.coeffs[: n + 1]
    out = np.zeros(n + 1, dtype=complex)
    for k in range(n + 1):
        acc = a.coeffs[k] - np.dot(bc[1 : k + 1], out[k - 1 :: -1][:k]) if k else a.coeffs[0]
        out[k] = acc / b0
    return PowerSeries(out)


def series_derive(s: PowerSeries) -> PowerSeries:
    """Derivative; the result is known one order less than the input."""
    c = s.coeffs
    if c.size == 2:
        return PowerSeries([c[1], 0])
    return PowerSeries(c[1:] * np.arange(1, c.size))


def series_integrate(s: PowerSeries) -> PowerSeries:
    """Primitive vanishing at 0 (the lower limit of every transform)."""
    c = s.coeffs
    return PowerSeries(np.concatenate([[0], c / np.arange(1, c.size + 1)]))


def series_shift_div_z(s: PowerSeries) -> PowerSeries:
    c = s.coeffs
    if abs(c[0]) > _NORMALIZATION_TOL * max(1.0, np.abs(c).max()):
        raise NonzeroConstantTerm(f"cannot divide by z: c0 = {c[0]:.3g}")
    if c.size == 2:
        return PowerSeries([c[1], 0])
    return PowerSeries(c[1:])


def _require_unit_constant(s: PowerSeries):
    if abs(s.coeffs[0] - 1) > _NORMALIZATION_TOL:
        raise NotNormalized(f"series must have c0 = 1, got {s.coeffs[0]:.6g}")


def series_log(s: PowerSeries) -> PowerSeries:
    """log s for c0 = 1, from  n L_n = n s_n - sum_{k<n} k L_k s_{n-k}."""
    _require_unit_constant(s)
    c = s.coeffs
    n_max = c.size - 1
    out = np.zeros(n_max + 1, dtype=complex)
    for n in range(1, n_max + 1):
        k = np.arange(1, n)
        out[n] = c[n] - np.dot(k * out[1:n], c[n - 1 : 0 : -1]) / n
    return PowerSeries(out)


def series_exp(s: PowerSeries) -> PowerSeries:
    c = s.coeffs
    n_max = c.size - 1
    out = np.zeros(n_max + 1, dtype=complex)
    out[0] = np.exp(c[0])
    kc = np.arange(n_max + 1) * c
    for n in range(1, n_max + 1):
        out[n] = np.dot(kc[1 : n + 1], out[n - 1 :: -1][:n]) / n
    return PowerSeries(out)


def series_pow(s: PowerSeries, alpha) -> PowerSeries:
    """s**alpha for c0 = 1 on the branch with value 1 at z = 0.

    J. C. P. Miller's recurrence  n P_n = sum_{k=1}^{n} ((alpha+1) k - n) s_k P_{n-k},
    which is exp(alpha log s) without forming the logarithm.
    """
    _require_unit_constant(s)
    alpha = complex(alpha)
    c = s.coeffs
    n_max = c.size - 1
    out = np.zeros(n_max + 1, dtype=complex)
    out[0] = 1
    k_all = np.arange(n_max + 1)
    for n in range(1, n_max + 1):
        k = k_all[1 : n + 1]
        out[n] = np.dot(((alpha + 1) * k - n) * c[1 : n + 1], out[n - 1 :: -1][:n]) / n
    return PowerSeries(out)
