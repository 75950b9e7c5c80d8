"""Order-3 jets of analytic functions.

A :class:`Jet3` holds ``(f, f', f'', f''')`` at a point.  The channels may be
complex scalars or complex numpy arrays of a common shape, so a whole grid of
points is pushed through the same arithmetic at once.

Scalar inputs that hit a zero (log of 0, division by 0) raise; array inputs
get ``nan`` in the affected entries so grid searches can skip them.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ZeroValue

ZERO_THRESHOLD = 1e-300
TWO_PI_I = 2j * np.pi


def _nonzero(x, exc=ZeroValue, what="value"):
    ax = np.abs(x)
    if np.ndim(x) == 0:
        if not ax >= ZERO_THRESHOLD:
            raise exc(f"{what} vanishes: |{what}| = {float(ax):.3g}")
        return x
    bad = ~(ax >= ZERO_THRESHOLD)
    if bad.any():
        x = np.where(bad, np.nan + 0j, x)
    return x


@dataclass(frozen=True)
class Jet3:
    __array_ufunc__ = None  # make numpy defer to the Jet3 operators

    f0: complex
    f1: complex = 0j
    f2: complex = 0j
    f3: complex = 0j

    @classmethod
    def identity(cls, z):
        z = np.asarray(z, dtype=complex) if np.ndim(z) else complex(z)
        one = np.ones_like(z) if np.ndim(z) else 1 + 0j
        zero = np.zeros_like(z) if np.ndim(z) else 0j
        return cls(z, one, zero, zero)

    @classmethod
    def constant(cls, c, like=None):
        zero = np.zeros_like(like, dtype=complex) if np.ndim(like) else 0j
        return cls(c + zero, zero, zero, zero)

    def channels(self):
        return (self.f0, self.f1, self.f2, self.f3)

    def __getitem__(self, k):
        return self.channels()[k]

    def __neg__(self):
        return Jet3(-self.f0, -self.f1, -self.f2, -self.f3)

    def __add__(self, other):
        if isinstance(other, Jet3):
            return Jet3(self.f0 + other.f0, self.f1 + other.f1,
                        self.f2 + other.f2, self.f3 + other.f3)
        return Jet3(self.f0 + other, self.f1, self.f2, self.f3)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Jet3):
            return jet_mul(self, other)
        return Jet3(self.f0 * other, self.f1 * other, self.f2 * other, self.f3 * other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Jet3):
            return jet_div(self, other)
        return Jet3(self.f0 / other, self.f1 / other, self.f2 / other, self.f3 / other)

    def __rtruediv__(self, other):
        return jet_reciprocal(self) * other

    def __pow__(self, alpha):
        return jet_pow(self, alpha)


def jet_mul(a: Jet3, b: Jet3) -> Jet3:
    """Leibniz product through third order."""
    return Jet3(
        a.f0 * b.f0,
        a.f1 * b.f0 + a.f0 * b.f1,
        a.f2 * b.f0 + 2 * a.f1 * b.f1 + a.f0 * b.f2,
        a.f3 * b.f0 + 3 * a.f2 * b.f1 + 3 * a.f1 * b.f2 + a.f0 * b.f3,
    )


def compose(g0, g1, g2, g3, u: Jet3) -> Jet3:
    """Jet of ``g(u(z))`` given the derivatives ``g^(k)`` evaluated at ``u.f0``."""
    u1 = u.f1
    return Jet3(
        g0,
        g1 * u1,
        g2 * u1 * u1 + g1 * u.f2,
        g3 * u1 ** 3 + 3 * g2 * u1 * u.f2 + g1 * u.f3,
    )


def jet_compose(outer: Jet3, inner: Jet3) -> Jet3:
    """Chain rule when ``outer`` is already the jet of g at ``inner.f0``."""
    return compose(outer.f0, outer.f1, outer.f2, outer.f3, inner)


def jet_reciprocal(a: Jet3) -> Jet3:
    x = _nonzero(a.f0, what="divisor")
    with np.errstate(invalid="ignore"):  # nan entries are intentional
        r = 1 / x
    r2 = r * r
    return compose(r, -r2, 2 * r2 * r, -6 * r2 * r2, a)


def jet_div(a: Jet3, b: Jet3) -> Jet3:
    return jet_mul(a, jet_reciprocal(b))


def jet_exp(a: Jet3) -> Jet3:
    e = np.exp(a.f0)
    return compose(e, e, e, e, a)


def jet_log(a: Jet3) -> Jet3:
    """Principal-branch value; the derivative channels do not depend on the branch."""
    x = _nonzero(a.f0)
    with np.errstate(invalid="ignore"):
        r = 1 / x
        lx = np.log(x)
    return compose(lx, r, -r * r, 2 * r ** 3, a)


def _is_integer(alpha):
    return complex(alpha).imag == 0 and float(complex(alpha).real).is_integer()


def jet_pow(a: Jet3, alpha, log_offset=0) -> Jet3:
    """``exp(alpha * (Log a + 2 pi i log_offset))`` as a jet.

    ``log_offset`` may be an integer array matching the jet's shape; it is how
    path-tracking callers select the continued branch.
    """
    alpha = complex(alpha)
    if alpha == 0:
        return Jet3.constant(1 + 0j, like=a.f0)
    x = _nonzero(a.f0)
    if _is_integer(alpha) and np.all(np.asarray(log_offset) == 0):
        n = int(alpha.real)
        v = x ** n if n >= 0 else 1 / x ** (-n)
    else:
        v = np.exp(alpha * (np.log(x) + TWO_PI_I * np.asarray(log_offset)))
        if np.ndim(v) == 0:
            v = complex(v)
    r = 1 / x
    g1 = alpha * v * r
    g2 = alpha * (alpha - 1) * v * r * r
    g3 = alpha * (alpha - 1) * (alpha - 2) * v * r ** 3
    return compose(v, g1, g2, g3, a)


def jet_sqrt(a: Jet3) -> Jet3:
    return jet_pow(a, 0.5)


def jet_polynomial(coeffs, z) -> Jet3:
    """Jet of ``sum coeffs[n] z^n`` by Horner evaluation of the value and derivatives."""
    c = np.asarray(coeffs, dtype=complex)
    z = np.asarray(z, dtype=complex)
    out = []
    for _ in range(4):
        acc = np.zeros_like(z)
        for coef in c[::-1]:
            acc = acc * z + coef
        out.append(acc if acc.ndim else complex(acc))
        c = c[1:] * np.arange(1, len(c)) if len(c) > 1 else np.zeros(1, dtype=complex)
    return Jet3(*out)
