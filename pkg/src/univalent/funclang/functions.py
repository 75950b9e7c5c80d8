"""Callable analytic functions backed by expressions, series or closed forms.

Every function object exposes ``jet(z)`` (vectorized) and ``value(z)``.  The
norm and criteria code only ever talks to this interface.
"""
from __future__ import annotations

import numpy as np

from ..errors import DomainError
from ..jets import Jet3, jet_compose
from ..series import DEFAULT_ORDER, PowerSeries
from .evaluate import eval_jet, eval_series, eval_value
from .parser import Node, parse, to_text


class AnalyticFunction:
    """Base class; subclasses implement :meth:`jet` and optionally the rest."""

    label = "f"

    def jet(self, z) -> Jet3:
        raise NotImplementedError

    def derivative_jet(self, z) -> Jet3:
        """Jet whose f1..f3 channels are exact; f0 may be left as nan.

        Transforms override this to skip the quadrature for the value, which
        neither T_f nor S_f needs.
        """
        return self.jet(z)

    def value(self, z):
        return self.jet(z).f0

    def __call__(self, z):
        return self.value(z)

    def series(self, order=DEFAULT_ORDER) -> PowerSeries:
        raise NotImplementedError(f"{self.label} has no series representation")

    def center_value(self, radius=1e-2, n=32):
        """f(0), robust to removable singularities: mean over a small circle."""
        try:
            v = self.value(0j)
            if np.isfinite(v):
                return complex(v)
        except (DomainError, ZeroDivisionError):
            pass
        w = radius * np.exp(2j * np.pi * (np.arange(n) + 0.5) / n)
        return complex(np.mean(self.value(w)))

    def __repr__(self):
        return f"<{type(self).__name__} {self.label}>"


class ExprFunction(AnalyticFunction):
    def __init__(self, formula, params=None, label=None):
        if isinstance(formula, Node):
            self.ast = formula
            self.formula = to_text(formula)
        else:
            self.formula = formula
            self.ast = parse(formula, params)
        self.label = label or self.formula

    def jet(self, z):
        return eval_jet(self.ast, z)

    def value(self, z):
        return eval_value(self.ast, z)

    def series(self, order=DEFAULT_ORDER):
        return eval_series(self.ast, order)


class SeriesFunction(AnalyticFunction):
    """Function given by a truncated series; trusted for ``|z| <= 0.9``."""

    def __init__(self, series: PowerSeries, label="series"):
        self._series = series
        self.label = label

    def jet(self, z):
        return self._series.jet(z)

    def value(self, z):
        return self._series(z)

    def series(self, order=DEFAULT_ORDER):
        s = self._series
        if order <= s.truncation_order:
            return s.truncate(order)
        return PowerSeries.from_coeffs(s.coeffs, order)


class JetFunction(AnalyticFunction):
    """Closed form given as a Python callable returning a Jet3."""

    def __init__(self, jet_fn, label, series_fn=None):
        self._jet = jet_fn
        self._series_fn = series_fn
        self.label = label

    def jet(self, z):
        with np.errstate(all="ignore"):
            j = self._jet(z)
        if np.ndim(z) == 0:
            j = Jet3(*[complex(c) for c in j.channels()])
        if np.ndim(j.f0) == 0 and not all(np.isfinite(c) for c in j.channels()):
            raise DomainError(f"{self.label}: jet not finite at z = {z}")
        return j

    def series(self, order=DEFAULT_ORDER):
        if self._series_fn is None:
            return super().series(order)
        return self._series_fn(order)


class Composition(AnalyticFunction):
    """``outer(inner(z))``, with jets by the order-3 chain rule."""

    def __init__(self, outer: AnalyticFunction, inner: AnalyticFunction):
        self.outer = outer
        self.inner = inner
        self.label = f"({outer.label})∘({inner.label})"

    def jet(self, z):
        ij = self.inner.jet(z)
        return jet_compose(self.outer.jet(ij.f0), ij)

    def derivative_jet(self, z):
        ij = self.inner.jet(z)
        return jet_compose(self.outer.derivative_jet(ij.f0), ij)


class ScaledFunction(AnalyticFunction):
    """``a * f(z) + b``; used to renormalize test functions."""

    def __init__(self, f: AnalyticFunction, a=1.0, b=0.0):
        self.f, self.a, self.b = f, complex(a), complex(b)
        self.label = f"{self.a}*({f.label})+{self.b}"

    def jet(self, z):
        return self.f.jet(z) * self.a + self.b

    def derivative_jet(self, z):
        return self.f.derivative_jet(z) * self.a + self.b


def identity_function() -> AnalyticFunction:
    return ExprFunction("z")
