"""Range containment against convex dominants, random members of the class
Re f' > 0, disk self-maps and the Schwarz-Pick / Schwarzian-norm harness.

Subordination to a convex q is checked as: the centers agree and sampled
values lie in the convex hull of q on a circle close to the boundary.  That
is a necessary condition only; no subordinating map is constructed.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.spatial import ConvexHull, Delaunay

from .errors import DomainError, NotConvexWarning
from .funclang import AnalyticFunction, as_function
from .jets import Jet3, jet_compose, jet_polynomial, jet_reciprocal
from .norms import NormOptions, norm_of
from .series import DEFAULT_ORDER, PowerSeries, series_div, series_integrate
from .transforms import integrate_power

HULL_R_MAX = 1 - 1e-5
HULL_SAMPLES = 4096
CONTAIN_TOL = 1e-10


@dataclass
class RangeHull:
    boundary_samples: np.ndarray
    hull: np.ndarray  # vertices, counterclockwise
    equations: np.ndarray = field(repr=False)  # rows (nx, ny, c): inside iff nx*x + ny*y + c <= 0

    def contains(self, w, tol=CONTAIN_TOL):
        return contains(self, w, tol)

    def outside_distance(self, w):
        """max_k (n_k . w + c_k): <= 0 inside, the distance to the hull outside.

        A triangulation settles the bulk of interior points in O(log n); only
        the remainder are compared against every edge.
        """
        w = np.asarray(w, dtype=complex).ravel()
        if not hasattr(self, "_tri"):
            self._tri = Delaunay(np.column_stack([self.hull.real, self.hull.imag]))
        d = np.full(w.shape, -np.inf)
        finite = np.isfinite(w)
        d[~finite] = np.inf
        idx = np.nonzero(finite)[0]
        inner = self._tri.find_simplex(np.column_stack([w[idx].real, w[idx].imag])) >= 0
        rest = idx[~inner]
        eq = self.equations
        if rest.size:
            d[rest] = (eq[:, 0, None] * w[rest].real + eq[:, 1, None] * w[rest].imag
                       + eq[:, 2, None]).max(axis=0)
        return d


def _hull_from_points(pts: np.ndarray) -> RangeHull:
    xy = np.column_stack([pts.real, pts.imag])
    ch = ConvexHull(xy)
    verts = pts[ch.vertices]  # scipy returns 2-D hull vertices counterclockwise
    return RangeHull(pts, verts, ch.equations)


def range_hull(q, r_max=HULL_R_MAX, n=HULL_SAMPLES, convexity_tol=1e-9) -> RangeHull:
    q = as_function(q)
    th = 2 * np.pi * np.arange(n) / n
    pts = np.asarray(q.value(r_max * np.exp(1j * th)), dtype=complex)
    if not np.all(np.isfinite(pts)):
        raise DomainError(f"{q.label} not finite on |z| = {r_max}")
    hull = _hull_from_points(pts)
    # a convex image has every boundary sample on the hull boundary
    depth = -(hull.equations[:, :2] @ np.vstack([pts.real, pts.imag]) + hull.equations[:, 2:]).max(axis=0)
    scale = max(1.0, np.abs(pts).max())
    if depth.max() > convexity_tol * scale:
        warnings.warn(f"{q.label}: boundary samples lie up to {depth.max():.3g} inside the hull; "
                      "the image does not look convex", NotConvexWarning, stacklevel=2)
    return hull


def contains(hull: RangeHull, w, tol=CONTAIN_TOL):
    """Point-in-convex-polygon; the boundary counts as inside."""
    w = np.asarray(w, dtype=complex)
    scale = max(1.0, np.abs(hull.hull).max())
    inside = (hull.outside_distance(w) <= tol * scale).reshape(w.shape)
    return bool(inside) if inside.ndim == 0 else inside


def disk_samples(n_samples, r_max=0.99):
    n_r = max(int(np.sqrt(n_samples / 4)), 1)
    n_t = max(n_samples // n_r, 1)
    r = r_max * np.arange(1, n_r + 1) / n_r
    th = 2 * np.pi * (np.arange(n_t) + 0.5) / n_t
    return (r[:, None] * np.exp(1j * th[None, :])).ravel()


def subordination_check(f, q_convex, n_samples=4096, r_max=0.99, hull=None):
    """Returns (verdict, worst point, worst value).

    verdict is True iff f(0) = q(0) to 1e-10 and every sampled value lies in
    the hull of q.  ``worst`` is the sample furthest outside (or least inside).
    """
    f = as_function(f)
    q = as_function(q_convex)
    hull = hull or range_hull(q)
    z = disk_samples(n_samples, r_max)
    vals = np.asarray(f.value(z), dtype=complex) * np.ones(z.shape)
    d = hull.outside_distance(vals)
    k = int(np.argmax(d))
    scale = max(1.0, np.abs(hull.hull).max())
    center_ok = abs(f.center_value() - q.center_value()) <= 1e-10
    return bool(center_ok and d[k] <= CONTAIN_TOL * scale), complex(z[k]), complex(vals[k])


# ---------------------------------------------------------------- class R members


class RMember(AnalyticFunction):
    """f with f' = (1 + z b(z)) / (1 - z b(z)), f(0) = 0.

    With P = 1 - z b, f' = -1 + 2/P and for simple roots r_k of P
    f(z) = -z + sum_k (2/P'(r_k)) log(1 - z/r_k).
    The closed form is compared with quadrature at a few points; if they
    disagree (clustered roots) values fall back to quadrature.
    """

    def __init__(self, b, label=None):
        self.b = np.asarray(b, dtype=complex)
        self.P = np.concatenate([[1.0 + 0j], -self.b])  # ascending coefficients of 1 - z b(z)
        self.label = label or f"R[b={np.round(self.b, 4).tolist()}]"
        self._closed_form = False
        if np.any(self.b != 0):
            self.roots = np.roots(self.P[::-1])
            dP = np.polynomial.polynomial.polyder(self.P)
            self.residues = 2 / np.polynomial.polynomial.polyval(self.roots, dP)
            probe = 0.7 * np.exp(1j * np.array([0.3, 2.0, 4.0]))
            quad = self._quadrature(probe)
            self._closed_form = bool(np.allclose(self._closed(probe), quad, rtol=1e-11, atol=1e-12))

    def _closed(self, z):
        z = np.asarray(z, dtype=complex)
        out = -z
        for r, c in zip(self.roots, self.residues):
            out = out + c * np.log1p(-z / r)
        return out

    def _quadrature(self, z):
        return integrate_power(lambda u: self.derivative(u), 1.0, z)

    def derivative(self, z):
        return -1 + 2 / np.polynomial.polynomial.polyval(z, self.P)

    def value(self, z):
        if not np.any(self.b != 0):
            return np.asarray(z, dtype=complex) + 0j
        return self._closed(z) if self._closed_form else self._quadrature(z)

    def derivative_jet(self, z):
        inv = jet_reciprocal(jet_polynomial(self.P, z))
        nan = np.full(np.shape(z), np.nan + 0j) if np.ndim(z) else complex("nan")
        return Jet3(nan, -1 + 2 * inv.f0, 2 * inv.f1, 2 * inv.f2)

    def jet(self, z):
        j = self.derivative_jet(z)
        return Jet3(self.value(z), j.f1, j.f2, j.f3)

    def series(self, order=DEFAULT_ORDER):
        zb = PowerSeries.from_coeffs(np.concatenate([[0], self.b]), order)
        one = PowerSeries.constant(1, order)
        return series_integrate(series_div(one + zb, one - zb)).truncate(order)


def random_b(seed, degree, s_range=(0.25, 0.99)):
    rng = np.random.default_rng(seed)
    b = rng.standard_normal(degree + 1) + 1j * rng.standard_normal(degree + 1)
    s = rng.uniform(*s_range)
    return b * (s / np.abs(b).sum())


def random_R_function(seed, degree=6) -> RMember:
    return RMember(random_b(seed, degree), label=f"R(seed={seed}, degree={degree})")


def random_R_member(seed, degree=6, order=DEFAULT_ORDER) -> PowerSeries:
    """Series of a random f with Re f' > 0 (sum |b_n| <= 1 gives |z b(z)| < 1 on the disk)."""
    if degree + 1 > order:
        raise ValueError("degree must not exceed the truncation order")
    return random_R_function(seed, degree).series(order)


class DividedByZ(AnalyticFunction):
    """f(z)/z with the removable singularity at 0 filled by f'(0)."""

    def __init__(self, f):
        self.f = as_function(f)
        self.label = f"({self.f.label})/z"

    def value(self, z):
        z = np.asarray(z, dtype=complex)
        with np.errstate(all="ignore"):
            out = self.f.value(z) / z
        f1 = self.f.derivative_jet(0j).f1
        out = np.where(z == 0, f1, out)
        return complex(out) if out.ndim == 0 else out


# ---------------------------------------------------------------- self-maps


@dataclass
class SelfMap:
    omega: AnalyticFunction
    check_radius: float = 0.9999
    n_check: int = 2000

    def __post_init__(self):
        self.omega = as_function(self.omega)
        n_r = max(int(np.sqrt(self.n_check / 4)), 2)
        z = disk_samples(self.n_check, self.check_radius)
        z = np.concatenate([z, self.check_radius * np.exp(2j * np.pi * np.arange(4 * n_r) / (4 * n_r))])
        if np.abs(self.omega.value(z)).max() >= 1:
            raise DomainError(f"{self.omega.label} leaves the unit disk")


class PolynomialMap(AnalyticFunction):
    def __init__(self, coeffs, label=None):
        self.coeffs = np.asarray(coeffs, dtype=complex)
        self.label = label or "poly" + str(np.round(self.coeffs, 4).tolist())

    def jet(self, z):
        return jet_polynomial(self.coeffs, z)

    def series(self, order=DEFAULT_ORDER):
        return PowerSeries.from_coeffs(self.coeffs, order)


def random_self_map(seed, degree=4, s_range=(0.3, 0.95)) -> SelfMap:
    """Polynomial with sum |c_n| = s < 1, hence |omega| < 1 on the closed disk."""
    rng = np.random.default_rng(seed)
    c = rng.standard_normal(degree + 1) + 1j * rng.standard_normal(degree + 1)
    c *= rng.uniform(*s_range) / np.abs(c).sum()
    return SelfMap(PolynomialMap(c))


def random_univalent_self_map(seed) -> SelfMap:
    """omega = c + a z + b z^2 with |a| > 2|b| (omega' never vanishes) and |a|+|b|+|c| < 1."""
    rng = np.random.default_rng(seed)
    a_abs = rng.uniform(0.4, 0.9)
    b_abs = rng.uniform(0, min(a_abs / 2.2, 0.95 - a_abs))
    c_abs = rng.uniform(0, max(0.98 - a_abs - b_abs, 0))
    ph = rng.uniform(0, 2 * np.pi, 3)
    coeffs = [c_abs * np.exp(1j * ph[0]), a_abs * np.exp(1j * ph[1]), b_abs * np.exp(1j * ph[2])]
    return SelfMap(PolynomialMap(coeffs))


def schwarz_pick_check(omega, z):
    """(|omega'(z)| / (1 - |omega(z)|^2), 1 / (1 - |z|^2))."""
    om = omega.omega if isinstance(omega, SelfMap) else as_function(omega)
    j = om.jet(z)
    w = np.abs(j.f0)
    if np.any(w >= 1):
        raise DomainError(f"|omega(z)| >= 1 at z = {z}")
    return np.abs(j.f1) / (1 - w ** 2), 1 / (1 - np.abs(np.asarray(z)) ** 2)


class WeakSubordinate(AnalyticFunction):
    """f with f' = g' o omega and f(0) = 0 (f' weakly subordinate to g')."""

    def __init__(self, g, omega):
        self.g = as_function(g)
        self.omega = omega.omega if isinstance(omega, SelfMap) else as_function(omega)
        self.label = f"int g'({self.omega.label}) for g = {self.g.label}"

    def derivative_jet(self, z):
        w = self.omega.jet(z)
        gj = self.g.derivative_jet(w.f0)
        # g' o omega through order 2; only g', g'', g''' are needed
        d = jet_compose(Jet3(gj.f1, gj.f2, gj.f3, np.nan * gj.f3), w)
        nan = np.full(np.shape(z), np.nan + 0j) if np.ndim(z) else complex("nan")
        return Jet3(nan, d.f0, d.f1, d.f2)

    def value(self, z):
        c = self.derivative_jet(0j).f1
        return c * integrate_power(lambda u: self.derivative_jet(u).f1 / c, 1.0, z)

    def jet(self, z):
        j = self.derivative_jet(z)
        return Jet3(self.value(z), j.f1, j.f2, j.f3)


def prop_schwarz_harness(g, omega, opts: NormOptions | None = None):
    """lhs = ||S_f||, rhs = ||S_g|| + ||T_omega|| * ||T_g|| with f' = g' o omega."""
    om = omega if isinstance(omega, SelfMap) else SelfMap(omega)
    g = as_function(g)
    f = WeakSubordinate(g, om)
    s_f = norm_of(f, "S", opts).value
    s_g = norm_of(g, "S", opts).value
    t_g = norm_of(g, "T", opts).value
    t_w = norm_of(om.omega, "T", opts).value
    term = 0.0 if t_w == 0 else t_w * t_g
    return {"lhs": s_f, "rhs": s_g + term, "S_g": s_g, "T_g": t_g, "T_omega": t_w}
