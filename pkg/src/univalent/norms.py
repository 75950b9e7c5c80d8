"""Pre-Schwarzian and Schwarzian derivatives and their hyperbolic sup-norms.

    T_f = f''/f'            ||T_f|| = sup (1-|z|^2)   |T_f(z)|
    S_f = T_f' - T_f^2/2    ||S_f|| = sup (1-|z|^2)^2 |S_f(z)|

The norms are computed by a polar grid search over |z| <= r_max followed by
golden-section coordinate refinement.  The reported number is the largest
weighted modulus actually evaluated, so it is a lower bound for the true sup
over the disk; nothing here certifies an upper bound.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from .errors import AllPointsSingular, CriticalPoint
from .funclang import as_function
from .transforms import JAlphaFunction

CRITICAL_TOL = 1e-14
INFINITE_THRESHOLD = 1e12
_POWER = {"pre_schwarzian": 1, "schwarzian": 2}
_ALIASES = {"T": "pre_schwarzian", "S": "schwarzian"}

GOLDEN = (np.sqrt(5) - 1) / 2


def _t_and_s(j):
    crit = np.abs(j.f1) < CRITICAL_TOL
    if np.ndim(crit) == 0 and crit:
        return complex("nan"), complex("nan"), True
    with np.errstate(all="ignore"):
        t = j.f2 / j.f1
        s = j.f3 / j.f1 - 1.5 * t * t
    if np.ndim(t):
        t = np.where(crit, np.nan, t)
        s = np.where(crit, np.nan, s)
    return t, s, crit


def pre_schwarzian(f, z):
    """f''(z)/f'(z); vectorized (nan at critical points) or scalar (raises)."""
    t, _, crit = _t_and_s(as_function(f).derivative_jet(z))
    if np.ndim(t) == 0 and crit:
        raise CriticalPoint(f"f'({z}) vanishes")
    return t


def schwarzian(f, z):
    """T_f' - T_f^2/2 = f'''/f' - (3/2)(f''/f')^2."""
    _, s, crit = _t_and_s(as_function(f).derivative_jet(z))
    if np.ndim(s) == 0 and crit:
        raise CriticalPoint(f"f'({z}) vanishes")
    return s


@dataclass
class DerivativeField:
    f: object
    kind: str = "pre_schwarzian"

    def __post_init__(self):
        self.kind = _ALIASES.get(self.kind, self.kind)
        if self.kind not in _POWER:
            raise ValueError(f"kind must be pre_schwarzian or schwarzian, got {self.kind!r}")
        self.f = as_function(self.f)

    @property
    def power(self):
        return _POWER[self.kind]

    def __call__(self, z):
        t, s, _ = _t_and_s(self.f.derivative_jet(z))
        return t if self.kind == "pre_schwarzian" else s

    def weighted(self, z):
        z = np.asarray(z, dtype=complex)
        with np.errstate(all="ignore"):
            return (1 - np.abs(z) ** 2) ** self.power * np.abs(self(z))


@dataclass(frozen=True)
class NormOptions:
    n_radial: int = 400
    n_angular: int = 720
    r_max: float = 0.9999
    refine_iters: int = 60
    refine_sweeps: int = 3

    def __post_init__(self):
        if not 0 < self.r_max < 1:
            raise ValueError("r_max must lie in (0, 1)")
        if self.n_radial < 2 or self.n_angular < 1:
            raise ValueError("grid too small")


@dataclass
class NormResult:
    value: float
    argmax_z: complex
    grid: dict
    refined: bool
    kind: str = ""
    skipped: int = 0

    def to_json(self):
        return {
            "value": self.value if np.isfinite(self.value) else "Infinity",
            "argmax": [self.argmax_z.real, self.argmax_z.imag],
            "grid": dict(self.grid),
            "refined": self.refined,
            "kind": self.kind,
            "skipped": self.skipped,
        }


def radial_nodes(n, r_max):
    """Sine-spaced radii, clustered towards r_max; the grid for 2n contains the grid for n."""
    return r_max * np.sin(0.5 * np.pi * np.arange(1, n + 1) / n)


def angular_nodes(n):
    return 2 * np.pi * np.arange(n) / n


def golden_max(fun, a, b, iters):
    """Golden-section search for a maximum of a unimodal ``fun`` on [a, b]."""
    c = b - GOLDEN * (b - a)
    d = a + GOLDEN * (b - a)
    fc, fd = fun(c), fun(d)
    for _ in range(iters):
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - GOLDEN * (b - a)
            fc = fun(c)
        else:
            a, c, fc = c, d, fd
            d = a + GOLDEN * (b - a)
            fd = fun(d)
    return (c, fc) if fc >= fd else (d, fd)


def _safe(v):
    v = float(v)
    return v if np.isfinite(v) else -np.inf


def norm(field: DerivativeField, opts: NormOptions | None = None) -> NormResult:
    opts = opts or NormOptions()
    r = radial_nodes(opts.n_radial, opts.r_max)
    th = angular_nodes(opts.n_angular)
    z = r[:, None] * np.exp(1j * th[None, :])
    w = field.weighted(z)
    grid = {"n_radial": opts.n_radial, "n_angular": opts.n_angular, "r_max": opts.r_max}
    bad = ~np.isfinite(w)
    if bad.all():
        raise AllPointsSingular(f"{field.kind} of {field.f.label} is singular at every grid point")
    if np.nanmax(np.where(bad, -np.inf, w)) > INFINITE_THRESHOLD:
        k = int(np.argmax(np.where(bad, -np.inf, w)))
        return NormResult(np.inf, complex(z.flat[k]), grid, False, field.kind, int(bad.sum()))
    wf = np.where(bad, -np.inf, w)
    k = int(np.argmax(wf))  # first maximum in r-major order: smallest r, then smallest theta
    i, j = divmod(k, opts.n_angular)
    best_r, best_t, best = r[i], th[j], float(wf.flat[k])
    refined = False
    if opts.refine_iters > 0:
        r_lo = r[i - 1] if i > 0 else 0.0
        r_hi = r[i + 1] if i + 1 < r.size else opts.r_max
        dt = 2 * np.pi / opts.n_angular
        t_lo, t_hi = best_t - dt, best_t + dt
        for _ in range(opts.refine_sweeps):
            rr, vr = golden_max(lambda x: _safe(field.weighted(x * np.exp(1j * best_t))),
                                r_lo, r_hi, opts.refine_iters)
            if vr > best:
                best_r, best, refined = rr, vr, True
            tt, vt = golden_max(lambda x: _safe(field.weighted(best_r * np.exp(1j * x))),
                                t_lo, t_hi, opts.refine_iters)
            if vt > best:
                best_t, best, refined = tt, vt, True
    arg = complex(best_r * np.exp(1j * best_t))
    value = float(field.weighted(arg))
    if value > INFINITE_THRESHOLD:
        value = np.inf
    return NormResult(value, arg, grid, refined, field.kind, int(bad.sum()))


def norm_of(f, kind="T", opts=None) -> NormResult:
    return norm(DerivativeField(f, kind), opts)


def norm_scaling_check(f, alpha, opts=None):
    """(||T_{J_alpha[f]}||, |alpha| * ||T_{J[f]}||), computed independently."""
    f = as_function(f)
    lhs = norm_of(JAlphaFunction(f, alpha), "T", opts).value
    rhs = abs(complex(alpha)) * norm_of(JAlphaFunction(f, 1), "T", opts).value
    return lhs, rhs


def options_from_dict(d) -> NormOptions:
    fields = NormOptions.__dataclass_fields__
    return NormOptions(**{k: v for k, v in (d or {}).items() if k in fields})


def options_to_dict(opts: NormOptions):
    return asdict(opts)
