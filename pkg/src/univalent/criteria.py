"""Report card of univalence and quasiconformal-extension criteria for one f and alpha.

Each verdict is "pass" when the hypothesis of the corresponding criterion is
met on the sampling grid, "fail" when it is not, "n/a" when the criterion
presupposes Re f' > 0 and that check failed, and "inconclusive" when the
numbers could not be computed.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from .constants import compute_constants
from .errors import UnivalentError
from .funclang import as_function
from .norms import NormOptions, norm_of

KIM_MERKES = 0.25


@dataclass
class Verdict:
    name: str
    measured: float
    threshold: float
    passed: str
    note: str = ""

    def to_json(self):
        d = asdict(self)
        for k in ("measured", "threshold"):
            v = d[k]
            d[k] = v if v is None or np.isfinite(v) else str(v)
        return d


def _grid(n_r=200, n_t=360, r_max=0.9999):
    r = r_max * np.sin(0.5 * np.pi * np.arange(1, n_r + 1) / n_r)
    th = 2 * np.pi * np.arange(n_t) / n_t
    return (r[:, None] * np.exp(1j * th[None, :])).ravel()


def _status(ok):
    return "pass" if ok else "fail"


def _le(x, thr):
    return bool(x <= thr + 1e-12)


def criteria_report(f, alpha, opts: NormOptions | None = None, constants=None):
    f = as_function(f)
    alpha = complex(alpha)
    a = abs(alpha)
    c = constants or compute_constants()
    out = []

    try:
        d = f.derivative_jet(_grid()).f1
        d = d[np.isfinite(d)]
        min_re = float(d.real.min())
        gamma = float(2 / np.pi * np.abs(np.angle(d)).max())
    except UnivalentError as exc:
        min_re = gamma = float("nan")
        note = str(exc)
    else:
        note = ""
    in_R = bool(min_re > 0)
    out.append(Verdict("noshiro_warschawski", min_re, 0.0,
                       "inconclusive" if np.isnan(min_re) else _status(in_R),
                       note or "min Re f' on the grid; Re f' > 0 gives univalence"))
    # within 1e-3 of 1 the grid cannot separate a sector from the half-plane
    degenerate = np.isnan(gamma) or gamma > 1 - 1e-3
    out.append(Verdict("arg_f_prime_sector", gamma, 1.0,
                       "inconclusive" if degenerate and gamma <= 1 else _status(gamma < 1),
                       f"gamma_hat = (2/pi) max|arg f'|; extension bound sin(gamma pi/2) = "
                       f"{np.sin(gamma * np.pi / 2):.6g}"))

    for kind, thr, name, what in (("T", 1.0, "becker", "||T_f|| <= 1 gives univalence; "
                                   "||T_f|| <= k < 1 gives a k-quasiconformal extension"),
                                  ("S", 2.0, "nehari", "||S_f|| <= 2 gives univalence")):
        try:
            v = norm_of(f, kind, opts).value
            out.append(Verdict(name, v, thr, _status(_le(v, thr)), what))
        except UnivalentError as exc:
            out.append(Verdict(name, float("nan"), thr, "inconclusive", str(exc)))

    out.append(Verdict("kim_merkes_pfaltzgraff", a, KIM_MERKES, _status(_le(a, KIM_MERKES)),
                       "|alpha| <= 1/4: J_alpha[f] univalent for univalent f"))

    def needs_R(name, measured, thr, ok, note):
        status = _status(ok) if in_R else "n/a"
        out.append(Verdict(name, measured, thr, status, note if in_R else note + " (needs Re f' > 0)"))

    needs_R("J_alpha_univalent", a, c.inv_h_r0, _le(a, c.inv_h_r0), "|alpha| <= 1/h(r0)")
    k_needed = a * c.h_r0
    needs_R("J_alpha_qc_k", k_needed, 1.0, k_needed < 1,
            "smallest k with |alpha| <= k/h(r0); a k-quasiconformal extension exists when k < 1")
    real_alpha = alpha.imag == 0
    needs_R("J_alpha_stays_in_R", a, c.alpha0, real_alpha and _le(a, c.alpha0),
            "real alpha in [-alpha0, alpha0]" + ("" if real_alpha else "; alpha is not real"))
    needs_R("J_alpha_dilatation", float(np.sin(a * c.beta0 * np.pi / 2)), 1.0,
            real_alpha and a < c.alpha0, "k = sin(|alpha| beta0 pi/2) for real |alpha| < alpha0")
    needs_R("I_alpha_stays_in_R", a, 1.0, real_alpha and _le(a, 1.0), "real alpha in [-1, 1]")
    needs_R("I_alpha_univalent", a, 0.5, _le(a, 0.5), "|alpha| <= 1/2")
    needs_R("I_alpha_dilatation", float(np.sin(a * np.pi / 2)), 1.0, real_alpha and a < 1,
            "k = sin(|alpha| pi/2) for real |alpha| < 1")
    return out


def report_to_json(verdicts):
    return [v.to_json() for v in verdicts]


def verdict_map(verdicts):
    return {v.name: v for v in verdicts}
