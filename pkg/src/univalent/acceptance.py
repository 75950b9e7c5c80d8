"""The acceptance suite: one function per criterion, shared by the tests and
``univalent selftest``.

Every criterion returns a CriterionResult whose ``checks`` list records each
measured quantity next to its expected value, so a failure says exactly which
part missed and by how much.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from . import constants as K
from .criteria import criteria_report, verdict_map
from .errors import ExtensionAborted, UnivalentError
from .funclang import CATALOG, FunctionSpec, catalog_function
from .loewner import ExtensionOptions, becker_dilatation, betker_dilatation, extension_grid
from .norms import norm_of
from .subordination import (
    DividedByZ,
    PolynomialMap,
    SelfMap,
    prop_schwarz_harness,
    random_R_function,
    random_univalent_self_map,
    range_hull,
    subordination_check,
)
from .transforms import IAlphaFunction, JAlphaFunction, TransformRequest, i_alpha_series, j_alpha_series

NORMALIZED_CATALOG = ("koebe", "phi", "psi", "krzyz-lewandowski", "half-plane-cayley", "spiral-koebe")
ALPHAS = (0.25, 0.5, 1.0, -0.5, 0.3 + 0.4j)


@dataclass
class Check:
    label: str
    measured: object
    expected: object
    ok: bool


@dataclass
class CriterionResult:
    number: int
    title: str
    checks: list = field(default_factory=list)
    seconds: float = 0.0

    @property
    def passed(self):
        return bool(self.checks) and all(c.ok for c in self.checks)

    def add(self, label, measured, expected, ok):
        self.checks.append(Check(label, measured, expected, bool(ok)))

    def failures(self):
        return [c for c in self.checks if not c.ok]

    def describe(self):
        lines = [f"[{'PASS' if self.passed else 'FAIL'}] {self.number}. {self.title} ({self.seconds:.1f} s)"]
        for c in self.checks:
            lines.append(f"    {'ok ' if c.ok else 'BAD'} {c.label}: measured {c.measured}, expected {c.expected}")
        return "\n".join(lines)


def _timed(fn):
    def run():
        t = time.perf_counter()
        res = fn()
        res.seconds = time.perf_counter() - t
        return res
    run.__name__ = fn.__name__
    run.__doc__ = fn.__doc__
    return run


@_timed
def criterion_1():
    res = CriterionResult(1, "constants reproduce the six-decimal values")
    t = time.perf_counter()
    c = K.compute_constants()
    elapsed = time.perf_counter() - t
    for name, ref in K.REFERENCE.items():
        v = getattr(c, name)
        res.add(name, v, f"{ref} +- 1e-5", abs(v - ref) <= 1e-5)
    res.add("runtime", f"{elapsed:.2f} s", "< 5 s", elapsed < 5)
    return res


@_timed
def criterion_2():
    res = CriterionResult(2, "root and maximization characterizations agree")
    r_root, r_max = K.solve_r0(), K.r0_by_maximization()
    res.add("|r0 root - r0 argmax|", abs(r_root - r_max), "<= 1e-8", abs(r_root - r_max) <= 1e-8)
    th, _, _, d = K.solve_theta0_beta0_alpha0(return_details=True)
    diff = abs(th - d["theta0_root"])
    res.add("|theta0 argmax - theta0 root|", diff, "<= 1e-4", diff <= 1e-4)
    return res


@_timed
def criterion_3():
    res = CriterionResult(3, "Schwarzian and pre-Schwarzian norm formulas")
    phi = catalog_function("phi")
    for a in (0.5, 1.0, 1.5, 0.6 + 0.8j):
        v = norm_of(IAlphaFunction(phi, a), "S").value
        want = 2 * abs(a) * (abs(a) + 2)
        res.add(f"||S_(I_{a}[phi])||", v, f"{want} +- 1e-3", abs(v - want) <= 1e-3)
    for eps in (0.1, 0.5, 1.0):
        v = norm_of(catalog_function("hille", epsilon=eps), "S").value
        want = 2 * (1 + eps ** 2)
        res.add(f"||S_hille(eps={eps})||", v, f"{want} +- 1e-3", abs(v - want) <= 1e-3)
    v = norm_of(catalog_function("koebe"), "S").value
    res.add("||S_K||", v, "6 +- 1e-3", abs(v - 6) <= 1e-3)
    v = norm_of(phi, "T").value
    res.add("||T_phi||", v, "2 +- 1e-3", abs(v - 2) <= 1e-3)
    return res


def random_R_functions(n, seed0=0, degree=None):
    """n random members; degree None cycles 0..6 (low degrees come closest to phi)."""
    return [random_R_function(seed0 + s, s % 7 if degree is None else degree) for s in range(n)]


@_timed
def criterion_4():
    res = CriterionResult(4, "||T_(J_alpha[f])|| = |alpha| ||T_(J[f])||")
    alphas = (0.25, 0.5, -0.7, 0.3 + 0.4j, 0.9j)
    worst = 0.0
    for f in random_R_functions(10, seed0=100):
        base = norm_of(JAlphaFunction(f, 1), "T").value
        for a in alphas:
            v = norm_of(JAlphaFunction(f, a), "T").value
            worst = max(worst, abs(v / (abs(a) * base) - 1))
    res.add("max |ratio - 1| over 10 f x 5 alpha", worst, "<= 1e-6", worst <= 1e-6)
    return res


@_timed
def criterion_5():
    res = CriterionResult(5, "sharp bound h(r0) and subordination to the dominant")
    hr0 = K.h(K.solve_r0())
    hull = range_hull("catalog:q-dominant")
    worst_norm, n_sub = 0.0, 0
    for f in random_R_functions(30, seed0=200):
        worst_norm = max(worst_norm, norm_of(JAlphaFunction(f, 1), "T").value)
        n_sub += subordination_check(DividedByZ(f), "catalog:q-dominant", hull=hull)[0]
    res.add("max ||T_(J[f])|| over 30 f", worst_norm, f"<= {hr0:.7f} + 1e-3", worst_norm <= hr0 + 1e-3)
    res.add("f(z)/z subordinate to q", f"{n_sub}/30", "30/30", n_sub == 30)
    v = norm_of(JAlphaFunction(catalog_function("phi"), 1), "T").value
    res.add("||T_(J[phi])||", v, f"{hr0:.7f} +- 1e-3", abs(v - hr0) <= 1e-3)
    ok = subordination_check(DividedByZ(catalog_function("phi")), "catalog:q-dominant", hull=hull)[0]
    res.add("phi(z)/z subordinate to q", ok, True, ok)
    return res


@_timed
def criterion_6():
    res = CriterionResult(6, "coefficients of g are non-positive")
    c = K.g_series(256).coeffs
    res.add("max Re g_n (n <= 256)", float(c.real.max()), "<= 0", c.real.max() <= 0)
    res.add("max |Im g_n|", float(np.abs(c.imag).max()), "0", np.abs(c.imag).max() == 0)
    res.add("g_1", c[1].real, "-1 +- 1e-12", abs(c[1] + 1) <= 1e-12)
    res.add("g_2", c[2].real, "-1/3 +- 1e-12", abs(c[2] + 1 / 3) <= 1e-12)
    return res


@_timed
def criterion_7():
    res = CriterionResult(7, "quadrature equals series; J_alpha = I_alpha o J")
    rng = np.random.default_rng(7)
    z = 0.5 * np.sqrt(rng.uniform(0, 1, 40)) * np.exp(2j * np.pi * rng.uniform(0, 1, 40))
    z = np.concatenate([z, 0.5 * np.exp(2j * np.pi * np.arange(8) / 8)])
    worst = 0.0
    for name in NORMALIZED_CATALOG:
        for a in ALPHAS:
            for op in ("J_alpha", "I_alpha"):
                req = TransformRequest(FunctionSpec.catalog(name), a, op)
                worst = max(worst, float(np.abs(req.function().value(z) - req.series()(z)).max()))
    res.add("max |quadrature - series|, |z| <= 0.5", worst, "<= 1e-8", worst <= 1e-8)
    worst = 0.0
    fs = [r.series(256) for r in random_R_functions(20, seed0=300)]
    for f in fs:
        J = j_alpha_series(f, 1)
        for a in ALPHAS:
            d = np.abs(j_alpha_series(f, a).coeffs - i_alpha_series(J, a).coeffs).max()
            worst = max(worst, float(d))
    res.add("max coefficient |J_a[f] - I_a[J[f]]|", worst, "<= 1e-10", worst <= 1e-10)
    return res


def jet_fd_error(f, z, h=1e-5):
    """Max relative error of derivative k against a central difference of channel k-1."""
    j = f.jet(z)
    jp, jm = f.jet(z + h), f.jet(z - h)
    chans, plus, minus = j.channels(), jp.channels(), jm.channels()
    errs = []
    for k in (1, 2, 3):
        fd = (plus[k - 1] - minus[k - 1]) / (2 * h)
        errs.append(np.abs(fd - chans[k]) / np.maximum(np.abs(chans[k]), 1))
    return float(np.max(errs))


@_timed
def criterion_8():
    res = CriterionResult(8, "jets match finite differences")
    rng = np.random.default_rng(8)
    z = 0.9 * np.sqrt(rng.uniform(0, 1, 50)) * np.exp(2j * np.pi * rng.uniform(0, 1, 50))
    for name in CATALOG:
        err = jet_fd_error(catalog_function(name), z)
        res.add(name, err, "<= 1e-6", err <= 1e-6)
    return res


@_timed
def criterion_9():
    res = CriterionResult(9, "Becker and Betker dilatations")
    rng = np.random.default_rng(9)
    p = rng.standard_normal(10_000) * 3 + 1j * rng.standard_normal(10_000) * 3
    same = np.array_equal(betker_dilatation(p, np.ones_like(p)), becker_dilatation(p))
    res.add("betker(p, 1) == becker(p)", same, True, same)
    d = float(np.abs(betker_dilatation(p, p) - np.abs(np.sin(np.angle(p)))).max())
    res.add("max |betker(p, p) - |sin arg p||", d, "<= 1e-12", d <= 1e-12)
    return res


@_timed
def criterion_10():
    res = CriterionResult(10, "explicit spirallike extension on a 50x180 grid")
    opts = ExtensionOptions(r_out_max=3.0, n_r=50, n_theta=180)
    # the Krzyz-Lewandowski map satisfies Re{e^{-i lambda} z f'/f} > 0 for lambda = -pi/4
    for spec, lam in (("catalog:spiral-koebe", np.pi / 4), ("catalog:krzyz-lewandowski", -np.pi / 4)):
        try:
            g = extension_grid(spec, lam, opts, abort=False)
        except UnivalentError as exc:
            res.add(f"{spec}: grid", type(exc).__name__, "a grid", False)
            continue
        res.add(f"{spec}: Newton convergence", g.convergence_rate, ">= 0.99", g.convergence_rate >= 0.99)
        res.add(f"{spec}: boundary continuity", g.continuity_gap, "<= 1e-3", g.continuity_gap <= 1e-3)
        res.add(f"{spec}: max |mu|", g.max_mu, "<= 1", g.max_mu <= 1)
    try:
        g = extension_grid("expr:z/(1-0.5*z)", 0.0, opts)
        res.add("z/(1-0.5z): max |mu|", g.max_mu, f"<= sin(pi a/2) + 0.05 = {g.k_bound + 0.05:.6f}",
                g.max_mu <= g.k_bound + 0.05)
    except ExtensionAborted as exc:
        res.add("z/(1-0.5z): grid", str(exc), "a grid", False)
    return res


@_timed
def criterion_11():
    res = CriterionResult(11, "criteria report card")
    phi = verdict_map(criteria_report("catalog:phi", 1.0))
    res.add("phi: Noshiro-Warschawski", phi["noshiro_warschawski"].passed, "pass",
            phi["noshiro_warschawski"].passed == "pass")
    b = phi["becker"]
    res.add("phi: Becker", f"{b.passed} (||T|| = {b.measured:.6f})", "fail with ||T|| = 2",
            b.passed == "fail" and abs(b.measured - 2) <= 1e-3)
    k = verdict_map(criteria_report("catalog:koebe", 1.0))
    res.add("koebe: Noshiro-Warschawski", k["noshiro_warschawski"].passed, "fail",
            k["noshiro_warschawski"].passed == "fail")
    ident = criteria_report("expr:z", 0.2)
    bad = [v.name for v in ident if v.passed != "pass"]
    res.add("identity (alpha = 0.2): checks not passing", bad, [], not bad)
    return res


PROP_G = ("koebe", "phi", "psi", "krzyz-lewandowski", "half-plane-cayley", "spiral-koebe",
          "q-dominant")


@_timed
def criterion_12():
    res = CriterionResult(12, "||S_f|| <= ||S_g|| + ||T_omega|| ||T_g|| for f' = g' o omega")
    worst = -np.inf
    for s in range(20):
        g = catalog_function(PROP_G[s % len(PROP_G)])
        out = prop_schwarz_harness(g, random_univalent_self_map(1000 + s))
        worst = max(worst, out["lhs"] - out["rhs"])
    res.add("max (lhs - rhs) over 20 pairs", worst, "<= 1e-6", worst <= 1e-6)
    for name in ("koebe", "phi"):
        for coeffs, what in (([0, 1], "omega = z"), ([0, 1j], "omega = i z")):
            out = prop_schwarz_harness(catalog_function(name), SelfMap(PolynomialMap(coeffs)))
            d = abs(out["lhs"] - out["rhs"])
            res.add(f"{name}, {what}: |lhs - rhs|", d, "<= 1e-6", d <= 1e-6)
    return res


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6,
            criterion_7, criterion_8, criterion_9, criterion_10, criterion_11, criterion_12]


def run_all(selected=None):
    out = []
    for fn in CRITERIA:
        n = int(fn.__name__.rsplit("_", 1)[1])
        if selected and n not in selected:
            continue
        try:
            out.append(fn())
        except Exception as exc:  # a crashing criterion is a failing criterion
            r = CriterionResult(n, fn.__name__)
            r.add("exception", f"{type(exc).__name__}: {exc}", "no exception", False)
            out.append(r)
    return out
