import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from univalent.constants import (
    G_FORMULA,
    REFERENCE,
    BracketFailure,
    DomainError,
    PoleProximity,
    _bracket_root,
    arg_q_boundary,
    compute_constants,
    constants_report,
    equation2,
    g_series,
    h,
    h_prime,
    pole_theta,
    r0_by_maximization,
    sector_containment_check,
    solve_r0,
    solve_theta0_beta0_alpha0,
    varsigma,
)
from univalent.funclang import as_function

# independent 40-digit evaluations of the closed forms (mpmath)
H_HALF = 1.0386599517083450
ARG_Q_1E_4 = 0.17830818770346872
ARG_Q_1E_100 = 0.0068366210192717596
VARSIGMA_HALF_PI = -0.82348503002463350


@pytest.fixture(scope="module")
def consts():
    return compute_constants()


def test_h_values():
    assert abs(h(0.5) - H_HALF) < 1e-14
    assert 0.99 < h(1e-6) < 1.01
    with pytest.raises(DomainError):
        h(1.0)
    with pytest.raises(DomainError):
        h(0.0)


def test_r0(consts):
    r0 = solve_r0()
    assert abs(r0 - REFERENCE["r0"]) < 1e-5
    assert abs(h(r0) - REFERENCE["h_r0"]) < 1e-5
    assert abs(equation2(r0)) < 1e-14
    assert abs(h_prime(r0)) < 1e-8
    d = (h(r0 + 1e-5) - h(r0 - 1e-5)) / 2e-5
    assert abs(d) < 1e-8
    assert abs(r0 - r0_by_maximization()) < 1e-8


def test_r0_tolerance_is_monotone():
    assert abs(solve_r0(1e-6) - solve_r0()) < 1e-6


def test_sup_of_h():
    r = np.linspace(1e-6, 1 - 1e-6, 1_000_000)
    assert np.max(h(r)) <= h(solve_r0()) + 1e-9


def test_g_real_axis_reduction(consts):
    g = as_function("expr:" + G_FORMULA)
    n_r, n_t = 400, 720
    r = 0.9999 * np.sin(0.5 * np.pi * np.arange(1, n_r + 1) / n_r)
    th = 2 * np.pi * np.arange(n_t) / n_t
    z = r[:, None] * np.exp(1j * th[None, :])
    v = (1 - np.abs(z) ** 2) / np.abs(z) * np.abs(g.value(z))
    k = int(np.nanargmax(v))
    ang = np.angle(z.flat[k])
    assert min(abs(ang), abs(2 * np.pi - ang)) <= 2 * np.pi / n_t
    assert v.flat[k] <= consts.h_r0 + 1e-9
    assert g.value(0.3) < 0


def test_g_coefficients():
    c = g_series(256).coeffs
    assert abs(c[0]) < 1e-12
    assert abs(c[1] + 1) < 1e-12
    assert abs(c[2] + 1 / 3) < 1e-12
    assert np.all(c.real <= 1e-12) and np.all(np.abs(c.imag) < 1e-12)


def test_varsigma():
    assert abs(varsigma(np.pi / 2) - VARSIGMA_HALF_PI) < 1e-12
    p = pole_theta()
    lo, hi = varsigma(p - 1e-3), varsigma(p + 1e-3)
    assert lo * hi < 0 and min(abs(lo), abs(hi)) > 100
    assert abs(varsigma(np.pi - 1e-6)) < 1e-4
    with pytest.raises(PoleProximity):
        varsigma(p)


def test_pole_location():
    p = pole_theta()
    assert abs(np.cos(p) + 2 * np.log(2 * np.sin(p / 2))) < 1e-12
    assert 0.69 < p < 0.70


def test_arg_q_at_theta0():
    assert abs(arg_q_boundary(1.141377) - 0.580356 * np.pi / 2) < 5e-4


def test_arg_q_near_zero_is_logarithmic():
    # the boundary argument tends to 0 only like pi / (2 log(1/theta))
    assert abs(arg_q_boundary(1e-4) - ARG_Q_1E_4) < 1e-12
    assert abs(arg_q_boundary(1e-100) - ARG_Q_1E_100) < 1e-12
    assert abs(arg_q_boundary(1e-100)) < 0.01
    thetas = 10.0 ** -np.arange(2, 200, 10)
    vals = arg_q_boundary(thetas)
    assert np.all(np.diff(vals) < 0)
    approx = np.arctan(np.pi / (-1 - 2 * np.log(thetas))) - thetas
    assert np.max(np.abs(vals - approx)[3:]) < 1e-3


@given(st.floats(1e-3, np.pi - 1e-3))
def test_arg_q_symmetry(theta):
    assert abs(arg_q_boundary(2 * np.pi - theta) + arg_q_boundary(theta)) < 1e-12


@given(st.floats(1e-3, 2 * np.pi - 1e-3))
def test_arg_q_is_arg_of_q(theta):
    q = complex(as_function("catalog:q-dominant").value(np.exp(1j * theta)))
    assert abs(arg_q_boundary(theta) - math.atan2(q.imag, q.real)) < 1e-10


def test_theta0_beta0_alpha0():
    t, b, a, d = solve_theta0_beta0_alpha0(return_details=True)
    assert abs(t - REFERENCE["theta0"]) < 1e-5
    assert abs(b - REFERENCE["beta0"]) < 1e-5
    assert abs(a - REFERENCE["alpha0"]) < 1e-5
    assert abs(t - d["theta0_root"]) < 1e-4
    assert abs(d["root_residual_at_theta0"]) < 1e-6
    assert d["max_location"] == "(0, pi/2)"
    assert t > d["pole_theta"]


def test_paper_constants_invariants(consts):
    consts.check()
    assert 0 < consts.r0 < 1 and 0 < consts.beta0 < 1
    assert abs(consts.h_r0 - h(consts.r0)) < 1e-15


def test_report():
    rep = constants_report()
    assert set(rep["deviation"]) == set(REFERENCE)
    assert max(rep["deviation"].values()) <= 1e-5
    assert rep["cross_checks"]["r0_difference"] < 1e-8
    literal = complex(*rep["alpha0_readings"]["pi_over_2q_literal"])
    assert abs(literal.imag) > 0.5  # the literal reading is not a real number


def test_sector_containment():
    q = as_function("catalog:q-dominant")
    b0 = REFERENCE["beta0"]
    assert sector_containment_check(q, b0 + 1e-3)[0]
    ok, worst, arg = sector_containment_check(q, b0 - 1e-2)
    assert not ok
    assert abs(abs(np.angle(worst)) - 1.141377) < 0.05 and abs(worst) > 0.99
    assert sector_containment_check(as_function("expr:1+0*z"), 0.1)[0]
    with pytest.raises(ValueError):
        sector_containment_check(q, 2.5)


def test_bracket_failure():
    with pytest.raises(BracketFailure):
        _bracket_root(lambda x: x * x + 1, -1, 1)
