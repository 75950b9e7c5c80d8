import cmath

import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from univalent.errors import BadGamma, BranchTrackingFailure, DomainError, NotNormalized
from univalent.funclang import FunctionSpec, as_function, catalog_function
from univalent.series import PowerSeries
from univalent.subordination import random_R_member
from univalent.transforms import (
    IAlphaFunction,
    JAlphaFunction,
    TransformRequest,
    alexander,
    evaluate_transform,
    hr_dominant,
    i_alpha_series,
    integrate_power,
    j_alpha_series,
    transform_pointwise,
)

N = 128
KOEBE = catalog_function("koebe")
PHI = catalog_function("phi")


def koebe_j_alpha(alpha, z):
    # int_0^z (1-u)^(-2 alpha) du in closed form
    if abs(1 - 2 * alpha) < 1e-14:
        return -cmath.log(1 - z)
    return (1 - (1 - z) ** (1 - 2 * alpha)) / (1 - 2 * alpha)


def test_j_alpha_series_examples():
    k = KOEBE.series(N)
    assert np.allclose(j_alpha_series(k, 0).coeffs, [0, 1] + [0] * (N - 1), atol=1e-14)
    assert np.allclose(j_alpha_series(k, 1).coeffs[1:], 1, atol=1e-12)
    assert abs(j_alpha_series(PHI.series(N), 1).coeffs[2] - 0.5) < 1e-14


def test_i_alpha_series_examples():
    p = PHI.series(N)
    assert np.allclose(i_alpha_series(p, 1).coeffs, p.coeffs, atol=1e-13)
    assert np.allclose(i_alpha_series(p, 0).coeffs[:3], [0, 1, 0])
    psi = catalog_function("psi").series(N)
    assert np.allclose(i_alpha_series(p, -1).coeffs, psi.coeffs, atol=1e-12)


def test_series_requires_normalization():
    with pytest.raises(NotNormalized):
        j_alpha_series(PowerSeries.from_coeffs([0, 2, 1], 8), 0.5)
    with pytest.raises(NotNormalized):
        IAlphaFunction(as_function("expr:1+z"), 0.5)


def test_pointwise_examples():
    req = TransformRequest(FunctionSpec.catalog("koebe"), 1, "J_alpha")
    assert abs(transform_pointwise(req, 0.5) - 1) < 1e-13
    for name in ("koebe", "phi", "psi"):
        req = TransformRequest(FunctionSpec.catalog(name), 0, "I_alpha")
        assert abs(transform_pointwise(req, 0.3 + 0.2j) - (0.3 + 0.2j)) < 1e-14
    pw = TransformRequest(FunctionSpec.catalog("koebe"), 0.25, "J_alpha", "pointwise")
    se = TransformRequest(FunctionSpec.catalog("koebe"), 0.25, "J_alpha", "series")
    assert abs(evaluate_transform(pw, 0.5) - evaluate_transform(se, 0.5)) < 1e-9


@given(st.complex_numbers(max_magnitude=1.5, allow_nan=False, allow_infinity=False),
       st.floats(0, 0.95), st.floats(0, 2 * np.pi))
def test_koebe_closed_form(alpha, r, t):
    z = r * np.exp(1j * t)
    got = JAlphaFunction(KOEBE, alpha).value(z)
    ref = koebe_j_alpha(alpha, z)
    assert abs(got - ref) <= 1e-10 * max(1, abs(ref))


def test_phi_against_mpmath():
    mpmath.mp.dps = 30
    alpha, z = 0.7 - 0.3j, 0.6 + 0.5j

    def integrand(u):
        return mpmath.exp(alpha * mpmath.log((-u - 2 * mpmath.log(1 - u)) / u))

    ref = complex(mpmath.quad(integrand, [0, z]))
    assert abs(JAlphaFunction(PHI, alpha).value(z) - ref) < 1e-12


def test_branch_tracking_past_pi():
    # f(z)/z = exp(4iz): the principal log wraps on [0, 0.9] but the continued one does not
    f = as_function("expr:z*exp(4*i*z)")
    alpha, z = 0.8, 0.9
    ref = (cmath.exp(4j * alpha * z) - 1) / (4j * alpha)
    assert abs(JAlphaFunction(f, alpha).value(z) - ref) < 1e-12
    _, log_end = integrate_power(lambda u: np.exp(4j * u), 1, z, with_log=True)
    assert abs(log_end - 3.6j) < 1e-12


def test_branch_tracking_failure():
    # an essential oscillation near the endpoint defeats every refinement level
    with pytest.raises(BranchTrackingFailure):
        integrate_power(lambda u: np.exp(1j / (1.0000001 - u) ** 2), 0.5, 0.99)


def test_domain_error_on_singular_segment():
    with pytest.raises(DomainError):
        transform_pointwise(TransformRequest(FunctionSpec.catalog("koebe"), 1), 1.2)


def test_parameter_additivity():
    base = lambda u: np.exp(4j * u) * (1 + u) / (1 - u) ** 2  # noqa: E731
    z = 0.85 * np.exp(0.4j)
    _, L = integrate_power(base, 1, z, with_log=True)
    a, b = 0.3 - 0.2j, 1.1 + 0.5j
    assert abs(np.exp(a * L) * np.exp(b * L) - np.exp((a + b) * L)) < 1e-10
    # the continued log differs from the principal one by a multiple of 2 pi i
    m = (L - np.log(base(z))).imag / (2 * np.pi)
    assert abs(m - round(m)) < 1e-12


@pytest.mark.parametrize("alpha", [0.25, 0.5, 1, -0.5, 0.3 + 0.4j])
def test_composition_identity(alpha):
    for seed in range(20):
        f = random_R_member(seed, degree=seed % 7, order=N)
        lhs = j_alpha_series(f, alpha)
        rhs = i_alpha_series(j_alpha_series(f, 1), alpha)
        assert np.max(np.abs(lhs.coeffs - rhs.coeffs)) <= 1e-10


def test_alexander_is_j_one():
    z = 0.4 - 0.2j
    assert abs(alexander(PHI).value(z) - JAlphaFunction(PHI, 1).value(z)) < 1e-15
    req = TransformRequest(FunctionSpec.catalog("phi"), 0.3, "alexander")
    assert req.effective_alpha == 1


def test_hr_dominant_examples():
    cayley = as_function("expr:(1+z)/(1-z)")
    q = hr_dominant(cayley, 1, 16).coeffs
    n = np.arange(1, 17)
    assert q[0] == 1 and np.allclose(q[1:], 2 / (n + 1))  # 1, 1, 2/3, 1/2, 2/5
    assert np.allclose(q, as_function("catalog:q-dominant").series(16).coeffs)
    q2 = hr_dominant(cayley, 2, 8).coeffs
    assert np.allclose(q2[:5], [1, 4 / 3, 1, 4 / 5, 2 / 3])
    one = hr_dominant(PowerSeries.constant(1, 8), 0.7, 8).coeffs
    assert np.allclose(one, [1] + [0] * 8)


def test_hr_dominant_bad_gamma():
    for g in (0, -1, 1j):
        with pytest.raises(BadGamma):
            hr_dominant(PowerSeries.constant(1, 8), g)


@given(st.complex_numbers(min_magnitude=0.05, max_magnitude=3, allow_nan=False, allow_infinity=False)
       .filter(lambda g: g.real > 0.05))
def test_hr_dominant_defining_relation(gamma):
    q = as_function("catalog:q-dominant").series(64)
    qh = hr_dominant(q, gamma, 64).coeffs
    n = np.arange(qh.size)
    # gamma^-1 z qhat' + qhat = q, coefficientwise
    assert np.max(np.abs(n * qh / gamma + qh - q.coeffs)) <= 1e-12


def test_jet_matches_series_derivatives():
    f = JAlphaFunction(PHI, 0.6 + 0.2j)
    s = f.series(128)
    z = 0.3 + 0.1j
    j = f.jet(z)
    ref = s.jet(z)
    for k in range(4):
        assert abs(j[k] - ref[k]) < 1e-9 * max(1, abs(ref[k]))
