import numpy as np
import pytest

from univalent.constants import compute_constants
from univalent.criteria import Verdict, criteria_report, report_to_json, verdict_map
from univalent.funclang import as_function, catalog_function
from univalent.norms import NormOptions
from univalent.subordination import random_R_function
from univalent.transforms import JAlphaFunction

QUICK = NormOptions(n_radial=200, n_angular=360)


@pytest.fixture(scope="module")
def consts():
    return compute_constants()


def report(f, alpha, consts):
    return verdict_map(criteria_report(f, alpha, QUICK, consts))


def test_phi(consts):
    v = report(catalog_function("phi"), 0.5, consts)
    assert v["noshiro_warschawski"].passed == "pass"
    assert 0 < v["noshiro_warschawski"].measured < 1e-3
    assert v["becker"].passed == "fail" and abs(v["becker"].measured - 2) < 1e-3
    assert v["arg_f_prime_sector"].measured >= 1 - 1e-3
    assert v["J_alpha_univalent"].passed == "pass"


def test_identity_passes_everything(consts):
    v = report(as_function("expr:z"), 0.2, consts)
    assert all(x.passed == "pass" for x in v.values()), [x for x in v.values() if x.passed != "pass"]
    assert v["noshiro_warschawski"].measured == 1
    assert v["arg_f_prime_sector"].measured == 0
    assert v["becker"].measured == 0 and v["nehari"].measured == 0


def test_koebe(consts):
    v = report(catalog_function("koebe"), 1, consts)
    assert v["noshiro_warschawski"].passed == "fail"
    assert v["nehari"].passed == "fail" and abs(v["nehari"].measured - 6) < 1e-3
    assert v["J_alpha_univalent"].passed == "n/a"


def test_psi_sector_degenerates(consts):
    v = report(catalog_function("psi"), 1, consts)
    assert v["arg_f_prime_sector"].measured >= 1 - 1e-3
    assert v["arg_f_prime_sector"].passed == "inconclusive"


def test_alpha_thresholds(consts):
    f = random_R_function(3, 4)
    v = report(f, 0.9, consts)
    assert v["J_alpha_univalent"].passed == "pass"  # 0.9 <= 1/h(r0) = 0.947...
    assert v["kim_merkes_pfaltzgraff"].passed == "fail"
    assert v["J_alpha_qc_k"].passed == "pass" and v["J_alpha_qc_k"].measured == pytest.approx(0.9 * consts.h_r0)
    v = report(f, 0.95, consts)
    assert v["J_alpha_univalent"].passed == "fail"
    v = report(f, 0.3 + 0.4j, consts)
    assert v["J_alpha_stays_in_R"].passed == "fail"  # complex alpha
    assert v["I_alpha_univalent"].passed == "pass"  # |alpha| = 0.5
    assert v["I_alpha_dilatation"].passed == "fail"
    v = report(f, -1.7, consts)
    assert v["J_alpha_stays_in_R"].passed == "pass"
    assert v["J_alpha_dilatation"].measured == pytest.approx(np.sin(1.7 * consts.beta0 * np.pi / 2))


def test_report_json(consts):
    js = report_to_json(criteria_report(as_function("expr:1/z"), 0.5, QUICK, consts))
    assert all(set(d) == {"name", "measured", "threshold", "passed", "note"} for d in js)
    names = [d["name"] for d in js]
    assert len(names) == len(set(names)) == 12
    assert Verdict("x", float("inf"), 1.0, "fail").to_json()["measured"] == "inf"


@pytest.mark.parametrize("seed", range(10))
def test_j_alpha_stays_in_sector(seed, consts):
    # |arg J_alpha[f]'| <= |alpha| beta0 pi/2 for f with Re f' > 0 and real |alpha| < alpha0
    alpha = [-1.7, -0.8, 0.4, 1.2, 1.72][seed % 5]
    f = random_R_function(seed, seed % 7)
    r = 0.9999 * np.sin(0.5 * np.pi * np.arange(1, 101) / 100)
    z = (r[:, None] * np.exp(2j * np.pi * np.arange(360)[None, :] / 360)).ravel()
    d = JAlphaFunction(f, alpha).derivative_jet(z).f1
    assert np.max(np.abs(np.angle(d))) <= abs(alpha) * consts.beta0 * np.pi / 2 + 1e-6
