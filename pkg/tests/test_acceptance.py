"""Acceptance suite: one pass/fail line per criterion, at the stated tolerances.

Each test runs the corresponding check from ``univalent.acceptance`` and, on
failure, prints every measured quantity next to its target.
"""
import pytest

from univalent import acceptance as A


def _check(fn):
    result = fn()
    assert result.passed, "\n" + result.describe()


def test_criterion_01_constants_reproduction():
    _check(A.criterion_1)


def test_criterion_02_cross_characterization():
    _check(A.criterion_2)


def test_criterion_03_schwarzian_norm_formulas():
    _check(A.criterion_3)


def test_criterion_04_norm_scaling_identity():
    _check(A.criterion_4)


def test_criterion_05_sharp_bound_and_subordination():
    _check(A.criterion_5)


def test_criterion_06_series_negativity():
    _check(A.criterion_6)


def test_criterion_07_oracle_equivalence():
    _check(A.criterion_7)


def test_criterion_08_jet_correctness():
    _check(A.criterion_8)


def test_criterion_09_dilatation_evaluators():
    _check(A.criterion_9)


def test_criterion_10_spirallike_extension():
    _check(A.criterion_10)


def test_criterion_11_report_card():
    _check(A.criterion_11)


def test_criterion_12_schwarzian_inequality():
    _check(A.criterion_12)


@pytest.mark.parametrize("n", range(1, 13))
def test_registry_is_complete(n):
    assert A.CRITERIA[n - 1].__name__ == f"criterion_{n}"
