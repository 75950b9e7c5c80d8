import cmath
import json

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from univalent.errors import FormulaSyntaxError, NonConstantExponent, UnknownCatalogName
from univalent.funclang import (
    CATALOG,
    FunctionSpec,
    as_function,
    catalog_function,
    catalog_list,
    eval_jet,
    eval_value,
    lookup,
    parse,
    to_text,
)
from univalent.jets import Jet3
from univalent.loewner import spirallike_check

from .conftest import random_disk_points


def test_parse_koebe_and_phi():
    for text, z, ref in (("z/(1-z)^2", 0.3, 0.3 / 0.49),
                         ("-z-2*log(1-z)", 0.3, -0.3 - 2 * np.log(0.7))):
        assert abs(eval_value(parse(text), z) - ref) < 1e-14


def test_syntax_error_offset():
    with pytest.raises(FormulaSyntaxError) as info:
        parse("z/(1-")
    assert info.value.offset == 5


def test_nonconstant_exponent():
    with pytest.raises(NonConstantExponent):
        parse("z^z")


def test_precedence():
    # ^ binds tighter than unary minus, and is right associative
    assert eval_value(parse("-z^2"), 3) == -9
    assert eval_value(parse("2^3^2"), 0) == 2 ** 9
    assert eval_value(parse("1-z-z"), 1) == -1
    assert eval_value(parse("8/z/2"), 2) == 2


def test_complex_literals():
    assert eval_value(parse("1-2i"), 0) == 1 - 2j
    assert eval_value(parse("i*z"), 2) == 2j
    assert eval_value(parse("sqrt(z)"), -4) == pytest.approx(2j)


@pytest.mark.parametrize("name, expected", [
    ("koebe", (0, 1, 4, 18)),
    ("phi", (0, 1, 2, 4)),
])
def test_catalog_jets_at_zero(name, expected):
    j = catalog_function(name).jet(0.0)
    assert np.allclose([complex(c) for c in j.channels()], expected, atol=1e-13)


def test_hille_derivative_at_zero():
    j = catalog_function("hille", epsilon=1.0).jet(0.0)
    assert abs(j.f1 - 2j) < 1e-13


def test_catalog_tags():
    assert "class ℝ" in lookup("phi").tags
    tags = lookup("koebe").tags
    assert "class S" in tags and "starlike" in tags
    names = [n for n, _, _ in catalog_list()]
    assert set(names) == set(CATALOG)
    for required in ("koebe", "phi", "psi", "hille", "krzyz-lewandowski", "q-dominant",
                     "half-plane-cayley", "spiral-koebe"):
        assert required in names


def test_unknown_catalog_name():
    with pytest.raises(UnknownCatalogName):
        FunctionSpec.catalog("nope")


def test_spiral_koebe_at_zero_lambda_is_koebe(rng):
    z = random_disk_points(rng, 200, 0.95)
    a = catalog_function("spiral-koebe", **{"lambda": 0.0}).value(z)
    b = catalog_function("koebe").value(z)
    assert np.max(np.abs(a - b)) <= 1e-12 * np.max(np.abs(b))


@pytest.mark.parametrize("name", ["koebe", "phi", "psi", "q-dominant"])
def test_closed_form_matches_expression(name, rng):
    z = random_disk_points(rng, 50, 0.9)
    a = catalog_function(name, closed_form=True).jet(z)
    b = catalog_function(name, closed_form=False).jet(z)
    for x, y in zip(a.channels(), b.channels()):
        assert np.max(np.abs(x - y) / np.maximum(np.abs(y), 1)) < 1e-11


def test_spirallike_catalog():
    ok, _ = spirallike_check(catalog_function("spiral-koebe"), np.pi / 4, n_r=50, n_theta=200)
    assert ok > 0
    # Re{e^{-i lambda} z f'/f} > 0 holds for this map with lambda = -pi/4
    ok, _ = spirallike_check(catalog_function("krzyz-lewandowski"), -np.pi / 4, n_r=50, n_theta=200)
    assert ok > 0


def test_spec_json_roundtrip():
    specs = [FunctionSpec.catalog("hille", epsilon=0.5), FunctionSpec.expr("z/(1-z)^2"),
             FunctionSpec.series([0, 1, 2])]
    for s in specs:
        again = FunctionSpec.from_json(json.dumps(s.to_json()))
        assert again.to_json() == s.to_json()
        assert abs(again.build().value(0.2) - s.build().value(0.2)) < 1e-14


def test_spec_from_string():
    f = as_function("catalog:hille(epsilon=0.5)")
    ref = cmath.exp(0.5j * cmath.log(1.2 / 0.8))
    assert abs(f.value(0.2) - ref) < 1e-14
    assert FunctionSpec.from_string("series:[[0,0],[1,0],[2,0]]").coeffs == (0, 1, 2)
    assert FunctionSpec.from_string('{"kind":"catalog","name":"phi"}').name == "phi"


_atoms = st.sampled_from(["z", "2", "0.5", "i", "(1-z)", "(1+z)", "(2+z)"])


@st.composite
def formulas(draw, depth=3):
    if depth == 0 or draw(st.booleans()):
        return draw(_atoms)
    kind = draw(st.sampled_from(["bin", "call", "pow", "neg"]))
    if kind == "bin":
        op = draw(st.sampled_from("+-*/"))
        return f"({draw(formulas(depth - 1))}{op}{draw(formulas(depth - 1))})"
    if kind == "call":
        fn = draw(st.sampled_from(["exp", "log", "sqrt"]))
        return f"{fn}({draw(formulas(depth - 1))})"
    if kind == "pow":
        return f"({draw(formulas(depth - 1))})^{draw(st.sampled_from(['2', '0.5', '-1', '(1+i)']))}"
    return f"-{draw(formulas(depth - 1))}"


@given(formulas())
def test_pretty_print_roundtrip(text):
    a = parse(text)
    b = parse(to_text(a))
    z = np.random.default_rng(3).uniform(-0.6, 0.6, 20) + 0.3j
    with np.errstate(all="ignore"):
        va = eval_value(a, z)
        vb = eval_value(b, z)
    va, vb = np.broadcast_to(va, z.shape), np.broadcast_to(vb, z.shape)
    fin = np.isfinite(va)
    assert np.array_equal(fin, np.isfinite(vb))
    assert np.all(np.abs(va[fin] - vb[fin]) <= 1e-13 * np.maximum(np.abs(va[fin]), 1))


@given(formulas())
def test_jet_value_channel_matches_direct(text):
    node = parse(text)
    z = 0.21 + 0.13j
    try:
        direct = complex(eval_value(node, z))
        j = eval_jet(node, z)
    except Exception:
        return  # singular at this point; covered by the domain tests
    assert abs(complex(j.f0) - direct) <= 1e-13 * max(1, abs(direct))


def test_eval_jet_identity_seed():
    j = eval_jet(parse("z^3"), Jet3.identity(0.5).f0)
    assert np.allclose([complex(c) for c in j.channels()], [0.125, 0.75, 3, 6])
