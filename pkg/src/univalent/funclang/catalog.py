"""Named test functions and the FunctionSpec front door.

``koebe``, ``phi``, ``psi`` and ``q-dominant`` carry hand-written derivative
formulas; the expression route stays available (``closed_form=False``) so the
two can be checked against each other.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field

import numpy as np

from ..errors import UnknownCatalogName
from ..jets import Jet3, jet_mul, jet_polynomial
from ..series import DEFAULT_ORDER, PowerSeries
from .functions import AnalyticFunction, ExprFunction, JetFunction, SeriesFunction


def _koebe_jet(z):
    w = 1 / (1 - np.asarray(z, dtype=complex))
    return Jet3(z * w * w, 2 * w ** 3 - w ** 2, 6 * w ** 4 - 2 * w ** 3, 24 * w ** 5 - 6 * w ** 4)


def _phi_jet(z):
    z = np.asarray(z, dtype=complex)
    w = 1 / (1 - z)
    return Jet3(-z - 2 * np.log(1 - z), -1 + 2 * w, 2 * w * w, 4 * w ** 3)


def _psi_jet(z):
    z = np.asarray(z, dtype=complex)
    w = 1 / (1 + z)
    return Jet3(-z + 2 * np.log(1 + z), -1 + 2 * w, -2 * w * w, 4 * w ** 3)


_Q_TAYLOR = np.concatenate([[1.0], 2.0 / (np.arange(1, 80) + 1)])


def _q_dominant_jet(z):
    """(-z - 2 log(1-z))/z; Taylor series near 0 where the quotient cancels."""
    z = np.asarray(z, dtype=complex)
    near = np.abs(z) < 0.25
    taylor = Jet3(*[np.zeros_like(z)] * 4)
    if near.any():
        taylor = jet_polynomial(_Q_TAYLOR, np.where(near, z, 0))
    zs = np.where(near, 0.5, z)
    phi = _phi_jet(zs)
    r = 1 / zs
    # quotient rule written out for g = phi * (1/z)
    inv = Jet3(r, -r ** 2, 2 * r ** 3, -6 * r ** 4)
    far = jet_mul(phi, inv)
    return Jet3(*[np.where(near, t, f) for t, f in zip(taylor.channels(), far.channels())])


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    formula: str
    tags: tuple
    defaults: dict = field(default_factory=dict)
    closed_form: object = None  # callable z -> Jet3
    note: str = ""


_ENTRIES = [
    CatalogEntry("koebe", "z/(1-z)^2", ("class S", "starlike", "extremal", "normalized"),
                 closed_form=_koebe_jet, note="Koebe function K"),
    CatalogEntry("phi", "-z-2*log(1-z)",
                 ("class ℝ", "class S", "normalized", "not a quasidisk"),
                 closed_form=_phi_jet, note="extremal member of the Noshiro-Warschawski class"),
    CatalogEntry("psi", "-z+2*log(1+z)",
                 ("class ℝ", "class S", "normalized", "not a quasidisk"),
                 closed_form=_psi_jet, note="companion counterexample for alpha = -1"),
    CatalogEntry("hille", "((1+z)/(1-z))^(i*epsilon)",
                 ("locally univalent", "not univalent"), {"epsilon": 1.0},
                 note="||S_f|| = 2(1+epsilon^2); f(0) = 1, not normalized"),
    CatalogEntry("krzyz-lewandowski", "z/(1-i*z)^(1-i)",
                 ("class S", "spirallike", "normalized"),
                 note="spirallike counterexample for the Alexander transform"),
    CatalogEntry("q-dominant", "(-z-2*log(1-z))/z",
                 ("convex", "dominant for class ℝ", "q(0) = 1"),
                 closed_form=_q_dominant_jet, note="best dominant of f(z)/z over class ℝ"),
    CatalogEntry("half-plane-cayley", "z/(1-z)",
                 ("class S", "convex", "Möbius", "normalized")),
    CatalogEntry("spiral-koebe", "z/(1-z)^(1+exp(2*i*lambda))",
                 ("class S", "spirallike", "extremal", "normalized"), {"lambda": np.pi / 4},
                 note="z/(1-z)^(2 e^{i lambda} cos lambda); Re{e^{-i lambda} z f'/f} > 0"),
]

CATALOG = {e.name: e for e in _ENTRIES}


def catalog_list():
    """(name, formula, tags) for every registered function."""
    return [(e.name, e.formula, e.tags) for e in _ENTRIES]


def lookup(name) -> CatalogEntry:
    try:
        return CATALOG[name]
    except KeyError:
        raise UnknownCatalogName(f"unknown catalog function {name!r}; "
                                 f"known: {', '.join(CATALOG)}") from None


def catalog_function(name, closed_form=True, **params) -> AnalyticFunction:
    entry = lookup(name)
    unknown = set(params) - set(entry.defaults)
    if unknown:
        raise UnknownCatalogName(f"{name} takes no parameter(s) {sorted(unknown)}")
    bound = {**entry.defaults, **params}
    label = name + ("" if not bound else "(" + ", ".join(f"{k}={v}" for k, v in bound.items()) + ")")
    expr = ExprFunction(entry.formula, bound, label=label)
    if closed_form and entry.closed_form is not None:
        return JetFunction(entry.closed_form, label, series_fn=expr.series)
    return expr


def _as_complex(v):
    if isinstance(v, (list, tuple)):
        return complex(v[0], v[1])
    if isinstance(v, str):
        s = v.strip().replace(" ", "").replace("j", "i")
        s = re.sub(r"(^|[+\-(])i", r"\g<1>1i", s)  # bare i means 1i
        return complex(s.replace("i", "j"))
    return complex(v)


@dataclass(frozen=True)
class FunctionSpec:
    """A test function: catalog entry, formula, or explicit Taylor coefficients."""

    kind: str
    name: str = ""
    params: dict = field(default_factory=dict)
    formula: str = ""
    coeffs: tuple = ()

    def __post_init__(self):
        if self.kind not in ("catalog", "expr", "series"):
            raise ValueError(f"unknown FunctionSpec kind {self.kind!r}")
        if self.kind == "catalog":
            lookup(self.name)
        if self.kind == "expr":
            ExprFunction(self.formula)  # parse eagerly so errors carry offsets

    @classmethod
    def catalog(cls, name, **params):
        return cls("catalog", name=name, params=params)

    @classmethod
    def expr(cls, formula):
        return cls("expr", formula=formula)

    @classmethod
    def series(cls, coeffs):
        return cls("series", coeffs=tuple(complex(c) for c in coeffs))

    def build(self, closed_form=True) -> AnalyticFunction:
        if self.kind == "catalog":
            params = {k: _as_complex(v).real if _as_complex(v).imag == 0 else _as_complex(v)
                      for k, v in self.params.items()}
            return catalog_function(self.name, closed_form=closed_form, **params)
        if self.kind == "expr":
            return ExprFunction(self.formula)
        return SeriesFunction(PowerSeries.from_coeffs(self.coeffs, max(DEFAULT_ORDER, len(self.coeffs) - 1)),
                              label="series")

    def to_json(self) -> dict:
        if self.kind == "catalog":
            out = {"kind": "catalog", "name": self.name}
            if self.params:
                out["params"] = {k: [_as_complex(v).real, _as_complex(v).imag]
                                 for k, v in self.params.items()}
            return out
        if self.kind == "expr":
            return {"kind": "expr", "formula": self.formula}
        return {"kind": "series", "coeffs": [[c.real, c.imag] for c in self.coeffs]}

    @classmethod
    def from_json(cls, obj):
        if isinstance(obj, str):
            obj = json.loads(obj)
        kind = obj.get("kind")
        if kind == "catalog":
            return cls.catalog(obj["name"], **{k: _as_complex(v) for k, v in obj.get("params", {}).items()})
        if kind == "expr":
            return cls.expr(obj["formula"])
        if kind == "series":
            return cls.series([_as_complex(c) for c in obj["coeffs"]])
        raise ValueError(f"unknown FunctionSpec kind {kind!r}")

    @classmethod
    def from_string(cls, text):
        """Parse the CLI shorthand: ``catalog:hille(epsilon=0.5)``, ``expr:z/(1-z)``,
        ``series:[[0,0],[1,0]]`` or a raw JSON object."""
        text = text.strip()
        if text.startswith("{"):
            return cls.from_json(text)
        kind, _, body = text.partition(":")
        if kind == "catalog":
            name, _, rest = body.partition("(")
            params = {}
            if rest:
                for item in rest.rstrip(")").split(","):
                    if item.strip():
                        k, _, v = item.partition("=")
                        params[k.strip()] = _as_complex(v.strip())
            return cls.catalog(name.strip(), **params)
        if kind == "expr":
            return cls.expr(body)
        if kind == "series":
            return cls.series([_as_complex(c) for c in json.loads(body)])
        raise ValueError(f"cannot parse function spec {text!r}")


def as_function(f) -> AnalyticFunction:
    """Accept an AnalyticFunction, FunctionSpec, PowerSeries or shorthand string."""
    if isinstance(f, AnalyticFunction):
        return f
    if isinstance(f, FunctionSpec):
        return f.build()
    if isinstance(f, PowerSeries):
        return SeriesFunction(f)
    if isinstance(f, str):
        return FunctionSpec.from_string(f).build()
    raise TypeError(f"cannot interpret {f!r} as a function")
