"""Three interpretations of an AST: plain values, Jet3 arithmetic, power series."""
from __future__ import annotations

import numpy as np

from ..errors import DivisorConstantZero, DomainError, ZeroValue
from ..jets import Jet3, jet_exp, jet_log, jet_pow
from ..series import PowerSeries, series_exp, series_log, series_pow, series_shift_div_z
from .parser import Call, Const, Neg, Node, Var


def _const_value(node: Node) -> complex:
    return complex(eval_value(node, 0j))


def _is_int(c: complex) -> bool:
    return c.imag == 0 and float(c.real).is_integer()


def _check_scalar(out, what):
    if np.ndim(out) == 0 and not np.isfinite(out):
        raise DomainError(f"{what} is not finite")
    return out


def eval_value(node: Node, z):
    """Direct complex evaluation (principal branches); vectorized over ``z``."""
    z = np.asarray(z, dtype=complex) if np.ndim(z) else complex(z)
    with np.errstate(all="ignore"):
        out = _value(node, z)
    return _check_scalar(out, "function value")


def _value(node, z):
    if isinstance(node, Var):
        return z
    if isinstance(node, Const):
        return node.value
    if isinstance(node, Neg):
        return -_value(node.operand, z)
    if isinstance(node, Call):
        a = _value(node.arg, z)
        if node.name == "exp":
            return np.exp(a)
        if np.ndim(a) == 0 and a == 0:
            if node.name == "sqrt":
                return 0j
            raise DomainError("log(0)")
        if node.name == "log":
            return np.log(a)
        return np.sqrt(a)
    a = _value(node.left, z)
    b = _value(node.right, z)
    if node.op == "+":
        return a + b
    if node.op == "-":
        return a - b
    if node.op == "*":
        return a * b
    if node.op == "/":
        if np.ndim(b) == 0 and b == 0:
            raise DomainError("division by zero")
        return a / b
    # "^": exponent is constant by construction
    c = complex(b)
    if _is_int(c):
        n = int(c.real)
        if n < 0 and np.ndim(a) == 0 and a == 0:
            raise DomainError("negative power of zero")
        return a ** n if n >= 0 else 1 / a ** (-n)
    if np.ndim(a) == 0 and a == 0:
        if c.real > 0:
            return 0j
        raise DomainError("0 raised to a power with non-positive real part")
    return np.exp(c * np.log(a))


def eval_jet(node: Node, z) -> Jet3:
    """Jet of the expression at ``z`` (scalar or array)."""
    with np.errstate(all="ignore"):
        try:
            jet = _jet(node, Jet3.identity(z))
        except ZeroValue as exc:
            raise DomainError(str(exc)) from exc
    if np.ndim(jet.f0) == 0 and not all(np.isfinite(c) for c in jet.channels()):
        raise DomainError(f"jet not finite at z = {z}")
    return jet


def _jet(node, zj):
    if isinstance(node, Var):
        return zj
    if isinstance(node, Const):
        return Jet3.constant(node.value, like=zj.f0)
    if isinstance(node, Neg):
        return -_jet(node.operand, zj)
    if isinstance(node, Call):
        a = _jet(node.arg, zj)
        if node.name == "exp":
            return jet_exp(a)
        if node.name == "log":
            return jet_log(a)
        return jet_pow(a, 0.5)
    if node.op == "^":
        return jet_pow(_jet(node.left, zj), _const_value(node.right))
    a = _jet(node.left, zj)
    b = _jet(node.right, zj)
    if node.op == "+":
        return a + b
    if node.op == "-":
        return a - b
    if node.op == "*":
        return a * b
    return a / b


def eval_series(node: Node, order: int, guard: int = 8) -> PowerSeries:
    """Taylor series at 0 through ``order``.

    Quotients whose divisor vanishes at 0 are allowed when the numerator
    vanishes to the same order (removable singularities such as ``log(1-z)/z``);
    each cancelled power of z costs one order, absorbed by ``guard``.
    """
    s = _series(node, order + guard)
    if s.truncation_order < order:
        raise DomainError(f"series lost too many orders ({s.truncation_order} < {order})")
    return s.truncate(order)


def _leading_zeros(s: PowerSeries, tol=1e-13):
    c = np.abs(s.coeffs)
    scale = max(1.0, c.max())
    k = 0
    while k < c.size - 1 and c[k] <= tol * scale:
        k += 1
    return k


def _principal_normalized(s: PowerSeries):
    c0 = s.coeffs[0]
    if c0 == 0:
        raise DomainError("log/power of a series vanishing at 0")
    return c0, s / c0


def _series(node, order):
    if isinstance(node, Var):
        return PowerSeries.variable(order)
    if isinstance(node, Const):
        return PowerSeries.constant(node.value, order)
    if isinstance(node, Neg):
        return -_series(node.operand, order)
    if isinstance(node, Call):
        a = _series(node.arg, order)
        if node.name == "exp":
            return series_exp(a)
        c0, unit = _principal_normalized(a)
        if node.name == "log":
            return series_log(unit) + np.log(c0)
        return series_pow(unit, 0.5) * np.sqrt(c0)
    if node.op == "^":
        c = _const_value(node.right)
        a = _series(node.left, order)
        if _is_int(c) and c.real >= 0:
            out = PowerSeries.constant(1, a.truncation_order)
            for _ in range(int(c.real)):
                out = out * a
            return out
        c0, unit = _principal_normalized(a)
        return series_pow(unit, c) * np.exp(c * np.log(c0))
    a = _series(node.left, order)
    b = _series(node.right, order)
    if node.op == "+":
        return a + b
    if node.op == "-":
        return a - b
    if node.op == "*":
        return a * b
    k = _leading_zeros(b)
    if k:
        if _leading_zeros(a) < k:
            raise DivisorConstantZero("quotient has a pole at z = 0")
        for _ in range(k):
            a, b = series_shift_div_z(a), series_shift_div_z(b)
    return a / b
