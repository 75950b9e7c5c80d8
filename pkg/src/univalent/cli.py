"""Command-line front end.

    univalent constants | norm | transform | criteria | extend | subord | selftest

Structured results are JSON (floats with 17 significant digits, complex
numbers as [re, im]); the extension grid is CSV.  Every JSON artifact carries
the configuration echo and a sha256 of the inputs.

Exit codes: 0 success, 1 selftest ran with failing criteria, 2 solver
failure, 3 evaluation failure, 4 parse or configuration error.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import math
import re
import sys
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from . import errors as E

EXIT_OK, EXIT_SELFTEST, EXIT_SOLVER, EXIT_EVAL, EXIT_PARSE = 0, 1, 2, 3, 4

_SOLVER = (E.BracketFailure, E.NewtonDivergence, E.ExtensionAborted)
_EVAL = (E.BranchTrackingFailure, E.DomainError, E.ZeroValue, E.CriticalPoint, E.AllPointsSingular, E.NotSpirallike,
         E.PoleProximity, E.DivergentP, E.PoleAtMinusOne, E.DegenerateDenominator,
         E.NotNormalized, E.DivisorConstantZero, E.NonzeroConstantTerm, E.BadGamma)
_PARSE = (E.FormulaSyntaxError, E.UnknownCatalogName)


class ConfigError(ValueError):
    pass


@dataclass
class CliConfig:
    truncation_order: int = 256
    grid: dict = field(default_factory=lambda: {"n_radial": 400, "n_angular": 720, "r_max": 0.9999})
    solver_tol: float = 1e-12
    seed: int = 0
    output_path: str | None = None

    def validate(self):
        if self.truncation_order < 1:
            raise ConfigError("truncation_order must be >= 1")
        if not self.solver_tol > 0:
            raise ConfigError("solver_tol must be positive")
        r = self.grid.get("r_max", 0.9999)
        if not 0 < r < 1:
            raise ConfigError("grid.r_max must lie in (0, 1)")
        for k in ("n_radial", "n_angular"):
            if int(self.grid.get(k, 1)) < 1:
                raise ConfigError(f"grid.{k} must be positive")
        return self


# ---------------------------------------------------------------- serialization


def _plain(obj):
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_plain(v) for v in obj.tolist()]
    if isinstance(obj, (complex, np.complexfloating)):
        return [float(obj.real), float(obj.imag)]
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    return obj


def _encode(obj, indent=0):
    pad, pad_in = "  " * indent, "  " * (indent + 1)
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, float):
        if math.isnan(obj):
            return '"NaN"'
        if math.isinf(obj):
            return '"Infinity"' if obj > 0 else '"-Infinity"'
        return format(obj, ".17g")
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=False)
    if isinstance(obj, list):
        if not obj:
            return "[]"
        if all(not isinstance(v, (list, dict)) for v in obj):
            return "[" + ", ".join(_encode(v) for v in obj) + "]"
        return "[\n" + ",\n".join(pad_in + _encode(v, indent + 1) for v in obj) + "\n" + pad + "]"
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad_in}{json.dumps(k, ensure_ascii=False)}: {_encode(v, indent + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj) -> str:
    """Deterministic JSON: insertion-ordered keys, 17 significant digits."""
    return _encode(_plain(obj)) + "\n"


def parse_complex(text) -> complex:
    """'a+bi', 'bi', 'i', '-2.5' ...; 'j' is accepted for 'i'."""
    from .funclang.catalog import _as_complex

    if not str(text).strip():
        raise ConfigError("empty complex number")
    try:
        return _as_complex(str(text))
    except ValueError:
        raise ConfigError(f"cannot parse complex number {text!r}") from None


def _grid_shape(text):
    m = re.fullmatch(r"(\d+)x(\d+)", text.strip())
    if not m:
        raise ConfigError(f"grid must look like 50x180, got {text!r}")
    return int(m.group(1)), int(m.group(2))


# ---------------------------------------------------------------- commands


def _norm_opts(cfg):
    from .norms import NormOptions

    g = cfg.grid
    return NormOptions(int(g.get("n_radial", 400)), int(g.get("n_angular", 720)), float(g.get("r_max", 0.9999)))


def cmd_constants(args, cfg):
    from .constants import constants_report

    return constants_report(cfg.solver_tol)


def cmd_norm(args, cfg):
    from .funclang import FunctionSpec
    from .norms import norm_of
    from .transforms import IAlphaFunction, JAlphaFunction

    spec = FunctionSpec.from_string(args.function)
    f = spec.build()
    if args.alpha is not None:
        alpha = parse_complex(args.alpha)
        f = (IAlphaFunction if args.transform == "I" else JAlphaFunction)(f, alpha)
    res = norm_of(f, args.what, _norm_opts(cfg))
    return {"function": spec.to_json(), "what": args.what,
            "transform": args.transform if args.alpha is not None else None,
            "alpha": parse_complex(args.alpha) if args.alpha is not None else None,
            "norm": res.to_json()}


def cmd_transform(args, cfg):
    from .funclang import FunctionSpec
    from .transforms import TransformRequest, evaluate_transform

    op = {"J": "J_alpha", "I": "I_alpha", "alexander": "alexander"}[args.op]
    spec = FunctionSpec.from_string(args.function)
    req = TransformRequest(spec, parse_complex(args.alpha), op, args.representation, cfg.truncation_order)
    zs = [parse_complex(z) for z in args.eval]
    out = {"function": spec.to_json(), "op": op, "alpha": req.effective_alpha,
           "representation": args.representation}
    if zs:
        vals = evaluate_transform(req, np.array(zs))
        out["values"] = [{"z": z, "value": complex(v)} for z, v in zip(zs, np.atleast_1d(vals))]
    if args.coeffs:
        out["coeffs"] = req.series().coeffs[: args.coeffs + 1]
    return out


def cmd_criteria(args, cfg):
    from .criteria import criteria_report, report_to_json
    from .funclang import FunctionSpec

    spec = FunctionSpec.from_string(args.function)
    alpha = parse_complex(args.alpha)
    return {"function": spec.to_json(), "alpha": alpha,
            "verdicts": report_to_json(criteria_report(spec.build(), alpha, _norm_opts(cfg)))}


def cmd_extend(args, cfg):
    from .funclang import FunctionSpec
    from .loewner import ExtensionOptions, extension_grid

    spec = FunctionSpec.from_string(args.function)
    n_r, n_t = _grid_shape(args.grid)
    opts = ExtensionOptions(r_out_max=args.rout, n_r=n_r, n_theta=n_t, fd_step=args.fd_step)
    aborted = None
    try:
        grid = extension_grid(spec.build(), args.lam, opts)
    except E.ExtensionAborted as exc:
        grid, aborted = exc.grid, exc
    if grid is not None and args.out:
        Path(args.out).write_text(grid.to_csv())
    summary = grid.summary() if grid is not None else {}
    summary["function"] = spec.to_json()
    summary["csv"] = args.out
    if aborted is not None:
        summary["aborted"] = str(aborted)
        raise _Partial(summary, aborted)
    return summary


def cmd_subord(args, cfg):
    from .funclang import FunctionSpec
    from .subordination import DividedByZ, random_R_function, subordination_check

    q = FunctionSpec.from_string(args.dominant)
    results = []
    if args.random:
        for s in range(args.random):
            f = random_R_function(cfg.seed + s, s % 7)
            ok, where, val = subordination_check(DividedByZ(f), q.build(), args.samples)
            results.append({"function": f.label, "subordinate": ok, "worst_z": where, "worst_value": val})
    if args.function:
        spec = FunctionSpec.from_string(args.function)
        f = spec.build()
        if args.divide_by_z:
            f = DividedByZ(f)
        ok, where, val = subordination_check(f, q.build(), args.samples)
        results.append({"function": spec.to_json(), "divided_by_z": args.divide_by_z,
                        "subordinate": ok, "worst_z": where, "worst_value": val})
    if not results:
        raise ConfigError("subord needs --function or --random N")
    return {"dominant": q.to_json(), "samples": args.samples, "results": results}


def cmd_selftest(args, cfg):
    from .acceptance import run_all

    only = {int(x) for x in args.only.split(",")} if args.only else None
    results = run_all(only)
    for r in results:
        print(r.describe() if args.verbose else
              f"[{'PASS' if r.passed else 'FAIL'}] {r.number:>2}. {r.title} ({r.seconds:.1f} s)")
    n_pass = sum(r.passed for r in results)
    print(f"{n_pass}/{len(results)} criteria pass")
    return {"passed": n_pass, "total": len(results),
            "criteria": [{"number": r.number, "title": r.title, "passed": r.passed,
                          "failed_checks": [c.label for c in r.failures()]} for r in results]}


class _Partial(Exception):
    def __init__(self, payload, cause):
        super().__init__(str(cause))
        self.payload, self.cause = payload, cause


# ---------------------------------------------------------------- parser


def _add_globals(p, suppress):
    d = argparse.SUPPRESS if suppress else None
    p.add_argument("--config", default=d, help="JSON file with CliConfig fields")
    p.add_argument("--out", default=d, help="output path (default: stdout)")
    p.add_argument("--seed", type=int, default=d)
    p.add_argument("--tol", type=float, default=d, help="solver tolerance")
    p.add_argument("--trunc", type=int, default=d, help="series truncation order")


def build_parser():
    ap = argparse.ArgumentParser(prog="univalent", description=__doc__.split("\n\n")[0])
    _add_globals(ap, False)
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        p = sub.add_parser(name, help=help_)
        _add_globals(p, True)
        p.set_defaults(handler=fn)
        return p

    add("constants", cmd_constants, "reproduce r0, h(r0), theta0, beta0, alpha0")

    p = add("norm", cmd_norm, "hyperbolic norm of T_f or S_f")
    p.add_argument("--what", choices=("T", "S"), required=True)
    p.add_argument("--function", required=True, help="catalog:NAME(k=v), expr:FORMULA, series:[...] or JSON")
    p.add_argument("--transform", choices=("J", "I"), default="J")
    p.add_argument("--alpha", default=None, help="apply J_alpha or I_alpha first")
    p.add_argument("--grid", default=None, help="n_radial x n_angular, e.g. 400x720")
    p.add_argument("--rmax", type=float, default=None)

    p = add("transform", cmd_transform, "evaluate J_alpha, I_alpha or the Alexander transform")
    p.add_argument("--op", choices=("J", "I", "alexander"), required=True)
    p.add_argument("--alpha", default="1")
    p.add_argument("--function", required=True)
    p.add_argument("--eval", nargs="*", default=[], metavar="Z")
    p.add_argument("--representation", choices=("pointwise", "series"), default="pointwise")
    p.add_argument("--coeffs", type=int, default=0, help="also print the first N+1 coefficients")

    p = add("criteria", cmd_criteria, "univalence and extension criteria report")
    p.add_argument("--function", required=True)
    p.add_argument("--alpha", default="1")
    p.add_argument("--grid", default=None, help="norm grid, n_radial x n_angular")
    p.add_argument("--rmax", type=float, default=None)

    p = add("extend", cmd_extend, "explicit extension of a spirallike map on an exterior grid")
    p.add_argument("--function", required=True)
    p.add_argument("--lambda", dest="lam", type=float, default=0.0)
    p.add_argument("--grid", default="50x180")
    p.add_argument("--rout", type=float, default=3.0)
    p.add_argument("--fd-step", type=float, default=1e-4)
    p.add_argument("--summary", default=None, help="path for the JSON summary (default: stdout)")

    p = add("subord", cmd_subord, "range containment against a convex dominant")
    p.add_argument("--function", default=None)
    p.add_argument("--dominant", default="catalog:q-dominant")
    p.add_argument("--divide-by-z", action="store_true", help="test f(z)/z instead of f")
    p.add_argument("--random", type=int, default=0, help="also test N random members (uses --seed)")
    p.add_argument("--samples", type=int, default=4096)

    p = add("selftest", cmd_selftest, "run the acceptance suite")
    p.add_argument("--only", default=None, help="comma-separated criterion numbers")
    p.add_argument("--verbose", "-v", action="store_true")
    return ap


def _load_config(args) -> CliConfig:
    cfg = CliConfig()
    if args.config:
        try:
            data = json.loads(Path(args.config).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {args.config}: {exc}") from None
        unknown = set(data) - set(CliConfig.__dataclass_fields__)
        if unknown:
            raise ConfigError(f"unknown config keys {sorted(unknown)}")
        for k, v in data.items():
            setattr(cfg, k, {**cfg.grid, **v} if k == "grid" else v)
    if args.seed is not None:
        cfg.seed = args.seed
    if args.tol is not None:
        cfg.solver_tol = args.tol
    if args.trunc is not None:
        cfg.truncation_order = args.trunc
    if getattr(args, "grid", None) and args.command in ("norm", "criteria"):
        n_r, n_t = _grid_shape(args.grid)
        cfg.grid = {**cfg.grid, "n_radial": n_r, "n_angular": n_t}
    if getattr(args, "rmax", None) is not None:
        cfg.grid = {**cfg.grid, "r_max": args.rmax}
    if args.command != "extend":
        cfg.output_path = args.out
    return cfg.validate()


def _input_hash(args):
    keys = sorted(k for k in vars(args) if k not in ("handler",))
    canon = json.dumps({k: getattr(args, k) for k in keys}, sort_keys=True, default=str)
    return hashlib.sha256(canon.encode()).hexdigest()


def _emit(payload, path):
    text = dumps(payload)
    if path:
        Path(path).write_text(text)
    else:
        sys.stdout.write(text)


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code not in (0, None) else EXIT_OK
    try:
        cfg = _load_config(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE

    def envelope(result, status="ok"):
        return {"command": args.command, "status": status, "config": asdict(cfg),
                "input_sha256": _input_hash(args), "result": result}

    json_path = args.summary if args.command == "extend" else cfg.output_path
    try:
        result = args.handler(args, cfg)
    except _Partial as part:
        _emit(envelope(part.payload, "solver_failure"), json_path)
        print(f"error: {part.cause}", file=sys.stderr)
        return EXIT_SOLVER
    except (ConfigError, *_PARSE, ValueError) as exc:
        if isinstance(exc, _EVAL):
            print(f"evaluation error: {exc}", file=sys.stderr)
            return EXIT_EVAL
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except _SOLVER as exc:
        print(f"solver failure: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    except _EVAL as exc:
        print(f"evaluation error: {exc}", file=sys.stderr)
        return EXIT_EVAL
    if args.command == "selftest":
        if cfg.output_path:
            _emit(envelope(result), cfg.output_path)
        return EXIT_OK if result["passed"] == result["total"] else EXIT_SELFTEST
    _emit(envelope(result), json_path)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
