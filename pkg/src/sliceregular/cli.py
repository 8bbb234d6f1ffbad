"""Command-line front door: evaluate, convert, decompose, approximate, verify.

All input and output is JSON (stdin/stdout, or ``--in``/``--out``).
Exit status: 0 when the computation succeeds (and any verdict is
consistent/pass), 1 when a check fails or a computation concludes
negatively (violation, NotApplicable, missed budget), 2 on usage errors
(bad flags, malformed JSON, inputs outside an operation's domain).
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import jsonio
from .approximation import approximate_matrix_2x2, approximate_scalar
from .errors import (
    AssemblyError,
    ConvergenceError,
    DomainError,
    FormatError,
    NotApplicableError,
    PairingError,
    PreconditionError,
    SingularityError,
)
from .matrix import chi, norms, singular_values, unchi
from .principles import decompose_at_max
from .quaternion import sigma_distance
from .series import (
    MatrixSeries,
    ScalarSeries,
    regular_conjugate,
    regular_reciprocal,
    star_product,
    symmetrization,
)
from .verify import SUITES, RunConfig, run_suite

ENV_SEED = "SLICEREGULAR_SEED"

USAGE_EXIT = 2
FAIL_EXIT = 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sliceregular",
        description="Quaternionic slice-regular matrix functions: evaluate, "
                    "convert, decompose, approximate, and verify.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_text, needs_input=True):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--in", dest="in_path", default=None,
                       help="input JSON file (default: stdin)")
        p.add_argument("--out", dest="out_path", default=None,
                       help="also write the JSON result to this path")
        p.add_argument("--seed", type=int, default=None,
                       help=f"RNG seed (fallback: ${ENV_SEED}, then 0)")
        p.add_argument("--samples", type=int, default=4096)
        p.add_argument("--tol", action="append", default=[], metavar="NAME=VALUE",
                       help="override a named tolerance (repeatable)")
        p.add_argument("--rho", type=float, default=0.9)
        p.add_argument("--epsilon", type=float, default=1e-2)
        p.add_argument("--r", type=float, default=0.25, help="annulus inner radius")
        p.add_argument("--R", dest="R", type=float, default=1.0,
                       help="annulus outer radius")
        p.set_defaults(needs_input=needs_input)
        return p

    add("eval", "evaluate a scalar or matrix series at a point")
    add("chi", "complex adjoint of a square quaternion matrix")
    add("unchi", "invert the complex adjoint map")
    add("norms", "Frobenius and operator norm of a matrix")
    add("svd", "singular values of a square matrix (descending)")
    add("star", "*-product of two scalar series")
    add("conj", "regular conjugate of a scalar series")
    add("symm", "symmetrization f * f^c")
    add("recip", "regular reciprocal f^{-*} evaluated at a point")
    add("extend", "regular extension of slice data at a point")
    add("sigma", "sigma distance between two quaternions")
    add("decompose", "norm-maximum decomposition of a matrix series")
    add("approx-scalar", "rational inner approximation of a scalar series")
    add("approx-2x2", "rational inner approximation of a norm-one 2x2 series")
    verify = add("verify", "run a named verification suite", needs_input=False)
    verify.add_argument("suite", choices=sorted(SUITES) + ["all"])
    return parser


def _resolve_seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get(ENV_SEED)
    if env is not None:
        try:
            return int(env)
        except ValueError as exc:
            raise FormatError(f"${ENV_SEED} must be an integer, got {env!r}") from exc
    return 0


def _parse_tolerances(pairs) -> dict:
    out = {}
    for pair in pairs:
        name, sep, value = pair.partition("=")
        if not sep or not name:
            raise FormatError(f"--tol expects NAME=VALUE, got {pair!r}")
        try:
            out[name] = float(value)
        except ValueError as exc:
            raise FormatError(f"--tol {name}: {value!r} is not a number") from exc
    return out


def _read_input(args):
    if args.in_path is not None:
        with open(args.in_path, "r", encoding="utf-8") as fh:
            text = fh.read()
    else:
        text = sys.stdin.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(
            f"malformed JSON at line {exc.lineno} column {exc.colno}: {exc.msg}"
        ) from exc


def _need(data, key):
    if not isinstance(data, dict) or key not in data:
        raise FormatError(f"input object needs a {key!r} field")
    return data[key]


def _scalar_series(obj) -> ScalarSeries:
    series = jsonio.parse_series(obj)
    if not isinstance(series, ScalarSeries):
        raise FormatError("expected a scalar series")
    return series


def _run_command(args) -> tuple:
    """Returns (result_object, exit_code)."""
    seed = _resolve_seed(args)
    if args.command == "verify":
        config = RunConfig(
            seed=seed,
            samples=args.samples,
            rho=args.rho,
            epsilon=args.epsilon,
            annulus_inner=args.r,
            annulus_outer=args.R,
            tolerances=_parse_tolerances(args.tol),
        )
        report = run_suite(args.suite, config)
        return report, (0 if report["pass"] else FAIL_EXIT)

    data = _read_input(args)

    if args.command == "eval":
        series = jsonio.parse_series(_need(data, "series"))
        point = jsonio.parse_point(_need(data, "point"))
        value = series.eval(point)
        if isinstance(series, MatrixSeries):
            return {"value": jsonio.matrix_to_json(value)}, 0
        return {"value": value.to_list()}, 0

    if args.command == "chi":
        matrix = jsonio.parse_matrix(data)
        return jsonio.chi_block_to_json(chi(matrix)), 0

    if args.command == "unchi":
        assembled = jsonio.parse_chi_block(data)
        return jsonio.matrix_to_json(unchi(assembled)), 0

    if args.command == "norms":
        result = norms(jsonio.parse_matrix(data))
        return {"frobenius": result.frobenius, "operator": result.operator}, 0

    if args.command == "svd":
        return {"singular_values": singular_values(jsonio.parse_matrix(data))}, 0

    if args.command == "star":
        f = _scalar_series(_need(data, "f"))
        g = _scalar_series(_need(data, "g"))
        return jsonio.scalar_series_to_json(star_product(f, g)), 0

    if args.command == "conj":
        return jsonio.scalar_series_to_json(
            regular_conjugate(_scalar_series(data))), 0

    if args.command == "symm":
        return jsonio.scalar_series_to_json(
            symmetrization(_scalar_series(data))), 0

    if args.command == "recip":
        f = _scalar_series(_need(data, "f"))
        point = jsonio.parse_point(_need(data, "point"))
        return {"value": regular_reciprocal(f, point).to_list()}, 0

    if args.command == "extend":
        pair = jsonio.parse_slice_series(_need(data, "slice_series"))
        point = jsonio.parse_point(_need(data, "point"))
        return {"value": pair.extend(point).to_list()}, 0

    if args.command == "sigma":
        p = jsonio.parse_quaternion(_need(data, "p"))
        q = jsonio.parse_quaternion(_need(data, "q"))
        return {"sigma": sigma_distance(p, q)}, 0

    if args.command == "decompose":
        series = jsonio.parse_series(_need(data, "series"))
        if not isinstance(series, MatrixSeries):
            raise FormatError("decompose expects a matrix series")
        q0 = jsonio.parse_point(data.get("q0", 0.0))
        dec = decompose_at_max(series, q0, samples=args.samples, seed=seed)
        return {
            "U": jsonio.matrix_to_json(dec.u),
            "V": jsonio.matrix_to_json(dec.v),
            "s": dec.s,
            "G": jsonio.matrix_series_to_json(dec.g),
            "q0": dec.q0.to_list(),
            "max_offdiag": dec.max_offdiag,
            "reconstruction_residual": dec.reconstruction_residual,
            "norm_preservation_dev": dec.norm_preservation_dev,
            "seed": dec.seed,
        }, 0

    if args.command == "approx-scalar":
        series = _scalar_series(_need(data, "series"))
        approx = approximate_scalar(series, args.epsilon, rho=args.rho, seed=seed)
        return approx.to_dict(), 0

    if args.command == "approx-2x2":
        series = jsonio.parse_series(_need(data, "series"))
        if not isinstance(series, MatrixSeries):
            raise FormatError("approx-2x2 expects a matrix series")
        approx = approximate_matrix_2x2(series, args.epsilon, rho=args.rho,
                                        samples=args.samples, seed=seed)
        return {
            "U": jsonio.matrix_to_json(approx.u),
            "V": jsonio.matrix_to_json(approx.v),
            "r": approx.r.to_dict(),
            "measured_sup": approx.measured_sup,
        }, 0

    raise FormatError(f"unknown command {args.command!r}")


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors and 0 on --help; keep its code
        return int(exc.code or 0)

    try:
        result, code = _run_command(args)
    except (FormatError, DomainError, SingularityError, PreconditionError,
            PairingError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_EXIT
    except NotApplicableError as exc:
        payload = jsonio.dumps({"error": "not_applicable", "message": str(exc)})
        print(payload)
        return FAIL_EXIT
    except (ConvergenceError, AssemblyError) as exc:
        payload = {"error": type(exc).__name__, "message": str(exc)}
        if getattr(exc, "best_error", None) is not None:
            payload["best_error"] = exc.best_error
            payload["best_depth"] = exc.best_depth
        if getattr(exc, "measured_sup", None) is not None:
            payload["measured_sup"] = exc.measured_sup
        print(jsonio.dumps(payload))
        return FAIL_EXIT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_EXIT

    text = jsonio.dumps(result)
    print(text)
    if args.out_path:
        with open(args.out_path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
