"""Command line front end: ``fockvar {norm,pair,project,apr,verify}``.

Exit codes: 0 success, 1 verification failure, 2 input error, 3 numerical failure.
"""

import argparse
import csv
import io
import json
import sys
import warnings

from . import exponents, functions
from .modular import NormSolveError, luxemburg_norm, modular, pairing
from .operators import MixedPolynomial, WeightSpec, apr_product, project_samples
from .quadrature import QuadratureError, QuadratureWarning
from .reports import jsonable
from .suites import DEFAULT_SEED, SUITES, run_suite

EXIT_OK, EXIT_FAILED, EXIT_INPUT, EXIT_NUMERIC = 0, 1, 2, 3


class InputError(Exception):
    pass


def _load(source):
    """JSON from a file path, ``-`` for stdin, or an inline JSON literal."""
    try:
        if source == "-":
            return json.load(sys.stdin)
        if source.lstrip()[:1] in "{[":
            return json.loads(source)
        with open(source) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {source}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON in {source}: {exc}") from exc


def _exponent(source):
    return exponents.from_json(_load(source))


def _function(source):
    return functions.from_json(_load(source))


def _integrand(source):
    obj = _load(source)
    if isinstance(obj, dict) and "mixed" in obj:
        try:
            return MixedPolynomial({(int(m), int(n)): complex(re, im) for m, n, re, im in obj["mixed"]})
        except (TypeError, ValueError) as exc:
            raise InputError(f"malformed mixed polynomial in {source}") from exc
    return functions.from_json(obj)


def _points(source):
    obj = _load(source)
    try:
        return [complex(p[0], p[1]) if isinstance(p, list) else complex(p) for p in obj]
    except (TypeError, ValueError, IndexError) as exc:
        raise InputError(f"points must be [[re, im], ...] in {source}") from exc


def _centers(text):
    try:
        return [complex(t.strip().replace(" ", "")) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise InputError(f"cannot parse centers {text!r}") from exc


def _emit(obj, fmt, out):
    if fmt == "json":
        out.write(json.dumps(jsonable(obj), sort_keys=True) + "\n")
        return
    rows = obj if isinstance(obj, list) else [obj]
    writer = csv.DictWriter(out, fieldnames=list(rows[0]), lineterminator="\n")
    writer.writeheader()
    writer.writerows(jsonable(r) for r in rows)


def cmd_norm(args, out):
    f, p = _function(args.function), _exponent(args.exponent)
    rep = luxemburg_norm(f, p, args.tol)
    at_norm = modular(f / rep.value, p, args.tol).value if rep.value > 0 else 0.0
    _emit({"norm": rep.value, "modular_at_norm": at_norm, "iterations": rep.iterations,
           "quad_error": rep.quadrature_error}, args.format, out)
    return EXIT_OK


def cmd_pair(args, out):
    if args.exponent:
        _exponent(args.exponent)
    value, err = pairing(_function(args.f), _function(args.g), args.tol, full_output=True)
    _emit({"re": value.real, "im": value.imag, "quad_error": err}, args.format, out)
    return EXIT_OK


def cmd_project(args, out):
    g = _integrand(args.g)
    sample = project_samples(g, _points(args.points), args.tol)
    result = sample.to_json()
    if args.exponent:
        p = _exponent(args.exponent)
        result["norm_g"] = luxemburg_norm(g, p, args.tol).value
        if isinstance(g, MixedPolynomial):
            result["norm_Pg"] = luxemburg_norm(g.project(), p, args.tol).value
    if args.format == "csv":
        rows = [{"re": z[0], "im": z[1], "value_re": v[0], "value_im": v[1], "quad_error": e}
                for z, v, e in zip(result["points"], result["values"], result["quad_errors"])]
        _emit(rows, "csv", out)
    else:
        _emit(result, "json", out)
    return EXIT_OK


def cmd_apr(args, out):
    try:
        w = WeightSpec.from_json(_load(args.weight))
    except (ValueError, TypeError) as exc:
        raise InputError(str(exc)) from exc
    rows = []
    for c in _centers(args.centers):
        center = c.real if c.imag == 0 else c
        rows.append({"center": center, "product": apr_product(w, args.p0, args.r, c, args.tol)})
    _emit(rows, args.format or "csv", out)
    return EXIT_OK


def cmd_verify(args, out):
    reports = run_suite(args.suite, seed=args.seed, tol=args.tol, budget=args.budget)
    if args.format == "csv":
        rows = [{"property": r.name, **{k: v for k, v in c.to_json().items() if k != "inputs"}}
                for r in reports for c in r.cases]
        _emit(rows, "csv", out)
    else:
        out.write(json.dumps([r.to_json() for r in reports], sort_keys=True) + "\n")
    for r in reports:
        print(r.summary(), file=sys.stderr)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAILED


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=1e-9, help="quadrature/solver tolerance")
    common.add_argument("--format", choices=("json", "csv"), default=None)

    parser = argparse.ArgumentParser(prog="fockvar", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("norm", parents=[common], help="Luxemburg norm of a function")
    p.add_argument("--exponent", required=True)
    p.add_argument("--function", required=True)
    p.set_defaults(run=cmd_norm)

    p = sub.add_parser("pair", parents=[common], help="weighted pairing <f, g>")
    p.add_argument("--exponent")
    p.add_argument("--f", required=True)
    p.add_argument("--g", required=True)
    p.set_defaults(run=cmd_pair)

    p = sub.add_parser("project", parents=[common], help="projection P g at sample points")
    p.add_argument("--exponent")
    p.add_argument("--g", required=True)
    p.add_argument("--points", required=True)
    p.set_defaults(run=cmd_project)

    p = sub.add_parser("apr", parents=[common], help="A_{p,r} products of a weight")
    p.add_argument("--weight", required=True)
    p.add_argument("--p0", type=float, required=True)
    p.add_argument("--r", type=float, required=True)
    p.add_argument("--centers", required=True, help='comma separated, e.g. "0,2,4,6"')
    p.set_defaults(run=cmd_apr)

    p = sub.add_parser("verify", parents=[common], help="run property suites")
    p.add_argument("--suite", choices=SUITES + ("all",), required=True)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--budget", type=int, default=None, help="max functions per suite")
    p.set_defaults(run=cmd_verify)
    return parser


def main(argv=None, out=None):
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    if not args.tol > 0:
        print("fockvar: --tol must be positive", file=sys.stderr)
        return EXIT_INPUT
    if getattr(args, "budget", None) is not None and args.budget < 1:
        print("fockvar: --budget must be at least 1", file=sys.stderr)
        return EXIT_INPUT
    if args.format is None and args.command != "apr":
        args.format = "json"
    buffer = io.StringIO()
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", QuadratureWarning)
        try:
            code = args.run(args, buffer)
        except (InputError, exponents.ExponentError, functions.FunctionFormatError) as exc:
            print(f"fockvar: input error: {exc}", file=sys.stderr)
            return EXIT_INPUT
        except (NormSolveError, QuadratureError, OverflowError, FloatingPointError) as exc:
            print(f"fockvar: numerical failure: {exc}", file=sys.stderr)
            return EXIT_NUMERIC
        except ValueError as exc:
            print(f"fockvar: input error: {exc}", file=sys.stderr)
            return EXIT_INPUT
    quad = [w for w in caught if issubclass(w.category, QuadratureWarning)]
    if quad:
        print(f"fockvar: {len(quad)} quadrature warning(s); first: {quad[0].message}", file=sys.stderr)
    for w in caught:
        if not issubclass(w.category, QuadratureWarning):
            print(f"fockvar: warning: {w.message}", file=sys.stderr)
    out.write(buffer.getvalue())
    return code


def run():
    sys.exit(main())


if __name__ == "__main__":
    run()
