"""``opmeans`` command line.

Exit codes: 0 success, 1 verification found a violation, 2 unreadable or
invalid input (nothing is written), 3 operand dimension mismatch, 4 the
regularized sequence did not converge (result and trace are still written).
Results go to stdout or ``--out``; logs go to stderr.
"""
import argparse
import csv
import io
import json
import logging
import os
import sys

from . import connections as C
from . import functions as fn
from .errors import (ConvergenceError, DimensionError, NotPSDError, OpMeansError,
                     ParameterError)
from .psd import Tolerance, matrix_from_json, matrix_to_json
from .scalar import scalar_chain_check
from .verifier import ALL_CHECKS, TrialConfig, run_suite

log = logging.getLogger("opmeans")

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_DIM, EXIT_CONVERGENCE = 0, 1, 2, 3, 4


class InputError(Exception):
    """Bad command-line input; maps to exit code 2."""


def _read_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc})") from None


def _read_matrix(path):
    try:
        return matrix_from_json(_read_json(path))
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from None


def _parse_list(text, conv, what):
    try:
        return [conv(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise InputError(f"cannot parse {what} {text!r}") from None


def _parse_params(items):
    out = {}
    for item in items or ():
        key, sep, value = item.partition("=")
        if not sep:
            raise InputError(f"--param expects key=value, got {item!r}")
        try:
            out[key.strip()] = float(value)
        except ValueError:
            raise InputError(f"--param {key}: not a number: {value!r}") from None
    return out


def _connection(args):
    """Connection from ``--mean``/``--param`` or a descriptor file, with ``--eps``."""
    try:
        if args.mean:
            if args.conn:
                raise InputError("give either a descriptor path or --mean, not both")
            conn = C.make_named(args.mean, **_parse_params(args.param))
        elif args.conn:
            conn = C.Connection.from_json(_read_json(args.conn))
        else:
            raise InputError("a connection descriptor path or --mean is required")
        if args.eps:
            conn = C.Connection(conn.backend, _parse_list(args.eps, float, "--eps"), conn.label)
    except (ParameterError, ValueError, TypeError, KeyError) as exc:
        raise InputError(f"invalid connection: {exc}") from None
    return conn


def _emit(text, out):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _num(v):
    """Shortest round-trip decimal."""
    return repr(float(v))


def _csv(rows, header):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


# ----------------------------------------------------------------------------
# subcommands

def cmd_compute(args):
    if args.format != "json":
        raise InputError("compute writes JSON only")
    conn = _connection(args)
    A, B = _read_matrix(args.A), _read_matrix(args.B)
    if A.shape != B.shape:
        log.error("dimension mismatch: A is %d x %d, B is %d x %d", *A.shape, *B.shape)
        return EXIT_DIM
    try:
        result, trace = C.eval(conn, A, B)
        code = EXIT_OK
    except ConvergenceError as exc:
        log.error("%s", exc)
        result, trace, code = exc.result, exc.trace, EXIT_CONVERGENCE
    except NotPSDError as exc:
        raise InputError(f"operand is not PSD: {exc}") from None
    payload = {"connection": conn.to_json(), "result": matrix_to_json(result),
               "trace": trace.to_json()}
    _emit(json.dumps(payload, indent=2) + "\n", args.out)
    return code


def _trial_config(args):
    seed = args.seed
    if seed is None:
        env = os.environ.get("OPMEANS_SEED")
        try:
            seed = int(env) if env else 0
        except ValueError:
            raise InputError(f"OPMEANS_SEED is not an integer: {env!r}") from None
    try:
        return TrialConfig(
            dims=tuple(_parse_list(args.dims, int, "--dims")) if args.dims else TrialConfig.dims,
            trials_per_check=args.trials, seed=seed, cond_max=args.cond_max,
            tol=Tolerance(args.tol_abs, args.tol_rel), jobs=args.jobs,
            shrink=not args.no_shrink)
    except ParameterError as exc:
        raise InputError(str(exc)) from None


def cmd_verify(args):
    conn = _connection(args)
    cfg = _trial_config(args)
    checks = tuple(_parse_list(args.checks, str.strip, "--checks")) if args.checks else ALL_CHECKS
    unknown = [c for c in checks if c not in ALL_CHECKS]
    if unknown:
        raise InputError(f"unknown checks {unknown}; choose from {list(ALL_CHECKS)}")
    log.info("verifying %s: %d trials per check, seed %d", conn.label, cfg.trials_per_check, cfg.seed)
    report = run_suite(conn, cfg, checks)
    if args.format == "json":
        text = json.dumps(report.to_json(), indent=2) + "\n"
    else:
        rows = [[c.check_name, c.trials, c.executed, c.violations, c.errors,
                 "" if c.worst_margin is None else _num(c.worst_margin)] for c in report.checks]
        text = _csv(rows, ["check", "trials", "executed", "violations", "errors", "worst_margin"])
    _emit(text, args.out)
    log.info("verdict: %s", report.verdict)
    return EXIT_OK if report.verdict == "pass" else EXIT_FAIL


def cmd_chain(args):
    xs = []
    for v in args.x:
        try:
            xs.append(float(v))
        except ValueError:
            raise InputError(f"not a number: {v!r}") from None
    rows = []
    for x in xs:
        if x == 1.0:
            rows.append({"x": x, "h": 1.0, "g": 1.0, "l": 1.0, "a": 1.0,
                         "ordered": False, "degenerate": True})
            continue
        try:
            h, g, l, a = scalar_chain_check(x)
        except ParameterError as exc:
            raise InputError(str(exc)) from None
        rows.append({"x": x, "h": h, "g": g, "l": l, "a": a,
                     "ordered": h < g < l < a, "degenerate": False})
    if args.format == "json":
        text = json.dumps(rows, indent=2) + "\n"
    else:
        keys = ["x", "h", "g", "l", "a"]
        text = _csv([[_num(r[k]) for k in keys] + [str(r["ordered"]).lower(),
                                                   str(r["degenerate"]).lower()] for r in rows],
                    keys + ["ordered", "degenerate"])
    _emit(text, args.out)
    return EXIT_OK


def cmd_list_means(args):
    entries = [{"name": name, "formula": formula, "params": list(params), "kind": "family"}
               for name, (formula, params) in C.CATALOG.items()]
    entries += [{"name": name, "formula": label, "params": [], "kind": "negative-control"}
                for name, label in sorted(fn.NEGATIVE_CONTROL_FORMULAS.items())]
    if args.format == "json":
        text = json.dumps(entries, indent=2) + "\n"
    else:
        text = _csv([[e["name"], e["kind"], " ".join(e["params"]), e["formula"]] for e in entries],
                    ["name", "kind", "params", "formula"])
    _emit(text, args.out)
    return EXIT_OK


# ----------------------------------------------------------------------------

def _add_connection_args(p):
    p.add_argument("conn", nargs="?", help="connection descriptor JSON file")
    p.add_argument("--mean", help="catalog name instead of a descriptor (e.g. geometric)")
    p.add_argument("--param", action="append", metavar="KEY=VALUE",
                   help="family parameter for --mean; repeatable")
    p.add_argument("--eps", help="comma-separated decreasing eps schedule override")


def build_parser():
    parser = argparse.ArgumentParser(prog="opmeans", description="Operator connections and means "
                                     "on positive semidefinite matrices.")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="evaluate A s B")
    _add_connection_args(p)
    p.add_argument("-A", required=True, help="matrix JSON for the left operand")
    p.add_argument("-B", required=True, help="matrix JSON for the right operand")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out", help="output file (default stdout)")
    p.set_defaults(func=cmd_compute)

    d = TrialConfig()
    p = sub.add_parser("verify", help="run the axiom checks")
    _add_connection_args(p)
    p.add_argument("--seed", type=int, help="RNG seed (default $OPMEANS_SEED or 0)")
    p.add_argument("--trials", type=int, default=d.trials_per_check)
    p.add_argument("--dims", help="comma-separated dimensions (default 1,2,3,5,8)")
    p.add_argument("--cond-max", type=float, default=d.cond_max)
    p.add_argument("--tol-abs", type=float, default=d.tol.abs)
    p.add_argument("--tol-rel", type=float, default=d.tol.rel)
    p.add_argument("--checks", help=f"comma-separated subset of {','.join(ALL_CHECKS)}")
    p.add_argument("--jobs", type=int, default=1, help="worker threads for trials")
    p.add_argument("--no-shrink", action="store_true", help="report counterexamples unshrunk")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out", help="output file (default stdout)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("chain", help="harmonic <= geometric <= logarithmic <= arithmetic at x")
    p.add_argument("x", nargs="+", help="values x > 0")
    p.add_argument("--format", choices=("json", "csv"), default="csv")
    p.add_argument("--out", help="output file (default stdout)")
    p.set_defaults(func=cmd_chain)

    p = sub.add_parser("list-means", help="show the named catalog")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out", help="output file (default stdout)")
    p.set_defaults(func=cmd_list_means)
    return parser


class _StderrHandler(logging.StreamHandler):
    """Writes to whatever ``sys.stderr`` is at emit time."""

    @property
    def stream(self):
        return sys.stderr

    @stream.setter
    def stream(self, _):
        pass


def _setup_logging(verbose):
    for h in list(log.handlers):
        if isinstance(h, _StderrHandler):
            log.removeHandler(h)
    h = _StderrHandler()
    h.setFormatter(logging.Formatter("opmeans: %(message)s"))
    log.addHandler(h)
    log.setLevel(logging.INFO if verbose else logging.WARNING)
    log.propagate = False


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    _setup_logging(args.verbose)
    try:
        return args.func(args)
    except InputError as exc:
        log.error("%s", exc)
        return EXIT_PARSE
    except DimensionError as exc:
        log.error("%s", exc)
        return EXIT_DIM
    except OpMeansError as exc:
        log.error("%s", exc)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
