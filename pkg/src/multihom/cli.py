"""Command-line front end: ``multihom {table1,measure,evolve,verify,state}``.

Exit codes: 0 success, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import warnings

from . import table1 as t1
from .errors import DomainError, ResourceLimitError
from .multiport import UnitaryMatrix, output_distribution, qft_unitary, resolve_method
from .permutations import cyclic_measure
from .states import barred_eigenstate, cyclic_eigenstate, members
from .statespec import StateSpecError, parse_state
from .suppression import class_probabilities, class_sets, measure_via_multiport

DIGITS = 15
EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _round(obj):
    if isinstance(obj, float):
        y = float(f"{obj:.{DIGITS}g}")
        return 0.0 if y == 0 else y
    if isinstance(obj, dict):
        return {k: _round(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round(v) for v in obj]
    return obj


def _num(x: float) -> str:
    return repr(_round(float(x)))


def _dump_json(payload) -> str:
    return json.dumps(_round(payload), indent=2) + "\n"


def _dump_csv(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_num(v) if isinstance(v, float) else v for v in row])
    return buf.getvalue()


def _state(spec: str):
    try:
        return parse_state(spec)
    except StateSpecError as exc:
        raise UsageError(exc.diagnostic()) from None


def _config_label(c) -> str:
    return "{" + ",".join(map(str, c)) + "}"


def cmd_table1(args) -> tuple[str, int]:
    extra = _state(args.state) if args.state else None
    try:
        report = t1.reproduce(args.tolerance, extra, args.state or "rho")
    except DomainError as exc:
        raise UsageError(str(exc)) from None
    if args.format == "csv":
        header = ["configuration"]
        for name in report.columns:
            header += [name, f"{name}_reference", f"{name}_abs_error"]
        if report.extra:
            header += ["state", "state_four_parameter_form"]
        rows = []
        for i, c in enumerate(t1.ROWS):
            row = [_config_label(c)]
            for name, col in report.columns.items():
                row += [col[i], float(t1.REFERENCE[name][i]), report.errors[name][i]]
            if report.extra:
                row += [report.extra["computed"][i], report.extra["four_parameter_form"][i]]
            rows.append(row)
        text = _dump_csv(header, rows)
    else:
        payload = {
            "rows": [list(c) for c in t1.ROWS],
            "columns": [
                {"name": name, "computed": col,
                 "reference": [str(r) for r in t1.REFERENCE[name]],
                 "abs_error": report.errors[name]}
                for name, col in report.columns.items()
            ],
            "max_abs_error": report.max_error,
            "tolerance": report.tolerance,
            "passed": report.passed,
        }
        if report.extra:
            payload["state"] = report.extra
        text = _dump_json(payload)
    return text, EXIT_OK if report.passed else EXIT_FAIL


def cmd_measure(args) -> tuple[str, int]:
    state = _state(args.spec)
    methods = ["definition", "multiport"] if args.both else [args.method]
    values = {}
    try:
        for m in methods:
            values[m] = cyclic_measure(state) if m == "definition" else measure_via_multiport(state)
    except DomainError as exc:
        raise UsageError(str(exc)) from None
    if args.both:
        values["difference"] = abs(values["definition"] - values["multiport"])
    if args.format == "csv":
        return _dump_csv(list(values), [list(values.values())]), EXIT_OK
    return _dump_json(values), EXIT_OK


def _load_unitary(spec: str, d: int) -> UnitaryMatrix:
    if spec == "qft":
        return qft_unitary(d)
    try:
        with open(spec) as fh:
            return UnitaryMatrix.from_json(fh.read())
    except OSError as exc:
        raise UsageError(f"cannot read unitary file {spec!r}: {exc.strerror}") from None
    except (ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"malformed unitary file {spec!r}: {exc}") from None


def cmd_evolve(args) -> tuple[str, int]:
    state = _state(args.spec)
    U = _load_unitary(args.unitary, state.d)
    try:
        dist = output_distribution(state, U, args.method)
        cp = class_probabilities(dist) if args.emit == "classes" else None
    except DomainError as exc:
        raise UsageError(str(exc)) from None
    if cp is not None:
        if args.format == "csv":
            return _dump_csv([f"p{k}" for k in range(cp.n)], [list(cp.p)]), EXIT_OK
        return _dump_json(cp.to_dict()), EXIT_OK
    if args.format == "csv":
        return dist.to_csv(DIGITS), EXIT_OK
    return _dump_json(dist.to_list()), EXIT_OK


def _leakage(state, k: int, method: str) -> tuple[float, str]:
    U = qft_unitary(state.n)
    method = resolve_method(state.n, method)
    try:
        dist = output_distribution(state, U, method)
    except ResourceLimitError as exc:
        warnings.warn(f"{exc}; falling back to the grouped path", stacklevel=2)
        method = "grouped"
        dist = output_distribution(state, U, method)
    inside = set(class_sets(state.n)[k])
    return sum(p for c, p in dist.items() if c not in inside), method


def cmd_verify(args) -> tuple[str, int]:
    if not 2 <= args.n_max <= 7:
        raise UsageError(f"--n-max must lie in 2..7, got {args.n_max}")
    rows = []
    for n in range(2, args.n_max + 1):
        for k in range(n):
            for family, build in (("lambda", cyclic_eigenstate), ("lambda-bar", barred_eigenstate)):
                leak, used = _leakage(build(n, k), k, args.method)
                rows.append({"n": n, "k": k, "family": family, "method": used, "leakage": leak})
    worst = max(r["leakage"] for r in rows)
    passed = worst < args.tolerance
    if args.format == "csv":
        text = _dump_csv(["n", "k", "family", "method", "leakage"],
                         [[r["n"], r["k"], r["family"], r["method"], r["leakage"]] for r in rows])
    else:
        text = _dump_json({"results": rows, "max_leakage": worst,
                           "tolerance": args.tolerance, "passed": passed})
    return text, EXIT_OK if passed else EXIT_FAIL


def cmd_state(args) -> tuple[str, int]:
    state = _state(args.spec)
    if args.format == "csv":
        rows = []
        for i, (w, s) in enumerate(members(state)):
            for a, v in s.amplitudes.items():
                rows.append([i, float(w), "".join(map(str, a)) if s.d < 10 else " ".join(map(str, a)),
                             v.real, v.imag])
        return _dump_csv(["member", "weight", "assignment", "re", "im"], rows), EXIT_OK
    return json.dumps(state.to_dict(), indent=2) + "\n", EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default=argparse.SUPPRESS,
                        help="output format (default json)")
    common.add_argument("--tolerance", type=float, default=argparse.SUPPRESS,
                        help="pass/fail tolerance (default 1e-9)")
    common.add_argument("--output", metavar="FILE", default=argparse.SUPPRESS,
                        help="write the report to FILE instead of stdout")

    parser = argparse.ArgumentParser(
        prog="multihom", parents=[common],
        description="Cyclic indistinguishability measures and Fourier-multiport statistics.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("table1", parents=[common], help="reproduce the tritter count table")
    p.add_argument("--state", help="extra state spec for a seventh column")
    p.set_defaults(func=cmd_table1)

    p = sub.add_parser("measure", parents=[common], help="n-partite cyclic measure of a state")
    p.add_argument("spec")
    p.add_argument("--method", choices=("definition", "multiport"), default="definition")
    p.add_argument("--both", action="store_true", help="print both methods and their difference")
    p.set_defaults(func=cmd_measure)

    p = sub.add_parser("evolve", parents=[common], help="evolve a state through a multiport")
    p.add_argument("spec")
    p.add_argument("--unitary", default="qft", help="'qft' or a JSON unitary file")
    p.add_argument("--emit", choices=("distribution", "classes"), default="distribution")
    p.add_argument("--method", choices=("auto", "oracle", "grouped"), default="auto")
    p.set_defaults(func=cmd_evolve)

    p = sub.add_parser("verify", parents=[common], help="zero-leakage check of the suppression law")
    p.add_argument("--n-max", type=int, default=6)
    p.add_argument("--method", choices=("auto", "oracle", "grouped"), default="auto")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("state", parents=[common], help="parse, normalize and print a state spec")
    p.add_argument("spec")
    p.set_defaults(func=cmd_state)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    for key, default in (("format", "json"), ("tolerance", 1e-9), ("output", None)):
        if not hasattr(args, key):
            setattr(args, key, default)
    try:
        text, code = args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"multihom {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.output:
        with open(args.output, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
