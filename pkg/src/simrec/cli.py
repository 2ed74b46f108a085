"""Command-line interface.

Exit codes: 0 success, 1 structural failure (conditions not met or a
verification check failed), 2 parse failure (bad input file or arguments).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Literal, Optional, Sequence

from .decouple import RegularRecurrence, char_poly, augment, decouple_affine, decouple_homogeneous, direct_affine_small
from .errors import ParseError, SimrecError, StructuralConditionError, TrajectoryTooShortError
from .exact import format_decimal, format_rational
from .model import RecurrenceSystem, parse_system, render_system, sum_profile, system_document
from .oracle import DEFAULT_STEP_LIMIT, check_invariant, check_regular, iterate
from .pairsolve import (
    ColumnConstants,
    classify_pair,
    closed_form_pair_col,
    closed_form_pair_row,
    difference_closed_form,
)
from .triplesolve import (
    ClosedFormTriple,
    closed_form_triple,
    detect_weights,
    reduce_to_pairs,
    solve_triple,
)

Outcome = Literal["success", "structural-failure", "parse-failure"]
EXIT_CODES = {"success": 0, "structural-failure": 1, "parse-failure": 2}


@dataclass
class CliReport:
    command: str
    outcome: Outcome
    payload: dict[str, Any] = field(default_factory=dict)
    text: str = ""

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.outcome]

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return json.dumps({"command": self.command, "outcome": self.outcome, **self.payload}, indent=2)
        return self.text


class _ArgumentError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise _ArgumentError(message)


def _step_range(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition("..")
    if not sep:
        raise argparse.ArgumentTypeError(f"expected A..B, got {text!r}")
    try:
        a, b = int(lo), int(hi)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected integer bounds, got {text!r}") from None
    if a < 0 or b < a:
        raise argparse.ArgumentTypeError(f"need 0 <= A <= B, got {text!r}")
    return a, b


def _non_negative(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--decimal", type=_non_negative, metavar="K", help="also print K-digit approximate decimals")

    parser = _Parser(prog="simrec", description="Decouple and solve simultaneous linear recurrences exactly.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("show", parents=[common], help="echo the parsed system")
    p.add_argument("file")

    p = sub.add_parser("decouple", parents=[common], help="single-variable recurrences")
    p.add_argument("file")
    p.add_argument("--mode", choices=("homogeneous", "augmented", "direct"))

    p = sub.add_parser("detect", parents=[common], help="row/column sums and weights")
    p.add_argument("file")

    p = sub.add_parser("closed-form", parents=[common], help="evaluate the closed form")
    p.add_argument("file")
    where = p.add_mutually_exclusive_group(required=True)
    where.add_argument("--at", type=_non_negative, metavar="X")
    where.add_argument("--range", type=_step_range, metavar="A..B")

    p = sub.add_parser("verify", parents=[common], help="compare every applicable formula with iteration")
    p.add_argument("file")
    p.add_argument("--steps", type=_non_negative, required=True, metavar="N")
    p.add_argument("--limit", type=_non_negative, default=DEFAULT_STEP_LIMIT, help=argparse.SUPPRESS)
    return parser


class _Formatter:
    def __init__(self, digits: Optional[int]):
        self.digits = digits

    def __call__(self, q: Fraction) -> str:
        s = format_rational(q)
        if self.digits is None:
            return s
        return f"{s} (~{format_decimal(q, self.digits)})"

    def value(self, q: Fraction) -> Any:
        if self.digits is None:
            return format_rational(q)
        return {"exact": format_rational(q), "approx": format_decimal(q, self.digits)}


def _recurrence_doc(rec: RegularRecurrence) -> dict[str, Any]:
    doc: dict[str, Any] = {
        "kind": rec.kind,
        "order": rec.order,
        "betas": [format_rational(b) for b in rec.betas],
    }
    if rec.tail is not None:
        doc["tail"] = [format_rational(t) for t in rec.tail]
    return doc


def _recurrence_text(rec: RegularRecurrence, name: str, tail: Optional[Fraction], fmt: _Formatter) -> str:
    terms = " + ".join(f"({fmt(b)})*{name}[x-{j}]" for j, b in enumerate(rec.betas, start=1))
    if tail is not None:
        terms += f" + ({fmt(tail)})"
    return f"{name}[x] = {terms}"


def _cmd_show(system: RecurrenceSystem, args, fmt: _Formatter) -> CliReport:
    return CliReport("show", "success", {"system": system_document(system)}, render_system(system).rstrip("\n"))


def _cmd_decouple(system: RecurrenceSystem, args, fmt: _Formatter) -> CliReport:
    modes = [args.mode] if args.mode else [
        m for m in ("homogeneous", "augmented", "direct")
        if (m != "homogeneous" or system.is_homogeneous()) and (m != "direct" or system.order <= 3)
    ]
    recs = []
    for mode in modes:
        if mode == "homogeneous":
            recs.append(decouple_homogeneous(system))
        elif mode == "augmented":
            recs.append(decouple_affine(system))
        else:
            recs.append(direct_affine_small(system))
    lines = [
        f"characteristic polynomial: {char_poly(system.coefficients)}",
        f"augmented characteristic polynomial: {char_poly(augment(system).entries)}",
    ]
    for rec in recs:
        lines.append(f"{rec.kind} (order {rec.order}):")
        for i, name in enumerate(system.names):
            tail = rec.tail[i] if rec.tail is not None else None
            lines.append("  " + _recurrence_text(rec, name, tail, fmt))
    payload = {
        "system": system_document(system),
        "char_poly": [format_rational(c) for c in char_poly(system.coefficients).coeffs],
        "recurrences": [_recurrence_doc(r) for r in recs],
    }
    return CliReport("decouple", "success", payload, "\n".join(lines))


def _pair_cases(system: RecurrenceSystem) -> dict[str, Any]:
    out: dict[str, Any] = {}
    for mode in ("row", "column"):
        try:
            out[mode] = classify_pair(system, mode)
        except StructuralConditionError as exc:
            out[mode] = None
            out[f"{mode}_reason"] = str(exc)
    return out


def _cmd_detect(system: RecurrenceSystem, args, fmt: _Formatter) -> CliReport:
    profile = sum_profile(system)
    payload: dict[str, Any] = {
        "sum_profile": {
            "row_sums": [format_rational(v) for v in profile.row_sums],
            "col_sums": [format_rational(v) for v in profile.col_sums],
            "rows_equal": profile.rows_equal,
            "cols_equal": profile.cols_equal,
        }
    }
    lines = [
        f"row sums: {', '.join(fmt(v) for v in profile.row_sums)} ({'equal' if profile.rows_equal else 'not equal'})",
        f"column sums: {', '.join(fmt(v) for v in profile.col_sums)} ({'equal' if profile.cols_equal else 'not equal'})",
    ]
    if system.order == 3:
        w = detect_weights(system)
        if w is None:
            payload["weights"] = None
            lines.append("weights: none found")
        else:
            payload["weights"] = {"w1": format_rational(w.w1), "w2": format_rational(w.w2), "provenance": w.provenance}
            lines.append(f"weights: w1 = {fmt(w.w1)}, w2 = {fmt(w.w2)} ({w.provenance})")
    elif system.order == 2:
        cases = _pair_cases(system)
        payload["pair_cases"] = cases
        for mode in ("row", "column"):
            lines.append(f"{mode} case: {cases[mode] if cases[mode] is not None else 'n/a (' + cases[mode + '_reason'] + ')'}")
    return CliReport("detect", "success", payload, "\n".join(lines))


def _solver(system: RecurrenceSystem):
    """Pick the closed form that applies; returns (evaluator, description dict)."""
    if system.order == 2:
        profile = sum_profile(system)
        cf = closed_form_pair_row(system) if profile.rows_equal or not profile.cols_equal else closed_form_pair_col(system)
        c = cf.constants
        if isinstance(c, ColumnConstants):
            consts = {"P": c.P, "T": c.T, "sigma_step": c.sigma_step, "sigma0": c.sigma0}
        else:
            consts = {"S": c.S, "D": c.D, "delta": c.delta, "delta0": c.delta0}
        return cf, {"method": f"pair-{cf.mode}", "case_id": c.case_id, "constants": consts}
    if system.order == 3:
        solver = solve_triple(system)
        w = solver.w
        info: dict[str, Any] = {"weights": {"w1": w.w1, "w2": w.w2, "provenance": w.provenance}}
        if isinstance(solver, ClosedFormTriple):
            k = solver.constants
            info.update(
                method="triple",
                case_id=k.case_id,
                constants={"C1": k.C1, "C2": k.C2, "C3": k.C3, "C4": k.C4, "C5": k.C5, "alpha2_star": k.alpha2_star},
            )
        else:
            info.update(method="triple-via-ac-pair", case_id=solver.case_id, constants={})
        return solver, info
    raise StructuralConditionError(f"closed forms are available for orders 2 and 3, got order {system.order}")


def _cmd_closed_form(system: RecurrenceSystem, args, fmt: _Formatter) -> CliReport:
    solver, info = _solver(system)
    lo, hi = (args.at, args.at) if args.at is not None else args.range
    rows = [(x, solver.evaluate(x)) for x in range(lo, hi + 1)]

    def enc(v):
        if isinstance(v, Fraction):
            return fmt.value(v)
        if isinstance(v, dict):
            return {k: enc(x) for k, x in v.items()}
        return v

    payload = {**{k: enc(v) for k, v in info.items()}}
    payload["values"] = [{"x": x, **{n: fmt.value(v) for n, v in zip(system.names, vals)}} for x, vals in rows]
    lines = [f"method: {info['method']}", f"case: {info['case_id']}"]
    if "weights" in info:
        w = info["weights"]
        lines.append(f"weights: w1 = {fmt(w['w1'])}, w2 = {fmt(w['w2'])} ({w['provenance']})")
    if info["constants"]:
        lines.append("constants: " + ", ".join(f"{k} = {fmt(v)}" for k, v in info["constants"].items()))
    for x, vals in rows:
        lines.append(f"x = {x}: " + ", ".join(f"{n} = {fmt(v)}" for n, v in zip(system.names, vals)))
    return CliReport("closed-form", "success", payload, "\n".join(lines))


def _verify_checks(system: RecurrenceSystem, steps: int, limit: int) -> list[dict[str, str]]:
    traj = iterate(system, steps, limit)
    checks: list[dict[str, str]] = []

    def record(name: str, fn: Callable[[], bool]) -> None:
        try:
            ok = fn()
        except TrajectoryTooShortError as exc:
            checks.append({"name": name, "status": "skip", "detail": str(exc)})
        except StructuralConditionError as exc:
            checks.append({"name": name, "status": "skip", "detail": str(exc)})
        else:
            checks.append({"name": name, "status": "pass" if ok else "fail", "detail": ""})

    def skip(name: str, why: str) -> None:
        checks.append({"name": name, "status": "skip", "detail": why})

    def matches(evaluator) -> bool:
        return all(tuple(evaluator(x)) == traj[x] for x in range(steps + 1))

    record("augmented recurrence", lambda: check_regular(traj, decouple_affine(system)))
    if system.is_homogeneous():
        record("homogeneous recurrence", lambda: check_regular(traj, decouple_homogeneous(system)))
    else:
        skip("homogeneous recurrence", "system has affine terms")
    if system.order <= 3:
        record("direct-tail recurrence", lambda: check_regular(traj, direct_affine_small(system)))
    else:
        skip("direct-tail recurrence", "only orders 1-3")

    if system.order == 2:
        record("pair closed form (equal row sums)", lambda: matches(closed_form_pair_row(system)))

        def difference() -> bool:
            form = difference_closed_form(system)
            return all(form(x) == traj[x][1] - traj[x][0] for x in range(steps + 1))

        record("difference closed form", difference)
        record("pair closed form (equal column sums)", lambda: matches(closed_form_pair_col(system)))
    elif system.order == 3:
        w = detect_weights(system)
        if w is None:
            skip("weights", "no weights found")
            return checks
        checks.append({"name": "weights", "status": "pass",
                       "detail": f"w1 = {format_rational(w.w1)}, w2 = {format_rational(w.w2)} ({w.provenance})"})
        record("weight invariant along trajectory", lambda: check_invariant(traj, w))
        record("triple closed form", lambda: matches(solve_triple(system, w)))
        record("triple closed form (original b equation)",
               lambda: matches(closed_form_triple(system, w, generalized=False)))

        def pair_route() -> bool:
            ab = closed_form_pair_row(reduce_to_pairs(system, w).require("ab"))
            triple = closed_form_triple(system, w)
            return all(ab(x) == triple(x)[:2] for x in range(steps + 1))

        record("ab pair agrees with triple closed form", pair_route)

        def pairs_balanced() -> bool:
            red = reduce_to_pairs(system, w)
            return all(sum_profile(p).rows_equal for p in (red.ab, red.ac, red.bc) if p is not None)

        record("reduced pairs have equal row sums", pairs_balanced)
        if w.w2 != 0:
            record("difference relation c - a = (b - a)/w2",
                   lambda: all(c - a == (b - a) / w.w2 for a, b, c in traj.values))
    else:
        skip("closed forms", "only orders 2 and 3")
    return checks


def _cmd_verify(system: RecurrenceSystem, args, fmt: _Formatter) -> CliReport:
    checks = _verify_checks(system, args.steps, args.limit)
    failed = any(c["status"] == "fail" for c in checks)
    lines = [f"{c['status'].upper():4}  {c['name']}" + (f"  [{c['detail']}]" if c["detail"] else "") for c in checks]
    lines.append(f"{'FAILED' if failed else 'OK'}: {sum(c['status'] == 'pass' for c in checks)} passed, "
                 f"{sum(c['status'] == 'fail' for c in checks)} failed, "
                 f"{sum(c['status'] == 'skip' for c in checks)} skipped (x = 0..{args.steps})")
    payload = {"steps": args.steps, "checks": checks, "passed": not failed}
    return CliReport("verify", "structural-failure" if failed else "success", payload, "\n".join(lines))


_COMMANDS = {
    "show": _cmd_show,
    "decouple": _cmd_decouple,
    "detect": _cmd_detect,
    "closed-form": _cmd_closed_form,
    "verify": _cmd_verify,
}


def run(argv: Sequence[str], text: Optional[str] = None) -> tuple[CliReport, str]:
    """Execute one command; returns the report and the requested output format.

    ``text`` overrides reading the file named in ``argv``.
    """
    try:
        args = build_parser().parse_args(list(argv))
    except _ArgumentError as exc:
        return CliReport("", "parse-failure", {"error": str(exc)}, f"error: {exc}"), "text"
    fmt = _Formatter(args.decimal)
    try:
        if text is None:
            with open(args.file, encoding="utf-8") as fh:
                text = fh.read()
        system = parse_system(text)
    except OSError as exc:
        return CliReport(args.command, "parse-failure", {"error": str(exc)}, f"error: {exc}"), args.format
    except ParseError as exc:
        payload = {"error": exc.message, "kind": exc.kind, "line": exc.line}
        return CliReport(args.command, "parse-failure", payload, f"parse error: {exc}"), args.format
    try:
        report = _COMMANDS[args.command](system, args, fmt)
    except SimrecError as exc:
        report = CliReport(args.command, "structural-failure", {"error": str(exc)}, f"error: {exc}")
    return report, args.format


def main(argv: Optional[Sequence[str]] = None) -> int:
    report, fmt = run(sys.argv[1:] if argv is None else argv)
    stream = sys.stdout if report.exit_code == 0 or report.command == "verify" else sys.stderr
    print(report.render(fmt), file=stream)
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
