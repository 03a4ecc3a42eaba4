"""Command-line front end.

Subcommands read a JSON task file (``--input``) and print exact results:

    exactmeasure integrate --input task.json [--n-max N] [--tol p/q]
    exactmeasure sigma-gen --input task.json
    exactmeasure measure   --input task.json
    exactmeasure tonelli   --input task.json
    exactmeasure verify    [SUITE ...] [--suite NAME] [--size N]

Exit codes: 0 success, 1 verification failure, 2 malformed input,
3 violated precondition.
"""

from __future__ import annotations

import argparse
import json
import sys
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Any, List, Optional

from .descriptors import (
    DescriptorError,
    format_set,
    parse_family,
    parse_fn,
    parse_measure,
    parse_set,
    parse_step2d,
    parse_universe,
)
from .errors import MeasureError
from .functions import FiniteMap
from .lebint import DEFAULT_N_MAX, DEFAULT_TOL, integral_mplus, integral_signed
from .product import tonelli, tonelli_over_subset
from .report import Report
from .setsys import SubsetFamily, SystemKind, generate
from .suites import SUITES, run_suite
from .xreal import XReal, format_xreal, parse_rational, xr

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_PRECONDITION = 0, 1, 2, 3


class _Output:
    def __init__(self, decimal: Optional[int]):
        self.decimal = decimal

    def num(self, v) -> str:
        text = format_xreal(xr(v))
        if self.decimal is None or xr(v).is_inf():
            return text
        q = xr(v).value
        with localcontext() as ctx:
            ctx.prec = max(self.decimal + 20, 28)
            approx = Decimal(q.numerator) / Decimal(q.denominator)
            return f"{text} (approx {round(approx, self.decimal)})"


def _load(path: Optional[str]) -> Any:
    if path is None:
        raise DescriptorError("--input is required for this command")
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def _emit(args, command: str, result: dict, text_lines: List[str], cases: Optional[list] = None) -> None:
    if args.json:
        out = {"command": command, "result": result, "cases": cases or []}
        print(json.dumps(out, sort_keys=True, indent=2))
    else:
        for line in text_lines:
            print(line)


def _prepare_integrate(task: dict, args):
    mu = parse_measure(task["measure"])
    f = parse_fn(task["fn"], mu.space)
    n_max = args.n_max if args.n_max is not None else int(task.get("n_max", DEFAULT_N_MAX))
    tol = parse_rational(args.tol) if args.tol is not None else parse_rational(str(task.get("tol", DEFAULT_TOL)))
    return f, mu, n_max, tol


def cmd_integrate(args, out: _Output) -> int:
    task = _load(args.input)
    try:
        f, mu, n_max, tol = _prepare_integrate(task, args)
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, MeasureError):
            raise
        raise DescriptorError(str(exc)) from exc
    if not f.is_nonneg():
        value = integral_signed(f, mu, n_max, tol)
        result = {"value": format_xreal(value), "exact": True, "signed": True}
        _emit(args, "integrate", result, [f"value: {out.num(value)}", "exact: true", "signed: true"])
        return EXIT_OK
    res = integral_mplus(f, mu, n_max, tol)
    bound = format_xreal(res.bound) if res.bound is not None else None
    result = {
        "value": format_xreal(res.value),
        "exact": res.exact,
        "lower": format_xreal(res.lower),
        "bound": bound,
        "n_max": n_max,
        "stages": [{"n": s.n, "integral": format_xreal(s.integral)} for s in res.stages],
    }
    lines = [
        f"value: {out.num(res.value)}",
        f"exact: {'true' if res.exact else 'false'}",
        f"stage {n_max}: {out.num(res.lower)}",
        f"bound: {out.num(res.bound) if res.bound is not None else 'unknown'}",
        "stages:",
    ]
    lines += [f"  {s.n:>3}  {out.num(s.integral)}" for s in res.stages]
    _emit(args, "integrate", result, lines)
    if not res.exact and (res.bound is None or res.bound > xr(tol)):
        print(f"warning: certified bound exceeds tol {format_xreal(xr(tol))}", file=sys.stderr)
    return EXIT_OK


_KINDS = {k.value: k for k in SystemKind}


def cmd_sigma_gen(args, out: _Output) -> int:
    task = _load(args.input)
    try:
        u = parse_universe(task["universe"])
        gens = parse_family(u, task.get("generators", []))
        kind = _KINDS[task.get("kind", "sigma")]
    except (KeyError, TypeError, ValueError) as exc:
        raise DescriptorError(str(exc)) from exc
    fam = generate(kind, gens)
    members = fam.to_lists()
    result = {"kind": kind.value, "size": len(fam), "members": members}
    lines = [f"{kind.value} generated by {len(gens)} sets: {len(fam)} members"]
    lines += ["  {" + ", ".join(m) + "}" for m in members]
    _emit(args, "sigma-gen", result, lines)
    return EXIT_OK


def cmd_measure(args, out: _Output) -> int:
    task = _load(args.input)
    try:
        mu = parse_measure(task["measure"])
        a = parse_set(mu.space, task["set"])
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, MeasureError):
            raise
        raise DescriptorError(str(exc)) from exc
    v = mu.measure(a)
    _emit(args, "measure", {"value": format_xreal(v), "set": format_set(mu.space, a)}, [f"value: {out.num(v)}"])
    return EXIT_OK


def cmd_tonelli(args, out: _Output) -> int:
    task = _load(args.input)
    try:
        mu1, mu2 = parse_measure(task["mu1"]), parse_measure(task["mu2"])
        from .measures import tensor_measure

        space = tensor_measure(mu1, mu2).space
        fd = task["fn"]
        f = parse_step2d(fd).to_step() if "xs" in fd else parse_fn(fd, space)
        subset = parse_set(space, task["subset"]) if task.get("subset") is not None else None
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, MeasureError):
            raise
        raise DescriptorError(str(exc)) from exc
    if subset is None:
        d, i1 = tonelli(f, mu1, mu2, 1)
        _, i2 = tonelli(f, mu1, mu2, 2)
    else:
        d, i1 = tonelli_over_subset(f, subset, mu1, mu2, 1)
        _, i2 = tonelli_over_subset(f, subset, mu1, mu2, 2)
    agree = d == i1 == i2
    result = {"direct": format_xreal(d), "iterated_1": format_xreal(i1), "iterated_2": format_xreal(i2), "agree": agree}
    lines = [f"direct:     {out.num(d)}", f"iterated 1: {out.num(i1)}", f"iterated 2: {out.num(i2)}", f"agree: {'true' if agree else 'false'}"]
    _emit(args, "tonelli", result, lines)
    return EXIT_OK if agree else EXIT_FAIL


def cmd_verify(args, out: _Output) -> int:
    names = (args.names or []) + (args.suite or []) or list(SUITES)
    for n in names:
        if n not in SUITES:
            raise DescriptorError(f"unknown suite {n!r}; choose from {', '.join(SUITES)}")
    tol = parse_rational(args.tol) if args.tol is not None else None
    reports: List[Report] = [run_suite(n, args.size, args.n_max, tol) for n in names]
    ok = all(r.ok for r in reports)
    cases = []
    for r in reports:
        cases += [dict(c.to_json(), name=f"{r.name}/{c.name}") for c in r.cases]
    result = {"ok": ok, "suites": [{"name": r.name, "summary": r.summary(), "ok": r.ok} for r in reports]}
    lines = []
    for r in reports:
        lines.append(r.summary())
        for c in r.failures:
            lines.append(f"  FAIL {c.name}: {json.dumps(c.to_json().get('witness'), sort_keys=True)}")
    lines.append("verify: ok" if ok else "verify: FAILED")
    _emit(args, "verify", result, lines, cases)
    return EXIT_OK if ok else EXIT_FAIL


COMMANDS = {
    "integrate": cmd_integrate,
    "sigma-gen": cmd_sigma_gen,
    "measure": cmd_measure,
    "tonelli": cmd_tonelli,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="exactmeasure", description="Exact measure and integration computations.")
    p.add_argument("command", choices=sorted(COMMANDS))
    p.add_argument("names", nargs="*", help="suite names for verify")
    p.add_argument("--input", help="JSON task file")
    p.add_argument("--n-max", type=int, dest="n_max", help=f"last adapted stage (default {DEFAULT_N_MAX})")
    p.add_argument("--tol", help="tolerance as p/q (default 1/65536)")
    p.add_argument("--suite", action="append", help="suite to run (repeatable; default: all)")
    p.add_argument("--size", type=int, help="universe size for the set-system suites")
    p.add_argument("--decimal", type=int, help="also print a K-digit decimal approximation")
    p.add_argument("--json", action="store_true", help="machine-readable report")
    return p


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else EXIT_OK
    if args.names and args.command != "verify":
        print(f"error: unexpected arguments {args.names}", file=sys.stderr)
        return EXIT_PARSE
    out = _Output(args.decimal)
    try:
        return COMMANDS[args.command](args, out)
    except (DescriptorError, json.JSONDecodeError, OSError) as exc:
        print(f"error: malformed input: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except MeasureError as exc:
        print(f"error: precondition failed ({type(exc).__name__}): {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
