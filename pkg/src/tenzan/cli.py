"""``tenzan`` command line: parse, render, derive, verify, soroban."""

from __future__ import annotations

import argparse
import math
import os
import sys
import tempfile
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path

from .engine import MISMATCH, ChainMismatch, Replay, ScriptError, evaluate, replay
from .expr import PLAIN, Equation, Expr, NotLinearInSymbol, UnboundSymbol
from .geometry import solve_small
from .notation import ParseError, canonical_text, parse_document, render_column, render_modern
from .problem import ProblemFile, ProblemFormatError, load_problem, parse_bindings, parse_tol
from .radical import DivisionByZero, DomainError, UnsupportedDivisor, eval_fixed, eval_float
from .soroban import decimal_text, enumerate_interpretations, resolve_ambiguity
from .symbols import DAI, IrohaExhausted
from .units import QuantityError, format_quantity, parse_quantity

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
DEFAULT_TOL = Fraction(5, 1000)
FIXED_DIGITS = 40

# failures that mean the input itself is malformed
INPUT_ERRORS = (
    ParseError,
    ProblemFormatError,
    QuantityError,
    ScriptError,
    ChainMismatch,
    NotLinearInSymbol,
    UnboundSymbol,
    UnsupportedDivisor,
    DivisionByZero,
    DomainError,
    IrohaExhausted,
)


def corpus_path(name: str) -> Path:
    """Path of a bundled corpus problem (``stsn`` or ``kijimadaira``)."""
    return Path(str(resources.files("tenzan") / "corpus" / f"{name}.tenzan"))


@dataclass
class Check:
    method: str
    observed: str
    passed: bool


@dataclass
class Verification:
    target: str
    unit: str
    tol: Fraction | float
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


@dataclass
class RunSummary:
    replay: Replay | None
    verification: Verification | None

    @property
    def exit_code(self) -> int:
        if self.replay is not None and not self.replay.all_match:
            return EXIT_FAIL
        if self.verification is not None and not self.verification.passed:
            return EXIT_FAIL
        return EXIT_OK

    def lines(self) -> list[str]:
        out = []
        if self.replay is not None:
            out += [r.summary_line() for r in self.replay.given_reports + self.replay.reports]
        if self.verification is not None:
            out.append("verify " + ("pass" if self.verification.passed else "fail"))
        out.append(f"exit {self.exit_code}")
        return out


def verify_problem(problem: ProblemFile, state_replay: Replay, tol=None) -> Verification | None:
    """Check the verify formula against the stated answer three ways: exact
    evaluation rounded to binary64, 40-digit fixed point, and the geometric
    bisection oracle (when the large diameter is bound)."""
    req = problem.verify
    if req is None:
        return None
    if tol is None:
        tol = req.tol if req.tol is not None else DEFAULT_TOL
    formula = state_replay.state.get(req.formula)
    bindings = dict(req.bindings)
    answer = problem.answer
    u = answer.display_unit
    target = answer.in_unit(u).as_fraction()
    result = evaluate(formula, bindings).in_unit(u)

    def within(x) -> bool:
        return tol == math.inf or abs(Fraction(x) - target) <= Fraction(tol)

    v = Verification(decimal_text(target), u.name, tol)
    f = eval_float(result)
    v.checks.append(Check("float", repr(f), within(f)))
    fixed = eval_fixed(result, FIXED_DIGITS)
    v.checks.append(Check(f"fixed({FIXED_DIGITS})", fixed, within(Fraction(fixed))))
    if DAI in bindings:
        a = float(bindings[DAI].in_unit(u))
        g = solve_small(a, 1e-12)
        v.checks.append(Check("geometry", repr(g), within(g)))
    return v


def _format_verification(problem: ProblemFile, v: Verification) -> list[str]:
    req = problem.verify
    binds = ", ".join(f"{s.ascii_alias} = {format_quantity(q)}" for s, q in req.bindings)
    tol = "inf" if v.tol == math.inf else decimal_text(Fraction(v.tol))
    out = [f"verify {req.formula} with {binds}", f"  target      {v.target} {v.unit}  (stated: {format_quantity(problem.answer)})"]
    for c in v.checks:
        out.append(f"  {c.method:<11} {c.observed} {v.unit}  {'pass' if c.passed else 'FAIL'}")
    out.append(f"verdict: {'pass' if v.passed else 'fail'} (tol {tol} {v.unit})")
    return out


def _report_block(r) -> list[str]:
    head = f"-- {r.result_id} ({r.verb})" if r.step is None else f"-- {r.step}"
    out = [f"{head}: {r.status}", r.modern, r.column]
    out += [f"   note: {n}" for n in r.notes]
    if r.status == MISMATCH:
        out += ["   " + line for line in r.diff.splitlines()]
    return out


def derive(problem: ProblemFile, tol=None) -> tuple[RunSummary, list[str]]:
    rep = replay(problem)
    out = [f"== {problem.name or 'problem'}"]
    if problem.source:
        out.append(f"source: {problem.source}")
    for r in rep.given_reports + rep.reports:
        out += _report_block(r)
    verification = None
    if problem.verify is not None:
        formula = rep.state.get(problem.verify.formula)
        answer = evaluate(formula, dict(problem.verify.bindings))
        out.append(f"answer: {format_quantity(answer)}  (stated: {format_quantity(problem.answer)})")
        verification = verify_problem(problem, rep, tol)
        out += _format_verification(problem, verification)
    summary = RunSummary(rep, verification)
    out.append("summary:")
    out += ["  " + line for line in summary.lines()]
    return summary, out


def cmd_parse(path: str) -> list[str]:
    out = []
    for stmt in parse_document(Path(path).read_text(encoding="utf-8")):
        line = canonical_text(stmt)
        modes = sorted({t.mode for e in _exprs(stmt) for t in e.terms} - {PLAIN})
        if modes:
            line += "  # display: " + ", ".join(modes)
        out.append(line)
    return out


def _exprs(stmt):
    if isinstance(stmt, Equation):
        return [stmt.lhs, stmt.rhs]
    if isinstance(stmt, Expr):
        return [stmt]
    return list(stmt.items)


def cmd_render(path: str, layout: str) -> list[str]:
    stmts = parse_document(Path(path).read_text(encoding="utf-8"))
    if layout == "modern":
        return [render_modern(s) for s in stmts]
    out = []
    for k, s in enumerate(stmts):
        if k:
            out.append("")
        out.append(render_column(s).to_text())
    return out


def parse_offsets(text: str) -> range:
    lo, sep, hi = text.partition("..")
    try:
        lo_i, hi_i = int(lo), int(hi if sep else lo)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad offset range {text!r}; use LO..HI") from None
    rng = range(lo_i, hi_i + 1)
    if not rng:
        raise argparse.ArgumentTypeError(f"empty offset range {text!r}")
    return rng


def cmd_soroban(args) -> list[str]:
    offsets = parse_offsets(args.offsets)
    interps = enumerate_interpretations(args.digits, offsets)
    out = [" ".join(str(i) for i in interps)]
    if args.template:
        if not args.target:
            raise argparse.ArgumentTypeError("--template needs --target")
        bindings = dict(parse_bindings(", ".join(args.bind or [])))
        tol = parse_tol(args.tol) if args.tol else DEFAULT_TOL
        survivors = resolve_ambiguity(args.template, args.digits, offsets, bindings, parse_quantity(args.target), tol)
        out.append("match: " + (" ".join(str(i) for i in survivors) if survivors else "none"))
    return out


def write_atomic(path: str, text: str) -> None:
    target = Path(path)
    fd, tmp = tempfile.mkstemp(dir=target.parent or ".", prefix=f".{target.name}.")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, target)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tenzan", description="Tenzan notation, derivation replay and verification.")
    p.add_argument("-o", "--output", help="write output to FILE instead of stdout")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("parse", help="dump canonical text of every statement")
    sp.add_argument("path")

    sp = sub.add_parser("render", help="render statements in modern or column layout")
    sp.add_argument("path")
    sp.add_argument("--layout", choices=("modern", "column"), default="modern")

    for name, helptext in (("derive", "replay a problem's derivation"), ("verify", "check a problem's formula numerically")):
        sp = sub.add_parser(name, help=helptext)
        sp.add_argument("problem", help="problem file, or a corpus name (stsn, kijimadaira)")
        sp.add_argument("--tol", help="tolerance in the answer's unit (default 0.005; 'inf' accepts anything)")

    sp = sub.add_parser("soroban", help="enumerate place-value readings of a digit string")
    sp.add_argument("digits")
    sp.add_argument("--offsets", default="0..0", help="power-of-ten range LO..HI")
    sp.add_argument("--template", help="formula with hole x, e.g. '(rt(x)-x)*dai'")
    sp.add_argument("--bind", action="append", help="binding such as 'dai=10 sun' (repeatable)")
    sp.add_argument("--target", help="answer quantity, e.g. '2 sun 0 7 bu'")
    sp.add_argument("--tol")
    return p


def _fix_negative_values(argv: list[str]) -> list[str]:
    # argparse would read "-2..2" as an option
    out = []
    it = iter(argv)
    for a in it:
        if a in ("--offsets", "--tol"):
            nxt = next(it, None)
            out.append(a if nxt is None else f"{a}={nxt}")
        else:
            out.append(a)
    return out


def _problem(arg: str) -> ProblemFile:
    path = Path(arg)
    if not path.exists() and corpus_path(arg).exists():
        path = corpus_path(arg)
    return load_problem(path)


def execute(args: argparse.Namespace) -> tuple[int, list[str]]:
    """Run one parsed command; returns ``(exit code, output lines)``."""
    try:
        if args.command == "parse":
            return EXIT_OK, cmd_parse(args.path)
        if args.command == "render":
            return EXIT_OK, cmd_render(args.path, args.layout)
        if args.command == "soroban":
            return EXIT_OK, cmd_soroban(args)
        problem = _problem(args.problem)
        tol = parse_tol(args.tol) if args.tol else None
        if args.command == "derive":
            summary, lines = derive(problem, tol)
            return summary.exit_code, lines
        if problem.verify is None:
            return EXIT_USAGE, ["error: problem has no verify line"]
        v = verify_problem(problem, replay(problem), tol)
        return (EXIT_OK if v.passed else EXIT_FAIL), _format_verification(problem, v)
    except INPUT_ERRORS + (argparse.ArgumentTypeError, OSError, ValueError) as exc:
        return EXIT_USAGE, [f"error: {exc}"]


def main(argv: list[str] | None = None) -> int:
    argv = _fix_negative_values(list(sys.argv[1:] if argv is None else argv))
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    code, lines = execute(args)
    text = "\n".join(lines) + "\n" if lines else ""
    if code == EXIT_USAGE:
        sys.stderr.write(text)
    elif args.output:
        write_atomic(args.output, text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
