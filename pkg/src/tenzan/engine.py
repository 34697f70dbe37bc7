"""Derivation replay.

Each verb is a small, value-preserving rewrite of an :class:`Equation` or
:class:`Block`.  Geometry never enters here except through named givens.
"""

from __future__ import annotations

import difflib
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Mapping, Union

from .expr import (
    DECIMAL,
    PLAIN,
    ROOT_DENOMINATOR,
    Block,
    Equation,
    Expr,
    Term,
    fit_mode,
    solve_expr,
    solve_linear,
    substitute,
)
from .notation.column import render_column
from .notation.modern import canonical_text, render_modern
from .notation.parser import ParseError, parse_expr
from .problem import Given, ProblemFile, Step, load_problem
from .radical import DivisionByZero, Radical
from .symbols import IROHA, SYMBOLS, IrohaExhausted, IrohaLabel, Symbol
from .units import SUN, Quantity, format_quantity, parse_quantity

Value = Union[Equation, Block, Expr, Quantity]


class ScriptError(ValueError):
    pass


class ChainMismatch(ValueError):
    pass


# -- verbs -------------------------------------------------------------------


def mul_both(eq: Equation, factor) -> Equation:
    factor = factor if isinstance(factor, Expr) else Expr.const(factor)
    if factor.is_zero():
        raise DivisionByZero("multiplying both sides by zero")
    return Equation(eq.lhs * factor, eq.rhs * factor)


def chain(eq1: Equation, eq2: Equation) -> Equation:
    """From ``x = y`` and ``y = z`` (or ``z = y``) conclude ``x = z``."""
    if eq1.rhs.same_value(eq2.lhs):
        return Equation(eq1.lhs, eq2.rhs, eq2.rhs_alias)
    if eq1.rhs.same_value(eq2.rhs):
        return Equation(eq1.lhs, eq2.lhs)
    raise ChainMismatch(f"cannot chain: {render_modern(eq1.rhs)!r} matches neither side of the second equation")


def _cancel_root(t: Term) -> Term:
    if t.mode != PLAIN or len(t.coef.terms) != 1:
        return t
    q, d = t.coef.terms[0]
    # q*sqrt(d) with d | denominator(q): write the denominator as sqrt(d)*sqrt(d)*k
    if d > 1 and q.denominator % d == 0:
        return replace(t, mode=ROOT_DENOMINATOR)
    return t


def _eliminate_expr(e: Expr) -> Expr:
    return Expr(tuple(_cancel_root(t) for t in e.terms), e.den)


def eliminate(eq: Equation, notes: list[str] | None = None) -> Equation:
    out = Equation(_eliminate_expr(eq.lhs), _eliminate_expr(eq.rhs), eq.rhs_alias)
    if out == eq and notes is not None:
        notes.append("eliminate: no common radical factor; unchanged")
    return out


def _split_items(e: Expr, negate: bool = False) -> list[Expr]:
    items = []
    for t in e.terms:
        for q, d in sorted(t.coef.terms, key=lambda c: -c[1]):
            coef = Radical([(-q if negate else q, d)])
            items.append(Expr.build([Term(coef, t.mono, t.mode)], e.den))
    return items


def move_left(eq: Equation, unlabeled: tuple[Symbol, ...] = (), start: int = 1) -> Block:
    """Rewrite ``lhs = rhs`` as the block ``lhs - rhs = 0``.

    Terms are labelled イ, ロ, ... from ``start`` in order of appearance,
    except terms in any of the ``unlabeled`` unknowns (the one being sought).
    """
    items = _split_items(eq.lhs) + _split_items(eq.rhs, negate=True)
    out = []
    k = start
    for item in items:
        if item.free_symbols() & set(unlabeled):
            out.append(item)
            continue
        try:
            IrohaLabel(k)
        except IrohaExhausted:
            raise IrohaExhausted(f"more than {len(IROHA)} labelled terms") from None
        out.append(item.with_label(k))
        k += 1
    return Block(tuple(out))


def labels_used(b: Block) -> int:
    return max((t.label for item in b.items for t in item.terms if t.label), default=0)


def given_substitution(eq: Equation, symbol: Symbol | None = None) -> tuple[Symbol, Expr]:
    if symbol is not None:
        return symbol, solve_linear(eq, symbol)
    for side, other in ((eq.rhs, eq.lhs), (eq.lhs, eq.rhs)):
        if len(side.terms) == 1 and not side.den:
            (t,) = side.terms
            if t.coef == Radical.of(1) and t.mono.degree() == 1:
                return t.mono.symbols()[0], other.unlabeled()
    raise ScriptError("given is not of the form symbol = expression; name the symbol to substitute")


def substitute_given(b: Block, g: Given | Equation, symbol: Symbol | None = None, notes: list[str] | None = None) -> Block:
    eq = g.equation if isinstance(g, Given) else g
    s, repl = given_substitution(eq, symbol)
    if not any(s in item.free_symbols() for item in b.items):
        if notes is not None:
            notes.append(f"substitute_given: {s.ascii_alias} does not occur; unchanged")
        return b
    items = []
    for item in b.items:
        new = substitute(item, s, repl)
        if not new.is_zero():
            items.append(new)
    return Block(tuple(items))


def _like_key(item: Expr):
    if len(item.terms) != 1 or len(item.terms[0].coef.terms) != 1:
        return None
    t = item.terms[0]
    return t.mono, item.den, t.coef.terms[0][1]


def combine(b: Block, notes: list[str] | None = None) -> Block:
    """Merge like terms (same unknowns and same square root); drop zeros."""
    merged: list[Expr] = []
    where: dict = {}
    for item in b.items:
        key = _like_key(item)
        if key is not None and key in where:
            idx = where[key]
            prev = merged[idx]
            total = (prev.unlabeled() + item.unlabeled()).with_mode(prev.terms[0].mode)
            label = prev.terms[0].label or item.terms[0].label
            if notes is not None:
                names = [IROHA[x - 1] for x in (prev.terms[0].label, item.terms[0].label) if x]
                notes.append("combine: merged " + ("+".join(names) if names else "unlabelled terms"))
            merged[idx] = total.with_label(label) if total.terms else total
            continue
        if key is not None:
            where[key] = len(merged)
        merged.append(item)
    return Block(tuple(m for m in merged if not m.is_zero()))


def _convert_term(t: Term) -> Term:
    if t.coef.is_rational() and t.coef.as_fraction().denominator == 1:
        return t
    return replace(t, mode=fit_mode(t.coef, DECIMAL))


def convert(b: Block) -> Block:
    """Re-flag fractional and irrational coefficients for unit-word display
    (1/sqrt(2) -> rt(5 bu), 1/2 -> 5 bu); values are untouched."""
    return Block(tuple(Expr(tuple(_convert_term(t) for t in item.terms), item.den) for item in b.items))


def solve_for(b: Block, s: Symbol) -> Equation:
    return Equation(Expr.symbol(s), solve_expr(b.total(), s))


def evaluate_expr(e: Expr, bindings: Mapping[Symbol, Quantity]) -> Quantity:
    """Evaluate with lengths bound; the result is in the first binding's unit."""
    u = next(iter(bindings.values())).display_unit if bindings else SUN
    values = {s: q.in_unit(u) for s, q in bindings.items()}
    return Quantity.of(e.evaluate(values), u)


def formula_side(formula: Equation | Expr) -> Expr:
    if isinstance(formula, Expr):
        return formula
    for side, other in ((formula.lhs, formula.rhs), (formula.rhs, formula.lhs)):
        if len(side.terms) == 1 and not side.den and side.terms[0].mono.degree() == 1 and side.terms[0].coef == Radical.of(1):
            return other
    raise ScriptError("formula must have a lone unknown on one side")


def evaluate(formula: Equation | Expr, bindings: Mapping[Symbol, Quantity]) -> Quantity:
    return evaluate_expr(formula_side(formula), bindings)


# -- script replay -------------------------------------------------------------

MATCH = "match"
MISMATCH = "mismatch"
NO_GOLDEN = "no-golden"


@dataclass
class DerivationState:
    bindings: dict[str, Value] = field(default_factory=dict)
    label_counter: int = 1

    def get(self, ident: str) -> Value:
        try:
            return self.bindings[ident]
        except KeyError:
            raise ScriptError(f"reference to unknown id {ident!r}") from None

    def bind(self, ident: str, value: Value) -> None:
        if ident in self.bindings:
            raise ScriptError(f"id {ident!r} already defined")
        self.bindings[ident] = value


@dataclass
class StepReport:
    step: Step | None
    result_id: str
    modern: str
    column: str
    status: str
    diff: str = ""
    notes: list[str] = field(default_factory=list)
    kind: str = "given"

    @property
    def verb(self) -> str:
        return self.step.verb if self.step else self.kind

    def summary_line(self) -> str:
        return f"{self.result_id} {self.verb} {self.status}"


def render_value(v: Value) -> tuple[str, str]:
    if isinstance(v, Quantity):
        text = format_quantity(v)
        return text, text
    return render_modern(v), render_column(v).to_text()


def _normalize_golden(text: str) -> str:
    try:
        from .notation.parser import parse

        return canonical_text(parse(text))
    except ParseError:
        return " ".join(text.split())


def _compare(ident: str, v: Value, problem: ProblemFile) -> tuple[str, str]:
    diffs = []
    checked = False
    if ident in problem.expects:
        checked = True
        got = format_quantity(v) if isinstance(v, Quantity) else canonical_text(v)
        want = problem.expects[ident] if isinstance(v, Quantity) else _normalize_golden(problem.expects[ident])
        if got != want:
            diffs.append(f"modern: expected {want!r}, got {got!r}")
    if ident in problem.expect_columns:
        checked = True
        got = render_value(v)[1]
        want = problem.expect_columns[ident]
        if got != want:
            diff = difflib.unified_diff(want.splitlines(), got.splitlines(), "expected", "got", lineterm="")
            diffs.append("column:\n" + "\n".join(diff))
    if not checked:
        return NO_GOLDEN, ""
    return (MISMATCH, "\n".join(diffs)) if diffs else (MATCH, "")


def _symbol_arg(text: str) -> Symbol:
    sym = SYMBOLS.get(text.strip())
    if sym is None:
        raise ScriptError(f"not an unknown: {text!r}")
    return sym


def _expect_type(v, cls, ident):
    if not isinstance(v, cls):
        raise ScriptError(f"{ident!r} is a {type(v).__name__}, expected {cls.__name__}")
    return v


def apply_step(state: DerivationState, step: Step, problem: ProblemFile | None = None) -> tuple[Value, list[str]]:
    notes: list[str] = []
    args = step.args
    verb = step.verb

    def need(n_min, n_max=None):
        n_max = n_min if n_max is None else n_max
        if not n_min <= len(args) <= n_max:
            raise ScriptError(f"line {step.line}: {verb} takes {n_min}..{n_max} arguments, got {len(args)}")

    def eq_arg(i):
        return _expect_type(state.get(args[i]), Equation, args[i])

    def block_arg(i):
        return _expect_type(state.get(args[i]), Block, args[i])

    try:
        if verb == "mul_both":
            need(2)
            result = mul_both(eq_arg(0), parse_expr(args[1]))
        elif verb == "chain":
            need(2)
            result = chain(eq_arg(0), eq_arg(1))
        elif verb == "eliminate":
            need(1)
            result = eliminate(eq_arg(0), notes)
        elif verb == "move_left":
            need(1, 9)
            keep = tuple(_symbol_arg(a) for a in args[1:])
            result = move_left(eq_arg(0), keep, state.label_counter)
            state.label_counter = max(state.label_counter, labels_used(result) + 1)
        elif verb == "substitute_given":
            need(2, 3)
            g = eq_arg(1)
            sym = _symbol_arg(args[2]) if len(args) == 3 else None
            result = substitute_given(block_arg(0), g, sym, notes)
        elif verb == "combine":
            need(1)
            result = combine(block_arg(0), notes)
        elif verb == "convert":
            need(1)
            result = convert(block_arg(0))
        elif verb == "solve_for":
            need(2)
            result = solve_for(block_arg(0), _symbol_arg(args[1]))
        elif verb == "evaluate":
            need(2, 40)
            formula = state.get(args[0])
            bindings = {}
            for a in args[1:]:
                name, _, qty = a.partition("=")
                bindings[_symbol_arg(name)] = parse_quantity(qty)
            result = evaluate(formula, bindings)
        else:
            raise ScriptError(f"line {step.line}: unknown verb {verb!r}")
    except ParseError as exc:
        raise ScriptError(f"line {step.line}: {exc}") from None
    return result, notes


@dataclass
class Replay:
    reports: list[StepReport]
    given_reports: list[StepReport]
    state: DerivationState

    @property
    def all_match(self) -> bool:
        return all(r.status != MISMATCH for r in self.reports + self.given_reports)


def replay(problem: ProblemFile | str | Path) -> Replay:
    if not isinstance(problem, ProblemFile):
        problem = load_problem(problem)
    state = DerivationState()
    given_reports = []
    for kind, group in (("given", problem.givens), ("technique", problem.techniques)):
        for name, g in group.items():
            state.bind(name, g.equation)
            if name in problem.expects or name in problem.expect_columns:
                status, diff = _compare(name, g.equation, problem)
                modern, column = render_value(g.equation)
                given_reports.append(StepReport(None, name, modern, column, status, diff, kind=kind))
    reports = []
    for step in problem.steps:
        result, notes = apply_step(state, step, problem)
        state.bind(step.id, result)
        status, diff = _compare(step.id, result, problem)
        modern, column = render_value(result)
        reports.append(StepReport(step, step.id, modern, column, status, diff, notes))
    return Replay(reports, given_reports, state)


def run_script(problem: ProblemFile | str | Path) -> list[StepReport]:
    return replay(problem).reports
