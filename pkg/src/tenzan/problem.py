"""Line-oriented problem files.

::

    name: stsn-small-circle
    source: free text
    unknown dai chu sho
    given NAME: <equation>            # note
    technique NAME: <equation>        # a formula stated by the source
    step ID = VERB(arg, arg, ...)
    expect ID: <modern text>
    expect-column ID: <<EOF
    ...grid lines...
    EOF
    answer: <quantity text>
    verify: formula ID with SYM = <quantity>[, ...] [tol TOL]

``#`` starts a comment except inside here-doc goldens.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .expr import Equation
from .notation.parser import ParseError, parse_equation
from .symbols import SYMBOLS, Symbol
from .units import Quantity, QuantityError, parse_quantity


class ProblemFormatError(ValueError):
    def __init__(self, message: str, line: int = 0):
        super().__init__(f"line {line}: {message}" if line else message)
        self.line = line


@dataclass(frozen=True)
class Given:
    name: str
    equation: Equation
    note: str = ""


@dataclass(frozen=True)
class Step:
    id: str
    verb: str
    args: tuple[str, ...]
    line: int = 0

    def __str__(self) -> str:
        return f"{self.id} = {self.verb}({', '.join(self.args)})"


@dataclass(frozen=True)
class VerifyRequest:
    formula: str
    bindings: tuple[tuple[Symbol, Quantity], ...]
    tol: Fraction | None = None


@dataclass
class ProblemFile:
    name: str = ""
    source: str = ""
    unknowns: list[Symbol] = field(default_factory=list)
    givens: dict[str, Given] = field(default_factory=dict)
    techniques: dict[str, Given] = field(default_factory=dict)
    steps: list[Step] = field(default_factory=list)
    expects: dict[str, str] = field(default_factory=dict)
    expect_columns: dict[str, str] = field(default_factory=dict)
    answer: Quantity | None = None
    verify: VerifyRequest | None = None

    def ids(self) -> set[str]:
        return set(self.givens) | set(self.techniques) | {s.id for s in self.steps}


_STEP = re.compile(r"step\s+(\w+)\s*=\s*(\w+)\s*\((.*)\)\s*$")
_NAMED = re.compile(r"(given|technique)\s+(\w+)\s*:\s*(.+)$")
_EXPECT = re.compile(r"expect\s+(\w+)\s*:\s*(.+)$")
_EXPECT_COLUMN = re.compile(r"expect-column\s+(\w+)\s*:\s*<<(\w+)\s*$")
_VERIFY = re.compile(r"formula\s+(\w+)\s+with\s+(.+?)(?:\s+tol\s+(\S+))?\s*$")


def split_args(text: str) -> tuple[str, ...]:
    """Split on commas that are not nested in brackets."""
    out, depth, cur = [], 0, []
    for ch in text:
        if ch in "({":
            depth += 1
        elif ch in ")}":
            depth -= 1
        if ch == "," and depth == 0:
            out.append("".join(cur).strip())
            cur = []
        else:
            cur.append(ch)
    tail = "".join(cur).strip()
    if tail or out:
        out.append(tail)
    return tuple(out)


def parse_tol(text: str) -> Fraction | float:
    if text.lower() in ("inf", "infinity", "∞"):
        return float("inf")
    try:
        tol = Fraction(text)
    except ValueError:
        raise ProblemFormatError(f"bad tolerance {text!r}") from None
    if tol < 0:
        raise ProblemFormatError("tolerance must be nonnegative")
    return tol


def parse_bindings(text: str) -> tuple[tuple[Symbol, Quantity], ...]:
    out = []
    for part in split_args(text):
        name, eq, qty = part.partition("=")
        sym = SYMBOLS.get(name.strip())
        if not eq or sym is None:
            raise ProblemFormatError(f"bad binding {part!r}")
        out.append((sym, parse_quantity(qty)))
    return tuple(out)


def _strip_comment(line: str) -> tuple[str, str]:
    if line.lstrip().startswith("#"):
        return "", line.lstrip()[1:].strip()
    code, _, note = line.partition(" #")
    return code.strip(), note.strip()


def parse_problem(text: str) -> ProblemFile:
    prob = ProblemFile()
    lines = text.splitlines()
    i = 0
    seen_answer = False
    while i < len(lines):
        lineno = i + 1
        raw = lines[i]
        i += 1
        code, note = _strip_comment(raw)
        if not code:
            continue
        try:
            if m := _EXPECT_COLUMN.match(code):
                ident, tag = m.groups()
                body = []
                while i < len(lines) and lines[i] != tag:
                    body.append(lines[i])
                    i += 1
                if i == len(lines):
                    raise ProblemFormatError(f"unterminated here-doc <<{tag}", lineno)
                i += 1
                prob.expect_columns[ident] = "\n".join(body)
            elif m := _STEP.match(code):
                ident, verb, args = m.groups()
                prob.steps.append(Step(ident, verb, split_args(args), lineno))
            elif m := _NAMED.match(code):
                kind, ident, eq_text = m.groups()
                target = prob.givens if kind == "given" else prob.techniques
                if ident in prob.ids():
                    raise ProblemFormatError(f"duplicate id {ident!r}", lineno)
                target[ident] = Given(ident, parse_equation(eq_text), note)
            elif m := _EXPECT.match(code):
                prob.expects[m.group(1)] = m.group(2).strip()
            elif code.startswith("unknown"):
                for name in code.split()[1:]:
                    sym = SYMBOLS.get(name)
                    if sym is None:
                        raise ProblemFormatError(f"unknown symbol {name!r}", lineno)
                    prob.unknowns.append(sym)
            else:
                key, colon, value = code.partition(":")
                key, value = key.strip(), value.strip()
                if not colon:
                    raise ProblemFormatError(f"cannot read {code!r}", lineno)
                if key == "name":
                    prob.name = value
                elif key == "source":
                    prob.source = value
                elif key == "answer":
                    if seen_answer:
                        raise ProblemFormatError("more than one answer line", lineno)
                    seen_answer = True
                    prob.answer = parse_quantity(value)
                elif key == "verify":
                    vm = _VERIFY.match(value)
                    if not vm:
                        raise ProblemFormatError(f"bad verify line {value!r}", lineno)
                    formula, binds, tol = vm.groups()
                    prob.verify = VerifyRequest(formula, parse_bindings(binds), parse_tol(tol) if tol else None)
                else:
                    raise ProblemFormatError(f"unknown directive {key!r}", lineno)
        except ProblemFormatError as exc:
            if exc.line:
                raise
            raise ProblemFormatError(str(exc), lineno) from None
        except (ParseError, QuantityError) as exc:
            raise ProblemFormatError(str(exc), lineno) from None
    _check(prob)
    return prob


def _check(prob: ProblemFile) -> None:
    seen: set[str] = set()
    for ident in [*prob.givens, *prob.techniques, *(s.id for s in prob.steps)]:
        if ident in seen:
            raise ProblemFormatError(f"duplicate id {ident!r}")
        seen.add(ident)
    for ident in [*prob.expects, *prob.expect_columns]:
        if ident not in seen:
            raise ProblemFormatError(f"expect references unknown id {ident!r}")
    if prob.verify is not None:
        if prob.verify.formula not in seen:
            raise ProblemFormatError(f"verify references unknown id {prob.verify.formula!r}")
        if prob.answer is None:
            raise ProblemFormatError("verify needs an answer line")


def load_problem(path: str | Path) -> ProblemFile:
    return parse_problem(Path(path).read_text(encoding="utf-8"))
