from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from ..symbols import ALIASES, IROHA, IROHA_ASCII, IROHA_VARIANTS, SYMBOLS

NUMBER = "number"
TALLY = "tally-run"
SYMBOL = "symbol"
UNIT = "unit-word"
LABEL = "iroha-label"
RADICAL = "radical-marker"
DIVIDER = "divider"
OPERATOR = "operator"
PAREN = "paren"
ALIAS = "alias-name"
KEYWORD = "keyword"
HOLE = "hole"
NEWLINE = "newline"

UNIT_WORDS = {"bu": "bu", "rin": "rin", "mo": "mo", "ko": "ko", "分": "bu", "厘": "rin", "毛": "mo", "個": "ko"}
KANJI_DIGITS = "〇一二三四五六七八九"
TALLY_CHARS = "|丨"
OPERATORS = {
    "+": "+",
    "-": "-",
    "−": "-",
    "*": "*",
    "×": "*",
    "/": "/",
    "÷": "/",
    "=": "=",
    ";": ";",
    ":": ":",
    "：": ":",
}
PARENS = {"(": "(", ")": ")", "（": "(", "）": ")", "{": "{", "}": "}"}

_ASCII_NUMBER = re.compile(r"[0-9]+(?:\.[0-9]+)?")
_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_KANJI_NUMBER = re.compile(r"[〇一二三四五六七八九十]+")
_ALIAS_NAMES = sorted(ALIASES, key=len, reverse=True)


class LexError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{line}:{column}: {message}")
        self.line = line
        self.column = column


@dataclass(frozen=True)
class Token:
    kind: str
    lexeme: str
    line: int
    column: int
    value: object = None  # normalized payload: Fraction, Symbol, label index, unit name, ...

    def __repr__(self) -> str:
        return f"{self.kind}({self.lexeme})"


def kanji_number(text: str) -> int:
    """Value of a kanji numeral: positional digits, or tens with 十 (二十三 = 23)."""
    if "十" not in text:
        return int("".join(str(KANJI_DIGITS.index(c)) for c in text))
    head, _, tail = text.partition("十")
    if "十" in tail or len(head) > 1 or len(tail) > 1:
        raise ValueError(f"unsupported kanji numeral {text!r}")
    tens = KANJI_DIGITS.index(head) if head else 1
    ones = KANJI_DIGITS.index(tail) if tail else 0
    return tens * 10 + ones


def tokenize(text: str, holes: frozenset[str] | set[str] = frozenset()) -> list[Token]:
    """Split ``text`` into tokens; ``holes`` names extra placeholder identifiers."""
    tokens: list[Token] = []
    i, line, col = 0, 1, 1
    n = len(text)

    def emit(kind, lexeme, value=None):
        tokens.append(Token(kind, lexeme, line, col, value))

    while i < n:
        ch = text[i]
        adjacent = bool(tokens) and tokens[-1].line == line and tokens[-1].column + len(tokens[-1].lexeme) == col
        if ch == "\n":
            emit(NEWLINE, "\n")
            i, line, col = i + 1, line + 1, 1
            continue
        if ch.isspace():
            i, col = i + 1, col + 1
            continue
        if ch == "#":
            while i < n and text[i] != "\n":
                i, col = i + 1, col + 1
            continue
        if ch in TALLY_CHARS:
            j = i
            while j < n and text[j] in TALLY_CHARS:
                j += 1
            run = text[i:j]
            if adjacent and tokens[-1].kind in (NUMBER, SYMBOL, RADICAL) and tokens[-1].lexeme != "rt":
                emit(DIVIDER, run[0])
                i, col = i + 1, col + 1
                run = run[1:]
                if not run:
                    continue
            emit(TALLY, run, len(run))
            i, col = i + len(run), col + len(run)
            continue
        m = _ASCII_NUMBER.match(text, i)
        if m:
            emit(NUMBER, m.group(), Fraction(m.group()))
            i, col = m.end(), col + len(m.group())
            continue
        m = _IDENT.match(text, i)
        if m:
            word = m.group()
            j = m.end()
            while j < n and text[j] in " \t":
                j += 1
            nxt = text[j] if j < n else ""
            if word == "rt":
                emit(RADICAL, word)
            elif word == "zero" and nxt == "{":
                emit(KEYWORD, word)
            elif word == "as":
                emit(KEYWORD, word)
            elif word in IROHA_ASCII and nxt in (":", "："):
                emit(LABEL, word, IROHA_ASCII.index(word) + 1)
            elif word in UNIT_WORDS:
                emit(UNIT, word, UNIT_WORDS[word])
            elif word in holes:
                emit(HOLE, word, word)
            elif SYMBOLS.get(word) is not None:
                emit(SYMBOL, word, SYMBOLS[word])
            else:
                raise LexError(f"unknown name {word!r}", line, col)
            i, col = m.end(), col + len(word)
            continue
        alias = next((a for a in _ALIAS_NAMES if text.startswith(a, i)), None)
        if alias:
            emit(ALIAS, alias, alias)
            i, col = i + len(alias), col + len(alias)
            continue
        m = _KANJI_NUMBER.match(text, i)
        if m:
            try:
                value = kanji_number(m.group())
            except ValueError as exc:
                raise LexError(str(exc), line, col) from None
            emit(NUMBER, m.group(), Fraction(value))
            i, col = m.end(), col + len(m.group())
            continue
        if ch in ("商", "√"):
            emit(RADICAL, ch)
        elif ch in UNIT_WORDS:
            emit(UNIT, ch, UNIT_WORDS[ch])
        elif ch in IROHA or ch in IROHA_VARIANTS:
            glyph = IROHA_VARIANTS.get(ch, ch)
            emit(LABEL, ch, IROHA.index(glyph) + 1)
        elif SYMBOLS.get(ch) is not None:
            emit(SYMBOL, ch, SYMBOLS[ch])
        elif ch in OPERATORS:
            emit(OPERATOR, ch, OPERATORS[ch])
        elif ch in PARENS:
            emit(PAREN, ch, PARENS[ch])
        else:
            raise LexError(f"unknown glyph {ch!r}", line, col)
        i, col = i + 1, col + 1
    return tokens
