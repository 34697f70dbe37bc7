"""Recursive-descent parser for the linear tenzan notation.

Grammar (kanji accepted wherever the ASCII spelling is)::

    document  := statement (NEWLINE statement)*
    statement := block | expr ['=' expr ['as' ALIAS]]
    block     := 'zero' '{' [expr (';' expr)*] '}'
    expr      := sterm (('+' | '-') sterm)*
    sterm     := [sign] [LABEL ':'] [sign] fraction
    fraction  := product ['|' product] ['/' product]     # a|b reads b / a
    product   := factor (['*'] factor)*
    factor    := NUMBER [UNIT] ['商'] | TALLY | 'rt' '(' expr ')' | SYMBOL
               | ALIAS | HOLE | '(' expr ')'
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Union

from ..expr import DECIMAL, PLAIN, Block, Equation, Expr
from ..radical import radical_sqrt
from ..symbols import ALIASES
from ..units import fraction_word_value
from . import lexer as L
from .lexer import LexError, Token, tokenize

Statement = Union[Expr, Equation, Block]


class ParseError(ValueError):
    def __init__(self, message: str, line: int = 0, column: int = 0):
        super().__init__(f"{line}:{column}: {message}" if line else message)
        self.line = line
        self.column = column


class UnsupportedRadicand(ParseError):
    pass


_FACTOR_START = {L.NUMBER, L.TALLY, L.SYMBOL, L.ALIAS, L.HOLE}


class Parser:
    def __init__(self, text: str, env: Mapping[str, Expr] | None = None):
        self.env = dict(env or {})
        try:
            self.tokens = tokenize(text, holes=frozenset(self.env))
        except LexError as exc:
            raise ParseError(str(exc).split(": ", 1)[1], exc.line, exc.column) from None
        self.pos = 0
        self.depth = 0

    # -- token helpers -----------------------------------------------------

    def peek(self) -> Token | None:
        while self.depth and self.pos < len(self.tokens) and self.tokens[self.pos].kind == L.NEWLINE:
            self.pos += 1
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def next(self) -> Token:
        tok = self.peek()
        if tok is None:
            self.error("unexpected end of input")
        self.pos += 1
        return tok

    def at(self, kind: str, value=None) -> bool:
        tok = self.peek()
        if tok is None or tok.kind != kind:
            return False
        return value is None or tok.value == value or tok.lexeme == value

    def expect(self, kind: str, value=None) -> Token:
        if not self.at(kind, value):
            tok = self.peek()
            found = "end of input" if tok is None else repr(tok.lexeme)
            self.error(f"expected {value or kind}, found {found}", tok)
        return self.next()

    def error(self, message: str, tok: Token | None = None):
        tok = tok or self.peek()
        if tok is None:
            # point just past the last token
            if not self.tokens:
                raise ParseError(message, 1, 1)
            last = self.tokens[-1]
            raise ParseError(message, last.line, last.column + len(last.lexeme))
        raise ParseError(message, tok.line, tok.column)

    # -- grammar -----------------------------------------------------------

    def document(self) -> list[Statement]:
        out = []
        while True:
            while self.at(L.NEWLINE):
                self.next()
            if self.peek() is None:
                return out
            out.append(self.statement())
            if self.peek() is not None and not self.at(L.NEWLINE):
                self.error(f"unexpected {self.peek().lexeme!r}")

    def statement(self) -> Statement:
        if self.at(L.KEYWORD, "zero"):
            return self.block()
        lhs = self.expr()
        if not self.at(L.OPERATOR, "="):
            return lhs
        self.next()
        rhs = self.expr()
        alias = None
        if self.at(L.KEYWORD, "as"):
            self.next()
            alias = self.expect(L.ALIAS).value
        return Equation(lhs, rhs, alias)

    def block(self) -> Block:
        self.expect(L.KEYWORD, "zero")
        self.expect(L.PAREN, "{")
        self.depth += 1
        items = []
        if not self.at(L.PAREN, "}"):
            items.append(self.expr())
            while self.at(L.OPERATOR, ";"):
                self.next()
                items.append(self.expr())
        self.expect(L.PAREN, "}")
        self.depth -= 1
        return Block(tuple(items))

    def _sign(self) -> int:
        sign = 1
        while self.at(L.OPERATOR, "-") or self.at(L.OPERATOR, "+"):
            if self.next().value == "-":
                sign = -sign
        return sign

    def signed_term(self) -> Expr:
        sign = self._sign()
        label = None
        if self.at(L.LABEL):
            label = self.next().value
            self.expect(L.OPERATOR, ":")
            sign *= self._sign()
        value = self.fraction()
        if sign < 0:
            value = -value
        if label is not None:
            value = value.with_label(label)
        return value

    def expr(self) -> Expr:
        total = self.signed_term()
        while self.at(L.OPERATOR, "+") or self.at(L.OPERATOR, "-"):
            op = self.next().value
            term = self.signed_term()
            total = total + term if op == "+" else total - term
        return total

    def fraction(self) -> Expr:
        value = self.product()
        if self.at(L.DIVIDER):
            self.next()
            value = self.product() / value
        if self.at(L.OPERATOR, "/"):
            self.next()
            value = value / self.product()
        return value

    def _starts_factor(self) -> bool:
        tok = self.peek()
        if tok is None:
            return False
        if tok.kind in _FACTOR_START:
            return True
        return (tok.kind == L.RADICAL and tok.lexeme in ("rt", "√")) or (tok.kind == L.PAREN and tok.value == "(")

    def product(self) -> Expr:
        # kanji order puts the unit word and 商 after the unknowns (五大分商),
        # so a bare leading number stays open for a later suffix
        pending: Token | None = None
        value = Expr.const(1)
        first = True
        while True:
            if not first:
                if self.at(L.OPERATOR, "*"):
                    self.next()
                elif pending is not None and (self.at(L.UNIT) or self.at(L.RADICAL, "商")):
                    value = value * self._number_suffix(pending.value)
                    pending = None
                    continue
                elif not self._starts_factor():
                    break
            first = False
            tok = self.peek()
            if pending is None and tok is not None and tok.kind == L.NUMBER:
                self.next()
                if self.at(L.UNIT) or self.at(L.RADICAL, "商"):
                    value = value * self._number_suffix(tok.value)
                else:
                    pending = tok
                continue
            value = value * self.factor()
        if pending is not None:
            value = Expr.const(pending.value) * value
        return value

    def _number_suffix(self, q: Fraction) -> Expr:
        mode = PLAIN
        if self.at(L.UNIT):
            q, mode = fraction_word_value(q, self.next().value), DECIMAL
        if self.at(L.RADICAL, "商"):
            self.next()
            return Expr.const(radical_sqrt(q), mode)
        return Expr.const(q, mode)

    def factor(self) -> Expr:
        tok = self.peek()
        if tok is None:
            self.error("expected a factor")
        if tok.kind == L.NUMBER:
            self.next()
            return self._number_suffix(tok.value)
        if tok.kind == L.TALLY:
            self.next()
            return Expr.const(tok.value)
        if tok.kind == L.SYMBOL:
            self.next()
            return Expr.symbol(tok.value)
        if tok.kind == L.ALIAS:
            self.next()
            return Parser(ALIASES[tok.value]).expr()
        if tok.kind == L.HOLE:
            self.next()
            return self.env[tok.value]
        if tok.kind == L.RADICAL and tok.lexeme in ("rt", "√"):
            self.next()
            if tok.lexeme == "√" and not self.at(L.PAREN, "("):
                inner = self.factor()
            else:
                self.expect(L.PAREN, "(")
                inner = self.expr()
                self.expect(L.PAREN, ")")
            return self._root(inner, tok)
        if tok.kind == L.PAREN and tok.value == "(":
            self.next()
            inner = self.expr()
            self.expect(L.PAREN, ")")
            return inner
        self.error(f"unexpected {tok.lexeme!r}", tok)

    def _root(self, inner: Expr, tok: Token) -> Expr:
        if not inner.is_constant():
            raise UnsupportedRadicand("square root of an expression containing unknowns", tok.line, tok.column)
        value = inner.constant_value()
        if not value.is_rational():
            raise UnsupportedRadicand("nested square roots are not supported", tok.line, tok.column)
        q = value.as_fraction()
        if q < 0:
            raise UnsupportedRadicand(f"square root of negative value {q}", tok.line, tok.column)
        mode = DECIMAL if any(t.mode == DECIMAL for t in inner.terms) else PLAIN
        return Expr.const(radical_sqrt(q), mode)


def parse_document(text: str, env: Mapping[str, Expr] | None = None) -> list[Statement]:
    return Parser(text, env).document()


def parse(text: str, env: Mapping[str, Expr] | None = None) -> Statement:
    """Parse exactly one statement."""
    stmts = parse_document(text, env)
    if len(stmts) != 1:
        raise ParseError(f"expected one statement, found {len(stmts)}")
    return stmts[0]


def parse_expr(text: str, env: Mapping[str, Expr] | None = None) -> Expr:
    value = parse(text, env)
    if not isinstance(value, Expr):
        raise ParseError(f"expected an expression: {text!r}")
    return value


def parse_equation(text: str) -> Equation:
    value = parse(text)
    if not isinstance(value, Equation):
        raise ParseError(f"expected an equation: {text!r}")
    return value
