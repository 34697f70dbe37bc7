from .column import ColumnLayout, render_column
from .lexer import LexError, Token, tokenize
from .modern import canonical_text, render_modern
from .parser import ParseError, UnsupportedRadicand, fraction_word_value, parse, parse_document, parse_equation, parse_expr

__all__ = [
    "ColumnLayout",
    "LexError",
    "ParseError",
    "Token",
    "UnsupportedRadicand",
    "canonical_text",
    "fraction_word_value",
    "parse",
    "parse_document",
    "parse_equation",
    "parse_expr",
    "render_column",
    "render_modern",
    "tokenize",
]
