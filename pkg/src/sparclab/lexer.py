"""Tokenizer for SPARC source text.

Identifier classes follow the usual ASP conventions: variables start with an
uppercase letter, constants and predicate/functor names with a lowercase
letter, sort names with ``#``. ``%`` starts a comment running to end of line.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum, unique

from .errors import LexError


@unique
class TokenKind(Enum):
    IDENT = "identifier"
    VARIABLE = "variable"
    INTEGER = "integer"
    SORT_NAME = "sort name"
    KW_SORTS = "'sorts'"
    KW_PREDICATES = "'predicates'"
    KW_RULES = "'rules'"
    KW_NOT = "'not'"
    EQ = "'='"
    NEQ = "'!='"
    LT = "'<'"
    GT = "'>'"
    LE = "'<='"
    GE = "'>='"
    LBRACE = "'{'"
    RBRACE = "'}'"
    LPAREN = "'('"
    RPAREN = "')'"
    COMMA = "','"
    PERIOD = "'.'"
    DOTDOT = "'..'"
    PIPE = "'|'"
    IF = "':-'"
    PLUS = "'+'"
    MINUS = "'-'"
    STAR = "'*'"
    QUESTION = "'?'"
    EOF = "end of input"


KEYWORDS = {
    "sorts": TokenKind.KW_SORTS,
    "predicates": TokenKind.KW_PREDICATES,
    "rules": TokenKind.KW_RULES,
    "not": TokenKind.KW_NOT,
}

_SINGLE = {
    "=": TokenKind.EQ,
    "{": TokenKind.LBRACE,
    "}": TokenKind.RBRACE,
    "(": TokenKind.LPAREN,
    ")": TokenKind.RPAREN,
    ",": TokenKind.COMMA,
    "|": TokenKind.PIPE,
    "+": TokenKind.PLUS,
    "-": TokenKind.MINUS,
    "*": TokenKind.STAR,
    "?": TokenKind.QUESTION,
}


@dataclass(frozen=True)
class Token:
    kind: TokenKind
    lexeme: str
    line: int
    column: int

    def describe(self) -> str:
        if self.kind is TokenKind.EOF:
            return "end of input"
        return f"'{self.lexeme}'"


def tokenize(source: str) -> list[Token]:
    """Tokenize SPARC source text, raising LexError on illegal characters."""
    tokens: list[Token] = []
    line = 1
    column = 1
    i = 0
    n = len(source)

    def peek(offset: int = 1) -> str:
        j = i + offset
        return source[j] if j < n else ""

    while i < n:
        ch = source[i]
        if ch == "\n":
            i += 1
            line += 1
            column = 1
            continue
        if ch in " \t\r":
            i += 1
            column += 1
            continue
        if ch == "%":
            while i < n and source[i] != "\n":
                i += 1
            continue

        start_line, start_col = line, column

        if ch.isdigit():
            j = i
            while j < n and source[j].isdigit():
                j += 1
            tokens.append(Token(TokenKind.INTEGER, source[i:j], start_line, start_col))
            column += j - i
            i = j
            continue

        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (source[j].isalnum() or source[j] == "_"):
                j += 1
            word = source[i:j]
            if word[0] == "_":
                raise LexError(start_line, start_col, f"identifier may not start with '_': {word!r}")
            kind = KEYWORDS.get(word)
            if kind is None:
                kind = TokenKind.VARIABLE if word[0].isupper() else TokenKind.IDENT
            tokens.append(Token(kind, word, start_line, start_col))
            column += j - i
            i = j
            continue

        if ch == "#":
            j = i + 1
            while j < n and (source[j].isalnum() or source[j] == "_"):
                j += 1
            name = source[i:j]
            if len(name) == 1 or not name[1].isalpha() or not name[1].islower():
                raise LexError(start_line, start_col, "sort name must be '#' followed by a lowercase identifier")
            tokens.append(Token(TokenKind.SORT_NAME, name, start_line, start_col))
            column += j - i
            i = j
            continue

        if ch == ":" and peek() == "-":
            tokens.append(Token(TokenKind.IF, ":-", start_line, start_col))
            i += 2
            column += 2
            continue
        if ch == "!" and peek() == "=":
            tokens.append(Token(TokenKind.NEQ, "!=", start_line, start_col))
            i += 2
            column += 2
            continue
        if ch == "<":
            if peek() == "=":
                tokens.append(Token(TokenKind.LE, "<=", start_line, start_col))
                i += 2
                column += 2
            else:
                tokens.append(Token(TokenKind.LT, "<", start_line, start_col))
                i += 1
                column += 1
            continue
        if ch == ">":
            if peek() == "=":
                tokens.append(Token(TokenKind.GE, ">=", start_line, start_col))
                i += 2
                column += 2
            else:
                tokens.append(Token(TokenKind.GT, ">", start_line, start_col))
                i += 1
                column += 1
            continue
        if ch == ".":
            if peek() == ".":
                tokens.append(Token(TokenKind.DOTDOT, "..", start_line, start_col))
                i += 2
                column += 2
            else:
                tokens.append(Token(TokenKind.PERIOD, ".", start_line, start_col))
                i += 1
                column += 1
            continue

        kind = _SINGLE.get(ch)
        if kind is not None:
            tokens.append(Token(kind, ch, start_line, start_col))
            i += 1
            column += 1
            continue

        raise LexError(start_line, start_col, f"illegal character {ch!r}")

    tokens.append(Token(TokenKind.EOF, "", line, column))
    return tokens
