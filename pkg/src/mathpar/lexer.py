"""Tokenizer for Mathpar source text.

Tokens carry exact spans into the source; concatenating all lexemes plus
the skipped whitespace reconstructs the input byte for byte.  Passive text
(double-quoted runs) becomes a single PASSIVE_RUN token, quotes included.

The only context-sensitive rule: after the parenthesized body of ``\\int``
closes, an immediately following identifier ``d`` is retagged as the
differential marker.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .errors import Span, UnknownCharacter, UnterminatedString


class TokenKind(Enum):
    COMMAND = "command"
    IDENTIFIER = "identifier"
    NUMBER = "number"
    OPERATOR = "operator"
    OPEN_PAREN = "open-paren"
    CLOSE_PAREN = "close-paren"
    OPEN_BRACE = "open-brace"
    CLOSE_BRACE = "close-brace"
    SEMICOLON = "semicolon"
    EQUALS = "equals"
    COMMA = "comma"
    PASSIVE_RUN = "passive-run"
    SUBSCRIPT = "subscript"
    DIFFERENTIAL_MARKER = "differential-marker"


@dataclass(frozen=True)
class Token:
    kind: TokenKind
    lexeme: str
    span: Span


_SINGLE_CHAR = {
    "(": TokenKind.OPEN_PAREN,
    ")": TokenKind.CLOSE_PAREN,
    "{": TokenKind.OPEN_BRACE,
    "}": TokenKind.CLOSE_BRACE,
    ";": TokenKind.SEMICOLON,
    "=": TokenKind.EQUALS,
    ",": TokenKind.COMMA,
}

_OPERATORS = set("+-*/^")


def _is_letter(c: str) -> bool:
    return ("a" <= c <= "z") or ("A" <= c <= "Z")


def _is_digit(c: str) -> bool:
    return "0" <= c <= "9"


def tokenize(source: str) -> list[Token]:
    """Tokenize a full Mathpar document (passive runs included)."""
    tokens: list[Token] = []
    i = 0
    n = len(source)
    paren_depth = 0
    int_groups: list[int] = []  # paren depths of open \int bodies
    int_pending = False         # just saw \int, its '(' comes next
    expect_diff = False         # next identifier 'd' is the differential marker

    while i < n:
        c = source[i]
        if c.isspace():
            i += 1
            continue
        start = i

        if c == '"':
            i += 1
            while i < n:
                if source[i] == "\\" and i + 1 < n and source[i + 1] == '"':
                    i += 2
                    continue
                if source[i] == '"':
                    break
                i += 1
            if i >= n:
                raise UnterminatedString("unterminated passive text", Span(start, n))
            i += 1
            kind, lexeme = TokenKind.PASSIVE_RUN, source[start:i]
        elif c == "\\":
            j = i + 1
            while j < n and _is_letter(source[j]):
                j += 1
            if j == i + 1:
                raise UnknownCharacter(
                    f"stray backslash before {source[i+1:j+1]!r}" if j < n
                    else "stray backslash at end of input",
                    Span(i, min(i + 2, n)),
                )
            i = j
            kind, lexeme = TokenKind.COMMAND, source[start:i]
        elif _is_letter(c):
            j = i + 1
            while j < n and _is_letter(source[j]):
                j += 1
            i = j
            kind, lexeme = TokenKind.IDENTIFIER, source[start:i]
        elif _is_digit(c) or (c == "." and i + 1 < n and _is_digit(source[i + 1])):
            j = i
            while j < n and _is_digit(source[j]):
                j += 1
            if j < n and source[j] == "." and j + 1 < n and _is_digit(source[j + 1]):
                j += 1
                while j < n and _is_digit(source[j]):
                    j += 1
            i = j
            kind, lexeme = TokenKind.NUMBER, source[start:i]
        elif c == "_":
            if i + 1 < n and source[i + 1] == "{":
                j = i + 2
                while j < n and (source[j].isalnum()):
                    j += 1
                if j >= n or source[j] != "}" or j == i + 2:
                    raise UnknownCharacter("malformed subscript", Span(start, min(j + 1, n)))
                i = j + 1
            elif i + 1 < n and source[i + 1].isalnum():
                i += 2
            else:
                raise UnknownCharacter("malformed subscript", Span(start, min(i + 1, n)))
            kind, lexeme = TokenKind.SUBSCRIPT, source[start:i]
        elif c in _SINGLE_CHAR:
            i += 1
            kind, lexeme = _SINGLE_CHAR[c], c
        elif c in _OPERATORS:
            i += 1
            kind, lexeme = TokenKind.OPERATOR, c
        else:
            raise UnknownCharacter(f"unexpected character {c!r}", Span(i, i + 1))

        if kind is TokenKind.IDENTIFIER and expect_diff and lexeme == "d":
            kind = TokenKind.DIFFERENTIAL_MARKER
        expect_diff = False

        if kind is TokenKind.OPEN_PAREN:
            if int_pending:
                int_groups.append(paren_depth)
            paren_depth += 1
        elif kind is TokenKind.CLOSE_PAREN:
            paren_depth -= 1
            if int_groups and int_groups[-1] == paren_depth:
                int_groups.pop()
                expect_diff = True

        int_pending = kind is TokenKind.COMMAND and lexeme == "\\int"
        tokens.append(Token(kind, lexeme, Span(start, i)))

    return tokens
