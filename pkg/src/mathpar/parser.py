"""Parser: tokens to raw expression trees and document structure.

The parser never simplifies; ``2 - 2`` stays a two-term sum until the
session canonicalizes it.  Identifiers are classified against a unit
registry at parse time, so ``kg`` becomes a unit atom while ``m_c``
stays a variable.

Precedence, loosest to tightest: addition/subtraction, multiplication/
division (explicit or by juxtaposition), exponentiation (right
associative).  Unary minus binds a single multiplicative operand, so
``-a + b`` means ``(-a) + b`` and ``-a^2`` means ``-(a^2)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import MissingDifferential, ParseError, Span
from .expr import (
    Add,
    Derivative,
    Equation,
    Expr,
    Func,
    Integral,
    Mul,
    Number,
    Pow,
    SolveCall,
    Symbol,
    SymbolName,
    UnitSym,
    ValueCall,
    neg,
)
from .lexer import Token, TokenKind, tokenize
from .units import UnitRegistry, classify_symbol, standard_registry

FUNC_COMMANDS = {"\\cos": "cos", "\\sin": "sin", "\\exp": "exp", "\\ln": "ln"}

GREEK_NAMES = {
    "alpha", "beta", "gamma", "delta", "epsilon", "zeta", "eta", "theta",
    "iota", "kappa", "lambda", "mu", "nu", "xi", "omicron", "pi", "rho",
    "sigma", "tau", "upsilon", "phi", "chi", "psi", "omega",
    "Gamma", "Delta", "Theta", "Lambda", "Xi", "Pi", "Sigma", "Upsilon",
    "Phi", "Psi", "Omega",
}

_UNIT_COMMANDS = {"\\degreeC": "°C"}


# --- document model ---------------------------------------------------------


@dataclass(frozen=True)
class TextChunk:
    """Plain prose inside passive text."""

    text: str


@dataclass(frozen=True)
class InlineMath:
    """A ``$...$`` island inside passive text: rendered, never evaluated."""

    expr: Expr
    source: str


@dataclass(frozen=True)
class PassiveSegment:
    chunks: tuple[object, ...]
    verbatim: str  # the quoted run exactly as written, quotes included
    span: Span


@dataclass(frozen=True)
class Assignment:
    name: SymbolName
    rhs: Expr
    span: Span


@dataclass(frozen=True)
class BareExpr:
    expr: Expr
    span: Span


@dataclass(frozen=True)
class PrintStmt:
    args: tuple[Expr, ...]
    span: Span


Statement = Assignment | BareExpr | PrintStmt


@dataclass(frozen=True)
class ActiveSegment:
    statements: tuple[Statement, ...]
    span: Span


Segment = PassiveSegment | ActiveSegment


@dataclass(frozen=True)
class Document:
    segments: tuple[Segment, ...]


# --- parser -----------------------------------------------------------------


class _Parser:
    def __init__(self, tokens: list[Token], registry: UnitRegistry):
        self.toks = tokens
        self.pos = 0
        self.registry = registry

    # token helpers

    def peek(self, offset: int = 0) -> Token | None:
        i = self.pos + offset
        return self.toks[i] if i < len(self.toks) else None

    def next(self) -> Token:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input", self._eof_span())
        self.pos += 1
        return tok

    def expect(self, kind: TokenKind, what: str) -> Token:
        tok = self.peek()
        if tok is None or tok.kind is not kind:
            raise ParseError(f"expected {what}", self._here())
        self.pos += 1
        return tok

    def _here(self) -> Span:
        tok = self.peek()
        return tok.span if tok is not None else self._eof_span()

    def _eof_span(self) -> Span:
        if self.toks:
            end = self.toks[-1].span.end
            return Span(end, end)
        return Span(0, 0)

    # expression grammar

    def parse_expr(self) -> Expr:
        terms = [self._signed_term()]
        while True:
            tok = self.peek()
            if tok is not None and tok.kind is TokenKind.OPERATOR and tok.lexeme in "+-":
                self.next()
                term = self._signed_term()
                terms.append(term if tok.lexeme == "+" else neg(term))
            else:
                break
        return terms[0] if len(terms) == 1 else Add(tuple(terms))

    def _signed_term(self) -> Expr:
        tok = self.peek()
        if tok is not None and tok.kind is TokenKind.OPERATOR and tok.lexeme in "+-":
            self.next()
            term = self._signed_term()
            return neg(term) if tok.lexeme == "-" else term
        return self._mult()

    def _mult(self) -> Expr:
        factors: list[tuple[Expr, int]] = [(self._power(), 1)]
        while True:
            tok = self.peek()
            if tok is None:
                break
            if tok.kind is TokenKind.OPERATOR and tok.lexeme in "*/":
                self.next()
                factors.append((self._explicit_operand(), 1 if tok.lexeme == "*" else -1))
            elif tok.kind is TokenKind.COMMAND and tok.lexeme == "\\cdot":
                self.next()
                factors.append((self._explicit_operand(), 1))
            elif self._starts_operand(tok):
                factors.append((self._power(), 1))
            else:
                break
        if len(factors) == 1 and factors[0][1] == 1:
            return factors[0][0]
        return Mul(Fraction(1), tuple(factors))

    def _explicit_operand(self) -> Expr:
        # after an explicit * / or \cdot a sign is allowed: 2 * -3
        tok = self.peek()
        if tok is not None and tok.kind is TokenKind.OPERATOR and tok.lexeme in "+-":
            self.next()
            operand = self._explicit_operand()
            return neg(operand) if tok.lexeme == "-" else operand
        return self._power()

    def _starts_operand(self, tok: Token) -> bool:
        if tok.kind in (TokenKind.NUMBER, TokenKind.IDENTIFIER, TokenKind.OPEN_PAREN):
            return True
        if tok.kind is TokenKind.COMMAND:
            lex = tok.lexeme
            return (
                lex in FUNC_COMMANDS
                or lex[1:] in GREEK_NAMES
                or lex in _UNIT_COMMANDS
                or lex in ("\\int", "\\D", "\\solve", "\\value")
            )
        return False

    def _power(self) -> Expr:
        base = self._atom()
        tok = self.peek()
        if tok is not None and tok.kind is TokenKind.OPERATOR and tok.lexeme == "^":
            self.next()
            return Pow(base, self._exponent())
        return base

    def _exponent(self) -> Expr:
        tok = self.peek()
        if tok is not None and tok.kind is TokenKind.OPERATOR and tok.lexeme in "+-":
            self.next()
            inner = self._exponent()
            return neg(inner) if tok.lexeme == "-" else inner
        if tok is not None and tok.kind is TokenKind.OPEN_BRACE:
            self.next()
            inner = self.parse_expr()
            self.expect(TokenKind.CLOSE_BRACE, "'}'")
            return inner
        return self._power()

    def _subscript_text(self, tok: Token) -> str:
        lex = tok.lexeme
        return lex[2:-1] if lex.startswith("_{") else lex[1:]

    def _symbol_name(self, base: str) -> SymbolName:
        tok = self.peek()
        if tok is not None and tok.kind is TokenKind.SUBSCRIPT:
            self.next()
            return SymbolName(base, self._subscript_text(tok))
        return SymbolName(base)

    def _name_atom(self, base: str) -> Expr:
        name = self._symbol_name(base)
        if classify_symbol(name, self.registry) == "unit":
            return UnitSym(name.base)
        return Symbol(name)

    def _atom(self) -> Expr:
        tok = self.peek()
        if tok is None:
            raise ParseError("expected an expression", self._eof_span())
        if tok.kind is TokenKind.NUMBER:
            self.next()
            return Number(Fraction(tok.lexeme))
        if tok.kind is TokenKind.IDENTIFIER:
            self.next()
            return self._name_atom(tok.lexeme)
        if tok.kind is TokenKind.OPEN_PAREN:
            self.next()
            inner = self.parse_expr()
            self.expect(TokenKind.CLOSE_PAREN, "')'")
            return inner
        if tok.kind is TokenKind.COMMAND:
            return self._command_atom(tok)
        raise ParseError(f"expected an expression, found {tok.lexeme!r}", tok.span)

    def _command_atom(self, tok: Token) -> Expr:
        lex = tok.lexeme
        if lex in FUNC_COMMANDS:
            self.next()
            self.expect(TokenKind.OPEN_PAREN, f"'(' after {lex}")
            arg = self.parse_expr()
            self.expect(TokenKind.CLOSE_PAREN, "')'")
            return Func(FUNC_COMMANDS[lex], arg)
        if lex in _UNIT_COMMANDS:
            self.next()
            return UnitSym(_UNIT_COMMANDS[lex])
        if lex[1:] in GREEK_NAMES:
            self.next()
            return self._name_atom(lex[1:])
        if lex == "\\int":
            self.next()
            self.expect(TokenKind.OPEN_PAREN, "'(' after \\int")
            body = self.parse_expr()
            self.expect(TokenKind.CLOSE_PAREN, "')'")
            marker = self.peek()
            if marker is None or marker.kind is not TokenKind.DIFFERENTIAL_MARKER:
                raise MissingDifferential(
                    "\\int needs a differential: \\int(...) d <variable>",
                    marker.span if marker is not None else self._eof_span(),
                )
            self.next()
            var_tok = self.peek()
            if var_tok is None or var_tok.kind is not TokenKind.IDENTIFIER:
                raise MissingDifferential(
                    "\\int needs a differential: \\int(...) d <variable>",
                    var_tok.span if var_tok is not None else self._eof_span(),
                )
            self.next()
            return Integral(body, self._symbol_name(var_tok.lexeme))
        if lex == "\\D":
            self.next()
            sub = self.expect(TokenKind.SUBSCRIPT, "subscript naming the variable, as in \\D_{x}")
            var = SymbolName(self._subscript_text(sub))
            self.expect(TokenKind.OPEN_PAREN, "'(' after \\D_{...}")
            body = self.parse_expr()
            self.expect(TokenKind.CLOSE_PAREN, "')'")
            return Derivative(body, var)
        if lex == "\\solve":
            self.next()
            self.expect(TokenKind.OPEN_PAREN, "'(' after \\solve")
            lhs = self.parse_expr()
            self.expect(TokenKind.EQUALS, "'=' inside \\solve(...)")
            rhs = self.parse_expr()
            self.expect(TokenKind.CLOSE_PAREN, "')'")
            return SolveCall(Equation(lhs, rhs))
        if lex == "\\value":
            self.next()
            self.expect(TokenKind.OPEN_PAREN, "'(' after \\value")
            arg = self.parse_expr()
            self.expect(TokenKind.CLOSE_PAREN, "')'")
            return ValueCall(arg)
        if lex == "\\print":
            raise ParseError("\\print is a statement, not an expression", tok.span)
        if lex == "\\cdot":
            raise ParseError("\\cdot needs an operand on each side", tok.span)
        raise ParseError(f"unknown command {lex}", tok.span)

    # statements and documents

    def _statement(self) -> Statement:
        start = self.peek()
        assert start is not None
        if start.kind is TokenKind.COMMAND and start.lexeme == "\\print":
            self.next()
            self.expect(TokenKind.OPEN_PAREN, "'(' after \\print")
            args = [self.parse_expr()]
            while self.peek() is not None and self.peek().kind is TokenKind.COMMA:
                self.next()
                args.append(self.parse_expr())
            close = self.expect(TokenKind.CLOSE_PAREN, "')'")
            return PrintStmt(tuple(args), Span(start.span.start, close.span.end))
        name = self._assignment_target()
        if name is not None:
            rhs = self.parse_expr()
            end = self.toks[self.pos - 1].span.end
            return Assignment(name, rhs, Span(start.span.start, end))
        expr = self.parse_expr()
        end = self.toks[self.pos - 1].span.end
        return BareExpr(expr, Span(start.span.start, end))

    def _assignment_target(self) -> SymbolName | None:
        tok = self.peek()
        if tok is None:
            return None
        if tok.kind is TokenKind.IDENTIFIER:
            base = tok.lexeme
        elif tok.kind is TokenKind.COMMAND and tok.lexeme[1:] in GREEK_NAMES:
            base = tok.lexeme[1:]
        else:
            return None
        nxt = self.peek(1)
        if nxt is not None and nxt.kind is TokenKind.SUBSCRIPT:
            after = self.peek(2)
            if after is not None and after.kind is TokenKind.EQUALS:
                self.next()
                sub = self._subscript_text(self.next())
                self.next()
                return SymbolName(base, sub)
            return None
        if nxt is not None and nxt.kind is TokenKind.EQUALS:
            self.next()
            self.next()
            return SymbolName(base)
        return None

    def _statement_terminator(self) -> None:
        tok = self.peek()
        if tok is None or tok.kind in (TokenKind.PASSIVE_RUN, TokenKind.SEMICOLON):
            if tok is not None and tok.kind is TokenKind.SEMICOLON:
                self.next()
            return
        raise ParseError(f"expected ';' before {tok.lexeme!r}", tok.span)

    def parse_document(self) -> Document:
        segments: list[Segment] = []
        while self.peek() is not None:
            tok = self.peek()
            if tok.kind is TokenKind.PASSIVE_RUN:
                self.next()
                segments.append(_passive_segment(tok, self.registry))
                continue
            statements: list[Statement] = []
            start = tok.span.start
            end = tok.span.end
            while self.peek() is not None and self.peek().kind is not TokenKind.PASSIVE_RUN:
                if self.peek().kind is TokenKind.SEMICOLON:
                    self.next()
                    continue
                stmt = self._statement()
                statements.append(stmt)
                end = stmt.span.end
                self._statement_terminator()
            if statements:
                segments.append(ActiveSegment(tuple(statements), Span(start, end)))
        return Document(tuple(segments))


def _passive_segment(tok: Token, registry: UnitRegistry) -> PassiveSegment:
    inner = tok.lexeme[1:-1]
    chunks: list[object] = []
    plain: list[str] = []
    i = 0
    n = len(inner)

    def flush() -> None:
        if plain:
            chunks.append(TextChunk("".join(plain).replace('\\"', '"')))
            plain.clear()

    while i < n:
        c = inner[i]
        if c == "\\" and i + 1 < n and inner[i + 1] == '"':
            plain.append('\\"')
            i += 2
            continue
        if c == "$":
            close = _find_dollar(inner, i + 1)
            if close is None:
                plain.append(inner[i:])
                i = n
                continue
            math_src = inner[i + 1:close]
            flush()
            chunks.append(_inline_math(math_src, registry))
            i = close + 1
            continue
        plain.append(c)
        i += 1
    flush()
    return PassiveSegment(tuple(chunks), tok.lexeme, tok.span)


def _find_dollar(text: str, start: int) -> int | None:
    i = start
    while i < len(text):
        if text[i] == "\\" and i + 1 < len(text) and text[i + 1] == '"':
            i += 2
            continue
        if text[i] == "$":
            return i
        i += 1
    return None


def _inline_math(source: str, registry: UnitRegistry) -> object:
    # Passive math is display-only, so equations like $q = M c$ are fine here.
    try:
        parser = _Parser(tokenize(source), registry)
        expr = parser.parse_expr()
        if parser.peek() is not None and parser.peek().kind is TokenKind.EQUALS:
            parser.next()
            expr = Equation(expr, parser.parse_expr())
        if parser.peek() is not None:
            return TextChunk(f"${source}$")
        return InlineMath(expr, source)
    except Exception:
        return TextChunk(f"${source}$")


# --- entry points -----------------------------------------------------------


def parse_expression(text: str, registry: UnitRegistry | None = None) -> Expr:
    """Parse a single expression; the whole input must be consumed."""
    registry = registry if registry is not None else standard_registry()
    parser = _Parser(tokenize(text), registry)
    expr = parser.parse_expr()
    leftover = parser.peek()
    if leftover is not None:
        raise ParseError(f"unexpected {leftover.lexeme!r} after expression", leftover.span)
    return expr


def parse_document(text: str, registry: UnitRegistry | None = None) -> Document:
    """Parse a full document into alternating passive and active segments."""
    registry = registry if registry is not None else standard_registry()
    return _Parser(tokenize(text), registry).parse_document()
