"""Immutable symbolic expression trees and their canonical form.

Expressions are plain frozen dataclasses; constructors enforce nothing, so
parsers and tests can build arbitrary raw trees.  :func:`canonicalize` is
the single normalization entry point every other module relies on for
equality: it folds rationals, collects like terms, merges powers of equal
bases, distributes products over sums, flattens nesting and sorts by a
total order.

Numbers are exact ``fractions.Fraction`` values throughout; floats only
appear at the :func:`numeric_eval` boundary.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Union

from .errors import DivisionByZero, DomainError, UnboundSymbol, UnsupportedNode

__all__ = [
    "SymbolName", "Expr", "Number", "Decimal", "Symbol", "UnitSym", "Add",
    "Mul", "Pow", "Func", "Integral", "Derivative", "Equation", "SolveCall",
    "ValueCall", "num", "sym", "unit", "add", "sub", "mul", "div", "neg",
    "pow_", "cos", "sin", "exp", "ln", "canonicalize", "substitute",
    "numeric_eval", "expr_equals", "free_symbols", "contains_symbol",
    "sort_key",
]

FUNC_KINDS = ("cos", "sin", "exp", "ln")


@dataclass(frozen=True, order=True)
class SymbolName:
    """A variable name: letter base (or Greek command name) plus optional subscript."""

    base: str
    subscript: Optional[str] = None

    def __str__(self) -> str:
        return self.base if self.subscript is None else f"{self.base}_{self.subscript}"


class Expr:
    """Marker base class; concrete nodes are the dataclasses below."""

    __slots__ = ()


@dataclass(frozen=True)
class Number(Expr):
    value: Fraction


@dataclass(frozen=True)
class Decimal(Expr):
    """A rounded value that must display with a fixed number of decimals.

    Produced by the approximation operator; ``value * 10**places`` is an
    integer.  Behaves as its exact rational value in all arithmetic.
    """

    value: Fraction
    places: int


@dataclass(frozen=True)
class Symbol(Expr):
    name: SymbolName


@dataclass(frozen=True)
class UnitSym(Expr):
    """A physical unit acting as a literal multiplicative symbol."""

    name: str


@dataclass(frozen=True)
class Add(Expr):
    terms: tuple[Expr, ...]


@dataclass(frozen=True)
class Mul(Expr):
    """Product ``coef * prod(base**exp)`` with integer exponents."""

    coef: Fraction
    factors: tuple[tuple[Expr, int], ...]


@dataclass(frozen=True)
class Pow(Expr):
    """Opaque power; canonical only when the exponent is not an integer."""

    base: Expr
    exponent: Expr


@dataclass(frozen=True)
class Func(Expr):
    kind: str  # one of FUNC_KINDS
    arg: Expr


@dataclass(frozen=True)
class Integral(Expr):
    body: Expr
    var: SymbolName


@dataclass(frozen=True)
class Derivative(Expr):
    body: Expr
    var: SymbolName


@dataclass(frozen=True)
class Equation(Expr):
    lhs: Expr
    rhs: Expr


@dataclass(frozen=True)
class SolveCall(Expr):
    equation: Equation


@dataclass(frozen=True)
class ValueCall(Expr):
    arg: Expr


# -- raw constructors --------------------------------------------------------

Numeric = Union[int, Fraction, str]


def num(value: Numeric) -> Number:
    return Number(Fraction(value))


def sym(base: str, subscript: Optional[str] = None) -> Symbol:
    return Symbol(SymbolName(base, subscript))


def unit(name: str) -> UnitSym:
    return UnitSym(name)


def add(*terms: Expr) -> Expr:
    return terms[0] if len(terms) == 1 else Add(tuple(terms))


def neg(e: Expr) -> Expr:
    return Mul(Fraction(-1), ((e, 1),))


def sub(a: Expr, b: Expr) -> Expr:
    return Add((a, neg(b)))


def mul(*factors: Expr) -> Expr:
    return factors[0] if len(factors) == 1 else Mul(Fraction(1), tuple((f, 1) for f in factors))


def div(a: Expr, b: Expr) -> Expr:
    return Mul(Fraction(1), ((a, 1), (b, -1)))


def pow_(base: Expr, exponent: Union[Expr, int, Fraction]) -> Expr:
    if not isinstance(exponent, Expr):
        exponent = Number(Fraction(exponent))
    return Pow(base, exponent)


def cos(arg: Expr) -> Func:
    return Func("cos", arg)


def sin(arg: Expr) -> Func:
    return Func("sin", arg)


def exp(arg: Expr) -> Func:
    return Func("exp", arg)


def ln(arg: Expr) -> Func:
    return Func("ln", arg)


# -- total order -------------------------------------------------------------

_RANKS = {
    Number: 0, Decimal: 0, Symbol: 1, UnitSym: 2, Func: 3, Pow: 4,
    Add: 5, Mul: 6, Integral: 7, Derivative: 8, Equation: 9,
    SolveCall: 10, ValueCall: 11,
}


def sort_key(e: Expr) -> tuple:
    """Total order key: variables before units, structurally recursive."""
    if isinstance(e, Number):
        return (0, 0, e.value, 0)
    if isinstance(e, Decimal):
        return (0, 1, e.value, e.places)
    if isinstance(e, Symbol):
        return (1, e.name.base, e.name.subscript or "")
    if isinstance(e, UnitSym):
        return (2, e.name)
    if isinstance(e, Func):
        return (3, e.kind, sort_key(e.arg))
    if isinstance(e, Pow):
        return (4, sort_key(e.base), sort_key(e.exponent))
    if isinstance(e, Add):
        return (5, tuple(sort_key(t) for t in e.terms))
    if isinstance(e, Mul):
        return (6, tuple((sort_key(b), x) for b, x in e.factors), e.coef)
    if isinstance(e, Integral):
        return (7, sort_key(e.body), e.var.base, e.var.subscript or "")
    if isinstance(e, Derivative):
        return (8, sort_key(e.body), e.var.base, e.var.subscript or "")
    if isinstance(e, Equation):
        return (9, sort_key(e.lhs), sort_key(e.rhs))
    if isinstance(e, SolveCall):
        return (10, sort_key(e.equation))
    if isinstance(e, ValueCall):
        return (11, sort_key(e.arg))
    raise TypeError(f"not an Expr: {e!r}")


# -- canonicalization --------------------------------------------------------

def _term_parts(e: Expr) -> tuple[Fraction, tuple[tuple[Expr, int], ...]]:
    """Split a canonical non-Add term into (coefficient, monomial factors)."""
    if isinstance(e, Number):
        return e.value, ()
    if isinstance(e, Decimal):
        # decimals degrade to their exact value when summed
        return e.value, ()
    if isinstance(e, Mul):
        return e.coef, e.factors
    return Fraction(1), ((e, 1),)


def _rebuild_term(coef: Fraction, factors: tuple[tuple[Expr, int], ...]) -> Expr:
    if not factors:
        return Number(coef)
    if coef == 1 and len(factors) == 1 and factors[0][1] == 1:
        return factors[0][0]
    return Mul(coef, factors)


def _canon_add(terms: Iterable[Expr]) -> Expr:
    """Build a canonical sum from canonical terms: flatten, collect, sort."""
    flat: list[Expr] = []
    for t in terms:
        if isinstance(t, Add):
            flat.extend(t.terms)
        else:
            flat.append(t)
    grouped: dict[tuple, tuple[Fraction, tuple[tuple[Expr, int], ...]]] = {}
    for t in flat:
        coef, factors = _term_parts(t)
        key = tuple((sort_key(b), x) for b, x in factors)
        if key in grouped:
            prev_coef, _ = grouped[key]
            grouped[key] = (prev_coef + coef, factors)
        else:
            grouped[key] = (coef, factors)
    rebuilt = [
        _rebuild_term(coef, factors)
        for coef, factors in grouped.values()
        if coef != 0
    ]
    if not rebuilt:
        return Number(Fraction(0))
    # constants sort last; otherwise by monomial order
    rebuilt.sort(key=lambda t: (1, ()) if isinstance(t, (Number, Decimal)) else (0, sort_key(t)))
    if len(rebuilt) == 1:
        return rebuilt[0]
    return Add(tuple(rebuilt))


def _mul2(a: Expr, b: Expr) -> Expr:
    """Product of two canonical expressions, distributing over sums."""
    if isinstance(a, Add):
        return _canon_add([_mul2(t, b) for t in a.terms])
    if isinstance(b, Add):
        return _canon_add([_mul2(a, t) for t in b.terms])
    ca, fa = _term_parts(a)
    cb, fb = _term_parts(b)
    return _mul_from_parts(ca * cb, list(fa) + list(fb))


def _mul_from_parts(coef: Fraction, parts: list[tuple[Expr, int]]) -> Expr:
    """Build a canonical product from canonical bases with integer exponents."""
    factors: dict[tuple, tuple[Expr, int]] = {}
    is_zero = False

    def push(base: Expr, ex: int) -> None:
        nonlocal coef, is_zero
        if ex == 0:
            return
        if isinstance(base, Number):
            if base.value == 0:
                if ex < 0:
                    raise DivisionByZero("division by zero")
                is_zero = True
            else:
                coef *= base.value ** ex
            return
        if isinstance(base, Mul):
            if base.coef == 0:
                if ex < 0:
                    raise DivisionByZero("division by zero")
                is_zero = True
                return
            coef *= base.coef ** ex
            for b, x in base.factors:
                push(b, x * ex)
            return
        key = sort_key(base)
        if key in factors:
            _, prev = factors[key]
            factors[key] = (base, prev + ex)
        else:
            factors[key] = (base, ex)

    for b, x in parts:
        push(b, x)

    if is_zero or coef == 0:
        return Number(Fraction(0))

    # exponents are settled; only now do net-positive sums distribute, so
    # a sum and its inverse cancel instead of expanding
    sums: list[tuple[Expr, int]] = []
    kept: list[tuple[Expr, int]] = []
    for _, (b, x) in sorted(factors.items(), key=lambda kv: kv[0]):
        if x == 0:
            continue
        if isinstance(b, Add) and x > 0:
            sums.append((b, x))
        else:
            kept.append((b, x))
    core = _rebuild_term(coef, tuple(kept))
    for s, ex in sums:
        for _ in range(ex):
            core = _mul2(core, s)
    return core


def canonicalize(e: Expr) -> Expr:
    """Return the canonical form of ``e``.

    Idempotent, and value-preserving at every point where both the input
    and output are defined.  Raises :class:`DivisionByZero` when folding a
    literal zero denominator.
    """
    if isinstance(e, (Number, Decimal, Symbol, UnitSym)):
        return e
    if isinstance(e, Add):
        return _canon_add([canonicalize(t) for t in e.terms])
    if isinstance(e, Mul):
        return _mul_from_parts(e.coef, [(canonicalize(b), x) for b, x in e.factors])
    if isinstance(e, Pow):
        base = canonicalize(e.base)
        ex = canonicalize(e.exponent)
        if isinstance(ex, Number) and ex.value.denominator == 1:
            n = int(ex.value)
            if n == 0:
                return Number(Fraction(1))
            if n == 1:
                return base
            return _mul_from_parts(Fraction(1), [(base, n)])
        return Pow(base, ex)
    if isinstance(e, Func):
        arg = canonicalize(e.arg)
        if arg == Number(Fraction(0)):
            if e.kind == "cos":
                return Number(Fraction(1))
            if e.kind == "sin":
                return Number(Fraction(0))
            if e.kind == "exp":
                return Number(Fraction(1))
        if e.kind == "ln" and arg == Number(Fraction(1)):
            return Number(Fraction(0))
        return Func(e.kind, arg)
    if isinstance(e, Integral):
        return Integral(canonicalize(e.body), e.var)
    if isinstance(e, Derivative):
        return Derivative(canonicalize(e.body), e.var)
    if isinstance(e, Equation):
        return Equation(canonicalize(e.lhs), canonicalize(e.rhs))
    if isinstance(e, SolveCall):
        eq = e.equation
        return SolveCall(Equation(canonicalize(eq.lhs), canonicalize(eq.rhs)))
    if isinstance(e, ValueCall):
        return ValueCall(canonicalize(e.arg))
    raise TypeError(f"not an Expr: {e!r}")


# -- substitution ------------------------------------------------------------

Bindings = Mapping[SymbolName, Expr]


def _subst(e: Expr, bindings: Bindings) -> Expr:
    if isinstance(e, Symbol):
        return bindings.get(e.name, e)
    if isinstance(e, (Number, Decimal, UnitSym)):
        return e
    if isinstance(e, Add):
        return Add(tuple(_subst(t, bindings) for t in e.terms))
    if isinstance(e, Mul):
        return Mul(e.coef, tuple((_subst(b, bindings), x) for b, x in e.factors))
    if isinstance(e, Pow):
        return Pow(_subst(e.base, bindings), _subst(e.exponent, bindings))
    if isinstance(e, Func):
        return Func(e.kind, _subst(e.arg, bindings))
    if isinstance(e, (Integral, Derivative)):
        # the bound variable is shielded inside its own body
        inner = {k: v for k, v in bindings.items() if k != e.var}
        return type(e)(_subst(e.body, inner), e.var)
    if isinstance(e, Equation):
        return Equation(_subst(e.lhs, bindings), _subst(e.rhs, bindings))
    if isinstance(e, SolveCall):
        eq = e.equation
        return SolveCall(Equation(_subst(eq.lhs, bindings), _subst(eq.rhs, bindings)))
    if isinstance(e, ValueCall):
        return ValueCall(_subst(e.arg, bindings))
    raise TypeError(f"not an Expr: {e!r}")


def substitute(e: Expr, bindings: Bindings) -> Expr:
    """Replace bound symbols and canonicalize; unbound symbols stay symbolic."""
    return canonicalize(_subst(e, bindings))


# -- numeric evaluation ------------------------------------------------------

def numeric_eval(e: Expr, bindings: Mapping[SymbolName, float],
                 units_as_one: bool = False) -> float:
    """IEEE-double evaluation; the independent oracle for the symbolic layer.

    Works on raw as well as canonical trees.  Unit symbols evaluate as 1
    only when ``units_as_one`` is set, otherwise they are unbound.
    """
    if isinstance(e, (Number, Decimal)):
        return float(e.value)
    if isinstance(e, Symbol):
        try:
            return float(bindings[e.name])
        except KeyError:
            raise UnboundSymbol(f"unbound symbol '{e.name}'") from None
    if isinstance(e, UnitSym):
        if units_as_one:
            return 1.0
        raise UnboundSymbol(f"unit '{e.name}' has no numeric value")
    if isinstance(e, Add):
        return sum(numeric_eval(t, bindings, units_as_one) for t in e.terms)
    if isinstance(e, Mul):
        out = float(e.coef)
        for b, x in e.factors:
            v = numeric_eval(b, bindings, units_as_one)
            if v == 0.0 and x < 0:
                raise DomainError("division by zero")
            out *= v ** x
        return out
    if isinstance(e, Pow):
        b = numeric_eval(e.base, bindings, units_as_one)
        x = numeric_eval(e.exponent, bindings, units_as_one)
        try:
            r = math.pow(b, x)
        except (ValueError, OverflowError, ZeroDivisionError) as ex:
            raise DomainError(f"cannot evaluate power: {ex}") from None
        return r
    if isinstance(e, Func):
        v = numeric_eval(e.arg, bindings, units_as_one)
        try:
            if e.kind == "cos":
                return math.cos(v)
            if e.kind == "sin":
                return math.sin(v)
            if e.kind == "exp":
                return math.exp(v)
            if e.kind == "ln":
                return math.log(v)
        except (ValueError, OverflowError) as ex:
            raise DomainError(f"cannot evaluate {e.kind}: {ex}") from None
    raise UnsupportedNode(f"cannot numerically evaluate {type(e).__name__}")


# -- equality and queries ----------------------------------------------------

def expr_equals(a: Expr, b: Expr) -> bool:
    """True iff the canonical forms are structurally identical."""
    return canonicalize(a) == canonicalize(b)


def free_symbols(e: Expr) -> set[SymbolName]:
    out: set[SymbolName] = set()

    def walk(x: Expr) -> None:
        if isinstance(x, Symbol):
            out.add(x.name)
        elif isinstance(x, Add):
            for t in x.terms:
                walk(t)
        elif isinstance(x, Mul):
            for b, _ in x.factors:
                walk(b)
        elif isinstance(x, Pow):
            walk(x.base)
            walk(x.exponent)
        elif isinstance(x, Func):
            walk(x.arg)
        elif isinstance(x, (Integral, Derivative)):
            walk(x.body)
        elif isinstance(x, Equation):
            walk(x.lhs)
            walk(x.rhs)
        elif isinstance(x, SolveCall):
            walk(x.equation)
        elif isinstance(x, ValueCall):
            walk(x.arg)

    walk(e)
    return out


def contains_symbol(e: Expr, name: SymbolName) -> bool:
    return name in free_symbols(e)
