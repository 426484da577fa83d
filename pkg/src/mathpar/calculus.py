"""Symbolic operators: derivative, antiderivative, linear solve, rounding.

All operators canonicalize their input first and return canonical output.
``integrate`` covers the freshman table: powers of the variable and
cos/sin/exp of arguments linear in the variable, times anything constant.
Everything else raises so the caller can report the offending term rather
than silently return nonsense.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    DegenerateEquation,
    FreeVariable,
    MixedUnitsInSum,
    NonlinearEquation,
    UnsupportedIntegrand,
    UnsupportedNode,
)
from .expr import (
    Add,
    Decimal,
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
    add,
    canonicalize,
    contains_symbol,
    div,
    free_symbols,
    ln,
    mul,
    neg,
    num,
    numeric_eval,
    pow_,
    sub,
    substitute,
)
from .units import split_quantity

_ZERO = Number(Fraction(0))
_ONE = Number(Fraction(1))


# --- differentiation ---------------------------------------------------------


def differentiate(e: Expr, var: SymbolName) -> Expr:
    """Exact derivative with respect to ``var``, canonical."""
    return canonicalize(_diff(canonicalize(e), var))


def _diff(e: Expr, var: SymbolName) -> Expr:
    if isinstance(e, (Number, Decimal, UnitSym)):
        return _ZERO
    if isinstance(e, Symbol):
        return _ONE if e.name == var else _ZERO
    if isinstance(e, Add):
        return Add(tuple(_diff(t, var) for t in e.terms))
    if isinstance(e, Mul):
        terms: list[Expr] = []
        for i, (base, exp) in enumerate(e.factors):
            d = _diff(base, var)
            if d == _ZERO:
                continue
            others = [(b, x) for j, (b, x) in enumerate(e.factors) if j != i]
            factors = [(d, 1)] + others
            if exp != 1:
                factors.append((base, exp - 1))
            terms.append(Mul(e.coef * exp, tuple(factors)))
        if not terms:
            return _ZERO
        return Add(tuple(terms)) if len(terms) > 1 else terms[0]
    if isinstance(e, Pow):
        base, expo = e.base, e.exponent
        db = _diff(base, var)
        if not contains_symbol(expo, var):
            # d(f^r) = r f^(r-1) f'
            if db == _ZERO:
                return _ZERO
            return mul(expo, pow_(base, canonicalize(sub(expo, _ONE))), db)
        # general f^g
        dg = _diff(expo, var)
        return mul(
            Pow(base, expo),
            add(mul(dg, ln(base)), mul(expo, db, pow_(base, num(-1)))),
        )
    if isinstance(e, Func):
        d_arg = _diff(e.arg, var)
        if d_arg == _ZERO:
            return _ZERO
        if e.kind == "cos":
            outer: Expr = neg(Func("sin", e.arg))
        elif e.kind == "sin":
            outer = Func("cos", e.arg)
        elif e.kind == "exp":
            outer = Func("exp", e.arg)
        else:  # ln
            outer = pow_(e.arg, num(-1))
        return mul(outer, d_arg)
    if isinstance(e, Integral):
        if e.var == var:
            return e.body
        raise UnsupportedNode(
            f"cannot differentiate an unevaluated integral in d{e.var}"
        )
    raise UnsupportedNode(f"cannot differentiate {type(e).__name__}")


# --- integration -------------------------------------------------------------


def integrate(e: Expr, var: SymbolName) -> Expr:
    """Antiderivative with respect to ``var`` (no integration constant)."""
    canon = canonicalize(e)
    terms = canon.terms if isinstance(canon, Add) else (canon,)
    return canonicalize(Add(tuple(_integrate_term(t, var) for t in terms)))


def _describe(e: Expr) -> str:
    from .render import render_expr

    return render_expr(e, mode="source")


def _integrate_term(term: Expr, var: SymbolName) -> Expr:
    if isinstance(term, Number):
        coef, factors = term.value, ()
    elif isinstance(term, Decimal):
        coef, factors = term.value, ()
    elif isinstance(term, Mul):
        coef, factors = term.coef, term.factors
    else:
        coef, factors = Fraction(1), ((term, 1),)

    const: list[tuple[Expr, int]] = []
    dep: list[tuple[Expr, int]] = []
    for b, x in factors:
        (dep if contains_symbol(b, var) else const).append((b, x))

    if not dep:
        return Mul(coef, tuple(const) + ((Symbol(var), 1),))
    if len(dep) > 1:
        raise UnsupportedIntegrand(
            f"cannot integrate {_describe(term)} with respect to {var}"
        )

    base, exp = dep[0]
    core = _integrate_core(base, exp, term, var)
    return Mul(coef, ((core, 1),) + tuple(const))


def _integrate_core(base: Expr, exp: int, term: Expr, var: SymbolName) -> Expr:
    x = Symbol(var)
    if base == x:
        if exp == -1:
            return ln(x)
        return Mul(Fraction(1, exp + 1), ((x, exp + 1),))
    if isinstance(base, Pow) and base.base == x and isinstance(base.exponent, Number):
        r = base.exponent.value * exp
        if r == -1:
            return ln(x)
        new = r + 1
        if new.denominator == 1:
            return Mul(Fraction(1) / new, ((x, int(new)),))
        return Mul(Fraction(1) / new, ((Pow(x, Number(new)), 1),))
    if isinstance(base, Func) and exp == 1 and base.kind in ("cos", "sin", "exp"):
        slope = differentiate(base.arg, var)
        intercept = canonicalize(sub(base.arg, mul(slope, x)))
        if (
            slope == _ZERO
            or contains_symbol(slope, var)
            or contains_symbol(intercept, var)
        ):
            raise UnsupportedIntegrand(
                f"cannot integrate {_describe(term)}: argument of "
                f"\\{base.kind} is not linear in {var}"
            )
        if base.kind == "cos":
            outer: Expr = Func("sin", base.arg)
        elif base.kind == "sin":
            outer = Mul(Fraction(-1), ((Func("cos", base.arg), 1),))
        else:
            outer = Func("exp", base.arg)
        return canonicalize(div(outer, slope))
    raise UnsupportedIntegrand(
        f"cannot integrate {_describe(term)} with respect to {var}"
    )


# --- linear solve ------------------------------------------------------------


@dataclass(frozen=True)
class SolveResult:
    unknown: SymbolName
    value: Expr


def solve_linear(equation: Equation, unknown: SymbolName) -> SolveResult:
    """Solve ``lhs = rhs`` for an unknown appearing at most linearly."""
    diff = canonicalize(sub(equation.lhs, equation.rhs))
    terms = diff.terms if isinstance(diff, Add) else (diff,)

    coef_terms: list[Expr] = []  # A in A*x + B = 0
    rest_terms: list[Expr] = []  # B
    for term in terms:
        if isinstance(term, (Number, Decimal)):
            rest_terms.append(term)
            continue
        if isinstance(term, Mul):
            coef, factors = term.coef, term.factors
        else:
            coef, factors = Fraction(1), ((term, 1),)
        degree = 0
        others: list[tuple[Expr, int]] = []
        for b, x in factors:
            if b == Symbol(unknown):
                degree += x
            elif contains_symbol(b, unknown):
                raise NonlinearEquation(
                    f"{unknown} appears inside {_describe(b)}"
                )
            else:
                others.append((b, x))
        if degree == 0:
            rest_terms.append(term)
        elif degree == 1:
            coef_terms.append(Mul(coef, tuple(others)))
        else:
            raise NonlinearEquation(f"{unknown} appears with degree {degree}")

    a = canonicalize(Add(tuple(coef_terms))) if coef_terms else _ZERO
    b = canonicalize(Add(tuple(rest_terms))) if rest_terms else _ZERO
    if a == _ZERO:
        if b == _ZERO:
            raise DegenerateEquation(f"every value of {unknown} is a solution")
        raise DegenerateEquation(f"no value of {unknown} satisfies the equation")
    value = canonicalize(Mul(Fraction(-1), ((b, 1), (a, -1))))
    return SolveResult(unknown, value)


# --- decimal approximation ---------------------------------------------------


def round_half_away(value: Fraction, places: int) -> Fraction:
    """Round to ``places`` decimals, ties away from zero, exactly."""
    scale = Fraction(10) ** places
    scaled = abs(value) * scale
    rounded = (scaled.numerator * 2 + scaled.denominator) // (scaled.denominator * 2)
    if value < 0:
        rounded = -rounded
    return Fraction(rounded, 1) / scale


def _contains_unit(e: Expr) -> bool:
    if isinstance(e, UnitSym):
        return True
    if isinstance(e, Add):
        return any(_contains_unit(t) for t in e.terms)
    if isinstance(e, Mul):
        return any(_contains_unit(b) for b, _ in e.factors)
    if isinstance(e, Pow):
        return _contains_unit(e.base) or _contains_unit(e.exponent)
    if isinstance(e, Func):
        return _contains_unit(e.arg)
    if isinstance(e, (Integral, Derivative)):
        return _contains_unit(e.body)
    if isinstance(e, Equation):
        return _contains_unit(e.lhs) or _contains_unit(e.rhs)
    if isinstance(e, (SolveCall, ValueCall)):
        inner = e.equation if isinstance(e, SolveCall) else e.arg
        return _contains_unit(inner)
    return False


def approximate(e: Expr, places: int = 2) -> Expr:
    """Decimal value at ``places`` decimals, units carried along.

    The expression must be closed: free variables raise
    :class:`FreeVariable`, units that do not reduce to a single monomial
    raise :class:`MixedUnitsInSum`.
    """
    from .units import recombine

    canon = canonicalize(e)
    names = free_symbols(canon)
    if names:
        listed = ", ".join(sorted(str(n) for n in names))
        raise FreeVariable(f"cannot take a numeric value: {listed} unbound")
    rest, units = split_quantity(canon)
    if _contains_unit(rest):
        raise MixedUnitsInSum("units do not reduce to a single monomial")
    if isinstance(rest, Number):
        exact = rest.value
    elif isinstance(rest, Decimal):
        exact = rest.value
    else:
        exact = Fraction(numeric_eval(rest, {}))
    return recombine(Decimal(round_half_away(exact, places), places), units)
