"""Shared fixtures: corpus documents and random expression generators.

Each generator produces only expressions inside the class its property
is stated for: differentiable-and-evaluable, integrable by the rule
table, linear-with-collapsing-coefficient, parseable-canonical, or
arbitrary raw trees.  All take an explicit ``random.Random`` so bulk
loops are reproducible.
"""
from __future__ import annotations

import random
from fractions import Fraction
from pathlib import Path

import pytest

from mathpar.errors import MathparError
from mathpar.expr import (
    Add,
    Derivative,
    Equation,
    Expr,
    Func,
    Integral,
    Mul,
    Number,
    Pow,
    Symbol,
    SymbolName,
    add,
    canonicalize,
    div,
    ln,
    mul,
    neg,
    num,
    numeric_eval,
    pow_,
    sub,
    sym,
    unit,
)

DATA = Path(__file__).parent / "data"

X = SymbolName("x")
UNIT_NAMES = ["kg", "kJ", "°C"]
SYMBOL_POOL = [
    ("a", None), ("b", None), ("x", None), ("y", None),
    ("m", "c"), ("q", "1"), ("lambda", None),
]


@pytest.fixture(scope="session")
def data_dir() -> Path:
    return DATA


def read_fixture(name: str) -> str:
    return (DATA / name).read_text(encoding="utf-8")


def small_fraction(rng: random.Random, lo: int = -5, hi: int = 5,
                   nonzero: bool = False) -> Fraction:
    n = rng.randint(lo, hi)
    if nonzero and n == 0:
        n = rng.choice([-2, -1, 1, 2, 3])
    return Fraction(n, rng.randint(1, 4))


# --- differentiable expressions ----------------------------------------------


def gen_diff_expr(rng: random.Random, depth: int = 0) -> Expr:
    """One-variable expression safe to evaluate near small sample points."""
    if depth >= 3 or rng.random() < 0.25 + 0.2 * depth:
        if rng.random() < 0.55:
            return sym("x")
        return num(small_fraction(rng))
    choice = rng.randrange(6)
    inner = lambda: gen_diff_expr(rng, depth + 1)  # noqa: E731
    if choice == 0:
        return add(inner(), inner())
    if choice == 1:
        return mul(inner(), inner())
    if choice == 2:
        return pow_(inner(), rng.choice([2, 3]))
    if choice == 3:
        return Func(rng.choice(["sin", "cos"]), inner())
    if choice == 4:
        # damped so sample points stay clear of overflow
        return Func("exp", mul(num(Fraction(1, 4)), inner()))
    if choice == 5 and rng.random() < 0.5:
        # strictly positive argument
        return ln(add(num(2), pow_(inner(), 2)))
    # denominator bounded away from zero
    return div(inner(), add(num(3), pow_(sym("x"), 2)))


def central_difference(e: Expr, name: SymbolName, x: float,
                       h: float = 1e-5) -> float:
    hi = numeric_eval(e, {name: x + h})
    lo = numeric_eval(e, {name: x - h})
    return (hi - lo) / (2.0 * h)


# --- integrable expressions ---------------------------------------------------


def gen_integrand(rng: random.Random) -> Expr:
    terms = [_integrand_term(rng) for _ in range(rng.randint(1, 3))]
    return Add(tuple(terms))


def _integrand_term(rng: random.Random) -> Expr:
    c = small_fraction(rng, nonzero=True)
    kind = rng.randrange(4)
    x = sym("x")
    if kind == 0:
        n = rng.choice([-3, -2, -1, 1, 2, 3, 4, 5])
        return Mul(c, ((x, n),))
    if kind == 1:
        r = rng.choice([Fraction(1, 2), Fraction(-1, 2), Fraction(3, 2), Fraction(2, 3)])
        return Mul(c, ((Pow(x, Number(r)), 1),))
    if kind == 2:
        fk = rng.choice(["cos", "sin", "exp"])
        if rng.random() < 0.25:
            slope: Expr = Mul(Fraction(1), ((sym("s"), 1), (x, 1)))
        else:
            slope = Mul(small_fraction(rng, nonzero=True), ((x, 1),))
        b = small_fraction(rng)
        arg = add(slope, num(b)) if b else slope
        return Mul(c, ((Func(fk, arg), 1),))
    # a constant term, possibly carrying units and a free symbol
    factors: list[tuple[Expr, int]] = []
    if rng.random() < 0.6:
        factors.append((sym(rng.choice("abc")), 1))
    if rng.random() < 0.6:
        factors.append((unit(rng.choice(UNIT_NAMES)), rng.choice([1, -1])))
    return Mul(c, tuple(factors))


# --- linear equations ---------------------------------------------------------


def gen_linear_equation(rng: random.Random) -> Equation:
    """Equation linear in x whose x-coefficient folds to a single monomial.

    Within one equation every x-term shares one numeric-times-units shape,
    so collection gives a single-term coefficient and the solve residual
    cancels structurally, not just numerically.
    """
    coeff_units = _unit_factors(rng)

    def x_term() -> Expr:
        c = small_fraction(rng, nonzero=True)
        return Mul(c, tuple(coeff_units) + ((sym("x"), 1),))

    def const_term() -> Expr:
        c = small_fraction(rng)
        factors = _unit_factors(rng)
        if rng.random() < 0.4:
            factors.append((sym(rng.choice("abc")), 1))
        return Mul(c, tuple(factors))

    lhs_x = x_term()
    lhs_terms = [lhs_x] + [const_term() for _ in range(rng.randint(0, 2))]
    rhs_terms = [const_term() for _ in range(rng.randint(1, 2))]
    if rng.random() < 0.5:
        rhs_x = x_term()
        while rhs_x.coef == lhs_x.coef:  # equal coefficients would cancel to 0 = b
            rhs_x = x_term()
        rhs_terms.append(rhs_x)
    return Equation(Add(tuple(lhs_terms)), Add(tuple(rhs_terms)))


def gen_scale(rng: random.Random) -> Expr:
    return Mul(small_fraction(rng, nonzero=True), tuple(_unit_factors(rng)))


def _unit_factors(rng: random.Random) -> list[tuple[Expr, int]]:
    names = rng.sample(UNIT_NAMES, rng.randint(0, 2))
    return [(unit(n), rng.choice([1, -1, 2])) for n in names]


# --- parseable canonical expressions ------------------------------------------


def gen_parseable(rng: random.Random, depth: int = 0) -> Expr:
    """Raw tree built only from shapes the grammar can express."""
    if depth >= 3 or rng.random() < 0.3 + 0.2 * depth:
        pick = rng.randrange(4)
        if pick == 0:
            return num(Fraction(rng.randint(-9, 9), rng.randint(1, 9)))
        if pick == 1:
            base, subscript = rng.choice(SYMBOL_POOL)
            return Symbol(SymbolName(base, subscript))
        if pick == 2:
            return unit(rng.choice(UNIT_NAMES))
        return sym("x")
    choice = rng.randrange(8)
    inner = lambda: gen_parseable(rng, depth + 1)  # noqa: E731
    if choice == 0:
        return Add(tuple(inner() for _ in range(rng.randint(2, 3))))
    if choice == 1:
        exps = [1, 1, 1, -1, 2, -2, 3]
        return Mul(Fraction(1), tuple(
            (inner(), rng.choice(exps)) for _ in range(rng.randint(2, 3))
        ))
    if choice == 2:
        r = rng.choice([Fraction(1, 2), Fraction(-1, 2), Fraction(3, 2), Fraction(2, 3)])
        return Pow(inner(), Number(r))
    if choice == 3:
        return Func(rng.choice(["cos", "sin", "exp", "ln"]), inner())
    if choice == 4:
        return Integral(inner(), SymbolName(rng.choice("xy")))
    if choice == 5:
        return Derivative(inner(), SymbolName(rng.choice("xy")))
    if choice == 6:
        return neg(inner())
    return sub(inner(), inner())


def gen_canonical_parseable(rng: random.Random) -> Expr:
    while True:
        try:
            return canonicalize(gen_parseable(rng))
        except MathparError:
            continue  # folded a literal zero denominator; try again


# --- arbitrary raw trees ------------------------------------------------------


def gen_raw(rng: random.Random, depth: int = 0) -> Expr:
    """Anything-goes raw tree for canonicalization fuzzing."""
    if depth >= 3 or rng.random() < 0.3 + 0.2 * depth:
        pick = rng.randrange(4)
        if pick == 0:
            return num(small_fraction(rng, lo=-6, hi=6))
        if pick == 1:
            base, subscript = rng.choice(SYMBOL_POOL)
            return Symbol(SymbolName(base, subscript))
        if pick == 2:
            return unit(rng.choice(UNIT_NAMES))
        return num(0)
    choice = rng.randrange(7)
    inner = lambda: gen_raw(rng, depth + 1)  # noqa: E731
    if choice == 0:
        return Add(tuple(inner() for _ in range(rng.randint(1, 3))))
    if choice == 1:
        coef = small_fraction(rng, lo=-4, hi=4)
        return Mul(coef, tuple(
            (inner(), rng.randint(-2, 3)) for _ in range(rng.randint(1, 3))
        ))
    if choice == 2:
        return Pow(inner(), num(rng.randint(-2, 3)))
    if choice == 3:
        r = rng.choice([Fraction(1, 2), Fraction(3, 2), Fraction(-1, 3)])
        return Pow(inner(), Number(r))
    if choice == 4:
        return Func(rng.choice(["cos", "sin", "exp", "ln"]), inner())
    if choice == 5:
        return neg(inner())
    return sub(inner(), inner())
