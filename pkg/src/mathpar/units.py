"""Physical units as literal multiplicative symbols.

Units never block multiplication or division; they ride along as ordinary
factors and cancel through exponent bookkeeping.  Classification against a
registry is applied only where it matters: extracting the unit part of a
quantity, checking that the terms of a variable-free sum agree, and
choosing render text.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Optional

from .errors import MixedUnitsInSum
from .expr import (
    Add, Decimal, Derivative, Equation, Expr, Func, Integral, Mul, Number,
    Pow, SolveCall, Symbol, SymbolName, UnitSym, ValueCall, canonicalize,
    free_symbols,
)

__all__ = [
    "UnitMonomial", "UnitInfo", "UnitRegistry", "standard_registry",
    "classify_symbol", "reduce_units", "split_quantity", "recombine",
    "check_sum_units", "DEGREE_C",
]

DEGREE_C = "°C"


@dataclass(frozen=True)
class UnitMonomial:
    """Map from unit symbol to nonzero integer exponent; empty = dimensionless."""

    exponents: tuple[tuple[str, int], ...] = ()

    @classmethod
    def from_dict(cls, d: Mapping[str, int]) -> "UnitMonomial":
        return cls(tuple(sorted((k, v) for k, v in d.items() if v != 0)))

    def as_dict(self) -> dict[str, int]:
        return dict(self.exponents)

    @property
    def is_dimensionless(self) -> bool:
        return not self.exponents

    def inverse(self) -> "UnitMonomial":
        return UnitMonomial(tuple((k, -v) for k, v in self.exponents))


DIMENSIONLESS = UnitMonomial()


def reduce_units(m1: UnitMonomial, m2: UnitMonomial) -> UnitMonomial:
    """Pointwise exponent addition; zero entries drop out."""
    merged = m1.as_dict()
    for name, exp in m2.exponents:
        merged[name] = merged.get(name, 0) + exp
    return UnitMonomial.from_dict(merged)


@dataclass(frozen=True)
class UnitInfo:
    name: str
    display: str
    source: str


@dataclass
class UnitRegistry:
    """Known unit symbols with their render text; append-only in a session."""

    _units: dict[str, UnitInfo] = field(default_factory=dict)

    def register(self, name: str, display: Optional[str] = None,
                 source: Optional[str] = None) -> None:
        if name in self._units:
            return
        self._units[name] = UnitInfo(name, display or name, source or name)

    def __contains__(self, name: str) -> bool:
        return name in self._units

    def info(self, name: str) -> UnitInfo:
        return self._units.get(name, UnitInfo(name, name, name))

    def names(self) -> Iterable[str]:
        return self._units.keys()

    def copy(self) -> "UnitRegistry":
        return UnitRegistry(dict(self._units))


def standard_registry() -> UnitRegistry:
    reg = UnitRegistry()
    reg.register("kg")
    reg.register("kJ")
    reg.register(DEGREE_C, display="C^{o}", source="\\degreeC")
    return reg


def classify_symbol(name: SymbolName, registry: UnitRegistry) -> str:
    """Return ``"unit"`` for registered names (no subscript), else ``"variable"``."""
    if name.subscript is None and name.base in registry:
        return "unit"
    return "variable"


def split_quantity(e: Expr) -> tuple[Expr, UnitMonomial]:
    """Split a canonical quantity into its unit-free part and unit monomial.

    Sums whose terms carry different monomials raise
    :class:`MixedUnitsInSum`: adding kJ to kg is a mistake worth reporting.
    """
    if isinstance(e, UnitSym):
        return Number(Fraction(1)), UnitMonomial(((e.name, 1),))
    if isinstance(e, Mul):
        units: dict[str, int] = {}
        rest: list[tuple[Expr, int]] = []
        for b, x in e.factors:
            if isinstance(b, UnitSym):
                units[b.name] = units.get(b.name, 0) + x
            else:
                rest.append((b, x))
        return canonicalize(Mul(e.coef, tuple(rest))), UnitMonomial.from_dict(units)
    if isinstance(e, Add):
        parts = [split_quantity(t) for t in e.terms]
        monomials = {m for _, m in parts}
        if len(monomials) > 1:
            raise MixedUnitsInSum(
                "sum mixes incompatible units: "
                + " vs ".join(sorted(_monomial_text(m) for m in monomials))
            )
        rest = canonicalize(Add(tuple(r for r, _ in parts)))
        return rest, parts[0][1]
    return e, DIMENSIONLESS


def recombine(rest: Expr, units: UnitMonomial) -> Expr:
    """Inverse of :func:`split_quantity` on canonical quantities."""
    factors: list[tuple[Expr, int]] = [(rest, 1)]
    factors.extend((UnitSym(name), exp) for name, exp in units.exponents)
    return canonicalize(Mul(Fraction(1), tuple(factors)))


def _monomial_text(m: UnitMonomial) -> str:
    if m.is_dimensionless:
        return "1"
    return "·".join(
        name if exp == 1 else f"{name}^{exp}" for name, exp in m.exponents
    )


def check_sum_units(e: Expr) -> None:
    """Raise :class:`MixedUnitsInSum` for any variable-free sum with mixed units.

    Terms containing free variables have unknown dimension and are left
    alone; units are literal factors, not a type system.
    """
    if isinstance(e, Add):
        if not free_symbols(e):
            split_quantity(e)  # raises on mixed monomials
        for t in e.terms:
            check_sum_units(t)
    elif isinstance(e, Mul):
        for b, _ in e.factors:
            check_sum_units(b)
    elif isinstance(e, Pow):
        check_sum_units(e.base)
        check_sum_units(e.exponent)
    elif isinstance(e, Func):
        check_sum_units(e.arg)
    elif isinstance(e, (Integral, Derivative)):
        check_sum_units(e.body)
    elif isinstance(e, Equation):
        check_sum_units(e.lhs)
        check_sum_units(e.rhs)
    elif isinstance(e, SolveCall):
        check_sum_units(e.equation)
    elif isinstance(e, ValueCall):
        check_sum_units(e.arg)
