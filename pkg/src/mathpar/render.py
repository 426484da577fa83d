"""Rendering of expressions back to Mathpar text.

Two modes:

* ``display`` is presentation LaTeX: ``\\frac{1}{2}``, ``C^{o}``,
  juxtaposition like ``2x`` and ``2\\cos(2x)``, ``\\cdot`` next to units.
* ``source`` is round-trip text: parsing it yields an expression whose
  canonical form equals the canonical form of what was rendered.

Rendering never simplifies; callers canonicalize first when they want
canonical output.
"""
from __future__ import annotations

from fractions import Fraction
from typing import TYPE_CHECKING

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
)
from .parser import GREEK_NAMES
from .units import UnitRegistry, standard_registry

if TYPE_CHECKING:  # pragma: no cover
    from .session import CellResult

DISPLAY = "display"
SOURCE = "source"


def render_expr(e: Expr, mode: str = DISPLAY, registry: UnitRegistry | None = None) -> str:
    """Render an expression as Mathpar text in the given mode."""
    if mode not in (DISPLAY, SOURCE):
        raise ValueError(f"unknown render mode {mode!r}")
    reg = registry if registry is not None else standard_registry()
    return _render(e, mode, reg)


def render_name(name: SymbolName) -> str:
    """Render a variable name as it appears in source text."""
    base = f"\\{name.base}" if name.base in GREEK_NAMES else name.base
    if name.subscript is None:
        return base
    sub = name.subscript
    return f"{base}_{sub}" if len(sub) == 1 else f"{base}_{{{sub}}}"


# --- numbers ------------------------------------------------------------------


def _frac_text(value: Fraction, mode: str) -> str:
    sign = "-" if value < 0 else ""
    v = abs(value)
    if v.denominator == 1:
        return f"{sign}{v.numerator}"
    if mode == DISPLAY:
        return f"{sign}\\frac{{{v.numerator}}}{{{v.denominator}}}"
    return f"{sign}{v.numerator}/{v.denominator}"


def _decimal_text(d: Decimal) -> str:
    scaled = d.value * 10 ** d.places
    digits = str(abs(int(scaled)))
    sign = "-" if scaled < 0 else ""
    if d.places == 0:
        return f"{sign}{digits}"
    digits = digits.rjust(d.places + 1, "0")
    return f"{sign}{digits[:-d.places]}.{digits[-d.places:]}"


# --- factor pieces ------------------------------------------------------------

# crude piece classes drive the display-mode separator choice
_NUM, _SYM, _FUNC, _UNIT, _OTHER = "num", "sym", "func", "unit", "other"


def _sep(left: str, right: str, mode: str) -> str:
    if mode == SOURCE:
        return " * "
    if left == _NUM and right in (_SYM, _FUNC):
        return ""
    if left in (_SYM, _FUNC) and right in (_SYM, _FUNC):
        return " "
    return " \\cdot "


def _piece_class(e: Expr) -> str:
    if isinstance(e, (Number, Decimal)):
        return _NUM
    if isinstance(e, Symbol):
        return _SYM
    if isinstance(e, Func):
        return _FUNC
    if isinstance(e, UnitSym):
        return _UNIT
    return _OTHER


def _atom_text(e: Expr, mode: str, reg: UnitRegistry) -> str:
    """Render a factor base, parenthesizing anything that is not atom-like."""
    if isinstance(e, (Symbol, UnitSym, Func, Integral, Derivative, SolveCall, ValueCall)):
        return _render(e, mode, reg)
    if isinstance(e, Number) and e.value >= 0 and e.value.denominator == 1:
        return _render(e, mode, reg)
    if isinstance(e, Decimal) and e.value >= 0:
        return _render(e, mode, reg)
    return f"({_render(e, mode, reg)})"


def _exponent_text(exp: int, mode: str) -> str:
    if mode == SOURCE and exp >= 0:
        return f"^{exp}"
    return f"^{{{exp}}}"


def _factor_text(base: Expr, exp: int, mode: str, reg: UnitRegistry) -> str:
    text = _atom_text(base, mode, reg)
    return text if exp == 1 else text + _exponent_text(exp, mode)


def _render_mul(e: Mul, mode: str, reg: UnitRegistry) -> str:
    nums = [(b, x) for b, x in e.factors if x > 0]
    dens = [(b, -x) for b, x in e.factors if x < 0]
    sign = "-" if e.coef < 0 else ""
    coef = abs(e.coef)

    pieces: list[tuple[str, str]] = []
    if coef != 1 or not nums:
        pieces.append((_frac_text(coef, mode), _NUM))
    for base, exp in nums:
        pieces.append((_factor_text(base, exp, mode, reg), _piece_class(base)))

    out = pieces[0][0]
    for (prev_text, prev_cls), (text, cls) in zip(pieces, pieces[1:]):
        out += _sep(prev_cls, cls, mode) + text

    if dens:
        den_pieces = [_factor_text(b, x, mode, reg) for b, x in dens]
        if mode == SOURCE:
            # chained /p/q keeps per-factor exponents; a grouped /(p * q) would
            # re-canonicalize as one opaque inverse on reparse
            for (base, exp), piece in zip(dens, den_pieces):
                if isinstance(base, Add) and exp > 1:
                    # /(a+b)^2 reparses as an expanded polynomial inverse;
                    # repeating the division keeps the sum base opaque
                    out += ("/" + _factor_text(base, 1, mode, reg)) * exp
                else:
                    out += "/" + piece
        elif len(den_pieces) == 1:
            out += "/" + den_pieces[0]
        else:
            out += "/(" + " \\cdot ".join(den_pieces) + ")"
    return sign + out


# --- main dispatch ------------------------------------------------------------

# precedence contexts: a term inside Add needs nothing, a factor needs MUL safety
_TOP, _TERM = 0, 1


def _render(e: Expr, mode: str, reg: UnitRegistry) -> str:
    if isinstance(e, Number):
        return _frac_text(e.value, mode)
    if isinstance(e, Decimal):
        return _decimal_text(e)
    if isinstance(e, Symbol):
        return render_name(e.name)
    if isinstance(e, UnitSym):
        info = reg.info(e.name)
        return info.display if mode == DISPLAY else info.source
    if isinstance(e, Add):
        out = _render(e.terms[0], mode, reg)
        for t in e.terms[1:]:
            text = _render(t, mode, reg)
            if text.startswith("-"):
                out += " - " + text[1:]
            else:
                out += " + " + text
        return out
    if isinstance(e, Mul):
        return _render_mul(e, mode, reg)
    if isinstance(e, Pow):
        base = _atom_text(e.base, mode, reg)
        exp = e.exponent
        if isinstance(exp, Number) and exp.value.denominator == 1 and exp.value >= 0:
            inner = _frac_text(exp.value, mode)
            return f"{base}^{{{inner}}}" if mode == DISPLAY else f"{base}^{inner}"
        return f"{base}^{{{_render(exp, mode, reg)}}}"
    if isinstance(e, Func):
        return f"\\{e.kind}({_render(e.arg, mode, reg)})"
    if isinstance(e, Integral):
        return f"\\int({_render(e.body, mode, reg)}) d {render_name(e.var)}"
    if isinstance(e, Derivative):
        return f"\\D_{{{render_name(e.var)}}}({_render(e.body, mode, reg)})"
    if isinstance(e, Equation):
        return f"{_render(e.lhs, mode, reg)} = {_render(e.rhs, mode, reg)}"
    if isinstance(e, SolveCall):
        return f"\\solve({_render(e.equation, mode, reg)})"
    if isinstance(e, ValueCall):
        return f"\\value({_render(e.arg, mode, reg)})"
    raise TypeError(f"not an Expr: {e!r}")


# --- results ------------------------------------------------------------------


def render_output(label: SymbolName | None, value: Expr, mode: str = DISPLAY,
                  registry: UnitRegistry | None = None) -> str:
    """One output line: ``name = value`` when labeled, bare value otherwise."""
    text = render_expr(value, mode, registry)
    if label is None:
        return text
    return f"{render_name(label)} = {text}"


def render_cell_result(result: "CellResult", mode: str = DISPLAY,
                       registry: UnitRegistry | None = None) -> list[str]:
    """Render a cell's outputs and diagnostics as printable lines."""
    lines = [render_output(o.label, o.value, mode, registry) for o in result.outputs]
    lines.extend(d.render() for d in result.diagnostics)
    return lines
