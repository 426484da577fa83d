"""Evaluation sessions: bindings, cell execution, output collection.

A cell is parsed into segments; passive segments are skipped untouched
(:func:`evaluate` is the single entry into the math engine, so tests can
prove passive text never reaches it).  Active statements run in order;
the first error stops the rest of the cell but keeps earlier bindings.

Output rules: ``\\print`` emits one output per argument, labeled when the
argument is a bare variable.  Without any ``\\print``, the value of the
last statement becomes a single unlabeled output, suppressed when the
cell errored.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .calculus import approximate, differentiate, integrate, solve_linear
from .document import split_cells
from .errors import Diagnostic, DomainError, MathparError, UnitAsUnknown
from .expr import (
    Add,
    Derivative,
    Equation,
    Expr,
    Func,
    Integral,
    Mul,
    Pow,
    SolveCall,
    Symbol,
    SymbolName,
    ValueCall,
    canonicalize,
    substitute,
)
from .parser import (
    ActiveSegment,
    Assignment,
    BareExpr,
    Document,
    PassiveSegment,
    PrintStmt,
    parse_document,
)
from .units import UnitRegistry, check_sum_units, classify_symbol, standard_registry

DEFAULT_UNKNOWN = SymbolName("x")
DEFAULT_PRECISION = 2


@dataclass
class Env:
    """Mutable session state: bindings plus solve and rounding settings."""

    registry: UnitRegistry = field(default_factory=standard_registry)
    bindings: dict[SymbolName, Expr] = field(default_factory=dict)
    unknown: SymbolName = DEFAULT_UNKNOWN
    precision: int = DEFAULT_PRECISION


@dataclass(frozen=True)
class Output:
    label: Optional[SymbolName]
    value: Expr


@dataclass(frozen=True)
class CellResult:
    outputs: tuple[Output, ...]
    diagnostics: tuple[Diagnostic, ...]

    @property
    def ok(self) -> bool:
        return not any(d.severity == "error" for d in self.diagnostics)


def parse_name(text: str) -> SymbolName:
    """Read a variable name like ``x``, ``m_c`` or ``q_{12}``."""
    base, sep, sub = text.partition("_")
    if not sep:
        return SymbolName(base)
    return SymbolName(base, sub.strip("{}") or None)


def set_unknown(env: Env, name: SymbolName | str) -> None:
    """Choose the variable ``\\solve`` solves for."""
    if isinstance(name, str):
        name = parse_name(name)
    if classify_symbol(name, env.registry) == "unit":
        raise UnitAsUnknown(f"'{name}' is a unit, not a variable")
    env.unknown = name


def reset_session(env: Env) -> None:
    """Forget all bindings and restore default settings."""
    env.bindings.clear()
    env.unknown = DEFAULT_UNKNOWN
    env.precision = DEFAULT_PRECISION


def evaluate(env: Env, expr: Expr) -> Expr:
    """Evaluate one expression: substitute bindings, run operators, canonicalize.

    Every piece of active math funnels through here; passive text never does.
    """
    return canonicalize(_resolve(substitute(expr, env.bindings), env))


def _resolve(e: Expr, env: Env) -> Expr:
    if isinstance(e, Integral):
        return integrate(_resolve(e.body, env), e.var)
    if isinstance(e, Derivative):
        return differentiate(_resolve(e.body, env), e.var)
    if isinstance(e, SolveCall):
        if classify_symbol(env.unknown, env.registry) == "unit":
            raise UnitAsUnknown(f"'{env.unknown}' is a unit, not a variable")
        eq = Equation(_resolve(e.equation.lhs, env), _resolve(e.equation.rhs, env))
        return solve_linear(eq, env.unknown).value
    if isinstance(e, ValueCall):
        return approximate(_resolve(e.arg, env), env.precision)
    if isinstance(e, Add):
        return Add(tuple(_resolve(t, env) for t in e.terms))
    if isinstance(e, Mul):
        return Mul(e.coef, tuple((_resolve(b, env), x) for b, x in e.factors))
    if isinstance(e, Pow):
        return Pow(_resolve(e.base, env), _resolve(e.exponent, env))
    if isinstance(e, Func):
        return Func(e.kind, _resolve(e.arg, env))
    if isinstance(e, Equation):
        return Equation(_resolve(e.lhs, env), _resolve(e.rhs, env))
    return e


def eval_cell(env: Env, cell: str | Document) -> CellResult:
    """Run one cell against the session environment."""
    if isinstance(cell, Document):
        doc = cell
    else:
        try:
            doc = parse_document(cell, env.registry)
        except MathparError as err:
            return CellResult((), (Diagnostic.from_error(err),))

    outputs: list[Output] = []
    diagnostics: list[Diagnostic] = []
    last_value: Optional[Expr] = None
    printed = False
    errored = False

    for segment in doc.segments:
        if isinstance(segment, PassiveSegment):
            continue
        assert isinstance(segment, ActiveSegment)
        for stmt in segment.statements:
            if errored:
                break
            try:
                if isinstance(stmt, Assignment):
                    if classify_symbol(stmt.name, env.registry) == "unit":
                        raise DomainError(
                            f"cannot assign to unit '{stmt.name}'", stmt.span
                        )
                    value = evaluate(env, stmt.rhs)
                    check_sum_units(value)
                    env.bindings[stmt.name] = value
                    last_value = value
                elif isinstance(stmt, BareExpr):
                    value = evaluate(env, stmt.expr)
                    check_sum_units(value)
                    last_value = value
                else:
                    assert isinstance(stmt, PrintStmt)
                    for arg in stmt.args:
                        label = arg.name if isinstance(arg, Symbol) else None
                        value = evaluate(env, arg)
                        check_sum_units(value)
                        outputs.append(Output(label, value))
                    printed = True
            except MathparError as err:
                span = err.span if err.span is not None else stmt.span
                diagnostics.append(
                    Diagnostic(message=err.message, severity="error",
                               span=span, code=err.code)
                )
                errored = True
        if errored:
            break

    if not printed and not errored and last_value is not None:
        outputs.append(Output(None, last_value))
    return CellResult(tuple(outputs), tuple(diagnostics))


def eval_document(env: Env, source: str) -> list[CellResult]:
    """Split a worksheet into cells and run them in order."""
    return [eval_cell(env, cell) for cell in split_cells(source)]
