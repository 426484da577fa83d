"""Mathpar: a computable LaTeX subset.

Documents mix passive prose (double-quoted, with ``$...$`` math that is
rendered but never evaluated) and active statements that assign, print,
differentiate, integrate, solve and approximate, with physical units as
first-class multiplicative symbols.
"""
from .calculus import SolveResult, approximate, differentiate, integrate, solve_linear
from .document import join_cells, split_cells
from .errors import Diagnostic, MathparError, Span
from .expr import (
    Expr,
    SymbolName,
    canonicalize,
    expr_equals,
    free_symbols,
    numeric_eval,
    substitute,
)
from .parser import Document, parse_document, parse_expression
from .render import DISPLAY, SOURCE, render_cell_result, render_expr, render_output
from .session import (
    CellResult,
    Env,
    Output,
    eval_cell,
    eval_document,
    evaluate,
    reset_session,
    set_unknown,
)
from .units import (
    UnitMonomial,
    UnitRegistry,
    classify_symbol,
    reduce_units,
    split_quantity,
    standard_registry,
)

__version__ = "0.1.0"

__all__ = [
    "approximate", "canonicalize", "CellResult", "classify_symbol",
    "Diagnostic", "differentiate", "DISPLAY", "Document", "Env",
    "eval_cell", "eval_document", "evaluate", "Expr", "expr_equals",
    "free_symbols", "integrate", "join_cells", "MathparError",
    "numeric_eval", "Output", "parse_document", "parse_expression",
    "reduce_units", "render_cell_result", "render_expr", "render_output",
    "reset_session", "set_unknown", "solve_linear", "SolveResult", "SOURCE",
    "Span", "split_cells", "split_quantity", "standard_registry",
    "substitute", "SymbolName", "UnitMonomial", "UnitRegistry",
    "__version__",
]
