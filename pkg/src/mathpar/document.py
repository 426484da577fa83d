"""Cell layout: a worksheet is cells separated by blank lines.

Blank lines inside passive text do not split; the scanner tracks quote
state (with ``\\"`` escapes) across lines.  Whitespace-only cells are
dropped, so ``split_cells(join_cells(cells)) == cells`` holds for any
cells that are non-empty and free of unquoted blank lines.
"""
from __future__ import annotations


def _quote_state(line: str, in_quote: bool) -> bool:
    i = 0
    while i < len(line):
        c = line[i]
        if in_quote and c == "\\" and i + 1 < len(line) and line[i + 1] == '"':
            i += 2
            continue
        if c == '"':
            in_quote = not in_quote
        i += 1
    return in_quote


def split_cells(source: str) -> list[str]:
    """Split a worksheet into cells on blank lines outside passive text."""
    cells: list[str] = []
    current: list[str] = []
    in_quote = False

    def flush() -> None:
        while current and not current[0].strip():
            current.pop(0)
        while current and not current[-1].strip():
            current.pop()
        if current:
            cells.append("\n".join(current))
        current.clear()

    for line in source.split("\n"):
        if not in_quote and not line.strip():
            flush()
            continue
        current.append(line)
        in_quote = _quote_state(line, in_quote)
    flush()
    return cells


def join_cells(cells: list[str]) -> str:
    """Assemble cells back into one worksheet."""
    return "\n\n".join(cells)
