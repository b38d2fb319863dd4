"""Fixed-width text diagrams of positions and zones."""
from __future__ import annotations

from .board import BLACK, WHITE, Position
from .zone import Zone

COLUMNS = "ABCDEFGHJKLMNOPQRST"

# (outside zone, inside zone)
GLYPHS = {
    0: (".", "+"),
    BLACK: ("X", "#"),
    WHITE: ("O", "@"),
}


def render_ascii(position: Position, zone: Zone | None = None,
                 coordinates: bool = True) -> str:
    """Board as text; zone points use the second glyph of each pair.

    Empty ``.``/``+``, black ``X``/``#``, white ``O``/``@``.  Row 1 is the
    bottom row, as on a printed board.
    """
    size = position.size
    lines = []
    if coordinates:
        lines.append("   " + " ".join(COLUMNS[:size]))
    for r in range(size):
        row = []
        for c in range(size):
            p = r * size + c
            inside = zone is not None and p in zone
            row.append(GLYPHS[position.grid[p]][inside])
        text = " ".join(row)
        lines.append(f"{size - r:>2} {text}" if coordinates else text)
    mover = "Black" if position.to_move == BLACK else "White"
    lines.append(f"{mover} to move")
    return "\n".join(lines) + "\n"
