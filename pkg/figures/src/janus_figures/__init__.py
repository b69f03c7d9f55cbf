"""Figure rendering for the scan CSV tables written by the janus CLI."""

from .io import (
    EmptyTableError,
    MissingColumnError,
    Table,
    TableError,
    load_table,
)
from .render import (
    FIGURES,
    FigureSpec,
    pivot,
    pivot_mask,
    render_figure,
    save_figure,
)

__version__ = "0.1.0"
