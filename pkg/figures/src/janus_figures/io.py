"""Read-only access to the scan CSV tables written by ``janus``.

The tables are plain CSV with a header row.  Numeric cells are %.17g
floats (0/1 for flags); masked cells carry one of the string sentinels

    INADMISSIBLE    no real nonnegative chi at this (|eta|, delta)
    SPAN_COLLAPSED  constituents numerically parallel
    NOT_SQUEEZED    u > 1: matched-depth squeezed benchmark undefined
    G2_UNDEFINED    N1 at the vacuum floor

Type conversion happens column by column on demand, so a sentinel in one
column never corrupts its neighbours: `floats` maps sentinels to NaN and
`mask` recovers exactly which cells carried which sentinel.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

import numpy as np

SENTINELS = frozenset(
    {"INADMISSIBLE", "SPAN_COLLAPSED", "NOT_SQUEEZED", "G2_UNDEFINED"}
)


class TableError(Exception):
    """A scan table violates the documented CSV schema."""


class MissingColumnError(TableError):
    """A renderer asked for a column the header does not have."""


class EmptyTableError(TableError):
    """The CSV has a header but no data rows (or is empty outright)."""


@dataclass(frozen=True)
class Table:
    """One loaded CSV: header plus raw string cells."""

    path: str
    columns: tuple[str, ...]
    rows: list[list[str]]

    def __len__(self) -> int:
        return len(self.rows)

    def _index(self, name: str) -> int:
        try:
            return self.columns.index(name)
        except ValueError:
            raise MissingColumnError(
                f"{self.path}: missing column {name!r} "
                f"(header has {', '.join(self.columns)})"
            ) from None

    def raw(self, name: str) -> list[str]:
        """One column as the literal CSV strings."""
        i = self._index(name)
        return [row[i] for row in self.rows]

    def floats(self, name: str) -> np.ndarray:
        """One column as float64, NaN where the cell is a sentinel."""
        i = self._index(name)
        out = np.empty(len(self.rows))
        for k, row in enumerate(self.rows):
            cell = row[i]
            out[k] = np.nan if cell in SENTINELS else float(cell)
        return out

    def flags(self, name: str) -> np.ndarray:
        """One 0/1 column as booleans; sentinel cells read as False."""
        i = self._index(name)
        return np.array(
            [row[i] not in SENTINELS and float(row[i]) != 0.0 for row in self.rows]
        )

    def mask(self, name: str, sentinel: str | None = None) -> np.ndarray:
        """True where the cell is `sentinel` (or any sentinel if None)."""
        i = self._index(name)
        if sentinel is None:
            return np.array([row[i] in SENTINELS for row in self.rows])
        return np.array([row[i] == sentinel for row in self.rows])


def load_table(path: str | Path) -> Table:
    path = Path(path)
    with path.open(newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise EmptyTableError(f"{path}: file is empty") from None
        rows = list(reader)
    if not rows:
        raise EmptyTableError(f"{path}: no data rows")
    for k, row in enumerate(rows):
        if len(row) != len(header):
            raise TableError(
                f"{path}: row {k + 2} has {len(row)} cells, header has {len(header)}"
            )
    return Table(str(path), tuple(header), rows)
