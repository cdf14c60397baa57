"""Torus geometry for 3-neighbor triangular and 6-neighbor hexagonal grids.

Conventions, fixed package-wide:

- a cell is an integer pair (x, y): x is the column (0 <= x < w), y the row;
- a triangular cell points up iff x + y is even; an up triangle neighbors
  (x-1, y), (x+1, y), (x, y-1) and a down triangle (x-1, y), (x+1, y),
  (x, y+1) (up triangles connect downward on the row above);
- hexagonal cells use axial coordinates with the six neighbor offsets
  (+1,0), (-1,0), (0,+1), (0,-1), (+1,-1), (-1,+1);
- hex_color(x, y) = (x - y) % 3 is a proper 3-coloring of the hexagonal
  grid: each cell's six neighbors split 3/3 over the two other colors.

All coordinates wrap on a torus.  Wrap-consistency is enforced once, at
TorusDims construction, so lookups never re-check it:

- triangular tori need w and h even (the (x+y) parity must survive the
  wrap) and w >= 4 so the two horizontal neighbors are distinct;
- hexagonal tori need w, h >= 2 so a cell is never its own neighbor
  (at w == 2 or h == 2 the neighbor *tuple* may repeat a cell, which is
  the correct torus semantics: the rule sees it with multiplicity);
- hexagonal tori used as embedding targets for triangular configurations
  additionally need 3 | w and 3 | h so the coloring is wrap-consistent.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, NamedTuple

import numpy as np

from .errors import GeometryError

TRI = "tri"
HEX = "hex"
GEOMETRIES = (TRI, HEX)

_HEX_OFFSETS = ((1, 0), (-1, 0), (0, 1), (0, -1), (1, -1), (-1, 1))


class Cell(NamedTuple):
    x: int
    y: int


@dataclass(frozen=True)
class TorusDims:
    """A finite periodic wrap of one of the two lattices."""

    geometry: str
    w: int
    h: int

    def __post_init__(self):
        if self.geometry not in GEOMETRIES:
            raise GeometryError(f"unknown geometry {self.geometry!r}")
        if self.w < 1 or self.h < 1:
            raise GeometryError("torus dimensions must be positive")
        if self.geometry == TRI:
            if self.w % 2 or self.h % 2:
                raise GeometryError(
                    f"triangular torus needs even dimensions, got {self.w}x{self.h}"
                )
            if self.w < 4:
                raise GeometryError("triangular torus needs w >= 4")
        else:
            if self.w < 2 or self.h < 2:
                raise GeometryError("hexagonal torus needs w, h >= 2")

    @property
    def n_neighbors(self) -> int:
        return 3 if self.geometry == TRI else 6

    @property
    def n_cells(self) -> int:
        return self.w * self.h

    def wrap(self, cell) -> Cell:
        x, y = cell
        return Cell(x % self.w, y % self.h)

    def contains(self, cell) -> bool:
        x, y = cell
        return 0 <= x < self.w and 0 <= y < self.h

    def index(self, cell) -> int:
        """Row-major flat index of a cell."""
        x, y = self.wrap(cell)
        return y * self.w + x

    def cell_at(self, index: int) -> Cell:
        return Cell(index % self.w, index // self.w)

    def cells(self) -> Iterator[Cell]:
        for y in range(self.h):
            for x in range(self.w):
                yield Cell(x, y)

    def __str__(self):
        return f"{self.geometry} {self.w}x{self.h}"


def tri_orientation(cell) -> str:
    """'up' iff x + y is even."""
    x, y = cell
    return "up" if (x + y) % 2 == 0 else "down"


def hex_color(cell) -> int:
    """Color class (x - y) mod 3 of a hexagonal cell."""
    x, y = cell
    return (x - y) % 3


def neighbors_tri(cell, dims: TorusDims) -> tuple[Cell, Cell, Cell]:
    """The three neighbors of a triangular cell, torus-wrapped."""
    if dims.geometry != TRI:
        raise GeometryError(f"expected a triangular torus, got {dims}")
    if not dims.contains(cell):
        raise GeometryError(f"cell {tuple(cell)} outside {dims}")
    x, y = cell
    vy = y - 1 if (x + y) % 2 == 0 else y + 1
    return (
        Cell((x - 1) % dims.w, y),
        Cell((x + 1) % dims.w, y),
        Cell(x, vy % dims.h),
    )


def neighbors_hex(cell, dims: TorusDims) -> tuple[Cell, ...]:
    """The six neighbors of a hexagonal cell, torus-wrapped (ordered; may
    repeat a cell on w == 2 or h == 2 tori)."""
    if dims.geometry != HEX:
        raise GeometryError(f"expected a hexagonal torus, got {dims}")
    if not dims.contains(cell):
        raise GeometryError(f"cell {tuple(cell)} outside {dims}")
    x, y = cell
    return tuple(Cell((x + dx) % dims.w, (y + dy) % dims.h) for dx, dy in _HEX_OFFSETS)


def neighbors(cell, dims: TorusDims) -> tuple[Cell, ...]:
    if dims.geometry == TRI:
        return neighbors_tri(cell, dims)
    return neighbors_hex(cell, dims)


@lru_cache(maxsize=None)
def neighbor_index_array(dims: TorusDims) -> np.ndarray:
    """(n_cells, n_neighbors) array of flat neighbor indices, row-major.

    Cached per dims; used by the vectorized stepping and oracle paths.
    """
    idx = np.empty((dims.n_cells, dims.n_neighbors), dtype=np.int64)
    for cell in dims.cells():
        idx[dims.index(cell)] = [dims.index(n) for n in neighbors(cell, dims)]
    idx.setflags(write=False)
    return idx
