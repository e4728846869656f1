"""Uniform 1D spatial mesh."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError


@dataclass(frozen=True)
class SpatialMesh:
    """Uniform partition of [x_left, x_right] into n_cells cells.

    Args:
        x_left: left endpoint of the domain.
        x_right: right endpoint, must exceed x_left.
        n_cells: number of cells.
    """

    x_left: float
    x_right: float
    n_cells: int
    h: float = field(init=False)
    edges: np.ndarray = field(init=False)
    centers: np.ndarray = field(init=False)

    def __post_init__(self) -> None:
        if self.n_cells < 1:
            raise ConfigError(f"n_cells must be positive, got {self.n_cells}")
        if not self.x_right > self.x_left:
            raise ConfigError(
                f"empty domain [{self.x_left}, {self.x_right}]"
            )
        h = (self.x_right - self.x_left) / self.n_cells
        edges = self.x_left + h * np.arange(self.n_cells + 1)
        # force exact endpoint so edge lookups at x_right never overflow
        edges[-1] = self.x_right
        object.__setattr__(self, "h", h)
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "centers", 0.5 * (edges[:-1] + edges[1:]))

    def node_coordinates(self, ref_nodes: np.ndarray) -> np.ndarray:
        """Physical coordinates of reference nodes in every cell, shape (n_cells, len(ref_nodes))."""
        return self.centers[:, None] + 0.5 * self.h * np.asarray(ref_nodes)[None, :]

    def locate(self, x: np.ndarray) -> np.ndarray:
        """Cell index of each point; interior cell edges resolve to the left cell."""
        x = np.asarray(x, dtype=float)
        idx = np.floor((x - self.x_left) / self.h).astype(int)
        idx = np.clip(idx, 0, self.n_cells - 1)
        on_left_edge = (idx > 0) & (x <= self.edges[idx])
        return np.where(on_left_edge, idx - 1, idx)


def build_mesh(x_left: float, x_right: float, n_cells: int) -> SpatialMesh:
    return SpatialMesh(x_left, x_right, n_cells)
