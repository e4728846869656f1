"""Bundle of mesh, basis, element matrices, and velocity grid for one run."""

from __future__ import annotations

from dataclasses import dataclass

from .dg import DGBasis, ElementMatrices, build_basis, element_matrices
from .mesh import SpatialMesh, build_mesh
from .velocity import VelocityGrid, build_velocity_grid


@dataclass(frozen=True)
class Discretization:
    mesh: SpatialMesh
    basis: DGBasis
    matrices: ElementMatrices
    grid: VelocityGrid


def build_discretization(
    x_left: float,
    x_right: float,
    n_cells: int,
    degree: int,
    n_velocities: int,
    v_max: float,
) -> Discretization:
    basis = build_basis(degree)
    return Discretization(
        mesh=build_mesh(x_left, x_right, n_cells),
        basis=basis,
        matrices=element_matrices(basis),
        grid=build_velocity_grid(n_velocities, v_max),
    )
