"""Nodal discontinuous Galerkin basis on Gauss-Lobatto points.

Fields are stored as nodal coefficients with shape (..., n_cells, n_nodes).
The basis carries a Legendre modal representation of the Lagrange cardinal
functions, which keeps evaluation and differentiation well conditioned for
every degree used here.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.polynomial import legendre as npleg

from .errors import ConfigError
from .mesh import SpatialMesh


def _lobatto_rule(n_nodes: int) -> tuple[np.ndarray, np.ndarray]:
    """Gauss-Lobatto nodes and weights on [-1, 1].

    A single-node basis (degree 0) uses the midpoint with weight 2, so that
    the quadrature still integrates constants exactly.
    """
    if n_nodes == 1:
        return np.zeros(1), np.full(1, 2.0)
    n = n_nodes - 1
    leg = np.zeros(n + 1)
    leg[n] = 1.0
    interior = npleg.legroots(npleg.legder(leg))
    nodes = np.concatenate(([-1.0], np.sort(interior), [1.0]))
    weights = 2.0 / (n * (n + 1) * npleg.legval(nodes, leg) ** 2)
    return nodes, weights


@dataclass(frozen=True)
class DGBasis:
    """Lagrange basis of polynomial degree `degree` on Lobatto nodes."""

    degree: int
    nodes: np.ndarray
    node_weights: np.ndarray
    modal: np.ndarray  # column i: Legendre coefficients of cardinal function i

    @property
    def n_nodes(self) -> int:
        return self.degree + 1

    def eval_basis(self, xi: np.ndarray) -> np.ndarray:
        """Cardinal function values, shape (len(xi), n_nodes)."""
        xi = np.atleast_1d(np.asarray(xi, dtype=float))
        return npleg.legvander(xi, self.degree) @ self.modal

    def eval_basis_deriv(self, xi: np.ndarray) -> np.ndarray:
        """Cardinal function derivatives, shape (len(xi), n_nodes)."""
        xi = np.atleast_1d(np.asarray(xi, dtype=float))
        if self.degree == 0:
            return np.zeros((xi.size, 1))
        dmodal = npleg.legder(self.modal, axis=0)
        return npleg.legvander(xi, self.degree - 1) @ dmodal


@dataclass(frozen=True)
class ElementMatrices:
    """Reference-cell matrices for the weak form.

    mass[l, m] integrates p_l p_m, stiffness[l, m] integrates p_l' p_m.
    The face matrices are outer products of endpoint trace vectors: the first
    index letter is the endpoint of the test function, the second the endpoint
    at which the neighbor (or own) trace is taken; r = right (+1), l = left (-1).
    """

    mass: np.ndarray
    stiffness: np.ndarray
    face_rr: np.ndarray
    face_lr: np.ndarray
    face_rl: np.ndarray
    face_ll: np.ndarray
    trace_left: np.ndarray
    trace_right: np.ndarray


def build_basis(degree: int) -> DGBasis:
    if degree < 0:
        raise ConfigError(f"polynomial degree must be >= 0, got {degree}")
    if degree > 8:
        raise ConfigError(f"degree {degree} not supported (mass matrix conditioning)")
    nodes, weights = _lobatto_rule(degree + 1)
    vander = npleg.legvander(nodes, degree)
    modal = np.linalg.inv(vander)
    return DGBasis(degree=degree, nodes=nodes, node_weights=weights, modal=modal)


def element_matrices(basis: DGBasis) -> ElementMatrices:
    # one point beyond the node count: exact for all integrands below
    qp, qw = npleg.leggauss(basis.n_nodes + 1)
    b = basis.eval_basis(qp)
    d = basis.eval_basis_deriv(qp)
    mass = (b * qw[:, None]).T @ b
    stiffness = (d * qw[:, None]).T @ b
    trace_left = basis.eval_basis(np.array([-1.0]))[0]
    trace_right = basis.eval_basis(np.array([1.0]))[0]
    return ElementMatrices(
        mass=mass,
        stiffness=stiffness,
        face_rr=np.outer(trace_right, trace_right),
        face_lr=np.outer(trace_left, trace_right),
        face_rl=np.outer(trace_right, trace_left),
        face_ll=np.outer(trace_left, trace_left),
        trace_left=trace_left,
        trace_right=trace_right,
    )


def evaluate_field(
    coefficients: np.ndarray,
    x: np.ndarray,
    mesh: SpatialMesh,
    basis: DGBasis,
) -> np.ndarray:
    """Evaluate a DG field at arbitrary points.

    Args:
        coefficients: nodal values, shape (..., n_cells, n_nodes).
        x: evaluation points inside [x_left, x_right]; at interior cell edges
            the left cell's trace is returned.
        mesh: the field's mesh.
        basis: the field's basis.

    Returns:
        Array of shape (..., len(x)).
    """
    x = np.atleast_1d(np.asarray(x, dtype=float))
    idx = mesh.locate(x)
    xi = 2.0 * (x - mesh.centers[idx]) / mesh.h
    b = basis.eval_basis(np.clip(xi, -1.0, 1.0))
    return np.einsum("...al,al->...a", coefficients[..., idx, :], b)


def field_l2_norm(coefficients: np.ndarray, mesh: SpatialMesh, basis: DGBasis) -> float:
    """L2 norm over the domain of a scalar DG field with shape (n_cells, n_nodes)."""
    qp, qw = npleg.leggauss(basis.n_nodes + 1)
    vals = coefficients @ basis.eval_basis(qp).T  # (n_cells, nq)
    return float(np.sqrt(0.5 * mesh.h * np.sum(vals**2 * qw[None, :])))


def cell_means(coefficients: np.ndarray, basis: DGBasis) -> np.ndarray:
    """Cell averages of a nodal field, shape (..., n_cells)."""
    # mean = 1/2 int_{-1}^{1} field dxi = Legendre-0 modal coefficient
    return coefficients @ basis.modal[0]
