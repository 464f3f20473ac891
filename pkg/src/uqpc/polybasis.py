"""Legendre basis on [-1, 1]^d under the uniform probability measure.

Multi-index bookkeeping, tensor-product basis evaluation, norms, and
Gauss-Legendre quadrature. All expectations here are against the uniform
probability density on [-1, 1] (i.e. dx/2 per coordinate), so the
univariate norms are E[P_n^2] = 1/(2n + 1).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Iterator

import numpy as np

__all__ = [
    "MultiIndexBasis",
    "basis_count",
    "basis_norm",
    "eval_basis",
    "eval_basis_matrix",
    "eval_legendre",
    "gauss_legendre_rule",
    "legendre_table",
    "tensor_gauss_rule",
    "total_degree_multi_indices",
]


def eval_legendre(n: int, x: float) -> float:
    """Degree-n Legendre polynomial at x, by the three-term recurrence.

    Normalized so that P_n(1) = 1 for every n.
    """
    if n < 0:
        raise ValueError(f"degree must be nonnegative, got {n}")
    if n == 0:
        return 1.0
    p_prev, p_cur = 1.0, float(x)
    for k in range(1, n):
        p_prev, p_cur = p_cur, ((2 * k + 1) * x * p_cur - k * p_prev) / (k + 1)
    return p_cur


def legendre_table(n_max: int, x: np.ndarray) -> np.ndarray:
    """Evaluate P_0, ..., P_{n_max} at the points x.

    Returns an array of shape (len(x), n_max + 1); column n holds P_n(x).
    """
    x = np.asarray(x, dtype=float)
    table = np.empty((x.size, n_max + 1))
    table[:, 0] = 1.0
    if n_max >= 1:
        table[:, 1] = x
    for k in range(1, n_max):
        table[:, k + 1] = ((2 * k + 1) * x * table[:, k] - k * table[:, k - 1]) / (k + 1)
    return table


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    # Nonnegative integer tuples summing to `total`, descending lexicographic.
    if parts == 1:
        yield (total,)
        return
    for head in range(total, -1, -1):
        for tail in _compositions(total - head, parts - 1):
            yield (head,) + tail


def basis_norm(index: np.ndarray) -> float:
    """Squared norm b = prod_i 1/(2 k_i + 1) of the tensor Legendre term."""
    index = np.asarray(index, dtype=int)
    if np.any(index < 0):
        raise ValueError("multi-index degrees must be nonnegative")
    return float(np.prod(1.0 / (2.0 * index + 1.0)))


def basis_count(d: int, n0: int) -> int:
    """Number of multi-indices of total degree <= n0 in d variables."""
    return comb(n0 + d, d)


@dataclass(frozen=True, eq=False)
class MultiIndexBasis:
    """Total-degree multi-index set with precomputed norms.

    ``indices`` has shape (n_terms, dimension); row 0 is the all-zeros
    (mean) term and the rest follow in graded order, descending
    lexicographic within each grade. ``norms`` holds b_k > 0.
    """

    dimension: int
    total_degree: int
    indices: np.ndarray
    norms: np.ndarray

    def __len__(self) -> int:
        return self.indices.shape[0]


def total_degree_multi_indices(d: int, n0: int) -> MultiIndexBasis:
    """All multi-indices with total degree <= n0, in deterministic order.

    The count is (n0 + d)! / (n0! d!). Ordering is graded (degree 0 first),
    descending lexicographic within a grade, so e.g. for d=2, n0=2:
    (0,0), (1,0), (0,1), (2,0), (1,1), (0,2).
    """
    if d < 1:
        raise ValueError(f"dimension must be >= 1, got {d}")
    if n0 < 0:
        raise ValueError(f"total degree must be >= 0, got {n0}")
    rows: list[tuple[int, ...]] = []
    for grade in range(n0 + 1):
        rows.extend(_compositions(grade, d))
    indices = np.array(rows, dtype=int)
    norms = 1.0 / np.prod(2.0 * indices + 1.0, axis=1)
    return MultiIndexBasis(dimension=d, total_degree=n0, indices=indices, norms=norms)


def eval_basis(basis: MultiIndexBasis, xi: np.ndarray) -> np.ndarray:
    """Evaluate every basis term at one point; component k is prod_i P_{k_i}(xi_i)."""
    xi = np.asarray(xi, dtype=float)
    if xi.shape != (basis.dimension,):
        raise ValueError(
            f"sample has shape {xi.shape}, expected ({basis.dimension},)"
        )
    return eval_basis_matrix(basis, xi[None, :])[0]


def eval_basis_matrix(basis: MultiIndexBasis, xis: np.ndarray) -> np.ndarray:
    """Evaluate the basis at many points; returns shape (n_points, n_terms)."""
    xis = np.asarray(xis, dtype=float)
    if xis.ndim != 2 or xis.shape[1] != basis.dimension:
        raise ValueError(
            f"samples have shape {xis.shape}, expected (n, {basis.dimension})"
        )
    n_max = int(basis.indices.max(initial=0))
    out = np.ones((xis.shape[0], len(basis)))
    for j in range(basis.dimension):
        table = legendre_table(n_max, xis[:, j])
        out *= table[:, basis.indices[:, j]]
    return out


def gauss_legendre_rule(n: int) -> tuple[np.ndarray, np.ndarray]:
    """n-point Gauss-Legendre rule with probability-normalized weights.

    Weights sum to 1, so the rule integrates against the uniform density
    on [-1, 1]; it is exact for polynomials of degree <= 2n - 1.
    """
    if n < 1:
        raise ValueError(f"rule size must be >= 1, got {n}")
    nodes, weights = np.polynomial.legendre.leggauss(n)
    return nodes, weights / 2.0


def tensor_gauss_rule(d: int, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Tensor product of the n-point rule over d dimensions.

    Returns nodes of shape (n**d, d) and weights of shape (n**d,) summing
    to 1.
    """
    nodes_1d, weights_1d = gauss_legendre_rule(n)
    grids = np.meshgrid(*([nodes_1d] * d), indexing="ij")
    nodes = np.stack([g.ravel() for g in grids], axis=1)
    wgrids = np.meshgrid(*([weights_1d] * d), indexing="ij")
    weights = np.ones(n**d)
    for w in wgrids:
        weights = weights * w.ravel()
    return nodes, weights
