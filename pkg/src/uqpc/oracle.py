"""Exact reference quantities for the slab attenuation problem.

The transmittance factorizes over sections, Q(xi) = prod_m exp(-Sigma_m(xi_m) dx_m),
so its moments, its Legendre coefficients, and its Sobol decomposition all
have closed or quadrature-exact forms. These are the verification targets
for the sampling estimators.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .polybasis import MultiIndexBasis, eval_basis_matrix, tensor_gauss_rule
from .transport import SlabProblem, transmittance_batch

__all__ = [
    "ExactStatistics",
    "coefficient_moments_exact",
    "exact_factor_moment",
    "exact_mean",
    "exact_sobol",
    "exact_statistics",
    "exact_variance",
    "mse",
    "quadrature_coefficients",
]


def _sinhc(x: float) -> float:
    # sinh(x)/x with a series branch near 0 to avoid cancellation.
    if abs(x) < 1e-4:
        x2 = x * x
        return 1.0 + x2 / 6.0 + x2 * x2 / 120.0
    return float(np.sinh(x) / x)


def exact_factor_moment(sigma0: float, sigma_delta: float, dx: float, power: int) -> float:
    """E[exp(-p * Sigma(xi) * dx)] for one section, xi ~ U(-1, 1).

    Equals exp(-p*sigma0*dx) * sinh(p*sigma_delta*dx) / (p*sigma_delta*dx),
    with the sigma_delta -> 0 limit exp(-p*sigma0*dx).
    """
    if power < 1:
        raise ValueError(f"power must be >= 1, got {power}")
    a = power * sigma_delta * dx
    return float(np.exp(-power * sigma0 * dx)) * _sinhc(a)


def _factor_moments(problem: SlabProblem, power: int) -> np.ndarray:
    return np.array(
        [
            exact_factor_moment(problem.sigma0[m], problem.sigma_delta[m], problem.dx[m], power)
            for m in range(problem.d)
        ]
    )


def exact_mean(problem: SlabProblem) -> float:
    """Exact E[Q]; product of the per-section first moments."""
    return float(np.prod(_factor_moments(problem, 1)))


def exact_variance(problem: SlabProblem) -> float:
    """Exact Var[Q] = prod_m E[g_m^2] - (prod_m E[g_m])^2."""
    m1 = _factor_moments(problem, 1)
    m2 = _factor_moments(problem, 2)
    return float(np.prod(m2) - np.prod(m1) ** 2)


def quadrature_coefficients(
    problem: SlabProblem, basis: MultiIndexBasis, level: int | None = None
) -> np.ndarray:
    """Expansion coefficients of the exact transmittance by tensor Gauss quadrature.

    ``level`` is the 1d rule size per dimension (default total_degree + 2).
    Doubling the level should leave every coefficient unchanged to ~1e-10
    once converged.
    """
    if basis.dimension != problem.d:
        raise ValueError(f"basis dimension {basis.dimension} != problem dimension {problem.d}")
    if level is None:
        level = basis.total_degree + 2
    if level < 1:
        raise ValueError(f"quadrature level must be >= 1, got {level}")
    nodes, weights = tensor_gauss_rule(problem.d, level)
    q = transmittance_batch(problem, nodes)
    psi = eval_basis_matrix(basis, nodes)
    return (psi.T @ (weights * q)) / basis.norms


def exact_sobol(problem: SlabProblem) -> tuple[np.ndarray, np.ndarray]:
    """Exact first-order and total Sobol indices of the transmittance.

    Uses the product structure: the partial variance of a variable group u
    is prod_{i in u} v_i * prod_{i not in u} mu_i^2, with mu_i and v_i the
    per-section factor mean and variance.
    """
    mu = _factor_moments(problem, 1)
    v = _factor_moments(problem, 2) - mu**2
    total_var = exact_variance(problem)
    if total_var <= 0.0:
        raise ValueError("problem has zero output variance; Sobol indices undefined")
    d = problem.d
    first = np.zeros(d)
    total = np.zeros(d)
    for size in range(1, d + 1):
        for u in combinations(range(d), size):
            in_u = np.zeros(d, dtype=bool)
            in_u[list(u)] = True
            v_u = float(np.prod(v[in_u]) * np.prod(mu[~in_u] ** 2))
            s_u = v_u / total_var
            if size == 1:
                first[u[0]] = s_u
            for i in u:
                total[i] += s_u
    return first, total


@dataclass(frozen=True, eq=False)
class ExactStatistics:
    """Bundle of exact reference values for one problem and basis."""

    mean: float
    variance: float
    coefficients: np.ndarray
    sobol_first: np.ndarray
    sobol_total: np.ndarray


def exact_statistics(
    problem: SlabProblem, basis: MultiIndexBasis, level: int | None = None
) -> ExactStatistics:
    first, total = exact_sobol(problem)
    return ExactStatistics(
        mean=exact_mean(problem),
        variance=exact_variance(problem),
        coefficients=quadrature_coefficients(problem, basis, level),
        sobol_first=first,
        sobol_total=total,
    )


def coefficient_moments_exact(
    problem: SlabProblem, basis: MultiIndexBasis, k: int, level: int | None = None
) -> tuple[float, float]:
    """Quadrature-exact (Var_xi[Q Psi_k], E_xi[Psi_k^2 sigma_eta^2]) for term k.

    sigma_eta^2(xi) = p(1 - p) with p = exp(-tau(xi)) is the per-history
    Bernoulli variance of the analog transport game. These are the inputs
    the estimator-variance cost model needs.
    """
    if not 0 <= k < len(basis):
        raise ValueError(f"term index {k} out of range [0, {len(basis)})")
    if level is None:
        level = basis.total_degree + 8
    nodes, weights = tensor_gauss_rule(problem.d, level)
    p = transmittance_batch(problem, nodes)
    psi_k = eval_basis_matrix(basis, nodes)[:, k]
    m1 = float(weights @ (p * psi_k))
    m2 = float(weights @ ((p * psi_k) ** 2))
    var_qpsi = m2 - m1**2
    noise_term = float(weights @ (psi_k**2 * p * (1.0 - p)))
    return var_qpsi, noise_term


def mse(estimates, exact: float) -> float:
    """Mean squared error of a batch of estimates against the exact value."""
    estimates = np.asarray(estimates, dtype=float)
    if estimates.size == 0:
        raise ValueError("need at least one estimate")
    return float(np.mean((estimates - exact) ** 2))
