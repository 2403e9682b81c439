import logging
from typing import Protocol

import numpy as np
import scipy.linalg

from Errors import ConvergenceError, SpecError
from Options.Ops import Eigen_ops

logger = logging.getLogger(__name__)

DENSE_LIMIT = 4000
# relative to ||H||_1
DEFAULT_TOLERANCE = 1e-10
BREAKDOWN = 1e-13


class Operator(Protocol):
    size: int

    def apply(self, vector: np.ndarray) -> np.ndarray: ...

    def norm1(self) -> float: ...

    def to_dense(self) -> np.ndarray: ...


class EigenResult:
    def __init__(self, energies: np.ndarray, vectors: np.ndarray, residuals: np.ndarray, iterations: int,
                 converged: bool, restarts: int = 0, tolerance: float = 0.0) -> None:
        self.energies = energies
        # one normalized eigenvector per row
        self.vectors = vectors
        self.residuals = residuals
        self.iterations = iterations
        self.converged = converged
        self.restarts = restarts
        self.tolerance = tolerance

    @property
    def ground_energy(self) -> float:
        return float(self.energies[0])

    @property
    def ground_vector(self) -> np.ndarray:
        return self.vectors[0]

    def __repr__(self) -> str:
        return (f"EigenResult(E0={self.ground_energy:.12g}, k={len(self.energies)}, "
                f"iterations={self.iterations}, converged={self.converged})")


def sign_normalize(vector: np.ndarray) -> np.ndarray:
    if vector[np.argmax(np.abs(vector))] < 0:
        return -vector
    return vector


def lowest_eigenpairs(op: Operator, opts: Eigen_ops | None = None) -> EigenResult:
    """Lowest ``k`` eigenpairs by thick-restart Lanczos with full reorthogonalization.

    Convergence is certified by the explicit residual ||H psi - E psi||_2 of
    every requested pair, never by Ritz value stagnation. The iteration
    count is the number of operator applications.
    """
    opts = (opts or Eigen_ops()).validate(op.size)
    size, k = op.size, opts.k
    tol = opts.tol if opts.tol is not None else DEFAULT_TOLERANCE * op.norm1()
    cap = min(opts.basis_cap, size)
    rng = np.random.default_rng(opts.seed)

    basis = np.zeros((cap + 1, size))
    projected = np.zeros((cap + 1, cap + 1))
    start = rng.standard_normal(size)
    basis[0] = start / np.linalg.norm(start)

    filled, matvecs, restarts = 0, 0, 0
    best_residual = np.inf
    while True:
        beta = 0.0
        exhausted = False
        while filled < cap:
            j = filled
            w = op.apply(basis[j])
            matvecs += 1
            # two Gram-Schmidt passes against the whole basis
            coefficients = basis[:j + 1] @ w
            w -= coefficients @ basis[:j + 1]
            correction = basis[:j + 1] @ w
            w -= correction @ basis[:j + 1]
            coefficients += correction
            projected[:j + 1, j] = coefficients
            projected[j, :j + 1] = coefficients
            filled = j + 1
            beta = float(np.linalg.norm(w))
            if beta <= BREAKDOWN * max(1.0, float(np.abs(coefficients).max())):
                # invariant subspace: continue from a fresh orthogonal direction with zero coupling
                beta = 0.0
                if filled >= size:
                    exhausted = True
                    break
                basis[filled] = _fresh_direction(rng, basis[:filled])
                if filled >= k:
                    break
                continue
            basis[filled] = w / beta
            projected[filled, filled - 1] = projected[filled - 1, filled] = beta
            if matvecs >= opts.max_iterations:
                break

        ritz_values, ritz_coefficients = scipy.linalg.eigh(projected[:filled, :filled])
        wanted = min(k, filled)
        estimates = np.abs(beta * ritz_coefficients[filled - 1, :wanted])
        if wanted == k and (estimates.max() <= tol or beta == 0.0 or matvecs >= opts.max_iterations):
            vectors = ritz_coefficients[:, :k].T @ basis[:filled]
            vectors /= np.linalg.norm(vectors, axis=1)[:, None]
            energies = np.array([v @ op.apply(v) for v in vectors])
            residuals = np.array([np.linalg.norm(op.apply(v) - e * v) for v, e in zip(vectors, energies)])
            matvecs += 2 * k
            best_residual = min(best_residual, float(residuals.max()))
            if residuals.max() <= tol or exhausted:
                order = np.argsort(energies, kind="stable")
                vectors = np.array([sign_normalize(v) for v in vectors[order]])
                logger.info("Lanczos converged: E0=%.12g, %d matvecs, %d restarts, max residual %.2e",
                            energies[order][0], matvecs, restarts, residuals.max())
                return EigenResult(energies[order], vectors, residuals[order], matvecs, True, restarts, tol)
        else:
            best_residual = min(best_residual, float(estimates.max()) if wanted == k else np.inf)

        if matvecs >= opts.max_iterations:
            raise ConvergenceError(f"Lanczos did not converge to tol {tol:.2e} for k={k}", best_residual, matvecs)

        # thick restart: keep the lowest Ritz vectors plus the current residual direction
        keep = min(filled - 1, max(k + 1, cap // 2))
        residual_direction = basis[filled].copy()
        basis[:keep] = ritz_coefficients[:, :keep].T @ basis[:filled]
        basis[keep] = residual_direction
        couplings = beta * ritz_coefficients[filled - 1, :keep]
        projected[:] = 0.0
        projected[np.arange(keep), np.arange(keep)] = ritz_values[:keep]
        projected[keep, :keep] = couplings
        projected[:keep, keep] = couplings
        filled = keep
        restarts += 1
        logger.debug("Lanczos restart %d after %d matvecs, lowest Ritz value %.12g, estimate %.2e",
                     restarts, matvecs, ritz_values[0], estimates.max())


def _fresh_direction(rng: np.random.Generator, basis: np.ndarray) -> np.ndarray:
    w = rng.standard_normal(basis.shape[1])
    for _ in range(2):
        w -= (basis @ w) @ basis
    return w / np.linalg.norm(w)


def dense_spectrum(op: Operator, vectors: bool = False):
    """Full diagonalization, used as an oracle for small operators.

    Returns the ascending eigenvalues, or ``(eigenvalues, eigenvectors)``
    with eigenvectors as columns when ``vectors`` is set.
    """
    if op.size > DENSE_LIMIT:
        raise SpecError(f"dense_spectrum is limited to N <= {DENSE_LIMIT} (got N={op.size}); "
                        f"use lowest_eigenpairs for large operators")
    matrix = op.to_dense()
    if vectors:
        return scipy.linalg.eigh(matrix)
    return scipy.linalg.eigh(matrix, eigvals_only=True)
