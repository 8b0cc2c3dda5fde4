"""Density matrices: entropy, fidelity, reduced states, compression count."""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np

from .states import StateVector

HERMITIAN_TOL = 1e-9
EIGENVALUE_CLAMP = 1e-12


def density_from_state(state: StateVector) -> np.ndarray:
    """Pure-state projector |psi><psi|."""
    return np.outer(state.amps, np.conj(state.amps))


def validate_density(rho: np.ndarray, tol: float = HERMITIAN_TOL) -> np.ndarray:
    """Check Hermiticity, unit trace, and positivity; returns the array."""
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise ValueError(f"density matrix must be square, got shape {rho.shape}")
    if not np.allclose(rho, rho.conj().T, atol=tol):
        raise ValueError("density matrix is not Hermitian")
    if abs(np.trace(rho).real - 1.0) > tol:
        raise ValueError(f"density matrix trace is {np.trace(rho)}, expected 1")
    if np.linalg.eigvalsh(rho).min() < -tol:
        raise ValueError("density matrix has a negative eigenvalue")
    return rho


def reduced_density_matrix(state: StateVector, keep: Sequence[int]) -> np.ndarray:
    """Trace out every qubit not listed in `keep` (qubit keep[k] becomes bit k)."""
    keep = list(keep)
    if len(set(keep)) != len(keep):
        raise ValueError("duplicate qubit in keep")
    for q in keep:
        if not 0 <= q < state.n_qubits:
            raise ValueError(f"qubit {q} out of range")
    rest = [q for q in range(state.n_qubits) if q not in keep]
    idx = np.arange(state.amps.size)
    key = np.zeros_like(idx)
    for k, q in enumerate(keep):
        key |= ((idx >> q) & 1) << k
    other = np.zeros_like(idx)
    for k, q in enumerate(rest):
        other |= ((idx >> q) & 1) << k
    table = np.zeros((1 << len(keep), 1 << len(rest)), dtype=complex)
    table[key, other] = state.amps
    return table @ table.conj().T


def von_neumann_entropy(rho: np.ndarray) -> float:
    """-Tr rho log2 rho, from eigenvalues (values below 1e-12 count as 0)."""
    rho = validate_density(rho)
    eigs = np.linalg.eigvalsh(rho)
    total = 0.0
    for lam in eigs:
        if lam > EIGENVALUE_CLAMP:
            total -= lam * math.log2(lam)
    return total


def _psd_sqrt(matrix: np.ndarray) -> np.ndarray:
    eigs, vecs = np.linalg.eigh(matrix)
    # Eigenvalues at the solver's noise floor are artifacts; their square
    # roots would be ~1e-8 and pollute the result.
    cutoff = max(eigs.max(), 0.0) * 1e-13
    eigs = np.where(eigs > cutoff, eigs, 0.0)
    return (vecs * np.sqrt(eigs)) @ vecs.conj().T


def fidelity(rho: np.ndarray, sigma: np.ndarray) -> float:
    """(Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2; the squared overlap for pure states.

    Evaluated as the squared nuclear norm of sqrt(sigma) sqrt(rho), which is
    the same quantity but avoids taking square roots of the eigensolver's
    noise-level eigenvalues.
    """
    rho = validate_density(rho)
    sigma = validate_density(sigma)
    if rho.shape != sigma.shape:
        raise ValueError("fidelity requires equal dimensions")
    singulars = np.linalg.svd(
        _psd_sqrt(sigma) @ _psd_sqrt(rho), compute_uv=False
    )
    value = float(singulars.sum() ** 2)
    return min(max(value, 0.0), 1.0)


def state_fidelity(s1: StateVector, s2: StateVector) -> float:
    """|<s1|s2>|^2, the pure-state special case."""
    from .states import inner as state_inner

    return abs(state_inner(s1, s2)) ** 2


def schumacher_qubit_count(rho: np.ndarray, n: int) -> float:
    """Qubits needed to carry n copies of a source with single-copy state rho.

    The typical subspace of n copies has dimension 2^(n S(rho)), so n S(rho)
    qubits suffice.
    """
    rho = validate_density(rho)
    if rho.shape != (2, 2):
        raise ValueError("expected a single-qubit (2x2) density matrix")
    if n < 0:
        raise ValueError("n must be nonnegative")
    return n * von_neumann_entropy(rho)
