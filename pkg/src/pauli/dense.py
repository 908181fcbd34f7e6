"""
Dense-matrix oracles for small Pauli systems.
"""

from typing import Sequence

import numpy as np
from scipy.linalg import expm

from src.constants import MAX_DENSE_QUBITS
from src.errors import ValidationError
from src.pauli.operators import Pauli


def _check_size(n: int):
    if n > MAX_DENSE_QUBITS:
        raise ValidationError(f"dense oracle limited to {MAX_DENSE_QUBITS} qubits, got {n}")


def projector_hamiltonian(generators: Sequence[Pauli], n: int) -> np.ndarray:
    """``H = sum_X (I - g_X) / 2`` as a dense matrix."""
    _check_size(n)
    dim = 2 ** n
    ident = np.eye(dim, dtype=complex)
    h = np.zeros((dim, dim), dtype=complex)
    for g in generators:
        h += (ident - g.to_matrix()) / 2
    return h


def gibbs_state(generators: Sequence[Pauli], n: int, beta: float) -> np.ndarray:
    """Normalized ``exp(-beta H) / Z``."""
    unnormalized = expm(-beta * projector_hamiltonian(generators, n))
    return unnormalized / np.trace(unnormalized).real


def partition_function(generators: Sequence[Pauli], n: int, beta: float) -> float:
    """``tr exp(-beta H)``; the terms commute so eigenvalues are exact integers."""
    energies = np.linalg.eigvalsh(projector_hamiltonian(generators, n))
    return float(np.exp(-beta * energies).sum())


def stabilizer_state(active: Sequence[Pauli], n: int) -> np.ndarray:
    """
    Maximally mixed state on the joint +1 eigenspace of ``active``.

    Returns:
        np.ndarray: The normalized density matrix, or the zero matrix
        when the eigenspace is empty
    """
    _check_size(n)
    dim = 2 ** n
    ident = np.eye(dim, dtype=complex)
    proj = ident.copy()
    for g in active:
        proj = proj @ (ident + g.to_matrix()) / 2
    trace = np.trace(proj).real
    if trace < 0.5:
        return np.zeros_like(proj)
    return proj / trace


def expectation(rho: np.ndarray, q: Pauli) -> float:
    """``tr(rho q)`` for a Hermitian Pauli."""
    return float(np.trace(rho @ q.to_matrix()).real)
