"""
Factory functions for creating common objects in the thermal lab.
"""

from typing import Dict

from src.lattice.cells import Lattice, build
from src.lattice.hamiltonian import HamiltonianSpec, toric_code
from src.lattice.logicals import logical_operators
from src.models.settings import LatticeSettings
from src.pauli.operators import Pauli


def create_lattice(settings: LatticeSettings) -> Lattice:
    """
    Create the periodic lattice described by the settings.

    Args:
        settings: Lattice settings

    Returns:
        Lattice: The cell complex
    """
    return build(settings.d, settings.L)


def create_hamiltonian(settings: LatticeSettings) -> HamiltonianSpec:
    """
    Create the toric code for the settings.

    Args:
        settings: Lattice settings

    Returns:
        HamiltonianSpec: Stars first, then plaquettes
    """
    return toric_code(create_lattice(settings), settings.lambda_a, settings.lambda_b)


def create_window_observables(h: HamiltonianSpec, window: int) -> Dict[str, Pauli]:
    """
    Single-qubit Paulis on the first ``window`` qubits plus every term.

    Args:
        h: Hamiltonian
        window: Number of leading qubits

    Returns:
        dict: Label -> Hermitian Pauli, terms labelled ``term_<index>``
    """
    n = h.n_qubits
    observables = {}
    for q in range(min(window, n)):
        for letter in 'XYZ':
            observables[f"{letter}{q}"] = Pauli.single(n, q, letter)
    for term in h.terms:
        observables[f"term_{term.index}"] = term.pauli
    return observables


def create_wilson_observables(h: HamiltonianSpec, shift=None) -> Dict[str, Pauli]:
    """Wilson pairs ``U'_x U_x`` and ``U'_z U_z`` of the lattice."""
    pair = logical_operators(h.lattice, shift)
    return {"U'_x U_x": pair.wilson_x(), "U'_z U_z": pair.wilson_z()}
