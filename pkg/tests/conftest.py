"""
Pytest configuration and common fixtures for thermal lab tests.
"""

import pytest
import sys
import os
from itertools import product

import numpy as np

# Add the repository root to the Python path
current_dir = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
if current_dir not in sys.path:
    sys.path.insert(0, current_dir)

from src.lattice import build, toric_code
from src.pauli.operators import Pauli


@pytest.fixture(scope="session")
def toric_2d_small():
    """2D toric code on the 2x2 torus: 8 qubits, 8 terms."""
    return toric_code(build(2, 2))


@pytest.fixture(scope="session")
def toric_2d():
    """2D toric code with L = 4."""
    return toric_code(build(2, 4))


@pytest.fixture(scope="session")
def toric_2d_large():
    """2D toric code with L = 8, four blocks of size 4."""
    return toric_code(build(2, 8))


@pytest.fixture(scope="session")
def toric_3d():
    """3D toric code with L = 3."""
    return toric_code(build(3, 3))


def window_paulis(n, window):
    """All Hermitian Paulis (identity included) on the first ``window`` of ``n`` qubits."""
    paulis = []
    for letters in product('IXYZ', repeat=window):
        paulis.append(Pauli.from_label(''.join(letters) + 'I' * (n - window)))
    return paulis


def dense_trace(rho, pauli):
    """``tr(rho P)`` from matrices."""
    return float(np.trace(rho @ pauli.to_matrix()).real)
