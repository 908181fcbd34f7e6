"""
Constructive disentangling of thermal toric-code configurations.
"""

from .circuit import RotationGate, CircuitRound, Circuit, split_into_rounds
from .rules import (is_free_surface, conjugate_hamiltonian, classicality_check, make_gate,
                    star_positions)
from .engine import DisentangleResult, SurfaceGrower, run, run_from_seeds
from .witness import WitnessReport, state_witness, transport, dense_transport_check

__all__ = [
    'RotationGate',
    'CircuitRound',
    'Circuit',
    'split_into_rounds',
    'is_free_surface',
    'conjugate_hamiltonian',
    'classicality_check',
    'make_gate',
    'star_positions',
    'DisentangleResult',
    'SurfaceGrower',
    'run',
    'run_from_seeds',
    'WitnessReport',
    'state_witness',
    'transport',
    'dense_transport_check',
]
