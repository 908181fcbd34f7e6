"""
Periodic cell complexes, toric-code Hamiltonians and their geometry.
"""

from .cells import Lattice, build
from .hamiltonian import (HamiltonianSpec, Term, toric_code, restrict, field_term,
                          STAR, PLAQUETTE, FIELD)
from .geometry import Hole, Block, blocks, block_of_vertex, check_block_size, hole_interior
from .surfaces import OrientedSurface, hole_boundary_surface, step_outward
from .logicals import LogicalPair, logical_operators


def ball(lat, center, r):
    """Qubits within distance ``r`` of the qubits incident to ``center``."""
    return lat.ball(center, r)


__all__ = [
    'Lattice',
    'build',
    'HamiltonianSpec',
    'Term',
    'toric_code',
    'restrict',
    'field_term',
    'STAR',
    'PLAQUETTE',
    'FIELD',
    'Hole',
    'Block',
    'blocks',
    'block_of_vertex',
    'check_block_size',
    'hole_interior',
    'ball',
    'OrientedSurface',
    'hole_boundary_surface',
    'step_outward',
    'LogicalPair',
    'logical_operators',
]
