"""
Bare logical strings and membranes of the toric code.

``U_z`` is Z on a closed primal loop (d = 2, 3) or plane (d = 4); ``U_x``
is X on the dual loop or membrane that crosses it once. The primed copies
are the same operators translated by ``shift`` perpendicular to
themselves, so ``U'_x U_x`` and ``U'_z U_z`` are stabilizer products.
"""

from dataclasses import dataclass
from itertools import product
from typing import Dict, List, Optional

from src.lattice.cells import Lattice
from src.pauli.operators import Pauli, mask_of


@dataclass(frozen=True)
class LogicalPair:
    ux: Pauli
    uz: Pauli
    ux_shifted: Pauli
    uz_shifted: Pauli

    def wilson_x(self) -> Pauli:
        """``U'_x U_x^dagger``."""
        return self.ux_shifted * self.ux.adjoint()

    def wilson_z(self) -> Pauli:
        return self.uz_shifted * self.uz.adjoint()

    def labels(self) -> Dict[str, Pauli]:
        return {
            'U_x': self.ux,
            'U_z': self.uz,
            "U'_x": self.ux_shifted,
            "U'_z": self.uz_shifted,
            "U'_x U_x": self.wilson_x(),
            "U'_z U_z": self.wilson_z(),
        }


def _cells_with(lat: Lattice, k: int, directions, fixed: Dict[int, int]) -> List[int]:
    """k-cells of the given directions whose base coordinates match ``fixed``."""
    free_axes = [mu for mu in range(lat.d) if mu not in fixed]
    cells = []
    for values in product(range(lat.L), repeat=len(free_axes)):
        coords = [0] * lat.d
        for mu, x in fixed.items():
            coords[mu] = x
        for mu, x in zip(free_axes, values):
            coords[mu] = x
        cells.append(lat.cell_index(lat.vertex_index(coords), directions))
    return sorted(set(cells))


def logical_x(lat: Lattice, offset: int = 0) -> Pauli:
    n = lat.n_qubits
    if lat.d == 4:
        return Pauli(n, mask_of(_cells_with(lat, 2, (0, 1), {0: offset, 1: 0})), 0)
    return Pauli(n, mask_of(_cells_with(lat, 1, (0,), {0: offset})), 0)


def logical_z(lat: Lattice, offset: int = 0) -> Pauli:
    n = lat.n_qubits
    if lat.d == 2:
        return Pauli(n, 0, mask_of(_cells_with(lat, 1, (0,), {1: offset})))
    if lat.d == 3:
        return Pauli(n, 0, mask_of(_cells_with(lat, 1, (0,), {1: offset, 2: 0})))
    return Pauli(n, 0, mask_of(_cells_with(lat, 2, (0, 1), {2: offset, 3: 0})))


def logical_operators(lat: Lattice, shift: Optional[int] = None) -> LogicalPair:
    """
    Build ``U_x``, ``U_z`` and their translates.

    Args:
        lat: Lattice of dimension 2, 3 or 4
        shift: Translation of the primed copies; defaults to ``L // 2``

    Returns:
        LogicalPair: The four operators
    """
    shift = lat.L // 2 if shift is None else shift
    return LogicalPair(
        ux=logical_x(lat, 0),
        uz=logical_z(lat, 0),
        ux_shifted=logical_x(lat, shift % lat.L),
        uz_shifted=logical_z(lat, shift % lat.L),
    )
