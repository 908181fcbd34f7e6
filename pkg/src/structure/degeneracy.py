"""
Topological degeneracy ``(L*, eps)`` of a ground projector.

For every Hermitian Pauli ``O`` on a support of diameter below ``L*`` the
checker computes ``min_z ||P O P - z P||`` and reports the maximum. This
is the per-basis quantity; the supremum over all operators on a support
may be larger for non-stabilizer projectors.
"""

from dataclasses import dataclass, asdict
from itertools import product
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Union

import networkx as nx
import numpy as np

from src.constants import MAX_DENSE_QUBITS, MAX_SUPPORT_SIZE
from src.errors import ValidationError
from src.lattice.cells import Lattice
from src.pauli.group import PauliGroup
from src.pauli.operators import Pauli, commutes, popcount
from src.utils.debug_logger import get_logger

logger = get_logger(__name__)

STABILIZER_MODE = 'stabilizer'
DENSE_MODE = 'dense'


@dataclass
class DegeneracyReport:
    eps: float
    l_star: int
    mode: str
    n_supports: int
    n_operators: int
    worst_operator: str = ""
    per_basis: bool = True

    def to_dict(self) -> Dict:
        return asdict(self)


def support_sets(lat: Lattice, l_star: int) -> List[FrozenSet[int]]:
    """
    Covering qubit sets of diameter below ``L*``.

    ``L* = 1`` gives single qubits, ``L* = 2`` the maximal cliques of the
    qubit graph, larger values the balls of radius ``(L* - 1) // 2``
    around every qubit.

    Raises:
        ValidationError: if ``L* < 1`` or a set exceeds ``MAX_SUPPORT_SIZE`` qubits
    """
    if l_star < 1:
        raise ValidationError(f"L* must be at least 1, got {l_star}")
    if l_star == 1:
        sets = [frozenset([q]) for q in range(lat.n_qubits)]
    elif l_star == 2:
        sets = [frozenset(c) for c in nx.find_cliques(lat.qubit_graph())]
    else:
        radius = (l_star - 1) // 2
        sets = [lat.ball((lat.qubit_dim, q), radius) for q in range(lat.n_qubits)]
    unique = sorted(set(sets), key=lambda s: sorted(s))
    largest = max(len(s) for s in unique)
    if largest > MAX_SUPPORT_SIZE:
        raise ValidationError(f"L*={l_star} gives supports of {largest} qubits; "
                              f"at most {MAX_SUPPORT_SIZE} are enumerated")
    return unique


def hermitian_paulis(n: int, support: Iterable[int]) -> Iterator[Pauli]:
    """Non-identity Hermitian Paulis supported inside ``support``."""
    qubits = sorted(support)
    for letters in product('IXZY', repeat=len(qubits)):
        x = z = 0
        for q, letter in zip(qubits, letters):
            if letter in 'XY':
                x |= 1 << q
            if letter in 'ZY':
                z |= 1 << q
        if x or z:
            yield Pauli(n, x, z, popcount(x & z))


def _distinct_paulis(n: int, supports: Sequence[FrozenSet[int]]) -> List[Pauli]:
    return list(dict.fromkeys(p for support in supports for p in hermitian_paulis(n, support)))


def stabilizer_degeneracy_eps(generators: Union[PauliGroup, Sequence[Pauli]],
                              supports: Sequence[FrozenSet[int]], l_star: int = 0,
                              n: Optional[int] = None) -> DegeneracyReport:
    """
    ``eps`` for a stabilizer ground space, one Pauli at a time.

    ``P O P`` vanishes when ``O`` anticommutes with a generator and equals
    ``+-P`` when ``O`` is in the group; a commuting non-member acts as a
    traceless logical and contributes 1.
    """
    group = generators if isinstance(generators, PauliGroup) else PauliGroup(generators, n)
    paulis = _distinct_paulis(group.n, supports)
    eps, worst = 0.0, ""
    for o in paulis:
        if not all(commutes(o, g) for g in group.generators):
            continue
        if group.member(o) is not None:
            continue
        eps, worst = 1.0, o.to_label()
        break
    return DegeneracyReport(eps, l_star, STABILIZER_MODE, len(supports), len(paulis), worst)


def ground_basis(projector: np.ndarray) -> np.ndarray:
    """Orthonormal columns spanning the range of a projector."""
    projector = np.asarray(projector, dtype=complex)
    if np.linalg.norm(projector @ projector - projector, 2) > 1e-8:
        raise ValidationError("ground operator is not a projector")
    values, vectors = np.linalg.eigh((projector + projector.conj().T) / 2)
    return vectors[:, values > 0.5]


def dense_degeneracy_eps(projector: np.ndarray, supports: Sequence[FrozenSet[int]],
                         l_star: int = 0) -> DegeneracyReport:
    """
    ``eps`` for a dense projector: ``(lambda_max - lambda_min) / 2`` of ``V^dag O V``.

    ``z`` at the midpoint of the compressed spectrum minimises the norm.
    """
    dim = projector.shape[0]
    n = dim.bit_length() - 1
    if 1 << n != dim or n > MAX_DENSE_QUBITS:
        raise ValidationError(f"dense projector of dimension {dim} is not on at most "
                              f"{MAX_DENSE_QUBITS} qubits")
    v = ground_basis(projector)
    paulis = _distinct_paulis(n, supports)
    eps, worst = 0.0, ""
    if v.shape[1] > 1:
        for o in paulis:
            compressed = v.conj().T @ o.to_matrix() @ v
            values = np.linalg.eigvalsh((compressed + compressed.conj().T) / 2)
            spread = float(values[-1] - values[0]) / 2
            if spread > eps:
                eps, worst = spread, o.to_label()
    return DegeneracyReport(eps, l_star, DENSE_MODE, len(supports), len(paulis), worst)


def topological_degeneracy_eps(ground, l_star: int, lattice: Optional[Lattice] = None,
                               supports: Optional[Sequence[FrozenSet[int]]] = None,
                               n: Optional[int] = None) -> DegeneracyReport:
    """
    Largest deviation of a small-support Pauli from a scalar on the ground space.

    Args:
        ground: Stabilizer generators (``PauliGroup`` or list of Paulis) or a
            dense projector
        l_star: Diameter bound ``L*``
        lattice: Lattice used to build supports when ``supports`` is omitted
        supports: Explicit qubit sets to enumerate
        n: Qubit count for an empty generator list

    Returns:
        DegeneracyReport: ``eps`` with the operator that attains it
    """
    if supports is None:
        if lattice is None:
            raise ValidationError("either a lattice or explicit supports are required")
        supports = support_sets(lattice, l_star)
    if lattice is not None and l_star >= lattice.L / 2:
        logger.warning(f"L*={l_star} is not below L/2={lattice.L / 2}; "
                       f"small operators may reach across the torus")
    if isinstance(ground, np.ndarray):
        report = dense_degeneracy_eps(ground, supports, l_star)
    else:
        report = stabilizer_degeneracy_eps(ground, supports, l_star, n)
    logger.debug(f"degeneracy ({report.mode}) L*={l_star}: eps={report.eps} "
                 f"over {report.n_operators} operators")
    return report
