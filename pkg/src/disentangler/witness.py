"""
Independent verification of a disentangling circuit.

The stabilizer generators of ``rho({s_X})`` are transported gate by gate
without consulting the engine's bookkeeping; every image must be
Z-diagonal for the transported state to be classical.
"""

from collections import Counter
from dataclasses import asdict, dataclass, field
from typing import Dict, List

import numpy as np

from src.errors import DisentanglerError, ValidationError
from src.lattice.hamiltonian import HamiltonianSpec, restrict
from src.pauli.dense import stabilizer_state
from src.pauli.group import gf2_rank
from src.pauli.operators import Pauli, conjugate_by_rotation
from src.thermal.ensemble import Config
from src.disentangler.circuit import Circuit


@dataclass
class WitnessReport:
    valid: bool
    rounds: int
    range: int
    n_gates: int
    rank: int
    final_term_histogram: Dict[str, int] = field(default_factory=dict)

    def to_dict(self) -> Dict:
        return asdict(self)


def transport(generators: List[Pauli], circuit: Circuit) -> List[Pauli]:
    """Conjugate every generator by every gate, in circuit order."""
    current = list(generators)
    by_qubit: Dict[int, List[int]] = {}
    for k, g in enumerate(current):
        for q in g.support:
            by_qubit.setdefault(q, []).append(k)
    for gate in circuit.gates():
        touched = {k for q in gate.support for k in by_qubit.get(q, ())}
        for k in touched:
            current[k] = conjugate_by_rotation(gate.generator, current[k])
    return current


def _histogram(paulis: List[Pauli]) -> Dict[str, int]:
    counts = Counter()
    for p in paulis:
        kind = 'Z' if p.is_z_type() else ('X' if p.is_x_type() else 'mixed')
        counts[f"{kind}{p.weight}"] += 1
    return dict(sorted(counts.items()))


def state_witness(h: HamiltonianSpec, c: Config, circuit: Circuit) -> WitnessReport:
    """
    Transport the active generators through ``circuit`` and check classicality.

    Raises:
        DisentanglerError: if any transported generator has an X component
    """
    generators = restrict(h, c).paulis
    images = transport(generators, circuit)
    offenders = [str(p) for p in images if not p.is_z_type()]
    if offenders:
        raise DisentanglerError(f"{len(offenders)} transported generators are not Z-type, "
                                f"first: {offenders[0]}")
    rank = gf2_rank(p.symplectic for p in images)
    if rank != gf2_rank(p.symplectic for p in generators):
        raise DisentanglerError("transport changed the rank of the stabilizer group")
    circuit_range = circuit.range
    return WitnessReport(valid=circuit_range <= 2 * circuit.block_size, rounds=circuit.depth,
                         range=circuit_range, n_gates=circuit.n_gates, rank=rank,
                         final_term_histogram=_histogram(images))


def dense_transport_check(h_active: HamiltonianSpec, circuit: Circuit) -> float:
    """
    Max entry difference between ``U rho U^dagger`` and the transported state.

    Only for small systems; ``U`` is applied gate by gate as
    ``(I + i P) / sqrt(2)``.
    """
    n = h_active.n_qubits
    if n > 10:
        raise ValidationError(f"dense transport check limited to 10 qubits, got {n}")
    rho = stabilizer_state(h_active.paulis, n)
    ident = np.eye(2 ** n, dtype=complex)
    for gate in circuit.gates():
        u = (ident + 1j * gate.generator.to_matrix()) / np.sqrt(2)
        rho = u @ rho @ u.conj().T
    expected = stabilizer_state(transport(h_active.paulis, circuit), n)
    return float(np.max(np.abs(rho - expected)))
