"""
Rounds of pi/4 Pauli rotations.
"""

from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Tuple

import networkx as nx

from src.lattice.cells import Lattice
from src.lattice.geometry import block_of_vertex
from src.pauli.operators import Pauli


@dataclass(frozen=True)
class RotationGate:
    """``exp(i pi/4 P)`` absorbing ``target_vertex`` through ``bond``."""
    generator: Pauli
    bond: int
    target_vertex: int
    source_vertex: int

    @property
    def support(self):
        return self.generator.support

    def to_line(self, round_index: int) -> str:
        return f"{round_index} {self.bond} {self.target_vertex} {self.generator.to_label()}"


@dataclass
class CircuitRound:
    stage: int
    layer: int
    gates: Tuple[RotationGate, ...]

    def supports_disjoint(self) -> bool:
        seen = set()
        for gate in self.gates:
            if seen & gate.support:
                return False
            seen |= gate.support
        return True


@dataclass
class Circuit:
    """
    Ordered rounds; gates inside a round act on disjoint qubits.

    The range is the largest per-axis extent, on the torus, of the
    vertices touched by all gates whose target lies in one block.
    """
    lattice: Lattice
    block_size: int
    rounds: List[CircuitRound] = field(default_factory=list)

    def gates(self) -> Iterator[RotationGate]:
        for rnd in self.rounds:
            yield from rnd.gates

    @property
    def n_gates(self) -> int:
        return sum(len(r.gates) for r in self.rounds)

    @property
    def depth(self) -> int:
        return len(self.rounds)

    def footprints(self) -> Dict[int, set]:
        """Block index -> vertices touched by gates targeting that block."""
        regions: Dict[int, set] = {}
        for gate in self.gates():
            block = block_of_vertex(self.lattice, self.block_size, gate.target_vertex)
            touched = regions.setdefault(block, set())
            for q in gate.support:
                touched |= self.lattice.qubit_vertices(q)
        return regions

    @property
    def range(self) -> int:
        return max((self.lattice.circular_extent(v) for v in self.footprints().values()),
                   default=0)

    def to_lines(self) -> List[str]:
        """``round bond_id target_vertex generator-string`` per gate."""
        return [gate.to_line(k) for k, rnd in enumerate(self.rounds) for gate in rnd.gates]

    def write(self, path):
        with open(path, 'w', encoding='utf-8') as handle:
            for line in self.to_lines():
                handle.write(line + '\n')


def split_into_rounds(gates: List[RotationGate], stage: int, layer: int) -> List[CircuitRound]:
    """Greedy-colour the overlap graph of one BFS layer into disjoint rounds."""
    if not gates:
        return []
    conflicts = nx.Graph()
    conflicts.add_nodes_from(range(len(gates)))
    by_qubit: Dict[int, List[int]] = {}
    for k, gate in enumerate(gates):
        for q in gate.support:
            for other in by_qubit.get(q, ()):
                conflicts.add_edge(other, k)
            by_qubit.setdefault(q, []).append(k)
    colouring = nx.greedy_color(conflicts, strategy='largest_first')
    groups: Dict[int, List[RotationGate]] = {}
    for k in range(len(gates)):
        groups.setdefault(colouring[k], []).append(gates[k])
    return [CircuitRound(stage, layer, tuple(groups[c])) for c in sorted(groups)]
