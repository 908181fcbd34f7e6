"""
Growing free surfaces outward from holes until every star is removed.

Stage 1 grows the region around each block's hole through the block
interior (vertices with no coordinate divisible by the block size), one
breadth-first layer at a time. Stage 2 absorbs the remaining wall
vertices, each through its lexicographically smallest absorbed neighbour.
Absorbing a vertex whose star is active costs one rotation; inactive
stars are absorbed for free.
"""

from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Set

from src.errors import DisentanglerError, GeometryError, ValidationError
from src.holes.detection import classify
from src.lattice.geometry import blocks, check_block_size
from src.lattice.hamiltonian import FIELD, HamiltonianSpec, restrict
from src.lattice.surfaces import OrientedSurface
from src.thermal.ensemble import Config
from src.disentangler.circuit import Circuit, RotationGate, split_into_rounds
from src.disentangler.rules import (_conjugate_terms, classicality_check, is_free_surface,
                                    make_gate, star_positions)
from src.utils.debug_logger import get_logger

logger = get_logger(__name__)


@dataclass
class DisentangleResult:
    circuit: Circuit
    final: HamiltonianSpec
    seeds: frozenset
    layers: List[int] = field(default_factory=list)

    @property
    def classical(self) -> bool:
        return classicality_check(self.final)


class SurfaceGrower:
    """Mutable state of one disentangling run."""

    def __init__(self, h_active: HamiltonianSpec, seeds: Iterable[int], block_size: int):
        lat = h_active.lattice
        if lat.qubit_dim != 1:
            raise GeometryError(f"disentangling is defined for d = 2, 3; got d={lat.d}")
        check_block_size(lat, block_size)
        if any(t.kind == FIELD for t in h_active.terms):
            raise ValidationError("input Hamiltonian already carries single-qubit Z terms")
        self.h = h_active
        self.lat = lat
        self.block_size = block_size
        self.terms = list(h_active.terms)
        self.seeds = frozenset(seeds)
        self.absorbed: Set[int] = set(self.seeds)
        self.stars = star_positions(h_active)
        busy = sorted(v for v in self.absorbed if v in self.stars)
        if busy:
            raise ValidationError(f"seed vertices {busy[:5]} still carry active stars")
        self.circuit = Circuit(lat, block_size)
        self.layers: List[int] = []
        self.interior = {v for b in blocks(lat, block_size) for v in b.interior(lat)}

    def _frontier(self, allowed: Optional[Set[int]]) -> Dict[int, tuple]:
        """Unabsorbed neighbours mapped to their ``(bond, source)``."""
        frontier = {}
        for u in sorted(self.absorbed):
            for bond in sorted(self.lat.vertex_edges(u)):
                a, b = self.lat.edge_endpoints(bond)
                s = b if a == u else a
                if s in self.absorbed or (allowed is not None and s not in allowed):
                    continue
                if s not in frontier:
                    frontier[s] = (bond, u)
        return frontier

    def _check_surface(self):
        current = self.h.with_terms(self.terms)
        surface = OrientedSurface.from_region(self.lat, self.absorbed)
        if not is_free_surface(current, surface):
            raise DisentanglerError(f"surface around {len(self.absorbed)} vertices is not free")

    def _apply(self, gate: RotationGate):
        positions = set()
        for q in gate.support:
            positions.update(self._qubit_index.get(q, ()))
        _conjugate_terms(self.terms, sorted(positions), gate)

    def grow(self, stage: int, allowed: Optional[Set[int]], check_every_layer: bool):
        layer = 0
        while True:
            frontier = self._frontier(allowed)
            if not frontier:
                return
            if check_every_layer:
                self._check_surface()
            gates = []
            for s in sorted(frontier):
                if s in self.stars:
                    bond, u = frontier[s]
                    gates.append(make_gate(self.h, bond, s, u))
            for rnd in split_into_rounds(gates, stage, layer):
                if not rnd.supports_disjoint():
                    raise DisentanglerError(f"round in stage {stage} layer {layer} overlaps")
                for gate in rnd.gates:
                    self._apply(gate)
                self.circuit.rounds.append(rnd)
            self.absorbed.update(frontier)
            self.layers.append(len(frontier))
            layer += 1

    def run(self, check_every_layer: bool = True) -> DisentangleResult:
        self._qubit_index = self.h.qubit_terms
        self.grow(1, self.interior, check_every_layer)
        self.grow(2, None, check_every_layer)
        if len(self.absorbed) != self.lat.n_vertices:
            raise DisentanglerError(f"{self.lat.n_vertices - len(self.absorbed)} vertices unreachable")
        final = self.h.with_terms(self.terms, check=True)
        if len(final) != len(self.h):
            raise DisentanglerError("term count changed during conjugation")
        if not classicality_check(final):
            raise DisentanglerError("final Hamiltonian still has off-diagonal terms")
        if self.circuit.range > 2 * self.block_size:
            raise DisentanglerError(
                f"circuit range {self.circuit.range} exceeds twice the block size {self.block_size}")
        logger.debug(f"disentangled {len(self.h)} terms with {self.circuit.n_gates} gates "
                     f"in {self.circuit.depth} rounds, range {self.circuit.range}")
        return DisentangleResult(self.circuit, final, self.seeds, self.layers)


def run_from_seeds(h_active: HamiltonianSpec, seeds: Iterable[int], block_size: int,
                   check_every_layer: bool = True) -> DisentangleResult:
    """Disentangle starting from arbitrary vertices whose stars are inactive."""
    seeds = set(seeds)
    if not seeds:
        raise ValidationError("at least one seed vertex is required")
    return SurfaceGrower(h_active, seeds, block_size).run(check_every_layer)


def run(h: HamiltonianSpec, c: Config, block_size: int, r: Optional[int] = None,
        check_every_layer: bool = True) -> DisentangleResult:
    """
    Build the disentangling circuit for a valid configuration.

    Args:
        h: Full toric code on d = 2 or 3 (no single-qubit terms)
        c: Configuration with at least one hole per block
        block_size: Linear block size dividing L
        r: Hole radius, default ``R_int + 1``
        check_every_layer: Re-verify the free-surface condition before each layer

    Returns:
        DisentangleResult: Circuit plus the all-Z conjugated Hamiltonian
    """
    report = classify(h, c, block_size, r)
    if not report.valid:
        raise ValidationError(f"configuration is invalid: {report.n_empty} blocks lack a hole")
    seeds = set()
    for hole in report.chosen_holes():
        seeds |= hole.interior(h.lattice)
    return run_from_seeds(restrict(h, c), seeds, block_size, check_every_layer)
