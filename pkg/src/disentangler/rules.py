"""
Free-surface conditions and conjugation of a Hamiltonian by one rotation.

For a gate absorbing vertex ``s`` through bond ``i`` the generator is
``P = -i Z_i A_s``. Plaquettes and stars not containing ``i`` commute
with it; ``A_s`` is mapped to ``+Z_i``; the star on the other end of
``i`` would be mapped to a non-stabilizer operator, so it must already
be absent.
"""

from typing import Dict, List

from src.errors import DisentanglerError, SurfaceError
from src.lattice.hamiltonian import FIELD, STAR, HamiltonianSpec, Term
from src.lattice.surfaces import OrientedSurface
from src.pauli.operators import Pauli, commutes, conjugate_by_rotation, rotation_generator
from src.disentangler.circuit import RotationGate


def star_positions(h: HamiltonianSpec) -> Dict[int, int]:
    """Vertex -> position of its active star term."""
    return {t.cell[1]: pos for pos, t in enumerate(h.terms) if t.kind == STAR and t.cell[0] == 0}


def field_qubits(h: HamiltonianSpec) -> set:
    """Qubits carrying a single-qubit Z term (the B-set)."""
    return {next(iter(t.support)) for t in h.terms
            if t.kind == FIELD and t.pauli.is_z_type() and t.pauli.weight == 1}


def make_gate(h: HamiltonianSpec, bond: int, target: int, source: int) -> RotationGate:
    """Gate ``exp(i pi/4 P_{bond,target})`` built from the star pattern at ``target``."""
    lat = h.lattice
    star = Pauli.from_qubits(lat.n_qubits, x_qubits=lat.vertex_edges(target))
    return RotationGate(rotation_generator(lat.n_qubits, bond, star), bond, target, source)


def is_free_surface(h: HamiltonianSpec, surf: OrientedSurface) -> bool:
    """
    True iff no inner-side star is active and no generator meets the B-set.

    Raises:
        SurfaceError: if the surface is not closed
    """
    if not surf.is_closed():
        raise SurfaceError("surface is not closed")
    stars = star_positions(h)
    fields = field_qubits(h)
    lat = h.lattice
    for bond, target in surf.entries.items():
        if surf.source(bond) in stars:
            return False
        if fields.intersection(lat.vertex_edges(target)):
            return False
    return True


def _conjugate_terms(terms: List[Term], positions, gate: RotationGate) -> None:
    """Apply one gate in place to the terms at ``positions``."""
    p = gate.generator
    offenders = [pos for pos in positions if not commutes(p, terms[pos].pauli)]
    star_cell = (0, gate.target_vertex)
    for pos in offenders:
        term = terms[pos]
        if term.kind != STAR or term.cell != star_cell:
            raise DisentanglerError(
                f"gate on bond {gate.bond} toward vertex {gate.target_vertex} "
                f"anticommutes with term {term.index} ({term.kind})")
    for pos in offenders:
        image = conjugate_by_rotation(p, terms[pos].pauli)
        expected = Pauli(p.n, 0, 1 << gate.bond)
        if image != expected:
            raise DisentanglerError(f"star {terms[pos].index} mapped to {image}, expected {expected}")
        terms[pos] = Term(image, FIELD, terms[pos].cell, terms[pos].index)


def conjugate_hamiltonian(h: HamiltonianSpec, gate: RotationGate) -> HamiltonianSpec:
    """
    ``U H U^dagger`` for one rotation gate; the term count is unchanged.

    Raises:
        DisentanglerError: if any term other than the target star anticommutes
    """
    terms = list(h.terms)
    _conjugate_terms(terms, h.terms_meeting(gate.support), gate)
    return h.with_terms(terms)


def classicality_check(h: HamiltonianSpec) -> bool:
    """True iff every term is diagonal in the Z basis."""
    return all(t.pauli.is_z_type() for t in h.terms)
