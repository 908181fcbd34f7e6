"""
Commuting Pauli Hamiltonians ``H = sum_X lambda_X (I - g_X) / 2`` on a lattice.
"""

from collections import defaultdict
from dataclasses import dataclass, replace
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from src.constants import TERM_KINDS
from src.errors import ValidationError
from src.lattice.cells import Lattice
from src.pauli.operators import Pauli, commutes, mask_of
from src.utils.debug_logger import get_logger

logger = get_logger(__name__)

STAR = TERM_KINDS['STAR']
PLAQUETTE = TERM_KINDS['PLAQUETTE']
FIELD = TERM_KINDS['FIELD']


@dataclass(frozen=True)
class Term:
    """One stabilizer term ``g_X`` with the cell it was built from."""
    pauli: Pauli
    kind: str
    cell: Tuple[int, int]
    index: int

    @property
    def support(self):
        return self.pauli.support


class HamiltonianSpec:
    """
    A list of mutually commuting Hermitian Pauli terms on a lattice.

    ``terms[k].index`` is the position of the term in the Hamiltonian it
    was derived from, so restrictions and conjugations keep the labels of
    the full model.
    """

    def __init__(self, lattice: Lattice, terms: Sequence[Term], lambda_a: float = 1.0,
                 lambda_b: float = 1.0, check: bool = True, r_int: Optional[int] = None):
        self.lattice = lattice
        self.terms: Tuple[Term, ...] = tuple(terms)
        self.lambda_a = lambda_a
        self.lambda_b = lambda_b
        self.n_qubits = lattice.n_qubits
        self._qubit_terms = None
        for term in self.terms:
            if not term.pauli.is_hermitian():
                raise ValidationError(f"term {term.index} ({term.pauli}) is not Hermitian")
        if check:
            self.check_commuting()
        self.r_int = self._compute_r_int() if r_int is None else r_int

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)

    @property
    def paulis(self) -> List[Pauli]:
        return [t.pauli for t in self.terms]

    @property
    def qubit_terms(self) -> Dict[int, List[int]]:
        """Qubit id -> positions of terms acting on it."""
        if self._qubit_terms is None:
            index = defaultdict(list)
            for pos, term in enumerate(self.terms):
                for q in term.support:
                    index[q].append(pos)
            self._qubit_terms = dict(index)
        return self._qubit_terms

    def terms_meeting(self, qubits: Iterable[int]) -> List[int]:
        """Sorted positions of terms whose support meets ``qubits``."""
        found = set()
        for q in qubits:
            found.update(self.qubit_terms.get(q, ()))
        return sorted(found)

    def check_commuting(self):
        """Raise if two terms sharing a qubit anticommute."""
        for q, positions in self.qubit_terms.items():
            for a_pos, a in enumerate(positions):
                for b in positions[a_pos + 1:]:
                    if not commutes(self.terms[a].pauli, self.terms[b].pauli):
                        raise ValidationError(
                            f"terms {self.terms[a].index} and {self.terms[b].index} anticommute")

    def _compute_r_int(self) -> int:
        # Terms of the same kind on cells with the same directions are translates
        diameters = {}
        for term in self.terms:
            k, cell = term.cell
            key = (term.kind, k, self.lattice.cell(k, cell)[1], term.pauli.weight)
            if key not in diameters:
                diameters[key] = self.lattice.support_diameter(term.support)
        return max(diameters.values(), default=0)

    def kind_histogram(self) -> Dict[str, int]:
        counts = defaultdict(int)
        for term in self.terms:
            label = 'Z' if term.pauli.is_z_type() else ('X' if term.pauli.is_x_type() else 'mixed')
            counts[f"{term.kind}:{label}"] += 1
        return dict(sorted(counts.items()))

    def coefficient(self, term: Term) -> float:
        return self.lambda_a if term.kind == STAR else self.lambda_b

    def with_terms(self, terms: Sequence[Term], check: bool = False) -> "HamiltonianSpec":
        """Same lattice and couplings, new term list."""
        return HamiltonianSpec(self.lattice, terms, self.lambda_a, self.lambda_b,
                               check=check, r_int=None)

    def position_of(self, original_index: int) -> Optional[int]:
        for pos, term in enumerate(self.terms):
            if term.index == original_index:
                return pos
        return None


def toric_code(lat: Lattice, lambda_a: float = 1.0, lambda_b: float = 1.0) -> HamiltonianSpec:
    """
    Toric code with X stars on (q-1)-cells and Z plaquettes on (q+1)-cells.

    Star terms come first, in cell order, then plaquette terms.
    """
    q = lat.qubit_dim
    n = lat.n_qubits
    terms = []
    for c in lat.cells(q - 1):
        pauli = Pauli(n, mask_of(lat.coboundary(q - 1, c)), 0)
        terms.append(Term(pauli, STAR, (q - 1, c), len(terms)))
    for c in lat.cells(q + 1):
        pauli = Pauli(n, 0, mask_of(lat.boundary(q + 1, c)))
        terms.append(Term(pauli, PLAQUETTE, (q + 1, c), len(terms)))
    h = HamiltonianSpec(lat, terms, lambda_a, lambda_b)
    logger.debug(f"toric code on {lat}: {len(terms)} terms, R_int={h.r_int}")
    return h


def restrict(h: HamiltonianSpec, config) -> HamiltonianSpec:
    """``H({s_X})``: the terms with ``s_X = 1``, keeping original indices."""
    bits = np.asarray(getattr(config, 's', config), dtype=bool)
    if bits.shape != (len(h),):
        raise ValidationError(f"config has {bits.size} bits for {len(h)} terms")
    active = [t for t, on in zip(h.terms, bits) if on]
    return HamiltonianSpec(h.lattice, active, h.lambda_a, h.lambda_b, check=False, r_int=h.r_int)


def field_term(lat: Lattice, qubit: int, index: int) -> Term:
    """``+Z`` on a single qubit."""
    return Term(Pauli(lat.n_qubits, 0, 1 << qubit), FIELD, (lat.qubit_dim, qubit), index)


def relabel(term: Term, pauli: Pauli, kind: Optional[str] = None) -> Term:
    return replace(term, pauli=pauli, kind=kind or term.kind)


__all__ = ['Term', 'HamiltonianSpec', 'toric_code', 'restrict', 'field_term', 'relabel',
           'STAR', 'PLAQUETTE', 'FIELD']
