"""
GF(2) echelon forms for groups generated by Hermitian Paulis.

Generators are tracked by integer ids. Each echelon row keeps its
symplectic word array, the set of generator ids it is built from (a bitmask)
and the phase-exact product of those generators. Rows are reduced: every
row owns one pivot column that no other row has set, so reducing a vector
only touches the rows whose pivots are set in the original vector.
Dependent generators produce relations ``(mask, phase)`` meaning the
product of the generators in ``mask`` is ``i**phase * I``.
"""

from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from src.errors import PauliError
from src.pauli.operators import Pauli, bit, bits_of, lowest_bit, mul, to_words


class _Row:
    __slots__ = ('pivot', 'vec', 'pauli', 'comp')

    def __init__(self, pivot: int, vec: np.ndarray, pauli: Pauli, comp: int):
        self.pivot = pivot
        self.vec = vec
        self.pauli = pauli
        self.comp = comp


class IncrementalEchelon:
    """
    Mutable reduced echelon form supporting generator insertion and removal.

    Sign semantics (``member``, ``consistent``) assume the generators
    commute pairwise; rank is meaningful for any generators.
    """

    def __init__(self, n: int):
        self.n = n
        self._rows: List[_Row] = []
        self._pivots: Dict[int, _Row] = {}
        self._relations: List[List[int]] = []  # [mask, phase]
        self._members: Dict[int, Pauli] = {}

    # Queries

    @property
    def rank(self) -> int:
        return len(self._rows)

    @property
    def generator_ids(self) -> Tuple[int, ...]:
        return tuple(sorted(self._members))

    def __contains__(self, gen_id: int) -> bool:
        return gen_id in self._members

    def __len__(self) -> int:
        return len(self._members)

    def consistent(self) -> bool:
        """False iff ``-I`` (or any non-unit multiple of I) is in the group."""
        return all(phase == 0 for _, phase in self._relations)

    def _reduce(self, pauli: Pauli) -> Tuple[np.ndarray, Pauli, int]:
        """Residual vector, product of the rows used, and their composition."""
        if pauli.n != self.n:
            raise PauliError(f"qubit sets differ: {pauli.n} vs {self.n} qubits")
        vec = pauli.symplectic
        acc = Pauli.identity(self.n)
        comp = 0
        for col in bits_of(vec):
            row = self._pivots.get(col)
            if row is not None:
                acc = mul(acc, row.pauli)
                comp ^= row.comp
        return vec ^ acc.symplectic, acc, comp

    def ratio_if_added(self, pauli: Pauli) -> float:
        """
        Ratio of ground-space dimensions after/before adding ``pauli``.

        Returns:
            float: 0.5 if independent, 1.0 if a +1 member, 0.0 if the
            addition would put ``-I`` in the group
        """
        residual, acc, _ = self._reduce(pauli)
        if residual.any():
            return 0.5
        return 1.0 if mul(pauli, acc).phase == 0 else 0.0

    def ratio_if_removed(self, gen_id: int) -> float:
        """
        Ratio of ground-space dimensions with/without generator ``gen_id``.

        Matches what ``ratio_if_added`` would return for the generator
        after removing it, without touching the echelon.

        Raises:
            PauliError: if ``gen_id`` is not present
        """
        if gen_id not in self._members:
            raise PauliError(f"generator {gen_id} not present")
        gen_bit = 1 << gen_id
        carrier = next((rel for rel in self._relations if rel[0] & gen_bit), None)
        if carrier is None:
            return 0.5
        return 1.0 if carrier[1] == 0 else 0.0

    def member(self, pauli: Pauli) -> Optional[int]:
        """
        Sign of a Hermitian Pauli inside the group.

        Returns:
            None if not a member, otherwise +1 or -1
        """
        if not pauli.is_hermitian():
            raise PauliError(f"membership query needs a Hermitian Pauli, got {pauli}")
        residual, acc, _ = self._reduce(pauli)
        if residual.any():
            return None
        phase = mul(pauli, acc).phase
        if phase == 0:
            return 1
        if phase == 2:
            return -1
        return None

    def recombine(self, pauli: Pauli) -> Optional[Tuple[int, Pauli]]:
        """Generator mask and phase-exact product reproducing ``±pauli``."""
        residual, acc, comp = self._reduce(pauli)
        if residual.any():
            return None
        return comp, acc

    # Updates

    def add(self, gen_id: int, pauli: Pauli) -> bool:
        """
        Insert generator ``gen_id``.

        Returns:
            bool: True if the rank grew
        """
        if gen_id in self._members:
            raise PauliError(f"generator {gen_id} already present")
        self._members[gen_id] = pauli
        residual, acc, comp = self._reduce(pauli)
        gen_bit = 1 << gen_id
        if not residual.any():
            self._relations.append([comp | gen_bit, mul(pauli, acc).phase])
            return False

        new_pauli = mul(pauli, acc)
        pivot = lowest_bit(residual)
        row = _Row(pivot, residual, new_pauli, comp | gen_bit)
        for other in self._rows:
            if bit(other.vec, pivot):
                other.vec = other.vec ^ residual
                other.pauli = mul(other.pauli, new_pauli)
                other.comp ^= row.comp
        self._rows.append(row)
        self._pivots[pivot] = row
        return True

    def remove(self, gen_id: int) -> bool:
        """
        Delete generator ``gen_id``.

        Returns:
            bool: True if the rank dropped
        """
        if gen_id not in self._members:
            raise PauliError(f"generator {gen_id} not present")
        del self._members[gen_id]
        gen_bit = 1 << gen_id

        carrier = next((rel for rel in self._relations if rel[0] & gen_bit), None)
        if carrier is not None:
            self._relations.remove(carrier)
            mask, phase = carrier
            for rel in self._relations:
                if rel[0] & gen_bit:
                    rel[0] ^= mask
                    rel[1] = (rel[1] + phase) % 4
            for row in self._rows:
                if row.comp & gen_bit:
                    row.comp ^= mask
                    row.pauli = row.pauli.times_phase(phase)
            return False

        carrier_row = next((row for row in self._rows if row.comp & gen_bit), None)
        if carrier_row is None:
            return False
        self._rows.remove(carrier_row)
        del self._pivots[carrier_row.pivot]
        for row in self._rows:
            if row.comp & gen_bit:
                row.vec = row.vec ^ carrier_row.vec
                row.pauli = mul(row.pauli, carrier_row.pauli)
                row.comp ^= carrier_row.comp
        return True

    def snapshot_rows(self) -> List[Tuple[int, Pauli]]:
        """Rows as ``(composition mask, product)`` pairs, for debugging."""
        return [(row.comp, row.pauli) for row in self._rows]


class PauliGroup:
    """Immutable group generated by a list of Hermitian Paulis."""

    def __init__(self, generators: Sequence[Pauli], n: Optional[int] = None):
        generators = tuple(generators)
        if n is None:
            if not generators:
                raise PauliError("empty group needs an explicit qubit count")
            n = generators[0].n
        self.n = n
        self.generators = generators
        self._echelon = IncrementalEchelon(n)
        for gen_id, g in enumerate(generators):
            if not g.is_hermitian():
                raise PauliError(f"generator {g} is not Hermitian")
            self._echelon.add(gen_id, g)

    @property
    def rank(self) -> int:
        return self._echelon.rank

    def member(self, q: Pauli) -> Optional[int]:
        return self._echelon.member(q)

    def consistent(self) -> bool:
        return self._echelon.consistent()

    def recombine(self, q: Pauli) -> Optional[Tuple[int, Pauli]]:
        return self._echelon.recombine(q)

    def __len__(self):
        return len(self.generators)


def group_rank(g: PauliGroup) -> int:
    """GF(2) rank of the symplectic vectors of the generators."""
    return g.rank


def member(g: PauliGroup, q: Pauli) -> Optional[int]:
    """None if ``q`` is not in the group, otherwise its sign (+1 or -1)."""
    return g.member(q)


def gf2_rank(vectors: Iterable[Union[int, np.ndarray]]) -> int:
    """Plain GF(2) rank of int bitsets or word arrays by Gaussian elimination."""
    rows = [to_words(v, max(1, v.bit_length())) if isinstance(v, int) else np.asarray(v, dtype=np.uint64)
            for v in vectors]
    if not rows:
        return 0
    width = max(len(v) for v in rows)
    basis: Dict[int, np.ndarray] = {}
    for vec in rows:
        vec = np.pad(vec, (0, width - len(vec)))
        while vec.any():
            low = lowest_bit(vec)
            if low not in basis:
                basis[low] = vec
                break
            vec = vec ^ basis[low]
    return len(basis)
