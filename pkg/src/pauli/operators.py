"""
Pauli operators on a fixed qubit enumeration.

An operator is stored as ``i**phase * X^x Z^z`` with ``x`` and ``z`` held
as fixed-width arrays of 64-bit words over qubit ids, little-endian (bit
``q`` of the array set means qubit ``q`` is acted on). Constructors also
take plain int bitsets and pack them. Text labels use the Y-basis string:
``Y = i X Z``.
"""

from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Optional, Union

import numpy as np

from src.constants import PHASE_PREFIXES, WORD_BITS
from src.errors import PauliError

Bits = Union[int, np.ndarray]
_WORD_MASK = (1 << WORD_BITS) - 1

_LABEL_BITS = {'I': (0, 0), 'X': (1, 0), 'Z': (0, 1), 'Y': (1, 1)}
_SINGLE = {
    (0, 0): np.eye(2, dtype=complex),
    (1, 0): np.array([[0, 1], [1, 0]], dtype=complex),
    (0, 1): np.array([[1, 0], [0, -1]], dtype=complex),
    (1, 1): np.array([[0, -1], [1, 0]], dtype=complex),  # XZ
}


def n_words(n: int) -> int:
    return max(1, -(-n // WORD_BITS))


def to_words(value: Bits, n: int) -> np.ndarray:
    """
    Pack a bitset on ``n`` bits into a read-only ``uint64`` word array.

    Raises:
        PauliError: if a bit at position ``n`` or above is set
    """
    width = n_words(n)
    if isinstance(value, np.ndarray):
        words = np.array(value, dtype=np.uint64)
        if words.shape != (width,):
            raise PauliError(f"expected {width} words for {n} qubits, got shape {words.shape}")
        spare = n - WORD_BITS * (width - 1)
        if spare < WORD_BITS and int(words[-1]) >> spare:
            raise PauliError(f"bitset exceeds {n} qubits")
    else:
        value = int(value)
        if value < 0 or value >> n:
            raise PauliError(f"bitset exceeds {n} qubits")
        words = np.array([(value >> (WORD_BITS * k)) & _WORD_MASK for k in range(width)],
                         dtype=np.uint64)
    words.setflags(write=False)
    return words


def _bytes(words: np.ndarray) -> np.ndarray:
    return np.ascontiguousarray(words, dtype='<u8').view(np.uint8)


def popcount(value: Bits) -> int:
    """Number of set bits of an int or a word array."""
    if isinstance(value, np.ndarray):
        return int(np.unpackbits(_bytes(value)).sum())
    return bin(value).count("1")


def bits_of(value: Bits):
    """Indices of set bits in increasing order."""
    if isinstance(value, np.ndarray):
        yield from np.flatnonzero(np.unpackbits(_bytes(value), bitorder='little')).tolist()
        return
    while value:
        low = value & -value
        yield low.bit_length() - 1
        value ^= low


def bit(words: np.ndarray, index: int) -> int:
    """Bit ``index`` of a word array."""
    return (int(words[index // WORD_BITS]) >> (index % WORD_BITS)) & 1


def lowest_bit(words: np.ndarray) -> int:
    """Index of the lowest set bit; the array must be nonzero."""
    k = int(np.flatnonzero(words)[0])
    word = int(words[k])
    return WORD_BITS * k + (word & -word).bit_length() - 1


def mask_of(qubits: Iterable[int]) -> int:
    """Bitset with the given qubit ids set."""
    mask = 0
    for q in qubits:
        mask |= 1 << q
    return mask


@dataclass(frozen=True, eq=False)
class Pauli:
    """Phase-exact Pauli operator on ``n`` qubits."""
    n: int
    x: Bits = 0
    z: Bits = 0
    phase: int = 0

    def __post_init__(self):
        object.__setattr__(self, 'x', to_words(self.x, self.n))
        object.__setattr__(self, 'z', to_words(self.z, self.n))
        object.__setattr__(self, 'phase', int(self.phase) % 4)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Pauli):
            return NotImplemented
        return (self.n == other.n and self.phase == other.phase
                and np.array_equal(self.x, other.x) and np.array_equal(self.z, other.z))

    def __hash__(self):
        return hash((self.n, self.phase, self.x.tobytes(), self.z.tobytes()))

    # Construction

    @classmethod
    def identity(cls, n: int) -> "Pauli":
        return cls(n)

    @classmethod
    def from_qubits(cls, n: int, x_qubits: Iterable[int] = (), z_qubits: Iterable[int] = (),
                    phase: int = 0) -> "Pauli":
        """Build ``i**phase * X(x_qubits) Z(z_qubits)``."""
        return cls(n, mask_of(x_qubits), mask_of(z_qubits), phase)

    @classmethod
    def single(cls, n: int, qubit: int, letter: str) -> "Pauli":
        """Single-qubit Hermitian Pauli ``letter`` in {X, Y, Z} on ``qubit``."""
        return cls.from_label('I' * qubit + letter + 'I' * (n - qubit - 1))

    @classmethod
    def from_label(cls, label: str) -> "Pauli":
        """
        Parse ``"[+|i|-|-i]<IXYZ...>"``; qubit 0 is the first character.

        Args:
            label (str): Text label, e.g. ``"-iYI"``

        Returns:
            Pauli: The parsed operator
        """
        text = label.strip()
        label_phase = 0
        for prefix, value in (('-i', 3), ('+i', 1), ('-', 2), ('+', 0), ('i', 1)):
            if text.startswith(prefix):
                label_phase = value
                text = text[len(prefix):]
                break
        x = z = 0
        for q, char in enumerate(text):
            if char not in _LABEL_BITS:
                raise PauliError(f"invalid Pauli character {char!r} in {label!r}")
            xb, zb = _LABEL_BITS[char]
            x |= xb << q
            z |= zb << q
        return cls(len(text), x, z, label_phase + popcount(x & z))

    # Inspection

    def to_label(self) -> str:
        """Text label with phase prefix relative to the Y-string."""
        chars = ['IXZY'[bit(self.x, q) + 2 * bit(self.z, q)] for q in range(self.n)]
        label_phase = (self.phase - popcount(self.x & self.z)) % 4
        return PHASE_PREFIXES[label_phase] + ''.join(chars)

    def __str__(self):
        return self.to_label()

    @property
    def support_mask(self) -> np.ndarray:
        return self.x | self.z

    @property
    def support(self) -> frozenset:
        return frozenset(bits_of(self.support_mask))

    @property
    def weight(self) -> int:
        return popcount(self.support_mask)

    @property
    def symplectic(self) -> np.ndarray:
        """The ``x`` words followed by the ``z`` words."""
        return np.concatenate([self.x, self.z])

    def is_hermitian(self) -> bool:
        return (self.phase + popcount(self.x & self.z)) % 2 == 0

    def squares_to_identity(self) -> bool:
        # P^2 = i^(2k) (-1)^|x&z| I, the same parity condition as Hermiticity
        return self.is_hermitian()

    def is_identity(self) -> bool:
        return not (self.x.any() or self.z.any())

    def is_z_type(self) -> bool:
        return not self.x.any()

    def is_x_type(self) -> bool:
        return not self.z.any()

    def times_phase(self, k: int) -> "Pauli":
        """Multiply by ``i**k``."""
        return Pauli(self.n, self.x, self.z, self.phase + k)

    def adjoint(self) -> "Pauli":
        return Pauli(self.n, self.x, self.z, -self.phase + 2 * popcount(self.x & self.z))

    def __mul__(self, other: "Pauli") -> "Pauli":
        return mul(self, other)

    def __neg__(self) -> "Pauli":
        return self.times_phase(2)

    def to_matrix(self) -> np.ndarray:
        """Dense ``2**n`` matrix; qubit 0 is the leftmost tensor factor."""
        factors = [_SINGLE[(bit(self.x, q), bit(self.z, q))] for q in range(self.n)]
        matrix = reduce(np.kron, factors, np.ones((1, 1), dtype=complex))
        return (1j ** self.phase) * matrix


def _check_same_qubits(p: Pauli, q: Pauli):
    if p.n != q.n:
        raise PauliError(f"qubit sets differ: {p.n} vs {q.n} qubits")


def mul(p: Pauli, q: Pauli) -> Pauli:
    """Phase-exact product ``p q``."""
    _check_same_qubits(p, q)
    phase = p.phase + q.phase + 2 * popcount(p.z & q.x)
    return Pauli(p.n, p.x ^ q.x, p.z ^ q.z, phase)


def product(paulis: Iterable[Pauli], n: Optional[int] = None) -> Pauli:
    """Ordered product of a sequence of Paulis."""
    paulis = list(paulis)
    if not paulis:
        if n is None:
            raise PauliError("empty product needs an explicit qubit count")
        return Pauli.identity(n)
    return reduce(mul, paulis)


def commutes(p: Pauli, q: Pauli) -> bool:
    """True iff the symplectic form of ``p`` and ``q`` vanishes."""
    _check_same_qubits(p, q)
    return popcount((p.x & q.z) ^ (p.z & q.x)) % 2 == 0


def conjugate_by_rotation(p: Pauli, q: Pauli) -> Pauli:
    """
    Conjugate ``q`` by ``U = exp(i pi/4 p)``.

    Args:
        p: Hermitian rotation generator with ``p**2 = I``
        q: Operator to conjugate

    Returns:
        Pauli: ``q`` if the two commute, otherwise ``i p q``
    """
    _check_same_qubits(p, q)
    if not p.is_hermitian():
        raise PauliError(f"rotation generator {p} is not Hermitian")
    if commutes(p, q):
        return q
    return mul(p, q).times_phase(1)


def rotation_generator(n: int, bond: int, star: Pauli) -> Pauli:
    """
    Hermitian generator ``-i Z_bond * star`` for a star containing ``bond``.

    Conjugating ``star`` by the resulting rotation gives ``+Z_bond``.
    """
    if not bit(star.x, bond):
        raise PauliError(f"bond {bond} is not in the support of {star}")
    z_bond = Pauli(n, 0, 1 << bond)
    return mul(z_bond, star).times_phase(3)
