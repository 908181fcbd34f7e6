"""
Dense operators and their plain-text fixture format.

A fixture file holds ``rows cols`` on the first line, then one line per
row with ``re im`` pairs in row-major order.
"""

from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Tuple

import numpy as np

from src.constants import MAX_DENSE_QUBITS
from src.errors import ValidationError


@dataclass
class DenseOperator:
    """Complex matrix on a tensor product of the listed subsystem dimensions."""
    matrix: np.ndarray
    dims: Tuple[int, ...]
    label: str = ""

    def __post_init__(self):
        self.matrix = np.asarray(self.matrix, dtype=complex)
        total = int(np.prod(self.dims))
        if self.matrix.shape != (total, total):
            raise ValidationError(f"matrix shape {self.matrix.shape} does not match dims {self.dims}")
        if total > 2 ** MAX_DENSE_QUBITS:
            raise ValidationError(f"dimension {total} exceeds 2**{MAX_DENSE_QUBITS}")

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def is_hermitian(self, tol: float = 1e-10) -> bool:
        return bool(np.allclose(self.matrix, self.matrix.conj().T, atol=tol))


def random_hermitian(dim: int, rng: np.random.Generator) -> np.ndarray:
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return (a + a.conj().T) / 2


def save_matrix(path, matrix: np.ndarray) -> Path:
    path = Path(path)
    matrix = np.asarray(matrix, dtype=complex)
    rows, cols = matrix.shape
    lines = [f"{rows} {cols}"]
    for row in matrix:
        lines.append(' '.join(f"{float(z.real)!r} {float(z.imag)!r}" for z in row))
    path.write_text('\n'.join(lines) + '\n', encoding='utf-8')
    return path


def load_matrix(path) -> np.ndarray:
    text = Path(path).read_text(encoding='utf-8').split('\n')
    rows, cols = (int(x) for x in text[0].split())
    matrix = np.zeros((rows, cols), dtype=complex)
    for r in range(rows):
        values = [float(x) for x in text[r + 1].split()]
        if len(values) != 2 * cols:
            raise ValidationError(f"row {r} of {path} has {len(values)} numbers, expected {2 * cols}")
        matrix[r] = np.array(values[0::2]) + 1j * np.array(values[1::2])
    return matrix
