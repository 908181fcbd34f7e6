"""
Hole detection and block validity.

A hole of radius ``r`` around vertex ``v`` exists when every term whose
support meets ``ball(v, r)`` is inactive. A configuration is valid when
every block contains at least one hole center.
"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np

from src.errors import ValidationError
from src.lattice.geometry import Hole, blocks, check_block_size
from src.lattice.hamiltonian import HamiltonianSpec
from src.thermal.ensemble import Config
from src.utils.debug_logger import get_logger

logger = get_logger(__name__)


@dataclass
class BlockStatus:
    block: int
    has_hole: bool
    chosen_hole: Optional[Hole] = None


@dataclass
class ValidityReport:
    """Per-block hole presence and the chosen hole of each block."""
    blocks: Dict[int, BlockStatus] = field(default_factory=dict)
    valid: bool = False

    @property
    def n_blocks(self) -> int:
        return len(self.blocks)

    @property
    def n_empty(self) -> int:
        return sum(1 for status in self.blocks.values() if not status.has_hole)

    def chosen_holes(self) -> List[Hole]:
        return [s.chosen_hole for s in self.blocks.values() if s.chosen_hole is not None]


def default_radius(h: HamiltonianSpec) -> int:
    """Smallest integer radius greater than ``R_int``."""
    return h.r_int + 1


class HoleFinder:
    """
    Vertex-by-term incidence of radius-``r`` balls for one Hamiltonian.

    Building the table costs one bounded BFS per vertex; each query is a
    matrix-vector product against the configuration bits.
    """

    def __init__(self, h: HamiltonianSpec, r: Optional[int] = None):
        r = default_radius(h) if r is None else r
        if r <= h.r_int:
            raise ValidationError(f"hole radius {r} must exceed R_int={h.r_int}")
        self.h = h
        self.r = r
        lat = h.lattice
        self.meets = np.zeros((lat.n_vertices, len(h)), dtype=np.int32)
        for v in lat.vertices():
            positions = h.terms_meeting(lat.ball((0, v), r))
            self.meets[v, positions] = 1

    def centers(self, c: Config) -> np.ndarray:
        """Sorted hole-center vertices."""
        if len(c) != len(self.h):
            raise ValidationError(f"config has {len(c)} bits for {len(self.h)} terms")
        active = self.meets @ c.s.astype(np.int32)
        return np.flatnonzero(active == 0)

    def find(self, c: Config) -> List[Hole]:
        return [Hole(int(v), self.r) for v in self.centers(c)]

    def classify(self, c: Config, block_size: int) -> ValidityReport:
        lat = self.h.lattice
        is_center = np.zeros(lat.n_vertices, dtype=bool)
        is_center[self.centers(c)] = True
        report = ValidityReport()
        for block in blocks(lat, block_size):
            # vertices are stored in lexicographic order
            chosen = next((v for v in block.vertices if is_center[v]), None)
            hole = Hole(chosen, self.r) if chosen is not None else None
            report.blocks[block.index] = BlockStatus(block.index, hole is not None, hole)
        report.valid = all(s.has_hole for s in report.blocks.values())
        return report

    def plant(self, c: Config, block_size: int) -> Tuple[Config, int]:
        """
        Deactivate the terms around the corner of every block lacking a hole.

        Returns:
            tuple: (valid config, number of blocks that needed a planted hole)
        """
        report = self.classify(c, block_size)
        lat = self.h.lattice
        bits = c.s.copy()
        planted = 0
        for block in blocks(lat, block_size):
            if report.blocks[block.index].has_hole:
                continue
            bits[self.meets[block.vertices[0]] == 1] = False
            planted += 1
        if planted:
            logger.debug(f"planted {planted} holes of radius {self.r}")
        return Config(bits), planted


def find_holes(h: HamiltonianSpec, c: Config, r: Optional[int] = None) -> List[Hole]:
    """All hole centers of radius ``r`` (default ``R_int + 1``), in vertex order."""
    return HoleFinder(h, r).find(c)


def classify(h: HamiltonianSpec, c: Config, block_size: int,
             r: Optional[int] = None) -> ValidityReport:
    """Block validity with the lexicographically smallest hole chosen per block."""
    check_block_size(h.lattice, block_size)
    return HoleFinder(h, r).classify(c, block_size)


def plant_holes(h: HamiltonianSpec, c: Config, block_size: int,
                r: Optional[int] = None) -> Tuple[Config, int]:
    """Make ``c`` valid by clearing one ball per empty block."""
    check_block_size(h.lattice, block_size)
    return HoleFinder(h, r).plant(c, block_size)


def is_hole(h: HamiltonianSpec, c: Config, center: int, r: int) -> bool:
    """Direct check of the defining property for one center."""
    ball = h.lattice.ball((0, center), r)
    return not any(c.s[pos] for pos in h.terms_meeting(ball))
