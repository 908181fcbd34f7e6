"""
Blocks and holes on a periodic lattice.
"""

from dataclasses import dataclass
from functools import lru_cache
from typing import FrozenSet, List, Tuple

from src.errors import GeometryError
from src.lattice.cells import Coords, Lattice


@dataclass(frozen=True)
class Hole:
    """A ball around a vertex whose intersecting terms are all inactive."""
    center: int
    radius: int

    def ball(self, lat: Lattice) -> FrozenSet[int]:
        return lat.ball((0, self.center), self.radius)

    def interior(self, lat: Lattice) -> FrozenSet[int]:
        """Vertices whose incident qubits all lie in the ball."""
        return hole_interior(lat, self.center, self.radius)


@dataclass(frozen=True)
class Block:
    """Cube of ``size**d`` vertices starting at ``origin``."""
    index: int
    origin: Coords
    size: int
    vertices: Tuple[int, ...]

    def contains(self, lat: Lattice, v: int) -> bool:
        coords = lat.vertex_coords(v)
        return all(o <= x < o + self.size for o, x in zip(self.origin, coords))

    def interior(self, lat: Lattice) -> Tuple[int, ...]:
        """Vertices with no coordinate on the block's lower walls."""
        return tuple(v for v in self.vertices
                     if all(x % self.size != 0 for x in lat.vertex_coords(v)))


def check_block_size(lat: Lattice, l: int):
    if l > lat.L:
        raise GeometryError(f"block size {l} exceeds lattice size {lat.L}")
    if l < 2 or lat.L % l != 0:
        raise GeometryError(f"block size {l} must be at least 2 and divide L={lat.L}")


def blocks(lat: Lattice, l: int) -> List[Block]:
    """
    Partition the vertices into cubes of linear size ``l``.

    Blocks are numbered row-major over their origins; vertices inside a
    block keep lattice order, so ``vertices[0]`` is the lexicographic corner.
    """
    check_block_size(lat, l)
    per_axis = lat.L // l
    members = {}
    for v in lat.vertices():
        coords = lat.vertex_coords(v)
        key = tuple(x // l for x in coords)
        members.setdefault(key, []).append(v)
    result = []
    for index, key in enumerate(sorted(members)):
        origin = tuple(k * l for k in key)
        result.append(Block(index, origin, l, tuple(sorted(members[key], key=lat.vertex_coords))))
    assert len(result) == per_axis ** lat.d
    return result


def block_of_vertex(lat: Lattice, l: int, v: int) -> int:
    per_axis = lat.L // l
    index = 0
    for x in lat.vertex_coords(v):
        index = index * per_axis + x // l
    return index


@lru_cache(maxsize=4096)
def hole_interior(lat: Lattice, center: int, radius: int) -> FrozenSet[int]:
    ball = lat.ball((0, center), radius)
    candidates = {center}
    frontier = {center}
    # Interior vertices are connected to the center through interior vertices
    while frontier:
        nxt = set()
        for v in frontier:
            for w in lat.graph().neighbors(v):
                if w not in candidates and lat.incident_qubits(0, w) <= ball:
                    candidates.add(w)
                    nxt.add(w)
        frontier = nxt
    if not lat.incident_qubits(0, center) <= ball:
        return frozenset()
    return frozenset(candidates)
