"""
Oriented closed surfaces on the dual lattice.

A surface is stored through the vertex region it encloses: each entry is
a bond leaving the region, mapped to the outside endpoint ``s(i, xi)``
reached by moving along the surface normal. Only lattices with qubits on
edges (d = 2, 3) carry such surfaces.
"""

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, Optional

from src.errors import SurfaceError
from src.lattice.cells import Lattice
from src.lattice.geometry import Hole


def _require_edge_qubits(lat: Lattice):
    if lat.qubit_dim != 1:
        raise SurfaceError(f"dual surfaces need qubits on edges; d={lat.d} is not supported")


@dataclass(frozen=True)
class OrientedSurface:
    """Closed dual surface around ``inside``, oriented outwards."""
    lattice: Lattice
    inside: FrozenSet[int]
    entries: Dict[int, int] = field(compare=False)

    @classmethod
    def from_region(cls, lat: Lattice, inside: Iterable[int]) -> "OrientedSurface":
        _require_edge_qubits(lat)
        inside = frozenset(inside)
        entries = {}
        for v in inside:
            for e in lat.vertex_edges(v):
                a, b = lat.edge_endpoints(e)
                other = b if a == v else a
                if other not in inside:
                    entries[e] = other
        return cls(lat, inside, dict(sorted(entries.items())))

    def source(self, bond: int) -> int:
        """``s(i, xi-bar)``: the endpoint on the inner side."""
        a, b = self.lattice.edge_endpoints(bond)
        return a if b == self.entries[bond] else b

    @property
    def targets(self) -> FrozenSet[int]:
        return frozenset(self.entries.values())

    def reversed(self) -> "OrientedSurface":
        """Same surface with the inward orientation."""
        outside = frozenset(self.lattice.vertices()) - self.inside
        entries = {bond: self.source(bond) for bond in self.entries}
        return OrientedSurface(self.lattice, outside, entries)

    def is_closed(self) -> bool:
        """Every plaquette crosses the surface an even number of times."""
        lat = self.lattice
        bonds = set(self.entries)
        plaquettes = {p for e in bonds for p in lat.coboundary(1, e)}
        for p in plaquettes:
            if sum(1 for e in lat.boundary(2, p) if e in bonds) % 2:
                return False
        sources = {self.source(b) for b in bonds}
        return not (sources & self.targets)

    def __len__(self):
        return len(self.entries)


def hole_boundary_surface(lat: Lattice, hole: Hole) -> OrientedSurface:
    """Outward surface enclosing the interior vertices of ``hole``."""
    _require_edge_qubits(lat)
    inside = hole.interior(lat)
    if not inside:
        raise SurfaceError(f"hole at vertex {hole.center} has an empty interior")
    if lat.covers_period(inside):
        raise SurfaceError(f"hole at vertex {hole.center} wraps around the lattice")
    return OrientedSurface.from_region(lat, inside)


def step_outward(surface: OrientedSurface, bond: int,
                 allowed: Optional[FrozenSet[int]] = None) -> OrientedSurface:
    """
    Move the surface across the vertex reached through ``bond``.

    Args:
        surface: Closed outward surface
        bond: An entry of ``surface``
        allowed: Vertices the enclosed region may grow into, or None

    Returns:
        OrientedSurface: The advanced surface
    """
    if bond not in surface.entries:
        raise SurfaceError(f"bond {bond} does not cross the surface")
    target = surface.entries[bond]
    if allowed is not None and target not in allowed:
        raise SurfaceError(f"vertex {target} lies outside the allowed range")
    inside = surface.inside | {target}
    if surface.lattice.covers_period(inside):
        raise SurfaceError(f"stepping across bond {bond} would wrap the lattice period")
    return OrientedSurface.from_region(surface.lattice, inside)
