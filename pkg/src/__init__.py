"""
Thermal lab: commuting Pauli projector Hamiltonians at T > 0.
"""

from src.constants import VERSION

__version__ = VERSION
