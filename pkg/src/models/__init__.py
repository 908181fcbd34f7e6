"""
Data models for the thermal lab.
"""

from .settings import (LatticeSettings, SamplingSettings, HoleScanSettings, DisentangleSettings,
                       StructureSettings, DegeneracySettings, ToySettings, WilsonSettings)
from .run_manifest import RunManifest

__all__ = [
    'LatticeSettings',
    'SamplingSettings',
    'HoleScanSettings',
    'DisentangleSettings',
    'StructureSettings',
    'DegeneracySettings',
    'ToySettings',
    'WilsonSettings',
    'RunManifest',
]
