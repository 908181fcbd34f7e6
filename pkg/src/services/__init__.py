"""
Service layer for the thermal lab.
"""

from .experiment_service import ExperimentService
from .output_service import OutputService

__all__ = [
    'ExperimentService',
    'OutputService',
]
