"""
Run manifest with parameter hashing.
"""

import hashlib
import json
from dataclasses import dataclass, field
from datetime import datetime
from pathlib import Path
from typing import Any, Dict, List, Optional

from src.constants import VERSION

# Keys that do not influence outputs
NON_OUTPUT_KEYS = ('out', 'log_level', 'log_dir', 'config')


@dataclass
class RunManifest:
    """Everything needed to reproduce one CLI run."""
    subcommand: str
    params: Dict[str, Any]
    seed: int
    version: str = VERSION
    outputs: List[str] = field(default_factory=list)
    started_at: datetime = field(default_factory=datetime.now)
    wall_clock_seconds: Optional[float] = None

    def reproducible_params(self) -> Dict[str, Any]:
        return {k: v for k, v in sorted(self.params.items()) if k not in NON_OUTPUT_KEYS}

    def get_hash(self) -> str:
        """Short hash of everything that determines the outputs."""
        payload = {
            'subcommand': self.subcommand,
            'params': self.reproducible_params(),
            'seed': self.seed,
            'version': self.version,
        }
        param_str = json.dumps(payload, sort_keys=True, default=str)
        hash_obj = hashlib.md5(param_str.encode())
        return hash_obj.hexdigest()[:8]

    def add_output(self, path) -> None:
        name = Path(path).name
        if name not in self.outputs:
            self.outputs.append(name)

    def finish(self) -> None:
        self.wall_clock_seconds = (datetime.now() - self.started_at).total_seconds()

    def to_dict(self) -> Dict[str, Any]:
        return {
            'subcommand': self.subcommand,
            'params': self.reproducible_params(),
            'seed': self.seed,
            'version': self.version,
            'hash': self.get_hash(),
            'outputs': sorted(self.outputs),
            'started_at': self.started_at.isoformat(),
            'wall_clock_seconds': self.wall_clock_seconds,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'RunManifest':
        return cls(
            subcommand=data['subcommand'],
            params=dict(data.get('params', {})),
            seed=data['seed'],
            version=data.get('version', VERSION),
            outputs=list(data.get('outputs', [])),
            started_at=datetime.fromisoformat(data['started_at']) if 'started_at' in data
            else datetime.now(),
            wall_clock_seconds=data.get('wall_clock_seconds'),
        )
