"""
Output service: CSV tables, JSON summaries, circuits and the run manifest.

Every file of a run is named ``{subcommand}_{hash}_{name}.{ext}`` so two runs
with the same reproducible parameters overwrite each other and nothing else.
"""

import json
from pathlib import Path
from typing import Dict, List, Optional

import numpy as np
import pandas as pd

from src.config.settings import CSV_SCHEMAS
from src.models.run_manifest import RunManifest
from src.utils.debug_logger import get_logger, log_run_event
from src.validators import sanitize_filename

logger = get_logger(__name__)


def _jsonable(value):
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, float) and not np.isfinite(value):
        return None
    return value


class OutputService:
    """Writes the artefacts of one run into ``out_dir``."""

    def __init__(self, out_dir, manifest: RunManifest):
        self.out_dir = Path(out_dir)
        self.out_dir.mkdir(parents=True, exist_ok=True)
        self.manifest = manifest
        self.run_hash = manifest.get_hash()

    def path_for(self, name: str, ext: str) -> Path:
        filename = sanitize_filename(f"{self.manifest.subcommand}_{self.run_hash}_{name}.{ext}")
        return self.out_dir / filename

    def write_table(self, table: pd.DataFrame, name: str = 'results',
                    schema: Optional[str] = None) -> Path:
        """Write a table with the schema's column order when one applies."""
        columns = CSV_SCHEMAS.get(schema or self.manifest.subcommand)
        if columns is not None and name == 'results':
            missing = [c for c in columns if c not in table.columns]
            if missing:
                raise ValueError(f"table lacks schema columns {missing}")
            table = table[columns]
        path = self.path_for(name, 'csv')
        table.to_csv(path, index=False)
        self.manifest.add_output(path.name)
        log_run_event("TABLE_WRITTEN", path=path, rows=len(table))
        return path

    def write_json(self, payload: Dict, name: str = 'summary') -> Path:
        path = self.path_for(name, 'json')
        path.write_text(json.dumps(_jsonable(payload), indent=2), encoding='utf-8')
        self.manifest.add_output(path.name)
        return path

    def write_circuits(self, circuits: List[List[str]]) -> List[Path]:
        paths = []
        for k, lines in enumerate(circuits):
            path = self.path_for(f"circuit_{k}", 'txt')
            path.write_text('\n'.join(lines) + '\n', encoding='utf-8')
            self.manifest.add_output(path.name)
            paths.append(path)
        return paths

    def write_manifest(self) -> Path:
        path = self.path_for('manifest', 'json')
        path.write_text(json.dumps(_jsonable(self.manifest.to_dict()), indent=2), encoding='utf-8')
        logger.info(f"Run {self.run_hash} wrote {len(self.manifest.outputs)} files to {self.out_dir}")
        return path
