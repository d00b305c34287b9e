#!/usr/bin/env python3
"""
Rezultātu saglabāšana: JSON ar iegulto manifestu, CSV ar blakus manifestu,
un cilvēkiem lasāms TXT pārskats.
"""

import csv
import io
import json
import logging
import platform
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Sequence

import numpy as np
import scipy

from settings import VERSION

MANIFEST_SCHEMA = 1


@dataclass
class RunManifest:
    """Palaišanas apraksts, kas pavada katru izvades failu"""
    command: str
    parameters: Dict
    tolerances: Dict
    seed: Optional[int] = None
    version: str = VERSION
    deterministic: bool = False
    started: float = field(default_factory=time.time)
    finished: Optional[float] = None

    def finish(self):
        self.finished = time.time()

    @property
    def duration(self) -> Optional[float]:
        if self.finished is None:
            return None
        return self.finished - self.started

    def to_dict(self) -> Dict:
        data = {
            'schema_version': MANIFEST_SCHEMA,
            'command': self.command,
            'parameters': self.parameters,
            'tolerances': self.tolerances,
            'seed': self.seed,
            'version': self.version,
            'numpy': np.__version__,
            'scipy': scipy.__version__,
        }
        # --deterministic: tikai lauki, kas nemainās starp palaišanām
        if not self.deterministic:
            data['python'] = platform.python_version()
            data['started'] = time.strftime('%Y-%m-%d %H:%M:%S', time.localtime(self.started))
            data['duration_s'] = self.duration
        return data


def _default(value):
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, complex):
        return {'re': value.real, 'im': value.imag}
    raise TypeError(f"Nevar serializēt {type(value).__name__}")


def dumps_json(result, manifest: RunManifest) -> str:
    return json.dumps({'manifest': manifest.to_dict(), 'result': result},
                      ensure_ascii=False, indent=2, sort_keys=True, default=_default) + '\n'


def rows_to_csv(header: Sequence[str], rows: List[Sequence]) -> str:
    """CSV ar '.' decimālatdalītāju un '\\n' rindu beigām"""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(header)
    for row in rows:
        writer.writerow([repr(float(v)) if isinstance(v, (float, np.floating)) else v for v in row])
    return buffer.getvalue()


def save_json(path, result, manifest: RunManifest) -> Path:
    path = Path(path)
    with open(path, 'w', encoding='utf-8', newline='\n') as f:
        f.write(dumps_json(result, manifest))
    logging.info(f"Saglabāts {path}")
    return path


def save_csv(path, header: Sequence[str], rows: List[Sequence], manifest: RunManifest) -> Path:
    """Saglabā CSV un blakus <path>.manifest.json"""
    path = Path(path)
    with open(path, 'w', encoding='utf-8', newline='\n') as f:
        f.write(rows_to_csv(header, rows))
    manifest_path = path.with_name(path.name + '.manifest.json')
    with open(manifest_path, 'w', encoding='utf-8', newline='\n') as f:
        json.dump(manifest.to_dict(), f, ensure_ascii=False, indent=2, sort_keys=True, default=_default)
        f.write('\n')
    logging.info(f"Saglabāti {len(rows)} ieraksti failos {path} un {manifest_path}")
    return path


def save_report(path, title: str, lines: List[str]) -> Path:
    """Cilvēkiem lasāms pārskats"""
    path = Path(path)
    with open(path, 'w', encoding='utf-8', newline='\n') as f:
        f.write(f"{title} - {time.strftime('%Y-%m-%d %H:%M')}\n")
        f.write("=" * 80 + "\n\n")
        for line in lines:
            f.write(line + "\n")
    logging.info(f"Pārskats saglabāts {path}")
    return path


def timestamped(results_dir: Path, stem: str, suffix: str) -> Path:
    timestamp = time.strftime('%Y%m%d_%H%M%S')
    return results_dir / f'{stem}_{timestamp}.{suffix}'
