#!/usr/bin/env python3
"""
Palaišanas iestatījumu ielāde no config.json
"""

import json
import logging
import multiprocessing
import os
from pathlib import Path
from typing import Dict, Optional

from errors import PreconditionError

VERSION = '1.0.0'

DEFAULT_SETTINGS = {
    'tolerance': 1e-12,
    'grid_n': 512,
    'scan_grid': 256,
    'refine_count': 10,
    'seed': 20240601,
    'threads': 0,
    'results_dir': 'rezultati',
    'save_format': ['json', 'csv'],
    'log_file': None,
    'log_level': 'INFO',
}

THREADS_ENV = 'ZAKFRAME_THREADS'


def load_settings(config_file='config.json') -> Dict:
    """Ielādē iestatījumus; trūkstošās vērtības aizpilda ar noklusējumiem"""
    settings = dict(DEFAULT_SETTINGS)
    try:
        with open(config_file, 'r', encoding='utf-8') as f:
            settings.update(json.load(f))
    except FileNotFoundError:
        logging.warning(f"Konfigurācijas fails {config_file} nav atrasts. Izmantoju noklusējuma iestatījumus.")
    except json.JSONDecodeError as e:
        logging.error(f"Konfigurācijas fails {config_file} ir bojāts: {e}")
        raise PreconditionError(f"Iestatījumu fails {config_file} nav derīgs JSON") from e
    return settings


def worker_count(settings: Optional[Dict] = None) -> int:
    """Paralēlo pavedienu skaits: vide > config.json > CPU skaits"""
    env_value = os.environ.get(THREADS_ENV)
    if env_value:
        try:
            return max(1, int(env_value))
        except ValueError:
            logging.warning(f"{THREADS_ENV}={env_value!r} nav vesels skaitlis, ignorēju")
    threads = int((settings or {}).get('threads', 0) or 0)
    if threads > 0:
        return threads
    return multiprocessing.cpu_count()


def results_dir(settings: Dict) -> Path:
    """Rezultātu direktorija (izveido, ja neeksistē)"""
    path = Path(settings.get('results_dir', 'rezultati'))
    path.mkdir(parents=True, exist_ok=True)
    return path
