#!/usr/bin/env python3
"""
Testi iestatījumu ielādei un pavedienu skaitam
"""

import json
import os
import tempfile
from pathlib import Path

from errors import PreconditionError
from settings import DEFAULT_SETTINGS, THREADS_ENV, load_settings, results_dir, worker_count


def test_missing_file_uses_defaults():
    with tempfile.TemporaryDirectory() as tmp:
        settings = load_settings(os.path.join(tmp, 'nav.json'))
        assert settings == DEFAULT_SETTINGS
        assert settings is not DEFAULT_SETTINGS


def test_file_overrides_defaults():
    with tempfile.TemporaryDirectory() as tmp:
        path = os.path.join(tmp, 'config.json')
        with open(path, 'w', encoding='utf-8') as f:
            json.dump({'grid_n': 128, 'extra': 'x'}, f)
        settings = load_settings(path)
        assert settings['grid_n'] == 128
        assert settings['extra'] == 'x'
        assert settings['tolerance'] == DEFAULT_SETTINGS['tolerance']


def test_broken_file():
    with tempfile.TemporaryDirectory() as tmp:
        path = os.path.join(tmp, 'config.json')
        with open(path, 'w', encoding='utf-8') as f:
            f.write('{')
        try:
            load_settings(path)
            assert False, "Vajadzēja PreconditionError"
        except PreconditionError:
            pass


def test_worker_count():
    saved = os.environ.pop(THREADS_ENV, None)
    try:
        assert worker_count({'threads': 3}) == 3
        assert worker_count({'threads': 0}) >= 1
        os.environ[THREADS_ENV] = '2'
        assert worker_count({'threads': 3}) == 2
        os.environ[THREADS_ENV] = 'daudz'
        assert worker_count({'threads': 3}) == 3
    finally:
        os.environ.pop(THREADS_ENV, None)
        if saved is not None:
            os.environ[THREADS_ENV] = saved


def test_results_dir_created():
    with tempfile.TemporaryDirectory() as tmp:
        target = Path(tmp) / 'a' / 'b'
        assert results_dir({'results_dir': str(target)}) == target
        assert target.is_dir()


if __name__ == "__main__":
    for name, func in list(globals().items()):
        if name.startswith('test_') and callable(func):
            print(f"=== {name} ===")
            func()
    print("Visi testi izieti")
