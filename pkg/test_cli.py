#!/usr/bin/env python3
"""
Testi zakframe komandrindai: izejas kodi un izvades faili
"""

import contextlib
import io
import json
import math
import os
import tempfile
from pathlib import Path

from zakframe_cli import (EXIT_ERROR, EXIT_NOT_FRAME, EXIT_OK, EXIT_USAGE, dilation_label, figure_rows, main,
                          parse_window)

SQRT2 = math.sqrt(2)


def _run(argv):
    """(izejas kods, stdout)"""
    buffer = io.StringIO()
    with contextlib.redirect_stdout(buffer):
        code = main(argv)
    return code, buffer.getvalue()


def _write_json(path, data):
    with open(path, 'w', encoding='utf-8') as f:
        json.dump(data, f)
    return str(path)


@contextlib.contextmanager
def _workspace():
    with tempfile.TemporaryDirectory() as tmp:
        tmp = Path(tmp)
        settings = _write_json(tmp / 'settings.json', {'results_dir': str(tmp / 'rezultati'), 'grid_n': 64,
                                                       'scan_grid': 64, 'threads': 1})
        yield tmp, ['--settings', settings]


def test_parse_helpers():
    assert parse_window('h3') == 3
    assert dilation_label(SQRT2) == 'sqrt2'
    assert dilation_label(1 / math.sqrt(3)) == '1/sqrt3'
    assert dilation_label(1.5) == '1.5'
    header, rows = figure_rows(1)
    assert header == ['parity', 'x', 'omega'] and len(rows) == 4
    assert len(figure_rows(6)[1]) == 65


def test_appendix():
    with _workspace() as (tmp, base):
        out = tmp / 'appendix.json'
        code, text = _run(base + ['appendix', '--out', str(out), '--deterministic'])
        assert code == EXIT_OK
        assert '< 0.11' in text
        data = json.loads(out.read_text(encoding='utf-8'))
        assert abs(data['result']['geom0'] - 0.00195179) < 5e-9
        assert data['result']['h2_tail_bound'] < 0.11
        assert data['manifest']['command'] == 'appendix'
        assert 'started' not in data['manifest']

        first = out.read_bytes()
        _run(base + ['appendix', '--out', str(out), '--deterministic'])
        assert out.read_bytes() == first


def test_inequalities():
    with _workspace() as (_, base):
        code, text = _run(base + ['inequalities'])
        assert code == EXIT_OK
        assert 'NEIZPILDĀS' not in text


def test_zak_command():
    with _workspace() as (tmp, base):
        code, text = _run(base + ['zak', '--window', 'h0', '--point', '0', '0'])
        assert code == EXIT_OK and '1.291996' in text

        out = tmp / 'zak.json'
        code, _ = _run(base + ['zak', '--window', 'h3', '--dilated', str(SQRT2),
                               '--point', str(SQRT2 / 2), '0', '--out', str(out)])
        assert code == EXIT_OK
        result = json.loads(out.read_text(encoding='utf-8'))['result']
        assert math.hypot(result['value']['re'], result['value']['im']) < 1e-11


def test_frame_check_exit_codes():
    with _workspace() as (tmp, base):
        odd_zeros = _write_json(tmp / 'odd_zeros.json', {'shifts': [[0, 0], [0.5, 0], [0, 0.5]]})
        out = tmp / 'odd_zeros_result.json'
        code, _ = _run(base + ['frame-check', '--window', 'h1', '--config', odd_zeros, '--out', str(out)])
        assert code == EXIT_NOT_FRAME
        result = json.loads(out.read_text(encoding='utf-8'))['result']
        assert result['verdict'] == 'not_frame_certified'
        assert result['density'] == 3 and result['is_lattice'] is False
        assert len(result['witnesses']) == 3 and result['schema_version'] == 1

        s = 1 / (2 * SQRT2)
        mapped_five = [[0, 0], [0.5, 0], [0, SQRT2 * s], [0.25, SQRT2 * s], [0.75, SQRT2 * s]]
        mapped_path = _write_json(tmp / 'mapped_five.json', {'shifts': mapped_five})
        code, _ = _run(base + ['frame-check', '--window', 'h3', '--dilation-inv', str(SQRT2), '--config', mapped_path])
        assert code == EXIT_NOT_FRAME

        generic = _write_json(tmp / 'generic.json', {'shifts': [[0.13, 0.27], [0.55, 0.81], [0.91, 0.4]]})
        code, text = _run(base + ['frame-check', '--window', 'h1', '--config', generic])
        assert code == EXIT_OK
        assert json.loads(text)['result']['verdict'] == 'frame'

        code, _ = _run(base + ['frame-check', '--window', 'h0'])
        assert code == EXIT_NOT_FRAME


def test_frame_check_random_seed():
    with _workspace() as (tmp, base):
        out = tmp / 'random.csv'
        code, _ = _run(base + ['frame-check', '--window', 'h1', '--random', '3', '--seed', '5', '--out', str(out)])
        assert code in (EXIT_OK, 4)
        manifest = json.loads((tmp / 'random.csv.manifest.json').read_text(encoding='utf-8'))
        assert manifest['seed'] == 5 and manifest['parameters']['random'] == 3
        assert out.read_text(encoding='utf-8').splitlines()[0] == 'x,omega,kind,radius,context'


def test_frame_check_errors():
    with _workspace() as (tmp, base):
        code, _ = _run(base + ['frame-check', '--config', str(tmp / 'missing.json')])
        assert code == EXIT_ERROR

        dilated = _write_json(tmp / 'dilated.json', {'basis': [[SQRT2, 0], [0, 1 / SQRT2]], 'shifts': [[0, 0]]})
        code, _ = _run(base + ['frame-check', '--config', dilated])
        assert code == EXIT_ERROR

        degenerate = _write_json(tmp / 'degenerate.json', {'shifts': [[0, 0], [1, 0]]})
        code, _ = _run(base + ['frame-check', '--config', degenerate])
        assert code == EXIT_ERROR


def test_usage_errors():
    with _workspace() as (_, base):
        with contextlib.redirect_stderr(io.StringIO()):
            assert _run(base + ['zak'])[0] == EXIT_USAGE
            assert _run(base + ['zak', '--window', 'h99', '--point', '0', '0'])[0] == EXIT_USAGE
            assert _run(base + ['zak', '--window', 'x1', '--point', '0', '0'])[0] == EXIT_USAGE
            assert _run(base + ['figure', '9'])[0] == EXIT_USAGE
            assert _run(base + ['appendix', '--tol', '-1'])[0] == EXIT_USAGE
            assert _run(base + ['no-such-command'])[0] == EXIT_USAGE
            assert _run(base + ['frame-check', '--config', 'a.json', '--random', '3'])[0] == EXIT_USAGE
        assert _run(['--version'])[0] == EXIT_OK


def test_bad_settings_file():
    with tempfile.TemporaryDirectory() as tmp:
        path = os.path.join(tmp, 'broken.json')
        with open(path, 'w', encoding='utf-8') as f:
            f.write('{"grid_n": ')
        assert _run(['--settings', path, 'appendix'])[0] == EXIT_ERROR


def test_figures():
    with _workspace() as (tmp, base):
        code, text = _run(base + ['figure', '1'])
        assert code == EXIT_OK
        lines = text.splitlines()
        assert lines[0] == 'parity,x,omega' and lines[1] == 'even,0.5,0.5' and len(lines) == 5

        out = tmp / 'fig5.csv'
        code, _ = _run(base + ['figure', '5', '--samples', '11', '--out', str(out)])
        assert code == EXIT_OK
        rows = out.read_text(encoding='utf-8').splitlines()
        assert rows[0] == 'x,value,error' and len(rows) == 12
        assert float(rows[1].split(',')[1]) < 0 < float(rows[6].split(',')[1])
        assert (tmp / 'fig5.csv.manifest.json').exists()

        out = tmp / 'fig3.json'
        code, _ = _run(base + ['figure', '3', '--out', str(out)])
        assert code == EXIT_OK
        assert len(json.loads(out.read_text(encoding='utf-8'))['result']['rows']) == 5

        code, text = _run(base + ['figure', '7', '--samples', '5', '--format', 'json'])
        assert code == EXIT_OK and len(json.loads(text)['result']['rows']) == 5


def test_zeros_command():
    with _workspace() as (tmp, base):
        out = tmp / 'zeros.csv'
        code, _ = _run(base + ['zeros', '--window', 'h2', '--tilde', str(SQRT2), '--certify', '--omega', '0',
                               '--out', str(out)])
        assert code == EXIT_OK
        rows = out.read_text(encoding='utf-8').splitlines()
        assert len(rows) == 3 and all(',certified_sign_change,' in r for r in rows[1:])

        code, text = _run(base + ['zeros', '--density-seven', '--format', 'json'])
        assert code == EXIT_OK and len(json.loads(text)['result']['witnesses']) == 7

        code, text = _run(base + ['zeros', '--window', 'h1', '--scan'])
        assert code == EXIT_OK and len(text.splitlines()) == 4

        with contextlib.redirect_stderr(io.StringIO()):
            assert _run(base + ['zeros', '--window', 'h1'])[0] == EXIT_ERROR
            assert _run(base + ['zeros', '--window', 'h2', '--certify', '--omega', '0.3'])[0] == EXIT_ERROR


def test_save_to_results_dir():
    with _workspace() as (tmp, base):
        odd_zeros = _write_json(tmp / 'odd_zeros.json', {'shifts': [[0, 0], [0.5, 0], [0, 0.5]]})
        code, _ = _run(base + ['frame-check', '--window', 'h1', '--config', odd_zeros, '--save'])
        assert code == EXIT_NOT_FRAME
        saved = sorted(p.suffix for p in (tmp / 'rezultati').iterdir())
        assert '.json' in saved and '.csv' in saved and '.txt' in saved


if __name__ == "__main__":
    for name, func in list(globals().items()):
        if name.startswith('test_') and callable(func):
            print(f"=== {name} ===")
            func()
    print("Visi testi izieti")
