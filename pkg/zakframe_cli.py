#!/usr/bin/env python3
"""
zakframe komandrinda: Zaka vērtības, rāmja pārbaude, nulles, attēlu dati
un pielikuma rindas.

Izejas kodi: 0 rāmis / veiksmīgi, 1 aprēķina kļūda, 2 nepareizi argumenti,
3 pierādīts, ka nav rāmis, 4 nav izšķirts.
"""

import argparse
import logging
import math
import re
import sys
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from configuration import (PeriodicConfig, config_to_json, density, integer_lattice, is_lattice,
                           load_config_file, points_in_box, random_config)
from errors import ZakFrameError
from frame import frame_bounds
from results import RunManifest, dumps_json, rows_to_csv, save_csv, save_json, save_report, timestamped
from series import GeomParams, geom0, geom1, geom2, h2_tail_bound
from settings import VERSION, load_settings, results_dir, worker_count
from windows import MAX_ORDER, HermiteWindow
from zak import PlanePoint, ZakVariant, reduce_fundamental
from zeros import (SQRT2, SQRT3, ZeroWitness, certify_slice, density_seven_witnesses,
                   h2_inequality_check, real_slice, scan_zero_candidates, tabulated_zeros,
                   trivial_zeros)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_USAGE = 2
EXIT_NOT_FRAME = 3
EXIT_INCONCLUSIVE = 4

VERDICT_EXIT = {'frame': EXIT_OK, 'not_frame_certified': EXIT_NOT_FRAME, 'inconclusive': EXIT_INCONCLUSIVE}

SYMBOLIC_DILATIONS = (('sqrt2', SQRT2), ('sqrt3', SQRT3), ('1/sqrt2', 1 / SQRT2), ('1/sqrt3', 1 / SQRT3))
SYMBOL_TOL = 1e-9

FIGURE_SAMPLES = 1001
WITNESS_HEADER = ['x', 'omega', 'kind', 'radius', 'context']


def dilation_label(a: float) -> str:
    """Simbolisks nosaukums dilatācijai, ja tā sakrīt ar sqrt2 vai sqrt3"""
    for name, value in SYMBOLIC_DILATIONS:
        if abs(a - value) <= SYMBOL_TOL:
            return name
    return f"{a:.12g}"


def parse_window(text: str) -> int:
    match = re.fullmatch(r'h(\d+)', text.strip())
    if not match:
        raise argparse.ArgumentTypeError(f"loga specifikācijai jābūt formā hN, saņemts {text!r}")
    order = int(match.group(1))
    if order > MAX_ORDER:
        raise argparse.ArgumentTypeError(f"kārta {order} pārsniedz {MAX_ORDER}")
    return order


def positive_float(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"nav skaitlis: {text!r}")
    if not (value > 0 and math.isfinite(value)):
        raise argparse.ArgumentTypeError(f"vajag pozitīvu skaitli, saņemts {text!r}")
    return value


def build_window(args) -> HermiteWindow:
    dilation = 1.0
    if args.dilation is not None:
        dilation = args.dilation
    elif args.dilation_inv is not None:
        dilation = 1.0 / args.dilation_inv
    return HermiteWindow(args.window, dilation, args.chirp)


def build_variant(args) -> ZakVariant:
    if getattr(args, 'tilde', None) is not None:
        return ZakVariant('tilde', args.tilde)
    if getattr(args, 'dilated', None) is not None:
        return ZakVariant('dilated', args.dilated)
    return ZakVariant()


def _window_parameters(args) -> Dict:
    params = {'window': f"h{args.window}", 'chirp': args.chirp}
    if args.dilation is not None:
        params['dilation'] = dilation_label(args.dilation)
    if args.dilation_inv is not None:
        params['dilation_inv'] = dilation_label(args.dilation_inv)
    return params


def _variant_parameters(variant: ZakVariant) -> Dict:
    if variant.kind == 'plain':
        return {'variant': 'plain'}
    return {'variant': variant.kind, 'a': dilation_label(variant.a)}


def _output_format(args, default: str) -> str:
    if args.format:
        return args.format
    if args.out:
        suffix = Path(args.out).suffix.lower().lstrip('.')
        if suffix in ('csv', 'json'):
            return suffix
    return default


def _emit(args, settings: Dict, manifest: RunManifest, result, header: Optional[Sequence[str]] = None,
          rows: Optional[List[Sequence]] = None, report: Optional[List[str]] = None, default: str = 'json'):
    """Izvada rezultātu uz --out, rezultātu direktoriju (--save) vai stdout"""
    manifest.finish()
    fmt = _output_format(args, default)
    if fmt == 'csv' and rows is None:
        fmt = 'json'
    if args.out:
        if fmt == 'csv':
            save_csv(args.out, header, rows, manifest)
        else:
            save_json(args.out, result, manifest)
    elif args.save:
        directory = results_dir(settings)
        for kind in settings.get('save_format', ['json']):
            if kind == 'csv' and rows is not None:
                save_csv(timestamped(directory, args.command, 'csv'), header, rows, manifest)
            elif kind == 'json':
                save_json(timestamped(directory, args.command, 'json'), result, manifest)
        if report:
            save_report(timestamped(directory, args.command, 'txt'), f"zakframe {args.command}", report)
    elif fmt == 'csv':
        sys.stdout.write(rows_to_csv(header, rows))
    else:
        sys.stdout.write(dumps_json(result, manifest))


def _manifest(args, parameters: Dict, seed: Optional[int] = None) -> RunManifest:
    tolerances = {'tol': getattr(args, 'tol', None)}
    return RunManifest(args.command, parameters, tolerances, seed, deterministic=args.deterministic)


def _witness_rows(witnesses: List[ZeroWitness]) -> List[List]:
    return [[wt.point.x, wt.point.omega, wt.kind, wt.radius, wt.context] for wt in witnesses]


def cmd_zak(args, settings: Dict) -> int:
    """Z w(z) ar astes novērtējumu un reducēto punktu"""
    window = build_window(args)
    variant = build_variant(args)
    z = PlanePoint(*args.point)
    zv = variant.evaluate(window, z, args.tol)
    z0, _ = reduce_fundamental(variant.to_plain(z))
    reduced = variant.from_plain(z0)

    print(f"Logs: {window.label()}, variants: {variant.label()}")
    print(f"Punkts: ({z.x:.12g}, {z.omega:.12g}) -> šūnā ({reduced.x:.12g}, {reduced.omega:.12g})")
    print(f"Vērtība: {zv.value.real:.15g} {zv.value.imag:+.15g}i")
    print(f"Aste: {zv.tail:.3e}, noapaļošana: {zv.rounding:.3e}")

    if args.out or args.save:
        params = {**_window_parameters(args), **_variant_parameters(variant), 'point': list(args.point)}
        result = {'value': zv.value, 'tail': zv.tail, 'rounding': zv.rounding,
                  'reduced': list(reduced.as_tuple())}
        _emit(args, settings, _manifest(args, params), result)
    return EXIT_OK


def _load_config(args, seed: int) -> PeriodicConfig:
    if args.random is not None:
        return random_config(args.random, seed)
    if args.config:
        return load_config_file(args.config)
    return PeriodicConfig(integer_lattice(), (PlanePoint(0.0, 0.0),))


def cmd_frame_check(args, settings: Dict) -> int:
    """Rāmja spriedums konfigurācijai; izejas kods atbilst spriedumam"""
    window = build_window(args)
    seed = args.seed if args.seed is not None else settings['seed']
    config = _load_config(args, seed)
    workers = args.threads or worker_count(settings)
    diagnostic = frame_bounds(window, config, args.grid, args.tol,
                              seed=seed if args.random is not None else None,
                              workers=workers, refine_count=settings.get('refine_count', 10))

    result = diagnostic.to_dict()
    result['config'] = config_to_json(config)
    result['density'] = density(config)
    result['is_lattice'] = is_lattice(config)

    report = [
        f"Logs: {window.label()}",
        f"Nobīdes: {config.size}, blīvums: {result['density']:.6g}, režģis: {result['is_lattice']}",
        f"Reizinātājs: min {diagnostic.multiplier_min:.6e} punktā "
        f"({diagnostic.argmin.x:.9f}, {diagnostic.argmin.omega:.9f}), max {diagnostic.multiplier_max:.6e}",
        f"Spriedums: {diagnostic.verdict}",
    ]
    report.extend(f"  nulle ({wt.point.x:.12g}, {wt.point.omega:.12g}) {wt.kind}" for wt in diagnostic.witnesses)
    for line in report:
        print(line, file=sys.stderr)

    params = {**_window_parameters(args), 'grid': args.grid,
              'config': args.config, 'random': args.random}
    _emit(args, settings, _manifest(args, params, result.get('seed')), result,
          WITNESS_HEADER, _witness_rows(diagnostic.witnesses), report)
    return VERDICT_EXIT[diagnostic.verdict]


def figure_rows(figure: int, samples: int = FIGURE_SAMPLES) -> Tuple[List[str], List[List]]:
    """Attēla datu tabula (galvene, rindas)"""
    if figure == 1:
        rows = [[parity, p.x, p.omega] for parity in ('even', 'odd') for p in trivial_zeros(parity)]
        return ['parity', 'x', 'omega'], rows
    if figure in (2, 3, 4):
        a = {2: SQRT2, 3: SQRT3, 4: 2.0}[figure]
        return ['x', 'omega'], [[p.x, p.omega] for p in tabulated_zeros(a)]
    if figure in (5, 7):
        if figure == 5:
            s = real_slice(HermiteWindow(2), ZakVariant('tilde', SQRT2), 0.0)
            xs = np.linspace(0.0, 1.0, samples)
        else:
            s = real_slice(HermiteWindow(3), ZakVariant('dilated', SQRT3), 1 / (2 * SQRT3))
            xs = np.linspace(0.0, SQRT3, samples)
        values, errors = s.sample(xs)
        return ['x', 'value', 'error'], [[float(x), float(v), float(e)] for x, v, e in zip(xs, values, errors)]
    if figure == 6:
        config = PeriodicConfig(integer_lattice(), (PlanePoint(0.0, 0.0), PlanePoint(0.5, 0.0), PlanePoint(0.0, 0.5)))
        return ['class', 'x', 'omega'], [[m, p.x, p.omega] for m, p in points_in_box(config, -2.0, 2.0)]
    raise ZakFrameError(f"Nezināms attēls {figure}")


def cmd_figure(args, settings: Dict) -> int:
    header, rows = figure_rows(args.id, args.samples)
    logging.info(f"Attēls {args.id}: {len(rows)} rindas")
    result = {'figure': args.id, 'columns': header, 'rows': rows}
    _emit(args, settings, _manifest(args, {'figure': args.id, 'samples': args.samples}), result,
          header, rows, default='csv')
    return EXIT_OK


def cmd_zeros(args, settings: Dict) -> int:
    """Nulles: skenēšana, zīmes maiņas sertifikāti vai septiņu nulļu kopa"""
    window = build_window(args)
    variant = build_variant(args)
    witnesses: List[ZeroWitness] = []
    if args.density_seven:
        witnesses = density_seven_witnesses(args.width_tol)
    else:
        if args.certify:
            s = real_slice(window, variant, args.omega)
            cell_x, _ = variant.cell
            witnesses.extend(certify_slice(s, 0.0, cell_x, args.samples, args.width_tol))
        if args.scan:
            workers = args.threads or worker_count(settings)
            witnesses.extend(scan_zero_candidates(window, variant, args.scan, args.tol, workers))
        if not (args.certify or args.scan):
            raise ZakFrameError("Norādiet --certify, --scan N vai --density-seven")

    report = [f"({wt.point.x:.12f}, {wt.point.omega:.12f}) {wt.kind} r={wt.radius:.1e} [{wt.context}]"
              for wt in witnesses]
    for line in report:
        print(line, file=sys.stderr)
    params = {**_window_parameters(args), **_variant_parameters(variant), 'omega': args.omega,
              'certify': args.certify, 'scan': args.scan, 'density_seven': args.density_seven}
    result = {'witnesses': [wt.to_dict() for wt in witnesses]}
    _emit(args, settings, _manifest(args, params), result, WITNESS_HEADER, _witness_rows(witnesses),
          report, default='csv')
    return EXIT_OK


def appendix_values() -> Dict:
    p = GeomParams(2, math.exp(-math.pi))
    return {
        'geom0': geom0(p),
        'geom1': geom1(p),
        'geom2': geom2(p),
        'h2_tail_bound': h2_tail_bound(),
    }


def cmd_appendix(args, settings: Dict) -> int:
    values = appendix_values()
    for name, value in values.items():
        print(f"{name}(N=2, q=e^-pi) = {value:.10f}" if name != 'h2_tail_bound'
              else f"2 sum_(n>=2) (1 + 2 pi n^2) e^(-pi n) = {value:.10f} < 0.11")
    print("Visas pārbaudes izpildītas")
    if args.out or args.save:
        _emit(args, settings, _manifest(args, {}), values)
    return EXIT_OK


def cmd_inequalities(args, settings: Dict) -> int:
    checks = h2_inequality_check()
    for check in checks:
        status = 'OK' if check.holds else 'NEIZPILDĀS'
        print(f"{status:10} {check.statement:75} rezerve {check.margin:.6g}")
    if args.out or args.save:
        _emit(args, settings, _manifest(args, {}), [c.to_dict() for c in checks])
    return EXIT_OK if all(c.holds for c in checks) else EXIT_ERROR


def _add_window_options(parser: argparse.ArgumentParser, default: str = 'h0'):
    parser.add_argument('--window', type=parse_window, default=parse_window(default),
                        help='Ermita logs hN (noklusējums %(default)s)')
    group = parser.add_mutually_exclusive_group()
    group.add_argument('--dilation', type=positive_float, help='loga dilatācija a')
    group.add_argument('--dilation-inv', type=positive_float, help='loga dilatācija 1/a')
    parser.add_argument('--chirp', type=float, default=0.0, help='čirpa parametrs s')


def _add_variant_options(parser: argparse.ArgumentParser):
    group = parser.add_mutually_exclusive_group()
    group.add_argument('--tilde', type=positive_float, metavar='A', help='Z~_A = Z D_A^{-1}')
    group.add_argument('--dilated', type=positive_float, metavar='A', help='Z_A')


def build_parser(settings: Dict) -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--tol', type=positive_float, default=settings['tolerance'])
    common.add_argument('--out', help='izvades fails (.json vai .csv)')
    common.add_argument('--format', choices=('csv', 'json'))
    common.add_argument('--save', action='store_true', help='saglabāt rezultātu direktorijā')
    common.add_argument('--deterministic', action='store_true', help='manifests bez laika laukiem')
    common.add_argument('--threads', type=int, default=0)

    parser = argparse.ArgumentParser(prog='zakframe', description='Zaka transformācija un Gabora rāmji')
    parser.add_argument('--version', action='version', version=f'%(prog)s {VERSION}')
    parser.add_argument('--settings', default='config.json', help='iestatījumu fails')
    sub = parser.add_subparsers(dest='command', required=True)

    p = sub.add_parser('zak', parents=[common], help='Zaka transformācijas vērtība')
    _add_window_options(p)
    _add_variant_options(p)
    p.add_argument('--point', type=float, nargs=2, metavar=('X', 'W'), required=True)
    p.set_defaults(handler=cmd_zak)

    p = sub.add_parser('frame-check', parents=[common], help='rāmja pārbaude Z^2 konfigurācijai')
    _add_window_options(p)
    source = p.add_mutually_exclusive_group()
    source.add_argument('--config', help='konfigurācijas JSON fails')
    source.add_argument('--random', type=int, metavar='M', help='M nejaušas nobīdes')
    p.add_argument('--seed', type=int)
    p.add_argument('--grid', type=int, default=settings['grid_n'])
    p.set_defaults(handler=cmd_frame_check)

    p = sub.add_parser('figure', parents=[common], help='attēlu dati')
    p.add_argument('id', type=int, choices=range(1, 8))
    p.add_argument('--samples', type=int, default=FIGURE_SAMPLES)
    p.set_defaults(handler=cmd_figure)

    p = sub.add_parser('zeros', parents=[common], help='nulles: skenēšana un sertifikāti')
    _add_window_options(p)
    _add_variant_options(p)
    p.add_argument('--certify', action='store_true', help='zīmes maiņas sertifikāti uz šķēles')
    p.add_argument('--omega', type=float, default=0.0, help='šķēles līmenis')
    p.add_argument('--samples', type=int, default=64)
    p.add_argument('--width-tol', type=positive_float, default=1e-9)
    p.add_argument('--scan', type=int, nargs='?', const=settings['scan_grid'], default=0, metavar='N',
                   help='skenēšanas režģis (bez vērtības: %(const)s)')
    p.add_argument('--density-seven', action='store_true')
    p.set_defaults(handler=cmd_zeros)

    p = sub.add_parser('appendix', parents=[common], help='pielikuma rindas')
    p.set_defaults(handler=cmd_appendix)

    p = sub.add_parser('inequalities', parents=[common], help='h2 nevienādību ķēde')
    p.set_defaults(handler=cmd_inequalities)
    return parser


def setup_logging(settings: Dict):
    handlers = [logging.StreamHandler()]
    if settings.get('log_file'):
        handlers.append(logging.FileHandler(settings['log_file'], encoding='utf-8'))
    logging.basicConfig(
        level=getattr(logging, str(settings.get('log_level', 'INFO')).upper(), logging.INFO),
        format='%(asctime)s - %(levelname)s - %(message)s',
        handlers=handlers,
    )


def _settings_path(argv: Sequence[str]) -> str:
    for i, arg in enumerate(argv):
        if arg == '--settings' and i + 1 < len(argv):
            return argv[i + 1]
        if arg.startswith('--settings='):
            return arg.split('=', 1)[1]
    return 'config.json'


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        settings = load_settings(_settings_path(argv))
    except ZakFrameError as e:
        logging.error(f"Kļūda: {e}")
        return EXIT_ERROR
    setup_logging(settings)
    parser = build_parser(settings)
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    try:
        return args.handler(args, settings)
    except ZakFrameError as e:
        logging.error(f"Kļūda: {e}")
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
