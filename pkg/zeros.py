#!/usr/bin/env python3
"""
Zaka transformācijas nulles: paritātes nulles, tabulētās nulles un jaunas
nulles, kas pierādītas ar zīmes maiņu uz reālām šķēlēm.
"""

import csv
import io
import logging
import math
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np
from scipy.optimize import minimize

from errors import (CannotCertifyError, PreconditionError, SliceLevelError,
                    UnsupportedDilationError)
from series import h2_tail
from windows import HermiteWindow
from zak import (DEFAULT_TOL, PlanePoint, ZakValue, ZakVariant, reduce_fundamental,
                 zak, zak_grid, zak_tilde)

CERTIFY_TOL = 1e-14
DILATION_MATCH_TOL = 1e-9
SLICE_LEVEL_TOL = 1e-9
IMAG_TOL = 1e-14
CANDIDATE_THRESHOLD = 1e-10
DEDUP_RADIUS = 1e-4
MAX_SCAN_STARTS = 64

WITNESS_KINDS = ('trivial_even', 'trivial_odd', 'tabulated', 'certified_sign_change',
                 'numeric_candidate', 'value_bound')

SQRT2 = math.sqrt(2.0)
SQRT3 = math.sqrt(3.0)

# Z_a h_{4l+3} nulles šūnā [0, a) x [0, 1/a)
_TABLES: Dict[str, Tuple[float, List[Tuple[float, float]]]] = {
    'sqrt2': (SQRT2, [
        (0.0, 0.0),
        (SQRT2 / 2, 0.0),
        (0.0, 1 / (2 * SQRT2)),
        (SQRT2 / 4, 1 / (2 * SQRT2)),
        (3 * SQRT2 / 4, 1 / (2 * SQRT2)),
    ]),
    'sqrt3': (SQRT3, [
        (0.0, 0.0),
        (0.0, 1 / (2 * SQRT3)),
        (SQRT3 / 2, 0.0),
        (SQRT3 / 3, 0.0),
        (2 * SQRT3 / 3, 0.0),
    ]),
    '2': (2.0, [
        (0.0, 0.0),
        (0.0, 0.25),
        (1.0, 0.0),
        (0.5, 0.0),
        (1.5, 0.0),
    ]),
}


@dataclass(frozen=True)
class ZeroWitness:
    """Zaka transformācijas nulles liecība"""
    point: PlanePoint
    kind: str
    radius: float
    context: str

    def __post_init__(self):
        if self.kind not in WITNESS_KINDS:
            raise PreconditionError(f"Nezināms liecības veids {self.kind!r}")
        if self.radius < 0:
            raise PreconditionError(f"Rādiusam jābūt nenegatīvam, saņemts {self.radius}")
        if self.kind == 'certified_sign_change' and not self.radius > 0:
            raise PreconditionError("Zīmes maiņas liecībai vajag pozitīvu rādiusu")

    def to_dict(self) -> Dict:
        return {
            'x': self.point.x,
            'omega': self.point.omega,
            'kind': self.kind,
            'radius': self.radius,
            'context': self.context,
        }


def trivial_zeros(parity: str) -> List[PlanePoint]:
    """Nulles, ko nosaka loga paritāte"""
    if parity == 'even':
        return [PlanePoint(0.5, 0.5)]
    if parity == 'odd':
        return [PlanePoint(0.0, 0.0), PlanePoint(0.5, 0.0), PlanePoint(0.0, 0.5)]
    raise PreconditionError(f"Paritātei jābūt 'even' vai 'odd', saņemts {parity!r}")


def is_trivial_zero(w: HermiteWindow, z: PlanePoint) -> Optional[str]:
    """Paritātes nulles veids vai None; salīdzina precīzi pēc redukcijas uz [0,1)^2"""
    if w.chirp:
        return None
    z0, _ = reduce_fundamental(z)
    for p in trivial_zeros(w.parity):
        if z0.x == p.x and z0.omega == p.omega:
            return f"trivial_{w.parity}"
    return None


def _match_dilation(a: float) -> Tuple[str, bool]:
    for key, (base, _) in _TABLES.items():
        if abs(a - base) <= DILATION_MATCH_TOL:
            return key, False
        if abs(a - 1.0 / base) <= DILATION_MATCH_TOL:
            return key, True
    raise UnsupportedDilationError(f"Nulļu tabula dilatācijai {a} nav zināma (atbalstītas sqrt2, sqrt3, 2 un apgrieztās)")


def tabulated_zeros(a: float) -> List[PlanePoint]:
    """Zināmās Z_a h_{4l+3} nulles šūnā [0, a) x [0, 1/a)

    Apgrieztajām dilatācijām 1/a nulles iegūst ar pagriezienu
    (x, w) -> (-w, x) no a tabulas.
    """
    key, reciprocal = _match_dilation(a)
    base, table = _TABLES[key]
    if not reciprocal:
        return [PlanePoint(x, w) for x, w in table]
    cell_x, cell_w = 1.0 / base, base
    points = []
    for x, w in table:
        rx = (-w) % cell_x
        if rx >= cell_x:
            rx = 0.0
        points.append(PlanePoint(rx, x % cell_w))
    return points


def _in_table(z: PlanePoint, a: float) -> bool:
    """Vai z (Z_a koordinātās) sakrīt ar tabulas punktu modulo aZ x (1/a)Z"""
    for p in tabulated_zeros(a):
        dx = (z.x - p.x) / a
        dw = (z.omega - p.omega) * a
        if abs(dx - round(dx)) <= DILATION_MATCH_TOL and abs(dw - round(dw)) <= DILATION_MATCH_TOL:
            return True
    return False


def matches_tabulated(w: HermiteWindow, z: PlanePoint) -> bool:
    """Vai Z w(z) ir tabulēta nulle: w = D_d h_{4l+3}, Z w(z) = Z_{1/d} h(D_{1/d} z)"""
    if w.chirp or w.order % 4 != 3:
        return False
    a = 1.0 / w.dilation
    try:
        return _in_table(PlanePoint(z.x * a, z.omega / a), a)
    except UnsupportedDilationError:
        return False


def classify_zero(w: HermiteWindow, z: PlanePoint, tol: float = CERTIFY_TOL) -> Optional[ZeroWitness]:
    """Liecība, ka Z w(z) = 0, vai None, ja nulle nav pierādāma"""
    context = f"Z {w.label()}"
    kind = is_trivial_zero(w, z)
    if kind:
        return ZeroWitness(z, kind, 0.0, context)
    zv = zak(w, z, tol)
    if not zv.contains_zero():
        return None
    if matches_tabulated(w, z):
        return ZeroWitness(z, 'tabulated', 0.0, context)
    return ZeroWitness(z, 'value_bound', 0.0, context)


@dataclass(frozen=True)
class RealSlice:
    """x -> Z w(x, w0) uz līmeņa, kurā visi fāzes reizinātāji ir reāli"""
    window: HermiteWindow
    variant: ZakVariant
    omega_level: float
    tol: float = CERTIFY_TOL

    @property
    def context(self) -> str:
        return f"{self.variant.label()} {self.window.label()}, w={self.omega_level:.12g}"

    def _plain_omega(self) -> float:
        # dilatētajam variantam līmenis 1/(2a) atbilst tieši 1/2
        return 0.0 if self.omega_level == 0.0 else 0.5

    def zak_value(self, x: float) -> ZakValue:
        w_t = self.variant.window(self.window)
        x_t = x / self.variant.a if self.variant.kind == 'dilated' else x
        return zak(w_t, PlanePoint(x_t, self._plain_omega()), self.tol)

    def enclosure(self, x: float) -> Tuple[float, float]:
        """(vērtība, kļūda) punktā x"""
        zv = self.zak_value(x)
        if abs(zv.value.imag) >= IMAG_TOL:
            raise SliceLevelError(f"Šķēles vērtība nav reāla: Im = {zv.value.imag:.3e} punktā x={x}")
        return zv.value.real, zv.error

    def sign(self, x: float) -> int:
        """+1/-1, ja ieslēgums neietver nulli, citādi 0"""
        value, error = self.enclosure(x)
        if value > error:
            return 1
        if value < -error:
            return -1
        return 0

    def __call__(self, x: float) -> float:
        return self.enclosure(x)[0]

    def sample(self, xs) -> Tuple[np.ndarray, np.ndarray]:
        """Vektorizēti paraugi (vērtības, kļūdas) ar zak_grid"""
        xs = np.asarray(xs, dtype=float)
        w_t = self.variant.window(self.window)
        x_t = xs / self.variant.a if self.variant.kind == 'dilated' else xs
        values, errors = zak_grid(w_t, x_t, np.full_like(x_t, self._plain_omega()), self.tol)
        return values.real, errors


def real_slice(w: HermiteWindow, variant: ZakVariant, omega_level: float,
               tol: float = CERTIFY_TOL) -> RealSlice:
    """Reāla šķēle; pieļaujamie līmeņi: 0 vai 1/2 (Z, Z~_a), 0 vai 1/(2a) (Z_a)"""
    if w.chirp:
        raise SliceLevelError("Čirpotam logam reālas šķēles nav")
    half = 1.0 / (2.0 * variant.a) if variant.kind == 'dilated' else 0.5
    if abs(omega_level) <= SLICE_LEVEL_TOL:
        level = 0.0
    elif abs(omega_level - half) <= SLICE_LEVEL_TOL:
        level = half
    else:
        raise SliceLevelError(f"Līmenis w={omega_level} nedod reālu šķēli variantam {variant.label()}")
    return RealSlice(w, variant, level, tol)


def _split(s: RealSlice, lo: float, hi: float) -> Tuple[float, int]:
    # viduspunkts vai tuvākais punkts ar nepārprotamu zīmi
    width = hi - lo
    mid = lo + width / 2
    for k in range(8):
        for offset in ((0.0,) if k == 0 else (k / 16, -k / 16)):
            x = mid + offset * width
            sign = s.sign(x)
            if sign:
                return x, sign
    raise CannotCertifyError(f"Intervālā [{lo}, {hi}] neizdevās atrast punktu ar noteiktu zīmi")


def certify_sign_change(s: RealSlice, lo: float, hi: float, width_tol: float = 1e-9) -> ZeroWitness:
    """Bisekcija ar ieslēgumiem v +- kļūda; galapunktu zīmes vienmēr pretējas"""
    if not lo < hi:
        raise PreconditionError(f"Vajag lo < hi, saņemts [{lo}, {hi}]")
    if not width_tol > 0:
        raise PreconditionError(f"Platuma tolerancei jābūt pozitīvai, saņemts {width_tol}")
    sign_lo = s.sign(lo)
    sign_hi = s.sign(hi)
    if sign_lo == 0 or sign_hi == 0:
        raise CannotCertifyError(f"Galapunkta ieslēgums satur nulli: [{lo}, {hi}] ({s.context})")
    if sign_lo == sign_hi:
        raise CannotCertifyError(f"Galapunktos vienāda zīme: [{lo}, {hi}] ({s.context})")

    step = 0
    while hi - lo >= width_tol:
        x, sign = _split(s, lo, hi)
        if x <= lo or x >= hi:
            break
        if sign == sign_lo:
            lo = x
        else:
            hi = x
        step += 1
        logging.debug(f"Bisekcija {step}: [{lo:.15f}, {hi:.15f}]")

    center = lo + (hi - lo) / 2
    witness = ZeroWitness(PlanePoint(center, s.omega_level), 'certified_sign_change', (hi - lo) / 2, s.context)
    logging.info(f"Pierādīta nulle x={center:.12f} +- {witness.radius:.1e} ({s.context})")
    return witness


def certify_slice(s: RealSlice, lo: float, hi: float, samples: int = 64,
                  width_tol: float = 1e-9) -> List[ZeroWitness]:
    """Visas zīmes maiņas uz [lo, hi], kas redzamas paraugu režģī"""
    xs = np.linspace(lo, hi, samples + 1)
    values, errors = s.sample(xs)
    definite = [(float(x), 1 if v > 0 else -1) for x, v, e in zip(xs, values, errors) if abs(v) > e]
    witnesses = []
    for (x0, s0), (x1, s1) in zip(definite, definite[1:]):
        if s0 != s1:
            witnesses.append(certify_sign_change(s, x0, x1, width_tol))
    return witnesses


def new_zero_certificates(width_tol: float = 1e-9) -> Dict[str, List[ZeroWitness]]:
    """Jaunās nulles: Z~_{sqrt2} h2 uz w=0 un Z_{sqrt3} h3 uz w=1/(2 sqrt3)"""
    h2_slice = real_slice(HermiteWindow(2), ZakVariant('tilde', SQRT2), 0.0)
    h3_slice = real_slice(HermiteWindow(3), ZakVariant('dilated', SQRT3), 1 / (2 * SQRT3))
    return {
        'h2_tilde_sqrt2': [
            certify_sign_change(h2_slice, 0.0, 0.5, width_tol),
            certify_sign_change(h2_slice, 0.5, 1.0, width_tol),
        ],
        'h3_dilated_sqrt3': [
            certify_sign_change(h3_slice, 0.2 * SQRT3, 0.35 * SQRT3, width_tol),
            certify_sign_change(h3_slice, 0.65 * SQRT3, 0.8 * SQRT3, width_tol),
        ],
    }


def density_seven_witnesses(width_tol: float = 1e-9) -> List[ZeroWitness]:
    """Septiņas dažādas Z_{sqrt3} h3 nulles šūnā [0, sqrt3) x [0, 1/sqrt3)"""
    variant = ZakVariant('dilated', SQRT3)
    h3 = HermiteWindow(3)
    context = f"{variant.label()} {h3.label()}"
    witnesses = []
    for z in tabulated_zeros(SQRT3):
        kind = is_trivial_zero(variant.window(h3), variant.to_plain(z))
        if kind is None:
            if not variant.evaluate(h3, z, CERTIFY_TOL).contains_zero():
                raise CannotCertifyError(f"Tabulētā nulle {z} neiztur pārbaudi")
            kind = 'tabulated'
        witnesses.append(ZeroWitness(z, kind, 0.0, context))
    witnesses.extend(new_zero_certificates(width_tol)['h3_dilated_sqrt3'])
    return witnesses


@dataclass(frozen=True)
class InequalityCheck:
    name: str
    statement: str
    lhs: float
    rhs: float
    margin: float

    @property
    def holds(self) -> bool:
        return self.margin > 0

    def to_dict(self) -> Dict:
        return {'name': self.name, 'statement': self.statement, 'lhs': self.lhs,
                'rhs': self.rhs, 'margin': self.margin, 'holds': self.holds}


def h2_inequality_check() -> List[InequalityCheck]:
    """Nevienādību ķēde, kas pierāda Z~_{sqrt2} h2(., 0) zīmes maiņu

    Pirmās četras ir galvenās; pēdējās divas ir starpposmi.
    """
    e_half = math.exp(-math.pi / 2)
    tail = h2_tail(math.exp(-math.pi))
    head_half = 1 + 2 * (-1 + 2 * math.pi) * e_half
    head_zero = 1 + 2 * (1 - 2 * math.pi) * e_half
    at_zero = zak_tilde(HermiteWindow(2), PlanePoint(0.0, 0.0), SQRT2, CERTIFY_TOL)
    scaled = SQRT2 * at_zero.value.real
    scaled_err = SQRT2 * at_zero.error
    checks = [
        InequalityCheck('e_half_pi', 'e^{-pi/2} > 1/5', e_half, 0.2, e_half - 0.2),
        InequalityCheck('h2_tail', '2 sum_{n>=2} (1 + 2 pi n^2) e^{-pi n} < 0.11', tail, 0.11, 0.11 - tail),
        InequalityCheck('x_half_head', '1 + 2(-1 + 2 pi) e^{-pi/2} > 3', head_half, 3.0, head_half - 3.0),
        InequalityCheck('x_zero_value', '2^{1/2} Z~_{sqrt2} h2(0, 0) < 0', scaled, 0.0, -(scaled + scaled_err)),
        InequalityCheck('x_zero_head', '1 + 2(1 - 2 pi) e^{-pi/2} < 0', head_zero, 0.0, -head_zero),
        InequalityCheck('x_half_bound', '1 + 2(-1 + 2 pi) e^{-pi/2} - 2 sum_{n>=2} (1 + 2 pi n^2) e^{-pi n} > 0',
                        head_half - tail, 0.0, head_half - tail),
    ]
    for check in checks:
        logging.debug(f"{check.name}: {check.statement}, rezerve {check.margin:.6g}")
    return checks


def _periodic_distance(p: np.ndarray, q: np.ndarray) -> float:
    d = np.abs(p - q) % 1.0
    d = np.minimum(d, 1.0 - d)
    return float(np.hypot(d[0], d[1]))


def scan_zero_candidates(w: HermiteWindow, variant: ZakVariant, grid_n: int = 256,
                         tol: float = DEFAULT_TOL, workers: Optional[int] = None) -> List[ZeroWitness]:
    """Skaitliski nulles kandidāti: |Z|^2 lokālie minimumi režģī, precizēti ar Nelder-Mead"""
    if grid_n < 8:
        raise PreconditionError(f"Režģim vajag vismaz 8 punktus, saņemts {grid_n}")
    w_t = variant.window(w)
    g = np.arange(grid_n) / grid_n
    X, W = np.meshgrid(g, g, indexing='ij')
    values, _ = zak_grid(w_t, X, W, tol, workers)
    power = np.abs(values) ** 2

    # |Z|^2 ir periodiska abās koordinātās
    is_min = np.ones(power.shape, dtype=bool)
    for dx in (-1, 0, 1):
        for dw in (-1, 0, 1):
            if dx or dw:
                is_min &= power <= np.roll(power, (dx, dw), axis=(0, 1))
    starts = sorted(map(tuple, np.argwhere(is_min)), key=lambda ij: power[ij])[:MAX_SCAN_STARTS]
    logging.debug(f"Skenēšana: {len(starts)} lokālie minimumi režģī {grid_n}x{grid_n}")

    def objective(p):
        return abs(zak(w_t, PlanePoint(float(p[0]), float(p[1])), tol).value) ** 2

    h = 1.0 / grid_n
    found: List[np.ndarray] = []
    for i, j in starts:
        p0 = np.array([g[i], g[j]])
        simplex = np.array([p0, p0 + [h, 0.0], p0 + [0.0, h]])
        res = minimize(objective, p0, method='Nelder-Mead',
                       options={'initial_simplex': simplex, 'xatol': 1e-13, 'fatol': 1e-32, 'maxiter': 2000})
        if res.fun >= CANDIDATE_THRESHOLD:
            continue
        p = np.mod(res.x, 1.0)
        p[p > 1.0 - 1e-9] = 0.0
        if any(_periodic_distance(p, q) < DEDUP_RADIUS for q in found):
            continue
        found.append(p)

    context = f"{variant.label()} {w.label()}"
    witnesses = [ZeroWitness(variant.from_plain(PlanePoint(float(p[0]), float(p[1]))), 'numeric_candidate', 0.0, context)
                 for p in found]
    witnesses.sort(key=lambda wt: (wt.point.omega, wt.point.x))
    logging.info(f"Atrasti {len(witnesses)} nulles kandidāti ({context})")
    return witnesses


def witnesses_to_json(witnesses: List[ZeroWitness]) -> List[Dict]:
    return [wt.to_dict() for wt in witnesses]


def witnesses_to_csv(witnesses: List[ZeroWitness]) -> str:
    """CSV ar galveni x,omega,kind,radius,context un '\\n' rindu beigām"""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(['x', 'omega', 'kind', 'radius', 'context'])
    for wt in witnesses:
        writer.writerow([repr(wt.point.x), repr(wt.point.omega), wt.kind, repr(wt.radius), wt.context])
    return buffer.getvalue()
