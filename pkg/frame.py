#!/usr/bin/env python3
"""
Gabora sistēmu rāmja robežas caur Zaka reizinātāju

Veselu skaitļu pārizlasei pār Z^2 klasēm rāmja operators Zaka transformācijas
telpā ir reizināšana ar sum_m |Z w(z + z_m)|^2; optimālās rāmja robežas ir
šīs funkcijas būtiskais infimums un suprēms.
"""

import logging
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.integrate import simpson

from configuration import PeriodicConfig, dilate_config
from errors import PreconditionError, QuadratureError, UnsupportedOperationError
from windows import HermiteWindow, dilate, eval_window
from zak import DEFAULT_TOL, PlanePoint, zak, zak_dilated_grid, zak_grid
from zeros import CERTIFY_TOL, ZeroWitness, classify_zero, trivial_zeros

SCHEMA_VERSION = 1
MIN_GRID = 64
REFINE_COUNT = 10
REFINE_MIN_STEP = 1e-10
REFINE_MAX_ITER = 20000
FRAME_MARGIN = 10.0

GridZak = Callable[[np.ndarray, np.ndarray], Tuple[np.ndarray, np.ndarray]]


@dataclass
class FrameDiagnostic:
    """Reizinātāja novērtējums un rāmja spriedums"""
    verdict: str
    multiplier_min: float
    multiplier_max: float
    argmin: PlanePoint
    max_error: float
    witnesses: List[ZeroWitness] = field(default_factory=list)
    grid_n: int = 0
    tol: float = DEFAULT_TOL
    seed: Optional[int] = None

    @property
    def lower_bound(self) -> float:
        return self.multiplier_min

    @property
    def upper_bound(self) -> float:
        return self.multiplier_max

    def to_dict(self) -> Dict:
        data = {
            'schema_version': SCHEMA_VERSION,
            'verdict': self.verdict,
            'multiplier_min': self.multiplier_min,
            'multiplier_max': self.multiplier_max,
            'argmin': list(self.argmin.as_tuple()),
            'max_error': self.max_error,
            'witnesses': [wt.to_dict() for wt in self.witnesses],
            'grid_n': self.grid_n,
            'tol': self.tol,
        }
        if self.seed is not None:
            data['seed'] = self.seed
        return data


def multiplier(w: HermiteWindow, shifts: Sequence[PlanePoint], z: PlanePoint,
               tol: float = DEFAULT_TOL) -> Tuple[float, float]:
    """(sum_m |Z w(z + z_m)|^2, kļūda sum_m (2|v_m| e_m + e_m^2))"""
    value = 0.0
    err = 0.0
    for zm in shifts:
        zv = zak(w, z + zm, tol)
        v = abs(zv.value)
        value += v * v
        err += 2 * v * zv.error + zv.error * zv.error
    return value, err


def _field(grid_zak: GridZak, shifts: Sequence[PlanePoint], xs, omegas) -> Tuple[np.ndarray, np.ndarray]:
    xs = np.asarray(xs, dtype=float)
    omegas = np.asarray(omegas, dtype=float)
    xs, omegas = np.broadcast_arrays(xs, omegas)
    values = np.zeros(xs.shape)
    errors = np.zeros(xs.shape)
    for zm in shifts:
        zv, ze = grid_zak(xs + zm.x, omegas + zm.omega)
        v = np.abs(zv)
        values += v * v
        errors += 2 * v * ze + ze * ze
    return values, errors


def multiplier_field(w: HermiteWindow, shifts: Sequence[PlanePoint], xs, omegas,
                     tol: float = DEFAULT_TOL, workers: Optional[int] = None) -> Tuple[np.ndarray, np.ndarray]:
    """Vektorizēts reizinātājs punktu masīvā; atgriež (vērtības, kļūdas)"""
    return _field(lambda x, o: zak_grid(w, x, o, tol, workers), shifts, xs, omegas)


def _candidate_points(w: HermiteWindow, shifts: Sequence[PlanePoint]) -> List[PlanePoint]:
    """{0} u {-z_m} u {zeta - z_m}, kur zeta ir paritātes nulles; reducēti uz [0,1)^2"""
    raw = [PlanePoint(0.0, 0.0)]
    for zm in shifts:
        raw.append(PlanePoint(-zm.x, -zm.omega))
        raw.extend(zeta - zm for zeta in trivial_zeros(w.parity))
    points = []
    seen = set()
    for p in raw:
        q = PlanePoint(p.x % 1.0, p.omega % 1.0)
        if q.as_tuple() not in seen:
            seen.add(q.as_tuple())
            points.append(q)
    return points


def _refine(w: HermiteWindow, shifts: Sequence[PlanePoint], start: PlanePoint, step: float,
            tol: float) -> Tuple[PlanePoint, float, float]:
    """Koordinātu nolaišanās ar soļa dalīšanu uz pusēm līdz REFINE_MIN_STEP"""
    p = np.array(start.as_tuple())
    value, err = multiplier_field(w, shifts, p[0], p[1], tol)
    value, err = float(value), float(err)
    directions = np.array([[1.0, 0.0], [-1.0, 0.0], [0.0, 1.0], [0.0, -1.0]])
    iterations = 0
    while step >= REFINE_MIN_STEP and iterations < REFINE_MAX_ITER:
        iterations += 1
        neighbours = np.mod(p[None, :] + step * directions, 1.0)
        values, errs = multiplier_field(w, shifts, neighbours[:, 0], neighbours[:, 1], tol)
        best = int(np.argmin(values))
        if values[best] < value:
            p = neighbours[best]
            value, err = float(values[best]), float(errs[best])
        else:
            step /= 2
    logging.debug(f"Precizēšana: ({p[0]:.12f}, {p[1]:.12f}) -> {value:.3e} pēc {iterations} soļiem")
    return PlanePoint(float(p[0]), float(p[1])), value, err


def _require_integer_lattice(c: PeriodicConfig):
    if not c.lattice.is_integer_lattice():
        raise UnsupportedOperationError("Rāmja robežas tiek aprēķinātas tikai Z^2 konfigurācijām")


def _shift_witnesses(w: HermiteWindow, shifts: Sequence[PlanePoint], z: PlanePoint,
                     tol: float = CERTIFY_TOL) -> Optional[List[ZeroWitness]]:
    """Liecības punktos z + z_m; None, ja kaut viens nav pierādīta nulle"""
    witnesses = []
    for zm in shifts:
        wt = classify_zero(w, z + zm, tol)
        if wt is None:
            return None
        witnesses.append(wt)
    return witnesses


def frame_bounds(w: HermiteWindow, c: PeriodicConfig, grid_n: int = 512, tol: float = DEFAULT_TOL,
                 seed: Optional[int] = None, workers: Optional[int] = None,
                 refine_count: int = REFINE_COUNT) -> FrameDiagnostic:
    """Reizinātāja minimums/maksimums režģī un rāmja spriedums

    Spriedums not_frame_certified tiek dots tikai tad, ja kādā punktā z
    reizinātājs nepārsniedz savu kļūdu un visas vērtības Z w(z + z_m) ir
    pierādītas nulles.
    """
    _require_integer_lattice(c)
    if grid_n < MIN_GRID:
        raise PreconditionError(f"Režģim vajag vismaz {MIN_GRID} punktus, saņemts {grid_n}")
    shifts = c.effective_shifts()

    g = (np.arange(grid_n) + 0.5) / grid_n
    X, W = np.meshgrid(g, g, indexing='ij')
    values, errors = multiplier_field(w, shifts, X, W, tol, workers)
    logging.info(f"Reizinātājs režģī {grid_n}x{grid_n}: min {values.min():.6g}, max {values.max():.6g}")

    points: List[Tuple[PlanePoint, float, float]] = []
    candidates = _candidate_points(w, shifts)
    cx = np.array([p.x for p in candidates])
    cw = np.array([p.omega for p in candidates])
    c_values, c_errors = multiplier_field(w, shifts, cx, cw, tol)
    points.extend(zip(candidates, map(float, c_values), map(float, c_errors)))

    flat = values.ravel()
    for idx in np.argsort(flat, kind='stable')[:refine_count]:
        i, j = np.unravel_index(idx, values.shape)
        points.append(_refine(w, shifts, PlanePoint(float(g[i]), float(g[j])), 1.0 / grid_n, tol))

    i, j = np.unravel_index(int(np.argmin(flat)), values.shape)
    points.append((PlanePoint(float(g[i]), float(g[j])), float(values[i, j]), float(errors[i, j])))

    argmin, multiplier_min, _ = min(points, key=lambda item: item[1])
    multiplier_max = max(float(flat.max()), max(p[1] for p in points))
    max_error = max(float(errors.max()), max(p[2] for p in points))

    witnesses: List[ZeroWitness] = []
    for point, value, err in sorted(points, key=lambda item: item[1]):
        if value > err:
            continue
        found = _shift_witnesses(w, shifts, point)
        if found is not None:
            witnesses = found
            argmin = point
            break

    if witnesses:
        verdict = 'not_frame_certified'
    elif multiplier_min > FRAME_MARGIN * max_error:
        verdict = 'frame'
    else:
        verdict = 'inconclusive'
    logging.info(f"Spriedums: {verdict} (min {multiplier_min:.6g}, max {multiplier_max:.6g})")
    return FrameDiagnostic(verdict, multiplier_min, multiplier_max, argmin, max_error,
                           witnesses, grid_n, tol, seed)


def certify_not_frame(w: HermiteWindow, c: PeriodicConfig) -> List[ZeroWitness]:
    """Pierādītās nulles Z w(z_m); konfigurācija nav rāmis, ja tās ir visām M nobīdēm"""
    _require_integer_lattice(c)
    witnesses = []
    for zm in c.shifts:
        wt = classify_zero(w, zm, CERTIFY_TOL)
        if wt is not None:
            witnesses.append(wt)
    if len(witnesses) == c.size:
        logging.info(f"Konfigurācija ar {c.size} nobīdēm nav rāmis logam {w.label()}")
    return witnesses


class FrameOperatorOracle:
    """Z(S f)(z), kur S f aprēķināts no skalārajiem reizinājumiem ar M_l T_k g_m

    Koeficienti <f, M_l T_k g_m> tiek integrēti ar Simpsona formulu uz
    vienmērīga režģa; solis tiek dalīts uz pusēm, līdz divi secīgi
    rezultāti sakrīt ar QUAD_TOL precizitāti.
    """

    QUAD_TOL = 1e-10
    START_STEP = 1.0 / 128
    MAX_HALVINGS = 4
    SAMPLE_RADIUS = 12

    def __init__(self, w: HermiteWindow, shifts: Sequence[PlanePoint], f: HermiteWindow, K: int = 20):
        if w.chirp or f.chirp:
            raise UnsupportedOperationError("Orākuls čirpotiem logiem nav atbalstīts")
        if K < 15:
            raise PreconditionError(f"Nogriešanai vajag K >= 15, saņemts {K}")
        self.w = w
        self.shifts = list(shifts)
        self.f = f
        self.K = K
        self.ks = np.arange(-K, K + 1)
        scale = max(1.0, w.dilation, f.dilation)
        self.radius = (10 + max(w.order, f.order)) * scale
        self.coeffs = self._converged_coefficients()

    def _atom(self, zm: PlanePoint, t: np.ndarray) -> np.ndarray:
        """g_m(t - k) visiem k: forma (2K+1, len(t))"""
        u = t[None, :] - self.ks[:, None]
        return np.exp(2j * math.pi * zm.omega * u) * eval_window(self.w, u - zm.x)

    def _coefficients(self, step: float) -> np.ndarray:
        n = int(round(2 * self.radius / step))
        t = np.linspace(-self.radius, self.radius, n + 1)
        ft = eval_window(self.f, t)
        modulation = np.exp(-2j * math.pi * self.ks[:, None] * t[None, :])
        coeffs = np.empty((len(self.shifts), len(self.ks), len(self.ks)), dtype=complex)
        for m, zm in enumerate(self.shifts):
            atoms = np.conj(self._atom(zm, t))
            for i in range(len(self.ks)):
                coeffs[m, i, :] = simpson(ft[None, :] * atoms[i][None, :] * modulation, x=t, axis=-1)
        return coeffs

    def _converged_coefficients(self) -> np.ndarray:
        step = self.START_STEP
        previous = self._coefficients(step)
        for _ in range(self.MAX_HALVINGS):
            step /= 2
            current = self._coefficients(step)
            diff = float(np.max(np.abs(current - previous)))
            logging.debug(f"Kvadratūra: solis {step:.3e}, izmaiņa {diff:.3e}")
            if diff <= self.QUAD_TOL:
                return current
            previous = current
        raise QuadratureError(f"Kvadratūra nekonverģē līdz {self.QUAD_TOL:g} (pēdējā izmaiņa {diff:.3e})")

    def frame_operator(self, t: np.ndarray) -> np.ndarray:
        """S f(t) = sum_m sum_{k,l} c_{m,k,l} M_l T_k g_m(t)"""
        t = np.asarray(t, dtype=float)
        modulation = np.exp(2j * math.pi * self.ks[:, None] * t[None, :])
        result = np.zeros(t.shape, dtype=complex)
        for m, zm in enumerate(self.shifts):
            atoms = self._atom(zm, t)
            result += np.sum(atoms * (self.coeffs[m] @ modulation), axis=0)
        return result

    def zak(self, z: PlanePoint) -> complex:
        """Z(S f)(z) ar tiešu summēšanu |j| <= SAMPLE_RADIUS"""
        js = np.arange(-self.SAMPLE_RADIUS, self.SAMPLE_RADIUS + 1)
        samples = self.frame_operator(js - z.x)
        return complex(np.sum(samples * np.exp(2j * math.pi * np.mod(js * z.omega, 1.0))))


@lru_cache(maxsize=16)
def _cached_oracle(w: HermiteWindow, shifts: Tuple[PlanePoint, ...], f: HermiteWindow, K: int) -> FrameOperatorOracle:
    return FrameOperatorOracle(w, shifts, f, K)


def frame_operator_oracle(w: HermiteWindow, shifts: Sequence[PlanePoint], f: HermiteWindow,
                          z: PlanePoint, K: int = 20) -> complex:
    """Z(S f)(z) no pirmajiem principiem; salīdzināms ar multiplier(w, shifts, z) * Z f(z)"""
    return _cached_oracle(w, tuple(shifts), f, K).zak(z)


def dilation_equivalence_check(w: HermiteWindow, c: PeriodicConfig, a: float, grid_n: int = 128,
                               tol: float = DEFAULT_TOL) -> float:
    """Maksimālā atšķirība starp sakārtotiem reizinātāja laukiem pārim (w, c)
    un dilatētajam pārim (D_a w, D_a c), kas aprēķināts ar Z_a koordinātās D_a z
    """
    _require_integer_lattice(c)
    if not a > 0:
        raise PreconditionError(f"Dilatācijai jābūt pozitīvai, saņemts {a}")
    g = (np.arange(grid_n) + 0.5) / grid_n
    X, W = np.meshgrid(g, g, indexing='ij')
    original, _ = multiplier_field(w, c.effective_shifts(), X, W, tol)

    w_a = dilate(w, a)
    c_a = dilate_config(c, a)
    dilated, _ = _field(lambda x, o: zak_dilated_grid(w_a, x, o, a, tol), c_a.effective_shifts(),
                        a * X, W / a)
    residual = float(np.max(np.abs(np.sort(original.ravel()) - np.sort(dilated.ravel()))))
    logging.debug(f"Dilatācijas ekvivalence a={a:.12g}: atlikums {residual:.3e}")
    return residual
