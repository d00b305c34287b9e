#!/usr/bin/env python3
"""
Zaka transformācija ar garantētu nogriešanas kļūdu

Z f(x, w) = sum_k f(k - x) e^{2 pi i k w}. Summa tiek nogriezta pie |k| <= K,
kur K izvēlēts tā, lai windows.tail_bound < tol; katrai vērtībai līdzi nāk
astes novērtējums un peldošā punkta rezerve.
"""

import cmath
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from errors import PreconditionError, UnsupportedOperationError
from windows import HermiteWindow, dilate, eval_window, fourier_window, tail_bound, truncation_order

DEFAULT_TOL = 1e-12

# Peldošā punkta rezerve: 1e3 ulp no sum |termiņi|
ROUNDING_ULPS = 1e3

CHUNK_SIZE = 16384

_QUARTER_TURNS = (1 + 0j, 1j, -1 + 0j, -1j)


@dataclass(frozen=True)
class PlanePoint:
    """Punkts z = (x, w) laika-frekvences plaknē"""
    x: float
    omega: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.omega)):
            raise PreconditionError(f"Punkta koordinātām jābūt galīgām: ({self.x}, {self.omega})")

    def __add__(self, other: 'PlanePoint') -> 'PlanePoint':
        return PlanePoint(self.x + other.x, self.omega + other.omega)

    def __sub__(self, other: 'PlanePoint') -> 'PlanePoint':
        return PlanePoint(self.x - other.x, self.omega - other.omega)

    def as_tuple(self) -> Tuple[float, float]:
        return (self.x, self.omega)


@dataclass(frozen=True)
class ZakValue:
    """Zaka transformācijas vērtība un tās kļūdas novērtējums"""
    value: complex
    tail: float
    rounding: float = 0.0

    @property
    def error(self) -> float:
        return self.tail + self.rounding

    def contains_zero(self) -> bool:
        return abs(self.value) <= self.error


def unit_phase(turns: float) -> complex:
    """e^{2 pi i turns}; precīzi +-1, +-i, ja 4*turns ir vesels skaitlis"""
    r = turns - math.floor(turns)
    q = 4.0 * r
    if q == math.floor(q):
        return _QUARTER_TURNS[int(q) % 4]
    return cmath.exp(2j * math.pi * r)


def _phase_vector(ks: np.ndarray, omega: float) -> np.ndarray:
    q = 4.0 * (omega - math.floor(omega))
    if q == math.floor(q):
        return np.array(_QUARTER_TURNS)[(ks * int(q)) % 4]
    return np.exp(2j * math.pi * np.mod(ks * omega, 1.0))


def _require_unchirped(w: HermiteWindow):
    if w.chirp:
        raise UnsupportedOperationError("Zaka transformācija čirpotam logam nav atbalstīta")


def reduce_fundamental(z: PlanePoint) -> Tuple[PlanePoint, complex]:
    """Reducē z uz [0,1)^2: Z f(z) = phase * Z f(z0)"""
    fx = math.floor(z.x)
    fw = math.floor(z.omega)
    z0 = PlanePoint(z.x - fx, z.omega - fw)
    # peldošā atņemšana var dot tieši 1.0
    if z0.x >= 1.0:
        z0 = PlanePoint(0.0, z0.omega)
        fx += 1
    if z0.omega >= 1.0:
        z0 = PlanePoint(z0.x, 0.0)
    return z0, unit_phase(fx * z.omega)


def zak(w: HermiteWindow, z: PlanePoint, tol: float = DEFAULT_TOL) -> ZakValue:
    """Z w(z) ar astes novērtējumu < tol"""
    _require_unchirped(w)
    K = truncation_order(w, tol)
    z0, phase = reduce_fundamental(z)
    ks = np.arange(-K, K + 1)
    terms = eval_window(w, ks - z0.x) * _phase_vector(ks, z0.omega)
    magnitude = float(np.sum(np.abs(terms)))
    value = phase * complex(np.sum(terms))
    return ZakValue(
        value=value,
        tail=tail_bound(w, z0.x, K),
        rounding=ROUNDING_ULPS * np.spacing(magnitude),
    )


def zak_indicator(z: PlanePoint) -> complex:
    """Z chi_[0,1)(z): izdzīvo tikai k ar 0 <= k - x < 1"""
    k = math.ceil(z.x)
    return unit_phase(k * z.omega)


def zak_tilde(w: HermiteWindow, z: PlanePoint, a: float, tol: float = DEFAULT_TOL) -> ZakValue:
    """Z~_a f = Z(D_a^{-1} f)"""
    if not a > 0:
        raise PreconditionError(f"Dilatācijai jābūt pozitīvai, saņemts {a}")
    return zak(dilate(w, 1.0 / a), z, tol)


def zak_dilated(w: HermiteWindow, z: PlanePoint, a: float, tol: float = DEFAULT_TOL) -> ZakValue:
    """Z_a f(z) = Z(D_a^{-1} f)(x/a, a w); kvaziperiodisks pret aZ x (1/a)Z"""
    return zak_tilde(w, PlanePoint(z.x / a, a * z.omega), a, tol)


def tf_shift_covariance_check(w: HermiteWindow, xi: float, eta: float, z: PlanePoint,
                              tol: float = DEFAULT_TOL) -> float:
    """|Z(M_eta T_xi w)(z) - e^{-2 pi i eta x} Z w(x + xi, w + eta)|

    Kreisā puse tiek summēta tieši no M_eta T_xi w paraugiem punktos k - x.
    """
    _require_unchirped(w)
    K = truncation_order(w, tol)
    # centrē summu ap k ~ x + xi, lai aste būtu tāda pati kā Z w
    center = math.floor(z.x + xi)
    ks = np.arange(center - K, center + K + 1)
    t = ks - z.x
    shifted = np.exp(2j * math.pi * eta * t) * eval_window(w, t - xi)
    lhs = complex(np.sum(shifted * np.exp(2j * math.pi * np.mod(ks * z.omega, 1.0))))
    rhs = cmath.exp(-2j * math.pi * eta * z.x) * zak(w, PlanePoint(z.x + xi, z.omega + eta), tol).value
    return abs(lhs - rhs)


def fourier_zak_check(w: HermiteWindow, z: PlanePoint, tol: float = DEFAULT_TOL) -> float:
    """|Z w^(x, w) - e^{2 pi i x w} Z w(-w, x)|

    Abām paritātēm; nepāra logiem pagrieziens (w, -x) dotu pretēju zīmi.
    """
    _require_unchirped(w)
    phase, w_hat = fourier_window(w)
    lhs = phase * zak(w_hat, z, tol).value
    rhs = cmath.exp(2j * math.pi * z.x * z.omega) * zak(w, PlanePoint(-z.omega, z.x), tol).value
    return abs(lhs - rhs)


def _zak_chunk(w: HermiteWindow, K: int, xs: np.ndarray, omegas: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    fx = np.floor(xs)
    x0 = xs - fx
    w0 = omegas - np.floor(omegas)
    ks = np.arange(-K, K + 1)
    samples = eval_window(w, ks[None, :] - x0[:, None])
    phases = np.exp(2j * math.pi * np.mod(ks[None, :] * w0[:, None], 1.0))
    terms = samples * phases
    values = np.exp(2j * math.pi * np.mod(fx * omegas, 1.0)) * terms.sum(axis=1)
    rounding = ROUNDING_ULPS * np.spacing(np.abs(terms).sum(axis=1))
    return values, rounding


def zak_grid(w: HermiteWindow, xs, omegas, tol: float = DEFAULT_TOL,
             workers: Optional[int] = None) -> Tuple[np.ndarray, np.ndarray]:
    """Vektorizēta Z w punktu masīvā; atgriež (vērtības, kļūdas)

    Punkti tiek dalīti paketēs un apstrādāti ar ThreadPoolExecutor;
    rezultāti tiek salikti pakešu secībā.
    """
    _require_unchirped(w)
    xs = np.asarray(xs, dtype=float)
    omegas = np.asarray(omegas, dtype=float)
    xs, omegas = np.broadcast_arrays(xs, omegas)
    shape = xs.shape
    flat_x = xs.ravel()
    flat_w = omegas.ravel()
    K = truncation_order(w, tol)
    tail = tail_bound(w, 0.0, K)

    starts = range(0, flat_x.size, CHUNK_SIZE)
    if workers and workers > 1 and flat_x.size > CHUNK_SIZE:
        logging.debug(f"Zaka režģis: {flat_x.size} punkti, {workers} pavedieni")
        with ThreadPoolExecutor(max_workers=workers) as executor:
            futures = [executor.submit(_zak_chunk, w, K, flat_x[i:i + CHUNK_SIZE], flat_w[i:i + CHUNK_SIZE])
                       for i in starts]
            parts = []
            for future in futures:
                try:
                    parts.append(future.result())
                except Exception as e:
                    logging.error(f"Kļūda apstrādājot režģa paketi: {e}")
                    raise
    else:
        parts = [_zak_chunk(w, K, flat_x[i:i + CHUNK_SIZE], flat_w[i:i + CHUNK_SIZE]) for i in starts]

    if parts:
        values = np.concatenate([p[0] for p in parts])
        rounding = np.concatenate([p[1] for p in parts])
    else:
        values = np.zeros(0, dtype=complex)
        rounding = np.zeros(0)
    return values.reshape(shape), (tail + rounding).reshape(shape)


def zak_tilde_grid(w: HermiteWindow, xs, omegas, a: float, tol: float = DEFAULT_TOL,
                   workers: Optional[int] = None) -> Tuple[np.ndarray, np.ndarray]:
    return zak_grid(dilate(w, 1.0 / a), xs, omegas, tol, workers)


def zak_dilated_grid(w: HermiteWindow, xs, omegas, a: float, tol: float = DEFAULT_TOL,
                     workers: Optional[int] = None) -> Tuple[np.ndarray, np.ndarray]:
    xs = np.asarray(xs, dtype=float)
    omegas = np.asarray(omegas, dtype=float)
    return zak_tilde_grid(w, xs / a, a * omegas, a, tol, workers)


VARIANT_KINDS = ('plain', 'tilde', 'dilated')


@dataclass(frozen=True)
class ZakVariant:
    """Zaka transformācijas variants: Z, Z~_a vai Z_a"""
    kind: str = 'plain'
    a: float = 1.0

    def __post_init__(self):
        if self.kind not in VARIANT_KINDS:
            raise PreconditionError(f"Nezināms variants {self.kind!r}")
        if not self.a > 0:
            raise PreconditionError(f"Dilatācijai jābūt pozitīvai, saņemts {self.a}")
        if self.kind == 'plain' and self.a != 1.0:
            raise PreconditionError("Parastajam variantam dilatācija nav jānorāda")

    @property
    def cell(self) -> Tuple[float, float]:
        """Kvaziperiodiskuma šūnas izmēri (x, w)"""
        if self.kind == 'dilated':
            return self.a, 1.0 / self.a
        return 1.0, 1.0

    def window(self, w: HermiteWindow) -> HermiteWindow:
        """Logs, kura parastā Z dod šo variantu (pēc koordinātu maiņas)"""
        if self.kind == 'plain':
            return w
        return dilate(w, 1.0 / self.a)

    def to_plain(self, z: PlanePoint) -> PlanePoint:
        """Koordinātas, kurās variants sakrīt ar Z no self.window(w)"""
        if self.kind == 'dilated':
            return PlanePoint(z.x / self.a, self.a * z.omega)
        return z

    def from_plain(self, z: PlanePoint) -> PlanePoint:
        if self.kind == 'dilated':
            return PlanePoint(self.a * z.x, z.omega / self.a)
        return z

    def evaluate(self, w: HermiteWindow, z: PlanePoint, tol: float = DEFAULT_TOL) -> ZakValue:
        if self.kind == 'plain':
            return zak(w, z, tol)
        if self.kind == 'tilde':
            return zak_tilde(w, z, self.a, tol)
        return zak_dilated(w, z, self.a, tol)

    def label(self) -> str:
        if self.kind == 'plain':
            return 'Z'
        prefix = 'Z~' if self.kind == 'tilde' else 'Z'
        return f"{prefix}_{{{self.a:.12g}}}"
