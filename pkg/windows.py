#!/usr/bin/env python3
"""
Ermita logu funkcijas ar dilatāciju un čirpu

h_n(t) = p_n(t) e^{-pi t^2}, kur p_n iegūts no Rodrigesa formulas
(-1)^n C_n e^{pi t^2} d^n/dt^n e^{-2 pi t^2}. Normalizācija ir tāda, ka
F h_n = (-i)^n h_n un ||h_n||_2 = 1.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Tuple, Union

import numpy as np
from numpy.polynomial import polynomial as P

from errors import OrderRangeError, PreconditionError, TruncationError, UnsupportedOperationError

MAX_ORDER = 60
MAX_TRUNCATION = 4000

# (-i)^n pēc n mod 4, bez transcendentas noapaļošanas
_MINUS_I_POWERS = (1 + 0j, -1j, -1 + 0j, 1j)

Number = Union[float, np.ndarray]


@dataclass(frozen=True)
class HermiteWindow:
    """Logs D_a h_n ar čirpu: (1/sqrt(a)) h_n(t/a) e^{pi i s t^2}"""
    order: int
    dilation: float = 1.0
    chirp: float = 0.0

    def __post_init__(self):
        if self.order < 0:
            raise PreconditionError(f"Kārtai jābūt nenegatīvai, saņemts {self.order}")
        if self.order > MAX_ORDER:
            raise OrderRangeError(f"Kārta {self.order} pārsniedz {MAX_ORDER}")
        if not self.dilation > 0:
            raise PreconditionError(f"Dilatācijai jābūt pozitīvai, saņemts {self.dilation}")

    @property
    def parity(self) -> str:
        return 'even' if self.order % 2 == 0 else 'odd'

    def label(self) -> str:
        text = f"h{self.order}"
        if self.dilation != 1.0:
            text += f"[a={self.dilation:.12g}]"
        if self.chirp:
            text += f"[s={self.chirp:.12g}]"
        return text


@dataclass(frozen=True)
class GaussHermitePoly:
    """Polinoms p_n pie e^{-pi t^2}

    Koeficients pie t^k ir (-1)^n c_k 2^{1/4} pi^{k/2} / (2^n sqrt(n!)),
    kur c_k ir veseli skaitļi no rekurences q -> q' - 4 pi t q
    (faktors pi^{(n+k)/2} tiek glabāts atsevišķi).
    """
    order: int
    integer_coeffs: Tuple[int, ...]
    coeffs: Tuple[float, ...]

    def __call__(self, t: Number) -> Number:
        return P.polyval(t, self.coeffs)


def normalizing_constant(n: int) -> float:
    """C_n = 2^{1/4} / sqrt(n! (2 pi)^n 2^n)"""
    return 2 ** 0.25 / math.sqrt(math.factorial(n) * (4 * math.pi) ** n)


@lru_cache(maxsize=None)
def build_poly(n: int) -> GaussHermitePoly:
    """Izveido p_n ar precīzu veselo skaitļu rekurenci"""
    if n < 0:
        raise PreconditionError(f"Kārtai jābūt nenegatīvai, saņemts {n}")
    if n > MAX_ORDER:
        raise OrderRangeError(f"Kārta {n} pārsniedz {MAX_ORDER}: koeficienti iziet ārpus double diapazona")

    # d^m/dt^m e^{-2 pi t^2} = Q_m(t) e^{-2 pi t^2}, Q_m = sum c_k pi^{(m+k)/2} t^k
    c = [1]
    for _ in range(n):
        nxt = [0] * (len(c) + 1)
        for k, ck in enumerate(c):
            if ck == 0:
                continue
            if k > 0:
                nxt[k - 1] += k * ck
            nxt[k + 1] -= 4 * ck
        c = nxt

    sign = -1 if n % 2 else 1
    scale = 2 ** 0.25 / math.sqrt(math.factorial(n))
    coeffs = []
    for k, ck in enumerate(c):
        if ck == 0:
            coeffs.append(0.0)
            continue
        coeffs.append(sign * float(Fraction(ck, 2 ** n)) * scale * math.pi ** (k / 2))
    return GaussHermitePoly(order=n, integer_coeffs=tuple(c), coeffs=tuple(coeffs))


def envelope_poly(n: int) -> np.ndarray:
    """Koeficienti p̂_n: |p_n(t)| <= p̂_n(|t|) visiem t"""
    return np.abs(np.array(build_poly(n).coeffs))


def dilate(w: HermiteWindow, c: float) -> HermiteWindow:
    """D_c D_a h_n = D_{a c} h_n"""
    return HermiteWindow(w.order, w.dilation * c, w.chirp)


def eval_window(w: HermiteWindow, t: Number) -> Number:
    """(1/sqrt(a)) p_n(t/a) e^{-pi (t/a)^2} e^{pi i s t^2}; reāls, ja s = 0"""
    poly = build_poly(w.order)
    u = np.asarray(t, dtype=float) / w.dilation
    value = poly(u) * np.exp(-math.pi * u * u) / math.sqrt(w.dilation)
    if w.chirp:
        t_arr = np.asarray(t, dtype=float)
        value = value * np.exp(1j * math.pi * w.chirp * t_arr * t_arr)
    if np.ndim(value) == 0:
        return complex(value) if w.chirp else float(value)
    return value


def fourier_window(w: HermiteWindow) -> Tuple[complex, HermiteWindow]:
    """F(D_a h_n) = (-i)^n D_{1/a} h_n"""
    if w.chirp:
        raise UnsupportedOperationError("Furjē transformācija čirpotam logam nav atbalstīta")
    return _MINUS_I_POWERS[w.order % 4], HermiteWindow(w.order, 1.0 / w.dilation, 0.0)


def _raw_tail_bound(w: HermiteWindow, K: int) -> float:
    # |k - x| >= T + j, j = 1, 2, ... abām pusēm; T = K - 1
    a = w.dilation
    n = w.order
    T = K - 1
    s = T / a
    head = P.polyval(s, envelope_poly(n)) * math.exp(-math.pi * s * s) / math.sqrt(a)
    # (1 + j/T)^n e^{-2 pi T j / a^2} <= r^j
    log_r = n / T - 2 * math.pi * T / (a * a)
    if log_r >= 0:
        return math.inf
    r = math.exp(log_r)
    return 2.0 * head * r / (1.0 - r)


def tail_bound(w: HermiteWindow, x: float, K: int) -> float:
    """Novērtējums sum_{|k|>K} |w(k - x)| priekš x no [0, 1)

    Monotons pēc K: ņem minimumu pa visiem atļautajiem K' <= K, jo katrs
    no tiem ir derīgs arī garākai nogriešanai.
    """
    if w.chirp:
        raise UnsupportedOperationError("Astes novērtējums čirpotam logam nav atbalstīts")
    if not 0.0 <= x < 1.0:
        raise PreconditionError(f"x jābūt intervālā [0, 1), saņemts {x}")
    if K < w.order + 2:
        raise PreconditionError(f"K={K} par mazu, vajag K >= {w.order + 2}")
    return _monotone_tail(w.order, w.dilation, K)


@lru_cache(maxsize=4096)
def _monotone_tail(n: int, a: float, K: int) -> float:
    w = HermiteWindow(n, a)
    best = math.inf
    for k in range(n + 2, K + 1):
        best = min(best, _raw_tail_bound(w, k))
    return best


@lru_cache(maxsize=4096)
def _truncation_order(n: int, a: float, tol: float) -> int:
    w = HermiteWindow(n, a)
    for K in range(n + 2, MAX_TRUNCATION + 1):
        if _raw_tail_bound(w, K) < tol:
            return K
    raise TruncationError(f"Precizitāte {tol:g} logam {w.label()} nav sasniedzama ar K <= {MAX_TRUNCATION}")


def truncation_order(w: HermiteWindow, tol: float) -> int:
    """Mazākais K >= n + 2, kuram tail_bound < tol"""
    if not tol > 0:
        raise PreconditionError(f"Precizitātei jābūt pozitīvai, saņemts {tol}")
    return _truncation_order(w.order, w.dilation, tol)
