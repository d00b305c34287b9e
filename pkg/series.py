#!/usr/bin/env python3
"""
Ģeometrisko rindu atvasinājumu slēgtās formas un h2 astes novērtējums

f_N(q) = sum_{n>=N} q^n un tās atvasinājumi q f_N'(q), q^2 f_N''(q)
tiek izmantoti, lai novērtētu 2 sum_{n>=2} (1 + 2 pi n^2) e^{-pi n}.
"""

import logging
import math
from dataclasses import dataclass

from errors import SeriesDomainError

H2_TAIL_LIMIT = 0.11


@dataclass(frozen=True)
class GeomParams:
    """Sākuma indekss N un kvocients q, |q| < 1"""
    N: int
    q: float

    def __post_init__(self):
        if self.N < 1:
            raise SeriesDomainError(f"N jābūt >= 1, saņemts {self.N}")
        if not abs(self.q) < 1:
            raise SeriesDomainError(f"Rinda diverģē: |q| = {abs(self.q)} >= 1")


def geom0(p: GeomParams) -> float:
    """sum_{n>=N} q^n = q^N / (1 - q)"""
    return p.q ** p.N / (1.0 - p.q)


def geom1(p: GeomParams) -> float:
    """sum_{n>=N} n q^n = N q^N / (1 - q) + q^{N+1} / (1 - q)^2"""
    N, q = p.N, p.q
    return N * q ** N / (1.0 - q) + q ** (N + 1) / (1.0 - q) ** 2


def geom2(p: GeomParams) -> float:
    """sum_{n>=N} n^2 q^n = q^N ((N + (1 - N) q)^2 + q) / (1 - q)^3"""
    N, q = p.N, p.q
    return q ** N * ((N + (1 - N) * q) ** 2 + q) / (1.0 - q) ** 3


def geom2_expanded(p: GeomParams) -> float:
    """Tā pati summa trīs saskaitāmo formā (no q^2 f'' + q f')"""
    N, q = p.N, p.q
    return (N * N * q ** N / (1.0 - q)
            + (2 * N + 1) * q ** (N + 1) / (1.0 - q) ** 2
            + 2 * q ** (N + 2) / (1.0 - q) ** 3)


def brute_force(p: GeomParams, power: int, terms: int = 1000) -> float:
    """Daļējā summa sum_{n=N}^{N+terms-1} n^power q^n pārbaudēm"""
    return math.fsum(n ** power * p.q ** n for n in range(p.N, p.N + terms))


def h2_tail(q: float) -> float:
    """2 sum_{n>=2} (1 + 2 pi n^2) q^n"""
    p = GeomParams(2, q)
    return 2.0 * (geom0(p) + 2.0 * math.pi * geom2(p))


def h2_tail_bound() -> float:
    """2 sum_{n>=2} (1 + 2 pi n^2) e^{-pi n}; jābūt < 0.11"""
    value = h2_tail(math.exp(-math.pi))
    logging.debug(f"h2 astes novērtējums: {value:.10f}")
    assert value < H2_TAIL_LIMIT, f"h2 astes novērtējums {value} nav mazāks par {H2_TAIL_LIMIT}"
    return value
