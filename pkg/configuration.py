#!/usr/bin/env python3
"""
Režģi un periodiskas konfigurācijas Gamma(Lambda, {z_m}) = U (Lambda + z_m + xi)

Nobīdes tiek glabātas režģa fundamentālās šūnas koordinātās (bāzes
pirmtēls, reducēts mod 1 pa komponentēm).
"""

import itertools
import json
import logging
import math
from dataclasses import dataclass, field
from typing import Dict, List, Sequence, Tuple

import numpy as np

from errors import DegenerateConfigurationError, PreconditionError
from zak import PlanePoint

# Klašu atšķirības tolerance šūnas koordinātās
COSET_TOL = 1e-9


@dataclass(frozen=True)
class Lattice:
    """Režģis B Z^2; bāzes kolonnas ir ģeneratori"""
    basis: Tuple[Tuple[float, float], Tuple[float, float]]

    def __post_init__(self):
        if abs(self.determinant) <= 0:
            raise PreconditionError("Režģa bāzes determinantam jābūt nenulles")

    @property
    def matrix(self) -> np.ndarray:
        return np.array(self.basis, dtype=float)

    @property
    def determinant(self) -> float:
        (p, q), (r, s) = self.basis
        return p * s - q * r

    @property
    def density(self) -> float:
        return 1.0 / abs(self.determinant)

    def to_cell(self, z: PlanePoint) -> np.ndarray:
        """Punkta koordinātas bāzē (bez redukcijas)"""
        return np.linalg.solve(self.matrix, np.array(z.as_tuple(), dtype=float))

    def from_cell(self, c) -> PlanePoint:
        v = self.matrix @ np.asarray(c, dtype=float)
        return PlanePoint(float(v[0]), float(v[1]))

    def is_integer_lattice(self, tol: float = 1e-12) -> bool:
        """Vai režģis ir Z^2 (jebkura unimodulāra veselu skaitļu bāze)"""
        m = self.matrix
        return bool(np.all(np.abs(m - np.round(m)) <= tol)) and abs(abs(self.determinant) - 1.0) <= tol


def integer_lattice() -> Lattice:
    return Lattice(((1.0, 0.0), (0.0, 1.0)))


def dilation_lattice(a: float) -> Lattice:
    """D_a Z^2 = aZ x (1/a)Z"""
    if not a > 0:
        raise PreconditionError(f"Dilatācijai jābūt pozitīvai, saņemts {a}")
    return Lattice(((a, 0.0), (0.0, 1.0 / a)))


def _wrap(c: np.ndarray) -> np.ndarray:
    """Attālums līdz tuvākajam veselajam (komponentēm)"""
    return c - np.round(c)


@dataclass(frozen=True)
class PeriodicConfig:
    """Periodiska konfigurācija pār režģi ar M klašu pārstāvjiem"""
    lattice: Lattice
    shifts: Tuple[PlanePoint, ...]
    global_shift: PlanePoint = field(default_factory=lambda: PlanePoint(0.0, 0.0))

    def __post_init__(self):
        object.__setattr__(self, 'shifts', tuple(self.shifts))
        if not self.shifts:
            raise DegenerateConfigurationError("Konfigurācijai vajag vismaz vienu nobīdi")
        cells = self.cell_shifts
        for i, j in itertools.combinations(range(len(cells)), 2):
            if np.all(np.abs(_wrap(cells[i] - cells[j])) <= COSET_TOL):
                raise DegenerateConfigurationError(
                    f"Nobīdes {self.shifts[i]} un {self.shifts[j]} pieder vienai režģa klasei")

    @property
    def size(self) -> int:
        return len(self.shifts)

    @property
    def cell_shifts(self) -> np.ndarray:
        """Nobīdes šūnas koordinātās, reducētas uz [0,1)^2"""
        cells = np.array([self.lattice.to_cell(z) for z in self.shifts])
        cells = cells - np.floor(cells)
        cells[cells >= 1.0] = 0.0
        return cells

    def effective_shifts(self) -> List[PlanePoint]:
        """Nobīdes kopā ar globālo nobīdi (plaknes koordinātās)"""
        return [z + self.global_shift for z in self.shifts]


def density(c: PeriodicConfig) -> float:
    """D(Gamma) = M / |det B|"""
    return c.size * c.lattice.density


def separation(c: PeriodicConfig) -> float:
    """Minimālais attālums starp dažādiem konfigurācijas punktiem

    Atšķirības d = B(c_i - c_j + n); ja |d| <= L (īsākais bāzes vektors),
    tad |n|_inf <= ||B^{-1}||_2 L + 1, tāpēc šis pārskaitījums ir pilnīgs.
    """
    B = c.lattice.matrix
    cells = c.cell_shifts
    L = min(np.linalg.norm(B[:, 0]), np.linalg.norm(B[:, 1]))
    bound = int(math.ceil(np.linalg.norm(np.linalg.inv(B), 2) * L)) + 1
    rng = np.arange(-bound, bound + 1)
    grid = np.array(list(itertools.product(rng, rng)), dtype=float)

    best = math.inf
    for i, j in itertools.product(range(c.size), repeat=2):
        diffs = (cells[i] - cells[j])[None, :] + grid
        if i == j:
            diffs = diffs[np.any(grid != 0, axis=1)]
        elif np.all(np.abs(_wrap(cells[i] - cells[j])) <= COSET_TOL):
            raise DegenerateConfigurationError("Konfigurācijā ir sakrītošas klases")
        lengths = np.linalg.norm(diffs @ B.T, axis=1)
        best = min(best, float(lengths.min()))
    return best


def semi_regular(shift_xs: Sequence[float], lattice: Lattice = None) -> PeriodicConfig:
    """Pusregulāra konfigurācija Gamma_N x Z: nobīdes (x, 0)"""
    lattice = lattice or integer_lattice()
    return PeriodicConfig(lattice, tuple(PlanePoint(float(x), 0.0) for x in shift_xs))


def _in_config(c: PeriodicConfig, cell_point: np.ndarray, base: np.ndarray, tol: float) -> bool:
    cells = c.cell_shifts - base
    return bool(np.any(np.all(np.abs(_wrap(cells - cell_point)) <= tol, axis=1)))


def is_lattice(c: PeriodicConfig, tol: float = COSET_TOL) -> bool:
    """Vai konfigurācija ir (nobīdīts) režģis

    Pārbauda slēgtību pret atņemšanu 3x3 šūnu logā pēc tam, kad viens punkts
    pārvietots uz sākumpunktu. Tā ir loga pārbaude, nevis pilna lēmuma procedūra.
    """
    cells = c.cell_shifts
    base = cells[0]
    window = [np.array(n, dtype=float) for n in itertools.product((-1, 0, 1), repeat=2)]
    points = [cells[m] - base + n for m in range(c.size) for n in window]
    for p, q in itertools.product(points, repeat=2):
        if not _in_config(c, p - q, base, tol):
            logging.debug(f"Slēgtība neizpildās: {p - q} nav konfigurācijā")
            return False
    return True


def dilate_config(c: PeriodicConfig, a: float) -> PeriodicConfig:
    """D_a c: bāze un nobīdes tiek reizinātas ar diag(a, 1/a)"""
    D = np.diag([a, 1.0 / a])
    basis = D @ c.lattice.matrix
    lattice = Lattice(tuple(map(tuple, basis.tolist())))
    shifts = tuple(PlanePoint(a * z.x, z.omega / a) for z in c.shifts)
    xi = PlanePoint(a * c.global_shift.x, c.global_shift.omega / a)
    return PeriodicConfig(lattice, shifts, xi)


def points_in_box(c: PeriodicConfig, lo: float, hi: float) -> List[Tuple[int, PlanePoint]]:
    """Visi konfigurācijas punkti kvadrātā [lo, hi]^2 kopā ar klases indeksu"""
    B = c.lattice.matrix
    xi = np.array(c.global_shift.as_tuple())
    corners = np.array(list(itertools.product((lo, hi), repeat=2))) - xi
    cell_corners = np.linalg.solve(B, corners.T).T
    n_lo = int(math.floor(cell_corners.min())) - 1
    n_hi = int(math.ceil(cell_corners.max())) + 1
    result = []
    for m, cell in enumerate(c.cell_shifts):
        for k, l in itertools.product(range(n_lo, n_hi + 1), repeat=2):
            p = B @ (cell + np.array([k, l], dtype=float)) + xi
            if lo <= p[0] <= hi and lo <= p[1] <= hi:
                result.append((m, PlanePoint(float(p[0]), float(p[1]))))
    result.sort(key=lambda item: (item[0], item[1].x, item[1].omega))
    return result


def random_config(M: int, seed: int) -> PeriodicConfig:
    """M neatkarīgas vienmērīgas Z^2 klases (sēkla tiek fiksēta)"""
    rng = np.random.default_rng(seed)
    shifts = tuple(PlanePoint(float(x), float(w)) for x, w in rng.random((M, 2)))
    return PeriodicConfig(integer_lattice(), shifts)


def config_from_json(data: Dict) -> PeriodicConfig:
    """{"basis": [[a,b],[c,d]], "shifts": [[x,w],...], "global_shift": [x,w]}"""
    try:
        basis = tuple(tuple(float(v) for v in row) for row in data.get('basis', [[1, 0], [0, 1]]))
        shifts = tuple(PlanePoint(float(x), float(w)) for x, w in data['shifts'])
        xi = PlanePoint(*(float(v) for v in data.get('global_shift', [0.0, 0.0])))
    except (KeyError, TypeError, ValueError) as e:
        raise PreconditionError(f"Nederīgs konfigurācijas JSON: {e}") from e
    return PeriodicConfig(Lattice(basis), shifts, xi)


def config_to_json(c: PeriodicConfig) -> Dict:
    return {
        'basis': [list(row) for row in c.lattice.basis],
        'shifts': [list(z.as_tuple()) for z in c.shifts],
        'global_shift': list(c.global_shift.as_tuple()),
    }


def load_config_file(path) -> PeriodicConfig:
    """Ielādē konfigurāciju no JSON faila"""
    try:
        with open(path, 'r', encoding='utf-8') as f:
            data = json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        logging.error(f"Neizdevās nolasīt konfigurāciju {path}: {e}")
        raise PreconditionError(f"Konfigurācijas fails {path} nav nolasāms: {e}") from e
    return config_from_json(data)
