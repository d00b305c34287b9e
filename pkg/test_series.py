#!/usr/bin/env python3
"""
Testi ģeometrisko rindu slēgtajām formām
"""

import math

from errors import SeriesDomainError
from series import (H2_TAIL_LIMIT, GeomParams, brute_force, geom0, geom1, geom2, geom2_expanded, h2_tail,
                    h2_tail_bound)

Q_PI = math.exp(-math.pi)


def test_appendix_values():
    p = GeomParams(2, Q_PI)
    assert abs(geom0(p) - 0.00195179) < 5e-9
    # iespiestajā decimāldaļā 0.0082588 trūkst cipara; precīzā vērtība ir 0.00825588...
    assert abs(geom2(p) - 0.00825588) < 5e-8
    assert abs(geom2(p) - brute_force(p, 2, 60)) < 1e-16


def test_trivial_cases():
    assert geom0(GeomParams(1, 0.0)) == 0.0
    assert geom2(GeomParams(3, 0.0)) == 0.0
    assert math.isclose(geom0(GeomParams(1, 0.5)), 1.0, rel_tol=1e-15)
    # sum_{n>=1} n 2^-n = 2, sum_{n>=1} n^2 2^-n = 6
    assert math.isclose(geom1(GeomParams(1, 0.5)), 2.0, rel_tol=1e-15)
    assert math.isclose(geom2(GeomParams(1, 0.5)), 6.0, rel_tol=1e-15)


def test_closed_forms_match_brute_force():
    for N in (1, 2, 3, 5, 10):
        for q in (0.01, Q_PI, 0.1, 0.3, 0.5, 0.7, 0.9):
            p = GeomParams(N, q)
            for power, closed in ((0, geom0), (1, geom1), (2, geom2)):
                brute = brute_force(p, power)
                assert math.isclose(closed(p), brute, rel_tol=1e-13), f"N={N}, q={q}, power={power}"


def test_negative_quotient():
    for N in (1, 2, 4):
        p = GeomParams(N, -0.3)
        for power, closed in ((0, geom0), (1, geom1), (2, geom2)):
            assert math.isclose(closed(p), brute_force(p, power), rel_tol=1e-12, abs_tol=1e-15)


def test_geom2_forms_agree():
    for N in range(1, 12):
        for q in (-0.6, -0.1, 0.001, Q_PI, 0.25, 0.5, 0.8, 0.95):
            p = GeomParams(N, q)
            assert math.isclose(geom2(p), geom2_expanded(p), rel_tol=1e-12, abs_tol=1e-300)


def test_h2_tail_bound():
    value = h2_tail_bound()
    assert value < H2_TAIL_LIMIT
    assert abs(value - 0.10765) < 5e-5
    assert value == h2_tail(Q_PI)


def test_monotone_in_q():
    values = [h2_tail(q) for q in (0.01, 0.02, Q_PI, 0.05, 0.1, 0.2)]
    assert all(b > a for a, b in zip(values, values[1:]))
    for N in (1, 3):
        sums = [geom2(GeomParams(N, q)) for q in (0.1, 0.2, 0.4, 0.8)]
        assert all(b > a for a, b in zip(sums, sums[1:]))


def test_domain_errors():
    for N, q in ((2, 1.0), (2, -1.0), (2, 1.5), (0, 0.5), (-1, 0.1)):
        try:
            GeomParams(N, q)
            assert False, f"Vajadzēja SeriesDomainError: N={N}, q={q}"
        except SeriesDomainError:
            pass


if __name__ == "__main__":
    for name, func in list(globals().items()):
        if name.startswith('test_') and callable(func):
            print(f"=== {name} ===")
            func()
    print("Visi testi izieti")
