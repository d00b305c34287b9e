#!/usr/bin/env python3
"""
Testi Ermita logiem un astes novērtējumam
"""

import math

import numpy as np
from scipy.integrate import trapezoid

from errors import OrderRangeError, PreconditionError, TruncationError, UnsupportedOperationError
from windows import (MAX_ORDER, HermiteWindow, build_poly, dilate, envelope_poly, eval_window,
                     fourier_window, normalizing_constant, tail_bound, truncation_order)


def test_poly_anchor_values():
    """p_0 = 2^{1/4}, p_2 = 2^{-1/4}(-1 + 4 pi t^2), p_1(0) = 0"""
    p0 = build_poly(0)
    assert len(p0.coeffs) == 1
    assert math.isclose(p0.coeffs[0], 2 ** 0.25, rel_tol=1e-15)

    p2 = build_poly(2)
    expected = (-(2 ** -0.25), 0.0, 4 * math.pi * 2 ** -0.25)
    for got, want in zip(p2.coeffs, expected):
        assert math.isclose(got, want, rel_tol=1e-14, abs_tol=0.0)
    assert p2.integer_coeffs == (-4, 0, 16)

    assert build_poly(1)(0.0) == 0.0


def test_poly_parity():
    for n in range(0, 12):
        coeffs = build_poly(n).coeffs
        for k, c in enumerate(coeffs):
            if (k - n) % 2:
                assert c == 0.0, f"p_{n} koeficients pie t^{k} nav nulle"


def test_envelope_poly():
    assert np.allclose(envelope_poly(2), [2 ** -0.25, 0.0, 4 * math.pi * 2 ** -0.25], rtol=1e-14)
    t = np.linspace(-4, 4, 81)
    for n in range(0, 9):
        env = np.polynomial.polynomial.polyval(np.abs(t), envelope_poly(n))
        assert np.all(np.abs(build_poly(n)(t)) <= env * (1 + 1e-14))


def test_order_range():
    build_poly(MAX_ORDER)
    try:
        build_poly(MAX_ORDER + 1)
        assert False, "Vajadzēja OrderRangeError"
    except OrderRangeError:
        pass
    try:
        HermiteWindow(-1)
        assert False, "Vajadzēja PreconditionError"
    except PreconditionError:
        pass
    try:
        HermiteWindow(1, dilation=0.0)
        assert False, "Vajadzēja PreconditionError"
    except PreconditionError:
        pass


def test_eval_window_examples():
    assert math.isclose(eval_window(HermiteWindow(0), 0.0), 1.189207115002721, rel_tol=1e-14)
    assert math.isclose(eval_window(HermiteWindow(2), 0.0), -0.8408964152537145, rel_tol=1e-14)

    w = HermiteWindow(2, math.sqrt(2))
    for k in range(-4, 5):
        want = 2 ** -0.5 * (-1 + 2 * math.pi * k * k) * math.exp(-math.pi * k * k / 2)
        assert math.isclose(eval_window(w, float(k)), want, rel_tol=1e-13, abs_tol=1e-300)


def test_eval_window_types():
    assert isinstance(eval_window(HermiteWindow(1), 0.3), float)
    chirped = eval_window(HermiteWindow(1, chirp=0.5), 0.3)
    assert isinstance(chirped, complex)
    assert math.isclose(abs(chirped), abs(eval_window(HermiteWindow(1), 0.3)), rel_tol=1e-14)
    values = eval_window(HermiteWindow(3), np.linspace(-1, 1, 7))
    assert values.shape == (7,)


def test_parity_property():
    rng = np.random.default_rng(1)
    t = rng.uniform(-3, 3, 50)
    for n in range(0, 7):
        w = HermiteWindow(n, dilation=rng.uniform(0.5, 2.0))
        left = eval_window(w, -t)
        right = (-1) ** n * eval_window(w, t)
        assert np.allclose(left, right, rtol=1e-12, atol=1e-300)


def test_l2_normalization():
    for n in range(0, 9):
        t = np.arange(-8 - n, 8 + n + 1e-9, 1e-3)
        norm = trapezoid(eval_window(HermiteWindow(n), t) ** 2, t)
        assert abs(norm - 1.0) < 1e-6, f"||h_{n}||^2 = {norm}"


def test_normalizing_constant():
    assert math.isclose(normalizing_constant(0), 2 ** 0.25)
    # C_n = 2^{1/4} / sqrt(n! (2 pi)^n 2^n)
    for n in range(1, 6):
        want = 2 ** 0.25 / math.sqrt(math.factorial(n) * (2 * math.pi) ** n * 2 ** n)
        assert math.isclose(normalizing_constant(n), want, rel_tol=1e-14)


def test_fourier_eigenrelation():
    t = np.arange(-10, 10 + 1e-9, 1e-3)
    for n in range(0, 6):
        w = HermiteWindow(n)
        h = eval_window(w, t)
        for y in np.arange(1, 11) / 10:
            transform = trapezoid(h * np.exp(-2j * math.pi * t * y), t)
            assert abs(transform - (-1j) ** n * eval_window(w, y)) < 1e-6


def test_fourier_window():
    phase, w = fourier_window(HermiteWindow(2, 1 / math.sqrt(2)))
    assert phase == -1
    assert w.order == 2 and math.isclose(w.dilation, math.sqrt(2))

    phase, w = fourier_window(HermiteWindow(0))
    assert phase == 1 and w == HermiteWindow(0)

    phase, w = fourier_window(HermiteWindow(1))
    assert phase == -1j and w == HermiteWindow(1)

    try:
        fourier_window(HermiteWindow(1, chirp=0.2))
        assert False, "Vajadzēja UnsupportedOperationError"
    except UnsupportedOperationError:
        pass


def test_dilate_composes():
    w = dilate(dilate(HermiteWindow(3, 2.0), 0.5), 3.0)
    assert w == HermiteWindow(3, 3.0)


def test_tail_bound_examples():
    assert tail_bound(HermiteWindow(0), 0.0, 8) < 1e-20
    assert tail_bound(HermiteWindow(2, math.sqrt(2)), 0.5, 12) < 1e-15
    try:
        tail_bound(HermiteWindow(3), 0.0, 4)
        assert False, "Vajadzēja PreconditionError"
    except PreconditionError:
        pass
    try:
        tail_bound(HermiteWindow(0), 1.0, 8)
        assert False, "Vajadzēja PreconditionError"
    except PreconditionError:
        pass


def test_tail_bound_monotone():
    for n in (0, 1, 3, 6):
        for a in (1.0, math.sqrt(2), 2.0):
            w = HermiteWindow(n, a)
            bounds = [tail_bound(w, 0.3, K) for K in range(n + 2, n + 30)]
            assert all(b1 <= b0 for b0, b1 in zip(bounds, bounds[1:]))


def test_tail_bound_soundness():
    rng = np.random.default_rng(7)
    for _ in range(40):
        n = int(rng.integers(0, 7))
        a = float(rng.choice([1.0, math.sqrt(2), math.sqrt(3), 2.0]))
        x = float(rng.uniform(0, 1))
        w = HermiteWindow(n, a)
        K = n + 2 + int(rng.integers(0, 6))
        ks = np.concatenate([np.arange(-200, -K), np.arange(K + 1, 201)])
        brute = float(np.sum(np.abs(eval_window(w, ks - x))))
        assert brute <= tail_bound(w, x, K) * (1 + 1e-12), f"n={n}, a={a}, x={x}, K={K}"


def test_truncation_order():
    w = HermiteWindow(2)
    K = truncation_order(w, 1e-12)
    assert K >= 4
    assert tail_bound(w, 0.0, K) < 1e-12
    if K > 4:
        assert tail_bound(w, 0.0, K - 1) >= 1e-12
    try:
        truncation_order(HermiteWindow(0, 1e4), 1e-12)
        assert False, "Vajadzēja TruncationError"
    except TruncationError:
        pass


if __name__ == "__main__":
    for name, func in list(globals().items()):
        if name.startswith('test_') and callable(func):
            print(f"=== {name} ===")
            func()
    print("Visi testi izieti")
