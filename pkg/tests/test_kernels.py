"""Parity between the selected backend and the pure-numpy reference path."""

import numpy as np
import pytest

from besovlab import _kernels as K


@pytest.fixture
def rng():
    return np.random.default_rng(2024)


def test_interp_eval_parity(rng):
    samples = rng.normal(size=257)
    xs = rng.uniform(-5.0, 20.0, size=4001)
    a = K.interp_eval(samples, 0.0, 0.0625, -1.5, 2.5, xs)
    b = K._interp_eval_np(samples, 0.0, 0.0625, -1.5, 2.5, xs)
    assert np.array_equal(a, b)


def test_shift_difference_parity(rng):
    import math

    samples = rng.normal(size=513)
    offsets = np.array([1, -3, 7, 250, -512])
    for m in (1, 2, 3):
        coefs = np.array([(-1.0) ** (m - j) * math.comb(m, j) for j in range(m + 1)])
        a = K.shift_difference_batch(samples, 0.25, -0.5, offsets, m)
        b = K._shift_difference_np(samples, 0.25, -0.5, offsets, coefs)
        assert np.array_equal(a, b)


def test_preimage_lengths_parity(rng):
    # random monotone segments: linear pieces are exactly representable
    n = 40
    rows = []
    x = -10.0
    for _ in range(n):
        width = rng.uniform(0.1, 1.0)
        slope = rng.choice([-1.0, 1.0]) * rng.uniform(0.2, 3.0)
        c0 = rng.uniform(-5.0, 5.0)
        rows.append([x, c0, slope, 0.0, 0.0, x, x + width, c0, c0 + slope * width])
        x += width
    seg = np.array(rows)
    los = rng.uniform(-6.0, 5.0, size=64)
    his = los + rng.uniform(0.05, 2.0, size=64)
    a = K.preimage_lengths(seg, los, his)
    b = K._preimage_lengths_np(seg, los, his)
    assert np.allclose(a, b, atol=1e-12)


def test_greedy_classes_parity(rng):
    lefts = rng.uniform(0.0, 30.0, size=120)
    rights = lefts + rng.uniform(0.0, 2.0, size=120)
    a = K.greedy_classes(lefts, rights)
    b = K._greedy_classes_py(lefts, rights)
    assert np.array_equal(a, b)


def test_segment_clip_flat_segment():
    row = np.array([0.0, 2.0, 0.0, 0.0, 0.0, 0.0, 3.0, 2.0, 2.0])
    assert K.segment_clip(row, 1.0, 2.5) == (0.0, 3.0)
    assert K.segment_clip(row, 2.5, 3.0) is None
