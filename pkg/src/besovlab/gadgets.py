"""Witness functions used by the boundedness checks.

All gadgets are piecewise-polynomial mollifications of the idealized bump
constructions: ramps and plateau transitions are quintic smoothsteps, which
keeps them C^2 (enough for every difference order used here) while their
defining plateau values, supports, and ramp masses stay exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable

import numpy as np

from .grid import DEFAULT_COUNT, DEFAULT_WINDOW, Extension, GridFunction, smoothstep


class GadgetKind(Enum):
    UNIT_BUMP = "unit_bump"
    ETA_EPS = "eta_eps"
    LINEAR_CUTOFF = "linear_cutoff"
    ZIGZAG = "zigzag"


@dataclass(frozen=True)
class GadgetSpec:
    kind: GadgetKind
    params: dict
    realized: GridFunction


def _sample(fn: Callable, window, count) -> GridFunction:
    lo, hi = window
    spacing = (hi - lo) / (count - 1)
    xs = lo + spacing * np.arange(count)
    return GridFunction(np.asarray(fn(xs), dtype=np.float64), spacing, lo, Extension.ZERO, fn)


def _plateau_fn(lo: float, hi: float, ramp: float) -> Callable:
    def fn(x):
        x = np.asarray(x, dtype=np.float64)
        return smoothstep((x - (lo - ramp)) / ramp) * smoothstep(((hi + ramp) - x) / ramp)

    return fn


def unit_bump(a: float, window=DEFAULT_WINDOW, count: int = DEFAULT_COUNT) -> GridFunction:
    """Smooth bump equal to 1 on [a, a+1] with support [a-1, a+2]."""
    lo, hi = window
    if not (lo <= a and a + 1.0 <= hi):
        raise ValueError(f"plateau [a, a+1] = [{a}, {a + 1}] leaves the window")
    return _sample(_plateau_fn(a, a + 1.0, 1.0), window, count)


def eta_eps(eps: float, window=DEFAULT_WINDOW, count: int = DEFAULT_COUNT) -> GridFunction:
    """Ramp bump: 1 on [-1, 1], smooth ramps of width eps, support
    [-1-eps, 1+eps]. Each ramp carries unit derivative mass exactly."""
    if not (0.0 < eps <= 1.0):
        raise ValueError("eps must lie in (0, 1]")
    lo, hi = window
    spacing = (hi - lo) / (count - 1)
    if eps < 2.0 * spacing:
        raise ValueError(f"eps = {eps} is below grid resolution (2*dx = {2 * spacing})")
    return _sample(_plateau_fn(-1.0, 1.0, eps), window, count)


def linear_cutoff(
    a: float, R: float, window=DEFAULT_WINDOW, count: int = DEFAULT_COUNT
) -> GridFunction:
    """f(x) = x - a on the core [a-R, a+R], smoothly cut to 0 over width 1."""
    if R <= 0.0:
        raise ValueError("R must be positive")
    lo, hi = window
    if not (lo <= a - R - 1.0 and a + R + 1.0 <= hi):
        raise ValueError("support [a-R-1, a+R+1] leaves the window")
    w = _plateau_fn(a - R, a + R, 1.0)

    def fn(x):
        x = np.asarray(x, dtype=np.float64)
        return (x - a) * w(x)

    return _sample(fn, window, count)


# ---------------------------------------------------------------------------
# zigzag witness for the p = infinity case
# ---------------------------------------------------------------------------

def _smoothstep_antiderivative(u):
    u = np.clip(u, 0.0, 1.0)
    return u**4 * (2.5 + u * (-3.0 + u))


def _zigzag_pieces(m: int):
    """Cell layout on t in [-2m, 14m), period 16m, transition width m/2."""
    w = 0.5 * m
    c1, c2 = 4.0 * m, 12.0 * m
    return w, c1, c2


def zigzag_slope(m: int) -> Callable:
    """g'(x): exactly (-1)^k on [2(4k-1)m, 2(4k+1)m], quintic transitions."""
    if m < 1:
        raise ValueError("m must be a positive integer")
    w, c1, c2 = _zigzag_pieces(m)
    period = 16.0 * m

    def fn(x):
        t = np.mod(np.asarray(x, dtype=np.float64) + 2.0 * m, period) - 2.0 * m
        down = 1.0 - 2.0 * smoothstep((t - (c1 - 0.5 * w)) / w)
        up = -1.0 + 2.0 * smoothstep((t - (c2 - 0.5 * w)) / w)
        out = np.where(t < c1 + 0.5 * w, down, up)
        return out

    return fn


def zigzag_value(m: int) -> Callable:
    """Antiderivative of zigzag_slope, shifted to be centered and bounded."""
    w, c1, c2 = _zigzag_pieces(m)
    period = 16.0 * m

    def fn(x):
        t = np.mod(np.asarray(x, dtype=np.float64) + 2.0 * m, period) - 2.0 * m
        g = np.empty_like(t)
        # rising plateau (slope +1) from t = -2m, g(-2m) = 0
        x0 = c1 - 0.5 * w
        x1 = c2 - 0.5 * w
        g_rise = t + 2.0 * m
        g_down = (
            (6.0 * m - 0.5 * w)
            + (t - x0)
            - 2.0 * w * _smoothstep_antiderivative((t - x0) / w)
        )
        g_fall = (6.0 * m - 0.5 * w) - (t - (c1 + 0.5 * w))
        g_up = (
            (-2.0 * m + 0.5 * w)
            - (t - x1)
            + 2.0 * w * _smoothstep_antiderivative((t - x1) / w)
        )
        g_rise2 = (-2.0 * m + 0.5 * w) + (t - (c2 + 0.5 * w))
        g = np.select(
            [t < x0, t < c1 + 0.5 * w, t < x1, t < c2 + 0.5 * w],
            [g_rise, g_down, g_fall, g_up],
            default=g_rise2,
        )
        return g - 2.0 * m

    return fn


def _require_two_periods(m: int, window):
    lo, hi = window
    if hi - lo < 32.0 * m:
        raise ValueError(f"window must cover two 8m-periods (need length >= {32 * m})")


def _window_taper(m: int, window):
    """Smooth cutoff: 1 on the core, quintic ramps of width 2m down to 0 at
    the window edges (cutting the zigzag without a taper would leave slope
    kinks at the edges that dominate its norm)."""
    lo, hi = window
    w = 2.0 * m

    def taper(x):
        x = np.asarray(x, dtype=np.float64)
        return smoothstep((x - lo) / w) * smoothstep((hi - x) / w)

    def taper_prime(x):
        x = np.asarray(x, dtype=np.float64)
        u1 = np.clip((x - lo) / w, 0.0, 1.0)
        u2 = np.clip((hi - x) / w, 0.0, 1.0)
        s1p = 30.0 * u1**2 * (u1 - 1.0) ** 2 / w
        s2p = 30.0 * u2**2 * (u2 - 1.0) ** 2 / w
        return s1p * smoothstep(u2) - smoothstep(u1) * s2p

    return taper, taper_prime


def zigzag_window_fn(m: int, window=DEFAULT_WINDOW, shift: float = 0.0):
    """(g, g') for the windowed zigzag translated by ``shift``: the periodic
    pattern times the window taper. Plateau values away from the taper are
    exact."""
    _require_two_periods(m, window)
    base = zigzag_value(m)
    base_slope = zigzag_slope(m)
    taper, taper_prime = _window_taper(m, window)

    def g(x):
        x = np.asarray(x, dtype=np.float64)
        return base(x - shift) * taper(x)

    def gprime(x):
        x = np.asarray(x, dtype=np.float64)
        return base_slope(x - shift) * taper(x) + base(x - shift) * taper_prime(x)

    return g, gprime


def zigzag_g(m: int, window=DEFAULT_WINDOW, count: int = DEFAULT_COUNT) -> GridFunction:
    """The bounded zigzag witness g with g' = (-1)^k on its 4m-plateaus
    (exact away from the window taper)."""
    fn, _ = zigzag_window_fn(m, window)
    return _sample(fn, window, count)


def zigzag_derivative(m: int, window=DEFAULT_WINDOW, count: int = DEFAULT_COUNT) -> GridFunction:
    _, fn = zigzag_window_fn(m, window)
    return _sample(fn, window, count)


def zigzag_index_sets(m: int, window=DEFAULT_WINDOW) -> list[list[tuple[float, float]]]:
    """The four translated index sets I_m + 2*l*m (l = 0..3) clipped to the
    window; their union covers it."""
    _require_two_periods(m, window)
    lo, hi = window
    out = []
    for ell in range(4):
        shift = 2.0 * ell * m
        pieces = []
        k = math.floor((lo - shift) / (8.0 * m)) - 1
        while True:
            a = 8.0 * k * m - m + shift
            b = 8.0 * k * m + m + shift
            if a > hi:
                break
            if b >= lo:
                pieces.append((max(a, lo), min(b, hi)))
            k += 1
        out.append(pieces)
    return out


def make_gadget(kind: str, window=DEFAULT_WINDOW, count: int = DEFAULT_COUNT, **params) -> GadgetSpec:
    gk = GadgetKind(kind)
    if gk is GadgetKind.UNIT_BUMP:
        g = unit_bump(float(params.get("a", 0.0)), window, count)
    elif gk is GadgetKind.ETA_EPS:
        g = eta_eps(float(params.get("eps", 0.1)), window, count)
    elif gk is GadgetKind.LINEAR_CUTOFF:
        g = linear_cutoff(float(params.get("a", 0.0)), float(params.get("R", 2.0)), window, count)
    else:
        g = zigzag_g(int(params.get("m", 1)), window, count)
    return GadgetSpec(gk, dict(params), g)
