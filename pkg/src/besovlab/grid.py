"""Real-valued functions sampled on a uniform grid over a finite window.

The real line is truncated to a window (default [-16, 16]); everything in
the package lives on such windows. Outside the window a function is either
extended by zero or by its edge values, and every L^p integral is the plain
rectangle rule sum(|f_i|^p) * dx over the window samples.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Callable, Optional

import numpy as np

from . import _kernels

DEFAULT_WINDOW = (-16.0, 16.0)
DEFAULT_COUNT = 2**13 + 1


class Extension(Enum):
    ZERO = "zero"
    CONSTANT = "constant"


class GridMismatchError(ValueError):
    """Pointwise combination of functions on different grids."""


class InfiniteMassError(ValueError):
    """L^p norm (p < infinity) of a function with nonzero constant extension."""


class CatalogError(ValueError):
    """Unknown descriptor name or invalid descriptor parameters."""


def smoothstep(u):
    """Quintic smoothstep: 0 for u <= 0, 1 for u >= 1, C^2 across the joins."""
    u = np.clip(u, 0.0, 1.0)
    return u**3 * (10.0 + u * (-15.0 + 6.0 * u))


@dataclass(frozen=True)
class GridFunction:
    """Samples of a function on origin + i*spacing, i = 0..count-1.

    ``descriptor``, when present, is the exact callable the samples came
    from; it is carried along so resampling and composed evaluation can be
    exact instead of interpolated. It never participates in equality.
    """

    samples: np.ndarray
    spacing: float
    origin: float
    extension: Extension = Extension.ZERO
    descriptor: Optional[Callable] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        samples = np.ascontiguousarray(self.samples, dtype=np.float64)
        object.__setattr__(self, "samples", samples)
        if samples.ndim != 1 or samples.size == 0:
            raise ValueError("samples must be a nonempty 1-D array")
        if not (self.spacing > 0.0):
            raise ValueError("spacing must be positive")

    @property
    def count(self) -> int:
        return self.samples.size

    @property
    def end(self) -> float:
        return self.origin + self.spacing * (self.count - 1)

    @property
    def window(self) -> tuple[float, float]:
        return (self.origin, self.end)

    @property
    def x(self) -> np.ndarray:
        return self.origin + self.spacing * np.arange(self.count)

    def ext_values(self) -> tuple[float, float]:
        if self.extension is Extension.ZERO:
            return (0.0, 0.0)
        return (float(self.samples[0]), float(self.samples[-1]))

    def __call__(self, xs):
        scalar = np.isscalar(xs)
        arr = np.atleast_1d(np.asarray(xs, dtype=np.float64))
        left, right = self.ext_values()
        out = _kernels.interp_eval(self.samples, self.origin, self.spacing, left, right, arr)
        return float(out[0]) if scalar else out

    def same_grid(self, other: "GridFunction") -> bool:
        return (
            self.count == other.count
            and self.origin == other.origin
            and self.spacing == other.spacing
        )

    def _require_same_grid(self, other: "GridFunction"):
        if not self.same_grid(other):
            raise GridMismatchError(
                "grids differ (origin/spacing/count); resample explicitly first"
            )

    def __mul__(self, other):
        if isinstance(other, GridFunction):
            self._require_same_grid(other)
            ext = (
                Extension.ZERO
                if Extension.ZERO in (self.extension, other.extension)
                else Extension.CONSTANT
            )
            return GridFunction(self.samples * other.samples, self.spacing, self.origin, ext)
        return GridFunction(
            self.samples * float(other), self.spacing, self.origin, self.extension
        )

    __rmul__ = __mul__

    def __add__(self, other):
        if isinstance(other, GridFunction):
            self._require_same_grid(other)
            ext = (
                Extension.ZERO
                if self.extension is Extension.ZERO and other.extension is Extension.ZERO
                else Extension.CONSTANT
            )
            return GridFunction(self.samples + other.samples, self.spacing, self.origin, ext)
        return NotImplemented

    def __sub__(self, other):
        if isinstance(other, GridFunction):
            return self + (other * -1.0)
        return NotImplemented

    def __neg__(self):
        return self * -1.0

    def resample(self, count: int) -> "GridFunction":
        """Same window on ``count`` points; exact when a descriptor is known."""
        if count < 2:
            raise ValueError("count must be >= 2")
        spacing = (self.end - self.origin) / (count - 1)
        xs = self.origin + spacing * np.arange(count)
        if self.descriptor is not None:
            vals = np.asarray(self.descriptor(xs), dtype=np.float64)
        else:
            vals = self(xs)
        return GridFunction(vals, spacing, self.origin, self.extension, self.descriptor)

    def shifted(self, cells: int) -> "GridFunction":
        """Translate by an exact number of grid cells: g(x) = f(x - cells*dx)."""
        n = self.count
        left, right = self.ext_values()
        out = np.empty(n)
        if cells >= 0:
            out[:cells] = left
            out[cells:] = self.samples[: n - cells] if cells < n else left
        else:
            c = -cells
            out[n - c :] = right
            out[: n - c] = self.samples[c:] if c < n else right
        return GridFunction(out, self.spacing, self.origin, self.extension)

    def to_csv(self, path):
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["x", "value"])
            for xi, vi in zip(self.x, self.samples):
                writer.writerow([repr(float(xi)), repr(float(vi))])

    @staticmethod
    def from_csv(path, extension: Extension = Extension.ZERO) -> "GridFunction":
        xs, vals = [], []
        with open(path, newline="") as fh:
            reader = csv.reader(fh)
            header = next(reader)
            if [c.strip().lower() for c in header[:2]] != ["x", "value"]:
                raise ValueError("expected 'x,value' header")
            for row in reader:
                xs.append(float(row[0]))
                vals.append(float(row[1]))
        xs = np.asarray(xs)
        if xs.size < 2:
            raise ValueError("need at least two samples")
        steps = np.diff(xs)
        spacing = float(steps[0])
        if not np.allclose(steps, spacing, rtol=1e-9, atol=1e-12):
            raise ValueError("grid is not uniform")
        return GridFunction(np.asarray(vals), spacing, float(xs[0]), extension)


@dataclass(frozen=True)
class SpaceParams:
    """(s, p, q, m): smoothness, integrability, summability, difference order."""

    s: float
    p: float
    q: float
    m: int

    def __post_init__(self):
        if not (self.p > 0.0):
            raise ValueError("p must lie in (0, inf]")
        if not (self.q > 0.0):
            raise ValueError("q must lie in (0, inf]")
        if int(self.m) != self.m or self.m < 1:
            raise ValueError("m must be a positive integer")
        object.__setattr__(self, "m", int(self.m))
        if not (self.m > self.s):
            raise ValueError(f"m > s required (got m={self.m}, s={self.s})")
        floor = max(0.0, 1.0 / self.p - 1.0)
        if not (self.s > floor):
            raise ValueError(f"s > max(0, 1/p - 1) = {floor} required")

    def as_dict(self) -> dict:
        return {"s": self.s, "p": self.p, "q": self.q, "m": self.m}

    def shifted_down(self) -> "SpaceParams":
        """Parameters for the derivative space, one order of smoothness lower."""
        m = max(1, self.m - 1) if self.m - 1 > self.s - 1.0 else self.m
        return SpaceParams(self.s - 1.0, self.p, self.q, m)


# ---------------------------------------------------------------------------
# norms
# ---------------------------------------------------------------------------

def lp_norm(f: GridFunction, p: float) -> float:
    """Rectangle-rule L^p norm over the window; max of samples for p = inf.

    Zero extension contributes nothing. A nonzero constant extension with
    p < inf would have infinite mass and is rejected.
    """
    if not (p > 0.0):
        raise ValueError("p must lie in (0, inf]")
    if math.isinf(p):
        return float(np.max(np.abs(f.samples)))
    if f.extension is Extension.CONSTANT:
        left, right = f.ext_values()
        if left != 0.0 or right != 0.0:
            raise InfiniteMassError(
                "L^p norm with p < inf of a nonzero constant extension is infinite"
            )
    a = np.abs(f.samples)
    return float((a**p).sum() * f.spacing) ** (1.0 / p)


def linf_on_interval(f: GridFunction, interval) -> float:
    """max |f| over the samples inside ``interval`` plus the interpolated
    endpoint values (extension values when the interval exits the window)."""
    a, b = float(interval[0]), float(interval[1])
    if b < a:
        raise ValueError("interval must satisfy a <= b")
    i0 = int(np.ceil((a - f.origin) / f.spacing - 1e-12))
    i1 = int(np.floor((b - f.origin) / f.spacing + 1e-12))
    best = 0.0
    if i1 >= i0:
        lo = max(i0, 0)
        hi = min(i1, f.count - 1)
        if hi >= lo:
            best = float(np.max(np.abs(f.samples[lo : hi + 1])))
    ends = np.abs(f(np.array([a, b])))
    return max(best, float(ends[0]), float(ends[1]))


def grid_derivative(f: GridFunction) -> GridFunction:
    """Central-difference derivative (one-sided at the window edges)."""
    d = np.gradient(f.samples, f.spacing)
    return GridFunction(d, f.spacing, f.origin, Extension.ZERO)


# ---------------------------------------------------------------------------
# descriptor catalog
# ---------------------------------------------------------------------------

def _mollifier(center: float, width: float):
    def fn(x):
        u = (np.asarray(x, dtype=np.float64) - center) / width
        out = np.zeros_like(u)
        inside = np.abs(u) < 1.0
        ui = u[inside]
        out[inside] = np.exp(1.0 - 1.0 / (1.0 - ui * ui))
        return out

    return fn


def _plateau(lo: float, hi: float, ramp: float):
    """1 on [lo, hi], quintic smoothstep ramps of width ``ramp``, 0 outside."""

    def fn(x):
        x = np.asarray(x, dtype=np.float64)
        up = smoothstep((x - (lo - ramp)) / ramp)
        down = smoothstep(((hi + ramp) - x) / ramp)
        return up * down

    return fn


def _table_interp(points):
    pts = np.asarray(points, dtype=np.float64)
    if pts.ndim != 2 or pts.shape[1] != 2 or pts.shape[0] < 2:
        raise CatalogError("table descriptor needs an (n, 2) list of (x, value) points")
    order = np.argsort(pts[:, 0])
    xs, vs = pts[order, 0], pts[order, 1]

    def fn(x):
        return np.interp(np.asarray(x, dtype=np.float64), xs, vs, left=0.0, right=0.0)

    return fn


def _catalog_entry(name: str, params: dict):
    """Return (callable, extension) for a catalog descriptor."""
    p = dict(params)
    if name == "zero":
        return (lambda x: np.zeros_like(np.asarray(x, dtype=np.float64)), Extension.ZERO)
    if name == "const":
        c = float(p.pop("value", 1.0))
        return (lambda x: np.full_like(np.asarray(x, dtype=np.float64), c), Extension.CONSTANT)
    if name == "linear":
        return (lambda x: np.asarray(x, dtype=np.float64).copy(), Extension.CONSTANT)
    if name == "indicator":
        a = float(p.pop("a", 0.0))
        b = float(p.pop("b", 1.0))
        return (
            lambda x: np.where((np.asarray(x) >= a) & (np.asarray(x) <= b), 1.0, 0.0),
            Extension.ZERO,
        )
    if name == "gaussian":
        c = float(p.pop("center", 0.0))
        w = float(p.pop("width", 1.0))
        return (lambda x: np.exp(-(((np.asarray(x) - c) / w) ** 2)), Extension.ZERO)
    if name == "bump":
        c = float(p.pop("center", 0.0))
        w = float(p.pop("width", 1.0))
        return (_mollifier(c, w), Extension.ZERO)
    if name == "sine":
        freq = float(p.pop("freq", 1.0))
        phase = float(p.pop("phase", 0.0))
        return (lambda x: np.sin(freq * np.asarray(x) + phase), Extension.CONSTANT)
    if name == "poly":
        coeffs = p.pop("coeffs", None)
        if coeffs is None:
            raise CatalogError("poly descriptor needs coeffs=[c0,c1,...]")
        coeffs = [float(c) for c in coeffs]
        return (
            lambda x: np.polynomial.polynomial.polyval(np.asarray(x, dtype=np.float64), coeffs),
            Extension.CONSTANT,
        )
    if name == "table":
        points = p.pop("points", None)
        if points is None:
            raise CatalogError("table descriptor needs points=[[x, value], ...]")
        return (_table_interp(points), Extension.ZERO)
    # named members of the fixed test family
    if name == "gaussian_wide":
        return (lambda x: np.exp(-((np.asarray(x) / 2.0) ** 2)), Extension.ZERO)
    if name == "gaussian_shift":
        return (lambda x: np.exp(-4.0 * (np.asarray(x) - 1.0) ** 2), Extension.ZERO)
    if name == "gauss_cos":
        return (lambda x: np.exp(-(np.asarray(x) ** 2)) * np.cos(3.0 * np.asarray(x)), Extension.ZERO)
    if name == "gauss_sin":
        return (lambda x: np.exp(-(np.asarray(x) ** 2)) * np.sin(5.0 * np.asarray(x)), Extension.ZERO)
    if name == "xgauss":
        return (lambda x: np.asarray(x) * np.exp(-(np.asarray(x) ** 2)), Extension.ZERO)
    if name == "two_bumps":
        return (
            lambda x: np.exp(-((np.asarray(x) - 3.0) ** 2)) + np.exp(-((np.asarray(x) + 3.0) ** 2)),
            Extension.ZERO,
        )
    if name == "plateau":
        return (_plateau(0.0, 1.0, 1.0), Extension.ZERO)
    if name == "ramp_plateau":
        return (_plateau(-1.0, 1.0, 0.5), Extension.ZERO)
    raise CatalogError(f"unknown descriptor {name!r}")


CATALOG_NAMES = (
    "zero",
    "const",
    "linear",
    "indicator",
    "gaussian",
    "bump",
    "sine",
    "poly",
    "table",
    "gaussian_wide",
    "gaussian_shift",
    "gauss_cos",
    "gauss_sin",
    "xgauss",
    "two_bumps",
    "plateau",
    "ramp_plateau",
)

FAMILY_NAMES = (
    "gaussian",
    "gaussian_wide",
    "gaussian_shift",
    "gauss_cos",
    "gauss_sin",
    "xgauss",
    "two_bumps",
    "bump",
    "plateau",
    "ramp_plateau",
)


def sample(
    name: str,
    window: tuple[float, float] = DEFAULT_WINDOW,
    count: int = DEFAULT_COUNT,
    **params,
) -> GridFunction:
    """Sample a catalog descriptor on ``count`` points over ``window``."""
    if count < 2:
        raise ValueError("count must be >= 2")
    a, b = float(window[0]), float(window[1])
    if not (b > a):
        raise ValueError("window is degenerate")
    fn, ext = _catalog_entry(name, params)
    spacing = (b - a) / (count - 1)
    xs = a + spacing * np.arange(count)
    return GridFunction(np.asarray(fn(xs), dtype=np.float64), spacing, a, ext, fn)


def catalog_family(
    window: tuple[float, float] = DEFAULT_WINDOW, count: int = DEFAULT_COUNT
) -> list[tuple[str, GridFunction]]:
    """The fixed 10-function family used by the equivalence-band tests.

    All members are at least C^2, compactly supported or decaying below
    1e-12 at the window edge, and carry zero extension.
    """
    return [(name, sample(name, window, count)) for name in FAMILY_NAMES]
