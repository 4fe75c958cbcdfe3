"""Sampled periodic functions with spectral differentiation and interpolation."""

from __future__ import annotations

from numbers import Real
from typing import Union

import numpy as np

from ..kernel.trig import TrigPoly

DEFAULT_GRID = 1024
SPECTRAL_FLOOR = 1e-15


def check_grid_size(n: int) -> int:
    if n < 8 or n & (n - 1):
        raise ValueError(f"grid size must be a power of two >= 8, got {n}")
    return n


def grid_points(n: int) -> np.ndarray:
    return 2 * np.pi * np.arange(n) / n


class GridFunction:
    """Real periodic function stored as N equispaced samples on [0, 2pi)."""

    __slots__ = ("samples",)

    def __init__(self, samples):
        s = np.asarray(samples, dtype=float)
        if s.ndim != 1:
            raise ValueError("samples must be one-dimensional")
        check_grid_size(len(s))
        self.samples = s

    @classmethod
    def from_callable(cls, fn, n: int) -> "GridFunction":
        return cls(fn(grid_points(n)))

    @classmethod
    def constant(cls, c: float, n: int) -> "GridFunction":
        return cls(np.full(n, float(c)))

    @property
    def n(self) -> int:
        return len(self.samples)

    @property
    def theta(self) -> np.ndarray:
        return grid_points(self.n)

    def _wavenumbers(self) -> np.ndarray:
        return np.fft.fftfreq(self.n, 1.0 / self.n)

    def diff(self, order: int = 1) -> "GridFunction":
        if order == 0:
            return self
        k = self._wavenumbers()
        c = np.fft.fft(self.samples)
        # roundoff in high modes would be amplified by k**order
        c[np.abs(c) <= SPECTRAL_FLOOR * np.max(np.abs(c))] = 0.0
        c = c * (1j * k) ** order
        if order % 2:
            c[self.n // 2] = 0.0
        return GridFunction(np.fft.ifft(c).real)

    def __call__(self, x) -> np.ndarray:
        """Trigonometric interpolant evaluated at arbitrary points."""
        x = np.asarray(x, dtype=float)
        n = self.n
        c = np.fft.fft(self.samples) / n
        k = np.arange(-(n // 2) + 1, n // 2)
        coeffs = c[k % n]
        out = (np.exp(1j * np.multiply.outer(x, k)) @ coeffs).real
        # Nyquist mode split evenly between +-n/2 gives a cosine
        out = out + (c[n // 2] * np.cos(n // 2 * x)).real
        return out

    def sample(self, n: int) -> np.ndarray:
        if n == self.n:
            return self.samples
        return self(grid_points(n))

    def mean(self) -> float:
        return float(self.samples.mean())

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.samples)))

    def is_constant(self, tol: float = 1e-13) -> bool:
        return float(np.ptp(self.samples)) <= tol * max(1.0, self.max_abs())

    def _wrap(self, other):
        if isinstance(other, GridFunction):
            if other.n != self.n:
                raise ValueError("grid mismatch")
            return other.samples
        return other

    def __add__(self, o):
        return GridFunction(self.samples + self._wrap(o))

    __radd__ = __add__

    def __sub__(self, o):
        return GridFunction(self.samples - self._wrap(o))

    def __rsub__(self, o):
        return GridFunction(self._wrap(o) - self.samples)

    def __mul__(self, o):
        return GridFunction(self.samples * self._wrap(o))

    __rmul__ = __mul__

    def __truediv__(self, o):
        return GridFunction(self.samples / self._wrap(o))

    def __neg__(self):
        return GridFunction(-self.samples)

    def __repr__(self) -> str:
        return f"GridFunction(n={self.n}, max|.|={self.max_abs():.3g})"


class ScaledTrig:
    """eps * u for a trig polynomial u and a float eps; derivatives stay exact."""

    __slots__ = ("u", "eps")

    def __init__(self, u: TrigPoly, eps: float):
        self.u = u
        self.eps = float(eps)

    @property
    def degree(self) -> int:
        return self.u.degree

    def __call__(self, theta):
        return self.eps * self.u(theta)

    def sample(self, n: int) -> np.ndarray:
        return self.eps * self.u.sample(n)

    def diff(self, order: int = 1) -> "ScaledTrig":
        return ScaledTrig(self.u.diff(order), self.eps)


CircleFunction = Union[TrigPoly, ScaledTrig, GridFunction, int, float]


def sample(u: CircleFunction, n: int) -> np.ndarray:
    if isinstance(u, Real):
        return np.full(n, float(u))
    return u.sample(n)


def evaluate(u: CircleFunction, x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if isinstance(u, Real):
        return np.full(x.shape, float(u))
    return u(x)


def derivative(u: CircleFunction, n: int, order: int = 1) -> np.ndarray:
    """Samples of the order-th derivative; exact for trig polynomials."""
    if isinstance(u, Real):
        return np.zeros(n)
    if isinstance(u, GridFunction):
        g = u if u.n == n else GridFunction(u.sample(n))
        return g.diff(order).samples
    return u.diff(order).sample(n)


def derivative_at(u: CircleFunction, x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if isinstance(u, Real):
        return np.zeros(x.shape)
    return u.diff()(x)


def is_constant(u: CircleFunction, n: int) -> bool:
    if isinstance(u, Real):
        return True
    if isinstance(u, GridFunction):
        return u.is_constant()
    return u.degree == 0


def constant_value(u: CircleFunction) -> float:
    if isinstance(u, Real):
        return float(u)
    if isinstance(u, GridFunction):
        return u.mean()
    return float(u.sample(8)[0])
