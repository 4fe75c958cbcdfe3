"""Real trigonometric polynomials on the circle with exact rational coefficients.

A ``TrigPoly`` is ``c0 + sum_k (a_k cos k t + b_k sin k t)``. Products use the
product-to-sum identities, so everything stays in ``Fraction``. The maximum
harmonic allowed in a product is a per-computation setting (see
``degree_cap``); going over it raises instead of truncating.
"""

from __future__ import annotations

import contextlib
import contextvars
from fractions import Fraction
from typing import Iterator, List, Mapping, Sequence, Tuple, Union

import numpy as np

from .rational import format_rational, to_rational

DEFAULT_DEGREE_CAP = 64

_cap: contextvars.ContextVar[int] = contextvars.ContextVar("trig_degree_cap", default=DEFAULT_DEGREE_CAP)

Scalar = Union[int, Fraction]


class DegreeCapExceeded(ValueError):
    def __init__(self, required: int, cap: int):
        super().__init__(f"trig product needs degree {required}, above the cap {cap}")
        self.required = required
        self.cap = cap


@contextlib.contextmanager
def degree_cap(n: int) -> Iterator[int]:
    """Temporarily set the product degree cap for the current context."""
    if n < 0:
        raise ValueError("degree cap must be non-negative")
    token = _cap.set(n)
    try:
        yield n
    finally:
        _cap.reset(token)


def current_degree_cap() -> int:
    return _cap.get()


def _trim(xs: List[Fraction]) -> Tuple[Fraction, ...]:
    n = len(xs)
    while n and not xs[n - 1]:
        n -= 1
    return tuple(xs[:n])


class TrigPoly:
    __slots__ = ("constant", "cos", "sin")

    def __init__(self, constant: Scalar = 0, cos: Sequence[Scalar] = (), sin: Sequence[Scalar] = ()):
        # cos[k-1], sin[k-1] hold the coefficients of harmonic k
        self.constant = Fraction(constant)
        d = max(len(cos), len(sin))
        cs = [Fraction(x) for x in cos] + [Fraction(0)] * (d - len(cos))
        ss = [Fraction(x) for x in sin] + [Fraction(0)] * (d - len(sin))
        while d and not cs[d - 1] and not ss[d - 1]:
            d -= 1
        self.cos = tuple(cs[:d])
        self.sin = tuple(ss[:d])

    @classmethod
    def _from_dense(cls, c: List[Fraction], s: List[Fraction]) -> "TrigPoly":
        # c[0] is the constant term; s[0] ignored
        return cls(c[0] if c else 0, c[1:], s[1:])

    @classmethod
    def cos_k(cls, k: int, coeff: Scalar = 1) -> "TrigPoly":
        if k == 0:
            return cls(coeff)
        if k < 0:
            k = -k
        return cls(0, [0] * (k - 1) + [coeff])

    @classmethod
    def sin_k(cls, k: int, coeff: Scalar = 1) -> "TrigPoly":
        if k == 0:
            return cls()
        if k < 0:
            return cls(0, (), [0] * (-k - 1) + [-Fraction(coeff)])
        return cls(0, (), [0] * (k - 1) + [coeff])

    @property
    def degree(self) -> int:
        return len(self.cos)

    def is_zero(self) -> bool:
        return not self.constant and not self.cos

    def __bool__(self) -> bool:
        return not self.is_zero()

    def _dense(self, d: int) -> Tuple[List[Fraction], List[Fraction]]:
        c = [self.constant] + list(self.cos) + [Fraction(0)] * (d - self.degree)
        s = [Fraction(0)] + list(self.sin) + [Fraction(0)] * (d - self.degree)
        return c, s

    # arithmetic

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = TrigPoly(other)
        if not isinstance(other, TrigPoly):
            return NotImplemented
        d = max(self.degree, other.degree)
        c1, s1 = self._dense(d)
        c2, s2 = other._dense(d)
        return TrigPoly._from_dense([a + b for a, b in zip(c1, c2)], [a + b for a, b in zip(s1, s2)])

    __radd__ = __add__

    def __neg__(self):
        return TrigPoly(-self.constant, [-x for x in self.cos], [-x for x in self.sin])

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = TrigPoly(other)
        if not isinstance(other, TrigPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, q: Scalar) -> "TrigPoly":
        q = Fraction(q)
        return TrigPoly(self.constant * q, [x * q for x in self.cos], [x * q for x in self.sin])

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        if isinstance(other, TrigPoly):
            return trig_mul(self, other)
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = TrigPoly(other)
        if not isinstance(other, TrigPoly):
            return NotImplemented
        return (self.constant, self.cos, self.sin) == (other.constant, other.cos, other.sin)

    def __hash__(self):
        return hash((self.constant, self.cos, self.sin))

    def diff(self, order: int = 1) -> "TrigPoly":
        u = self
        for _ in range(order):
            u = trig_diff(u)
        return u

    def mean(self) -> Fraction:
        return self.constant

    # numerics

    def __call__(self, theta):
        """Float evaluation at ``theta`` (scalar or numpy array)."""
        theta = np.asarray(theta, dtype=float)
        out = np.full(theta.shape, float(self.constant))
        for k, (a, b) in enumerate(zip(self.cos, self.sin), start=1):
            if a:
                out = out + float(a) * np.cos(k * theta)
            if b:
                out = out + float(b) * np.sin(k * theta)
        return out

    def sample(self, n: int) -> np.ndarray:
        return self(2 * np.pi * np.arange(n) / n)

    # serialization

    def to_json(self) -> dict:
        return {
            "const": format_rational(self.constant),
            "cos": [format_rational(x) for x in self.cos],
            "sin": [format_rational(x) for x in self.sin],
        }

    @classmethod
    def from_json(cls, obj: Mapping) -> "TrigPoly":
        if isinstance(obj, (str, int)):
            return cls(to_rational(obj))
        return cls(
            to_rational(obj.get("const", 0)),
            [to_rational(x) for x in obj.get("cos", [])],
            [to_rational(x) for x in obj.get("sin", [])],
        )

    def __repr__(self) -> str:
        parts = []
        if self.constant:
            parts.append(format_rational(self.constant))
        for k, (a, b) in enumerate(zip(self.cos, self.sin), start=1):
            if a:
                parts.append(f"{format_rational(a)}*cos({k}t)")
            if b:
                parts.append(f"{format_rational(b)}*sin({k}t)")
        return "TrigPoly(" + (" + ".join(parts) or "0") + ")"


def trig_mul(u: TrigPoly, v: TrigPoly, cap: int | None = None) -> TrigPoly:
    cap = current_degree_cap() if cap is None else cap
    if u.is_zero() or v.is_zero():
        return TrigPoly()
    need = u.degree + v.degree
    p, q = u.degree, v.degree
    uc, us = u._dense(p)
    vc, vs = v._dense(q)
    c = [Fraction(0)] * (need + 1)
    s = [Fraction(0)] * (need + 1)
    half = Fraction(1, 2)
    for i in range(p + 1):
        a_i, b_i = uc[i], us[i]
        if not a_i and not b_i:
            continue
        for j in range(q + 1):
            a_j, b_j = vc[j], vs[j]
            if not a_j and not b_j:
                continue
            hi, lo = i + j, i - j
            if i == 0 or j == 0:
                # one factor is the constant: no splitting needed
                if i == 0:
                    c[j] += a_i * a_j
                    s[j] += a_i * b_j
                else:
                    c[i] += a_i * a_j
                    s[i] += b_i * a_j
                continue
            # cos i cos j, sin i sin j, sin i cos j, cos i sin j
            cc, ss_, sc, cs = a_i * a_j * half, b_i * b_j * half, b_i * a_j * half, a_i * b_j * half
            c[hi] += cc - ss_
            s[hi] += sc + cs
            if lo >= 0:
                c[lo] += cc + ss_
                s[lo] += sc - cs
            else:
                c[-lo] += cc + ss_
                s[-lo] += -(sc - cs)
    s[0] = Fraction(0)
    out = TrigPoly._from_dense(c, s)
    if out.degree > cap:
        raise DegreeCapExceeded(out.degree, cap)
    return out


def trig_diff(u: TrigPoly) -> TrigPoly:
    cos = [k * b for k, b in enumerate(u.sin, start=1)]
    sin = [-k * a for k, a in enumerate(u.cos, start=1)]
    return TrigPoly(0, cos, sin)


def trig_mean(u: TrigPoly) -> Fraction:
    """Integral against the normalized measure dt/2pi."""
    return u.constant
