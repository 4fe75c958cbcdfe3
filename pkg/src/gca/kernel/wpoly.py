"""Polynomials with rational coefficients in the six highest-weight symbols."""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, Mapping, Tuple, Union

from .rational import format_rational, to_rational

SYMBOLS: Tuple[str, ...] = ("h", "mu", "rho1", "rho2", "alpha", "beta")
_INDEX = {s: i for i, s in enumerate(SYMBOLS)}
_ZERO_EXP = (0,) * len(SYMBOLS)

Exponent = Tuple[int, ...]
Scalar = Union[int, Fraction]


class WeightPolynomial:
    """Sparse polynomial in h, mu, rho1, rho2, alpha, beta.

    Terms map an exponent vector to a nonzero ``Fraction``. Instances are
    treated as immutable.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Exponent, Scalar] | None = None):
        clean: Dict[Exponent, Fraction] = {}
        if terms:
            for e, c in terms.items():
                if len(e) != len(SYMBOLS) or any(k < 0 for k in e):
                    raise ValueError(f"bad exponent vector {e!r}")
                c = Fraction(c)
                if c:
                    clean[tuple(e)] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: Dict[Exponent, Fraction]) -> "WeightPolynomial":
        p = cls.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def constant(cls, c: Scalar) -> "WeightPolynomial":
        c = Fraction(c)
        return cls._raw({_ZERO_EXP: c} if c else {})

    @classmethod
    def symbol(cls, name: str) -> "WeightPolynomial":
        try:
            i = _INDEX[name]
        except KeyError:
            raise ValueError(f"unknown weight symbol {name!r}; expected one of {SYMBOLS}") from None
        e = [0] * len(SYMBOLS)
        e[i] = 1
        return cls._raw({tuple(e): Fraction(1)})

    @classmethod
    def symbols(cls) -> Tuple["WeightPolynomial", ...]:
        return tuple(cls.symbol(s) for s in SYMBOLS)

    @property
    def terms(self) -> Dict[Exponent, Fraction]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def total_degree(self) -> int:
        return max((sum(e) for e in self._terms), default=-1)

    def variables(self) -> Tuple[str, ...]:
        used = set()
        for e in self._terms:
            used.update(i for i, k in enumerate(e) if k)
        return tuple(SYMBOLS[i] for i in sorted(used))

    # arithmetic

    @staticmethod
    def _coerce(other) -> "WeightPolynomial | None":
        if isinstance(other, WeightPolynomial):
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return WeightPolynomial.constant(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o._terms:
            return self
        out = dict(self._terms)
        for e, c in o._terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return WeightPolynomial._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return WeightPolynomial._raw({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            if not other:
                return WeightPolynomial._raw({})
            return WeightPolynomial._raw({e: c * other for e, c in self._terms.items()})
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out: Dict[Exponent, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in o._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, 0) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return WeightPolynomial._raw(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only non-negative integer powers")
        result = WeightPolynomial.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._terms == o._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # evaluation

    def evaluate(self, point: Mapping[str, Scalar | str]) -> Fraction:
        """Exact value at ``point``; raises KeyError naming a missing symbol."""
        needed = self.variables()
        vals = [Fraction(0)] * len(SYMBOLS)
        for s in needed:
            if s not in point:
                raise KeyError(f"no value assigned to weight symbol {s!r}")
            vals[_INDEX[s]] = to_rational(point[s])
        total = Fraction(0)
        for e, c in self._terms.items():
            term = c
            for v, k in zip(vals, e):
                if k:
                    term *= v**k
            total += term
        return total

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for e in sorted(self._terms, key=lambda e: (-sum(e), tuple(-k for k in e))):
            c = self._terms[e]
            mono = "*".join(
                SYMBOLS[i] if k == 1 else f"{SYMBOLS[i]}^{k}" for i, k in enumerate(e) if k
            )
            if not mono:
                parts.append(format_rational(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{format_rational(c)}*{mono}")
        s = " + ".join(parts)
        return s.replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"WeightPolynomial({self})"


def poly_eval(p: WeightPolynomial, point: Mapping[str, Scalar | str]) -> Fraction:
    return p.evaluate(point)


def poly_sum(items: Iterable[WeightPolynomial]) -> WeightPolynomial:
    out: Dict[Exponent, Fraction] = {}
    for p in items:
        for e, c in p._terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
    return WeightPolynomial._raw(out)
