"""Verma modules: PBW bases, normal ordering and Gram matrices.

A PBW monomial is a tuple of lowering labels sorted by
``GeneratorLabel.sort_key`` (family L < J < P1 < P2, then mode ascending,
i.e. larger |mode| first). The empty tuple is the highest-weight vector.

Coefficients are ``WeightPolynomial`` when the module is built symbolically
and ``Fraction`` when it is built at a numeric weight point; the normal-ordering
code is the same for both.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Tuple, Union

from .algebra import (
    CA,
    CB,
    FAMILIES,
    Elementish,
    GeneratorLabel,
    as_element,
    bracket_labels,
    degree,
    omega_label,
    parse_label,
)
from .kernel.rational import format_rational, to_rational
from .kernel.wpoly import SYMBOLS, WeightPolynomial

Monomial = Tuple[GeneratorLabel, ...]
Coeff = Union[Fraction, WeightPolynomial]

VACUUM: Monomial = ()

# bump when the canonical monomial order changes; part of cache keys
BASIS_ORDER_VERSION = 1


def monomial_level(mono: Monomial) -> int:
    return sum(degree(x) for x in mono)


def monomial_str(mono: Monomial) -> str:
    if not mono:
        return "|0>"
    return " ".join(str(x) for x in mono) + " |0>"


def parse_monomial(s: str) -> Monomial:
    s = s.replace("|0>", "").strip()
    if not s:
        return VACUUM
    mono = tuple(parse_label(tok) for tok in s.split())
    return canonical(mono)


def canonical(mono: Iterable[GeneratorLabel]) -> Monomial:
    """Validate a PBW monomial: lowering labels already in canonical order.

    Lowering generators do not commute, so an out-of-order product is a
    different vector; reorder it with ``VermaModule.act`` instead.
    """
    mono = tuple(mono)
    for x in mono:
        if x.is_central or x.mode >= 0:
            raise ValueError(f"{x} is not a lowering generator")
    keys = [x.sort_key() for x in mono]
    if keys != sorted(keys):
        raise ValueError(f"{monomial_str(mono)} is not in PBW order")
    return mono


def pbw_basis(level: int) -> List[Monomial]:
    """All canonical PBW monomials of the given level, in a fixed order."""
    if level < 0:
        raise ValueError("level must be non-negative")
    labels = [GeneratorLabel(f, -k) for f in FAMILIES for k in range(level, 0, -1)]
    out: List[Monomial] = []

    def rec(start: int, remaining: int, acc: List[GeneratorLabel]):
        if remaining == 0:
            out.append(tuple(acc))
            return
        for i in range(start, len(labels)):
            d = -labels[i].mode
            if d <= remaining:
                acc.append(labels[i])
                rec(i, remaining - d, acc)
                acc.pop()

    rec(0, level, [])
    return out


def dimension(level: int) -> int:
    """Coefficient of q^level in prod_k (1 - q^k)^-4, by direct series expansion."""
    if level < 0:
        raise ValueError("level must be non-negative")
    series = [1] + [0] * level
    for k in range(1, level + 1):
        for _ in range(4):
            # multiply by 1/(1 - q^k)
            for n in range(k, level + 1):
                series[n] += series[n - k]
    return series[level]


class VermaVector:
    """Finite combination of PBW monomials applied to the highest-weight vector."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Mapping[Monomial, Coeff]] = None):
        self.terms: Dict[Monomial, Coeff] = {k: v for k, v in (terms or {}).items() if v}

    @classmethod
    def vacuum(cls) -> "VermaVector":
        return cls({VACUUM: Fraction(1)})

    @classmethod
    def of(cls, *factors: GeneratorLabel, coeff: Coeff = Fraction(1)) -> "VermaVector":
        return cls({canonical(factors): coeff})

    def levels(self) -> set:
        return {monomial_level(m) for m in self.terms}

    @property
    def level(self) -> Optional[int]:
        lv = self.levels()
        if len(lv) > 1:
            raise ValueError("vector mixes several levels")
        return next(iter(lv)) if lv else None

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "VermaVector") -> "VermaVector":
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out[k] + v if k in out else v
        return VermaVector(out)

    def __neg__(self) -> "VermaVector":
        return VermaVector({k: -v for k, v in self.terms.items()})

    def __sub__(self, other: "VermaVector") -> "VermaVector":
        return self + (-other)

    def scale(self, c: Coeff) -> "VermaVector":
        return VermaVector({k: v * c for k, v in self.terms.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, VermaVector):
            return NotImplemented
        return (self - other).is_zero()

    def __repr__(self) -> str:
        if not self.terms:
            return "VermaVector(0)"
        return "VermaVector(" + " + ".join(f"({v})*{monomial_str(k)}" for k, v in self.terms.items()) + ")"


def _accumulate(out: Dict[Monomial, Coeff], mono: Monomial, c: Coeff) -> None:
    if mono in out:
        s = out[mono] + c
        if s:
            out[mono] = s
        else:
            del out[mono]
    elif c:
        out[mono] = c


WeightPoint = Mapping[str, Union[int, Fraction, str]]


class VermaModule:
    """Highest-weight module with weights (h, mu, rho1, rho2, alpha, beta).

    With ``weights=None`` every weight is the corresponding symbol and all
    coefficients are ``WeightPolynomial``. With a numeric point every
    coefficient is a ``Fraction``.
    """

    def __init__(self, weights: Optional[WeightPoint] = None):
        if weights is None:
            vals = dict(zip(SYMBOLS, WeightPolynomial.symbols()))
            self.symbolic = True
        else:
            missing = [s for s in SYMBOLS if s not in weights]
            if missing:
                raise KeyError(f"weight point lacks {missing}")
            vals = {s: to_rational(weights[s]) for s in SYMBOLS}
            self.symbolic = False
        self.weights = vals
        self._vac = {
            GeneratorLabel("L", 0): vals["h"],
            GeneratorLabel("J", 0): vals["mu"],
            GeneratorLabel("P1", 0): vals["rho1"],
            GeneratorLabel("P2", 0): vals["rho2"],
            CA: vals["alpha"],
            CB: vals["beta"],
        }
        self._apply_cache: Dict[Tuple[GeneratorLabel, Monomial], Dict[Monomial, Coeff]] = {}
        self._inner_cache: Dict[Tuple[Monomial, Monomial], Coeff] = {}

    def _zero(self) -> Coeff:
        return WeightPolynomial.constant(0) if self.symbolic else Fraction(0)

    def _lift(self, c) -> Coeff:
        if self.symbolic and not isinstance(c, WeightPolynomial):
            return WeightPolynomial.constant(c)
        return c

    def apply(self, g: GeneratorLabel, mono: Monomial) -> Dict[Monomial, Coeff]:
        """g * mono|0>, fully normal ordered."""
        key = (g, mono)
        hit = self._apply_cache.get(key)
        if hit is not None:
            return hit
        out: Dict[Monomial, Coeff] = {}
        if g.is_central:
            out[mono] = self._vac[g]
        elif not mono:
            if g.mode < 0:
                out[(g,)] = Fraction(1)
            elif g.mode == 0 and self._vac[g]:
                out[VACUUM] = self._vac[g]
        else:
            y, rest = mono[0], mono[1:]
            if g.mode < 0 and g.sort_key() <= y.sort_key():
                out[(g,) + mono] = Fraction(1)
            else:
                # g y rest = y (g rest) + [g, y] rest
                for m1, c1 in self.apply(g, rest).items():
                    for m2, c2 in self.apply(y, m1).items():
                        _accumulate(out, m2, c1 * c2)
                for z, c in bracket_labels(g, y):
                    for m1, c1 in self.apply(z, rest).items():
                        _accumulate(out, m1, c1 * c)
        self._apply_cache[key] = out
        return out

    def act(self, x: Elementish, v: VermaVector) -> VermaVector:
        out: Dict[Monomial, Coeff] = {}
        for g, cg in as_element(x):
            for mono, cm in v.terms.items():
                for m2, c2 in self.apply(g, mono).items():
                    _accumulate(out, m2, cm * c2 * cg)
        return VermaVector({k: self._lift(c) for k, c in out.items()})

    def inner_monomials(self, x: Monomial, y: Monomial) -> Coeff:
        """<0| omega(X) Y |0> for canonical monomials X, Y."""
        if monomial_level(x) != monomial_level(y):
            return self._zero()
        key = (x, y)
        hit = self._inner_cache.get(key)
        if hit is not None:
            return hit
        if not x:
            val = self._lift(Fraction(1)) if not y else self._zero()
        else:
            # omega(x1 x2 ... xk) = omega(xk) ... omega(x1): omega(x1) acts first
            first, tail = omega_label(x[0]), x[1:]
            val = self._zero()
            for z, c in self.apply(first, y).items():
                val = val + c * self.inner_monomials(tail, z)
            val = self._lift(val)
        self._inner_cache[key] = val
        return val

    def inner(self, u: VermaVector, v: VermaVector) -> Coeff:
        total = self._zero()
        for mu_, cu in u.terms.items():
            for mv, cv in v.terms.items():
                if monomial_level(mu_) == monomial_level(mv):
                    total = total + cu * cv * self.inner_monomials(mu_, mv)
        return self._lift(total)

    def gram(self, level: int) -> "GramMatrix":
        basis = pbw_basis(level)
        n = len(basis)
        entries: List[List[Coeff]] = [[None] * n for _ in range(n)]  # type: ignore[list-item]
        for i in range(n):
            for j in range(n):
                entries[i][j] = self.inner_monomials(basis[i], basis[j])
        return GramMatrix(level, basis, entries, dict(self.weights) if not self.symbolic else None)


@dataclass
class GramMatrix:
    level: int
    basis: List[Monomial]
    entries: List[List[Coeff]]
    point: Optional[Dict[str, Fraction]] = None

    @property
    def size(self) -> int:
        return len(self.basis)

    def is_symmetric(self) -> bool:
        n = self.size
        return all(self.entries[i][j] == self.entries[j][i] for i in range(n) for j in range(i + 1, n))

    def evaluate(self, point: WeightPoint) -> "GramMatrix":
        if self.point is not None:
            raise ValueError("matrix is already evaluated")
        vals = [[e.evaluate(point) for e in row] for row in self.entries]
        return GramMatrix(self.level, self.basis, vals, {s: to_rational(point[s]) for s in SYMBOLS})

    def to_json(self) -> dict:
        fmt = format_rational if self.point is not None else str
        out = {
            "level": self.level,
            "basis": [monomial_str(m) for m in self.basis],
            "entries": [[fmt(e) for e in row] for row in self.entries],
        }
        if self.point is not None:
            out["weights"] = {k: format_rational(v) for k, v in self.point.items()}
        return out

    def to_csv(self) -> str:
        if self.point is None:
            raise ValueError("CSV output needs an evaluated matrix")
        lines = ["," + ",".join(monomial_str(m) for m in self.basis)]
        for m, row in zip(self.basis, self.entries):
            lines.append(monomial_str(m) + "," + ",".join(format_rational(e) for e in row))
        return "\n".join(lines) + "\n"


_symbolic_module: Optional[VermaModule] = None


def symbolic_module() -> VermaModule:
    global _symbolic_module
    if _symbolic_module is None:
        _symbolic_module = VermaModule()
    return _symbolic_module


def act(x: Elementish, v: VermaVector, weights: Optional[WeightPoint] = None) -> VermaVector:
    mod = symbolic_module() if weights is None else VermaModule(weights)
    return mod.act(x, v)


def inner(u: VermaVector, v: VermaVector, weights: Optional[WeightPoint] = None) -> Coeff:
    mod = symbolic_module() if weights is None else VermaModule(weights)
    return mod.inner(u, v)


def gram(level: int, weights: Optional[WeightPoint] = None) -> GramMatrix:
    if level < 0:
        raise ValueError("level must be non-negative")
    mod = symbolic_module() if weights is None else VermaModule(weights)
    return mod.gram(level)
