"""The centrally extended planar Galilean conformal algebra.

Basis: ``L[m]``, ``J[m]``, ``P1[m]``, ``P2[m]`` for every integer m, plus the
two central labels ``Ca`` and ``Cb``. The central charges are kept as basis
labels; their values (alpha, beta) only enter when an element acts on a
highest-weight module.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, Iterator, List, Mapping, NamedTuple, Optional, Tuple, Union

from .kernel.rational import format_rational, to_rational

FAMILIES = ("L", "J", "P1", "P2")
CENTRAL = ("Ca", "Cb")
_FAMILY_ORDER = {f: i for i, f in enumerate(FAMILIES + CENTRAL)}

# epsilon_{12} = -epsilon_{21} = 1
EPS = {("P1", "P2"): 1, ("P2", "P1"): -1}
_OTHER_P = {"P1": "P2", "P2": "P1"}


class GeneratorLabel(NamedTuple):
    family: str
    mode: Optional[int] = None

    @property
    def is_central(self) -> bool:
        return self.family in CENTRAL

    def sort_key(self) -> Tuple[int, int]:
        return (_FAMILY_ORDER[self.family], self.mode or 0)

    def __str__(self) -> str:
        if self.is_central:
            return self.family
        return f"{self.family}[{self.mode}]"


_LABEL_RE = re.compile(r"^\s*(L|J|P1|P2)\[\s*(-?\d+)\s*\]\s*$")


def label(family: str, mode: Optional[int] = None) -> GeneratorLabel:
    if family in CENTRAL:
        if mode is not None:
            raise ValueError(f"central label {family} carries no mode")
        return GeneratorLabel(family, None)
    if family not in FAMILIES:
        raise ValueError(f"unknown generator family {family!r}")
    if not isinstance(mode, int):
        raise ValueError(f"{family} needs an integer mode")
    return GeneratorLabel(family, mode)


def L(m: int) -> GeneratorLabel:
    return GeneratorLabel("L", m)


def J(m: int) -> GeneratorLabel:
    return GeneratorLabel("J", m)


def P(i: int, m: int) -> GeneratorLabel:
    if i not in (1, 2):
        raise ValueError("P index must be 1 or 2")
    return GeneratorLabel(f"P{i}", m)


CA = GeneratorLabel("Ca")
CB = GeneratorLabel("Cb")


def parse_label(s: str) -> GeneratorLabel:
    s = s.strip()
    if s in CENTRAL:
        return GeneratorLabel(s)
    m = _LABEL_RE.match(s)
    if not m:
        raise ValueError(f"cannot parse generator label {s!r}")
    return GeneratorLabel(m.group(1), int(m.group(2)))


def degree(x: GeneratorLabel) -> int:
    """deg(X_n) = -n; central labels have degree 0."""
    return 0 if x.is_central else -x.mode


@lru_cache(maxsize=None)
def bracket_labels(x: GeneratorLabel, y: GeneratorLabel) -> Tuple[Tuple[GeneratorLabel, Fraction], ...]:
    """[x, y] on basis labels, as a tuple of (label, coefficient) pairs."""
    if x.is_central or y.is_central:
        return ()
    fx, m = x
    fy, n = y
    if fx == "L":
        if fy == "L":
            out = []
            if m != n:
                out.append((L(m + n), Fraction(m - n)))
            if m + n == 0 and m * (m * m - 1) != 0:
                out.append((CA, Fraction(m * (m * m - 1), 12)))
            return tuple(out)
        if fy == "J":
            return ((J(m + n), Fraction(-n)),) if n else ()
        # P^i
        return ((GeneratorLabel(fy, m + n), Fraction(m - n)),) if m != n else ()
    if fx == "J":
        if fy == "J":
            return ((CB, Fraction(m)),) if m + n == 0 and m else ()
        if fy == "L":
            return tuple((lab, -c) for lab, c in bracket_labels(y, x))
        # [J_m, P^i_n] = sum_j eps_ij P^j_{m+n}
        other = _OTHER_P[fy]
        return ((GeneratorLabel(other, m + n), Fraction(EPS[(fy, other)])),)
    # x is P^i
    if fy in ("P1", "P2"):
        return ()
    return tuple((lab, -c) for lab, c in bracket_labels(y, x))


@dataclass(frozen=True)
class AlgebraElement:
    """Finite rational combination of generator labels."""

    terms: Mapping[GeneratorLabel, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        clean = {k: Fraction(v) for k, v in dict(self.terms).items() if v}
        object.__setattr__(self, "terms", clean)

    @classmethod
    def of(cls, lab: GeneratorLabel, coeff=1) -> "AlgebraElement":
        return cls({lab: Fraction(coeff)})

    def __iter__(self) -> Iterator[Tuple[GeneratorLabel, Fraction]]:
        return iter(self.terms.items())

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return AlgebraElement(out)

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement({k: -v for k, v in self.terms.items()})

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return self + (-other)

    def __mul__(self, q) -> "AlgebraElement":
        q = Fraction(q)
        return AlgebraElement({k: v * q for k, v in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def to_json(self) -> Dict[str, str]:
        items = sorted(self.terms.items(), key=lambda kv: kv[0].sort_key())
        return {str(k): format_rational(v) for k, v in items}

    @classmethod
    def from_json(cls, obj: Mapping[str, str]) -> "AlgebraElement":
        return cls({parse_label(k): to_rational(v) for k, v in obj.items()})

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        items = sorted(self.terms.items(), key=lambda kv: kv[0].sort_key())
        return " + ".join(f"{format_rational(c)}*{k}" for k, c in items).replace("+ -", "- ")


Elementish = Union[AlgebraElement, GeneratorLabel]


def as_element(x: Elementish) -> AlgebraElement:
    if isinstance(x, GeneratorLabel):
        return AlgebraElement.of(x)
    return x


def bracket(x: Elementish, y: Elementish) -> AlgebraElement:
    x, y = as_element(x), as_element(y)
    out: Dict[GeneratorLabel, Fraction] = {}
    for a, ca in x:
        for b, cb in y:
            for lab, c in bracket_labels(a, b):
                out[lab] = out.get(lab, 0) + ca * cb * c
    return AlgebraElement(out)


def omega_label(x: GeneratorLabel) -> GeneratorLabel:
    if x.is_central:
        return x
    return GeneratorLabel(x.family, -x.mode)


def omega(x: Elementish) -> AlgebraElement:
    """The anti-automorphism X_m -> X_{-m}, extended linearly."""
    x = as_element(x)
    return AlgebraElement({omega_label(k): v for k, v in x})


def generators(window: int, families: Iterable[str] = FAMILIES) -> List[GeneratorLabel]:
    return [GeneratorLabel(f, m) for f in families for m in range(-window, window + 1)]


# vector-field realization on monomials t^a x1^b x2^c

Monomial = Tuple[int, int, int]
Poly = Dict[Monomial, Fraction]


class DiffOperator:
    """Linear operator given by its action on monomials t^a x1^b x2^c."""

    def __init__(self, lab: GeneratorLabel):
        if lab.is_central:
            raise ValueError("central labels act as zero in the realization")
        self.label = lab

    def on_monomial(self, mono: Monomial) -> Poly:
        a, b, c = mono
        f, m = self.label
        out: Poly = {}
        if f == "L":
            # -t^{m+1} d_t - (m+1) t^m (x1 d_x1 + x2 d_x2)
            coeff = -(a + (m + 1) * (b + c))
            if coeff:
                out[(a + m, b, c)] = Fraction(coeff)
        elif f == "J":
            # -t^m (x1 d_x2 - x2 d_x1)
            if c:
                out[(a + m, b + 1, c - 1)] = Fraction(-c)
            if b:
                key = (a + m, b - 1, c + 1)
                out[key] = out.get(key, 0) + b
        elif f == "P1":
            if b:
                out[(a + m + 1, b - 1, c)] = Fraction(-b)
        else:
            if c:
                out[(a + m + 1, b, c - 1)] = Fraction(-c)
        return out

    def __call__(self, poly: Poly) -> Poly:
        out: Poly = {}
        for mono, coeff in poly.items():
            for k, v in self.on_monomial(mono).items():
                out[k] = out.get(k, 0) + coeff * v
        return {k: v for k, v in out.items() if v}


def _sub(p: Poly, q: Poly) -> Poly:
    out = dict(p)
    for k, v in q.items():
        out[k] = out.get(k, 0) - v
    return {k: v for k, v in out.items() if v}


@dataclass
class RealizationReport:
    window: int
    checked: int = 0
    results: List[Tuple[str, str, bool]] = field(default_factory=list)
    witness: Optional[dict] = None

    @property
    def passed(self) -> bool:
        return self.witness is None

    def to_json(self) -> dict:
        return {
            "window": self.window,
            "pairs": len(self.results),
            "checked": self.checked,
            "pass": self.passed,
            "failures": [[x, y] for x, y, ok in self.results if not ok],
            "witness": self.witness,
        }


def vf_realize_check(mode_window: int, t_range: int = 3, x_degree: int = 2) -> RealizationReport:
    """Compare operator commutators of the vector fields with ``bracket`` (alpha = beta = 0).

    Every pair of generators with |mode| <= mode_window is tested on all
    monomials t^a x1^b x2^c with |a| <= t_range and b, c <= x_degree.
    """
    if mode_window < 1:
        raise ValueError("mode_window must be >= 1")
    monos = [
        (a, b, c)
        for a in range(-t_range, t_range + 1)
        for b in range(x_degree + 1)
        for c in range(x_degree + 1)
    ]
    gens = generators(mode_window)
    ops = {g: DiffOperator(g) for g in gens}
    report = RealizationReport(mode_window)
    for i, x in enumerate(gens):
        for y in gens[i:]:
            br = bracket(x, y)
            ok = True
            for mono in monos:
                p = {mono: Fraction(1)}
                lhs = _sub(ops[x](ops[y](p)), ops[y](ops[x](p)))
                rhs: Poly = {}
                for lab, c in br:
                    if lab.is_central:
                        continue
                    for k, v in DiffOperator(lab)(p).items():
                        rhs[k] = rhs.get(k, 0) + c * v
                rhs = {k: v for k, v in rhs.items() if v}
                report.checked += 1
                if lhs != rhs:
                    ok = False
                    if report.witness is None:
                        report.witness = {"pair": [str(x), str(y)], "monomial": list(mono)}
                    break
            report.results.append((str(x), str(y), ok))
    return report
