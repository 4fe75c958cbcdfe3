"""Isotropy algebra of a dual vector, on a finite trig-polynomial truncation.

Solves (L_{f0} + J_{f3} - P1_{f1} - P2_{f2})(gamma) = 0 for profiles
f0..f3 of degree <= D. Every coefficient of every output harmonic is an
equation, so the only truncation is on the unknowns.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Tuple

from ..kernel.linalg import nullspace
from ..kernel.trig import TrigPoly
from .dual import CurrentElement, DensityVector, coad_algebra

Profiles = Tuple[TrigPoly, TrigPoly, TrigPoly, TrigPoly]


def _basis_poly(j: int, degree: int) -> TrigPoly:
    if j == 0:
        return TrigPoly(1)
    if j <= degree:
        return TrigPoly.cos_k(j)
    return TrigPoly.sin_k(j - degree)


def _coeffs(u: TrigPoly, width: int) -> List[Fraction]:
    c = [u.constant] + list(u.cos) + [Fraction(0)] * (width - u.degree)
    s = list(u.sin) + [Fraction(0)] * (width - u.degree)
    return c + s


def _from_coeffs(v: List[Fraction], degree: int) -> TrigPoly:
    return TrigPoly(v[0], v[1 : degree + 1], v[degree + 1 : 2 * degree + 1])


def isotropy_current(f: Profiles) -> CurrentElement:
    f0, f1, f2, f3 = f
    return CurrentElement(f0, -f1, -f2, f3)


@dataclass
class IsotropyResult:
    degree: int
    dimension: int
    basis: List[Profiles]
    stable: bool
    next_dimension: int
    notes: List[str] = field(default_factory=list)

    @property
    def f3_vanishes(self) -> bool:
        return all(f[3].is_zero() for f in self.basis)

    @property
    def f0_constant(self) -> bool:
        return all(f[0].degree == 0 for f in self.basis)

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "dimension": self.dimension,
            "stable": self.stable,
            "dimension_at_degree_plus_one": self.next_dimension,
            "f0_constant": self.f0_constant,
            "f3_zero": self.f3_vanishes,
            "basis": [{f"f{i}": p.to_json() for i, p in enumerate(f)} for f in self.basis],
            "notes": self.notes,
        }


def _solve(gamma: DensityVector, degree: int) -> List[Profiles]:
    per = 2 * degree + 1
    width = degree + gamma.degree
    columns = []
    for slot in range(4):
        for j in range(per):
            prof = [TrigPoly()] * 4
            prof[slot] = _basis_poly(j, degree)
            out = coad_algebra(isotropy_current(tuple(prof)), gamma)
            col = []
            for g in out.gammas:
                col.extend(_coeffs(g, width))
            columns.append(col)
    nrows = len(columns[0])
    rows = [[columns[c][r] for c in range(len(columns))] for r in range(nrows)]
    rows = [r for r in rows if any(r)]
    null = nullspace(rows, len(columns))
    basis = []
    for v in null:
        basis.append(tuple(_from_coeffs(v[s * per : (s + 1) * per], degree) for s in range(4)))
    return basis


def isotropy_solve(gamma: DensityVector, degree: int) -> IsotropyResult:
    """Exact nullspace basis of the isotropy equations up to the given degree.

    The dimension is also computed at degree + 1; a change is reported as an
    unstable (truncation-dependent) result.
    """
    if degree < gamma.degree + 2:
        raise ValueError(f"degree must be at least degree(gamma) + 2 = {gamma.degree + 2}")
    basis = _solve(gamma, degree)
    nxt = len(_solve(gamma, degree + 1))
    res = IsotropyResult(degree, len(basis), basis, nxt == len(basis), nxt)
    if not res.stable:
        res.notes.append("nullspace dimension depends on the truncation degree")
    return res
