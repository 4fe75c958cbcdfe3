"""Exact algebra-level objects: currents, the regular dual and the coadjoint action.

Currents are ``X = L_{f0} + P1_{f1} + P2_{f2} + J_{f3} + alpha*Ca + beta*Cb``
with trig-polynomial profiles; dual vectors are ``(gamma0..gamma3, a, b)``.
The circle integral is normalized (total mass 1), so every pairing is rational.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Tuple

from ..algebra import GeneratorLabel
from ..kernel.rational import format_rational, to_rational
from ..kernel.trig import TrigPoly, trig_mean

ZERO = TrigPoly()


def _tp(x) -> TrigPoly:
    if isinstance(x, TrigPoly):
        return x
    return TrigPoly(to_rational(x) if isinstance(x, str) else x)


@dataclass(frozen=True)
class CurrentElement:
    f0: TrigPoly = ZERO
    f1: TrigPoly = ZERO
    f2: TrigPoly = ZERO
    f3: TrigPoly = ZERO
    alpha: Fraction = Fraction(0)
    beta: Fraction = Fraction(0)

    def __post_init__(self):
        for name in ("f0", "f1", "f2", "f3"):
            object.__setattr__(self, name, _tp(getattr(self, name)))
        object.__setattr__(self, "alpha", Fraction(self.alpha))
        object.__setattr__(self, "beta", Fraction(self.beta))

    @classmethod
    def L(cls, f) -> "CurrentElement":
        return cls(f0=f)

    @classmethod
    def P1(cls, f) -> "CurrentElement":
        return cls(f1=f)

    @classmethod
    def P2(cls, f) -> "CurrentElement":
        return cls(f2=f)

    @classmethod
    def J(cls, f) -> "CurrentElement":
        return cls(f3=f)

    def __add__(self, o: "CurrentElement") -> "CurrentElement":
        return CurrentElement(self.f0 + o.f0, self.f1 + o.f1, self.f2 + o.f2, self.f3 + o.f3,
                              self.alpha + o.alpha, self.beta + o.beta)

    def __neg__(self) -> "CurrentElement":
        return self.scale(-1)

    def __sub__(self, o: "CurrentElement") -> "CurrentElement":
        return self + (-o)

    def scale(self, q) -> "CurrentElement":
        q = Fraction(q)
        return CurrentElement(self.f0 * q, self.f1 * q, self.f2 * q, self.f3 * q, self.alpha * q, self.beta * q)

    def profiles(self) -> Tuple[TrigPoly, TrigPoly, TrigPoly, TrigPoly]:
        return (self.f0, self.f1, self.f2, self.f3)

    def to_json(self) -> dict:
        return {
            "f0": self.f0.to_json(), "f1": self.f1.to_json(), "f2": self.f2.to_json(), "f3": self.f3.to_json(),
            "alpha": format_rational(self.alpha), "beta": format_rational(self.beta),
        }

    @classmethod
    def from_json(cls, obj: Mapping) -> "CurrentElement":
        return cls(
            *(TrigPoly.from_json(obj[k]) if k in obj else ZERO for k in ("f0", "f1", "f2", "f3")),
            alpha=to_rational(obj.get("alpha", 0)),
            beta=to_rational(obj.get("beta", 0)),
        )


@dataclass(frozen=True)
class DensityVector:
    """Element (gamma0, gamma1, gamma2, gamma3, a, b) of the regular dual."""

    gamma0: TrigPoly = ZERO
    gamma1: TrigPoly = ZERO
    gamma2: TrigPoly = ZERO
    gamma3: TrigPoly = ZERO
    a: Fraction = Fraction(0)
    b: Fraction = Fraction(0)

    def __post_init__(self):
        for name in ("gamma0", "gamma1", "gamma2", "gamma3"):
            object.__setattr__(self, name, _tp(getattr(self, name)))
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))

    @property
    def gammas(self) -> Tuple[TrigPoly, TrigPoly, TrigPoly, TrigPoly]:
        return (self.gamma0, self.gamma1, self.gamma2, self.gamma3)

    @property
    def degree(self) -> int:
        return max(g.degree for g in self.gammas)

    def __add__(self, o: "DensityVector") -> "DensityVector":
        return DensityVector(*(x + y for x, y in zip(self.gammas, o.gammas)), a=self.a + o.a, b=self.b + o.b)

    def __neg__(self) -> "DensityVector":
        return DensityVector(*(-g for g in self.gammas), a=-self.a, b=-self.b)

    def __sub__(self, o: "DensityVector") -> "DensityVector":
        return self + (-o)

    def to_json(self) -> dict:
        out = {f"gamma{i}": g.to_json() for i, g in enumerate(self.gammas)}
        out["a"] = format_rational(self.a)
        out["b"] = format_rational(self.b)
        return out

    @classmethod
    def from_json(cls, obj: Mapping) -> "DensityVector":
        gs = [TrigPoly.from_json(obj[f"gamma{i}"]) if f"gamma{i}" in obj else ZERO for i in range(4)]
        return cls(*gs, a=to_rational(obj.get("a", 0)), b=to_rational(obj.get("b", 0)))


@dataclass(frozen=True)
class Density:
    """phi(t) dt^{-lambda}: an element of the density module F_lambda."""

    lam: Fraction
    profile: TrigPoly

    def __post_init__(self):
        object.__setattr__(self, "lam", Fraction(self.lam))
        object.__setattr__(self, "profile", _tp(self.profile))


def density_act(f: TrigPoly, d: Density) -> Density:
    """L_f (phi dt^{-lambda}) = (f phi' - lambda f' phi) dt^{-lambda}."""
    phi = d.profile
    return Density(d.lam, f * phi.diff() - (f.diff() * phi).scale(d.lam))


def pairing(gamma: DensityVector, x: CurrentElement) -> Fraction:
    total = gamma.a * x.alpha + gamma.b * x.beta
    for g, f in zip(gamma.gammas, x.profiles()):
        total += trig_mean(g * f)
    return total


def virasoro_cocycle(f: TrigPoly, g: TrigPoly) -> Fraction:
    """Central Ca-component of [L_f, L_g]: mean(f g''')."""
    return trig_mean(f * g.diff(3))


def current_cocycle(f: TrigPoly, g: TrigPoly) -> Fraction:
    """Central Cb-component of [J_f, J_g]: mean(f g')."""
    return trig_mean(f * g.diff())


def current_bracket(x: CurrentElement, y: CurrentElement) -> CurrentElement:
    """Bracket of the current algebra with both central terms.

    [L_f, L_g] = L_{fg'-f'g}, [L_f, P_g] = P_{fg'-f'g}, [L_f, J_g] = J_{fg'},
    [J_f, P^i_g] = -sum_k eps_ik P^k_{fg}, plus the central terms whose
    normalization is the one paired with a and b by the coadjoint action.
    """
    f0, f1, f2, f3 = x.profiles()
    g0, g1, g2, g3 = y.profiles()
    d = lambda u: u.diff()
    l0 = f0 * d(g0) - d(f0) * g0
    p1 = f0 * d(g1) - d(f0) * g1 - (g0 * d(f1) - d(g0) * f1) + f3 * g2 - g3 * f2
    p2 = f0 * d(g2) - d(f0) * g2 - (g0 * d(f2) - d(g0) * f2) - f3 * g1 + g3 * f1
    j = f0 * d(g3) - g0 * d(f3)
    alpha = virasoro_cocycle(f0, g0)
    beta = current_cocycle(f3, g3)
    return CurrentElement(l0, p1, p2, j, alpha, beta)


def coad_algebra(x: CurrentElement, gamma: DensityVector) -> DensityVector:
    """Infinitesimal coadjoint action X(gamma), defined by <X(gamma), Y> = -<gamma, [X, Y]>.

    The central coordinates are invariant, so their velocity is zero.
    """
    g0, g1, g2, g3 = gamma.gammas
    a, b = gamma.a, gamma.b
    f0, f1, f2, f3 = x.profiles()
    d = lambda u: u.diff()
    df0 = d(f0)
    # L_{f0}
    c0 = f0.diff(3).scale(a) + (g0 * df0).scale(2) + d(g0) * f0
    c1 = (g1 * df0).scale(2) + d(g1) * f0
    c2 = (g2 * df0).scale(2) + d(g2) * f0
    c3 = g3 * df0 + d(g3) * f0
    # J_{f3}
    c0 = c0 + g3 * d(f3)
    c1 = c1 + g2 * f3
    c2 = c2 - g1 * f3
    c3 = c3 + d(f3).scale(b)
    # P1_{f1}
    c0 = c0 + (g1 * d(f1)).scale(2) + d(g1) * f1
    c3 = c3 - g2 * f1
    # P2_{f2}; the gamma3 entry is +gamma1 f2 (fixed by the pairing identity)
    c0 = c0 + (g2 * d(f2)).scale(2) + d(g2) * f2
    c3 = c3 + g1 * f2
    return DensityVector(c0, c1, c2, c3, 0, 0)


# Fourier modes: the basis elements of the mode algebra as complex currents.
# Each entry is (real part, imaginary part).

def mode_current(lab: GeneratorLabel) -> Tuple[CurrentElement, CurrentElement]:
    """Complex current realizing a mode generator.

    L_m -> L_{i e^{imt}}, J_m -> J_{-e^{imt}}, P^i_m -> P^i_{e^{imt}}; with this
    dictionary the centerless current bracket reproduces the mode relations.
    """
    f, m = lab.family, lab.mode
    c, s = TrigPoly.cos_k(m), TrigPoly.sin_k(m)
    if f == "L":
        # i(cos + i sin) = -sin + i cos
        return CurrentElement.L(-s), CurrentElement.L(c)
    if f == "J":
        return CurrentElement.J(-c), CurrentElement.J(-s)
    if f == "P1":
        return CurrentElement.P1(c), CurrentElement.P1(s)
    if f == "P2":
        return CurrentElement.P2(c), CurrentElement.P2(s)
    raise ValueError(f"no current for central label {lab}")


def complex_bracket(x: Tuple[CurrentElement, CurrentElement], y: Tuple[CurrentElement, CurrentElement]):
    xr, xi = x
    yr, yi = y
    re = current_bracket(xr, yr) - current_bracket(xi, yi)
    im = current_bracket(xr, yi) + current_bracket(xi, yr)
    return re, im


def strip_central(x: CurrentElement) -> CurrentElement:
    return CurrentElement(x.f0, x.f1, x.f2, x.f3)
