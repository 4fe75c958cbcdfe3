"""Randomized exact checks of the algebra-level coadjoint identities."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List

from ..kernel.trig import TrigPoly
from .dual import CurrentElement, DensityVector, coad_algebra, current_bracket, pairing


def random_rational(rng: random.Random, height: int = 9) -> Fraction:
    return Fraction(rng.randint(-height, height), rng.randint(1, height))


def random_trig(rng: random.Random, degree: int) -> TrigPoly:
    return TrigPoly(
        random_rational(rng),
        [random_rational(rng) for _ in range(degree)],
        [random_rational(rng) for _ in range(degree)],
    )


def random_current(rng: random.Random, degree: int) -> CurrentElement:
    return CurrentElement(*(random_trig(rng, rng.randint(0, degree)) for _ in range(4)),
                          alpha=random_rational(rng), beta=random_rational(rng))


def random_density(rng: random.Random, degree: int) -> DensityVector:
    return DensityVector(*(random_trig(rng, rng.randint(0, degree)) for _ in range(4)),
                         a=random_rational(rng), b=random_rational(rng))


def duality_residual(x: CurrentElement, y: CurrentElement, gamma: DensityVector) -> Fraction:
    """<x(gamma), y> + <gamma, [x, y]>."""
    return pairing(coad_algebra(x, gamma), y) + pairing(gamma, current_bracket(x, y))


def representation_residual(x: CurrentElement, y: CurrentElement, gamma: DensityVector) -> DensityVector:
    """x(y(gamma)) - y(x(gamma)) - [x, y](gamma)."""
    lhs = coad_algebra(x, coad_algebra(y, gamma)) - coad_algebra(y, coad_algebra(x, gamma))
    return lhs - coad_algebra(current_bracket(x, y), gamma)


@dataclass
class IdentityReport:
    trials: int
    seed: int
    degree: int
    duality_failures: List[int] = field(default_factory=list)
    representation_failures: List[int] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.duality_failures and not self.representation_failures

    def to_json(self) -> dict:
        return {
            "trials": self.trials,
            "seed": self.seed,
            "degree": self.degree,
            "duality_failures": self.duality_failures,
            "representation_failures": self.representation_failures,
            "pass": self.passed,
        }


def check_identities(trials: int = 100, seed: int = 0, degree: int = 3) -> IdentityReport:
    rng = random.Random(seed)
    rep = IdentityReport(trials, seed, degree)
    zero = DensityVector()
    for t in range(trials):
        x, y = random_current(rng, degree), random_current(rng, degree)
        gamma = random_density(rng, degree)
        if duality_residual(x, y, gamma) != 0:
            rep.duality_failures.append(t)
        if representation_residual(x, y, gamma) != zero:
            rep.representation_failures.append(t)
    return rep
