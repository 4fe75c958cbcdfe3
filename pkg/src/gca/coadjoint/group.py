"""Group-level coadjoint action, computed numerically on a circle grid.

A group element (phi, xi, eta1, eta2) stands for the product
``(id, xi, eta1, eta2) * (phi, 0, 0, 0)``: it acts on a dual vector by first
applying the diffeomorphism part and then the internal part. Composition of
circle maps does not preserve trig polynomials, so everything here is
sampled; derivatives of trig-polynomial inputs are still taken exactly
before sampling.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Sequence, Tuple, Union

import numpy as np

from ..kernel.trig import TrigPoly
from .dual import CurrentElement, DensityVector, coad_algebra
from .grid import (
    DEFAULT_GRID,
    CircleFunction,
    GridFunction,
    ScaledTrig,
    check_grid_size,
    constant_value,
    derivative,
    derivative_at,
    evaluate,
    grid_points,
    is_constant,
    sample,
)


class NotADiffeomorphism(ValueError):
    def __init__(self, theta: float, value: float):
        super().__init__(f"phi' = {value:.3g} <= 0 at theta = {theta:.6f}")
        self.theta = theta
        self.value = value


class NonConstantRotation(ValueError):
    pass


class Diffeo:
    """Orientation-preserving circle map theta -> theta + p(theta), p periodic."""

    def __init__(self, p: CircleFunction = 0, n: int = DEFAULT_GRID, check: bool = True):
        self.p = p
        if check:
            d1 = 1.0 + derivative(p, check_grid_size(n))
            k = int(np.argmin(d1))
            if d1[k] <= 0:
                raise NotADiffeomorphism(float(grid_points(n)[k]), float(d1[k]))

    @classmethod
    def identity(cls) -> "Diffeo":
        return cls(0, check=False)

    @classmethod
    def rotation(cls, c: float) -> "Diffeo":
        return cls(float(c), check=False)

    def __call__(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        return x + evaluate(self.p, x)

    def values(self, n: int) -> np.ndarray:
        return grid_points(n) + sample(self.p, n)

    def derivatives(self, n: int) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        return (1.0 + derivative(self.p, n, 1), derivative(self.p, n, 2), derivative(self.p, n, 3))

    def compose(self, inner: "Diffeo", n: int) -> "Diffeo":
        """self o inner, as a sampled map."""
        th = grid_points(n)
        pi = sample(inner.p, n)
        q = pi + evaluate(self.p, th + pi)
        return Diffeo(GridFunction(q), n)

    def inverse(self, n: int, tol: float = 1e-12, max_iter: int = 50) -> "Diffeo":
        """Pointwise Newton solve of phi(y) = theta on the grid."""
        th = grid_points(n)
        y = th - sample(self.p, n)
        for _ in range(max_iter):
            r = y + evaluate(self.p, y) - th
            dp = 1.0 + self._deriv_at(y)
            step = r / dp
            y = y - step
            if np.max(np.abs(step)) < tol:
                break
        else:
            raise ArithmeticError("Newton inversion did not converge")
        return Diffeo(GridFunction(y - th), n)

    def _deriv_at(self, x: np.ndarray) -> np.ndarray:
        return derivative_at(self.p, x)

    def displacement(self, n: int) -> np.ndarray:
        return sample(self.p, n)


def schwarzian(phi: Diffeo, n: int = DEFAULT_GRID) -> GridFunction:
    """phi'''/phi' - (3/2) (phi''/phi')^2 on the grid."""
    check_grid_size(n)
    d1, d2, d3 = phi.derivatives(n)
    k = int(np.argmin(d1))
    if d1[k] <= 0:
        raise NotADiffeomorphism(float(grid_points(n)[k]), float(d1[k]))
    return GridFunction(d3 / d1 - 1.5 * (d2 / d1) ** 2)


@dataclass
class GridDensity:
    """Dual vector with sampled density components."""

    gamma0: GridFunction
    gamma1: GridFunction
    gamma2: GridFunction
    gamma3: GridFunction
    a: float = 0.0
    b: float = 0.0

    @property
    def gammas(self) -> Tuple[GridFunction, GridFunction, GridFunction, GridFunction]:
        return (self.gamma0, self.gamma1, self.gamma2, self.gamma3)

    @property
    def n(self) -> int:
        return self.gamma0.n

    @classmethod
    def from_exact(cls, gamma: DensityVector, n: int) -> "GridDensity":
        return cls(*(GridFunction(g.sample(n)) for g in gamma.gammas), a=float(gamma.a), b=float(gamma.b))

    def max_diff(self, other: "GridDensity") -> float:
        d = [float(np.max(np.abs(x.samples - y.samples))) for x, y in zip(self.gammas, other.gammas)]
        return max(d + [abs(self.a - other.a), abs(self.b - other.b)])

    def to_json(self) -> dict:
        out = {"n": self.n}
        for i, g in enumerate(self.gammas):
            out[f"gamma{i}"] = [float(v) for v in g.samples]
        out["a"] = self.a
        out["b"] = self.b
        return out

    def to_csv(self) -> str:
        lines = ["theta,gamma0,gamma1,gamma2,gamma3"]
        th = grid_points(self.n)
        for k in range(self.n):
            vals = ",".join(repr(float(g.samples[k])) for g in self.gammas)
            lines.append(f"{th[k]!r},{vals}")
        return "\n".join(lines) + "\n"


Gammaish = Union[DensityVector, GridDensity]


@dataclass
class GroupElement:
    phi: Diffeo = field(default_factory=Diffeo.identity)
    xi: CircleFunction = 0
    eta1: CircleFunction = 0
    eta2: CircleFunction = 0

    @classmethod
    def identity(cls) -> "GroupElement":
        return cls()

    @classmethod
    def internal(cls, xi: CircleFunction = 0, eta1: CircleFunction = 0, eta2: CircleFunction = 0) -> "GroupElement":
        return cls(Diffeo.identity(), xi, eta1, eta2)

    @classmethod
    def diffeo(cls, p: CircleFunction, n: int = DEFAULT_GRID) -> "GroupElement":
        return cls(Diffeo(p, n))

    def sampled(self, n: int) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        return (self.phi.displacement(n), sample(self.xi, n), sample(self.eta1, n), sample(self.eta2, n))

    def max_diff(self, other: "GroupElement", n: int) -> float:
        a, b = self.sampled(n), other.sampled(n)
        return max(float(np.max(np.abs(x - y))) for x, y in zip(a, b))


def _nonzero(u: CircleFunction, n: int) -> bool:
    return bool(np.any(sample(u, n) != 0))


def internal_mul(left: Tuple[CircleFunction, ...], right: Tuple[CircleFunction, ...], n: int):
    """(xi, eta)(rho, sigma) = (xi + rho, sigma + R(rho) eta), R the rotation by rho.

    The law needs rho constant whenever eta is nonzero.
    """
    xi, e1, e2 = left
    rho, s1, s2 = right
    if (_nonzero(e1, n) or _nonzero(e2, n)) and not is_constant(rho, n):
        raise NonConstantRotation("multiplication law is only available for a constant rotation angle")
    r = sample(rho, n)
    c, s = np.cos(r), np.sin(r)
    E1, E2 = sample(e1, n), sample(e2, n)
    return (
        GridFunction(sample(xi, n) + r),
        GridFunction(sample(s1, n) + E1 * c - E2 * s),
        GridFunction(sample(s2, n) + E1 * s + E2 * c),
    )


def internal_inv(g: Tuple[CircleFunction, ...], n: int):
    xi, e1, e2 = g
    x = sample(xi, n)
    c, s = np.cos(x), np.sin(x)
    E1, E2 = sample(e1, n), sample(e2, n)
    return (GridFunction(-x), GridFunction(-E1 * c - E2 * s), GridFunction(E1 * s - E2 * c))


def conjugate_internal(phi: Diffeo, internal: Tuple[CircleFunction, ...], n: int):
    """(phi,0)(id, xi, eta) = (id, xi o phi, (eta o phi)/phi') (phi, 0)."""
    xi, e1, e2 = internal
    ph = phi.values(n)
    d1 = phi.derivatives(n)[0]
    return (
        GridFunction(evaluate(xi, ph)),
        GridFunction(evaluate(e1, ph) / d1),
        GridFunction(evaluate(e2, ph) / d1),
    )


def group_mul(g: GroupElement, h: GroupElement, n: int = DEFAULT_GRID) -> GroupElement:
    """Product with g(h(gamma)) = (g h)(gamma); the diffeo part of g h is h.phi o g.phi."""
    rho, s1, s2 = conjugate_internal(g.phi, (h.xi, h.eta1, h.eta2), n)
    if is_constant(h.xi, n):
        rho = constant_value(h.xi)
    xi, e1, e2 = internal_mul((g.xi, g.eta1, g.eta2), (rho, s1, s2), n)
    return GroupElement(h.phi.compose(g.phi, n), xi, e1, e2)


def group_inv(g: GroupElement, n: int = DEFAULT_GRID) -> GroupElement:
    inv_phi = g.phi.inverse(n)
    zeta = internal_inv((g.xi, g.eta1, g.eta2), n)
    xi, e1, e2 = conjugate_internal(inv_phi, zeta, n)
    return GroupElement(inv_phi, xi, e1, e2)


def _as_grid(gamma: Gammaish, n: int) -> Tuple[List[CircleFunction], float, float]:
    if isinstance(gamma, DensityVector):
        return list(gamma.gammas), float(gamma.a), float(gamma.b)
    if gamma.n != n:
        raise ValueError(f"grid mismatch: density has {gamma.n} points, requested {n}")
    return list(gamma.gammas), gamma.a, gamma.b


def coad_diffeo(phi: Diffeo, gamma: Gammaish, n: int = DEFAULT_GRID) -> GridDensity:
    """(a Theta(phi) + (g0 o phi) phi'^2, (g1 o phi) phi'^2, (g2 o phi) phi'^2, (g3 o phi) phi')."""
    gs, a, b = _as_grid(gamma, n)
    ph = phi.values(n)
    d1 = phi.derivatives(n)[0]
    theta = schwarzian(phi, n).samples
    g0 = a * theta + evaluate(gs[0], ph) * d1**2
    g1 = evaluate(gs[1], ph) * d1**2
    g2 = evaluate(gs[2], ph) * d1**2
    g3 = evaluate(gs[3], ph) * d1
    return GridDensity(GridFunction(g0), GridFunction(g1), GridFunction(g2), GridFunction(g3), a, b)


def coad_internal(xi: CircleFunction, eta1: CircleFunction, eta2: CircleFunction,
                  gamma: Gammaish, n: int = DEFAULT_GRID) -> GridDensity:
    """Action of exp(J_xi) exp(P1_eta1 + P2_eta2).

    gamma0 gains sum_k (gamma_k' eta_k + 2 gamma_k eta_k') + (gamma1 eta2 - gamma2 eta1 + gamma3) xi'
    + (b/2) xi'^2; (gamma1, gamma2) rotate by xi; gamma3 gains gamma1 eta2 - gamma2 eta1 + b xi'.
    """
    gs, a, b = _as_grid(gamma, n)
    G = [sample(g, n) for g in gs]
    dG1, dG2 = derivative(gs[1], n), derivative(gs[2], n)
    X, dX = sample(xi, n), derivative(xi, n)
    E1, E2 = sample(eta1, n), sample(eta2, n)
    dE1, dE2 = derivative(eta1, n), derivative(eta2, n)
    cross = G[1] * E2 - G[2] * E1
    g0 = G[0] + dG1 * E1 + 2 * G[1] * dE1 + dG2 * E2 + 2 * G[2] * dE2 + (cross + G[3]) * dX + 0.5 * b * dX**2
    c, s = np.cos(X), np.sin(X)
    g1 = G[1] * c + G[2] * s
    g2 = -G[1] * s + G[2] * c
    g3 = cross + G[3] + b * dX
    return GridDensity(GridFunction(g0), GridFunction(g1), GridFunction(g2), GridFunction(g3), a, b)


def coad_group(g: GroupElement, gamma: Gammaish, n: int = DEFAULT_GRID) -> GridDensity:
    check_grid_size(n)
    mid = coad_diffeo(g.phi, gamma, n)
    return coad_internal(g.xi, g.eta1, g.eta2, mid, n)


def exp_first_order(z: CurrentElement, eps: float, n: int = DEFAULT_GRID) -> GroupElement:
    """(theta + eps f0, eps f3, eps f1, eps f2): exp(eps z) up to O(eps^2)."""
    def scaled(u: TrigPoly):
        return ScaledTrig(u, eps) if u.degree else float(eps * u.constant)

    phi = Diffeo(ScaledTrig(z.f0, eps), n) if z.f0 else Diffeo.identity()
    return GroupElement(phi, scaled(z.f3), scaled(z.f1), scaled(z.f2))


def _extrapolate_to_zero(xs: List[float], ys: List[np.ndarray]) -> np.ndarray:
    """Neville evaluation at 0 of the interpolating polynomial through (xs, ys)."""
    p = list(ys)
    m = len(xs)
    for k in range(1, m):
        for i in range(m - k):
            p[i] = (xs[i + k] * p[i] - xs[i] * p[i + 1]) / (xs[i + k] - xs[i])
    return p[0]


@dataclass
class LinearizeReport:
    eps: List[float]
    deviations: List[float]
    ratios: List[float]
    limit_error: float
    exact_floor: float
    passed: bool

    def to_json(self) -> dict:
        return {
            "eps": self.eps,
            "deviations": self.deviations,
            "ratios": self.ratios,
            "limit_error": self.limit_error,
            "first_order_exact": max(self.deviations) <= self.exact_floor,
            "pass": self.passed,
        }


def linearize_check(
    z: CurrentElement,
    gamma: DensityVector,
    eps_list: Sequence[float] = (1e-2, 5e-3, 2.5e-3),
    n: int = DEFAULT_GRID,
    ratio_tol: float = 0.1,
    limit_tol: float = 1e-6,
    exact_floor: float = 1e-10,
) -> LinearizeReport:
    """Finite-difference comparison of the group action with the algebra action.

    D(eps) = [coad_group(exp(eps z), gamma) - gamma]/eps - z(gamma) on the
    grid. Successive halvings of eps must scale the deviation by 1/2 (within
    ``ratio_tol``), and the value at eps = 0 of the polynomial interpolating
    D through all sampled eps must vanish within ``limit_tol``. A direction whose group action is exactly affine
    in eps has deviations at roundoff level (below ``exact_floor``); the ratio
    test is then not meaningful and only the limit test applies.
    """
    base = GridDensity.from_exact(gamma, n)
    target = GridDensity.from_exact(coad_algebra(z, gamma), n)
    diffs = []
    for eps in eps_list:
        moved = coad_group(exp_first_order(z, eps, n), gamma, n)
        comps = np.stack([(m.samples - b.samples) / eps - t.samples
                          for m, b, t in zip(moved.gammas, base.gammas, target.gammas)])
        diffs.append(comps)
    devs = [float(np.max(np.abs(c))) for c in diffs]
    ratios = [devs[i + 1] / devs[i] if devs[i] > 0 else float("nan") for i in range(len(devs) - 1)]
    limit = float(np.max(np.abs(_extrapolate_to_zero(list(eps_list), diffs))))
    exact = max(devs) <= exact_floor
    ratio_ok = exact or all(abs(r - 0.5) <= ratio_tol for r in ratios)
    return LinearizeReport(list(eps_list), devs, ratios, limit, exact_floor, ratio_ok and limit <= limit_tol)
