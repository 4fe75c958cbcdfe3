import random
from fractions import Fraction as F
from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from gca.algebra import bracket, generators
from gca.coadjoint import (
    CurrentElement,
    Density,
    DensityVector,
    Diffeo,
    GridDensity,
    GroupElement,
    NonConstantRotation,
    NotADiffeomorphism,
    coad_algebra,
    coad_group,
    current_bracket,
    density_act,
    group_inv,
    group_mul,
    isotropy_solve,
    linearize_check,
    mode_current,
    pairing,
    schwarzian,
)
from gca.coadjoint.checks import (
    check_identities,
    duality_residual,
    random_current,
    random_density,
    random_trig,
    representation_residual,
)
from gca.coadjoint.dual import complex_bracket, strip_central
from gca.coadjoint.grid import grid_points
from gca.kernel import TrigPoly, rank, trig_mean

N = 1024
cos, sin = TrigPoly.cos_k, TrigPoly.sin_k
TH = grid_points(N)


def grid(fn):
    return fn(TH)


# pairing and densities


def test_pairing_examples():
    assert pairing(DensityVector(gamma0=1), CurrentElement(f0=1)) == 1
    assert pairing(DensityVector(gamma3=cos(1)), CurrentElement(f3=cos(1))) == F(1, 2)
    assert pairing(DensityVector(a=1), CurrentElement(alpha=1)) == 1
    assert pairing(DensityVector(b=F(2, 3)), CurrentElement(beta=3, f1=cos(2))) == 2


def test_density_act_examples():
    phi = TrigPoly(2, [1], [F(1, 3)])
    assert density_act(TrigPoly(1), Density(F(5, 2), phi)).profile == phi.diff()
    assert density_act(random_trig(random.Random(0), 2), Density(0, 1)).profile == TrigPoly()
    assert density_act(cos(1), Density(1, sin(1))).profile == TrigPoly(1)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.fractions(min_value=-3, max_value=3, max_denominator=4))
def test_density_duality(seed, lam):
    rng = random.Random(seed)
    f, u, v = (random_trig(rng, rng.randint(0, 3)) for _ in range(3))
    du = density_act(f, Density(-1 - lam, u)).profile
    dv = density_act(f, Density(lam, v)).profile
    assert trig_mean(du * v) + trig_mean(u * dv) == 0


# algebra action


def test_coad_algebra_examples():
    out = coad_algebra(CurrentElement(f0=cos(1)), DensityVector(gamma0=1))
    assert out.gamma0 == sin(1, -2)
    gamma = random_density(random.Random(3), 3)
    out = coad_algebra(CurrentElement(f3=1), gamma)
    assert out.gammas == (TrigPoly(), gamma.gamma2, -gamma.gamma1, TrigPoly())
    assert coad_algebra(random_current(random.Random(4), 3), DensityVector()) == DensityVector()


def test_central_term_of_virasoro_column():
    out = coad_algebra(CurrentElement(f0=sin(2)), DensityVector(a=3))
    assert out.gamma0 == cos(2, -24)
    assert (out.a, out.b) == (0, 0)


def test_duality_and_representation_examples():
    rng = random.Random(8)
    for _ in range(10):
        x, y, g = random_current(rng, 3), random_current(rng, 3), random_density(rng, 3)
        assert duality_residual(x, y, g) == 0
        assert representation_residual(x, y, g) == DensityVector()


def test_wrong_sign_breaks_duality():
    # the P2 column's gamma3 entry is +gamma1 f2; the opposite sign fails the identity
    x, y = CurrentElement(f2=TrigPoly(1)), CurrentElement(f3=cos(1))
    g = DensityVector(gamma1=TrigPoly(1, [2]))
    good = coad_algebra(x, g)
    bad = DensityVector(good.gamma0, good.gamma1, good.gamma2, good.gamma3 - (g.gamma1 * x.f2).scale(2))
    assert pairing(good, y) == -pairing(g, current_bracket(x, y))
    assert pairing(bad, y) != -pairing(g, current_bracket(x, y))


def test_check_identities_hundred_trials():
    rep = check_identities(100, seed=0, degree=3)
    assert rep.passed
    assert rep.to_json()["trials"] == 100


def _as_complex(lab):
    return mode_current(lab)


@pytest.mark.parametrize("pair", list(product(generators(3), repeat=2))[::7])
def test_fourier_modes_recover_structure_constants(pair):
    x, y = pair
    re, im = complex_bracket(_as_complex(x), _as_complex(y))
    want_re, want_im = CurrentElement(), CurrentElement()
    for z, c in bracket(x, y):
        if z.is_central:
            continue
        zr, zi = _as_complex(z)
        want_re, want_im = want_re + zr.scale(c), want_im + zi.scale(c)
    assert strip_central(re) == want_re
    assert strip_central(im) == want_im


def test_fourier_modes_all_pairs():
    for x, y in product(generators(3), repeat=2):
        re, im = complex_bracket(mode_current(x), mode_current(y))
        want = [CurrentElement(), CurrentElement()]
        for z, c in bracket(x, y):
            if not z.is_central:
                zr, zi = mode_current(z)
                want = [want[0] + zr.scale(c), want[1] + zi.scale(c)]
        assert (strip_central(re), strip_central(im)) == tuple(want), (x, y)


# group laws


def test_internal_product_examples():
    g = GroupElement.internal(xi=TrigPoly(F(1, 2), [1]))
    h = GroupElement.internal(xi=sin(2))
    gh = group_mul(g, h, N)
    assert np.allclose(gh.xi.samples, grid(lambda t: 0.5 + np.cos(t) + np.sin(2 * t)), atol=1e-14)
    assert np.allclose(gh.eta1.samples, 0) and np.allclose(gh.eta2.samples, 0)


def test_rotation_mixing_law():
    g = GroupElement.internal(eta1=cos(1), eta2=TrigPoly(2))
    rho = 0.7
    h = GroupElement.internal(xi=rho, eta1=sin(1))
    gh = group_mul(g, h, N)
    e1, e2 = np.cos(TH), 2.0
    assert np.allclose(gh.xi.samples, rho)
    assert np.allclose(gh.eta1.samples, np.sin(TH) + e1 * np.cos(rho) - e2 * np.sin(rho), atol=1e-14)
    assert np.allclose(gh.eta2.samples, e1 * np.sin(rho) + e2 * np.cos(rho), atol=1e-14)


def test_non_constant_rotation_is_rejected():
    g = GroupElement.internal(eta1=1)
    h = GroupElement.internal(xi=cos(1))
    with pytest.raises(NonConstantRotation):
        group_mul(g, h, N)


def test_conjugation_by_rotation():
    c = 0.4
    g = GroupElement(Diffeo.rotation(c))
    h = GroupElement.internal(xi=sin(1), eta1=cos(2), eta2=TrigPoly(0, [1]))
    gh = group_mul(g, h, N)
    assert np.allclose(gh.xi.samples, np.sin(TH + c), atol=1e-13)
    assert np.allclose(gh.eta1.samples, np.cos(2 * (TH + c)), atol=1e-13)
    assert np.allclose(gh.eta2.samples, np.cos(TH + c), atol=1e-13)


def _small_element(rng, with_diffeo=True):
    p = random_trig(rng, 2).scale(F(1, 40)) if with_diffeo else 0
    return GroupElement(
        Diffeo(p, N) if with_diffeo else Diffeo.identity(),
        float(random_trig(rng, 0).constant),
        random_trig(rng, 2).scale(F(1, 5)),
        random_trig(rng, 2).scale(F(1, 5)),
    )


@pytest.mark.parametrize("seed", range(3))
def test_inverse(seed):
    g = _small_element(random.Random(seed))
    e = GroupElement.identity()
    assert group_mul(g, group_inv(g, N), N).max_diff(e, N) < 1e-10
    assert group_mul(group_inv(g, N), g, N).max_diff(e, N) < 1e-10


@pytest.mark.parametrize("seed", range(3))
def test_group_action_property(seed):
    rng = random.Random(seed)
    g, h = _small_element(rng), _small_element(rng)
    gamma = random_density(rng, 3)
    lhs = coad_group(g, coad_group(h, gamma, N), N)
    rhs = coad_group(group_mul(g, h, N), gamma, N)
    assert lhs.max_diff(rhs) <= 1e-8


def test_coad_group_examples():
    gamma = random_density(random.Random(5), 3)
    same = coad_group(GroupElement.identity(), gamma, N)
    assert same.max_diff(GridDensity.from_exact(gamma, N)) < 1e-13
    turned = coad_group(GroupElement.internal(xi=np.pi / 2), gamma, N)
    want = GridDensity.from_exact(DensityVector(gamma.gamma0, gamma.gamma2, -gamma.gamma1, gamma.gamma3,
                                                gamma.a, gamma.b), N)
    assert turned.max_diff(want) < 1e-12
    phi = Diffeo(TrigPoly(0, [F(1, 10)], [F(-1, 20), F(1, 30)]), N)
    out = coad_group(GroupElement(phi), DensityVector(a=1), N)
    assert np.max(np.abs(out.gamma0.samples - schwarzian(phi, N).samples)) < 1e-13


def test_not_a_diffeomorphism_names_a_witness():
    with pytest.raises(NotADiffeomorphism) as info:
        Diffeo(sin(1).scale(2), N)
    assert info.value.value <= 0
    assert np.cos(info.value.theta) * 2 + 1 <= 1e-2


# schwarzian


def test_schwarzian_of_rotation_vanishes():
    assert schwarzian(Diffeo.rotation(1.3), N).max_abs() <= 1e-12
    assert schwarzian(Diffeo.identity(), N).max_abs() == 0


def test_schwarzian_first_order():
    eps = 1e-3
    s = schwarzian(Diffeo(sin(1).scale(F(1, 1000)), N))
    assert np.max(np.abs(s.samples + eps * np.cos(TH))) <= 1e-5


@pytest.mark.parametrize("seed", range(4))
def test_schwarzian_cocycle_identity(seed):
    rng = random.Random(seed)

    def small():
        u = random_trig(rng, 3)
        bound = float(sum(abs(c) * (k + 1) for k, c in enumerate(u.cos)) + sum(abs(c) * (k + 1) for k, c in enumerate(u.sin)))
        return Diffeo(u.scale(F(3, 10) / F(bound).limit_denominator(10**6)) if bound else u, N)

    phi, psi = small(), small()
    assert max(np.max(np.abs(d.derivatives(N)[0] - 1)) for d in (phi, psi)) <= 0.3 + 1e-9
    lhs = schwarzian(phi.compose(psi, N), N).samples
    rhs = schwarzian(phi, N)(psi.values(N)) * psi.derivatives(N)[0] ** 2 + schwarzian(psi, N).samples
    assert np.max(np.abs(lhs - rhs)) <= 1e-9


# linearization


def _gamma():
    return DensityVector(TrigPoly(1, [F(1, 2)]), TrigPoly(F(1, 3), [], [1]), TrigPoly(-1, [0, F(1, 4)]),
                         TrigPoly(F(1, 2), [1]), a=F(3, 2), b=F(2, 5))


@pytest.mark.parametrize(
    "z",
    [
        CurrentElement(f0=sin(1)),
        CurrentElement(f3=TrigPoly(1)),
        CurrentElement(f3=cos(1)),
        CurrentElement(f1=cos(1)),
        CurrentElement(f2=TrigPoly(0, [], [1])),
    ],
    ids=["L", "J", "J-varying", "P1", "P2"],
)
def test_linearize_check(z):
    rep = linearize_check(z, _gamma(), (1e-2, 5e-3, 2.5e-3), N)
    assert rep.passed, rep.to_json()
    assert rep.limit_error <= 1e-6


def test_linearize_check_detects_a_wrong_column(monkeypatch):
    import gca.coadjoint.group as grp

    real = grp.coad_algebra
    monkeypatch.setattr(grp, "coad_algebra", lambda z, g: real(z, g) + DensityVector(gamma3=z.f1))
    assert not linearize_check(CurrentElement(f1=cos(1)), _gamma(), n=N).passed


# isotropy


def _span_equal(a, b):
    def flat(basis):
        return [[c for p in f for c in (p.constant, *p.cos, *p.sin)] for f in basis]

    def pad(rows, w):
        return [r + [0] * (w - len(r)) for r in rows]

    w = max(len(r) for r in flat(a) + flat(b))
    return rank(pad(flat(a), w)) == rank(pad(flat(b), w)) == rank(pad(flat(a) + flat(b), w))


def test_isotropy_constant_example():
    res = isotropy_solve(DensityVector(gamma1=1, gamma2=1, a=2, b=-3), 4)
    assert res.dimension == 2 and res.stable
    one, zero = TrigPoly(1), TrigPoly()
    assert _span_equal(res.basis, [(one, zero, zero, zero), (zero, one, one, zero)])


def test_isotropy_of_zero_is_everything():
    d = 3
    res = isotropy_solve(DensityVector(), d)
    assert res.dimension == 4 * (2 * d + 1)
    assert not res.stable


def test_isotropy_generic_degree_two():
    g0 = TrigPoly(F(1, 2), [1, F(-1, 3)], [F(2, 5), 1])
    g3 = TrigPoly(-1, [F(1, 4), 2], [0, F(3, 7)])
    res = isotropy_solve(DensityVector(g0, 1, 1, g3), 4)
    assert res.dimension == 2 and res.stable
    assert res.f0_constant and res.f3_vanishes
    # one solution has f0 = 0; then f1 = f2 are equal constants
    for f0, f1, f2, f3 in res.basis:
        if f0.is_zero():
            assert f1.degree == 0 and f1 == f2


def test_isotropy_degree_precondition():
    with pytest.raises(ValueError):
        isotropy_solve(DensityVector(gamma0=cos(3)), 4)


def test_current_json_round_trip():
    x = random_current(random.Random(1), 2)
    assert CurrentElement.from_json(x.to_json()) == x
    g = random_density(random.Random(2), 2)
    assert DensityVector.from_json(g.to_json()) == g
