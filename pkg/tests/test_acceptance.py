"""Acceptance gate: one test per criterion, each at its stated tolerance.

The terminal summary prints a PASS/FAIL line per criterion.
"""

import io
import json
import random
import time
from fractions import Fraction as F

import numpy as np
import pytest

from gca.algebra import P, vf_realize_check
from gca.cli import run
from gca.coadjoint import (
    CurrentElement,
    DensityVector,
    Diffeo,
    isotropy_solve,
    linearize_check,
    schwarzian,
)
from gca.coadjoint.checks import check_identities, random_trig
from gca.cocycle import exotic_check, solve_cocycles
from gca.kac import gram_det, gram_kernel, kac_power, random_weights, rho_norm
from gca.kernel import TrigPoly, rank
from gca.verma import VermaVector, pbw_basis

criterion = pytest.mark.criterion


def timed(fn, *args, **kwargs):
    t = time.perf_counter()
    out = fn(*args, **kwargs)
    return out, time.perf_counter() - t


@criterion(1, "dimension table")
def test_dimension_table(detail):
    dims, secs = timed(lambda: [len(pbw_basis(n)) for n in range(6)])
    detail(f"{dims}")
    assert dims == [1, 4, 14, 40, 105, 252]
    assert secs < 1


@criterion(2, "Kac power formula")
def test_kac_power_formula(detail):
    powers, secs = timed(lambda: [kac_power(n).power for n in (1, 2, 3)])
    detail(f"{powers}")
    assert powers == [2, 12, 48]
    assert all(isinstance(p, int) for p in powers)
    assert secs < 1


def _quotients(level, rng, draws=5):
    power = kac_power(level).power
    ks = []
    for _ in range(draws):
        pt = random_weights(rng)
        d = gram_det(level, pt)
        ks.append(d / rho_norm(pt) ** power)
        # fresh central charges and zero-mode weights, same rho
        alt = random_weights(rng, rho=(pt["rho1"], pt["rho2"]))
        assert gram_det(level, alt) == d, (level, pt, alt)
    return ks


@criterion(3, "Kac determinant factorization")
def test_kac_factorization(detail):
    rng = random.Random(2024)
    seen = {}
    for level in (1, 2, 3):
        ks, secs = timed(_quotients, level, rng)
        assert len(set(ks)) == 1, (level, ks)
        if level == 3:
            assert secs < 60
        seen[level] = ks[0]
    out, err = io.StringIO(), io.StringIO()
    t = time.perf_counter()
    code = run(["kac-verify", "--level", "4", "--trials", "5", "--seed", "1", "--allow-heavy"], out, err)
    secs4 = time.perf_counter() - t
    rep = json.loads(out.getvalue())
    detail(
        "K1=%s K2=2^18 K3=2^72*3^6 level4 power=%s pass=%s in %.0f s"
        % (seen[1], rep["power_formula"], rep["pass"], secs4)
    )
    assert seen[2] == 2**18 and seen[3] == 2**72 * 3**6
    assert code == 0 and rep["pass"] and rep["power_formula"] == 158
    assert secs4 < 15 * 60


@criterion(4, "irreducibility off the rho cone")
def test_irreducibility(detail):
    rng = random.Random(7)
    for level in (1, 2, 3):
        for _ in range(3):
            pt = random_weights(rng)
            assert rho_norm(pt) != 0
            assert gram_det(level, pt) != 0
    pt = {"h": F(5), "mu": F(7), "rho1": F(0), "rho2": F(0), "alpha": F(2), "beta": F(3)}
    assert 2 * pt["h"] * pt["beta"] != pt["mu"] ** 2
    assert gram_det(1, pt) == 0
    basis = pbw_basis(1)
    coords = lambda vs: [[v.terms.get(m, 0) for m in basis] for v in vs]
    ker = coords(gram_kernel(1, pt))
    ps = coords([VermaVector.of(P(1, -1)), VermaVector.of(P(2, -1))])
    detail(f"kernel dimension {len(ker)} at rho = 0")
    assert rank(ker) == rank(ker + ps)


@criterion(5, "central-extension classification")
def test_central_extensions(detail):
    t = time.perf_counter()
    dims, reps_ok, exotic = {}, True, True
    for window in (4, 6, 8):
        sol = solve_cocycles(window)
        dims[window] = sol.dimension
        interior = range(1, window - 1)
        by_pair = {}
        for rep in sol.representatives:
            for pair, _ in rep:
                by_pair.setdefault(pair, rep)
        ll, jj = by_pair.get("LL", {}), by_pair.get("JJ", {})
        if not ll or not jj:
            reps_ok = False
        else:
            s_ll, s_jj = ll[("LL", 2)] * 2, jj[("JJ", 1)]
            reps_ok &= all(ll.get(("LL", m), 0) == s_ll * F(m * (m * m - 1), 12) for m in interior)
            reps_ok &= all(jj.get(("JJ", m), 0) == s_jj * m for m in interior)
        exotic &= exotic_check(window)
    secs = time.perf_counter() - t
    detail(f"dimensions {dims}, representatives match {reps_ok}, exotic_check {exotic}")
    assert reps_ok and exotic
    assert secs < 30
    assert all(d == 2 for d in dims.values()), dims


@criterion(6, "coadjoint duality and representation identities")
def test_coadjoint_identities(detail):
    rep = check_identities(trials=100, seed=0, degree=3)
    detail(f"{rep.trials} trials, failures {rep.duality_failures + rep.representation_failures}")
    assert rep.passed


def _gamma():
    return DensityVector(
        TrigPoly(1, [F(1, 2)], [0, F(-1, 3)]),
        TrigPoly(F(1, 3), [], [1]),
        TrigPoly(-1, [0, F(1, 4)]),
        TrigPoly(F(1, 2), [1]),
        a=F(3, 2),
        b=F(2, 5),
    )


@criterion(7, "group/algebra consistency")
def test_linearization(detail):
    directions = {
        "L": CurrentElement(f0=TrigPoly.sin_k(1)),
        "J": CurrentElement(f3=TrigPoly(1)),
        "P1": CurrentElement(f1=TrigPoly.cos_k(1)),
        "P2": CurrentElement(f2=TrigPoly.sin_k(2)),
    }
    notes, ok = [], True
    for name, z in directions.items():
        rep = linearize_check(z, _gamma(), (1e-2, 5e-3, 2.5e-3), n=1024, ratio_tol=0.1, limit_tol=1e-6)
        halving = all(abs(r - 0.5) <= 0.1 for r in rep.ratios)
        # an exactly affine direction has no first-order error left to halve
        exact = max(rep.deviations) <= rep.exact_floor
        ok &= (halving or exact) and rep.limit_error <= 1e-6
        tag = "exact" if exact else "ratios " + "/".join(f"{r:.3f}" for r in rep.ratios)
        notes.append(f"{name}: {tag}, limit {rep.limit_error:.1e}")
    detail("; ".join(notes))
    assert ok


@criterion(8, "Schwarzian properties")
def test_schwarzian(detail):
    n = 1024
    rot = max(schwarzian(Diffeo.rotation(c), n).max_abs() for c in (0.3, 1.0, 2.5))
    rng = random.Random(17)
    worst = 0.0
    for _ in range(5):
        pair = []
        for _ in range(2):
            u = random_trig(rng, 3)
            th = np.linspace(0, 2 * np.pi, 4096, endpoint=False)
            scale = 0.3 / float(np.max(np.abs(u.diff()(th))))
            pair.append(Diffeo(u.scale(F(scale).limit_denominator(10**9)), n))
        phi, psi = pair
        assert max(np.max(np.abs(d.derivatives(n)[0] - 1)) for d in pair) <= 0.3 + 1e-9
        lhs = schwarzian(phi.compose(psi, n), n).samples
        rhs = schwarzian(phi, n)(psi.values(n)) * psi.derivatives(n)[0] ** 2 + schwarzian(psi, n).samples
        worst = max(worst, float(np.max(np.abs(lhs - rhs))))
    detail(f"rotation {rot:.1e}, cocycle residual {worst:.1e}")
    assert rot <= 1e-12
    assert worst <= 1e-9


@criterion(9, "isotropy example")
def test_isotropy(detail):
    found = []
    for g1, g2 in ((1, 1), (F(2), F(-3, 2))):
        for degree in (3, 4, 5):
            res = isotropy_solve(DensityVector(gamma1=g1, gamma2=g2), degree)
            found.append(res.dimension)
            assert res.dimension == 2 and res.stable
            assert res.f3_vanishes and res.f0_constant
    detail(f"dimensions {found}")


@criterion(10, "vector-field realization")
def test_vector_fields(detail):
    rep = vf_realize_check(4)
    detail(f"{rep.checked} pairs checked")
    assert rep.passed
