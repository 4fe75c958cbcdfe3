from fractions import Fraction as F
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from gca.algebra import (
    CA,
    CB,
    AlgebraElement,
    DiffOperator,
    J,
    L,
    P,
    bracket,
    degree,
    generators,
    omega,
    parse_label,
    vf_realize_check,
)

GENS6 = generators(6)
GENS4 = generators(4)


def el(*pairs):
    return AlgebraElement({lab: F(c) for lab, c in pairs})


def test_bracket_examples():
    assert bracket(L(2), L(-2)) == el((L(0), 4), (CA, F(1, 2)))
    assert bracket(J(3), J(-3)) == el((CB, 3))
    assert bracket(J(0), P(2, 5)) == el((P(1, 5), -1))
    assert bracket(J(0), P(1, 5)) == el((P(2, 5), 1))
    for m, n in product(range(-4, 5), repeat=2):
        assert bracket(P(1, m), P(2, n)).is_zero()
        assert bracket(P(1, m), P(1, n)).is_zero()


def test_remaining_structure_constants():
    assert bracket(L(3), P(1, -1)) == el((P(1, 2), 4))
    assert bracket(L(1), J(2)) == el((J(3), -2))
    assert bracket(L(2), L(1)) == el((L(3), 1))
    assert bracket(J(2), J(1)).is_zero()
    assert bracket(CA, L(3)).is_zero() and bracket(J(1), CB).is_zero()


def test_omega_examples():
    assert omega(L(3)) == el((L(-3), 1))
    assert omega(el((P(1, -2), 2), (J(1), 1))) == el((P(1, 2), 2), (J(-1), 1))
    assert omega(CA) == el((CA, 1))


@settings(max_examples=50, deadline=None)
@given(st.lists(st.tuples(st.sampled_from(GENS6 + [CA, CB]), st.integers(-5, 5)), max_size=6))
def test_omega_is_an_involution(pairs):
    x = AlgebraElement({lab: F(c) for lab, c in pairs})
    assert omega(omega(x)) == x


def test_degree_examples():
    assert degree(L(-3)) == 3
    assert degree(P(2, 4)) == -4
    assert degree(CA) == 0


def test_label_strings():
    for s in ("L[-3]", "J[2]", "P1[0]", "P2[5]", "Ca", "Cb"):
        assert str(parse_label(s)) == s
    with pytest.raises(ValueError):
        parse_label("Q[1]")


def test_element_json_round_trip():
    x = el((L(-2), F(3, 4)), (CB, -1))
    assert AlgebraElement.from_json(x.to_json()) == x
    assert x.to_json() == {"L[-2]": "3/4", "Cb": "-1"}


def test_antisymmetry():
    for x, y in product(GENS4, repeat=2):
        assert bracket(x, y) == -bracket(y, x)


def test_grading():
    for x, y in product(GENS6, repeat=2):
        for lab, _ in bracket(x, y):
            if lab.is_central:
                assert x.mode + y.mode == 0
            else:
                assert lab.mode == x.mode + y.mode


def test_jacobi_with_central_terms():
    # only triples with total mode within the window can have central terms,
    # but every triple in [-6, 6] is checked
    for x, y, z in product(GENS6, repeat=3):
        if not (x < y < z):
            continue
        s = bracket(x, bracket(y, z)) + bracket(y, bracket(z, x)) + bracket(z, bracket(x, y))
        assert s.is_zero(), (x, y, z)


def _contravariant(x, y, w):
    return w(bracket(x, y)) == -bracket(w(x), w(y))


def test_omega_contravariance_fails_exactly_on_j_p_pairs():
    # X_m -> X_{-m} reverses every bracket except [J, P], which it preserves
    for x, y in product(GENS4, repeat=2):
        jp = {x.family, y.family} in ({"J", "P1"}, {"J", "P2"})
        if jp:
            assert omega(bracket(x, y)) == bracket(omega(x), omega(y))
            if not bracket(x, y).is_zero():
                assert not _contravariant(x, y, omega)
        else:
            assert _contravariant(x, y, omega), (x, y)


def test_sign_twisted_omega_is_an_anti_automorphism():
    def tau(x):
        x = omega(x)
        return AlgebraElement({k: (-v if k.family == "J" else v) for k, v in x})

    for x, y in product(GENS4, repeat=2):
        assert _contravariant(x, y, tau), (x, y)


def test_vector_field_examples():
    assert DiffOperator(L(0)).on_monomial((2, 1, 0)) == {(2, 1, 0): -3}
    assert DiffOperator(P(1, 0)).on_monomial((0, 1, 0)) == {(1, 0, 0): -1}
    assert DiffOperator(J(0)).on_monomial((0, 1, 0)) == {(0, 0, 1): 1}


def test_vector_field_realization_window_4():
    rep = vf_realize_check(4)
    assert rep.passed
    assert rep.to_json()["failures"] == []
    assert rep.checked > 0


def test_vector_field_check_reports_witness(monkeypatch):
    # a realization with the wrong sign on J must be caught
    original = DiffOperator.on_monomial

    def flipped(self, mono):
        out = original(self, mono)
        return {k: -v for k, v in out.items()} if self.label.family == "J" else out

    monkeypatch.setattr(DiffOperator, "on_monomial", flipped)
    rep = vf_realize_check(1)
    assert not rep.passed
    assert rep.witness is not None
