from math import gcd

import pytest
from hypothesis import given, strategies as st

from collatz_sufficiency.arith import mult_order
from collatz_sufficiency.group import (
    AffineMap,
    affine_closure,
    e0_map,
    e1_map,
    gb_structure,
    generator_orders,
    phi_bound_holds,
    t0_map,
    t1_map,
    translation,
    unit_subgroup_order,
    verify_p_identity,
)

COPRIME = [b for b in range(1, 1001) if gcd(b, 6) == 1]


def slow_closure(b):
    """Closure as a set of AffineMaps, one generator application at a time."""
    gens = [t0_map(b), t1_map(b)]
    gens += [g.inverse() for g in gens]
    seen = {AffineMap.identity(b)}
    todo = list(seen)
    while todo:
        g = todo.pop()
        for h in gens:
            k = h @ g
            if k not in seen:
                seen.add(k)
                todo.append(k)
    return seen


@pytest.mark.parametrize("b,s,t,order", [(7, (3,), (6,), 42), (5, (4,), (4,), 20)])
def test_structure_examples(b, s, t, order):
    st_ = gb_structure(b)
    assert st_.s == s and st_.t == t and st_.order == order
    assert affine_closure(b).order == order


def test_trivial_modulus():
    st_ = gb_structure(1)
    assert st_.order == 1 and st_.factors == ()
    assert affine_closure(1).order == 1
    assert generator_orders(1) == (1, 1)


@pytest.mark.parametrize("b", [2, 3, 6, 9, 10, 0])
def test_rejects_moduli_sharing_factor_with_six(b):
    with pytest.raises(ValueError):
        gb_structure(b)


def test_closure_budget():
    with pytest.raises(ValueError):
        affine_closure(1001)
    assert affine_closure(1001, budget=2000).order == gb_structure(1001).exact_order


@pytest.mark.parametrize("b", [b for b in COPRIME if b <= 60])
def test_closure_matches_plain_oracle(b):
    fast = affine_closure(b)
    slow = slow_closure(b)
    assert fast.order == len(slow)
    assert set(fast.elements) == {(g.scale, g.shift) for g in slow}
    assert fast.order == b * unit_subgroup_order((2, 3), b)


def test_closure_order_equals_units_oracle_everywhere():
    for b in COPRIME:
        assert affine_closure(b).order == gb_structure(b).exact_order, b


def test_product_formula_overcounts_at_95():
    st_ = gb_structure(95)
    assert st_.order == 6840
    assert affine_closure(95).order == 3420 == st_.exact_order
    assert not st_.formula_matches


def test_formula_holds_for_prime_powers():
    for b in COPRIME:
        st_ = gb_structure(b)
        if len(st_.factors) == 1:
            assert st_.formula_matches, b


@pytest.mark.parametrize("b", [5, 7, 25, 35, 77, 95, 143, 625])
def test_translations_and_transitivity(b):
    c = affine_closure(b)
    assert sorted(c.translations()) == list(range(b))
    assert c.orbit(0) == set(range(b))
    assert translation(b, 3) in c


def test_phi_bound():
    for b in COPRIME[:200]:
        assert phi_bound_holds(gb_structure(b))


@pytest.mark.parametrize("b,expected", [(5, (4, 2)), (7, (3, 6)), (1, (1, 1))])
def test_generator_order_examples(b, expected):
    assert generator_orders(b) == expected


def test_generator_orders_by_composition():
    for b in COPRIME:
        o0, o1 = generator_orders(b)
        assert t0_map(b).order() == o0
        assert t1_map(b).order() == o1
        if b > 1:
            assert o0 == mult_order(2, b)


@pytest.mark.parametrize("b", [5, 7, 35])
def test_p_identity_examples(b):
    assert verify_p_identity(b)


def test_p_identity_everywhere():
    assert all(verify_p_identity(b) for b in COPRIME)


def test_conjugation_swaps_branches():
    for b in COPRIME[:150]:
        p = translation(b)
        assert p @ t0_map(b) @ p.inverse() == e1_map(b)
        assert p @ t1_map(b) @ p.inverse() == e0_map(b)


maps = st.integers(5, 200).filter(lambda b: gcd(b, 6) == 1).flatmap(
    lambda b: st.tuples(*[st.builds(lambda c, d: AffineMap(c, d, b),
                                    st.integers(0, b - 1).filter(lambda c: gcd(c, b) == 1),
                                    st.integers(0, b - 1))] * 3))


@given(maps, st.integers(0, 10 ** 6))
def test_composition_laws(triple, x):
    f, g, h = triple
    assert (f @ g)(x) == f(g(x))
    assert (f @ g) @ h == f @ (g @ h)
    assert (f @ f.inverse()).is_identity() and (f.inverse() @ f).is_identity()
    assert f.power(3) == f @ f @ f and f.power(-2) == f.inverse() @ f.inverse()


def test_non_unit_scale_rejected():
    with pytest.raises(ValueError):
        AffineMap(5, 1, 10)
    with pytest.raises(ValueError):
        t0_map(7) @ t0_map(5)


def test_to_dict():
    d = gb_structure(95).to_dict()
    assert d["factors"] == [{"p": 5, "e": 1}, {"p": 19, "e": 1}]
    assert d["formula_matches"] is False
