from __future__ import annotations

import random
import warnings
from fractions import Fraction
from itertools import permutations

import pytest

from hopfchar import core
from hopfchar.butcher import (
    BACKWARD_EULER,
    EXPLICIT_MIDPOINT,
    FORWARD_EULER,
    HEUN,
    IMPLICIT_MIDPOINT,
    METHODS,
    RK4,
    RKMethod,
    elementary_weights,
    euler_character,
    euler_composite,
    exact_flow,
    growth_profile,
    order_of,
    rk_character,
    scale_step,
    symplectic_generator,
    symplectic_ideal,
)
from hopfchar.errors import DomainError, KindError, ParseError
from hopfchar.trees import BULLET, enumerate_trees, tree

from oracles import gamma, pin_tree_values, random_planar_ode

# rational order-4 collocation method; not symplectic
LOBATTO_IIIA = RKMethod(
    ((0, 0, 0), (Fraction(5, 24), Fraction(1, 3), Fraction(-1, 24)), (Fraction(1, 6), Fraction(2, 3), Fraction(1, 6))),
    (Fraction(1, 6), Fraction(2, 3), Fraction(1, 6)),
    name="Lobatto IIIA",
)


def test_exact_flow_is_inverse_tree_factorial():
    e = exact_flow(6)
    for n in range(1, 7):
        for t in enumerate_trees(n):
            assert e.value(t.as_forest()) == Fraction(1, gamma(t))
    assert e.value(tree("[[]]").as_forest()) == Fraction(1, 2)


def test_exact_flow_rejects_zero_truncation():
    with pytest.raises(DomainError):
        exact_flow(0)


@pytest.mark.parametrize("method", [RK4, IMPLICIT_MIDPOINT, HEUN])
def test_rk_character_matches_step_expansion(method):
    rng = random.Random(11)
    odes = [random_planar_ode(rng, 3) for _ in range(6)]
    steps = {id(o): o.rk_step(method.A, method.b, 4) for o in odes}
    pinned = pin_tree_values(odes, 4, enumerate_trees, lambda o, k: steps[id(o)][k])
    a = rk_character(method, 4)
    for t, v in pinned.items():
        assert a.value(t.as_forest()) == v, t


def test_elementary_weights_examples():
    # RK4 on the cherry: sum b_i c_i^2 = 1/3
    assert sum(b * g for b, g in zip(RK4.b, elementary_weights(RK4, tree("[[],[]]")))) == Fraction(1, 3)
    assert elementary_weights(IMPLICIT_MIDPOINT, tree("[[]]")) == (Fraction(1, 2),)


@pytest.mark.parametrize(
    "method,p",
    [(FORWARD_EULER, 1), (BACKWARD_EULER, 1), (IMPLICIT_MIDPOINT, 2), (EXPLICIT_MIDPOINT, 2), (HEUN, 2), (RK4, 4), (LOBATTO_IIIA, 4)],
)
def test_orders(method, p):
    a = rk_character(method, p + 1)
    found = order_of(a)
    assert found.order == p and not found.saturated
    assert core.distance(a, exact_flow(p + 1)) == Fraction(1, 2**p)


def test_order_saturates():
    found = order_of(rk_character(RK4, 3))
    assert found.saturated and str(found) == ">=3"
    assert order_of(exact_flow(4)).saturated


def test_order_with_float_target():
    from hopfchar.targets import FloatAlgebra

    F = FloatAlgebra(1e-12)
    assert order_of(rk_character(RK4, 5, F), tol=1e-12).order == 4


def test_stage_permutation_invariance():
    for perm in permutations(range(4)):
        assert rk_character(RK4.permuted(perm), 5) == rk_character(RK4, 5)


@pytest.mark.parametrize("h", [Fraction(1, 2), Fraction(1, 3)])
def test_composition_is_convolution_of_scaled_steps(h):
    for first, second in [(RK4, FORWARD_EULER), (HEUN, IMPLICIT_MIDPOINT)]:
        composed = rk_character(first.composed(second, h), 4)
        expected = core.convolve(scale_step(rk_character(first, 4), h), scale_step(rk_character(second, 4), 1 - h))
        assert composed == expected


def test_scale_step_is_a_homomorphism():
    a, b = rk_character(RK4, 4), rk_character(HEUN, 4)
    h = Fraction(2, 3)
    assert scale_step(core.convolve(a, b), h) == core.convolve(scale_step(a, h), scale_step(b, h))
    with pytest.raises(KindError):
        scale_step(core.log_star(a), h)


def test_euler_composites():
    for n in (1, 2, 3, 4, 7):
        b = euler_composite(n, 3)
        assert b.value(tree("[[]]").as_forest()) == Fraction(n - 1, 2 * n)
        assert b.value(tree("[[[]]]").as_forest()) == Fraction((n - 1) * (n - 2), 6 * n * n)
    assert euler_composite(1, 4) == euler_character(4)
    assert rk_character(FORWARD_EULER, 4) == euler_character(4)
    with pytest.raises(DomainError):
        euler_composite(0, 3)


def test_growth_profile():
    prof = growth_profile(exact_flow(4))
    assert [n for n, _ in prof] == [1, 2, 3, 4]
    assert prof[0][1] == 1.0
    assert abs(prof[1][1] - 0.5**0.5) < 1e-12
    # Euler has zero value on every tree of order >= 2
    assert [g for _, g in growth_profile(euler_character(3))] == [1.0, 0.0, 0.0]


def test_tableau_parse_round_trip():
    for m in METHODS.values():
        back = RKMethod.parse(m.to_text())
        assert (back.A, back.b, back.c) == (m.A, m.b, m.c)


@pytest.mark.parametrize(
    "text",
    ["", "x", "2\n0 0\n1 0\n1/2 1/2\n", "1\n0\n1\n0\n0\n", "1\n0 0\n1\n0\n", "1\nq\n1\n0\n"],
)
def test_tableau_parse_errors(text):
    with pytest.raises((ParseError, DomainError)):
        RKMethod.parse(text)


def test_inconsistent_nodes_warn():
    m = RKMethod(((0, 0), (1, 0)), (Fraction(1, 2), Fraction(1, 2)), (0, Fraction(1, 2)))
    assert m.consistency_warnings()
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        rk_character(m, 2)
    assert caught


def test_symplectic_ideal_dimensions():
    spec = symplectic_ideal(4)
    closure = core.ideal_closure(spec, 4)
    assert [closure.dimension(d) for d in range(5)] == [0, 0, 1, 2, 6]
    assert symplectic_generator(BULLET, BULLET).coefficient(tree("[[]]").as_forest()) == 2
    with pytest.raises(DomainError):
        symplectic_ideal(1)


def test_symplecticity_of_methods():
    spec = symplectic_ideal(5)
    assert core.is_hopf_ideal(spec, 5)
    assert core.annihilates(rk_character(IMPLICIT_MIDPOINT, 5), spec)
    assert core.annihilates(exact_flow(5), spec)
    assert core.annihilates(rk_character(LOBATTO_IIIA, 5), spec).ok is False
    assert not core.annihilates(rk_character(RK4, 5), spec)
    # products of symplectic characters stay symplectic
    mid = rk_character(IMPLICIT_MIDPOINT, 5)
    assert core.annihilates(core.convolve(mid, scale_step(mid, Fraction(1, 3))), spec)
