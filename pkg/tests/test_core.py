from __future__ import annotations

import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from hopfchar import core
from hopfchar.basis import TREES, WordBasis
from hopfchar.core import Functional
from hopfchar.errors import DomainError, KindError, MismatchError
from hopfchar.linear import Element
from hopfchar.sampling import tree_character, tree_infinitesimal, word_character, word_infinitesimal
from hopfchar.targets import FloatAlgebra, RATIONAL
from hopfchar.trees import BULLET, UNIT, forest, tree

seeds = st.integers(0, 10**6)
WB = WordBasis("a,b")


def unit(N=4, basis=TREES):
    return core.unit_character(basis, N)


@settings(max_examples=25, deadline=None)
@given(seeds)
def test_group_laws(seed):
    rng = random.Random(seed)
    a, b, c = (tree_character(rng, 4) for _ in range(3))
    assert core.convolve(core.convolve(a, b), c) == core.convolve(a, core.convolve(b, c))
    assert core.convolve(a, unit()) == a == core.convolve(unit(), a)
    inv = core.char_inverse(a)
    assert core.convolve(a, inv) == unit() == core.convolve(inv, a)
    assert inv == core.compose_with_antipode(a)
    assert core.is_character(core.convolve(a, b))


@settings(max_examples=15, deadline=None)
@given(seeds)
def test_word_group_laws(seed):
    rng = random.Random(seed)
    a, b, c = (word_character(rng, WB, 4) for _ in range(3))
    assert core.convolve(core.convolve(a, b), c) == core.convolve(a, core.convolve(b, c))
    assert core.convolve(a, core.char_inverse(a)) == unit(4, WB)
    assert core.is_character(core.convolve(a, b))


def test_power():
    rng = random.Random(1)
    a = tree_character(rng, 4)
    assert core.power(a, 0) == unit()
    assert core.power(a, 3) == core.convolve(a, core.convolve(a, a))
    assert core.power(a, 5) == core.convolve_many([a] * 5)


@settings(max_examples=25, deadline=None)
@given(seeds)
def test_exp_log(seed):
    rng = random.Random(seed)
    psi = tree_infinitesimal(rng, 4)
    phi = core.exp_star(psi)
    assert core.is_character(phi)
    assert core.log_star(phi) == psi
    chi = tree_character(rng, 4)
    log = core.log_star(chi)
    assert core.is_infinitesimal(log)
    assert core.exp_star(log) == chi


@settings(max_examples=10, deadline=None)
@given(seeds)
def test_word_exp_log(seed):
    rng = random.Random(seed)
    psi = word_infinitesimal(rng, WB, 4)
    assert core.is_infinitesimal(psi)
    phi = core.exp_star(psi)
    assert core.is_character(phi)
    assert core.log_star(phi) == psi


def test_exp_one_parameter_subgroup():
    rng = random.Random(2)
    psi = tree_infinitesimal(rng, 4)
    s, t = Fraction(1, 3), Fraction(-5, 7)
    lhs = core.convolve(core.exp_star(psi.scale(s)), core.exp_star(psi.scale(t)))
    assert lhs == core.exp_star(psi.scale(s + t))


def test_exp_of_zero_is_unit():
    assert core.exp_star(core.zero_functional(TREES, 1)) == unit(1)


def test_bch_to_third_order():
    # at N = 3 nested brackets of four elements vanish, so the third-order formula is exact
    rng = random.Random(3)
    x, y = tree_infinitesimal(rng, 3), tree_infinitesimal(rng, 3)
    br = core.lie_bracket
    xy = br(x, y)
    expected = x + y + xy.scale(Fraction(1, 2)) + (br(x, xy) - br(y, xy)).scale(Fraction(1, 12))
    assert core.bch(x, y) == expected


@settings(max_examples=15, deadline=None)
@given(seeds)
def test_lie_bracket(seed):
    rng = random.Random(seed)
    x, y, z = (tree_infinitesimal(rng, 4) for _ in range(3))
    br = core.lie_bracket
    assert core.is_infinitesimal(br(x, y))
    assert br(x, y) == -br(y, x)
    jacobi = br(x, br(y, z)) + br(y, br(z, x)) + br(z, br(x, y))
    assert jacobi == core.zero_functional(TREES, 4)


@settings(max_examples=25, deadline=None)
@given(seeds)
def test_ultrametric(seed):
    rng = random.Random(seed)
    f, g, h = (tree_character(rng, 4) for _ in range(3))
    # make some pairs agree in low degree
    g = core.convolve(f, core.exp_star(tree_infinitesimal(rng, 4, start=rng.randint(1, 4))))
    d = core.distance
    assert d(f, h) <= max(d(f, g), d(g, h))
    assert d(f, g) == d(g, f)
    assert d(core.convolve(h, f), core.convolve(h, g)) == d(f, g)
    assert d(f, f) == 0


def test_um_order_values():
    a = core.character(TREES, 3, {BULLET: 1})
    assert core.um_order(a - a) == math.inf
    assert core.um_order(a - unit(3)) == 0
    assert core.distance(a, unit(3)) == 1
    assert core.um_order(a) == -1
    assert core.distance(a, core.zero_functional(TREES, 3).with_kind(core.CHARACTER)) == 2


def test_truncation_homomorphism():
    rng = random.Random(4)
    a, b = tree_character(rng, 4), tree_character(rng, 4)
    for M in range(5):
        assert core.truncate(core.convolve(a, b), M) == core.convolve(core.truncate(a, M), core.truncate(b, M))
    with pytest.raises(DomainError):
        core.truncate(a, 5)


def test_kind_errors():
    rng = random.Random(5)
    a = tree_character(rng, 3)
    psi = tree_infinitesimal(rng, 3)
    with pytest.raises(KindError):
        core.exp_star(a)
    with pytest.raises(KindError):
        core.log_star(psi)
    with pytest.raises(KindError):
        core.lie_bracket(a, psi)


def test_mismatch_errors():
    rng = random.Random(6)
    a3, a4 = tree_character(rng, 3), tree_character(rng, 4)
    with pytest.raises(MismatchError):
        core.convolve(a3, a4)
    with pytest.raises(MismatchError):
        core.convolve(a3, core.unit_character(TREES, 3, FloatAlgebra()))
    with pytest.raises(MismatchError):
        core.convolve(unit(3, WB), a3)


def test_character_test_reports_witness():
    f = Functional(TREES, RATIONAL, 2, {UNIT: 1, forest("[]"): 2, forest("[]", "[]"): 3}, core.GENERAL)
    check = core.is_character(f)
    assert not check
    assert check.witness == (forest("[]"), forest("[]"))
    assert check.residual == -1
    g = Functional(TREES, RATIONAL, 2, {forest("[]", "[]"): 1}, core.GENERAL)
    assert not core.is_infinitesimal(g)
    assert core.is_infinitesimal(Functional(TREES, RATIONAL, 2, {forest("[[]]"): 1}))


def test_character_expansion_is_multiplicative():
    a = core.character(TREES, 4, {"[]": 2, "[[]]": Fraction(1, 3)})
    assert a(forest("[]", "[]", "[[]]")) == Fraction(4, 3)
    assert a(Element({forest("[]"): 3, UNIT: 1})) == 7
    with pytest.raises(DomainError):
        a(forest("[]", "[]", "[]", "[]", "[]"))


def test_float_target_tolerance():
    F = FloatAlgebra(1e-9)
    a = core.character(TREES, 3, {BULLET: 0.1}, F)
    assert core.is_character(core.convolve(a, core.char_inverse(a)))
    assert core.convolve(a, core.char_inverse(a)) == core.unit_character(TREES, 3, F)


# -- ideals -------------------------------------------------------------------


def test_ideal_generated_by_bullet():
    spec = core.IdealSpec(TREES, [Element({forest("[]"): 1})])
    closure = core.ideal_closure(spec, 2)
    assert closure.dimension(1) == 1
    assert closure.dimension(2) == 1
    assert closure.contains(Element({forest("[]", "[]"): 1}))
    assert not closure.contains(Element({forest("[[]]"): 1}))
    assert core.is_hopf_ideal(spec, 4)


def test_non_coideal_detected():
    spec = core.IdealSpec(TREES, [Element({forest("[[]]"): 1})])
    check = core.is_hopf_ideal(spec, 3)
    assert not check
    assert check.detail == "coideal"


def test_ideal_spec_rejects_counit():
    with pytest.raises(DomainError):
        core.IdealSpec(TREES, [Element({UNIT: 1})])


def test_annihilation():
    spec = core.IdealSpec(TREES, [Element({forest("[]"): 1})])
    a = core.character(TREES, 3, {"[[]]": 5})
    assert core.annihilates(a, spec)
    b = core.character(TREES, 3, {"[]": Fraction(1, 2)})
    res = core.annihilates(b, spec)
    assert not res and res.degree == 1 and res.residual == Fraction(1, 2)


def test_echelon_is_exact():
    ech = core.Echelon()
    x = Element({forest("[]"): 1, forest("[[]]"): 2})
    y = Element({forest("[]"): 3, forest("[[]]"): 6})
    assert ech.insert(x)
    assert not ech.insert(y)
    assert y in ech
    assert len(ech) == 1
