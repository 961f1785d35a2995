from __future__ import annotations

import random
from fractions import Fraction

import pytest

from hopfchar import core
from hopfchar.basis import TREES, WordBasis
from hopfchar.errors import DomainError, KindError
from hopfchar.renorm import birkhoff, counterterm_report, format_report
from hopfchar.sampling import laurent_character, tree_character
from hopfchar.targets import LaurentAlgebra
from hopfchar.trees import BULLET, enumerate_trees
from hopfchar.wordseries import segment_signature

L = LaurentAlgebra(8, 8)
WIDE = LaurentAlgebra(30, 30)


def _coeffs(f, N):
    return {m: f.value(m).coeffs for m in f.basis.monomials_upto(N)}


@pytest.mark.parametrize("seed", range(8))
def test_truncation_never_interferes(seed):
    # same data in a much larger (P, M) window gives identical coefficients
    phi = laurent_character(random.Random(seed), 4, L)
    wide = laurent_character(random.Random(seed), 4, WIDE)
    p, q = birkhoff(phi), birkhoff(wide)
    assert _coeffs(p.gamma_minus, 4) == _coeffs(q.gamma_minus, 4)
    assert _coeffs(p.gamma_plus, 4) == _coeffs(q.gamma_plus, 4)


def test_recomposition_and_shape():
    phi = laurent_character(random.Random(1), 4, L, depth=2)
    pair = birkhoff(phi)
    assert core.convolve(pair.gamma_minus, phi) == pair.gamma_plus
    assert core.convolve(core.char_inverse(pair.gamma_minus), pair.gamma_plus) == phi
    assert core.is_character(pair.gamma_minus) and core.is_character(pair.gamma_plus)


def test_regular_character_is_its_own_plus_part():
    phi = laurent_character(random.Random(2), 4, L, depth=0)
    pair = birkhoff(phi)
    assert pair.gamma_minus == core.unit_character(TREES, 4, L)
    assert pair.gamma_plus == phi


def test_plus_part_is_a_fixed_point():
    phi = laurent_character(random.Random(3), 4, L)
    plus = birkhoff(phi).gamma_plus
    again = birkhoff(plus)
    assert again.gamma_minus == core.unit_character(TREES, 4, L)
    assert again.gamma_plus == plus


def test_single_vertex_counterterm():
    phi = core.character(TREES, 2, {BULLET: L.series({-1: 2, 0: 3, 1: 5})}, L)
    pair = birkhoff(phi)
    assert pair.gamma_minus.value(BULLET.as_forest()) == L.series({-1: -2})
    assert pair.gamma_plus.value(BULLET.as_forest()) == L.series({0: 3, 1: 5})
    # tau2 with phi(tau2) = 0: prepared value gamma_-(.) phi(.) = -2/z (2/z + 3 + 5z)
    tau2 = enumerate_trees(2)[0].as_forest()
    assert pair.gamma_minus.value(tau2) == L.series({-2: 4, -1: 6})
    assert pair.gamma_plus.value(tau2) == L.series({0: -10})


def test_word_basis_birkhoff():
    wb = WordBasis("a,b")
    rng = random.Random(4)
    inc = [L.series({k: rng.randint(-2, 2) for k in (-1, 0, 1)}) for _ in range(2)]
    phi = core.convolve(segment_signature(wb, 3, inc[:1] + [L.one()], L), segment_signature(wb, 3, [L.one()] + inc[1:], L))
    pair = birkhoff(phi)
    assert core.convolve(pair.gamma_minus, phi) == pair.gamma_plus
    assert core.is_character(pair.gamma_minus) and core.is_character(pair.gamma_plus)
    for m in wb.monomials_upto(3):
        if m != wb.unit:
            v = pair.gamma_minus.value(m)
            assert v.is_zero() or v.max_exp < 0


def test_report():
    phi = laurent_character(random.Random(5), 3, L)
    rows = counterterm_report(birkhoff(phi))
    assert len(rows) == 1 + 1 + 2
    text = format_report(rows, TREES)
    assert text.splitlines()[0] == "monomial\tcounterterm\trenormalised"
    assert len(text.splitlines()) == 5


def test_errors():
    with pytest.raises(DomainError):
        birkhoff(tree_character(random.Random(0), 3))
    with pytest.raises(KindError):
        birkhoff(core.log_star(laurent_character(random.Random(0), 3, L)))
