from __future__ import annotations

from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

from hopfchar.basis import TREES
from hopfchar.errors import DomainError, ParseError
from hopfchar.linear import Element
from hopfchar.trees import (
    BULLET,
    UNIT,
    Forest,
    Tree,
    antipode,
    coproduct,
    counit,
    enumerate_forests,
    enumerate_trees,
    forest,
    graft,
    multiply,
    ordered_subtrees,
    partitions,
    tree,
)

from hopf_checks import all_axioms_hold, product_coproduct_defect
from oracles import brute_force_ost, brute_force_tree_codes, forest_code, tree_code

TAU2 = tree("[[]]")
CHERRY = tree("[[],[]]")
CHAIN3 = tree("[[[]]]")


def F(*items) -> Forest:
    return forest(*items)


def test_counts():
    assert [len(enumerate_trees(n)) for n in range(1, 10)] == [1, 1, 2, 4, 9, 20, 48, 115, 286]


@pytest.mark.parametrize("n", range(1, 9))
def test_enumeration_matches_brute_force(n):
    ours = [tree_code(t) for t in enumerate_trees(n)]
    assert len(set(ours)) == len(ours)
    assert set(ours) == brute_force_tree_codes(n)


def test_enumerate_rejects_nonpositive():
    with pytest.raises(DomainError):
        enumerate_trees(0)


@pytest.mark.parametrize("n", range(0, 7))
def test_forests_biject_with_trees_by_grafting_a_root(n):
    grafted = {tree_code(Tree(tuple(f))) for f in enumerate_forests(n)}
    assert len(grafted) == len(enumerate_forests(n))
    assert grafted == brute_force_tree_codes(n + 1)


def test_canonical_form_identifies_isomorphic_trees():
    assert tree("[[[]],[]]") == tree("[[],[[]]]")
    assert hash(tree("[[[]],[]]")) == hash(tree("[[],[[]]]"))
    assert F("[]", "[[]]") == F("[[]]", "[]")


@pytest.mark.parametrize("n", range(1, 7))
def test_parse_round_trip(n):
    for t in enumerate_trees(n):
        assert Tree.parse(str(t)) == t
    for f in enumerate_forests(n):
        assert Forest.parse(str(f)) == f


def test_unit_text():
    assert str(UNIT) == "1"
    assert Forest.parse("1") == UNIT
    assert UNIT.degree == 0


@pytest.mark.parametrize("bad", ["", "[", "[[]", "[]]", "x", "[a]", "[],"])
def test_parse_errors(bad):
    with pytest.raises(ParseError):
        Forest.parse(bad)


def test_coproduct_examples():
    assert coproduct(BULLET) == Element({(F("[]"), UNIT): 1, (UNIT, F("[]")): 1})
    assert coproduct(TAU2) == Element({(F("[[]]"), UNIT): 1, (UNIT, F("[[]]")): 1, (F("[]"), F("[]")): 1})
    expected = {
        (CHERRY.as_forest(), UNIT): 1,
        (UNIT, CHERRY.as_forest()): 1,
        (F("[]"), F("[[]]")): 2,
        (F("[]", "[]"), F("[]")): 1,
    }
    assert coproduct(CHERRY) == Element(expected)
    assert coproduct(CHAIN3).coefficient((F("[[]]"), F("[]"))) == 1
    assert coproduct(CHAIN3).coefficient((F("[]"), F("[[]]"))) == 1


@pytest.mark.parametrize("n", range(1, 7))
def test_ordered_subtrees_match_subset_oracle(n):
    for t in enumerate_trees(n):
        ours = Counter((forest_code(cut), forest_code(kept)) for _, cut, kept in ordered_subtrees(t))
        theirs = Counter(brute_force_ost(t))
        assert ours == theirs
        # the coproduct is the OST sum
        agg = Counter()
        for (l, r), c in coproduct(t).items():
            agg[(forest_code(l), forest_code(r))] += c
        assert agg == theirs


def test_antipode_examples():
    assert antipode(BULLET) == Element({F("[]"): -1})
    assert antipode(TAU2) == Element({F("[[]]"): -1, F("[]", "[]"): 1})
    for t in (CHERRY, CHAIN3):
        assert antipode(t) == Element({t.as_forest(): -1, F("[]", "[[]]"): 2, F("[]", "[]", "[]"): -1})
    assert antipode(UNIT) == Element({UNIT: 1})


def _recursive_antipode(f: Forest, memo={}) -> Element:
    """``S(t) = -t - sum' S(cut) kept`` for trees, multiplicative on forests."""
    if f in memo:
        return memo[f]
    if f.is_unit():
        out = Element({UNIT: 1})
    elif len(f) > 1:
        out = Element({UNIT: 1})
        for t in f:
            s = _recursive_antipode(t.as_forest())
            out = Element((k1 * k2, c1 * c2) for k1, c1 in out.items() for k2, c2 in s.items())
    else:
        out = Element({f: -1})
        for (l, r), c in coproduct(f).items():
            if l.is_unit() or r.is_unit():
                continue
            s = _recursive_antipode(l)
            out = out - Element((k * r, c * c2) for k, c2 in s.items())
    memo[f] = out
    return out


@pytest.mark.parametrize("n", range(1, 8))
def test_antipode_partition_formula_matches_recursion(n):
    for t in enumerate_trees(n):
        assert antipode(t) == _recursive_antipode(t.as_forest())


def test_partitions_count_edge_subsets():
    for t in enumerate_trees(5):
        assert len(partitions(t)) == 2 ** (t.order - 1)


def test_counit_and_multiply():
    assert counit(UNIT) == 1
    assert counit(BULLET) == 0
    assert multiply(BULLET, TAU2) == Element({F("[]", "[[]]"): 1})
    assert multiply(UNIT, TAU2) == Element({TAU2.as_forest(): 1})


def test_graft():
    assert graft(BULLET, BULLET) == TAU2
    assert graft(TAU2, BULLET) == CHERRY
    assert graft(BULLET, TAU2) == CHAIN3


forests_upto5 = [f for n in range(6) for f in enumerate_forests(n)]


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(forests_upto5))
def test_axioms_on_random_forests(f):
    assert all_axioms_hold(TREES, f)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(forests_upto5), st.sampled_from(forests_upto5))
def test_coproduct_is_multiplicative(x, y):
    assert not product_coproduct_defect(TREES, x, y)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([t for n in range(1, 7) for t in enumerate_trees(n)]))
def test_coproduct_is_graded(t):
    for (l, r), _ in coproduct(t).items():
        assert l.degree + r.degree == t.order
