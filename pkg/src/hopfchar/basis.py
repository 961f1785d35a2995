"""Graded connected Hopf algebras seen through a monomial basis.

A basis provider hands the convolution machinery in :mod:`hopfchar.core`
everything it needs: the monomials of each degree, and the structure maps on
single monomials. Rooted-tree forests are a multiplicative basis (every
monomial is a product of trees), words are not.
"""

from __future__ import annotations

from functools import lru_cache

from . import trees as T
from . import words as W
from .linear import Element


class HopfBasis:
    name = "abstract"
    multiplicative = False

    unit = None

    def monomials(self, n: int) -> list:
        raise NotImplementedError

    def monomials_upto(self, n: int) -> list:
        out = []
        for k in range(n + 1):
            out.extend(self.monomials(k))
        return out

    def degree(self, m) -> int:
        return m.degree

    def coproduct(self, m) -> tuple:
        """Coproduct of one monomial as ``((left, right, coeff), ...)``."""
        raise NotImplementedError

    def product(self, a, b) -> Element:
        raise NotImplementedError

    def antipode(self, m) -> Element:
        raise NotImplementedError

    def counit(self, m):
        return 1 if m == self.unit else 0

    def format_monomial(self, m) -> str:
        return str(m)

    def parse_monomial(self, text: str):
        raise NotImplementedError

    def header(self) -> list[str]:
        return [f"basis: {self.name}"]

    # multiplicative bases only
    def generators(self, n: int) -> list:
        raise NotImplementedError

    def factors(self, m) -> tuple:
        raise NotImplementedError


class TreeBasis(HopfBasis):
    """Forests of rooted trees, graded by number of vertices."""

    name = "trees"
    multiplicative = True
    unit = T.UNIT

    def monomials(self, n: int) -> list:
        return T.enumerate_forests(n)

    def coproduct(self, m: T.Forest) -> tuple:
        return _tree_coproduct_terms(m)

    def product(self, a: T.Forest, b: T.Forest) -> Element:
        return Element.basis(a * b)

    def antipode(self, m: T.Forest) -> Element:
        return T.antipode(m)

    def parse_monomial(self, text: str) -> T.Forest:
        return T.Forest.parse(text)

    def generators(self, n: int) -> list:
        return [t.as_forest() for t in T.enumerate_trees(n)]

    def factors(self, m: T.Forest) -> tuple:
        return tuple(t.as_forest() for t in m.trees)

    def __eq__(self, other):
        return isinstance(other, TreeBasis)

    def __hash__(self):
        return hash("trees")

    def __repr__(self):
        return "TreeBasis()"


@lru_cache(maxsize=None)
def _tree_coproduct_terms(m: T.Forest) -> tuple:
    return tuple((l, r, c) for (l, r), c in sorted(T.coproduct(m).items(), key=lambda kv: (str(kv[0][0]), str(kv[0][1]))))


class WordBasis(HopfBasis):
    """Words over a fixed alphabet with shuffle and deconcatenation."""

    name = "words"
    multiplicative = False

    def __init__(self, alphabet: W.Alphabet | str):
        if not isinstance(alphabet, W.Alphabet):
            alphabet = W.Alphabet.of(alphabet)
        self.alphabet = alphabet
        self.unit = W.Word(alphabet)

    def monomials(self, n: int) -> list:
        return self.alphabet.words(n)

    def coproduct(self, m: W.Word) -> tuple:
        a = self.alphabet
        return tuple((W.Word(a, m.letters[:i]), W.Word(a, m.letters[i:]), 1) for i in range(len(m) + 1))

    def product(self, a: W.Word, b: W.Word) -> Element:
        return W.shuffle_words(a, b)

    def antipode(self, m: W.Word) -> Element:
        return W.word_antipode(m)

    def parse_monomial(self, text: str) -> W.Word:
        return W.Word.parse(text, self.alphabet)

    def header(self) -> list[str]:
        return [f"basis: {self.name}", f"alphabet: {self.alphabet}"]

    def __eq__(self, other):
        return isinstance(other, WordBasis) and other.alphabet == self.alphabet

    def __hash__(self):
        return hash(("words", self.alphabet))

    def __repr__(self):
        return f"WordBasis({self.alphabet})"


TREES = TreeBasis()
