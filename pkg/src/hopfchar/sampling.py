"""Seeded random test data: characters, infinitesimals, curves."""

from __future__ import annotations

import random
from fractions import Fraction

from . import core
from .basis import TREES, WordBasis
from .core import Functional
from .flows import PolyCurve
from .targets import RATIONAL, LaurentAlgebra, TargetAlgebra
from .trees import enumerate_trees
from .wordseries import path_signature


def rational(rng: random.Random, size: int = 5, den: int = 4) -> Fraction:
    return Fraction(rng.randint(-size, size), rng.randint(1, den))


def tree_values(rng: random.Random, truncation: int, start: int = 1) -> dict:
    return {t: rational(rng) for n in range(start, truncation + 1) for t in enumerate_trees(n)}


def tree_character(rng: random.Random, truncation: int, target: TargetAlgebra = RATIONAL) -> Functional:
    return core.character(TREES, truncation, {t: target.embed(v) for t, v in tree_values(rng, truncation).items()}, target)


def tree_infinitesimal(rng: random.Random, truncation: int, target: TargetAlgebra = RATIONAL, start: int = 1) -> Functional:
    return core.infinitesimal(TREES, truncation, {t: target.embed(v) for t, v in tree_values(rng, truncation, start).items()}, target)


def word_character(rng: random.Random, basis: WordBasis, truncation: int, segments: int = 2, target: TargetAlgebra = RATIONAL) -> Functional:
    """Signature of a random polygonal path: a shuffle character."""
    incs = [[rational(rng, 3, 3) for _ in basis.alphabet.symbols] for _ in range(segments)]
    return path_signature(basis, truncation, incs, target)


def word_infinitesimal(rng: random.Random, basis: WordBasis, truncation: int) -> Functional:
    return core.log_star(word_character(rng, basis, truncation))


def laurent_character(rng: random.Random, truncation: int, target: LaurentAlgebra, depth: int = 2, top: int = 2) -> Functional:
    """Tree values are Laurent polynomials with exponents in ``[-depth, top]``."""
    vals = {}
    for n in range(1, truncation + 1):
        for t in enumerate_trees(n):
            vals[t] = target.series({k: rng.randint(-3, 3) for k in range(-depth, top + 1)})
    return core.character(TREES, truncation, vals, target)


def linear_curve(rng: random.Random, truncation: int, pieces: int = 2) -> PolyCurve:
    """Random piecewise-linear curve with rational breakpoints."""
    inner = sorted({Fraction(rng.randint(1, 7), 8) for _ in range(pieces - 1)})
    bps = [Fraction(0)] + inner + [Fraction(1)]
    return PolyCurve(bps, [[tree_infinitesimal(rng, truncation), tree_infinitesimal(rng, truncation)] for _ in bps[1:]])
