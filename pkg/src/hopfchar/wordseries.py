"""Characters of the shuffle Hopf algebra and extended word series.

``xi_action`` rescales a character by ``exp(<z, nu-weight of w>)`` on each
word ``w``; the pair ``(character, z)`` then forms the semidirect product
group with ``(d, z)(d', z') = (d * Xi_z(d'), z + z')``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Sequence

from . import core
from .basis import WordBasis
from .core import Functional
from .errors import DomainError, KindError, MismatchError
from .targets import ComplexRational, TargetAlgebra, RATIONAL


@dataclass(frozen=True)
class NuMatrix:
    """Weights ``nu[k][a]`` for ``k < d`` and each letter ``a``."""

    entries: tuple[tuple[ComplexRational, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(ComplexRational.of(x) for x in row) for row in self.entries)
        if not rows or len({len(r) for r in rows}) != 1:
            raise DomainError("nu must be a non-empty rectangular d x |A| matrix")
        object.__setattr__(self, "entries", rows)

    @property
    def d(self) -> int:
        return len(self.entries)

    @property
    def letters(self) -> int:
        return len(self.entries[0])

    def exponent(self, z: Sequence, word) -> ComplexRational:
        """``sum_k z_k (nu[k][a_1] + ... + nu[k][a_n])``."""
        if len(z) != self.d:
            raise DomainError(f"z has length {len(z)}, expected d = {self.d}")
        acc = ComplexRational()
        for zk, row in zip(z, self.entries):
            s = ComplexRational()
            for a in word.letters:
                s = s + row[a]
            acc = acc + ComplexRational.of(zk) * s
        return acc


def xi_action(z: Sequence, delta: Functional, nu: NuMatrix) -> Functional:
    """``Xi_z(delta)(w) = exp(<z, nu(w)>) delta(w)``."""
    if not isinstance(delta.basis, WordBasis):
        raise DomainError("xi_action acts on characters of a shuffle algebra")
    if nu.letters != len(delta.basis.alphabet):
        raise MismatchError(f"nu has {nu.letters} columns for an alphabet of {len(delta.basis.alphabet)} letters")
    z = [ComplexRational.of(x) if not isinstance(x, (float, complex)) else x for x in z]
    if any(isinstance(x, (float, complex)) for x in z):
        raise DomainError("z must be exact (rational or complex-rational); the exponential is evaluated once per word")
    t = delta.target
    vals = {}
    for w, v in delta.support().items():
        s = nu.exponent(z, w)
        factor = t.one() if s == 0 else t.exp(s)
        vals[w] = factor * v
    return Functional(delta.basis, t, delta.truncation, vals, delta.kind)


def segment_signature(basis: WordBasis, truncation: int, increment: Sequence, target: TargetAlgebra = RATIONAL) -> Functional:
    """Iterated integrals of a straight segment: ``w -> x_{a_1} ... x_{a_n} / n!``.

    This is a character of the shuffle algebra; convolving several gives the
    signature of a polygonal path (Chen's identity).
    """
    if len(increment) != len(basis.alphabet):
        raise DomainError("increment must have one entry per letter")
    inc = [target.embed(x) for x in increment]
    vals = {}
    for n in range(truncation + 1):
        inv = Fraction(1, factorial(n))
        for w in basis.monomials(n):
            v = target.one()
            for a in w.letters:
                v = v * inc[a]
            vals[w] = inv * v
    return Functional(basis, target, truncation, vals, core.CHARACTER)


def path_signature(basis: WordBasis, truncation: int, increments: Sequence[Sequence], target: TargetAlgebra = RATIONAL) -> Functional:
    return core.convolve_many(segment_signature(basis, truncation, inc, target) for inc in increments)


@dataclass(frozen=True)
class ExtendedWordSeries:
    """Element ``(character, z)`` of the semidirect product with ``C^d``."""

    character: Functional
    z: tuple
    nu: NuMatrix

    def __post_init__(self):
        if self.character.kind != core.CHARACTER:
            raise KindError("extended word series carry a character")
        object.__setattr__(self, "z", tuple(ComplexRational.of(x) for x in self.z))
        if len(self.z) != self.nu.d:
            raise DomainError("z must have length d")

    def __mul__(self, other: ExtendedWordSeries) -> ExtendedWordSeries:
        if other.nu != self.nu:
            raise MismatchError("extended word series with different nu")
        char = core.convolve(self.character, xi_action(self.z, other.character, self.nu))
        return ExtendedWordSeries(char, tuple(a + b for a, b in zip(self.z, other.z)), self.nu)

    def inverse(self) -> ExtendedWordSeries:
        minus = tuple(-x for x in self.z)
        return ExtendedWordSeries(xi_action(minus, core.char_inverse(self.character), self.nu), minus, self.nu)

    @classmethod
    def identity(cls, basis: WordBasis, truncation: int, nu: NuMatrix, target: TargetAlgebra) -> ExtendedWordSeries:
        return cls(core.unit_character(basis, truncation, target), (0,) * nu.d, nu)

    def equals(self, other: ExtendedWordSeries) -> bool:
        return self.z == other.z and self.character.equals(other.character)
