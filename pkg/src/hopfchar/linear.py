"""Finite linear combinations over hashable basis keys."""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Hashable, Iterable, Iterator, Mapping


class Element:
    """Immutable finite linear combination ``sum c_k * k``.

    Keys are basis monomials (forests, words) or tuples of them for tensor
    legs. Coefficients are exact numbers (``int``, ``Fraction`` or
    :class:`~hopfchar.targets.ComplexRational`). Zero coefficients are never
    stored.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Hashable, object] | Iterable[tuple[Hashable, object]] = ()):
        acc: dict = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for key, c in items:
            acc[key] = acc.get(key, 0) + c
        self._terms = {k: v for k, v in acc.items() if v != 0}
        self._hash = None

    @classmethod
    def basis(cls, key: Hashable, coeff: object = 1) -> Element:
        return cls({key: coeff})

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def keys(self):
        return self._terms.keys()

    def __iter__(self) -> Iterator[Hashable]:
        return iter(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __getitem__(self, key: Hashable):
        return self._terms.get(key, 0)

    def coefficient(self, key: Hashable):
        return self._terms.get(key, 0)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Element):
            return self._terms == other._terms
        if other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __add__(self, other: Element) -> Element:
        if not isinstance(other, Element):
            return NotImplemented
        return Element(list(self._terms.items()) + list(other._terms.items()))

    def __neg__(self) -> Element:
        return Element({k: -v for k, v in self._terms.items()})

    def __sub__(self, other: Element) -> Element:
        if not isinstance(other, Element):
            return NotImplemented
        return self + (-other)

    def __mul__(self, c) -> Element:
        if isinstance(c, Element):
            return NotImplemented
        return Element({k: c * v for k, v in self._terms.items()})

    __rmul__ = __mul__

    def map_keys(self, fn: Callable[[Hashable], Hashable]) -> Element:
        return Element((fn(k), v) for k, v in self._terms.items())

    def linear_map(self, fn: Callable[[Hashable], Element]) -> Element:
        """Extend ``fn`` (key -> Element) linearly."""
        out: list = []
        for k, c in self._terms.items():
            out.extend((k2, c * c2) for k2, c2 in fn(k).items())
        return Element(out)

    def bilinear(self, other: Element, fn: Callable[[Hashable, Hashable], Element]) -> Element:
        """Extend ``fn`` (key, key -> Element) bilinearly."""
        out: list = []
        for k1, c1 in self._terms.items():
            for k2, c2 in other._terms.items():
                c = c1 * c2
                out.extend((k, c * c3) for k, c3 in fn(k1, k2).items())
        return Element(out)

    def tensor(self, other: Element) -> Element:
        return Element(
            ((k1, k2), c1 * c2) for k1, c1 in self._terms.items() for k2, c2 in other._terms.items()
        )

    def homogeneous(self, degree: int, degree_of: Callable[[Hashable], int]) -> Element:
        return Element({k: v for k, v in self._terms.items() if degree_of(k) == degree})

    def __repr__(self) -> str:
        if not self._terms:
            return "Element(0)"
        parts = [f"{v}*{k}" for k, v in sorted(self._terms.items(), key=lambda kv: str(kv[0]))]
        return "Element(" + " + ".join(parts) + ")"


def as_fraction(value) -> Fraction:
    """Parse ``'p/q'``, ints and Fractions into a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"not an exact rational: {value!r}")
