"""Words over a finite alphabet and the shuffle Hopf algebra.

Product is the shuffle, coproduct is deconcatenation, and the antipode sends
a word of length n to (-1)^n times its reversal. Words render as their
letters joined by commas; the empty word is ``1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product as cartesian
from typing import Iterable, Sequence, Union

from .errors import DomainError, MismatchError, ParseError
from .linear import Element

UNIT_TEXT = "1"


@dataclass(frozen=True)
class Alphabet:
    symbols: tuple[str, ...]

    def __post_init__(self):
        symbols = tuple(str(s) for s in self.symbols)
        if not symbols:
            raise DomainError("alphabet must be non-empty")
        if len(set(symbols)) != len(symbols):
            raise DomainError("alphabet symbols must be distinct")
        for s in symbols:
            if not s or s == UNIT_TEXT or any(ch in s for ch in ",\t\n "):
                raise DomainError(f"invalid alphabet symbol {s!r}")
        object.__setattr__(self, "symbols", symbols)

    @classmethod
    def of(cls, symbols: Iterable[str] | str) -> Alphabet:
        if isinstance(symbols, str):
            symbols = [s.strip() for s in symbols.split(",")] if "," in symbols else list(symbols)
        return cls(tuple(symbols))

    def __len__(self) -> int:
        return len(self.symbols)

    def index(self, symbol: str) -> int:
        try:
            return self.symbols.index(symbol)
        except ValueError:
            raise ParseError(f"letter {symbol!r} not in alphabet {','.join(self.symbols)}") from None

    def word(self, letters: Sequence[int | str] | str = ()) -> Word:
        if isinstance(letters, str):
            return Word.parse(letters, self)
        return Word(self, tuple(self.index(a) if isinstance(a, str) else a for a in letters))

    def words(self, n: int) -> list[Word]:
        return [Word(self, ls) for ls in cartesian(range(len(self)), repeat=n)]

    def __str__(self) -> str:
        return ",".join(self.symbols)


@dataclass(frozen=True)
class Word:
    alphabet: Alphabet
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        letters = tuple(int(a) for a in self.letters)
        for a in letters:
            if not 0 <= a < len(self.alphabet):
                raise DomainError(f"letter index {a} outside alphabet of size {len(self.alphabet)}")
        object.__setattr__(self, "letters", letters)

    @property
    def degree(self) -> int:
        return len(self.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __add__(self, other: Word) -> Word:
        """Concatenation (not the algebra product)."""
        _check_same(self, other)
        return Word(self.alphabet, self.letters + other.letters)

    def reversed(self) -> Word:
        return Word(self.alphabet, self.letters[::-1])

    def is_unit(self) -> bool:
        return not self.letters

    def __lt__(self, other: Word) -> bool:
        return (len(self), self.letters) < (len(other), other.letters)

    def __str__(self) -> str:
        if not self.letters:
            return UNIT_TEXT
        return ",".join(self.alphabet.symbols[a] for a in self.letters)

    def __repr__(self) -> str:
        return f"Word({self})"

    @classmethod
    def parse(cls, text: str, alphabet: Alphabet) -> Word:
        text = text.strip()
        if text == UNIT_TEXT:
            return cls(alphabet)
        return cls(alphabet, tuple(alphabet.index(s.strip()) for s in text.split(",")))


WordLike = Union[Word, Element]


def _check_same(w: Word, w2: Word):
    if w.alphabet != w2.alphabet:
        raise MismatchError("words over different alphabets")


def as_element(x: WordLike) -> Element:
    if isinstance(x, Element):
        return x
    if isinstance(x, Word):
        return Element.basis(x)
    raise TypeError(f"cannot interpret {x!r} as a shuffle-algebra element")


@lru_cache(maxsize=None)
def _shuffle_letters(u: tuple[int, ...], v: tuple[int, ...]) -> tuple[tuple[tuple[int, ...], int], ...]:
    if not u:
        return ((v, 1),)
    if not v:
        return ((u, 1),)
    acc: dict[tuple[int, ...], int] = {}
    for rest, c in _shuffle_letters(u[1:], v):
        key = (u[0],) + rest
        acc[key] = acc.get(key, 0) + c
    for rest, c in _shuffle_letters(u, v[1:]):
        key = (v[0],) + rest
        acc[key] = acc.get(key, 0) + c
    return tuple(acc.items())


def shuffle_words(w: Word, w2: Word) -> Element:
    _check_same(w, w2)
    return Element((Word(w.alphabet, ls), c) for ls, c in _shuffle_letters(w.letters, w2.letters))


def shuffle(x: WordLike, y: WordLike) -> Element:
    """Shuffle product, extended bilinearly."""
    return as_element(x).bilinear(as_element(y), shuffle_words)


def _deconcat_word(w: Word) -> Element:
    a = w.alphabet
    return Element(
        ((Word(a, w.letters[:i]), Word(a, w.letters[i:])), 1) for i in range(len(w) + 1)
    )


def deconcat(x: WordLike) -> Element:
    return as_element(x).linear_map(_deconcat_word)


def _antipode_word(w: Word) -> Element:
    return Element.basis(w.reversed(), (-1) ** len(w))


def word_antipode(x: WordLike) -> Element:
    return as_element(x).linear_map(_antipode_word)


def word_counit(x: WordLike):
    return sum((c for w, c in as_element(x).items() if w.is_unit()), 0)
