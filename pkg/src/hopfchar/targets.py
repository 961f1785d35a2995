"""Commutative unital target algebras for characters.

Each algebra object knows how to build its unit and zero, embed rationals,
compare values (exactly, or within an absolute tolerance for floating point)
and read/write values as text. The values themselves are ordinary Python
numbers or :class:`LaurentSeries` and combine with ``+``, ``-`` and ``*``.

``LaurentSeries`` is a finite model of germs of meromorphic functions at 0:
exponents are confined to ``[-P, M]``; products drop exponents above ``M``
and refuse to create poles deeper than ``P``. There is deliberately no
inverse.
"""

from __future__ import annotations

import cmath
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .errors import DomainError, MismatchError, ParseError, PoleOverflow, TargetError

DEFAULT_TOLERANCE = 1e-9


@dataclass(frozen=True)
class ComplexRational:
    """Exact complex number ``re + im*i`` with rational parts."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", Fraction(self.re))
        object.__setattr__(self, "im", Fraction(self.im))

    @staticmethod
    def of(x) -> ComplexRational:
        if isinstance(x, ComplexRational):
            return x
        if isinstance(x, (int, Fraction)):
            return ComplexRational(Fraction(x))
        raise TypeError(f"not an exact complex number: {x!r}")

    def __add__(self, other):
        try:
            o = ComplexRational.of(other)
        except TypeError:
            return NotImplemented
        return ComplexRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return ComplexRational(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-ComplexRational.of(other))

    def __rsub__(self, other):
        return ComplexRational.of(other) - self

    def __mul__(self, other):
        if isinstance(other, (float, complex)):
            return complex(self) * other
        try:
            o = ComplexRational.of(other)
        except TypeError:
            return NotImplemented
        return ComplexRational(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __eq__(self, other):
        try:
            o = ComplexRational.of(other)
        except TypeError:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __abs__(self):
        return abs(complex(self))

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        sign = "-" if self.im < 0 else "+"
        return f"{self.re}{sign}{abs(self.im)}i"

    @classmethod
    def parse(cls, text: str) -> ComplexRational:
        text = text.strip().replace(" ", "")
        m = re.fullmatch(r"([+-]?[0-9/]+)(?:([+-][0-9/]+)i)?", text)
        if m is None:
            m2 = re.fullmatch(r"([+-]?[0-9/]*)i", text)
            if m2 is None:
                raise ParseError(f"bad complex rational {text!r}")
            im = m2.group(1)
            im = {"": "1", "+": "1", "-": "-1"}.get(im, im)
            return cls(Fraction(0), Fraction(im))
        return cls(Fraction(m.group(1)), Fraction(m.group(2) or 0))


class LaurentSeries:
    """Truncated Laurent series ``sum c_k z^k`` with ``-P <= k <= M``."""

    __slots__ = ("_c", "pole_bound", "trunc")

    def __init__(self, coeffs: Mapping[int, object] | None = None, pole_bound: int = 4, trunc: int = 4):
        self.pole_bound = pole_bound
        self.trunc = trunc
        c = {}
        for k, v in (coeffs or {}).items():
            v = Fraction(v)
            if v == 0 or k > trunc:
                continue
            if k < -pole_bound:
                raise PoleOverflow(f"z^{k} exceeds pole bound {pole_bound}")
            c[int(k)] = v
        self._c = c

    @property
    def coeffs(self) -> dict[int, Fraction]:
        return dict(self._c)

    @property
    def min_exp(self) -> int | None:
        return min(self._c) if self._c else None

    @property
    def max_exp(self) -> int | None:
        return max(self._c) if self._c else None

    def coefficient(self, k: int) -> Fraction:
        return self._c.get(k, Fraction(0))

    def _like(self, coeffs) -> LaurentSeries:
        return LaurentSeries(coeffs, self.pole_bound, self.trunc)

    def _coerce(self, other) -> LaurentSeries | None:
        if isinstance(other, LaurentSeries):
            if (other.pole_bound, other.trunc) != (self.pole_bound, self.trunc):
                raise MismatchError("Laurent series with different (P, M) configuration")
            return other
        if isinstance(other, (int, Fraction)):
            return self._like({0: other})
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        c = dict(self._c)
        for k, v in o._c.items():
            c[k] = c.get(k, 0) + v
        return self._like(c)

    __radd__ = __add__

    def __neg__(self):
        return self._like({k: -v for k, v in self._c.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self._like({k: other * v for k, v in self._c.items()})
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        c: dict[int, Fraction] = {}
        for i, a in self._c.items():
            for j, b in o._c.items():
                if i + j <= self.trunc:
                    c[i + j] = c.get(i + j, 0) + a * b
        return self._like(c)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self._like({0: other})
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        return hash(frozenset(self._c.items()))

    def is_zero(self) -> bool:
        return not self._c

    def pole_part(self) -> LaurentSeries:
        return self._like({k: v for k, v in self._c.items() if k < 0})

    def regular_part(self) -> LaurentSeries:
        return self._like({k: v for k, v in self._c.items() if k >= 0})

    def constant_term(self) -> Fraction:
        return self.coefficient(0)

    def __str__(self):
        if not self._c:
            return "0"
        return "+".join(f"{v}*z^{k}" for k, v in sorted(self._c.items()))

    def __repr__(self):
        return f"LaurentSeries({self}, P={self.pole_bound}, M={self.trunc})"


def ms_split(x: LaurentSeries) -> tuple[LaurentSeries, LaurentSeries]:
    """Minimal subtraction: ``(pole part, regular part)`` with ``x = pole + regular``."""
    return x.pole_part(), x.regular_part()


def minimal_subtraction(x: LaurentSeries) -> LaurentSeries:
    return x.pole_part()


class TargetAlgebra:
    """Base contract; subclasses fix the value type."""

    name = "abstract"
    exact = True
    tol = 0.0

    def zero(self):
        return self.embed(0)

    def one(self):
        return self.embed(1)

    def embed(self, q):
        raise NotImplementedError

    def add(self, x, y):
        return x + y

    def negate(self, x):
        return -x

    def multiply(self, x, y):
        return x * y

    def equal(self, x, y) -> bool:
        return x == y

    def is_zero(self, x) -> bool:
        return self.equal(x, self.zero())

    def magnitude(self, x) -> float:
        return float(abs(x))

    def exp(self, s: ComplexRational):
        if ComplexRational.of(s) == 0:
            return self.one()
        raise TargetError(f"target {self.name} has no exponential for nonzero exponents")

    def format(self, x) -> str:
        return str(x)

    def parse(self, text: str):
        raise NotImplementedError

    def __eq__(self, other):
        return type(self) is type(other) and self.name == other.name and self.tol == other.tol

    def __hash__(self):
        return hash((type(self).__name__, self.name))

    def __repr__(self):
        return f"<target {self.name}>"


class RationalAlgebra(TargetAlgebra):
    name = "rational"

    def embed(self, q):
        return Fraction(q)

    def parse(self, text: str):
        try:
            return Fraction(text.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad rational {text!r}") from exc


class FloatAlgebra(TargetAlgebra):
    name = "float"
    exact = False

    def __init__(self, tol: float = DEFAULT_TOLERANCE):
        self.tol = tol

    def embed(self, q):
        return float(q)

    def equal(self, x, y) -> bool:
        return abs(x - y) <= self.tol

    def exp(self, s):
        s = ComplexRational.of(s)
        if s.im != 0:
            raise TargetError("real float target cannot hold exp of a non-real exponent")
        return 1.0 if s.re == 0 else math.exp(float(s.re))

    def format(self, x) -> str:
        return repr(float(x))

    def parse(self, text: str):
        try:
            return float(Fraction(text.strip())) if "/" in text else float(text)
        except ValueError as exc:
            raise ParseError(f"bad float {text!r}") from exc


class ComplexAlgebra(TargetAlgebra):
    name = "complex"
    exact = False

    def __init__(self, tol: float = DEFAULT_TOLERANCE):
        self.tol = tol

    def embed(self, q):
        if isinstance(q, (ComplexRational, complex)):
            return complex(q)
        return complex(float(q))

    def equal(self, x, y) -> bool:
        return abs(x - y) <= self.tol

    def exp(self, s):
        s = ComplexRational.of(s)
        return complex(1.0) if s == 0 else cmath.exp(complex(s))

    def format(self, x) -> str:
        return repr(complex(x))

    def parse(self, text: str):
        try:
            return complex(text.strip().replace(" ", ""))
        except ValueError as exc:
            raise ParseError(f"bad complex {text!r}") from exc


class ComplexRationalAlgebra(TargetAlgebra):
    name = "complex-rational"

    def embed(self, q):
        return ComplexRational.of(q)

    def magnitude(self, x) -> float:
        return abs(complex(x))

    def parse(self, text: str):
        return ComplexRational.parse(text)


class LaurentAlgebra(TargetAlgebra):
    """Truncated Laurent series with pole bound ``P`` and truncation ``M``."""

    def __init__(self, pole_bound: int = 4, trunc: int = 4):
        if pole_bound < 0 or trunc < 0:
            raise DomainError("Laurent parameters must be non-negative")
        self.pole_bound = pole_bound
        self.trunc = trunc
        self.name = f"laurent({pole_bound},{trunc})"

    def embed(self, q):
        if isinstance(q, LaurentSeries):
            if (q.pole_bound, q.trunc) != (self.pole_bound, self.trunc):
                raise MismatchError(f"series with (P, M) = ({q.pole_bound}, {q.trunc}) in {self.name}")
            return q
        return LaurentSeries({0: q}, self.pole_bound, self.trunc)

    def series(self, coeffs: Mapping[int, object]) -> LaurentSeries:
        return LaurentSeries(coeffs, self.pole_bound, self.trunc)

    def magnitude(self, x) -> float:
        return max((abs(float(v)) for v in x.coeffs.values()), default=0.0)

    def format(self, x) -> str:
        return str(x)

    def parse(self, text: str):
        text = text.strip().replace(" ", "")
        if text == "0":
            return self.zero()
        coeffs: dict[int, Fraction] = {}
        for term in text.split("+"):
            m = re.fullmatch(r"(-?[0-9]+(?:/[0-9]+)?)\*z\^(-?[0-9]+)", term)
            if m is None:
                raise ParseError(f"bad Laurent term {term!r}")
            k = int(m.group(2))
            coeffs[k] = coeffs.get(k, 0) + Fraction(m.group(1))
        return self.series(coeffs)


RATIONAL = RationalAlgebra()


def parse_target(text: str, tol: float | None = None) -> TargetAlgebra:
    """Target from its header name: ``rational``, ``float``, ``complex``, ``laurent(P,M)``."""
    text = text.strip().replace(" ", "")
    if text == "rational":
        return RationalAlgebra()
    if text == "complex-rational":
        return ComplexRationalAlgebra()
    if text == "float":
        return FloatAlgebra(DEFAULT_TOLERANCE if tol is None else tol)
    if text == "complex":
        return ComplexAlgebra(DEFAULT_TOLERANCE if tol is None else tol)
    m = re.fullmatch(r"laurent\((\d+),(\d+)\)", text)
    if m:
        return LaurentAlgebra(int(m.group(1)), int(m.group(2)))
    raise ParseError(f"unknown target {text!r}")
