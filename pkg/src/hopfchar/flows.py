"""Evolution equation and time-ordered exponentials for polynomial curves.

A curve of infinitesimal characters is piecewise polynomial in ``t`` with
rational data, so both the solution of ``eta' = eta * a(t)`` and the iterated
simplex integrals are polynomials in ``t`` on each piece and can be computed
exactly, one degree at a time.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import core
from .core import Functional
from .errors import DomainError, MismatchError, TargetError
from .targets import TargetAlgebra


class Poly:
    """Polynomial in ``t`` with exact rational coefficients (constant term first)."""

    __slots__ = ("c",)

    def __init__(self, coeffs: Sequence = ()):
        c = [Fraction(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.c = tuple(c)

    @classmethod
    def const(cls, x) -> Poly:
        return cls((x,))

    def _co(self, other) -> Poly | None:
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.const(other)
        return None

    def __add__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        n = max(len(self.c), len(o.c))
        return Poly(
            (self.c[i] if i < len(self.c) else 0) + (o.c[i] if i < len(o.c) else 0) for i in range(n)
        )

    __radd__ = __add__

    def __neg__(self):
        return Poly(-x for x in self.c)

    def __sub__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Poly(other * x for x in self.c)
        o = self._co(other)
        if o is None:
            return NotImplemented
        if not self.c or not o.c:
            return Poly()
        out = [Fraction(0)] * (len(self.c) + len(o.c) - 1)
        for i, a in enumerate(self.c):
            for j, b in enumerate(o.c):
                out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __call__(self, t) -> Fraction:
        acc = Fraction(0)
        for x in reversed(self.c):
            acc = acc * t + x
        return acc

    def antiderivative(self) -> Poly:
        return Poly((0,) + tuple(x / (i + 1) for i, x in enumerate(self.c)))

    def integral_from(self, a) -> Poly:
        """``t -> int_a^t p(s) ds``."""
        P = self.antiderivative()
        return P - P(a)

    def __eq__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        return self.c == o.c

    def __hash__(self):
        return hash(self.c)

    def __abs__(self):
        return max((abs(x) for x in self.c), default=Fraction(0))

    def __repr__(self):
        return f"Poly{self.c}"


class PolynomialAlgebra(TargetAlgebra):
    """``Q[t]`` as a target; used for curves and their iterated integrals."""

    name = "polynomial"

    def embed(self, q):
        return Poly.const(q)


POLY = PolynomialAlgebra()


@dataclass
class PolyCurve:
    """Piecewise polynomial curve ``[0, 1] -> infinitesimal characters``.

    ``pieces[i][k]`` is the coefficient of ``t^k`` (absolute time) on
    ``[breakpoints[i], breakpoints[i+1]]``. Values at breakpoints need not
    match; integration is piecewise.
    """

    breakpoints: list[Fraction]
    pieces: list[list[Functional]]

    def __post_init__(self):
        self.breakpoints = [Fraction(b) for b in self.breakpoints]
        bp = self.breakpoints
        if len(bp) < 2 or bp[0] != 0 or bp[-1] != 1 or any(x >= y for x, y in zip(bp, bp[1:])):
            raise DomainError("breakpoints must increase strictly from 0 to 1")
        if len(self.pieces) != len(bp) - 1:
            raise DomainError(f"{len(bp) - 1} pieces expected, got {len(self.pieces)}")
        first = None
        for piece in self.pieces:
            if not piece:
                raise DomainError("each piece needs at least one coefficient")
            for f in piece:
                if first is None:
                    first = f
                first._check(f)
                if not core.is_infinitesimal(f):
                    raise DomainError("curve coefficients must be infinitesimal characters")
        if not first.target.exact or first.target.name != "rational":
            raise TargetError("exact integration requires a rational target")
        self._ref = first

    @property
    def basis(self):
        return self._ref.basis

    @property
    def target(self):
        return self._ref.target

    @property
    def truncation(self) -> int:
        return self._ref.truncation

    @classmethod
    def constant(cls, a: Functional) -> PolyCurve:
        return cls([Fraction(0), Fraction(1)], [[a]])

    def poly_functional(self, i: int) -> Functional:
        """Piece ``i`` as one functional with values in ``Q[t]``."""
        acc: dict = {}
        for k, f in enumerate(self.pieces[i]):
            for m, v in f.support().items():
                acc.setdefault(m, [Fraction(0)] * len(self.pieces[i]))[k] += v
        return Functional(self.basis, POLY, self.truncation, {m: Poly(c) for m, c in acc.items()}, core.INFINITESIMAL)

    def at(self, t) -> Functional:
        t = Fraction(t)
        i = self._piece_index(t)
        f = self.poly_functional(i)
        return Functional(self.basis, self.target, self.truncation, {m: p(t) for m, p in f.support().items()}, core.INFINITESIMAL)

    def _piece_index(self, t: Fraction) -> int:
        bp = self.breakpoints
        if not 0 <= t <= 1:
            raise DomainError("time outside [0, 1]")
        for i in range(len(bp) - 1):
            if t < bp[i + 1]:
                return i
        return len(bp) - 2

    def segments(self, lo: Fraction, hi: Fraction):
        """``(i, a, b)`` for the parts of each piece inside ``[lo, hi]``."""
        bp = self.breakpoints
        for i in range(len(bp) - 1):
            a, b = max(bp[i], lo), min(bp[i + 1], hi)
            if a < b:
                yield i, a, b


def _interval(lo, hi) -> tuple[Fraction, Fraction]:
    lo, hi = Fraction(lo), Fraction(hi)
    if not 0 <= lo <= hi <= 1:
        raise DomainError("need 0 <= start <= end <= 1")
    return lo, hi


def evolve(curve: PolyCurve, t_end, t_start=0) -> Functional:
    """Solution at ``t_end`` of ``eta' = eta * a(t)``, ``eta(t_start) = e``.

    Monomials are processed by increasing degree: the right leg of each
    coproduct term is hit by ``a``, which kills the unit, so the left leg has
    strictly smaller degree and its value is already a known polynomial.
    """
    lo, hi = _interval(t_start, t_end)
    b = curve.basis
    mons = b.monomials_upto(curve.truncation)
    current = {m: Fraction(0) for m in mons}
    current[b.unit] = Fraction(1)
    for i, a, z in curve.segments(lo, hi):
        alpha = curve.poly_functional(i).support()
        eta: dict = {b.unit: Poly.const(1)}
        for m in mons:
            if m == b.unit:
                continue
            rhs = Poly()
            for l, r, c in b.coproduct(m):
                ar = alpha.get(r)
                if ar is None or r == b.unit:
                    continue
                el = eta.get(l)
                if el is not None:
                    rhs = rhs + c * (el * ar)
            eta[m] = Poly.const(current[m]) + rhs.integral_from(a)
        current = {m: eta[m](z) for m in mons}
    return Functional(b, curve.target, curve.truncation, current, core.CHARACTER)


def time_ordered_exp(curve: PolyCurve, lo=0, hi=1) -> Functional:
    """Truncated time-ordered exponential ``1 + sum_n int_{lo<=s1<=...<=sn<=hi} a(s1)...a(sn)``.

    Built from the iterated integrals ``I_n(t) = int_lo^t I_{n-1}(s) * a(s) ds``;
    only ``n <= N`` contribute because each factor raises the degree.
    """
    lo, hi = _interval(lo, hi)
    b, N = curve.basis, curve.truncation
    unit = core.unit_character(b, N, POLY).with_kind(core.GENERAL)
    # I_n at the left end of the current segment, as rational functionals
    start = [core.unit_character(b, N, curve.target)] + [
        Functional(b, curve.target, N, {}, core.GENERAL) for _ in range(N)
    ]
    for i, a, z in curve.segments(lo, hi):
        alpha = curve.poly_functional(i)
        prev = unit
        new_start = [start[0]]
        for n in range(1, N + 1):
            integrand = core.convolve(prev, alpha)
            vals = {m: p.integral_from(a) for m, p in integrand.support().items()}
            for m, v in start[n].support().items():
                vals[m] = vals.get(m, Poly()) + v
            prev = Functional(b, POLY, N, vals, core.GENERAL)
            new_start.append(Functional(b, curve.target, N, {m: p(z) for m, p in vals.items()}, core.GENERAL))
        start = new_start
    total = start[0].with_kind(core.GENERAL)
    for f in start[1:]:
        total = total + f
    return total.with_kind(core.CHARACTER)
