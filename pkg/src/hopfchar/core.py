"""Convolution algebra of truncated linear maps from a graded Hopf algebra.

A :class:`Functional` is a linear map ``H -> B`` known on every basis
monomial of degree ``<= N``. Because the Hopf algebras here are graded and
connected, every formula (convolution, exp, log, BCH) only ever needs finitely
many terms in each degree, so truncation at ``N`` loses nothing below ``N``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Iterable, Mapping

from .basis import HopfBasis
from .errors import DomainError, KindError, MismatchError
from .linear import Element
from .targets import RATIONAL, TargetAlgebra

GENERAL = "general"
CHARACTER = "character"
INFINITESIMAL = "infinitesimal"
KINDS = (GENERAL, CHARACTER, INFINITESIMAL)


def _key(m) -> tuple:
    return (m.degree, str(m))


class Functional:
    """Truncated linear map on a Hopf basis with values in a target algebra.

    ``values`` maps monomials to target values; monomials that are absent
    evaluate to zero. ``kind`` is a tag, not a proof: use
    :func:`is_character` / :func:`is_infinitesimal` to verify it.
    """

    __slots__ = ("basis", "target", "truncation", "kind", "_values")

    def __init__(
        self,
        basis: HopfBasis,
        target: TargetAlgebra,
        truncation: int,
        values: Mapping[Any, Any] | None = None,
        kind: str = GENERAL,
    ):
        if not isinstance(truncation, int) or truncation < 0:
            raise DomainError("truncation degree must be a non-negative integer")
        if kind not in KINDS:
            raise DomainError(f"unknown functional kind {kind!r}")
        self.basis = basis
        self.target = target
        self.truncation = truncation
        self.kind = kind
        vals = {}
        for m, v in (values or {}).items():
            if basis.degree(m) > truncation:
                continue
            if not _is_exact_zero(v):
                vals[m] = v
        self._values = vals

    # -- access -------------------------------------------------------------

    def value(self, m):
        v = self._values.get(m)
        return self.target.zero() if v is None else v

    def __call__(self, x):
        if isinstance(x, Element):
            acc = self.target.zero()
            for m, c in x.items():
                if self.basis.degree(m) > self.truncation:
                    raise DomainError(f"{m} lies above truncation degree {self.truncation}")
                v = self._values.get(m)
                if v is not None:
                    acc = acc + _scale(c, v)
            return acc
        if hasattr(x, "as_forest"):
            x = x.as_forest()
        if self.basis.degree(x) > self.truncation:
            raise DomainError(f"{x} lies above truncation degree {self.truncation}")
        return self.value(x)

    def monomials(self) -> list:
        return self.basis.monomials_upto(self.truncation)

    def support(self) -> dict:
        return dict(self._values)

    def items(self):
        """``(monomial, value)`` for every monomial of degree <= N, zeros included."""
        for m in self.monomials():
            yield m, self.value(m)

    def with_kind(self, kind: str) -> Functional:
        return Functional(self.basis, self.target, self.truncation, self._values, kind)

    # -- vector space structure --------------------------------------------

    def _check(self, other: Functional):
        if not isinstance(other, Functional):
            raise TypeError("expected a Functional")
        if other.basis != self.basis:
            raise MismatchError("functionals over different Hopf bases")
        if other.target != self.target:
            raise MismatchError("functionals with different target algebras")
        if other.truncation != self.truncation:
            raise MismatchError(f"truncation mismatch: {self.truncation} vs {other.truncation}")

    def __add__(self, other: Functional) -> Functional:
        self._check(other)
        vals = dict(self._values)
        for m, v in other._values.items():
            vals[m] = vals[m] + v if m in vals else v
        kind = INFINITESIMAL if self.kind == other.kind == INFINITESIMAL else GENERAL
        return Functional(self.basis, self.target, self.truncation, vals, kind)

    def __neg__(self) -> Functional:
        kind = INFINITESIMAL if self.kind == INFINITESIMAL else GENERAL
        return Functional(self.basis, self.target, self.truncation, {m: -v for m, v in self._values.items()}, kind)

    def __sub__(self, other: Functional) -> Functional:
        return self + (-other)

    def scale(self, c) -> Functional:
        kind = INFINITESIMAL if self.kind == INFINITESIMAL else GENERAL
        return Functional(self.basis, self.target, self.truncation, {m: _scale(c, v) for m, v in self._values.items()}, kind)

    def __mul__(self, c):
        if isinstance(c, Functional):
            return NotImplemented
        return self.scale(c)

    __rmul__ = __mul__

    def equals(self, other: Functional) -> bool:
        self._check(other)
        keys = set(self._values) | set(other._values)
        return all(self.target.equal(self.value(m), other.value(m)) for m in keys)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Functional):
            return NotImplemented
        try:
            return self.equals(other)
        except MismatchError:
            return False

    __hash__ = None

    def __repr__(self) -> str:
        return f"Functional({self.kind}, {self.basis.name}, {self.target.name}, N={self.truncation}, support={len(self._values)})"


def _is_exact_zero(v) -> bool:
    try:
        return v == 0
    except TypeError:
        return False


def _scale(c, v):
    if c == 1:
        return v
    if c == -1:
        return -v
    return c * v


# -- constructors -------------------------------------------------------------


def unit_character(basis: HopfBasis, truncation: int, target: TargetAlgebra = RATIONAL) -> Functional:
    """The convolution unit ``u_B o eps``."""
    return Functional(basis, target, truncation, {basis.unit: target.one()}, CHARACTER)


def zero_functional(basis: HopfBasis, truncation: int, target: TargetAlgebra = RATIONAL) -> Functional:
    return Functional(basis, target, truncation, {}, INFINITESIMAL)


def _expand_multiplicative(basis: HopfBasis, target: TargetAlgebra, truncation: int, gen: Mapping) -> dict:
    one = target.one()
    vals = {basis.unit: one}
    for m in basis.monomials_upto(truncation):
        if m == basis.unit:
            continue
        acc = None
        for g in basis.factors(m):
            v = gen.get(g)
            if v is None:
                acc = None
                break
            acc = v if acc is None else acc * v
        if acc is not None:
            vals[m] = acc
    return vals


def _normalize_generator_keys(basis: HopfBasis, gen_values: Mapping) -> dict:
    out = {}
    for g, v in gen_values.items():
        if isinstance(g, str):
            g = basis.parse_monomial(g)
        if hasattr(g, "as_forest"):
            g = g.as_forest()
        out[g] = v
    return out


def character(basis: HopfBasis, truncation: int, generator_values: Mapping, target: TargetAlgebra = RATIONAL) -> Functional:
    """Character on a multiplicative basis from its values on the generators (trees)."""
    if not basis.multiplicative:
        raise DomainError(f"basis {basis.name} has no free generators; give values on all monomials")
    gen = _normalize_generator_keys(basis, generator_values)
    return Functional(basis, target, truncation, _expand_multiplicative(basis, target, truncation, gen), CHARACTER)


def infinitesimal(basis: HopfBasis, truncation: int, generator_values: Mapping, target: TargetAlgebra = RATIONAL) -> Functional:
    """Infinitesimal character supported on generators (zero on products)."""
    if not basis.multiplicative:
        raise DomainError(f"basis {basis.name} has no free generators; give values on all monomials")
    gen = _normalize_generator_keys(basis, generator_values)
    if any(len(basis.factors(g)) != 1 for g in gen):
        raise DomainError("infinitesimal characters vanish on products; give values on generators only")
    return Functional(basis, target, truncation, gen, INFINITESIMAL)


def _as_character(f: Functional) -> Functional:
    """Re-expand a character from its generator values (multiplicative bases)."""
    gens = {m: v for m, v in f._values.items() if m != f.basis.unit and len(f.basis.factors(m)) == 1}
    vals = _expand_multiplicative(f.basis, f.target, f.truncation, gens)
    return Functional(f.basis, f.target, f.truncation, vals, CHARACTER)


# -- convolution --------------------------------------------------------------


def _convolve_at(f: Functional, g: Functional, m):
    acc = None
    fv, gv = f._values, g._values
    for l, r, c in f.basis.coproduct(m):
        a = fv.get(l)
        if a is None:
            continue
        b = gv.get(r)
        if b is None:
            continue
        term = _scale(c, a * b)
        acc = term if acc is None else acc + term
    return acc


def _convolve_full(f: Functional, g: Functional, kind: str = GENERAL) -> Functional:
    vals = {}
    for m in f.basis.monomials_upto(f.truncation):
        v = _convolve_at(f, g, m)
        if v is not None:
            vals[m] = v
    return Functional(f.basis, f.target, f.truncation, vals, kind)


def convolve(f: Functional, g: Functional) -> Functional:
    """``f * g = mu_B o (f (x) g) o Delta``, the convolution product."""
    f._check(g)
    if f.kind == CHARACTER and g.kind == CHARACTER:
        if f.basis.multiplicative:
            gen = {}
            for n in range(1, f.truncation + 1):
                for t in f.basis.generators(n):
                    v = _convolve_at(f, g, t)
                    if v is not None:
                        gen[t] = v
            return Functional(f.basis, f.target, f.truncation, _expand_multiplicative(f.basis, f.target, f.truncation, gen), CHARACTER)
        return _convolve_full(f, g, CHARACTER)
    return _convolve_full(f, g)


def convolve_many(fs: Iterable[Functional]) -> Functional:
    fs = list(fs)
    if not fs:
        raise DomainError("empty convolution product")
    acc = fs[0]
    for f in fs[1:]:
        acc = convolve(acc, f)
    return acc


def power(f: Functional, n: int) -> Functional:
    if n < 0:
        raise DomainError("use char_inverse for negative powers")
    acc = unit_character(f.basis, f.truncation, f.target)
    if f.kind != CHARACTER:
        acc = acc.with_kind(GENERAL)
    base = f
    while n:
        if n & 1:
            acc = convolve(acc, base)
        n >>= 1
        if n:
            base = convolve(base, base)
    return acc


def compose_with_antipode(f: Functional) -> Functional:
    """``f o S`` for any functional."""
    vals = {}
    for m in f.basis.monomials_upto(f.truncation):
        v = f(f.basis.antipode(m))
        if not _is_exact_zero(v):
            vals[m] = v
    return Functional(f.basis, f.target, f.truncation, vals, f.kind)


def char_inverse(phi: Functional) -> Functional:
    """Group inverse ``phi o S`` of a character."""
    if phi.kind != CHARACTER:
        raise KindError("char_inverse needs a character")
    if phi.basis.multiplicative:
        b = phi.basis
        gen = {}
        for n in range(1, phi.truncation + 1):
            for t in b.generators(n):
                gen[t] = phi(b.antipode(t))
        return Functional(b, phi.target, phi.truncation, _expand_multiplicative(b, phi.target, phi.truncation, gen), CHARACTER)
    return compose_with_antipode(phi)


def _require_infinitesimal(psi: Functional, what: str):
    if psi.kind == CHARACTER:
        raise KindError(f"{what} needs an infinitesimal character, got a character")
    if not psi.target.is_zero(psi.value(psi.basis.unit)):
        raise KindError(f"{what}: value on the unit must vanish")


def exp_star(psi: Functional) -> Functional:
    """Convolution exponential ``sum_k psi^{*k} / k!``; the series stops at ``k = N``."""
    _require_infinitesimal(psi, "exp_star")
    N = psi.truncation
    total = unit_character(psi.basis, N, psi.target).with_kind(GENERAL)
    term = total
    for k in range(1, N + 1):
        term = _convolve_full(term, psi).scale(Fraction(1, k))
        total = total + term
    if psi.basis.multiplicative:
        return _as_character(total)
    return total.with_kind(CHARACTER)


def log_star(phi: Functional) -> Functional:
    """Convolution logarithm ``sum_{k>=1} (-1)^{k+1} (phi - e)^{*k} / k``."""
    if phi.kind != CHARACTER:
        raise KindError("log_star needs a character")
    N = phi.truncation
    unit = unit_character(phi.basis, N, phi.target)
    u = (phi - unit).with_kind(GENERAL)
    total = Functional(phi.basis, phi.target, N, {}, GENERAL)
    term = u
    for k in range(1, N + 1):
        coeff = Fraction((-1) ** (k + 1), k)
        total = total + term.scale(coeff)
        term = _convolve_full(term, u)
    if phi.basis.multiplicative:
        b = phi.basis
        gens = {m: v for m, v in total._values.items() if m != b.unit and len(b.factors(m)) == 1}
        return Functional(b, phi.target, N, gens, INFINITESIMAL)
    return Functional(phi.basis, phi.target, N, {m: v for m, v in total._values.items() if m != phi.basis.unit}, INFINITESIMAL)


def lie_bracket(psi1: Functional, psi2: Functional) -> Functional:
    """Commutator ``psi1 * psi2 - psi2 * psi1``."""
    psi1._check(psi2)
    if psi1.kind == CHARACTER or psi2.kind == CHARACTER:
        raise KindError("lie_bracket needs infinitesimal characters")
    out = _convolve_full(psi1, psi2) - _convolve_full(psi2, psi1)
    return out.with_kind(INFINITESIMAL)


def bch(psi1: Functional, psi2: Functional) -> Functional:
    """Baker-Campbell-Hausdorff product ``log(exp(psi1) * exp(psi2))``."""
    psi1._check(psi2)
    _require_infinitesimal(psi1, "bch")
    _require_infinitesimal(psi2, "bch")
    return log_star(convolve(exp_star(psi1), exp_star(psi2)))


def truncate(f: Functional, degree: int) -> Functional:
    """Restriction to monomials of degree ``<= degree`` (a quotient-group map on characters)."""
    if degree < 0:
        raise DomainError("truncation degree must be non-negative")
    if degree > f.truncation:
        raise DomainError(f"cannot raise truncation from {f.truncation} to {degree}")
    return Functional(f.basis, f.target, degree, f._values, f.kind)


# -- ultrametric --------------------------------------------------------------


def um_order(f: Functional) -> int | float:
    """Largest ``D`` such that ``f`` vanishes in all degrees ``<= D``.

    Returns ``-1`` if ``f`` does not vanish on the unit and ``math.inf`` if
    ``f`` vanishes through its truncation degree; truncated data cannot tell
    order ``>= N`` apart from a genuinely zero functional.
    """
    for n in range(f.truncation + 1):
        for m in f.basis.monomials(n):
            if not f.target.is_zero(f.value(m)):
                return n - 1
    return math.inf


def distance(f: Functional, g: Functional) -> Fraction:
    """Ultrametric ``2^{-ord(f - g)}``; ``0`` when the two agree through degree N."""
    f._check(g)
    order = um_order(f - g)
    if order == math.inf:
        return Fraction(0)
    return Fraction(1, 2**order) if order >= 0 else Fraction(2)


# -- character tests ----------------------------------------------------------


@dataclass
class Check:
    ok: bool
    witness: Any = None
    residual: Any = None
    detail: str = ""

    def __bool__(self) -> bool:
        return self.ok

    def __str__(self) -> str:
        if self.ok:
            return "ok" + (f" ({self.detail})" if self.detail else "")
        return f"fails at {self.witness}: residual {self.residual}" + (f" ({self.detail})" if self.detail else "")


def _pairs(basis: HopfBasis, N: int):
    mons = [m for m in basis.monomials_upto(N) if m != basis.unit]
    for i, x in enumerate(mons):
        for y in mons[i:]:
            if basis.degree(x) + basis.degree(y) <= N:
                yield x, y


def is_character(f: Functional, tol: float | None = None) -> Check:
    """Check ``f(1) = 1`` and ``f(xy) = f(x) f(y)`` for all products of degree <= N."""
    t = f.target
    eq = _equality(t, tol)
    one = f.value(f.basis.unit)
    if not eq(one, t.one()):
        return Check(False, f.basis.unit, one - t.one(), "value on unit")
    for x, y in _pairs(f.basis, f.truncation):
        lhs = f(f.basis.product(x, y))
        rhs = f.value(x) * f.value(y)
        if not eq(lhs, rhs):
            return Check(False, (x, y), lhs - rhs)
    return Check(True)


def is_infinitesimal(f: Functional, tol: float | None = None) -> Check:
    """Check ``f(1) = 0`` and ``f(xy) = 0`` for non-unit monomials ``x, y``."""
    t = f.target
    eq = _equality(t, tol)
    u = f.value(f.basis.unit)
    if not eq(u, t.zero()):
        return Check(False, f.basis.unit, u, "value on unit")
    for x, y in _pairs(f.basis, f.truncation):
        v = f(f.basis.product(x, y))
        if not eq(v, t.zero()):
            return Check(False, (x, y), v)
    return Check(True)


def _equality(t: TargetAlgebra, tol: float | None) -> Callable[[Any, Any], bool]:
    if tol is None or t.exact:
        return t.equal
    return lambda a, b: abs(a - b) <= tol


# -- ideals -------------------------------------------------------------------


@dataclass
class IdealSpec:
    """Generators of a two-sided ideal; each must lie in the kernel of the counit."""

    basis: HopfBasis
    generators: list[Element] = field(default_factory=list)

    def __post_init__(self):
        for g in self.generators:
            eps = sum((c for m, c in g.items() if m == self.basis.unit), 0)
            if eps != 0:
                raise DomainError(f"generator {g} has nonzero counit {eps}")


class Echelon:
    """Reduced row echelon form of a subspace of the monomial span, over exact rationals.

    The pivot of a row is its largest monomial in (degree, text) order; all
    other rows vanish at every pivot, so reduction is order independent.
    """

    def __init__(self):
        self.rows: dict[Any, Element] = {}

    def reduce(self, v: Element) -> Element:
        for p, row in self.rows.items():
            c = v.coefficient(p)
            if c != 0:
                v = v - row * c
        return v

    def insert(self, v: Element) -> bool:
        v = self.reduce(v)
        if not v:
            return False
        pivot = max(v.keys(), key=_key)
        c = v.coefficient(pivot)
        v = v * (Fraction(1) / c if not hasattr(c, "im") else _cinv(c))
        for p, row in list(self.rows.items()):
            d = row.coefficient(pivot)
            if d != 0:
                self.rows[p] = row - v * d
        self.rows[pivot] = v
        return True

    def __contains__(self, v: Element) -> bool:
        return not self.reduce(v)

    def __len__(self) -> int:
        return len(self.rows)

    def basis(self) -> list[Element]:
        return [self.rows[p] for p in sorted(self.rows, key=_key)]


def _cinv(c):
    n = c.re * c.re + c.im * c.im
    return type(c)(c.re / n, -c.im / n)


@dataclass
class IdealClosure:
    degree: int
    spanning: list[Element]
    echelon: Echelon

    @property
    def rows(self) -> list[Element]:
        return self.echelon.basis()

    def dimension(self, degree: int | None = None) -> int:
        if degree is None:
            return len(self.echelon)
        return sum(1 for p in self.echelon.rows if p.degree == degree)

    def contains(self, x: Element) -> bool:
        return x in self.echelon

    def reduce(self, x: Element) -> Element:
        return self.echelon.reduce(x)


def _max_degree(basis: HopfBasis, x: Element) -> int:
    return max((basis.degree(m) for m in x.keys()), default=0)


def ideal_closure(spec: IdealSpec, degree: int) -> IdealClosure:
    """Span of all products ``m * g`` (monomial times generator) of degree <= ``degree``."""
    b = spec.basis
    ech = Echelon()
    spanning = []
    gens = sorted(spec.generators, key=lambda g: (_max_degree(b, g), str(g)))
    for target_degree in range(degree + 1):
        for g in gens:
            d = _max_degree(b, g)
            if not g or d > target_degree:
                continue
            for m in b.monomials(target_degree - d):
                elem = Element(
                    (k2, c * c2) for k, c in g.items() for k2, c2 in b.product(m, k).items()
                )
                if elem:
                    spanning.append(elem)
                    ech.insert(elem)
    return IdealClosure(degree, spanning, ech)


def is_hopf_ideal(spec: IdealSpec, degree: int) -> Check:
    """Verify counit, coideal and antipode conditions on the degree-<=M closure.

    ``Delta(x)`` lies in ``J (x) H + H (x) J`` exactly when it is killed by
    ``q (x) q``, where ``q`` is reduction modulo ``J``; that is the test used.
    """
    b = spec.basis
    closure = ideal_closure(spec, degree)
    for row in closure.rows:
        eps = sum((c for m, c in row.items() if m == b.unit), 0)
        if eps != 0:
            return Check(False, row, eps, "counit")
    for row in closure.rows:
        acc: dict = {}
        for m, c in row.items():
            for l, r, c2 in b.coproduct(m):
                ql = closure.reduce(Element.basis(l))
                if not ql:
                    continue
                qr = closure.reduce(Element.basis(r))
                for kl, cl in ql.items():
                    for kr, cr in qr.items():
                        acc[(kl, kr)] = acc.get((kl, kr), 0) + c * c2 * cl * cr
        residual = Element(acc)
        if residual:
            return Check(False, row, residual, "coideal")
    for row in closure.rows:
        s = row.linear_map(b.antipode)
        rest = closure.reduce(s)
        if rest:
            return Check(False, row, rest, "antipode")
    return Check(True, detail=f"dimension {len(closure.echelon)} through degree {degree}")


@dataclass
class Annihilation:
    ok: bool
    worst: float
    first_failure: Element | None = None
    residual: Any = None
    degree: int | None = None

    def __bool__(self) -> bool:
        return self.ok

    def __str__(self) -> str:
        if self.ok:
            return "annihilates: yes"
        return f"annihilates: no; first failure in degree {self.degree} at {self.first_failure}: residual {self.residual}"


def annihilates(phi: Functional, spec: IdealSpec, degree: int | None = None, tol: float | None = None) -> Annihilation:
    """Does ``phi`` vanish on the ideal through ``degree``? Reports the worst residual."""
    degree = phi.truncation if degree is None else degree
    if degree > phi.truncation:
        raise DomainError(f"functional only known through degree {phi.truncation}")
    if spec.basis != phi.basis:
        raise MismatchError("ideal and functional over different bases")
    closure = ideal_closure(spec, degree)
    eq = _equality(phi.target, tol)
    zero = phi.target.zero()
    worst = 0.0
    first = None
    for elem in closure.spanning:
        v = phi(elem)
        if not eq(v, zero):
            worst = max(worst, phi.target.magnitude(v))
            if first is None:
                first = (elem, v)
    if first is None:
        return Annihilation(True, 0.0)
    return Annihilation(False, worst, first[0], first[1], _max_degree(phi.basis, first[0]))
