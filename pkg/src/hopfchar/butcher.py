"""Butcher group: Runge-Kutta characters, exact flow, order and symplecticity."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from . import core
from .basis import TREES
from .core import Functional, IdealSpec
from .errors import DomainError, KindError, ParseError
from .linear import Element, as_fraction
from .targets import RATIONAL, TargetAlgebra
from .trees import BULLET, Forest, Tree, enumerate_trees, graft


@dataclass(frozen=True)
class RKMethod:
    """Butcher tableau with exact rational entries."""

    A: tuple[tuple[Fraction, ...], ...]
    b: tuple[Fraction, ...]
    c: tuple[Fraction, ...] | None = None
    name: str = ""

    def __post_init__(self):
        A = tuple(tuple(as_fraction(x) for x in row) for row in self.A)
        b = tuple(as_fraction(x) for x in self.b)
        s = len(b)
        if s == 0 or len(A) != s or any(len(row) != s for row in A):
            raise DomainError(f"tableau dimensions inconsistent: A is {len(A)}x?, b has {s} entries")
        c = tuple(sum(row, Fraction(0)) for row in A) if self.c is None else tuple(as_fraction(x) for x in self.c)
        if len(c) != s:
            raise DomainError("node vector c has the wrong length")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)

    @property
    def stages(self) -> int:
        return len(self.b)

    def consistency_warnings(self) -> list[str]:
        out = []
        for i, (row, ci) in enumerate(zip(self.A, self.c)):
            if sum(row, Fraction(0)) != ci:
                out.append(f"stage {i}: c_i = {ci} but row sum of A is {sum(row, Fraction(0))}")
        return out

    def permuted(self, perm: Sequence[int]) -> RKMethod:
        """Same method with stages relabelled: new stage ``k`` is old stage ``perm[k]``."""
        A = tuple(tuple(self.A[perm[i]][perm[j]] for j in range(self.stages)) for i in range(self.stages))
        return RKMethod(A, tuple(self.b[p] for p in perm), tuple(self.c[p] for p in perm), self.name)

    def composed(self, other: RKMethod | None = None, h: Fraction = Fraction(1, 2)) -> RKMethod:
        """One step of ``self`` of size ``h`` followed by one step of ``other`` of size ``1 - h``."""
        other = self if other is None else other
        h = Fraction(h)
        g = 1 - h
        s, t = self.stages, other.stages
        A = []
        for i in range(s):
            A.append(tuple(h * x for x in self.A[i]) + (Fraction(0),) * t)
        for i in range(t):
            A.append(tuple(h * x for x in self.b) + tuple(g * x for x in other.A[i]))
        b = tuple(h * x for x in self.b) + tuple(g * x for x in other.b)
        c = tuple(h * x for x in self.c) + tuple(h + g * x for x in other.c)
        return RKMethod(tuple(A), b, c, f"{self.name}+{other.name}")

    def to_text(self) -> str:
        lines = [str(self.stages)]
        lines += [" ".join(str(x) for x in row) for row in self.A]
        lines.append(" ".join(str(x) for x in self.b))
        lines.append(" ".join(str(x) for x in self.c))
        return "\n".join(lines) + "\n"

    @classmethod
    def parse(cls, text: str, name: str = "") -> RKMethod:
        """Parse ``s``, then ``s`` rows of A, then b, then c (whitespace separated)."""
        rows = [(i, ln.split("#", 1)[0].split()) for i, ln in enumerate(text.splitlines(), 1)]
        rows = [(i, r) for i, r in rows if r]
        if not rows:
            raise ParseError("empty tableau file")
        lineno, first = rows[0]
        try:
            s = int(first[0])
        except ValueError:
            raise ParseError(f"stage count expected, got {first[0]!r}", lineno) from None
        if len(first) != 1 or s < 1:
            raise ParseError("first line must be the positive stage count", lineno)
        if len(rows) != s + 3:
            raise ParseError(f"expected {s + 3} non-empty lines for s={s}, got {len(rows)}")

        def nums(entry) -> list[Fraction]:
            ln, toks = entry
            if len(toks) != s:
                raise ParseError(f"expected {s} entries, got {len(toks)}", ln)
            try:
                return [Fraction(t) for t in toks]
            except (ValueError, ZeroDivisionError):
                raise ParseError(f"bad rational in {' '.join(toks)!r}", ln) from None

        A = tuple(tuple(nums(r)) for r in rows[1 : s + 1])
        b = tuple(nums(rows[s + 1]))
        c = tuple(nums(rows[s + 2]))
        return cls(A, b, c, name)


F = Fraction

FORWARD_EULER = RKMethod(((0,),), (1,), (0,), "forward Euler")
BACKWARD_EULER = RKMethod(((1,),), (1,), (1,), "backward Euler")
IMPLICIT_MIDPOINT = RKMethod(((F(1, 2),),), (1,), (F(1, 2),), "implicit midpoint")
EXPLICIT_MIDPOINT = RKMethod(((0, 0), (F(1, 2), 0)), (0, 1), (0, F(1, 2)), "explicit midpoint")
HEUN = RKMethod(((0, 0), (1, 0)), (F(1, 2), F(1, 2)), (0, 1), "Heun")
RK4 = RKMethod(
    ((0, 0, 0, 0), (F(1, 2), 0, 0, 0), (0, F(1, 2), 0, 0), (0, 0, 1, 0)),
    (F(1, 6), F(1, 3), F(1, 3), F(1, 6)),
    (0, F(1, 2), F(1, 2), 1),
    "classical RK4",
)

METHODS = {
    "euler": FORWARD_EULER,
    "backward-euler": BACKWARD_EULER,
    "implicit-midpoint": IMPLICIT_MIDPOINT,
    "explicit-midpoint": EXPLICIT_MIDPOINT,
    "heun": HEUN,
    "rk4": RK4,
}


def elementary_weights(m: RKMethod, t: Tree) -> tuple[Fraction, ...]:
    """Stage weights ``g_i(t) = prod_children (A g(child))_i``; ``a(t) = b . g(t)``."""
    return _stage_weights(m, t)


@lru_cache(maxsize=4096)
def _stage_weights(m: RKMethod, t: Tree) -> tuple[Fraction, ...]:
    s = m.stages
    g = [Fraction(1)] * s
    for child in t.children:
        gc = _stage_weights(m, child)
        for i in range(s):
            g[i] *= sum((m.A[i][j] * gc[j] for j in range(s)), Fraction(0))
    return tuple(g)


def rk_character(m: RKMethod, truncation: int, target: TargetAlgebra = RATIONAL) -> Functional:
    """B-series character of a Runge-Kutta method (elementary weights)."""
    for w in m.consistency_warnings():
        warnings.warn(w, stacklevel=2)
    vals = {}
    for n in range(1, truncation + 1):
        for t in enumerate_trees(n):
            g = _stage_weights(m, t)
            vals[t] = target.embed(sum((bi * gi for bi, gi in zip(m.b, g)), Fraction(0)))
    return core.character(TREES, truncation, vals, target)


def bullet_infinitesimal(truncation: int, target: TargetAlgebra = RATIONAL, value=1) -> Functional:
    return core.infinitesimal(TREES, truncation, {BULLET: target.embed(value)}, target)


def exact_flow(truncation: int, target: TargetAlgebra = RATIONAL) -> Functional:
    """Exact-flow character, defined as the convolution exponential of the one-node infinitesimal."""
    if truncation < 1:
        raise DomainError("exact flow needs truncation >= 1")
    return _exact_flow_cached(truncation, target)


@lru_cache(maxsize=None)
def _exact_flow_cached(truncation: int, target: TargetAlgebra) -> Functional:
    return core.exp_star(bullet_infinitesimal(truncation, target))


def scale_step(a: Functional, h) -> Functional:
    """Grading dilation ``a_h(t) = h^{|t|} a(t)``, extended multiplicatively."""
    if a.kind != core.CHARACTER:
        raise KindError("scale_step expects a character")
    h = as_fraction(h) if not isinstance(h, float) else h
    vals = {}
    for n in range(1, a.truncation + 1):
        hn = h**n
        for t in enumerate_trees(n):
            vals[t] = hn * a.value(t.as_forest())
    return core.character(TREES, a.truncation, vals, a.target)


def euler_character(truncation: int, h=1, target: TargetAlgebra = RATIONAL) -> Functional:
    """Forward Euler with step ``h``: ``h`` on the single vertex, zero on larger trees."""
    return core.character(TREES, truncation, {BULLET: target.embed(h)}, target)


def euler_composite(n: int, truncation: int, target: TargetAlgebra = RATIONAL) -> Functional:
    """``n`` forward Euler steps of size ``1/n``: the ``n``-th convolution power of ``a_{1/n}``."""
    if not isinstance(n, int) or n < 1:
        raise DomainError("number of Euler steps must be a positive integer")
    return core.power(euler_character(truncation, Fraction(1, n), target), n)


@dataclass(frozen=True)
class MethodOrder:
    order: int
    saturated: bool
    truncation: int

    def __str__(self) -> str:
        return f">={self.truncation}" if self.saturated else str(self.order)


def order_of(a: Functional, tol: float | None = None) -> MethodOrder:
    """Order ``p`` with ``d(a, e) = 2^{-p}``; saturated if ``a`` matches ``e`` through the truncation."""
    e = exact_flow(a.truncation, a.target)
    diff = a - e
    if tol is not None and not a.target.exact:
        for n in range(a.truncation + 1):
            for m in TREES.monomials(n):
                if abs(diff.value(m)) > tol:
                    return MethodOrder(n - 1, False, a.truncation)
        return MethodOrder(a.truncation, True, a.truncation)
    order = core.um_order(diff)
    if order == math.inf:
        return MethodOrder(a.truncation, True, a.truncation)
    return MethodOrder(int(order), False, a.truncation)


def symplectic_generator(u: Tree, v: Tree) -> Element:
    """``u o v + v o u - u v`` with ``o`` the Butcher product."""
    return Element(
        [(graft(u, v).as_forest(), 1), (graft(v, u).as_forest(), 1), (Forest((u, v)), -1)]
    )


def symplectic_ideal(truncation: int) -> IdealSpec:
    """Generators of the ideal whose annihilator is the group of symplectic tree maps."""
    if truncation < 2:
        raise DomainError("the symplecticity ideal starts in degree 2")
    gens = []
    seen = set()
    for total in range(2, truncation + 1):
        for k in range(1, total // 2 + 1):
            for u in enumerate_trees(k):
                for v in enumerate_trees(total - k):
                    g = symplectic_generator(u, v)
                    if g and g not in seen:
                        seen.add(g)
                        gens.append(g)
    return IdealSpec(TREES, gens)


def growth_profile(a: Functional) -> list[tuple[int, float]]:
    """``(n, max_{|t|=n} |a(t)|^{1/n})`` for ``n = 1..N``."""
    out = []
    for n in range(1, a.truncation + 1):
        best = 0.0
        for t in enumerate_trees(n):
            v = a.target.magnitude(a.value(t.as_forest()))
            best = max(best, v ** (1.0 / n))
        out.append((n, best))
    return out
