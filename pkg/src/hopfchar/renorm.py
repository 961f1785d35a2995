"""Birkhoff factorisation of Laurent-valued characters by minimal subtraction.

For ``phi`` with values in truncated Laurent series, the Bogoliubov recursion
in increasing degree produces characters ``gamma_minus`` (pure pole part on
the augmentation ideal) and ``gamma_plus`` (no poles) with
``gamma_minus * phi = gamma_plus``, i.e. ``phi = gamma_minus^{-1} * gamma_plus``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import core
from .core import Functional
from .errors import DomainError, KindError
from .targets import LaurentAlgebra, ms_split


@dataclass(frozen=True)
class BirkhoffPair:
    gamma_minus: Functional
    gamma_plus: Functional

    @property
    def truncation(self) -> int:
        return self.gamma_minus.truncation


def _prepared(phi: Functional, gm: dict, m):
    """Bogoliubov preparation: ``phi(m) + sum' gamma_minus(m') phi(m'')``."""
    b = phi.basis
    acc = phi.value(m)
    for l, r, c in b.coproduct(m):
        if l == b.unit or r == b.unit:
            continue
        g = gm.get(l)
        if g is None:
            continue
        acc = acc + c * (g * phi.value(r))
    return acc


def birkhoff(phi: Functional) -> BirkhoffPair:
    """Split a Laurent-valued character into counterterm and renormalised parts."""
    if phi.kind != core.CHARACTER:
        raise KindError("birkhoff expects a character")
    if not isinstance(phi.target, LaurentAlgebra):
        raise DomainError("birkhoff needs a Laurent-series target")
    b, t, N = phi.basis, phi.target, phi.truncation
    gm: dict = {b.unit: t.one()}
    gp: dict = {b.unit: t.one()}
    if b.multiplicative:
        for n in range(1, N + 1):
            # products of lower-degree generators are needed as left legs
            for m in b.monomials(n):
                fs = b.factors(m)
                if len(fs) > 1:
                    gm[m] = _product(t, (gm[f] for f in fs))
            for g in b.generators(n):
                pole, regular = ms_split(_prepared(phi, gm, g))
                gm[g] = -pole
                gp[g] = regular
        minus = core.character(b, N, {g: v for g, v in gm.items() if len(b.factors(g)) == 1}, t)
        plus = core.character(b, N, {g: v for g, v in gp.items() if g != b.unit}, t)
    else:
        for m in b.monomials_upto(N):
            if m == b.unit:
                continue
            pole, regular = ms_split(_prepared(phi, gm, m))
            gm[m] = -pole
            gp[m] = regular
        minus = Functional(b, t, N, gm, core.CHARACTER)
        plus = Functional(b, t, N, gp, core.CHARACTER)
    return BirkhoffPair(minus, plus)


def _product(t, values):
    acc = t.one()
    for v in values:
        acc = acc * v
    return acc


@dataclass(frozen=True)
class CountertermRow:
    monomial: object
    counterterm: object
    renormalised: Fraction


def counterterm_report(pair: BirkhoffPair) -> list[CountertermRow]:
    """Per generator: ``gamma_minus`` value and the constant term of ``gamma_plus``."""
    b = pair.gamma_minus.basis
    rows = []
    for n in range(1, pair.truncation + 1):
        mons = b.generators(n) if b.multiplicative else b.monomials(n)
        for m in mons:
            rows.append(CountertermRow(m, pair.gamma_minus.value(m), pair.gamma_plus.value(m).constant_term()))
    return rows


def format_report(rows: list[CountertermRow], basis) -> str:
    lines = ["monomial\tcounterterm\trenormalised"]
    for r in rows:
        lines.append(f"{basis.format_monomial(r.monomial)}\t{r.counterterm}\t{r.renormalised}")
    return "\n".join(lines) + "\n"
