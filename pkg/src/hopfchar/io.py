"""Tab-separated text formats for characters, curves, ideals and ``nu`` matrices.

Character file::

    basis: trees            (or: basis: words, followed by alphabet: a,b,c)
    target: rational        (float | complex | complex-rational | laurent(P,M))
    truncation: 4
    kind: character         (optional; general | character | infinitesimal)
    []<TAB>1
    [[]]<TAB>1/2
    ...

Lines starting with ``#`` are comments. Monomials that are not listed are
zero, except that a character on rooted trees may be given by its values on
trees alone.
"""

from __future__ import annotations

from fractions import Fraction
from . import core
from .basis import TREES, HopfBasis, WordBasis
from .core import Functional
from .errors import DomainError, ParseError
from .flows import PolyCurve
from .linear import Element
from .targets import ComplexRational, TargetAlgebra, parse_target
from .wordseries import NuMatrix


def format_functional(f: Functional) -> str:
    lines = f.basis.header()
    lines.append(f"target: {f.target.name}")
    lines.append(f"truncation: {f.truncation}")
    lines.append(f"kind: {f.kind}")
    lines.extend(_value_lines(f))
    return "\n".join(lines) + "\n"


def _value_lines(f: Functional) -> list[str]:
    return [f"{f.basis.format_monomial(m)}\t{f.target.format(v)}" for m, v in f.items()]


def _numbered(text: str) -> list[tuple[int, str]]:
    out = []
    for i, line in enumerate(text.splitlines(), 1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        out.append((i, line.rstrip("\n")))
    return out


def _split_header(lines: list[tuple[int, str]]) -> tuple[dict[str, tuple[int, str]], list[tuple[int, str]]]:
    header: dict[str, tuple[int, str]] = {}
    rest = []
    in_header = True
    for i, line in lines:
        if in_header and "\t" not in line and ":" in line:
            key, _, value = line.partition(":")
            key = key.strip().lower()
            if key in header:
                raise ParseError(f"duplicate header {key!r}", i)
            header[key] = (i, value.strip())
        else:
            in_header = False
            rest.append((i, line))
    return header, rest


def _basis_from_header(header) -> HopfBasis:
    if "basis" not in header:
        raise ParseError("missing 'basis:' header", 1)
    i, name = header["basis"]
    if name == "trees":
        return TREES
    if name == "words":
        if "alphabet" not in header:
            raise ParseError("word basis needs an 'alphabet:' header", i)
        j, symbols = header["alphabet"]
        try:
            return WordBasis(symbols)
        except DomainError as exc:
            raise ParseError(str(exc), j) from None
    raise ParseError(f"unknown basis {name!r}", i)


def _int_header(header, key: str) -> int:
    if key not in header:
        raise ParseError(f"missing '{key}:' header", 1)
    i, v = header[key]
    try:
        n = int(v)
    except ValueError:
        raise ParseError(f"'{key}' must be an integer, got {v!r}", i) from None
    if n < 0:
        raise ParseError(f"'{key}' must be non-negative", i)
    return n


def _target_from_header(header, tol: float | None) -> TargetAlgebra:
    if "target" not in header:
        raise ParseError("missing 'target:' header", 1)
    i, name = header["target"]
    try:
        return parse_target(name, tol)
    except ParseError as exc:
        raise ParseError(exc.reason, i) from None


def _parse_values(basis: HopfBasis, target: TargetAlgebra, N: int, body) -> dict:
    values: dict = {}
    for i, line in body:
        parts = line.split("\t")
        if len(parts) != 2:
            raise ParseError("expected 'monomial<TAB>value'", i)
        try:
            m = basis.parse_monomial(parts[0])
            v = target.parse(parts[1])
        except ParseError as exc:
            raise ParseError(exc.reason, i) from None
        except DomainError as exc:
            raise ParseError(str(exc), i) from None
        if basis.degree(m) > N:
            raise ParseError(f"monomial {parts[0]} has degree above truncation {N}", i)
        if m in values:
            raise ParseError(f"monomial {parts[0]} listed twice", i)
        values[m] = (i, v)
    return values


def parse_functional(text: str, tol: float | None = None) -> Functional:
    header, body = _split_header(_numbered(text))
    basis = _basis_from_header(header)
    target = _target_from_header(header, tol)
    N = _int_header(header, "truncation")
    kind = header.get("kind", (0, core.GENERAL))[1]
    if kind not in core.KINDS:
        raise ParseError(f"unknown kind {kind!r}", header["kind"][0])
    values = _parse_values(basis, target, N, body)
    plain = {m: v for m, (_, v) in values.items()}
    if kind == core.CHARACTER and basis.multiplicative:
        gens = {m: v for m, v in plain.items() if len(basis.factors(m)) == 1}
        f = core.character(basis, N, gens, target)
        for m, (i, v) in values.items():
            if not target.equal(f.value(m), v):
                raise DomainError(f"line {i}: value on {basis.format_monomial(m)} is not the product of its tree values")
        return f
    return Functional(basis, target, N, plain, kind)


def read_functional(path: str, tol: float | None = None) -> Functional:
    with open(path, encoding="utf-8") as fh:
        return parse_functional(fh.read(), tol)


def write_functional(f: Functional, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_functional(f))


# -- curves ---------------------------------------------------------------
#
#   breakpoints: 0 1/2 1
#   basis: trees
#   target: rational
#   truncation: 4
#   piece 0 power 0
#   []<TAB>1
#   piece 0 power 1
#   ...


def format_curve(curve: PolyCurve) -> str:
    lines = ["breakpoints: " + " ".join(str(b) for b in curve.breakpoints)]
    lines += curve.basis.header()
    lines.append(f"target: {curve.target.name}")
    lines.append(f"truncation: {curve.truncation}")
    for i, piece in enumerate(curve.pieces):
        for k, f in enumerate(piece):
            lines.append(f"piece {i} power {k}")
            lines.extend(f"{curve.basis.format_monomial(m)}\t{curve.target.format(v)}" for m, v in sorted(f.support().items(), key=lambda kv: (kv[0].degree, str(kv[0]))))
    return "\n".join(lines) + "\n"


def parse_curve(text: str) -> PolyCurve:
    lines = _numbered(text)
    header_lines = []
    blocks: list[tuple[int, int, int, list]] = []
    for i, line in lines:
        s = line.strip()
        if s.startswith("piece "):
            toks = s.split()
            if len(toks) != 4 or toks[2] != "power":
                raise ParseError("expected 'piece I power K'", i)
            try:
                blocks.append((i, int(toks[1]), int(toks[3]), []))
            except ValueError:
                raise ParseError("piece and power must be integers", i) from None
        elif blocks:
            blocks[-1][3].append((i, line))
        else:
            header_lines.append((i, line))
    header, extra = _split_header(header_lines)
    if extra:
        raise ParseError("value line before the first 'piece' block", extra[0][0])
    if "breakpoints" not in header:
        raise ParseError("missing 'breakpoints:' header", 1)
    bi, btxt = header["breakpoints"]
    try:
        breakpoints = [Fraction(x) for x in btxt.split()]
    except (ValueError, ZeroDivisionError):
        raise ParseError("bad breakpoint", bi) from None
    basis = _basis_from_header(header)
    target = _target_from_header(header, None)
    N = _int_header(header, "truncation")
    npieces = len(breakpoints) - 1
    coeffs: list[dict[int, Functional]] = [dict() for _ in range(max(npieces, 0))]
    for i, piece, power, body in blocks:
        if not 0 <= piece < npieces or power < 0:
            raise ParseError(f"piece {piece} / power {power} out of range", i)
        if power in coeffs[piece]:
            raise ParseError(f"piece {piece} power {power} given twice", i)
        vals = {m: v for m, (_, v) in _parse_values(basis, target, N, body).items()}
        coeffs[piece][power] = Functional(basis, target, N, vals, core.INFINITESIMAL)
    pieces = []
    for c in coeffs:
        top = max(c, default=0)
        pieces.append([c.get(k, Functional(basis, target, N, {}, core.INFINITESIMAL)) for k in range(top + 1)])
    try:
        return PolyCurve(breakpoints, pieces)
    except DomainError as exc:
        raise ParseError(str(exc)) from None


# -- ideal generators -----------------------------------------------------


def parse_generators(text: str) -> core.IdealSpec:
    """Generators as ``monomial<TAB>coefficient`` lines, blocks separated by ``---``."""
    header, body = _split_header(_numbered(text))
    basis = _basis_from_header(header)
    gens: list[Element] = []
    current: list = []
    for i, line in body:
        if line.strip() == "---":
            if current:
                gens.append(Element(current))
            current = []
            continue
        parts = line.split("\t")
        if len(parts) != 2:
            raise ParseError("expected 'monomial<TAB>coefficient'", i)
        try:
            current.append((basis.parse_monomial(parts[0]), Fraction(parts[1].strip())))
        except (ValueError, ZeroDivisionError, ParseError, DomainError) as exc:
            raise ParseError(f"bad generator term: {exc}", i) from None
    if current:
        gens.append(Element(current))
    return core.IdealSpec(basis, gens)


def format_generators(spec: core.IdealSpec) -> str:
    lines = spec.basis.header()
    blocks = []
    for g in spec.generators:
        blocks.append("\n".join(f"{spec.basis.format_monomial(m)}\t{c}" for m, c in sorted(g.items(), key=lambda kv: str(kv[0]))))
    return "\n".join(lines) + "\n" + "\n---\n".join(blocks) + "\n"


# -- nu matrices and complex vectors --------------------------------------


def parse_nu(text: str) -> NuMatrix:
    """One row per ``k``: whitespace-separated complex rationals, one per letter."""
    rows = []
    for i, line in _numbered(text):
        try:
            rows.append(tuple(ComplexRational.parse(tok) for tok in line.split()))
        except ParseError as exc:
            raise ParseError(exc.reason, i) from None
    try:
        return NuMatrix(tuple(rows))
    except DomainError as exc:
        raise ParseError(str(exc)) from None


def parse_complex_vector(text: str) -> tuple[ComplexRational, ...]:
    return tuple(ComplexRational.parse(tok) for tok in text.split(",") if tok.strip())


def format_coproduct(x: Element, basis: HopfBasis) -> str:
    rows = sorted(x.items(), key=lambda kv: ((kv[0][0].degree, str(kv[0][0])), (kv[0][1].degree, str(kv[0][1]))))
    return "".join(f"{basis.format_monomial(l)}\t{basis.format_monomial(r)}\t{c}\n" for (l, r), c in rows)


def format_element(x: Element, basis: HopfBasis) -> str:
    rows = sorted(x.items(), key=lambda kv: (kv[0].degree, str(kv[0])))
    return "".join(f"{basis.format_monomial(m)}\t{c}\n" for m, c in rows)
