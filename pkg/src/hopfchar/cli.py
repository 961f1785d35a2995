"""``hopfchar`` command line.

Every subcommand is a thin wrapper: parse inputs, call the library, print the
library's serialization. Exit status is 0 on success, 1 on a domain error and
2 on malformed input.
"""

from __future__ import annotations

import argparse
import math
import os
import random
import sys
from fractions import Fraction

from . import butcher, core, flows, io, renorm, sampling
from .basis import TREES, WordBasis
from .errors import DomainError, HopfcharError, ParseError
from .linear import Element
from .targets import parse_target
from .trees import Forest, antipode, coproduct, enumerate_trees
from .words import Alphabet, deconcat, word_antipode
from .wordseries import xi_action

DEFAULT_MAX_DEGREE = 10


def max_degree() -> int:
    raw = os.environ.get("HOPFCHAR_MAX_DEGREE", str(DEFAULT_MAX_DEGREE))
    try:
        return int(raw)
    except ValueError:
        raise ParseError(f"HOPFCHAR_MAX_DEGREE must be an integer, got {raw!r}") from None


def _degree(n: int) -> int:
    if n < 1:
        raise DomainError("degree must be >= 1")
    cap = max_degree()
    if n > cap:
        raise DomainError(f"degree {n} exceeds HOPFCHAR_MAX_DEGREE={cap}")
    return n


def _read(path: str, args) -> core.Functional:
    f = io.read_functional(path, args.tol)
    if f.truncation:
        _degree(f.truncation)
    return f


def _method(args) -> butcher.RKMethod:
    if args.tableau:
        with open(args.tableau, encoding="utf-8") as fh:
            return butcher.RKMethod.parse(fh.read(), os.path.basename(args.tableau))
    if args.method:
        return butcher.METHODS[args.method]
    raise ParseError("give --tableau FILE or --method NAME")


def _emit(text: str, args) -> None:
    out = getattr(args, "output", None)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_functional(f: core.Functional, args) -> None:
    _emit(io.format_functional(f), args)


def _element_arg(args):
    """Monomial from ``--tree`` (a forest) or ``--word`` with ``--alphabet``."""
    if args.word is not None:
        if not args.alphabet:
            raise ParseError("--word needs --alphabet")
        basis = WordBasis(Alphabet.of(args.alphabet))
        return basis, Element.basis(basis.parse_monomial(args.word))
    if args.tree is None:
        raise ParseError("give --tree FOREST or --word WORD")
    return TREES, Element.basis(Forest.parse(args.tree))


# -- subcommands ----------------------------------------------------------


def cmd_trees(args):
    if args.count:
        top = _degree(args.max)
        print(" ".join(str(len(enumerate_trees(n))) for n in range(1, top + 1)))
        return
    orders = [args.n] if args.n else range(1, _degree(args.max) + 1)
    for n in orders:
        for t in enumerate_trees(_degree(n)):
            print(f"{n}\t{t}")


def cmd_coproduct(args):
    basis, x = _element_arg(args)
    if basis is TREES:
        _emit(io.format_coproduct(coproduct(x), basis), args)
    else:
        _emit(io.format_coproduct(deconcat(x), basis), args)


def cmd_antipode(args):
    basis, x = _element_arg(args)
    if basis is TREES:
        _emit(io.format_element(antipode(x), basis), args)
    else:
        _emit(io.format_element(word_antipode(x), basis), args)


def cmd_exp(args):
    if args.input:
        psi = _read(args.input, args)
    else:
        target = parse_target(args.target, args.tol)
        psi = core.zero_functional(TREES, _degree(args.degree), target)
    _emit_functional(core.exp_star(psi), args)


def cmd_log(args):
    _emit_functional(core.log_star(_read(args.input, args)), args)


def cmd_bch(args):
    a, b = (_read(p, args) for p in args.inputs)
    _emit_functional(core.bch(a, b), args)


def cmd_compose(args):
    fs = [_read(p, args) for p in args.inputs]
    fs += [butcher.rk_character(butcher.METHODS[m], _degree(args.degree)) for m in args.method or []]
    if not fs:
        raise ParseError("compose needs at least one input")
    _emit_functional(core.convolve_many(fs), args)


def cmd_inverse(args):
    _emit_functional(core.char_inverse(_read(args.input, args)), args)


def cmd_rk_order(args):
    m = _method(args)
    a = butcher.rk_character(m, _degree(args.degree))
    order = butcher.order_of(a)
    d = core.distance(a, butcher.exact_flow(a.truncation))
    print(f"order\t{order}")
    print(f"distance\t{d}")


def cmd_exact_flow(args):
    _emit_functional(butcher.exact_flow(_degree(args.degree), parse_target(args.target, args.tol)), args)


def cmd_euler_composite(args):
    _emit_functional(butcher.euler_composite(args.n, _degree(args.degree)), args)


def cmd_ultrametric(args):
    f = _read(args.inputs[0], args)
    g = _read(args.inputs[1], args) if len(args.inputs) > 1 else butcher.exact_flow(f.truncation, f.target)
    order = core.um_order(f - g)
    print(f"order\t{'inf' if order == math.inf else order}")
    print(f"distance\t{core.distance(f, g)}")
    if order == math.inf:
        print(f"note\tagree through truncation degree {f.truncation}; true order may be larger")


def cmd_symplectic_check(args):
    N = _degree(args.degree)
    a = butcher.rk_character(_method(args), N)
    spec = butcher.symplectic_ideal(N)
    print(f"hopf-ideal\t{core.is_hopf_ideal(spec, N)}")
    res = core.annihilates(a, spec, N)
    print(f"annihilates\t{'yes' if res.ok else 'no'}")
    if not res.ok:
        print(f"first-failure-degree\t{res.degree}")
        print(f"first-failure\t{io.format_element(res.first_failure, TREES).strip().replace(chr(10), ' ; ')}")
        print(f"residual\t{res.residual}")
    return 0


def cmd_ideal_check(args):
    M = _degree(args.degree)
    if args.symplectic:
        spec = butcher.symplectic_ideal(M)
    elif args.generators:
        with open(args.generators, encoding="utf-8") as fh:
            spec = io.parse_generators(fh.read())
    else:
        raise ParseError("give --generators FILE or --symplectic")
    closure = core.ideal_closure(spec, M)
    print("dimensions\t" + " ".join(str(closure.dimension(d)) for d in range(M + 1)))
    print(f"hopf-ideal\t{core.is_hopf_ideal(spec, M)}")
    if args.input:
        res = core.annihilates(_read(args.input, args), spec, M)
        print(f"annihilates\t{'yes' if res.ok else 'no'}")
        if not res.ok:
            print(f"residual\t{res.residual}")


def _curve(args) -> flows.PolyCurve:
    with open(args.curve, encoding="utf-8") as fh:
        curve = io.parse_curve(fh.read())
    _degree(curve.truncation)
    return curve


def cmd_evolve(args):
    _emit_functional(flows.evolve(_curve(args), Fraction(args.t), Fraction(args.start)), args)


def cmd_toexp(args):
    _emit_functional(flows.time_ordered_exp(_curve(args), Fraction(args.lo), Fraction(args.hi)), args)


def cmd_birkhoff(args):
    phi = _read(args.input, args)
    if args.degree is not None:
        phi = core.truncate(phi, _degree(args.degree))
    pair = renorm.birkhoff(phi)
    prefix = args.out_prefix
    io.write_functional(pair.gamma_minus, f"{prefix}_minus.txt")
    io.write_functional(pair.gamma_plus, f"{prefix}_plus.txt")
    sys.stdout.write(renorm.format_report(renorm.counterterm_report(pair), phi.basis))


def cmd_xi_act(args):
    delta = _read(args.input, args)
    with open(args.nu, encoding="utf-8") as fh:
        nu = io.parse_nu(fh.read())
    _emit_functional(xi_action(io.parse_complex_vector(args.z), delta, nu), args)


def cmd_growth(args):
    if args.input:
        a = _read(args.input, args)
    else:
        a = butcher.rk_character(_method(args), _degree(args.degree))
    for n, g in butcher.growth_profile(a):
        print(f"{n}\t{g!r}")


def cmd_selftest(args):
    rng = random.Random(args.seed)
    N = _degree(args.degree)
    failures = 0

    def report(name, ok):
        nonlocal failures
        failures += not ok
        print(f"{'PASS' if ok else 'FAIL'}\t{name}")

    a, b, c = (sampling.tree_character(rng, N) for _ in range(3))
    e = core.unit_character(TREES, N)
    report("associativity", core.convolve(core.convolve(a, b), c).equals(core.convolve(a, core.convolve(b, c))))
    report("unit", core.convolve(a, e).equals(a) and core.convolve(e, a).equals(a))
    report("inverse", core.convolve(a, core.char_inverse(a)).equals(e))
    psi = sampling.tree_infinitesimal(rng, N)
    report("log-exp", core.log_star(core.exp_star(psi)).equals(psi))
    report("exp-log", core.exp_star(core.log_star(a)).equals(a))
    report("exp-is-character", bool(core.is_character(core.exp_star(psi))))
    wb = WordBasis("a,b,c")
    w = sampling.word_character(rng, wb, min(N, 4))
    report("word-character", bool(core.is_character(w)))
    report("word-inverse", core.convolve(w, core.char_inverse(w)).equals(core.unit_character(wb, w.truncation)))
    return 1 if failures else 0


# -- parser ---------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hopfchar", description="Exact computations in character groups of combinatorial Hopf algebras.")
    p.add_argument("--tol", type=float, default=None, help="equality tolerance for float/complex targets")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(func=fn)
        return sp

    def out(sp):
        sp.add_argument("-o", "--output", help="write the result here instead of stdout")

    def method(sp):
        sp.add_argument("--tableau", help="Butcher tableau file")
        sp.add_argument("--method", choices=sorted(butcher.METHODS), help="built-in tableau")

    def element(sp):
        sp.add_argument("--tree", help="forest in bracket notation, e.g. '[[]]' or '[],[]'")
        sp.add_argument("--word", help="comma-separated letters, '1' for the empty word")
        sp.add_argument("--alphabet", help="comma-separated alphabet for --word")
        out(sp)

    sp = add("trees", cmd_trees, "enumerate or count rooted trees")
    sp.add_argument("--count", action="store_true")
    sp.add_argument("--max", type=int, default=6)
    sp.add_argument("--n", type=int)

    element(add("coproduct", cmd_coproduct, "coproduct of a forest or word"))
    element(add("antipode", cmd_antipode, "antipode of a forest or word"))

    sp = add("exp", cmd_exp, "convolution exponential of an infinitesimal character")
    sp.add_argument("--input")
    sp.add_argument("--degree", type=int, default=4)
    sp.add_argument("--target", default="rational")
    out(sp)

    sp = add("log", cmd_log, "convolution logarithm of a character")
    sp.add_argument("--input", required=True)
    out(sp)

    sp = add("bch", cmd_bch, "BCH product of two infinitesimal characters")
    sp.add_argument("inputs", nargs=2)
    out(sp)

    sp = add("compose", cmd_compose, "convolution product of characters, left to right")
    sp.add_argument("inputs", nargs="*")
    sp.add_argument("--method", action="append", choices=sorted(butcher.METHODS), help="append a built-in RK character")
    sp.add_argument("--degree", type=int, default=4)
    out(sp)

    sp = add("inverse", cmd_inverse, "group inverse phi o S")
    sp.add_argument("--input", required=True)
    out(sp)

    sp = add("rk-order", cmd_rk_order, "order of a Runge-Kutta method from d(a, e)")
    method(sp)
    sp.add_argument("--degree", type=int, required=True)

    sp = add("exact-flow", cmd_exact_flow, "exact-flow character exp(delta_bullet)")
    sp.add_argument("--degree", type=int, required=True)
    sp.add_argument("--target", default="rational")
    out(sp)

    sp = add("euler-composite", cmd_euler_composite, "n forward Euler steps of size 1/n")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--degree", type=int, required=True)
    out(sp)

    sp = add("ultrametric", cmd_ultrametric, "order of agreement and ultrametric distance")
    sp.add_argument("inputs", nargs="+", help="one file (compared with the exact flow) or two")

    sp = add("symplectic-check", cmd_symplectic_check, "does an RK method annihilate the symplecticity ideal")
    method(sp)
    sp.add_argument("--degree", type=int, required=True)

    sp = add("ideal-check", cmd_ideal_check, "Hopf-ideal test and optional annihilation test")
    sp.add_argument("--generators")
    sp.add_argument("--symplectic", action="store_true")
    sp.add_argument("--degree", type=int, required=True)
    sp.add_argument("--input", help="character to test for annihilation")

    sp = add("evolve", cmd_evolve, "solve eta' = eta * a(t) exactly")
    sp.add_argument("--curve", required=True)
    sp.add_argument("--t", default="1")
    sp.add_argument("--start", default="0")
    out(sp)

    sp = add("toexp", cmd_toexp, "time-ordered exponential over [lo, hi]")
    sp.add_argument("--curve", required=True)
    sp.add_argument("--lo", default="0")
    sp.add_argument("--hi", default="1")
    out(sp)

    sp = add("birkhoff", cmd_birkhoff, "Birkhoff factorisation by minimal subtraction")
    sp.add_argument("--input", required=True)
    sp.add_argument("--degree", type=int)
    sp.add_argument("--out-prefix", default="birkhoff")

    sp = add("xi-act", cmd_xi_act, "extended word series action Xi_z")
    sp.add_argument("--input", required=True)
    sp.add_argument("--nu", required=True)
    sp.add_argument("--z", required=True, help="comma-separated complex rationals, e.g. '1/2,0+1i'")
    out(sp)

    sp = add("growth", cmd_growth, "per-degree growth profile max |a(t)|^(1/n)")
    sp.add_argument("--input")
    method(sp)
    sp.add_argument("--degree", type=int, default=6)

    sp = add("selftest", cmd_selftest, "randomised algebraic identity checks")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--degree", type=int, default=4)
    return p


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        status = args.func(args)
    except ParseError as exc:
        print(f"hopfchar: malformed input: {exc}", file=sys.stderr)
        return 2
    except (OSError, UnicodeDecodeError) as exc:
        print(f"hopfchar: {exc}", file=sys.stderr)
        return 2
    except HopfcharError as exc:
        print(f"hopfchar: {exc}", file=sys.stderr)
        return 1
    except (ValueError, ZeroDivisionError) as exc:
        print(f"hopfchar: malformed input: {exc}", file=sys.stderr)
        return 2
    return status or 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
