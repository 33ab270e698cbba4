"""Command-line interface.

Exit codes: 0 success, 1 parse error, 2 precondition violation,
3 a check that was run came out false.  Diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction

from .algebra import HalfLaurent
from .braid import BraidError, BraidWord, random_markov_walk
from .chords import MAX_ORDER, weight_space_dimension
from .rmatrix import RMatrixError, builtin_jones, check_enhancement, check_qybe, load_rmatrix, trace_invariant
from .skein import SkeinSystem, evaluate, parse_system
from .vassiliev import stanford_check, u_coefficients, v2

SCHEMA = 1
MARKOV_SYSTEMS = ("jones", "alexander", "homfly:2")


class ParseFailure(Exception):
    pass


class Precondition(Exception):
    pass


def _braid(text: str) -> BraidWord:
    try:
        return BraidWord.parse(text)
    except ValueError as exc:
        raise ParseFailure(str(exc)) from None


def _system(text: str) -> SkeinSystem:
    try:
        return parse_system(text)
    except ValueError as exc:
        raise ParseFailure(str(exc)) from None


def _frac(x: Fraction) -> str:
    return str(Fraction(x))


def invariant_value(w: BraidWord, sys_name: str, engine: str) -> HalfLaurent:
    system = _system(sys_name)
    if w.is_singular():
        raise Precondition("invariants are computed on words without tau letters")
    if engine == "skein":
        return evaluate(w, system)
    if system.wp != SkeinSystem.jones().wp:
        raise Precondition(f"the rmatrix engine only carries the Jones data, not {sys_name}")
    return trace_invariant(w, builtin_jones())


def cmd_invariant(args):
    w = _braid(args.braid)
    val = invariant_value(w, args.sys, args.engine)
    return 0, str(val), {"system": args.sys, "engine": args.engine, "braid": str(w), "value": str(val)}


def cmd_expand(args):
    w = _braid(args.braid)
    if args.order < 0:
        raise Precondition("order must be non-negative")
    us = u_coefficients(w, args.order)
    text = "\n".join(f"u_{i} = {_frac(u)}" for i, u in enumerate(us))
    return 0, text, {"braid": str(w), "order": args.order, "u": [_frac(u) for u in us]}


def cmd_v2(args):
    w = _braid(args.braid)
    val = v2(w)
    return 0, str(val), {"braid": str(w), "v2": val}


def cmd_dims(args):
    if not 1 <= args.order <= MAX_ORDER:
        raise Precondition(f"order must be in 1..{MAX_ORDER}")
    m = weight_space_dimension(args.order)
    return 0, str(m), {"order": args.order, "dimension": m}


def cmd_markov_check(args):
    w = _braid(args.braid)
    if w.is_singular():
        raise Precondition("markov-check needs a word without tau letters")
    if args.trials < 0 or args.steps < 0:
        raise Precondition("trials and steps must be non-negative")
    E = builtin_jones()
    engines = [(name, lambda u, s=_system(name): evaluate(u, s)) for name in MARKOV_SYSTEMS]
    engines.append(("rmatrix", lambda u: trace_invariant(u, E)))
    base = {name: f(w) for name, f in engines}
    rng = random.Random(args.seed)
    failure = None
    for trial in range(args.trials):
        walk_seed = rng.getrandbits(64)
        u = random_markov_walk(w, args.steps, walk_seed)
        for name, f in engines:
            got = f(u)
            if got != base[name]:
                failure = {"trial": trial, "walk_seed": walk_seed, "word": str(u), "system": name,
                           "expected": str(base[name]), "got": str(got)}
                break
        if failure:
            break
    if failure is None:
        text = f"pass ({args.trials} walks)"
        return 0, text, {"braid": str(w), "trials": args.trials, "seed": args.seed, "pass": True}
    text = (f"fail trial={failure['trial']} system={failure['system']} word={failure['word']}\n"
            f"  expected {failure['expected']}\n  got      {failure['got']}")
    return 3, text, {"braid": str(w), "trials": args.trials, "seed": args.seed, "pass": False,
                     "counterexample": failure}


def cmd_check_rmatrix(args):
    try:
        E = load_rmatrix(args.file)
    except OSError as exc:
        raise Precondition(str(exc)) from None
    except (RMatrixError, ValueError) as exc:
        raise ParseFailure(str(exc)) from None
    q = check_qybe(E.R)
    e = check_enhancement(E)
    lines = [
        "qybe: pass" if q else f"qybe: fail at {q.detail}",
        "enhancement: pass" if e else f"enhancement: fail ({e.detail})",
    ]
    data = {"file": str(args.file), "qybe": bool(q), "enhancement": bool(e),
            "qybe_detail": None if q else str(q.detail), "enhancement_detail": None if e else e.detail}
    return (0 if q and e else 3), "\n".join(lines), data


def cmd_stanford(args):
    beta = _braid(args.braid)
    rep = stanford_check(beta, args.n, args.depth, args.seed)
    lines = [f"alpha = {rep.alpha}"]
    for i, (a, b) in enumerate(zip(rep.base, rep.twisted)):
        lines.append(f"u_{i}: {_frac(a)} vs {_frac(b)} {'agree' if a == b else 'DIFFER'}")
    lines.append("agree" if rep.agree else f"disagree at u_{rep.first_disagreement()}")
    data = {"n": args.n, "depth": args.depth, "seed": args.seed, "braid": str(beta),
            "alpha": str(rep.alpha), "base": [_frac(x) for x in rep.base],
            "twisted": [_frac(x) for x in rep.twisted], "agree": rep.agree}
    return (0 if rep.agree else 3), "\n".join(lines), data


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="knotbraid", description="Knot invariants of braid closures.")
    p.add_argument("--json", action="store_true", help="emit a JSON object instead of text")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("invariant", help="skein or R-matrix polynomial of a closure")
    s.add_argument("--sys", required=True, help="jones, alexander or homfly:<n>")
    s.add_argument("--braid", required=True)
    s.add_argument("--engine", choices=("skein", "rmatrix"), default="skein")
    s.set_defaults(func=cmd_invariant)

    s = sub.add_parser("expand", help="u_0..u_N of the Jones invariant with q = e^x")
    s.add_argument("--braid", required=True)
    s.add_argument("--order", type=int, default=8)
    s.set_defaults(func=cmd_expand)

    s = sub.add_parser("v2", help="order-two invariant of a knot closure")
    s.add_argument("--braid", required=True)
    s.set_defaults(func=cmd_v2)

    s = sub.add_parser("dims", help="dimension of the 1T/4T weight-system space")
    s.add_argument("--order", type=int, required=True)
    s.set_defaults(func=cmd_dims)

    s = sub.add_parser("markov-check", help="fuzz invariance under random Markov walks")
    s.add_argument("--braid", required=True)
    s.add_argument("--trials", type=int, default=20)
    s.add_argument("--steps", type=int, default=20)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_markov_check)

    s = sub.add_parser("check-rmatrix", help="verify an R-matrix file")
    s.add_argument("--file", required=True)
    s.set_defaults(func=cmd_check_rmatrix)

    s = sub.add_parser("stanford", help="compare u_i of beta and alpha*beta for a commutator alpha")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--depth", type=int, required=True)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--braid", required=True)
    s.set_defaults(func=cmd_stanford)
    return p


def run(argv=None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 1
    try:
        code, text, data = args.func(args)
    except ParseFailure as exc:
        print(f"parse error: {exc}", file=err)
        return 1
    except (Precondition, BraidError, RMatrixError, ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=err)
        return 2
    if args.json:
        payload = {"schema": SCHEMA, "command": args.command, **data}
        print(json.dumps(payload, sort_keys=True), file=out)
    else:
        print(text, file=out)
    return code


def main() -> None:
    sys.exit(run())
