"""Batch command-line front end.

Exit codes: 0 success, 1 verification failure, 2 input error, 3 resource
bound.  Errors go to stderr as ``ERR:<code>:<message>``.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from .combinatorics import parse_matrix, parse_object
from .deligne import compose_diagrams, parse_diagram
from .errors import InputError, PermcatError
from .exact import format_ivpoly
from .hsmod import hs_scalar, hs_scalar_right
from .kron import (
    XObject,
    format_krull_report,
    krull_schmidt_report,
    kronecker,
    stability_check,
)
from .schur import compose_interpolated, specialize_morphism, tensor_interpolated
from .serialize import dump_morphism, dump_specialized, dump_tensor, load_morphism


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def _ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError as exc:
        raise InputError(f"expected comma-separated integers, got {text!r}") from exc


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _cmd_compose(args) -> int:
    f, g = load_morphism(_read(args.f)), load_morphism(_read(args.g))
    _emit(dump_morphism(compose_interpolated(f, g)), args.o)
    return 0


def _cmd_tensor(args) -> int:
    f, g = load_morphism(_read(args.f)), load_morphism(_read(args.g))
    _emit(dump_tensor(tensor_interpolated(f, g), g.l), args.o)
    return 0


def _cmd_specialize(args) -> int:
    f = load_morphism(_read(args.f))
    mu = _ints(args.mu)
    _emit(dump_specialized(specialize_morphism(f, mu), mu), args.o)
    return 0


def _cmd_hs(args) -> int:
    obj = parse_object(args.alpha, args.l)
    q = parse_matrix(args.matrix, obj.l)
    if q.domain() != obj or q.codomain() != obj:
        raise InputError(f"matrix {q} is not an endomorphism of {obj}")
    rule = hs_scalar if args.side == "left" else hs_scalar_right
    print(format_ivpoly(rule(q)))
    return 0


def _cmd_deligne(args) -> int:
    loops, d = compose_diagrams(parse_diagram(args.d1), parse_diagram(args.d2))
    print(f"t^{loops}")
    print(d)
    return 0


RANDOMISED_SUITES = ("chevalley", "serre", "ideal", "hs")


def _run_suite(args):
    from . import suites

    name = args.suite
    if name in RANDOMISED_SUITES and args.seed is None:
        raise InputError(f"suite {name!r} is randomised and needs --seed")
    if name == "chevalley":
        return suites.chevalley_only(args.samples, args.seed)
    if name == "serre":
        return suites.serre_only(args.samples, args.seed)
    if name == "genfun":
        return suites.genfun(args.max_power)
    if name == "oracle":
        return suites.oracle_equivalence(_ints(args.degrees))
    if name == "ideal":
        return suites.ideal_closure(args.samples, args.seed)
    if name == "hs":
        return suites.hs_checks(args.samples, args.seed)
    return suites.deligne_suite()


def _cmd_verify(args) -> int:
    res = _run_suite(args)
    for line in res.lines():
        print(line)
    if not res.ok:
        if args.witness:
            Path(args.witness).write_text(
                json.dumps([repr(f) for f in res.failures], indent=2) + "\n", encoding="utf-8"
            )
        return 1
    return 0


def _cmd_kron(args) -> int:
    parts = [p for p in args.triple.split(";")]
    if len(parts) != 3:
        raise InputError("--triple needs three partitions separated by ';'")
    a, b, c = (_ints(p) for p in parts)
    print(kronecker(a, b, c))
    return 0


def _cmd_stability(args) -> int:
    mu = _ints(args.mu)
    rep = stability_check(
        mu,
        XObject.parse(args.x),
        args.mmax,
        alpha=parse_object(args.alpha, len(mu)) if args.alpha else None,
        beta=parse_object(args.beta, len(mu)) if args.beta else None,
        seed=args.seed,
        max_degree=args.max_degree,
    )
    lines = rep.csv_lines()
    lines.append(f"# stable_value={rep.stable_value} interpolated={rep.interpolated} agrees={rep.agrees}")
    _emit("\n".join(lines) + "\n", args.o)
    return 0 if rep.agrees else 1


def _cmd_krull(args) -> int:
    rep = krull_schmidt_report(args.l1, args.l2, args.samples, args.seed)
    for line in format_krull_report(rep):
        print(line)
    return 0 if rep["krull_schmidt_fails"] else 1


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="permcat", description="Exact computations in interpolated permutation-module categories.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    for name, fn in (("compose", _cmd_compose), ("tensor", _cmd_tensor)):
        s = sub.add_parser(name, help=f"{name} two morphism files (f after g for compose)")
        s.add_argument("-f", required=True)
        s.add_argument("-g", required=True)
        s.add_argument("-o")
        s.set_defaults(func=fn)

    s = sub.add_parser("specialize", help="evaluate a morphism at a concrete parameter vector")
    s.add_argument("--mu", required=True)
    s.add_argument("-f", required=True)
    s.add_argument("-o")
    s.set_defaults(func=_cmd_specialize)

    s = sub.add_parser("hs", help="highest-weight scalar of a basis endomorphism")
    s.add_argument("--alpha", required=True, help="object, e.g. L1,L2 or L1-1,L2,1")
    s.add_argument("--matrix", required=True, help="matrix, e.g. 'L1-1,1;1,L2-1'")
    s.add_argument("--l", type=int)
    s.add_argument("--side", choices=("left", "right"), default="left")
    s.set_defaults(func=_cmd_hs)

    s = sub.add_parser("deligne", help="partition-diagram calculus")
    dsub = s.add_subparsers(dest="action", required=True, parser_class=_Parser)
    c = dsub.add_parser("compose", help="d1 after d2")
    c.add_argument("--d1", required=True)
    c.add_argument("--d2", required=True)
    c.set_defaults(func=_cmd_deligne)

    s = sub.add_parser("verify", help="run a verification suite")
    s.add_argument("suite", choices=("chevalley", "serre", "genfun", "oracle", "ideal", "hs", "deligne"))
    s.add_argument("--samples", type=int, default=50)
    s.add_argument("--seed", type=int)
    s.add_argument("--max-power", type=int, default=4)
    s.add_argument("--degrees", default="3,4,5")
    s.add_argument("--witness", help="write failing cases here")
    s.set_defaults(func=_cmd_verify)

    s = sub.add_parser("kron", help="Kronecker coefficient of three partitions")
    s.add_argument("--triple", required=True, help="e.g. '2,1;2,1;2,1'")
    s.set_defaults(func=_cmd_kron)

    s = sub.add_parser("stability", help="dimension sequence along lambda = m * mu (CSV)")
    s.add_argument("--mu", required=True)
    s.add_argument("--x", default="unit", help="unit, std, unitsummand or perm:<object>")
    s.add_argument("--mmax", type=int)
    s.add_argument("--alpha", help="object such as L1-1,1 (default: unit)")
    s.add_argument("--beta", help="object such as L1-1,1 (default: unit)")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--max-degree", type=int, default=12)
    s.add_argument("-o")
    s.set_defaults(func=_cmd_stability)

    s = sub.add_parser("krull", help="idempotent report showing Krull-Schmidt failure")
    s.add_argument("--l1", required=True)
    s.add_argument("--l2", required=True)
    s.add_argument("--samples", type=int, default=20)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=_cmd_krull)
    return p


def run(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except PermcatError as exc:
        sys.stderr.write(f"ERR:{exc.exit_code}:{exc}\n")
        return exc.exit_code
    except ValueError as exc:
        sys.stderr.write(f"ERR:2:{exc}\n")
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
