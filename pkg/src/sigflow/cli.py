"""Command line interface: ``sigflow <command> ...``."""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

from .axioms import check_law, law_catalog, pendulum, pendulum_matrix
from .dsl import ModuleSource, parse_module, print_diagram
from .errors import NotAMap, SigflowError
from .exactfield import QS, Field, field_from_name, parse_scalar
from .linrel import LinRel, Matrix, as_map, format_rel
from .normalize import normalize
from .render import render
from .semantics import eval_rel


class UsageError(Exception):
    pass


def _field_arg(text: str) -> Field:
    try:
        return field_from_name(text)
    except SigflowError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def _load(path: str, field: Field | None) -> ModuleSource:
    with open(path, encoding="utf-8") as fh:
        return parse_module(fh.read(), field)


def format_matrix(A: Matrix) -> str:
    lines = [f"matrix {A.rows} {A.cols}"]
    lines += [" ".join(str(x) for x in r) for r in A.data]
    return "\n".join(lines)


def _relation_block(L: LinRel) -> str:
    out = format_rel(L)
    try:
        out += "\n" + format_matrix(as_map(L))
    except NotAMap:
        pass
    return out


def cmd_eval(args, out) -> int:
    mod = _load(args.file, args.field)
    print(_relation_block(eval_rel(mod[args.name], mod.field)), file=out)
    return 0


def cmd_equiv(args, out) -> int:
    mod = _load(args.file, args.field)
    a, b = mod[args.name1], mod[args.name2]
    same = eval_rel(a, mod.field) == eval_rel(b, mod.field)
    print("equal" if same else "different", file=out)
    return 0 if same else 1


def cmd_normalize(args, out) -> int:
    mod = _load(args.file, args.field)
    print(print_diagram(normalize(mod[args.name], mod.field)), file=out)
    return 0


def cmd_render(args, out) -> int:
    mod = _load(args.file, args.field)
    out.write(render(mod[args.name], args.format))
    return 0


def cmd_check(args, out) -> int:
    field = args.field or QS
    failures = checks = 0
    for law in law_catalog():
        report = check_law(law, field=field)
        for line in report.lines(detail=args.verbose):
            print(line, file=out)
        checks += len(report.checks)
        failures += len(report.failures)
    print(f"summary field={field} laws={len(law_catalog())} checks={checks} failures={failures}", file=out)
    return 0 if failures == 0 else 1


def cmd_pendulum(args, out) -> int:
    params = [parse_scalar(t, QS) for t in (args.M, args.m, args.g, args.l)]
    composite, friedland = pendulum(*params)
    L1, L2 = eval_rel(composite, QS), eval_rel(friedland, QS)
    same = L1 == L2
    print("equal" if same else "different", file=out)
    try:
        A = as_map(L1)
    except NotAMap as e:
        print(f"no transfer matrix: {e}", file=out)
    else:
        print(format_matrix(A), file=out)
        if A != pendulum_matrix(*params):
            print("warning: transfer matrix disagrees with direct elimination", file=out)
            return 1
    return 0 if same else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sigflow", description="Exact semantics for signal-flow diagrams.")
    sub = parser.add_subparsers(dest="command", required=True)

    def with_file(p, *names):
        p.add_argument("file", help="diagram module (.sfd)")
        for n in names:
            p.add_argument(n)
        p.add_argument("--field", type=_field_arg, default=None, help="override the module's field (Q, Qs, GF:p)")
        return p

    with_file(sub.add_parser("eval", help="print the linear relation of a definition"), "name").set_defaults(run=cmd_eval)
    with_file(sub.add_parser("equiv", help="compare two definitions semantically"), "name1", "name2").set_defaults(
        run=cmd_equiv
    )
    with_file(sub.add_parser("normalize", help="print the canonical diagram of a definition"), "name").set_defaults(
        run=cmd_normalize
    )
    p = with_file(sub.add_parser("render", help="draw a definition as Graphviz or TikZ"), "name")
    p.add_argument("--format", choices=("dot", "tikz"), default="dot")
    p.set_defaults(run=cmd_render)

    p = sub.add_parser("check-relations", help="verify every law in the catalog")
    p.add_argument("--field", type=_field_arg, default=None, help="Q, Qs or GF:p (default Qs)")
    p.add_argument("-v", "--verbose", action="store_true", help="show both relations for failures")
    p.set_defaults(run=cmd_check)

    p = sub.add_parser("pendulum", help="compare the two cart-and-pendulum diagrams")
    for name in ("--M", "--m", "--g", "--l"):
        p.add_argument(name, required=True, help="rational constant")
    p.set_defaults(run=cmd_pendulum)
    return parser


def run(argv: Sequence[str], out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv))
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.run(args, out)
    except (SigflowError, OSError) as e:
        msg = " ".join(str(e).split())
        print(f"sigflow: {type(e).__name__}: {msg}", file=err)
        return 2


def main() -> None:
    sys.exit(run(sys.argv[1:]))
