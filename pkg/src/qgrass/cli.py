"""Deterministic command-line surface over the library.

Identical invocations produce identical bytes: the canonical term orders
and the canonical linear extension fix every output, and no timestamps or
environment lookups are involved.  Exit codes: 0 on success, 1 on usage
errors, 2 on mathematical failure (nonzero subduction remainder or an
inconsistent solve).
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from . import lattice, maps, polyring, straighten, syzygy
from .errors import (
    InternalInconsistencyError,
    NotInInitialAlgebraError,
    QgrassError,
    SagbiFailureError,
)
from .lattice import Context, PluckerVar

USAGE_ERROR = 1
MATH_ERROR = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(USAGE_ERROR, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qgrass", description=__doc__)
    parser.add_argument("--p", type=int, required=True, help="number of matrix rows")
    parser.add_argument("--m", type=int, required=True, help="column surplus")
    parser.add_argument("--n", type=int, default=None, help="entry degree (default: ceil(q/p))")
    parser.add_argument("--q", type=int, default=None, help="shift bound (default: n*p)")
    parser.add_argument("--format", choices=["text", "json"], default="text")
    parser.add_argument("--compact", action="store_true", help="compact digit form for variables")
    sub = parser.add_subparsers(dest="command", required=True)

    poset = sub.add_parser("poset", help="lattice elements, incomparable pairs, ranks")
    poset_sub = poset.add_subparsers(dest="poset_command", required=True)
    p_list = poset_sub.add_parser("list")
    p_list.add_argument("--interval", nargs=2, metavar=("BOT", "TOP"))
    p_pairs = poset_sub.add_parser("pairs")
    p_pairs.add_argument("--interval", nargs=2, metavar=("BOT", "TOP"))
    p_rank = poset_sub.add_parser("rank")
    p_rank.add_argument("var")

    degree = sub.add_parser("degree", help="number of maximal chains")
    degree.add_argument("--interval", nargs=2, metavar=("BOT", "TOP"))

    for name in ("phi", "psi", "chi", "pi"):
        gen = sub.add_parser(name, help=f"{name} image of a lattice variable")
        gen.add_argument("var")

    schubert = sub.add_parser("schubert", help="cell mask and masked generator images")
    schubert.add_argument("top")
    schubert.add_argument("--skew", metavar="BOT", default=None)

    straight = sub.add_parser("straighten", help="straightening relation of an incomparable pair")
    straight.add_argument("gamma")
    straight.add_argument("delta")
    straight.add_argument("--interval", nargs=2, metavar=("BOT", "TOP"))

    groebner = sub.add_parser("groebner", help="all quadratic straightening relations")
    groebner.add_argument("--interval", nargs=2, metavar=("BOT", "TOP"))

    check = sub.add_parser("sagbi-check", help="subduct every incomparable product")
    check.add_argument("--jobs", type=int, default=1)

    syz = sub.add_parser("syzygy", help="skew (w) or lifted (v) syzygy of a two-row tableau")
    syz.add_argument("kind", choices=["w", "v"])
    syz.add_argument("row1")
    syz.add_argument("row2")

    obvious = sub.add_parser("obvious", help="t-coefficient relations from the classical quadrics")
    obvious.add_argument("--rank", action="store_true", help="emit the rank/deficit report")

    return parser


def resolve_context(args) -> Context:
    p, m, n, q = args.p, args.m, args.n, args.q
    if n is None and q is None:
        n, q = 0, 0
    elif n is None:
        n = -(-q // p)
    elif q is None:
        q = n * p
    return Context(p, m, n, q)


def _parse_var(text: str, ctx: Context) -> PluckerVar:
    u = lattice.parse_var(text, p=ctx.p)
    lattice.validate_var(u, ctx)
    return u


def _parse_interval(args, ctx: Context):
    raw = getattr(args, "interval", None)
    if raw is None:
        return None
    return (_parse_var(raw[0], ctx), _parse_var(raw[1], ctx))


def _emit_poly(poly, kind, ctx, args) -> str:
    if args.format == "json":
        return polyring.emit_json(poly, kind, ctx)
    return polyring.emit_text(poly, kind, ctx, compact=args.compact)


def _fmt_var(u, args) -> str:
    return lattice.format_var(u, compact=args.compact)


def run(argv: Optional[list[str]] = None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        ctx = resolve_context(args)
        return _dispatch(args, ctx, out)
    except (SagbiFailureError, NotInInitialAlgebraError, InternalInconsistencyError) as exc:
        print(f"qgrass: mathematical failure: {exc}", file=sys.stderr)
        return MATH_ERROR
    except QgrassError as exc:
        print(f"qgrass: error: {exc}", file=sys.stderr)
        return USAGE_ERROR


def _dispatch(args, ctx: Context, out) -> int:
    cmd = args.command

    if cmd == "poset":
        sub = args.poset_command
        if sub == "rank":
            u = _parse_var(args.var, ctx)
            print(lattice.rank(u, ctx), file=out)
            return 0
        interval = _parse_interval(args, ctx)
        if sub == "list":
            elems = lattice.elements(ctx, interval)
            if args.format == "json":
                print(json.dumps([_fmt_var(u, args) for u in elems]), file=out)
            else:
                for u in elems:
                    print(_fmt_var(u, args), file=out)
            return 0
        pairs = lattice.incomparable_pairs(ctx, interval)
        if args.format == "json":
            print(
                json.dumps([[_fmt_var(u, args), _fmt_var(v, args)] for u, v in pairs]),
                file=out,
            )
        else:
            for u, v in pairs:
                print(f"{_fmt_var(u, args)} {_fmt_var(v, args)}", file=out)
        return 0

    if cmd == "degree":
        interval = _parse_interval(args, ctx)
        print(lattice.count_maximal_chains(ctx, interval), file=out)
        return 0

    if cmd in ("phi", "psi", "chi", "pi"):
        u = _parse_var(args.var, ctx)
        if cmd == "phi":
            print(_emit_poly(maps.phi(u, ctx), "X", ctx, args), file=out)
        elif cmd == "psi":
            print(_emit_poly(polyring.Polynomial.term(maps.psi(u, ctx)), "X", ctx, args), file=out)
        elif cmd == "chi":
            print(_emit_poly(maps.chi(u, ctx), "X", ctx, args), file=out)
        else:
            print(_emit_poly(maps.pi(u, ctx), "J", ctx, args), file=out)
        return 0

    if cmd == "schubert":
        top = _parse_var(args.top, ctx)
        bot = _parse_var(args.skew, ctx) if args.skew else None
        mask = maps.schubert_mask(ctx, top, bot)
        members = lattice.elements(ctx, (bot, top)) if bot else [
            u for u in lattice.elements(ctx) if lattice.leq(u, top)
        ]
        images = [
            (u, maps.apply_hom(polyring.Polynomial.variable(u), ctx, mask))
            for u in members
        ]
        zeroed = sorted(mask, key=lambda v: (v.level, v.row, v.col))
        if args.format == "json":
            doc = {
                "mask": [[v.row, v.col, v.level] for v in zeroed],
                "images": {
                    _fmt_var(u, args): json.loads(polyring.emit_json(img, "X"))
                    for u, img in images
                },
            }
            print(json.dumps(doc, separators=(",", ":")), file=out)
        else:
            for v in zeroed:
                print(f"zero x[{v.row},{v.col},{v.level}]", file=out)
            for u, img in images:
                print(f"{_fmt_var(u, args)} -> {polyring.emit_text(img, 'X', ctx)}", file=out)
        return 0

    if cmd == "straighten":
        gamma = _parse_var(args.gamma, ctx)
        delta = _parse_var(args.delta, ctx)
        interval = _parse_interval(args, ctx)
        quad = straighten.straightening_relation(gamma, delta, ctx, interval)
        print(_emit_poly(quad.poly, "C", ctx, args), file=out)
        return 0

    if cmd == "groebner":
        interval = _parse_interval(args, ctx)
        basis = straighten.reduced_groebner(ctx, interval)
        if args.format == "json":
            doc = [
                {
                    "lead_pair": [_fmt_var(q.lead_pair[0], args), _fmt_var(q.lead_pair[1], args)],
                    "poly": json.loads(polyring.emit_json(q.poly, "C", ctx)),
                }
                for q in basis
            ]
            print(json.dumps(doc, separators=(",", ":")), file=out)
        else:
            for q in basis:
                print(polyring.emit_text(q.poly, "C", ctx, compact=args.compact), file=out)
        return 0

    if cmd == "sagbi-check":
        report = straighten.sagbi_check(ctx, jobs=args.jobs)
        print(json.dumps(report, separators=(",", ":")), file=out)
        return MATH_ERROR if report["failures"] else 0

    if cmd == "syzygy":
        r1 = _parse_var(args.row1, ctx)
        r2 = _parse_var(args.row2, ctx)
        if args.kind == "w":
            poly = syzygy.skew_syzygy_w((r1, r2), ctx)
        else:
            poly = syzygy.quantum_syzygy_v((r1, r2), ctx)
        print(_emit_poly(poly, "C", ctx, args), file=out)
        return 0

    if cmd == "obvious":
        if args.rank:
            report = syzygy.coefficient_relation_report(ctx)
            print(json.dumps(report, separators=(",", ":")), file=out)
            return 0
        for f in syzygy.coefficient_relations(ctx):
            print(_emit_poly(f, "C", ctx, args), file=out)
        return 0

    raise InternalInconsistencyError(f"unhandled command {cmd!r}")


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
