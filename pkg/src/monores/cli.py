"""Command-line interface: ``monores <subcommand> [options]``.

Exit status is 0 on success, 1 when a verification finds a failure, and 2
for usage, input or parameter errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

from . import harness
from .fields import parse_field
from .ideal import (
    MonomialIdeal,
    compress,
    format_ideal,
    ideal_from_strings,
    parse_ring,
    random_ideal,
    read_ideal,
    restrict,
    twin,
)
from .minimize import BettiTable, minimal_betti, minimize
from .monomial import ParseError, VarContext, format_monomial, parse_monomial
from .oracle import full_betti
from .taylor import CapExceeded, group_by_mdeg, taylor

log = logging.getLogger("monores")


class UsageError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=False, ensure_ascii=False)


def format_betti_table(table: BettiTable) -> str:
    """Conventional Betti diagram: columns i, rows j - i."""
    if not table.total:
        return f"field: {table.field}\n(zero module)\npd = {table.pd}"
    cols = list(range(table.pd + 1))
    shifts = sorted({j - i for (i, j) in table.graded})
    cells = [["", *(str(i) for i in cols)], ["total:", *(str(table.betti(i)) for i in cols)]]
    for r in shifts:
        cells.append([f"{r}:", *(str(table.graded.get((i, i + r), ".")) for i in cols)])
    width = [max(len(row[c]) for row in cells) for c in range(len(cells[0]))]
    lines = [f"field: {table.field}"]
    for row in cells:
        lines.append(" ".join(cell.rjust(w) for cell, w in zip(row, width)).rstrip())
    lines.append(f"pd = {table.pd}")
    return "\n".join(lines)


def _ideal_json(M: MonomialIdeal, field) -> dict:
    return {"field": str(field), "ring": list(M.ctx.names), "gens": [format_monomial(g) for g in M.gens]}


def load_ideal(args) -> MonomialIdeal:
    if bool(args.ideal) == bool(args.gens):
        raise UsageError("give exactly one of --ideal FILE or --gens LIST")
    if args.ideal:
        try:
            return read_ideal(args.ideal)
        except FileNotFoundError:
            raise UsageError(f"ideal file not found: {args.ideal}") from None
        except ParseError as exc:
            raise ParseError(f"{args.ideal}: {exc}") from None
    if not args.ring:
        raise UsageError("--gens needs --ring (a variable count or space-separated names)")
    ctx = parse_ring(args.ring.split())
    return ideal_from_strings(args.gens.split(","), ctx)


def _emit(args, text: str) -> None:
    out = getattr(args, "out", None)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def cmd_taylor(args) -> int:
    M = load_ideal(args)
    C = taylor(M, args.field, args.cap)
    stats = {
        "q": M.q,
        "ranks": C.ranks(),
        "distinct_multidegrees": len(group_by_mdeg(C)),
        "field": str(args.field),
    }
    if args.stats or args.json:
        _emit(args, _dump(stats))
    else:
        lines = [f"field: {args.field}", f"q = {M.q}"]
        lines += [f"F_{s}: rank {r}" for s, r in enumerate(stats["ranks"])]
        lines.append(f"distinct multidegrees = {stats['distinct_multidegrees']}")
        _emit(args, "\n".join(lines))
    return 0


def cmd_minimize(args) -> int:
    M = load_ideal(args)
    C, trace = minimize(taylor(M, args.field, args.cap))
    if args.trace:
        _emit(args, "\n".join(_dump(step.to_json()) for step in trace))
        return 0
    summary = {"field": str(args.field), "ranks": C.ranks(), "cancellations": len(trace)}
    if args.json:
        _emit(args, _dump(summary))
    else:
        lines = [f"field: {args.field}", f"cancellations = {len(trace)}"]
        for s, basis in enumerate(C.modules):
            lines.append(f"F_{s}: " + " ".join(f"{sym}@{sym.mdeg}" for sym in basis))
        _emit(args, "\n".join(lines))
    return 0


def _betti(args, M) -> BettiTable:
    if args.oracle:
        return full_betti(M, args.field, args.cap)
    return minimal_betti(M, args.field, args.cap)


def cmd_betti(args) -> int:
    table = _betti(args, load_ideal(args))
    _emit(args, _dump(table.to_json()) if args.json else format_betti_table(table))
    return 0


def cmd_pd(args) -> int:
    table = _betti(args, load_ideal(args))
    _emit(args, _dump({"field": table.field, "pd": table.pd}) if args.json else f"pd = {table.pd}")
    return 0


def cmd_twin(args) -> int:
    M = load_ideal(args)
    T = twin(M)
    if args.json:
        out = _ideal_json(T, args.field)
        out["lcm"] = format_monomial(M.top_lcm())
        _emit(args, _dump(out))
    else:
        _emit(args, str(T))
    return 0


def cmd_restrict(args) -> int:
    M = load_ideal(args)
    m = parse_monomial(args.at, M.ctx)
    R = restrict(M, m)
    if args.json:
        _emit(args, _dump(_ideal_json(R, args.field)))
    else:
        _emit(args, str(R))
    return 0


def cmd_compress(args) -> int:
    M = load_ideal(args)
    T = twin(M)
    Mc, cmap = compress(T)
    subst = {
        name: f"{M.ctx.names[j]}^{a}" for name, j, a in zip(cmap.target.names, cmap.used_vars, cmap.alpha)
    }
    if args.json:
        out = _ideal_json(Mc, args.field)
        out["substitution"] = subst
        _emit(args, _dump(out))
    else:
        lines = [str(Mc)] + [f"{y} = {x}" for y, x in subst.items()]
        _emit(args, "\n".join(lines))
    return 0


def cmd_random(args) -> int:
    if args.min_deg is None:
        args.min_deg = 1
    if args.max_deg is None:
        args.max_deg = args.n if args.squarefree else args.n * args.max_exp
    M = random_ideal(VarContext.default(args.n), args.q, args.min_deg, args.max_deg,
                     args.squarefree, args.seed, None if args.squarefree else args.max_exp)
    if args.json:
        _emit(args, _dump(_ideal_json(M, args.field)))
    else:
        _emit(args, format_ideal(M).rstrip("\n"))
    return 0


def cmd_verify(args) -> int:
    F = args.field
    which = args.theorem
    if which == "t31":
        report = harness.verify_squarefree_bound(args.n, args.q_max, args.k, args.trials, args.seed, F, args.cap)
    elif which == "t46":
        report = harness.verify_syzygy_bound(args.n, args.q_max, args.max_deg, args.trials, args.seed, F,
                                             args.max_exp, args.cap)
    else:
        verifier = {
            "c42": harness.verify_restriction,
            "t45": harness.verify_twin,
            "compress": harness.verify_compression,
        }[which]
        if args.ideal or args.gens:
            report = verifier(load_ideal(args), F, args.cap)
        else:
            report = harness.run_family(verifier, args.trials, args.n, args.q_max, args.seed, F)
    log.info("%s: %d/%d passed in %.2fs", which, report.passed, report.attempted, report.wall_time)
    _emit(args, _dump(report.to_json(timing=args.timing)))
    return 0 if report.ok else 1


def _add_input(p: argparse.ArgumentParser) -> None:
    p.add_argument("--ideal", metavar="FILE", help="ideal file ('ring ...' header, 'gen ...' lines)")
    p.add_argument("--gens", metavar="LIST", help="comma-separated generators, e.g. 'x1^2*x2,x3'")
    p.add_argument("--ring", help="ring for --gens: a variable count or space-separated names")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", default="q", help="coefficient field: q or zp:<prime> (default q)")
    common.add_argument("--cap", type=int, default=None,
                        help="override the generator cap (default 19) for Taylor complexes")
    common.add_argument("--json", action="store_true", help="emit JSON instead of text")
    common.add_argument("--out", metavar="FILE", help="write output to FILE instead of stdout")
    common.add_argument("-v", "--verbose", action="count", default=0)

    parser = argparse.ArgumentParser(
        prog="monores",
        description="Taylor resolutions, minimal resolutions and Betti numbers of monomial ideals.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("taylor", parents=[common], help="build the Taylor complex")
    _add_input(p)
    p.add_argument("--stats", action="store_true", help="JSON summary: q, ranks, distinct multidegrees")
    p.set_defaults(func=cmd_taylor)

    p = sub.add_parser("minimize", parents=[common], help="minimize the Taylor complex by cancellation")
    _add_input(p)
    p.add_argument("--trace", action="store_true", help="emit cancelled pairs as JSON lines")
    p.set_defaults(func=cmd_minimize)

    for name, func, text in (("betti", cmd_betti, "Betti table"), ("pd", cmd_pd, "projective dimension")):
        p = sub.add_parser(name, parents=[common], help=text)
        _add_input(p)
        p.add_argument("--oracle", action="store_true", help="use strand homology instead of minimization")
        p.set_defaults(func=func)

    p = sub.add_parser("twin", parents=[common], help="twin ideal (minimalized)")
    _add_input(p)
    p.set_defaults(func=cmd_twin)

    p = sub.add_parser("restrict", parents=[common], help="generators dividing a monomial")
    _add_input(p)
    p.add_argument("--at", required=True, metavar="MONOMIAL")
    p.set_defaults(func=cmd_restrict)

    p = sub.add_parser("compress", parents=[common], help="squarefree compression of the twin ideal")
    _add_input(p)
    p.set_defaults(func=cmd_compress)

    p = sub.add_parser("random", parents=[common], help="seeded random monomial ideal")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--min-deg", type=int)
    p.add_argument("--max-deg", type=int)
    p.add_argument("--max-exp", type=int, default=4)
    p.add_argument("--squarefree", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_random)

    p = sub.add_parser("verify", parents=[common], help="check a bound or equality; exit 1 on failure")
    p.add_argument("theorem", choices=["t31", "t46", "c42", "t45", "compress"])
    _add_input(p)
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--k", type=int, default=0)
    p.add_argument("--q-max", type=int, default=8)
    p.add_argument("--max-deg", type=int, default=None)
    p.add_argument("--max-exp", type=int, default=4)
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--timing", action="store_true", help="include wall time (breaks byte-identical output)")
    p.set_defaults(func=cmd_verify)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2), format="%(levelname)s %(message)s")
    try:
        args.field = parse_field(args.field)
        return args.func(args)
    except ParseError as exc:
        print(f"monores: parse error: {exc}", file=sys.stderr)
    except CapExceeded as exc:
        print(f"monores: {exc}", file=sys.stderr)
    except UsageError as exc:
        print(f"monores: {exc}", file=sys.stderr)
    except ValueError as exc:
        print(f"monores: invalid parameters: {exc}", file=sys.stderr)
    return 2


def main() -> None:
    sys.exit(run())
