"""Command-line interface.

Exit codes: 0 on success, 1 on a usage or parameter error, 2 when a
verification check fails.
"""

from __future__ import annotations

import argparse
import os
import sys
from fractions import Fraction

from . import bounds, tables, verify
from .analysis import analyze
from .constituent import MAX_ENUMERATION, InstanceTooLarge
from .ensemble import E1, E3, EnsembleSpec, sample
from .galois import field_of_order

EXIT_USAGE = 1
EXIT_VERIFY = 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def fraction(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def rate_list(text: str) -> list[Fraction]:
    return [fraction(t) for t in text.split(",") if t.strip()]


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_tables(args) -> int:
    rows = tables.compute_table(args.q, args.rates or tables.TABLE_RATES, workers=args.jobs)
    text = tables.to_csv(rows) if args.format == "csv" else tables.to_markdown(rows, args.q)
    _emit(text, args.out)
    return 0


def cmd_bound(args) -> int:
    kind = args.kind
    if kind == "vg":
        res = bounds.vg_bound(args.q, args.R)
    elif kind == "upper-asymptotic":
        res = bounds.upper_asymptotic(args.q, args.R)
    elif kind == "upper-finite":
        missing = [f for f in ("R1", "R2", "delta1", "b1") if getattr(args, f) is None]
        if missing:
            raise UsageError("upper-finite needs " + ", ".join("--" + m for m in missing))
        res = bounds.upper_finite(args.q, args.R1, args.R2, args.delta1, args.b1,
                                  delta2=args.delta2, rate=args.R)
    else:
        if args.R is None:
            raise UsageError("lower needs --R")
        if args.delta0 is not None:
            res = bounds.lower_bound_root(args.ensemble, args.q, args.R, args.delta0, args.ell)
        else:
            ells = [args.ell] if args.ell is not None else bounds.DEFAULT_ELLS
            res = bounds.optimize_delta0(args.ensemble, args.q, args.R, ells=ells)
    _emit(res.describe() + "\n", args.out)
    return 0


def cmd_sample(args) -> int:
    field = field_of_order(args.q)
    if args.k0 is not None:
        k0 = args.k0
    else:
        k0 = args.R0 * args.delta0
        if k0.denominator != 1:
            raise UsageError(f"R0 * delta0 = {k0} is not an integer")
        k0 = int(k0)
    spec = EnsembleSpec(E1 if args.ell == 2 else E3, field, args.delta0, k0, args.b, args.ell, args.seed)
    s = sample(spec)
    lines = [
        f"q={args.q}",
        f"delta0={spec.delta0}",
        f"k0={spec.k0}",
        f"b={spec.b}",
        f"ell={spec.ell}",
        f"seed={spec.seed}",
        f"shape={s.H.rows}x{s.H.cols}",
        f"design_rate={s.design_rate}",
    ]
    text = "\n".join(lines) + "\n"
    if args.analyze:
        text += analyze(s.H, cap=args.cap).to_text()
    if args.dump:
        with open(args.dump, "w", encoding="utf-8") as fh:
            fh.write(s.H.to_text())
    _emit(text, args.out)
    return 0


def cmd_verify(args) -> int:
    results = verify.run_suite(args.suite, samples=args.samples, seed=args.seed, q=args.q,
                               delta0=args.delta0, b=args.b, k0=args.k0)
    out = []
    for r in results:
        out.append(r.line())
        out.extend("  " + f for f in r.failures)
    _emit("\n".join(out) + "\n", args.out)
    return 0 if all(r.passed for r in results) else EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="expander-bounds", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    t = sub.add_parser("tables", help="VG, upper and optimized lower bounds for a list of rates")
    t.add_argument("--q", type=int, required=True)
    t.add_argument("--rates", type=rate_list, help="comma-separated, e.g. 1/8,1/2")
    t.add_argument("--format", choices=("csv", "md"), default="md")
    t.add_argument("--jobs", type=int, default=1, help="worker threads over rates")
    t.add_argument("--out")
    t.set_defaults(func=cmd_tables)

    b = sub.add_parser("bound", help="a single bound")
    b.add_argument("kind", choices=("vg", "upper-asymptotic", "upper-finite", "lower"))
    b.add_argument("--q", type=int, required=True)
    b.add_argument("--R", type=fraction, help="design rate (true rate for upper-finite)")
    b.add_argument("--ensemble", choices=("e1", "e2", "e3"), default="e1")
    b.add_argument("--delta0", type=int, help="fix Delta0 instead of optimizing")
    b.add_argument("--ell", type=int)
    b.add_argument("--R1", type=fraction)
    b.add_argument("--R2", type=fraction)
    b.add_argument("--delta1", type=int)
    b.add_argument("--delta2", type=int)
    b.add_argument("--b1", type=int)
    b.add_argument("--out")
    b.set_defaults(func=cmd_bound)

    s = sub.add_parser("sample", help="draw a seeded ensemble code")
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--delta0", type=int, required=True)
    s.add_argument("--b", type=int, required=True)
    g = s.add_mutually_exclusive_group()
    g.add_argument("--k0", type=int)
    g.add_argument("--R0", type=fraction, default=Fraction(1, 2))
    s.add_argument("--ell", type=int, default=2)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--analyze", action="store_true")
    s.add_argument("--cap", type=int, default=MAX_ENUMERATION, help="codeword enumeration cap")
    s.add_argument("--dump", help="write H in the plain-text matrix format")
    s.add_argument("--out")
    s.set_defaults(func=cmd_sample)

    v = sub.add_parser("verify", help="run verification checks")
    v.add_argument("suite", nargs="?", default="all", choices=verify.SUITES + ("all",))
    v.add_argument("--samples", type=int)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--q", type=int)
    v.add_argument("--delta0", type=int)
    v.add_argument("--b", type=int)
    v.add_argument("--k0", type=int)
    v.add_argument("--out")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, InstanceTooLarge, ValueError, ZeroDivisionError) as exc:
        print(f"expander-bounds: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BrokenPipeError:
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        return 0


if __name__ == "__main__":
    sys.exit(main())
