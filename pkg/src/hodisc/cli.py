"""Command-line surface: construction, generation, discrepancy, verification.

Every command is deterministic for a fixed flag set; shifts are always
user-supplied, never sampled.  Exit codes: 64 for usage errors, 2 for a
violated property (verify), 3 for an exceeded enumeration budget.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from typing import Sequence

from .discrepancy import warnock_l2, warnock_scan
from .genmat import sequence_net, write_matrix_files
from .netverify import (
    VerificationBudgetError,
    character_sum,
    dual_enumerate,
    find_dependency,
)
from .points import DyadicPoint, corollary_pointset, digital_shift, net_points
from .walsh import mu_vec, r_coeff

EXIT_OK = 0
EXIT_VIOLATED = 2
EXIT_BUDGET = 3
EXIT_USAGE = 64

DEFAULT_SEQUENCE_ALPHA = 5  # scan/gen sequence mode
COROLLARY_ALPHA = 3  # fixed by the finite-N construction


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # argparse defaults to exit 2
        self.print_usage(sys.stderr)
        sys.stderr.write(f"error: {message}\n")
        raise SystemExit(EXIT_USAGE)


def format_dec(num: int, prec: int) -> str:
    """Exact decimal expansion of num * 2^-prec."""
    if num == 0:
        return "0"
    digits = str(num * 5**prec).rjust(prec, "0")
    frac = digits.rstrip("0") or "0"
    return "0." + frac


def format_hexfrac(num: int, prec: int) -> str:
    return f"0x{num:x}p-{prec}"


def format_bin(num: int, prec: int) -> str:
    return "0." + format(num, f"0{prec}b") if prec else "0"


_FORMATTERS = {"dec": format_dec, "hexfrac": format_hexfrac, "bin": format_bin}


def parse_coordinate(text: str, fmt: str) -> tuple[int, int]:
    """(numerator, precision) of one coordinate in the given text format."""
    text = text.strip()
    if fmt == "hexfrac":
        body, _, exp = text.partition("p-")
        if not body.startswith("0x") or not exp:
            raise ValueError(f"bad hexfrac value {text!r}")
        return int(body, 16), int(exp)
    if fmt == "bin":
        if text == "0":
            return 0, 0
        if not text.startswith("0."):
            raise ValueError(f"bad binary value {text!r}")
        frac = text[2:]
        return int(frac, 2) if frac else 0, len(frac)
    value = Fraction(text)
    if value < 0 or value >= 1:
        raise ValueError(f"coordinate {text!r} outside [0,1)")
    den = value.denominator
    if den & (den - 1):
        raise ValueError(f"coordinate {text!r} is not dyadic")
    prec = den.bit_length() - 1
    return value.numerator, prec


def read_point_file(path: str, fmt: str) -> list[DyadicPoint]:
    with open(path) as fh:
        lines = [ln.strip() for ln in fh if ln.strip()]
    if not lines:
        raise ValueError("empty point file")
    parsed = [[parse_coordinate(tok, fmt) for tok in ln.split()] for ln in lines]
    s = len(parsed[0])
    prec = max((p for row in parsed for _, p in row), default=0)
    points = []
    for row in parsed:
        if len(row) != s:
            raise ValueError("ragged point file")
        points.append(DyadicPoint(tuple(n << (prec - p) for n, p in row), prec))
    return points


def _emit(lines: Sequence[str], out_path: str | None) -> None:
    text = "\n".join(lines) + ("\n" if lines else "")
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _parse_shift(text: str, s: int) -> DyadicPoint:
    parts = text.split(",")
    if len(parts) != s:
        raise ValueError(f"shift needs {s} comma-separated hex groups")
    nums = []
    prec = 4 * max(len(p) for p in parts)
    for p in parts:
        nums.append(int(p, 16) << (prec - 4 * len(p)))
    return DyadicPoint(tuple(nums), prec)


def _generate(args) -> list[DyadicPoint]:
    if args.count is not None:
        if args.alpha is not None:
            raise ValueError("--alpha is fixed to 3 in corollary (--count) mode")
        return corollary_pointset(args.s, args.count)
    if args.m is None:
        raise ValueError("need --m (net mode) or --count (corollary mode)")
    alpha = args.alpha if args.alpha is not None else DEFAULT_SEQUENCE_ALPHA
    g = sequence_net(args.s, alpha, args.m)
    return net_points(g)


def _cmd_gen(args) -> int:
    points = _generate(args)
    if args.shift:
        sigma = _parse_shift(args.shift, args.s)
        points = [digital_shift(pt, sigma) for pt in points]
    fmt = _FORMATTERS[args.format]
    lines = [" ".join(fmt(c, pt.precision) for c in pt.coords) for pt in points]
    _emit(lines, args.out)
    return EXIT_OK


def _cmd_disc(args) -> int:
    if args.infile:
        points = read_point_file(args.infile, args.format)
    else:
        points = _generate(args)
    exact = True if args.exact else None
    value = warnock_l2(points, exact=exact)
    _emit([repr(value)], args.out)
    return EXIT_OK


def _cmd_scan(args) -> int:
    alpha = args.alpha if args.alpha is not None else DEFAULT_SEQUENCE_ALPHA
    width = max((args.nmax - 1).bit_length(), 1)
    g = sequence_net(args.s, alpha, width)
    points = net_points(g, count=args.nmax)
    exact = True if args.exact else None
    report = warnock_scan(points, args.nmax, exact=exact)
    _emit(report.to_csv().splitlines(), args.out)
    return EXIT_OK


def _cmd_verify(args) -> int:
    g = sequence_net(args.s, args.alpha, args.m)
    t = args.t if args.t is not None else g.t_bound
    if t is None:
        raise ValueError("no formula bound available; pass --t")
    t = min(t, args.alpha * args.m)
    try:
        witness = find_dependency(g, args.alpha, t, budget=args.budget)
    except VerificationBudgetError as exc:
        print(f"unverified: {exc}")
        return EXIT_BUDGET
    if witness is None:
        print(f"certified: order-{args.alpha} quality t={t} "
              f"(formula bound {g.t_bound})")
        return EXIT_OK
    rows = " ".join(f"(j={j + 1},row={i})" for j, i in witness)
    print(f"violated: dependent admissible rows {rows} at t={t}")
    return EXIT_VIOLATED


def _cmd_dual(args) -> int:
    g = sequence_net(args.s, args.alpha, args.m)
    try:
        dual = dual_enumerate(g, budget_exponent=args.budget_exponent)
    except VerificationBudgetError as exc:
        print(f"unverified: {exc}")
        return EXIT_BUDGET
    lines = [
        f"# s={dual.s} m={dual.m} digit_range={dual.digit_range} "
        f"rank={dual.rank} dual_size={dual.size()}"
    ]
    pts = net_points(g) if args.check else None
    for ks in dual.elements():
        line = " ".join(str(k) for k in ks) + f"  mu={mu_vec(ks)}"
        if pts is not None:
            line += f"  char_sum={character_sum(pts, ks)}"
        lines.append(line)
    _emit(lines, args.out)
    return EXIT_OK


def _cmd_rtable(args) -> int:
    lines = ["k,l,numerator,denominator"]
    top = 1 << args.kmax
    for k in range(top):
        for l in range(top):
            r = r_coeff(k, l)
            lines.append(f"{k},{l},{r.numerator},{r.denominator}")
    _emit(lines, args.out)
    return EXIT_OK


def _cmd_export(args) -> int:
    g = sequence_net(args.s, args.alpha, args.m)
    paths = write_matrix_files(g, args.outdir)
    _emit(paths, None)
    return EXIT_OK


def build_parser() -> _Parser:
    parser = _Parser(prog="hodisc", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate points of a net or corollary set")
    gen.add_argument("--s", type=int, required=True)
    gen.add_argument("--alpha", type=int, default=None)
    gen.add_argument("--m", type=int, default=None)
    gen.add_argument("--count", type=int, default=None, help="corollary mode: N points")
    gen.add_argument("--shift", default=None, help="hex digits per coordinate, comma-separated")
    gen.add_argument("--format", choices=sorted(_FORMATTERS), default="dec")
    gen.add_argument("--out", default=None)
    gen.set_defaults(func=_cmd_gen)

    disc = sub.add_parser("disc", help="L2 discrepancy of one point set")
    disc.add_argument("--in", dest="infile", default=None)
    disc.add_argument("--s", type=int, default=None)
    disc.add_argument("--alpha", type=int, default=None)
    disc.add_argument("--m", type=int, default=None)
    disc.add_argument("--count", type=int, default=None)
    disc.add_argument("--format", choices=sorted(_FORMATTERS), default="dec")
    disc.add_argument("--exact", action="store_true")
    disc.add_argument("--out", default=None)
    disc.set_defaults(func=_cmd_disc)

    scan = sub.add_parser("scan", help="prefix L2 scan as CSV")
    scan.add_argument("--s", type=int, required=True)
    scan.add_argument("--alpha", type=int, default=None)
    scan.add_argument("--nmax", type=int, required=True)
    scan.add_argument("--exact", action="store_true")
    scan.add_argument("--out", default=None)
    scan.set_defaults(func=_cmd_scan)

    verify = sub.add_parser("verify", help="certify the order-alpha net property")
    verify.add_argument("--s", type=int, required=True)
    verify.add_argument("--alpha", type=int, required=True)
    verify.add_argument("--m", type=int, required=True)
    verify.add_argument("--t", type=int, default=None)
    verify.add_argument("--budget", type=int, default=2_000_000)
    verify.set_defaults(func=_cmd_verify)

    dual = sub.add_parser("dual", help="enumerate the dual net")
    dual.add_argument("--s", type=int, required=True)
    dual.add_argument("--alpha", type=int, required=True)
    dual.add_argument("--m", type=int, required=True)
    dual.add_argument("--budget-exponent", type=int, default=24)
    dual.add_argument("--check", action="store_true", help="append character sums")
    dual.add_argument("--out", default=None)
    dual.set_defaults(func=_cmd_dual)

    rtable = sub.add_parser("rtable", help="dump r(k,l) for k,l < 2^K as CSV")
    rtable.add_argument("--kmax", type=int, required=True)
    rtable.add_argument("--out", default=None)
    rtable.set_defaults(func=_cmd_rtable)

    export = sub.add_parser("export-matrices", help="write matrices + JSON sidecar")
    export.add_argument("--s", type=int, required=True)
    export.add_argument("--alpha", type=int, required=True)
    export.add_argument("--m", type=int, required=True)
    export.add_argument("--outdir", required=True)
    export.set_defaults(func=_cmd_export)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except VerificationBudgetError as exc:
        sys.stderr.write(f"budget exceeded: {exc}\n")
        return EXIT_BUDGET
    except (ValueError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
