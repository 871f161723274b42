"""``macforge``: verify, construct and scan minimal additive complements.

Exit codes: 0 success, 1 a semantic failure (not covered, not minimal, a
bound or hypothesis not met), 2 a usage or input error.
"""

from __future__ import annotations

import argparse
import csv
import io
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from . import toeplitz as tz
from .mac import check_certificate, decide_mac, window_oracle
from .setlang import (
    Finite,
    IncompatiblePeriod,
    SchemaError,
    SetSyntaxError,
    certificate_from_json,
    certificate_to_json,
    parse,
    parse_heights,
    parse_strip,
    render_strip,
    report_to_json,
)
from .strip import Pattern, project
from .witness import (
    BoundViolated,
    Construction,
    ConstructionError,
    HypothesisFailed,
    NotAMac,
    Thm4Input,
    Thm7Input,
    VerificationFailed,
    build_prop1_witness,
    build_thm4_witness,
    build_thm7_witness,
    build_thm8_witness,
    finite_mac_complement,
    single_set_covers,
    trivial_cover,
)
from .zset import ZSet, current_cap, use_cap

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
CAP_ENV = "MACFORGE_CAP"


class UsageError(Exception):
    pass


# -- helpers ---------------------------------------------------------------


def _print_report(report, out) -> None:
    print(f"covered: {'yes' if report.covered else 'no'}", file=out)
    print(f"minimal: {'yes' if report.minimal else 'no'}", file=out)
    if report.window:
        print(f"window: [{report.window[0]}, {report.window[1]}] (evidence on the window only)", file=out)
    for f in report.failures[:20]:
        where = "" if f.point is None else f" at {f.point}"
        print(f"failure: {f.kind} in residue {f.residue}{where}", file=out)
    if len(report.failures) > 20:
        print(f"... {len(report.failures) - 20} more failures", file=out)


def _parse_columns(specs: list[str]) -> Pattern:
    cols = {}
    for spec in specs:
        x, sep, expr = spec.partition("=")
        if not sep:
            raise UsageError(f"--col expects X=EXPR, got {spec!r}")
        try:
            key = int(x)
        except ValueError as exc:
            raise UsageError(f"column position {x!r} is not an integer") from exc
        if key in cols:
            raise UsageError(f"column {key} given twice")
        cols[key] = parse_heights(expr)
    return Pattern(cols)


def _pattern_from_args(args) -> Pattern:
    if args.col:
        if args.C:
            raise UsageError("give either --col or --C/--period, not both")
        return _parse_columns(args.col)
    if not args.C or not args.period:
        raise UsageError("a pattern needs --col X=EXPR entries or --C EXPR with --period P")
    base = parse_strip(args.C, args.period)
    return Pattern({r: c for r, c in enumerate(base.cols)})


def _cover_sets(K: ZSet, mode: str) -> tuple[ZSet, ...] | None:
    return None if mode == "single" else tuple(trivial_cover(K))


def _emit(result: Construction, args, out) -> None:
    cert = result.cert
    text = certificate_to_json(cert, result.report)
    if args.format == "json" and not args.out:
        out.write(text)
        return
    print(f"m: {cert.m}", file=out)
    if result.bound is not None:
        print(f"bound: {result.bound}", file=out)
    print(f"C: {render_strip(cert.C)}", file=out)
    print(f"V: {render_strip(result.V)}", file=out)
    print(f"parts: {len(cert.parts)}", file=out)
    print("verified: yes", file=out)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(f"certificate: {args.out}", file=out)


# -- verify ----------------------------------------------------------------


def cmd_verify(args, out) -> int:
    if args.cert:
        with open(args.cert, encoding="utf-8") as fh:
            cert, _ = certificate_from_json(fh.read())
        report = check_certificate(cert)
        ok = report.ok
    else:
        if not (args.C and args.W and args.m):
            raise UsageError("verify needs --C, --W and --m (or --cert FILE)")
        C = parse_strip(args.C, args.m)
        W = parse_strip(args.W, args.m)
        if args.window:
            lo, hi = args.window
            if lo >= hi:
                raise UsageError("--window needs LO < HI")
            report = window_oracle(C, W, lo, hi)
        else:
            report = decide_mac(C, W)
        ok = report.covered
    if args.format == "json":
        out.write(report_to_json(report))
    else:
        _print_report(report, out)
    return EXIT_OK if ok else EXIT_FAIL


# -- construct ---------------------------------------------------------------


def _construct(args) -> Construction:
    kind = args.kind
    if kind in ("thm4", "thm8"):
        if not (args.C and args.m):
            raise UsageError(f"construct {kind} needs --C and --m")
        C = parse_strip(args.C, args.m)
        inp = Thm4Input.from_set(C)
        inp = Thm4Input.from_set(C, _cover_sets(inp.K, args.cover))
        return build_thm4_witness(inp) if kind == "thm4" else build_thm8_witness(inp)
    if kind == "prop1":
        if args.m is None or args.B is None or args.f is None:
            raise UsageError("construct prop1 needs --m, --B and --f")
        B = parse_strip(args.B, args.m)
        if any(not c.is_empty() for c in B.cols[1:]):
            raise UsageError("--B must consist of multiples of m")
        return build_prop1_witness(args.m, B.cols[0], args.f)
    if kind == "thm7":
        if not args.m:
            raise UsageError("construct thm7 needs --m")
        p = _pattern_from_args(args)
        covers = single_set_covers(p) if args.cover == "single" else None
        return build_thm7_witness(Thm7Input(p, args.m, covers))
    if kind == "kwon":
        if not args.F:
            raise UsageError("construct kwon needs --F")
        F = parse_heights(args.F)
        if not F.is_finite() or F.is_empty():
            raise UsageError("--F must be a finite nonempty set")
        _, cert, _ = finite_mac_complement(F)
        report = check_certificate(cert)
        if not report.ok:
            raise VerificationFailed(report)
        return Construction(cert.W, cert, report)
    raise UsageError(f"unknown construction {kind!r}")


def cmd_construct(args, out) -> int:
    try:
        result = _construct(args)
    except BoundViolated as e:
        print(f"bound not met: {e.formula} = {e.bound}, but m = {e.m}", file=out)
        return EXIT_FAIL
    except NotAMac as e:
        print(f"not a minimal complement: {e}", file=out)
        return EXIT_FAIL
    except ConstructionError as e:
        print(f"{type(e).__name__}: {e}", file=out)
        return EXIT_FAIL
    _emit(result, args, out)
    return EXIT_OK


# -- scan --------------------------------------------------------------------


@dataclass(frozen=True)
class ScanRow:
    m: int
    status: str  # verified | bound-not-met | hypothesis-failed | verification-failed
    route: str
    detail: str


def _thm4_shape(p: Pattern, m: int) -> bool:
    xs = sorted(p.columns)
    return (
        len(xs) == 2
        and xs[0] == 0
        and 0 < xs[1] < m
        and not p.columns[0].is_finite()
        and p.columns[xs[1]].is_finite()
    )


def _build_for_scan(p: Pattern, m: int, route: str) -> tuple[str, Construction]:
    if route in ("auto", "thm4") and _thm4_shape(p, m):
        C, _ = project(p, m)
        builder = build_thm8_witness if C.cols[0].neg_tail else build_thm4_witness
        name = "thm8" if C.cols[0].neg_tail else "thm4"
        try:
            return name, builder(Thm4Input.from_set(C))
        except HypothesisFailed:
            inp = Thm4Input.from_set(C)
            return name, builder(Thm4Input.from_set(C, trivial_cover(inp.K)))
    if route == "thm4":
        raise HypothesisFailed("pattern is not an infinite column at x = 0 plus one finite column")
    try:
        return "thm7", build_thm7_witness(Thm7Input(p, m, single_set_covers(p)))
    except BoundViolated:
        raise
    except HypothesisFailed:
        return "thm7", build_thm7_witness(Thm7Input(p, m))


def scan_one(job: tuple[Pattern, int, str, int]) -> ScanRow:
    p, m, route, cap = job
    with use_cap(cap):
        try:
            name, result = _build_for_scan(p, m, route)
        except BoundViolated as e:
            return ScanRow(m, "bound-not-met", route, f"{e.formula} = {e.bound}")
        except VerificationFailed as e:
            return ScanRow(m, "verification-failed", route, str(e))
        except ConstructionError as e:
            return ScanRow(m, "hypothesis-failed", route, str(e))
    return ScanRow(m, "verified", name, f"bound {result.bound}")


def cmd_scan(args, out) -> int:
    p = _pattern_from_args(args)
    lo, hi = args.m_range
    if lo < 1 or lo > hi:
        raise UsageError("--m-range needs 1 <= LO <= HI")
    jobs = [(p, m, args.route, current_cap()) for m in range(lo, hi + 1)]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            rows = list(pool.map(scan_one, jobs))
    else:
        rows = [scan_one(j) for j in jobs]
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["m", "status", "route", "detail"])
        for r in rows:
            writer.writerow([r.m, r.status, r.route, r.detail])
        out.write(buf.getvalue())
    else:
        for r in rows:
            print(f"{r.m:>4}  {r.status:<17}  {r.route:<5}  {r.detail}", file=out)
    return EXIT_OK


# -- toeplitz ----------------------------------------------------------------


def _parse_multiset(text: str) -> tuple[int, ...]:
    e = parse(text)
    if not all(isinstance(t, Finite) for t in e.terms):
        raise UsageError(f"--A expects finite multisets such as {{0,0,3}}, got {text!r}")
    return tz.multiset(n for t in e.terms for n in t.elements)


def cmd_toeplitz(args, out) -> int:
    if args.sizes:
        try:
            sizes = [int(s) for s in args.sizes.split(",")]
        except ValueError as exc:
            raise UsageError("--sizes expects comma-separated integers") from exc
        if any(s < 1 for s in sizes):
            raise UsageError("sizes must be positive")
        print(f"size determinant: {tz.size_matrix_det(sizes)}", file=out)
        verdict = tz.gershgorin_unique_inverse(sizes)
        print(f"diagonal dominance (unique inverse): {'true' if verdict else 'false'}", file=out)
        return EXIT_OK
    if not args.A:
        raise UsageError("toeplitz needs --A entries or --sizes")
    As = [_parse_multiset(a) for a in args.A]
    m = args.m if args.m is not None else len(As)
    if m != len(As):
        raise UsageError(f"--m {m} but {len(As)} --A entries")
    if m > tz.MAX_SYMBOLIC:
        raise UsageError(f"symbolic determinant limited to m <= {tz.MAX_SYMBOLIC}")
    if any(not a for a in As):
        raise UsageError("multisets must be nonempty")
    T = tz.build_T(As)
    det = tz.symbolic_det(T)
    for i in range(m):
        row = "  ".join("q^{" + ",".join(map(str, T.entries[i][j])) + "}" for j in range(m))
        print(f"T[{i}]: {row}", file=out)
    print(f"det: {det.render()}", file=out)
    print(f"monomials: {len(det.terms)}", file=out)
    nonzero = not det.is_zero()
    print(f"nonzero: {'true' if nonzero else 'false'}", file=out)
    return EXIT_OK if nonzero else EXIT_FAIL


# -- entry point ---------------------------------------------------------------


def _pattern_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--col", action="append", default=[], metavar="X=EXPR", help="pattern column at x = X (heights)")
    p.add_argument("--C", help="set expression; with --period P it is lifted to a pattern")
    p.add_argument("--period", type=int, help="period at which --C is read")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="macforge", description="Verify, construct and scan minimal additive complements.")
    parser.add_argument("--cap", type=int, help=f"multiplicity cap (default from ${CAP_ENV} or 4)")
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="check C + W = Z and minimality")
    v.add_argument("--C")
    v.add_argument("--W")
    v.add_argument("--m", type=int)
    v.add_argument("--cert", help="certificate JSON file")
    v.add_argument("--window", nargs=2, type=int, metavar=("LO", "HI"))
    v.add_argument("--format", choices=["text", "json"], default="text")

    c = sub.add_parser("construct", help="build V and a certificate")
    c.add_argument(
        "kind",
        choices=["thm4", "thm7", "thm8", "prop1", "kwon"],
        help="thm4/thm8: ray column plus one finite column (B finite/infinite); thm7: a pattern; "
        "prop1: mN u B u {f}; kwon: a finite set in Z",
    )
    _pattern_flags(c)
    c.add_argument("--m", type=int)
    c.add_argument("--B", help="prop1: multiples of m below the ray")
    c.add_argument("--f", type=int, help="prop1: the extra element")
    c.add_argument("--F", help="kwon: finite set to give a minimal complement in Z")
    c.add_argument("--cover", choices=["single", "trivial"], default="single")
    c.add_argument("--out", help="write the certificate JSON here")
    c.add_argument("--format", choices=["text", "json"], default="text")

    s = sub.add_parser("scan", help="try the constructions over a range of m")
    _pattern_flags(s)
    s.add_argument("--m-range", nargs=2, type=int, required=True, metavar=("LO", "HI"))
    s.add_argument("--route", choices=["auto", "thm4", "thm7"], default="auto")
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--format", choices=["text", "csv"], default="text")

    t = sub.add_parser("toeplitz", help="determinant of the inverse system")
    t.add_argument("--m", type=int)
    t.add_argument("--A", action="append", default=[], help="finite multiset, repeat once per coefficient")
    t.add_argument("--sizes", help="comma-separated |A_i| for the size matrix")
    return parser


COMMANDS = {"verify": cmd_verify, "construct": cmd_construct, "scan": cmd_scan, "toeplitz": cmd_toeplitz}


def _cap_from(args) -> int | None:
    if args.cap is not None:
        return args.cap
    env = os.environ.get(CAP_ENV)
    if env:
        try:
            return int(env)
        except ValueError as exc:
            raise UsageError(f"{CAP_ENV} must be an integer, got {env!r}") from exc
    return None


# Flags whose values are set expressions and may start with '-' (e.g. -2N-2).
_EXPR_FLAGS = {"--C", "--W", "--B", "--F", "--A", "--col"}


def _attach_dash_values(argv: list[str]) -> list[str]:
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        if tok in _EXPR_FLAGS and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def main(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        args = parser.parse_args(_attach_dash_values(argv))
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    try:
        cap = _cap_from(args)
        if cap is not None and cap < 2:
            raise UsageError("cap must be at least 2")
        if cap is None:
            return COMMANDS[args.command](args, out)
        with use_cap(cap):
            return COMMANDS[args.command](args, out)
    except (UsageError, SetSyntaxError, IncompatiblePeriod, SchemaError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
