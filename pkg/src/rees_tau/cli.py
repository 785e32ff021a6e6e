"""Command line: ``rees-tau <verb> <path> [flags]``.

Verbs: sing, saturate, tau, eliminate, verify.  Exit codes: 0 success,
1 computational refutation, 2 input or precondition error.
"""

from __future__ import annotations

import argparse
import logging
import sys
from fractions import Fraction
from pathlib import Path

from .algfile import AlgFileError, load_alg
from .diffsat import diff_saturate, rel_diff_saturate
from .rees import PreconditionError, enumerate_sing, in_sing_locus
from .reports import algebra_listing, elim_report, tau_report

EXIT_OK, EXIT_REFUTED, EXIT_INPUT = 0, 1, 2


def _point(text: str) -> tuple:
    try:
        return tuple(Fraction(c.strip()) for c in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad point {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="rees-tau", description="Rees algebras, tau-invariants and elimination.")
    ap.add_argument("verb", choices=["sing", "saturate", "tau", "eliminate", "verify"])
    ap.add_argument("path", help="algebra file, or a directory of them for verify")
    ap.add_argument("--route", choices=["auto", "universal", "z-free"], default="auto")
    ap.add_argument("--mode", choices=["absolute", "relative"], default="absolute")
    ap.add_argument("--weight-bound", type=int, default=None)
    ap.add_argument("--degree-bound", type=int, default=8)
    ap.add_argument("--kmax", type=int, default=6)
    ap.add_argument("--point", type=_point, default=None)
    ap.add_argument("--quiet", action="store_true", help="print only the final value")
    ap.add_argument("-v", "--verbose", action="store_true")
    return ap


def _saturate(g, mode: str):
    return diff_saturate(g) if mode == "absolute" else rel_diff_saturate(g)


def run(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    err = sys.stderr
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    try:
        if args.verb == "verify":
            return _verify(args, out)
        g = load_alg(args.path).algebra
        if args.point is not None and len(args.point) != g.ring.ngens:
            raise PreconditionError(f"point has {len(args.point)} coordinates, ring has {g.ring.ngens}")
        if args.verb == "sing":
            return _sing(g, args, out)
        if args.verb == "saturate":
            if args.mode == "relative" and g.ring.z_index is None:
                raise PreconditionError("relative saturation needs a z-var line")
            text = algebra_listing(_saturate(g, args.mode))
            out.write(f"{len(_saturate(g, args.mode).gens)}\n" if args.quiet else text)
            return EXIT_OK
        if args.verb == "tau":
            text, t = tau_report(g, args.point)
            out.write(f"{t}\n" if args.quiet else text)
            return EXIT_OK
        if args.verb == "eliminate":
            if g.ring.z_index is None:
                raise PreconditionError("elimination needs a z-var line")
            res = elim_report(_saturate(g, args.mode), args.route, args.mode, args.weight_bound, args.degree_bound)
            out.write(f"{res.verdict}\n" if args.quiet else res.text)
            return EXIT_REFUTED if res.verdict == "fails" else EXIT_OK
    except (AlgFileError, PreconditionError, ValueError, KeyError, OSError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) else str(exc)
        err.write(f"error: {msg}\n")
        return EXIT_INPUT
    return EXIT_INPUT


def _sing(g, args, out) -> int:
    if args.point is not None:
        ok = in_sing_locus(g, [g.ring.field(c) for c in args.point])
        out.write(f"{'yes' if ok else 'no'}\n" if args.quiet else f"point in Sing: {'yes' if ok else 'no'}\n")
        return EXIT_OK
    if not g.ring.field.is_finite:
        ok = in_sing_locus(g, (0,) * g.ring.ngens)
        out.write(f"{'yes' if ok else 'no'}\n" if args.quiet else f"origin in Sing: {'yes' if ok else 'no'}\n")
        return EXIT_OK
    pts = enumerate_sing(g)
    if args.quiet:
        out.write(f"{len(pts)}\n")
    else:
        out.write(f"sing-report\nfield: {g.ring.field.name}\nvars: {','.join(g.ring.vars)}\n")
        out.write(f"points: {len(pts)}\n")
        for p in pts:
            out.write("  (" + ",".join(map(str, p)) + ")\n")
    return EXIT_OK


def _verify(args, out) -> int:
    from .suites import format_table, load_suite, run_suite

    path = Path(args.path)
    members = load_suite(path) if path.is_dir() else load_suite_file(path)
    results = run_suite(members)
    failed = [r for r in results if not r.ok]
    if args.quiet:
        out.write("pass\n" if not failed else "fail\n")
    else:
        out.write(format_table(results))
    return EXIT_REFUTED if failed else EXIT_OK


def load_suite_file(path: Path):
    from .suites import Member

    return [Member(path.stem, load_alg(path).algebra)]


def main() -> None:
    sys.exit(run())
