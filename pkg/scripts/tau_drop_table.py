"""Tabulate tau before and after eliminating Z for every member of a suite.

usage: python3 scripts/tau_drop_table.py [suite-dir] [--mode absolute|relative]
"""

import argparse
import time
from pathlib import Path

from rees_tau.diffsat import diff_saturate, rel_diff_saturate
from rees_tau.elim import tau_drop_check
from rees_tau.rees import PreconditionError
from rees_tau.suites import load_suite

ROOT = Path(__file__).resolve().parents[1]


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("suite", nargs="?", default=str(ROOT / "algebras" / "suite"))
    ap.add_argument("--mode", choices=["absolute", "relative"], default="absolute")
    args = ap.parse_args()
    sat = diff_saturate if args.mode == "absolute" else rel_diff_saturate
    drop_mode = "absolute" if args.mode == "absolute" else "relative-only"
    print(f"{'member':<14} {'field':<5} {'tau_G':>5} {'tau_R':>5}  {'route':<9} {'ok':<4} secs")
    bad = 0
    for m in load_suite(args.suite):
        t0 = time.perf_counter()
        try:
            r = tau_drop_check(sat(m.algebra), mode=drop_mode)
        except PreconditionError as exc:
            print(f"{m.name:<14} skipped: {exc}")
            continue
        bad += not r.holds
        secs = time.perf_counter() - t0
        print(f"{m.name:<14} {m.algebra.ring.field.name:<5} {r.tau_g:>5} {r.tau_r:>5}  {r.route:<9} {'yes' if r.holds else 'NO':<4} {secs:.2f}")
    print(f"{bad} failure(s)")


if __name__ == "__main__":
    main()
