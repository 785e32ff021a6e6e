"""Tau of each suite member next to tau of its Veronese subalgebras and its saturation.

usage: python3 scripts/veronese_sweep.py [suite-dir] [--limit N]
"""

import argparse
from pathlib import Path

from rees_tau.diffsat import diff_saturate
from rees_tau.rees import veronese
from rees_tau.suites import load_suite, valid_veronese_degrees
from rees_tau.tangent import tau

ROOT = Path(__file__).resolve().parents[1]


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("suite", nargs="?", default=str(ROOT / "algebras" / "suite"))
    ap.add_argument("--limit", type=int, default=12)
    args = ap.parse_args()
    for m in load_suite(args.suite):
        g = m.algebra
        row = {N: tau(veronese(g, N)) for N in valid_veronese_degrees(g, args.limit)}
        cells = " ".join(f"N={N}:{t}" for N, t in row.items())
        print(f"{m.name:<14} tau={tau(g)} saturated={tau(diff_saturate(g))}  {cells}")


if __name__ == "__main__":
    main()
