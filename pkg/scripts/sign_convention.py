"""Which sign convention makes Delta_Z^(e) prod(Z - Y_i) equal e_{n-e}(Z - Y)?

Prints, per field and degree n, the exponents e where the plain identity and
the version with the factor (-1)^(n-e) hold.

usage: python3 scripts/sign_convention.py [--max-n N]
"""

import argparse

from rees_tau.elim import symmetric_identity
from rees_tau.polyring import FieldSpec


def _marks(flags) -> str:
    return "".join("+" if ok else "." for ok in flags)


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-n", type=int, default=5)
    args = ap.parse_args()
    print("e = 0..n from left to right; + holds, . fails")
    print(f"{'field':<5} {'n':>2}  {'plain':<8} {'signed':<8}")
    for p in (0, 2, 3, 5):
        for n in range(1, args.max_n + 1):
            s = symmetric_identity(n, FieldSpec(p))
            print(f"{FieldSpec(p).name:<5} {n:>2}  {_marks(s.unsigned):<8} {_marks(s.signed):<8}")


if __name__ == "__main__":
    main()
