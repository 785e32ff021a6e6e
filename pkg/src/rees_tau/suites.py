"""Verification suites over a directory of algebra files.

Each suite member is an unsaturated algebra with a distinguished variable.
The checks saturate as needed and compare exact integers or sets.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Sequence

from .algfile import load_alg
from .diffsat import diff_saturate, rel_diff_saturate
from .elim import (
    check_translation_invariance,
    elimination_algebra,
    symmetric_identity,
    tau_drop_check,
    universal_invariants,
)
from .polyring import FieldSpec, Ring
from .rees import PreconditionError, ReesAlgebra, enumerate_sing, graded_piece, ideal_contains, ideal_contains_truncated, odot, veronese
from .tangent import tau

SING_LIMIT = 3**6


@dataclass(frozen=True)
class Member:
    name: str
    algebra: ReesAlgebra


@dataclass(frozen=True)
class CheckResult:
    check: str
    member: str
    ok: bool
    detail: str


def load_suite(directory: str | Path) -> list[Member]:
    paths = sorted(Path(directory).glob("*.alg"))
    if not paths:
        raise FileNotFoundError(f"no .alg files in {directory}")
    return [Member(p.stem, load_alg(p).algebra) for p in paths]


# -- per-member checks ---------------------------------------------------------------


def check_tau_drop(m: Member) -> CheckResult:
    rec = tau_drop_check(diff_saturate(m.algebra), mode="absolute")
    return CheckResult("tau-drop", m.name, rec.holds, f"{rec.tau_g} -> {rec.tau_r} via {rec.route}")


def check_relative_drop(m: Member) -> CheckResult:
    rec = tau_drop_check(rel_diff_saturate(m.algebra), mode="relative-only")
    return CheckResult("relative-drop", m.name, rec.holds, f"{rec.tau_g} -> {rec.tau_r} via {rec.route}")


def valid_veronese_degrees(g: ReesAlgebra, limit: int = 12) -> list[int]:
    L = g.lcm_weights()
    return list(range(L, limit + 1, L))


def check_veronese(m: Member, limit: int = 12) -> CheckResult:
    t = tau(m.algebra)
    seen = {N: tau(veronese(m.algebra, N)) for N in valid_veronese_degrees(m.algebra, limit)}
    ok = all(v == t for v in seen.values())
    detail = f"tau {t}; " + ", ".join(f"N={N}:{v}" for N, v in seen.items())
    return CheckResult("veronese", m.name, ok, detail)


def check_saturation(m: Member) -> CheckResult:
    g = m.algebra
    G = diff_saturate(g)
    t1, t2 = tau(g), tau(G)
    ok = t1 == t2
    detail = f"tau {t1} vs {t2}"
    F = g.ring.field
    if F.is_finite and F.p**g.ring.ngens <= SING_LIMIT:
        s1, s2 = enumerate_sing(g), enumerate_sing(G)
        ok = ok and s1 == s2
        detail += f"; |Sing| {len(s1)} vs {len(s2)}"
    return CheckResult("saturation", m.name, ok, detail)


def check_routes(m: Member, degree_bound: int = 8) -> CheckResult:
    G = diff_saturate(m.algebra)
    tu = tau(elimination_algebra(G, route="universal").algebra)
    tz = tau(elimination_algebra(G, route="z-free", degree_bound=degree_bound).algebra)
    return CheckResult("routes", m.name, tu == tz, f"universal {tu}, z-free {tz}")


MEMBER_CHECKS: dict[str, Callable[[Member], CheckResult]] = {
    "tau-drop": check_tau_drop,
    "relative-drop": check_relative_drop,
    "veronese": check_veronese,
    "saturation": check_saturation,
    "routes": check_routes,
}


# -- integrally equivalent pairs ---------------------------------------------------------


@dataclass(frozen=True)
class IntegralPair:
    """``g`` and ``g`` with ``h W^m`` adjoined, where ``h^k`` lies in ``I_{km}``."""

    name: str
    algebra: ReesAlgebra
    h: str
    m: int
    k: int

    def adjoined(self) -> ReesAlgebra:
        return odot(self.algebra, ReesAlgebra.from_pairs(self.algebra.ring, [(self.h, self.m)]))

    def certificate(self) -> bool:
        hk = self.algebra.ring.parse(self.h) ** self.k
        piece = graded_piece(self.algebra, self.k * self.m)
        if hk.is_homogeneous() and all(f.is_homogeneous() for f in piece.gens):
            return ideal_contains(piece, hk)
        return ideal_contains_truncated(piece.gens, hk, hk.degree())


def _alg(field: int, names: str, gens: Sequence[tuple[str, int]]) -> ReesAlgebra:
    vs = tuple(names.split(","))
    return ReesAlgebra.from_pairs(Ring(FieldSpec(field), vs, len(vs) - 1), gens)


def integral_pairs() -> list[IntegralPair]:
    return [
        IntegralPair("mixed-Q", _alg(0, "x,z", [("x^2", 2), ("z^2", 2)]), "x*z", 2, 2),
        IntegralPair("sum-F2", _alg(2, "x,y,z", [("x^2", 2), ("y^2", 2)]), "x+y", 1, 2),
        IntegralPair("sum-F3", _alg(3, "x,y,z", [("x^3", 3), ("y^3", 3)]), "x+y", 1, 3),
        IntegralPair("cusp-Q", _alg(0, "x,z", [("x^3", 3), ("z^2", 2)]), "x^2*z", 1, 6),
        IntegralPair("mixed-F5", _alg(5, "x,z", [("x^2", 2), ("z^2", 2)]), "x*z", 2, 2),
        IntegralPair("power-Q", _alg(0, "x,y,z", [("z^2 - x^3", 2)]), "(z^2 - x^3)^2", 4, 1),
    ]


def check_integral_pair(pair: IntegralPair) -> CheckResult:
    if not pair.certificate():
        return CheckResult("integral-pair", pair.name, False, "h^k is not in I_km")
    t1, t2 = tau(pair.algebra), tau(pair.adjoined())
    return CheckResult("integral-pair", pair.name, t1 == t2, f"tau {t1} vs {t2}")


# -- global identities --------------------------------------------------------------------


def identity_checks() -> list[CheckResult]:
    out = []
    for p in (0, 2, 3, 5):
        for n in (2, 3, 4):
            s = symmetric_identity(n, FieldSpec(p))
            out.append(CheckResult("symmetric-identity", f"n={n} {FieldSpec(p).name}", all(s.unsigned), s.summary()))
    for p in (0, 2, 3):
        for n in (2, 3):
            u = universal_invariants(n, FieldSpec(p))
            rep = check_translation_invariance(u)
            out.append(
                CheckResult("invariance", f"n={n} {FieldSpec(p).name}", rep.holds, f"{len(u.gens)} generators, degrees {u.degrees()}")
            )
    return out


# -- driver -------------------------------------------------------------------------------


def thread_count() -> int:
    try:
        return max(1, int(os.environ.get("REES_TAU_THREADS", "1")))
    except ValueError:
        return 1


def _run_one(fn, m) -> CheckResult:
    try:
        return fn(m)
    except PreconditionError as exc:
        return CheckResult(fn.__name__.removeprefix("check_").replace("_", "-"), m.name, False, f"precondition: {exc}")


def run_suite(members: Sequence[Member], checks: Sequence[str] | None = None) -> list[CheckResult]:
    """All member checks, then pairs and identities, in a fixed order."""
    names = list(MEMBER_CHECKS) if checks is None else list(checks)
    jobs = [(MEMBER_CHECKS[c], m) for c in names for m in members]
    with ThreadPoolExecutor(max_workers=thread_count()) as pool:
        results = list(pool.map(lambda job: _run_one(*job), jobs))
    results += [check_integral_pair(p) for p in integral_pairs()]
    results += identity_checks()
    return results


def format_table(results: Sequence[CheckResult]) -> str:
    w1 = max(len(r.check) for r in results)
    w2 = max(len(r.member) for r in results)
    lines = [f"{r.check:<{w1}}  {r.member:<{w2}}  {'PASS' if r.ok else 'FAIL'}  {r.detail}" for r in results]
    failed = sum(not r.ok for r in results)
    lines.append(f"{len(results) - failed} passed, {failed} failed")
    return "\n".join(lines) + "\n"

