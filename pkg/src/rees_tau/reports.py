"""Deterministic plain-text reports for the command line."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .polyring import format_poly
from .rees import PreconditionError, ReesAlgebra, sort_polys
from .tangent import diff_close_hom_ideal, initial_ideal, ridge


def _header(kind: str, g: ReesAlgebra) -> list[str]:
    R = g.ring
    out = [kind, f"field: {R.field.name}", "vars: " + ",".join(R.vars)]
    if R.z_var is not None:
        out.append(f"z-var: {R.z_var}")
    out.append(f"saturation: {g.saturation}")
    return out


def _weighted(g: ReesAlgebra) -> list[str]:
    rows = sorted(g.gens, key=lambda x: (x.n, x.f.degree(), str(x.f)))
    return [f"  {format_poly(x.f)}  W^{x.n}" for x in rows] or ["  (none)"]


def algebra_listing(g: ReesAlgebra) -> str:
    lines = _header("algebra", g) + ["generators:"] + _weighted(g)
    return "\n".join(lines) + "\n"


def tau_report(g: ReesAlgebra, point: Sequence | None = None) -> tuple[str, int]:
    pt = tuple(point) if point is not None else (0,) * g.ring.ngens
    I = initial_ideal(g, pt)
    C = diff_close_hom_ideal(I)
    r = ridge(C)
    lines = _header("tau-report", g)
    lines.append("point: " + ",".join(g.ring.field.format(g.ring.field(c)) for c in pt))
    lines.append("initial forms:")
    lines += [f"  {format_poly(f)}" for f in sort_polys(I.gens)] or ["  (none)"]
    lines.append("closure generators:")
    lines += [f"  {format_poly(f)}" for f in sort_polys(C.gens)] or ["  (none)"]
    lines.append("additive generators:")
    lines += [f"  ({format_poly(ell)}, e={e})" for ell, e in r.components] or ["  (none)"]
    lines.append("L-basis:")
    lines += ["  (" + ",".join(g.ring.field.format(g.ring.field(c)) for c in v) + ")" for v in r.L_basis] or ["  (zero)"]
    lines.append(f"tau = {r.tau}")
    return "\n".join(lines) + "\n", r.tau


@dataclass(frozen=True)
class ElimOutcome:
    text: str
    verdict: str  # holds | fails | not-applicable
    tau_g: int | None
    tau_r: int | None


def elim_report(
    g: ReesAlgebra,
    route: str = "auto",
    mode: str = "absolute",
    weight_bound: int | None = None,
    degree_bound: int = 8,
) -> ElimOutcome:
    """Eliminate Z from an already saturated algebra and compare tau values."""
    from .elim import elimination_algebra, tau_drop_check
    from .tangent import tau

    lines = _header("elim-report", g)
    drop_mode = "absolute" if mode == "absolute" else "relative-only"
    try:
        rec = tau_drop_check(g, None, drop_mode, route, weight_bound, degree_bound)
        E, tg, tr = rec.elimination, rec.tau_g, rec.tau_r
        used = rec.route
        verdict = "holds" if rec.holds else "fails"
        reason = None
    except PreconditionError as exc:
        used = "universal" if route == "auto" else route
        E = elimination_algebra(g, None, used, weight_bound, degree_bound)
        tg = tau(g)
        tr = tau(E.algebra) if E.algebra.ring.ngens else 0
        verdict = "not-applicable"
        reason = str(exc)
    lines.append(f"route: {used}")
    lines.append(f"mode: {drop_mode}")
    lines.append(f"provenance: {E.provenance}")
    lines.append("elimination generators:")
    lines += _weighted(E.algebra)
    for note in E.notes:
        lines.append(f"note: {note}")
    lines.append(f"tau_G = {tg}")
    lines.append(f"tau_R = {tr}")
    expect = "tau_R = tau_G - 1" if drop_mode == "absolute" else "tau_R <= tau_G - 1"
    if reason:
        lines.append(f"verdict: {verdict} ({reason})")
    else:
        lines.append(f"verdict: {verdict} ({expect})")
    return ElimOutcome("\n".join(lines) + "\n", verdict, tg, tr)
