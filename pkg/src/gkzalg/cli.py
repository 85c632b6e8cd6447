"""Command-line front end.

Exit status: 0 when the computation finished (a negative verdict is still
0), 2 for unreadable or invalid input, 3 when a precondition of the request
fails (for example a prime that is too small).
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from typing import Optional

from . import io
from .apex import ApexSearch, decide_algebraic
from .asystem import check_saturation, gamma_lift
from .cone import is_irreducible
from .errors import InputError, PreconditionError
from .io import format_rational, format_vector
from .modp import apply_operators_modp, modp_witness, recursion_holds
from .series import (
    FormalSolutionSpec,
    apply_operators_series,
    g3_f_series,
    g3_g_series,
    phi_series,
    verify_g3_closed_form,
)

EXIT_OK, EXIT_INPUT, EXIT_PRECONDITION = 0, 2, 3


def _config_summary(desc: io.SystemDescription, search: ApexSearch) -> dict:
    cfg = desc.cfg
    return {
        "name": desc.name,
        "r": cfg.r,
        "N": cfg.N,
        "A": [list(a) for a in cfg.A],
        "h": format_vector(cfg.h),
        "L_basis": [list(l) for l in cfg.L_basis],
        "facets": [list(phi) for phi in search.fs.normals],
        "volume": search.volume,
        "labels": desc.labels,
    }


def _apex_entry(rep) -> dict:
    return {
        "alpha": format_vector(rep.alpha.alpha),
        "apex_points": [format_vector(p) for p in rep.apex_points],
        "signature": rep.signature,
        "volume": rep.volume,
        "maximal": rep.maximal,
    }


def _series_terms(series) -> list:
    return [[list(m), format_rational(c)] for m, c in series.terms()]


def cmd_check(desc, args, search) -> dict:
    alpha = desc.require_alpha()
    verdict = decide_algebraic(desc.cfg, alpha, ks=args.k, search=search)
    sweep = []
    for k, rep in verdict.per_k.items():
        entry = _apex_entry(rep)
        entry["k"] = k
        sweep.append(entry)
    return {
        "alpha": format_vector(alpha.alpha),
        "D": alpha.D,
        "saturated": check_saturation(desc.cfg, search.tri),
        "irreducible": verdict.irreducible,
        "volume": search.volume,
        "sweep": sweep,
        "complete": verdict.complete,
        "algebraic": verdict.algebraic,
    }


def cmd_apex(desc, args, search) -> dict:
    alpha = desc.require_alpha()
    ks = args.k or [1]
    return {"reports": [dict(_apex_entry(search.apex_points(alpha.scaled(k))), k=k) for k in ks]}


def cmd_volume(desc, args, search) -> dict:
    tri = search.tri
    return {
        "volume": tri.total,
        "simplices": [{"generators": list(s), "det": d} for s, d in zip(tri.simplices, tri.dets)],
    }


def cmd_irreducible(desc, args, search) -> dict:
    alpha = desc.require_alpha()
    num, den = alpha.numerators(), alpha.D
    met = [sorted(f.generators) for f in search.fs.faces if f.meets_scaled(num, den)]
    return {
        "alpha": format_vector(alpha.alpha),
        "irreducible": is_irreducible(desc.cfg, search.fs, alpha),
        "faces_met": met,
    }


def cmd_modp(desc, args, search) -> dict:
    alpha = desc.require_alpha()
    if args.p is None:
        raise InputError("modp needs --p PRIME")
    w = modp_witness(desc.cfg, alpha, args.p, search=search)
    solutions = []
    for beta, gs, poly in zip(w.betas, w.gamma_sets, w.polys):
        res = apply_operators_modp(desc.cfg, w.lift, poly)
        solutions.append(
            {
                "beta": list(beta),
                "apex": format_vector(Fraction(b, w.p) for b in beta),
                "terms": [[list(m), c] for m, c in poly.terms()],
                "residual_zero": res.zero,
                "recursion_holds": all(recursion_holds(poly, l) for l in desc.cfg.L_basis),
            }
        )
    return {
        "alpha": format_vector(alpha.alpha),
        "p": w.p,
        "rho": w.rho,
        "lift": list(w.lift),
        "rank": w.rank,
        "signature_rho_alpha": w.signature_rho,
        "solutions": solutions,
    }


def cmd_series(desc, args, search) -> dict:
    alpha = desc.require_alpha()
    gamma = gamma_lift(desc.cfg, alpha)
    spec = FormalSolutionSpec(desc.cfg, gamma, args.order)
    phi = phi_series(spec)
    res = apply_operators_series(spec, phi)
    return {
        "alpha": format_vector(alpha.alpha),
        "gamma": format_vector(gamma),
        "basis": [list(b) for b in phi.basis],
        "variables": list(phi.series.variables),
        "order": args.order,
        "coefficients": _series_terms(phi.series),
        "verified_order": res.verified_order,
        "annihilated": res.zero,
    }


def cmd_verify_g3(args) -> dict:
    if args.a is None:
        raise InputError("verify-g3 needs --a RATIONAL")
    a = io.parse_rational(args.a, "--a")
    if a.denominator == 1:
        raise PreconditionError("a must not be an integer")
    order = args.order
    return {
        "a": format_rational(a),
        "order": order,
        "holds": verify_g3_closed_form(a, order),
        "f": _series_terms(g3_f_series(order)),
        "g": _series_terms(g3_g_series(order)),
    }


COMMANDS = {
    "check": cmd_check,
    "apex": cmd_apex,
    "volume": cmd_volume,
    "irreducible": cmd_irreducible,
    "modp": cmd_modp,
    "series": cmd_series,
}


def _human(report: dict) -> str:
    lines = [f"command: {report['command']}"]
    cfg = report.get("configuration")
    if cfg:
        lines.append(f"system: {cfg['name']}  (r={cfg['r']}, N={cfg['N']}, volume={cfg['volume']})")
        lines.append(f"  h = ({', '.join(cfg['h'])})")
        lines.append(f"  relations: {cfg['L_basis']}")
        lines.append(f"  facets: {cfg['facets']}")
    if "error" in report:
        lines.append(f"error: {report['error']}")
        return "\n".join(lines) + "\n"
    out = report["result"]
    cmd = report["command"]
    if cmd == "check":
        lines.append(f"alpha = ({', '.join(out['alpha'])}), D = {out['D']}")
        lines.append(f"saturated: {out['saturated']}   irreducible: {out['irreducible']}")
        for e in out["sweep"]:
            mark = "maximal" if e["maximal"] else "not maximal"
            lines.append(f"  k={e['k']:>3}: signature {e['signature']}/{e['volume']} ({mark})")
        lines.append(f"algebraic: {out['algebraic']}")
    elif cmd == "apex":
        for rep in out["reports"]:
            lines.append(f"k={rep['k']}: signature {rep['signature']}/{rep['volume']}")
            for p in rep["apex_points"]:
                lines.append(f"  ({', '.join(p)})")
    elif cmd == "volume":
        lines.append(f"volume: {out['volume']}")
        for s in out["simplices"]:
            lines.append(f"  simplex {s['generators']}  |det| = {s['det']}")
    elif cmd == "irreducible":
        lines.append(f"irreducible: {out['irreducible']}")
        for f in out["faces_met"]:
            lines.append(f"  alpha + Z^r meets the face spanned by generators {f}")
    elif cmd == "modp":
        lines.append(f"p = {out['p']}, rho = {out['rho']}, integral lift {out['lift']}")
        lines.append(f"rank: {out['rank']} (signature of rho*alpha: {out['signature_rho_alpha']})")
        for s in out["solutions"]:
            status = "ok" if s["residual_zero"] and s["recursion_holds"] else "FAILED"
            lines.append(f"  beta={s['beta']}: {len(s['terms'])} terms, operators {status}")
    elif cmd == "series":
        lines.append(f"gamma = ({', '.join(out['gamma'])}), relation basis {out['basis']}")
        for m, c in out["coefficients"]:
            lines.append(f"  {m}: {c}")
        lines.append(f"annihilated through order {out['verified_order']}: {out['annihilated']}")
    elif cmd == "verify-g3":
        lines.append(f"G3(a, 1-a) = f^a sqrt(g/Delta) for a = {out['a']} through order {out['order']}: {out['holds']}")
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("human", "machine"), default="human")

    parser = argparse.ArgumentParser(prog="gkzalg", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("check", "apex", "volume", "irreducible", "modp", "series"):
        p = sub.add_parser(name, parents=[common])
        p.add_argument("--input", required=True, metavar="FILE")
        if name in ("check", "apex"):
            p.add_argument("--k", type=int, action="append", help="restrict to this multiplier (repeatable)")
        if name == "modp":
            p.add_argument("--p", type=int, metavar="PRIME")
        if name == "series":
            p.add_argument("--order", type=int, default=6)
    g3 = sub.add_parser("verify-g3", parents=[common])
    g3.add_argument("--a", required=True)
    g3.add_argument("--order", type=int, default=6)
    return parser


def run(argv: Optional[list] = None) -> tuple[int, dict, str]:
    args = build_parser().parse_args(argv)
    report = {"command": args.command}
    status = EXIT_OK
    try:
        if args.command == "verify-g3":
            if args.order < 0:
                raise InputError("--order must be non-negative")
            report["result"] = cmd_verify_g3(args)
        else:
            if getattr(args, "order", 0) < 0:
                raise InputError("--order must be non-negative")
            desc = io.load_system(args.input)
            search = ApexSearch(desc.cfg)
            report["input"] = args.input
            report["configuration"] = _config_summary(desc, search)
            report["result"] = COMMANDS[args.command](desc, args, search)
    except InputError as exc:
        status, report["error"] = EXIT_INPUT, f"{type(exc).__name__}: {exc}"
    except PreconditionError as exc:
        status, report["error"] = EXIT_PRECONDITION, f"{type(exc).__name__}: {exc}"
    except ValueError as exc:
        status, report["error"] = EXIT_INPUT, f"{type(exc).__name__}: {exc}"
    report["exit_status"] = status
    text = io.dumps(report) if args.format == "machine" else _human(report)
    return status, report, text


def main(argv: Optional[list] = None) -> int:
    status, report, text = run(argv)
    sys.stdout.write(text)
    if status != EXIT_OK:
        print(f"gkzalg: {report['error']}", file=sys.stderr)
    return status


if __name__ == "__main__":
    sys.exit(main())
