"""Command-line interface.

Subcommands construct catalog objects, run averages, emit bases and structure
tables, and execute the verification suites.  Data goes to stdout (stable key
order, canonical scalar printing, so identical invocations are byte
identical); diagnostics go to stderr.  Exit codes: 0 success, 1 verification
failure, 2 unknown names or bad arguments, 3 same-orbit errors, 4
decomposition failures.  AUTOLIE_OUT_DIR sets the directory for --out paths.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .autfun import average, primitive
from .cases import CASE_IDS, build_case
from .errors import AutolieError, NotInSpan, SameOrbit, UnknownCase, UnknownGroup
from .moebius import SpherePoint, catalog, default_conductor, orbit_of, orbit_polynomial
from .polyrat import RatL
from .qgrade import basis_element, jacobi_check, quasigrade_window, split_check, structure_table
from .scalars import Ctx
from .textio import parse_scalar
from .verify import VERIFY_TARGETS, verify


def _emit(args, payload: dict | str) -> None:
    if isinstance(payload, str):
        text = payload
    else:
        text = json.dumps(payload, indent=2)
    out = getattr(args, "out", None)
    if out:
        base = os.environ.get("AUTOLIE_OUT_DIR", "")
        path = out if os.path.isabs(out) or not base else os.path.join(base, out)
        with open(path, "w") as fh:
            fh.write(text + "\n")
        print(f"wrote {path}", file=sys.stderr)
    else:
        print(text)


def _group_from_args(args):
    name = args.group.upper()
    N = None
    if name.startswith("Z") and len(name) > 1 and name[1:].isdigit():
        name, N = "Z", int(name[1:])
    elif name.startswith("D") and len(name) > 1 and name[1:].isdigit():
        name, N = "D", int(name[1:])
    elif name in ("Z", "D"):
        if args.N is None:
            raise UnknownGroup(f"group {name} needs an index N")
        N = args.N
    return catalog(name, N, conductor=args.conductor)


def _point(ctx, text: str) -> SpherePoint:
    if text in ("inf", "infinity", "oo"):
        return SpherePoint.infinity(ctx)
    return SpherePoint.of(ctx, parse_scalar(text, ctx))


def _group_json(g) -> dict:
    degenerate = []
    seen = []
    for m in g.elements:
        for seed in _fixed_points(g, m):
            if any(o.contains(seed) for o in seen):
                continue
            orb = orbit_of(g, seed)
            if orb.isotropy_order > 1:
                seen.append(orb)
                degenerate.append(orb)
    degenerate.sort(key=lambda o: (-o.isotropy_order, len(o)))
    return {
        "name": g.name,
        "order": g.order,
        "conductor": g.ctx.L,
        "generators": [m.pretty() for m in g.generators()],
        "degenerate_orbits": [
            {"seed": repr(o.seed), "size": len(o), "isotropy": o.isotropy_order}
            for o in degenerate
        ],
    }


def _fixed_points(g, m):
    """Fixed points of one transformation, when solvable in the base field."""
    from . import kernel as K

    ctx = g.ctx
    if m.is_identity():
        return []
    lvl, cd = ctx.lvl, ctx.cd
    # (a - d) l + b = c l^2 + ... solve c l^2 + (d - a) l - b = 0 over the field
    a, b, c, d = m.a, m.b, m.c, m.d
    out = []
    if K.t_is_zero(c, lvl):
        # affine map: fixed point at infinity plus possibly one finite point
        out.append(SpherePoint.infinity(ctx))
        diff = K.t_sub(a, d, lvl, cd)
        if not K.t_is_zero(diff, lvl):
            from .scalars import _wrap

            out.append(SpherePoint.of(ctx, _wrap(ctx, K.t_div(K.t_neg(b, lvl, cd), diff, lvl, cd))))
        return out
    # quadratic: try all L-th roots scaled by rational candidates is overkill;
    # scan the group orbit seeds instead (fixed points of finite-order maps lie
    # on degenerate orbits through small seeds)
    from .scalars import _wrap

    disc_cands = []
    am = K.t_sub(a, d, lvl, cd)
    # l = ((a-d) +- sqrt((a-d)^2 + 4bc)) / (2c); find the square root by search
    target = K.t_add(
        K.t_mul(am, am, lvl, cd),
        K.t_scale_q(K.t_mul(b, c, lvl, cd), Fraction(4), lvl, cd),
        lvl,
        cd,
    )
    root = _cyc_sqrt(ctx, target)
    if root is None:
        return []
    for sgn in (1, -1):
        num = K.t_add(am, K.t_scale_q(root, Fraction(sgn), lvl, cd), lvl, cd)
        den = K.t_scale_q(c, Fraction(2), lvl, cd)
        out.append(SpherePoint.of(ctx, _wrap(ctx, K.t_div(num, den, lvl, cd))))
    return out


def _cyc_sqrt(ctx, val):
    """Square root of a constant in Q(zeta_L) by scanning c * zeta^k forms."""
    from . import kernel as K

    lvl, cd = ctx.lvl, ctx.cd
    if K.t_is_zero(val, lvl):
        return val
    # try (p + q zeta^k)^2 over a small rational grid; enough for the catalog
    coords = [Fraction(n, d) for d in (1, 2, 3) for n in range(-6, 7)]
    for k in range(ctx.L):
        zk = K.t_embed(K.c_zeta(k, cd), 0, lvl, cd)
        for p in coords:
            base = K.t_add(K.t_from_fraction(p, lvl, cd), zk, lvl, cd)
            sq = K.t_mul(base, base, lvl, cd)
            if sq == val:
                return base
            for q in (Fraction(2), Fraction(3), Fraction(1, 2)):
                cand = K.t_add(
                    K.t_from_fraction(p, lvl, cd), K.t_scale_q(zk, q, lvl, cd), lvl, cd
                )
                if K.t_mul(cand, cand, lvl, cd) == val:
                    return cand
    return None


def cmd_group(args) -> int:
    g = _group_from_args(args)
    if args.format == "text":
        data = _group_json(g)
        lines = [f"{data['name']}: order {data['order']}, conductor {data['conductor']}"]
        for gen in data["generators"]:
            lines.append(f"  generator  {gen}")
        for o in data["degenerate_orbits"]:
            lines.append(
                f"  degenerate orbit  seed {o['seed']}  size {o['size']}  isotropy {o['isotropy']}"
            )
        _emit(args, "\n".join(lines))
    else:
        _emit(args, _group_json(g))
    return 0


def cmd_orbit(args) -> int:
    g = _group_from_args(args)
    p = _point(g.ctx, args.point)
    orb = orbit_of(g, p)
    poly = orbit_polynomial(orb)
    data = {
        "group": g.name,
        "seed": repr(orb.seed),
        "size": len(orb),
        "isotropy": orb.isotropy_order,
        "points": [repr(q) for q in orb.points],
        "polynomial": poly.text(),
    }
    _emit(args, data if args.format == "json" else data["polynomial"])
    return 0


def cmd_primitive(args) -> int:
    g = _group_from_args(args)
    p1 = _point(g.ctx, args.g1)
    p2 = _point(g.ctx, args.g2)
    f = primitive(g, p1, p2)
    prof = f.fun.pole_profile(f.pole_orbit.points)
    data = {
        "group": g.name,
        "expr": f.fun.pretty(),
        "coeffs": f.fun.text(),
        "poles": [{"point": repr(q), "order": o} for q, o in prof.entries],
        "zero_orbit_size": len(f.zero_orbit),
        "zero_multiplicity": f.zero_orbit.isotropy_order,
    }
    _emit(args, data if args.format == "json" else data["expr"])
    return 0


def cmd_average(args) -> int:
    g = _group_from_args(args)
    f = RatL.parse(args.fun, g.ctx)
    out = average(g, f)
    _emit(args, out.pretty() if args.format != "json" else {"average": out.text()})
    return 0


def cmd_basis(args) -> int:
    case = build_case(args.case)
    lo, hi = args.range
    rows = []
    for n in range(lo, hi + 1):
        for i, name in enumerate(case.basis.names):
            elem = basis_element(case.basis, i, n)
            rows.append({"name": f"{name}^{n}", "matrix": [
                [e.pretty() for e in row] for row in elem.rows]})
    data = {"case": case.case_id, "f": case.basis.f.fun.pretty(), "elements": rows}
    if args.format == "json":
        _emit(args, data)
    else:
        lines = [f"case {case.case_id}: f = {data['f']}"]
        for r in rows:
            lines.append(f"  {r['name']}: {r['matrix']}")
        _emit(args, "\n".join(lines))
    return 0


def cmd_structure(args) -> int:
    bind = None
    case_id = args.case
    if args.bind:
        bind = {}
        for piece in args.bind.split(","):
            key, _, val = piece.partition("=")
            bind[key.strip()] = Fraction(val.strip())
        if case_id == "D2_sl2":
            case_id = "D2_sl2_conc"
    case = build_case(case_id, bind=bind)
    table = structure_table(case.basis)
    w = quasigrade_window(table)
    if args.format == "latex":
        _emit(args, table.to_latex())
    elif args.format == "text":
        data = table.to_json()
        lines = [f"case {case.case_id}: window (p, q) = ({w.p}, {w.q})"]
        for e in data["entries"]:
            terms = " + ".join(
                f"({t['coeff']})*{t['k']}^(n+m+{t['offset']})" for t in e["terms"]
            )
            lines.append(f"  [{e['i']}^n, {e['j']}^m] = {terms}")
        _emit(args, "\n".join(lines))
    else:
        _emit(args, {"case": case.case_id, **table.to_json()})
    return 0


def cmd_verify(args) -> int:
    reports = verify(args.target)
    failed = False
    errata = []
    for rep in reports:
        for line in rep.lines():
            print(line)
        errata.extend(e.to_json() for e in rep.errata)
        failed = failed or not rep.ok
    if errata:
        print("== errata ledger")
        print(json.dumps(errata, indent=2))
    return 1 if failed else 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="autolie",
        description="Exact automorphic Lie algebra constructions over rational function rings",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--format", choices=("json", "text", "latex"), default="text")
        p.add_argument("--conductor", type=int, default=None,
                       help="override the cyclotomic conductor (multiple of the default)")
        p.add_argument("--out", default=None, help="write to a file (under AUTOLIE_OUT_DIR)")

    p = sub.add_parser("group", help="order, generators and degenerate orbits")
    p.add_argument("group", help="Z, D, T, O or I (ZN/DN accepted)")
    p.add_argument("N", nargs="?", type=int, default=None)
    add_common(p)
    p.set_defaults(func=cmd_group)

    p = sub.add_parser("orbit", help="orbit of a point with its monic polynomial")
    p.add_argument("group")
    p.add_argument("point", help="a scalar expression or 'inf'")
    p.add_argument("N", nargs="?", type=int, default=None)
    add_common(p)
    p.set_defaults(func=cmd_orbit)

    p = sub.add_parser("primitive", help="primitive invariant for an orbit pair")
    p.add_argument("group")
    p.add_argument("g1", help="pole-orbit seed")
    p.add_argument("g2", help="zero-orbit seed")
    p.add_argument("N", nargs="?", type=int, default=None)
    add_common(p)
    p.set_defaults(func=cmd_primitive)

    p = sub.add_parser("average", help="group average of a rational function")
    p.add_argument("group")
    p.add_argument("fun", help="expression in l, e.g. '1/(l-2)'")
    p.add_argument("N", nargs="?", type=int, default=None)
    add_common(p)
    p.set_defaults(func=cmd_average)

    p = sub.add_parser("basis", help="emit quasigraded basis elements of a case")
    p.add_argument("case", help=", ".join(CASE_IDS))
    p.add_argument("--range", nargs=2, type=int, default=(0, 1), metavar=("LO", "HI"))
    add_common(p)
    p.set_defaults(func=cmd_basis)

    p = sub.add_parser("structure", help="structure-constant table of a case")
    p.add_argument("case")
    p.add_argument("--bind", default=None, help="parameter bindings, e.g. g=2,m=3")
    add_common(p)
    p.set_defaults(func=cmd_structure)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("target", help="a case id, appendix, projectors, twisted, "
                                  "change_basis, evaluation, or all")
    p.set_defaults(func=cmd_verify)

    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UnknownGroup, UnknownCase) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SameOrbit as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except NotInSpan as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except AutolieError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
