"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage or input error,
3 computation budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections import Counter
from fractions import Fraction

from .errors import ArtinError, BudgetExceeded

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        print(text.rstrip("\n"))


def _frac(v: Fraction):
    return int(v) if v.denominator == 1 else str(v)


def _load_group(args):
    from .groups import load_group
    from .named import parse_group_spec

    if getattr(args, "load", None):
        with open(args.load, encoding="utf-8") as fh:
            return load_group(fh.read())
    if not args.name:
        raise ArtinError("give --name or --load")
    return parse_group_spec(args.name)


# ---------------------------------------------------------------------------
# verbs


def cmd_group(args) -> int:
    from .groups import dump_group, structure_invariants

    G = _load_group(args)
    if args.dump:
        sys.stdout.write(dump_group(G))
        return EXIT_OK
    if args.check:
        G.verify()
    inv = structure_invariants(G)
    payload = {
        "name": G.name,
        "order": G.order,
        "classes": len(G.classes),
        "exponent": G.exponent,
        "center_order": inv.center.order,
        "derived_order": inv.derived.order,
        "abelianization": list(inv.abelianization),
    }
    if args.invariants:
        payload["element_orders"] = {str(k): v for k, v in sorted(Counter(G.element_orders.tolist()).items())}
    lines = [f"{k}: {v}" for k, v in payload.items()]
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def cmd_chartable(args) -> int:
    from .characters import character_table

    G = _load_group(args)
    T = character_table(G)
    counts = dict(sorted(Counter(T.degrees).items()))
    if args.degrees:
        payload = {"group": G.name, "degrees": T.degrees, "multiplicities": {str(k): v for k, v in counts.items()}}
        text = f"{G.name}: " + ", ".join(f"{d} x{c}" for d, c in counts.items())
        text += "\n" + " ".join(str(d) for d in T.degrees)
        _emit(args, payload, text)
        return EXIT_OK
    if args.json:
        print(T.to_json())
        return EXIT_OK
    rows = []
    for chi in T:
        vals = []
        for z in chi.complex_values():
            re_, im = round(z.real, 3) + 0.0, round(z.imag, 3) + 0.0
            vals.append(f"{re_:g}" if abs(im) < 1e-9 else f"{re_:g}{im:+g}i")
        rows.append(vals)
    width = max(len(v) for r in rows for v in r)
    sizes = " ".join(str(s).rjust(width) for s in T.class_sizes)
    out = [f"{G.name}: {len(T)} classes", "size  " + sizes]
    out += [f"chi{i:<3} " + " ".join(v.rjust(width) for v in r) for i, r in enumerate(rows)]
    print("\n".join(out))
    return EXIT_OK


def _tame_subgroup(G, text: str):
    import re

    m = re.fullmatch(r"C(\d+)", text)
    if m:
        k = int(m.group(1))
        elems = [g for g in range(G.order) if int(G.element_orders[g]) == k]
        if not elems:
            raise ArtinError(f"{G.name} has no element of order {k}")
        return G.subgroup([elems[0]])
    gens = [int(x) for x in text.replace(",", " ").split()]
    return G.subgroup(gens)


def cmd_conductor(args) -> int:
    from .conductor import (artin_exponent_central, closed_form_exponent, conductor_spectrum,
                            filtration_for_case, parse_filtration)

    if args.case:
        if args.p is None or args.n is None or args.c is None:
            raise ArtinError("--case needs --p, --n and --c")
        cf = closed_form_exponent(args.case, args.p, args.n, args.c, args.x)
        filt = filtration_for_case(args.case, args.p, args.n, args.c, args.x)
        fv = artin_exponent_central(args.degree, filt).value
        payload = {"case": args.case, "p": args.p, "n": args.n, "c": args.c, "x": args.x,
                   "closed_form": _frac(cf), "filtration": _frac(fv), "orders_head": list(filt.orders[:8])}
        _emit(args, payload, f"closed form {_frac(cf)}, filtration sum {_frac(fv)}")
        return EXIT_OK
    if args.filtration:
        with open(args.filtration, encoding="utf-8") as fh:
            text = fh.read()
        G = _load_group(args) if (args.name or args.load) else None
        filt = parse_filtration(text, G)
        if G is None:
            v = artin_exponent_central(args.degree, filt).value
            _emit(args, {"exponent": _frac(v)}, f"exponent {_frac(v)}")
            return EXIT_OK
        from .characters import character_table
        from .conductor import artin_exponent

        vals = sorted(artin_exponent(chi, filt).value for chi in character_table(G) if chi.degree == args.degree)
        _emit(args, {"spectrum": [_frac(v) for v in vals]}, "spectrum " + " ".join(str(_frac(v)) for v in vals))
        return EXIT_OK
    G = _load_group(args)
    if not args.tame:
        raise ArtinError("give --tame, --filtration or --case")
    H = _tame_subgroup(G, args.tame)
    vals = conductor_spectrum(G, H, args.degree)
    counts = dict(sorted(Counter(vals).items()))
    payload = {"group": G.name, "tame_order": H.order, "degree": args.degree,
               "spectrum": [_frac(v) for v in vals],
               "multiplicities": {str(_frac(k)): c for k, c in counts.items()}}
    text = f"{G.name}, tame subgroup of order {H.order}, degree {args.degree}: " + \
        ", ".join(f"exponent {_frac(k)} x{c}" for k, c in counts.items())
    _emit(args, payload, text)
    return EXIT_OK


def cmd_h2(args) -> int:
    from .characters import character_table
    from .cohomology import enumerate_central_extensions, ext_rank, h2_basis

    G = _load_group(args)
    basis = h2_basis(G, budget_mb=args.budget_mb)
    payload = {"group": G.name, "order": G.order, "z2_dim": basis.z2_dim, "b2_dim": basis.b2_dim,
               "h2_dim": basis.h2_dim, "ext_rank": ext_rank(G),
               "multiplier_3rank": basis.h2_dim - ext_rank(G)}
    lines = [f"{G.name}: dim Z2 = {basis.z2_dim}, dim B2 = {basis.b2_dim}, dim H2(G,F3) = {basis.h2_dim}",
             f"3-rank of Schur multiplier: {payload['multiplier_3rank']}"]
    if args.enumerate:
        exts = enumerate_central_extensions(G, basis)
        covers = []
        for e in exts:
            T = character_table(e.group)
            covers.append({"name": e.group.name, "split": e.split, "stem": e.stem,
                           "classes": len(e.coefficient_vectors),
                           "degree3": T.degrees.count(3)})
        nonsplit = [c for c in covers if not c["split"]]
        payload["types"] = covers
        payload["nonsplit_types"] = len(nonsplit)
        payload["stem_types"] = sum(c["stem"] for c in nonsplit)
        lines.append(f"{len(nonsplit)} non-split isomorphism types ({payload['stem_types']} stem), "
                     f"{len(covers)} types of order {3 * G.order} in all")
        for c in covers:
            kind = "split" if c["split"] else ("stem" if c["stem"] else "non-stem")
            lines.append(f"  {c['name']}: {kind}, {c['classes']} H2 classes, {c['degree3']} degree-3 irreducibles")
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def _read_config(path: str) -> dict:
    data = {}
    with open(path, encoding="utf-8") as fh:
        for n, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ArtinError(f"{path}:{n}: expected key=value")
            k, v = line.split("=", 1)
            data[k.strip()] = v.strip()
    return data


def cmd_bounds(args) -> int:
    from .counting import BoundParams, bound_report

    data = _read_config(args.config) if args.config else {}
    for item in args.set or []:
        if "=" not in item:
            raise ArtinError(f"--set expects key=value, got {item!r}")
        k, v = item.split("=", 1)
        data[k.strip()] = v.strip()
    params = BoundParams.from_mapping(data)
    rep = bound_report(args.p, args.m, params)
    if args.json:
        print(rep.to_json())
    else:
        sys.stdout.write(rep.to_text())
    return EXIT_OK


def cmd_verify(args) -> int:
    from .verify import run_all

    only = set(args.only) if args.only else None
    results = run_all(fast=args.fast, only=only)
    if args.json:
        print(json.dumps([{"criterion": r.number, "title": r.title, "status": r.status,
                           "details": r.details} for r in results], sort_keys=True, indent=2))
    else:
        for r in results:
            print(r.line())
        failed = [r.number for r in results if r.status == "FAIL"]
        print(f"{len(results) - len(failed)}/{len(results)} criteria passed"
              + (f"; failed: {failed}" if failed else ""))
    return EXIT_VERIFY if any(r.status == "FAIL" for r in results) else EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    def common_opts(p, suppress):
        kw = {"default": argparse.SUPPRESS} if suppress else {}
        p.add_argument("--json", action="store_true", help="machine-readable output", **kw)
        p.add_argument("--budget-mb", type=float, help="memory cap for cohomology", **kw)

    # the copy attached to each verb must not overwrite a value given before the verb
    common = argparse.ArgumentParser(add_help=False)
    common_opts(common, suppress=True)

    parser = argparse.ArgumentParser(prog="artin3",
                                     description="Finite-group and counting tools for three-dimensional Artin representations.")
    common_opts(parser, suppress=False)
    sub = parser.add_subparsers(dest="verb", required=True)

    def group_opts(p):
        p.add_argument("--name", help="named group, e.g. P1, J, B[2], W[2,1], C12")
        p.add_argument("--load", metavar="FILE", help="multiplication-table file")

    g = sub.add_parser("group", parents=[common], help="build or inspect a group")
    group_opts(g)
    g.add_argument("--invariants", action="store_true", help="also list element-order counts")
    g.add_argument("--dump", action="store_true", help="print the multiplication table file")
    g.add_argument("--check", action="store_true", help="re-verify the group axioms")
    g.set_defaults(func=cmd_group)

    c = sub.add_parser("chartable", parents=[common], help="character table")
    group_opts(c)
    c.add_argument("--degrees", action="store_true", help="only the degree multiset")
    c.set_defaults(func=cmd_chartable)

    k = sub.add_parser("conductor", parents=[common], help="conductor exponents")
    group_opts(k)
    k.add_argument("--tame", help="tame subgroup: C<k> or generator list")
    k.add_argument("--degree", type=int, default=3)
    k.add_argument("--filtration", metavar="FILE", help="order list (and optional member lists)")
    k.add_argument("--case", choices=["P1_i", "P1_ii", "P3"])
    k.add_argument("--p", type=int)
    k.add_argument("--n", type=int)
    k.add_argument("--c", type=int)
    k.add_argument("--x", type=int, default=1)
    k.set_defaults(func=cmd_conductor)

    h = sub.add_parser("h2", parents=[common], help="H^2(G, F_3) and central extensions")
    group_opts(h)
    h.add_argument("--enumerate", action="store_true", help="list extension groups up to isomorphism")
    h.set_defaults(func=cmd_h2)

    b = sub.add_parser("bounds", parents=[common], help="counting bounds report")
    b.add_argument("--p", type=int, required=True)
    b.add_argument("--m", type=int, required=True)
    b.add_argument("--config", metavar="FILE", help="key=value parameter overrides")
    b.add_argument("--set", action="append", metavar="KEY=VALUE", help="single parameter override")
    b.set_defaults(func=cmd_bounds)

    v = sub.add_parser("verify", parents=[common], help="run the acceptance checks")
    v.add_argument("--fast", action="store_true", help="skip the order-648 work")
    v.add_argument("--only", type=int, nargs="+", metavar="N", help="run selected criteria")
    v.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse: usage errors and --help
        return int(exc.code or 0)
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"artin3: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ArtinError, OSError, ValueError) as exc:
        print(f"artin3: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def run(argv: list[str] | None = None) -> int:
    return main(argv)


if __name__ == "__main__":
    sys.exit(main())
