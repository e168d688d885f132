"""Command line interface: heightlab <subcommand> [options].

Exit status is 0 when everything succeeded and every check passed, 1 when a
computation failed or a check did not pass, and 2 on usage errors.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

import mpmath

from . import datasets as ds


class CheckFailed(Exception):
    pass


def _default_threads():
    try:
        return max(1, int(os.environ.get("THREADS", "1")))
    except ValueError:
        return 1


def _field(spec):
    from .numfield import field_from_json, field_from_label

    if spec.endswith(".json") or spec.lstrip().startswith("{"):
        text = open(spec).read() if spec.endswith(".json") else spec
        return field_from_json(json.loads(text))
    return field_from_label(spec)


def _units(K, args):
    from .units import load_units_file, unit_group

    if args.units_file:
        return load_units_file(args.units_file, K)
    return unit_group(K)


def _fmt(x, prec):
    with mpmath.workprec(prec):
        return mpmath.nstr(mpmath.mpf(x), max(6, int(prec * 0.30103) - 2))


def _emit(args, obj, text):
    print(text)
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(obj, fh, indent=1, default=str)
            fh.write("\n")


# subcommands

def cmd_enumerate(args):
    from .enumerator import enumerate_bounded_height, enumerate_with_denominator
    from .ideals import Ideal

    K = _field(args.field)
    U = _units(K, args)
    if args.denominator:
        gens = json.loads(open(args.denominator).read() if args.denominator.endswith(".json") else args.denominator)
        if not isinstance(gens, list):
            gens = [gens]
        b = Ideal.from_generators(K, [K.element(g if isinstance(g, list) else [g]) for g in gens])
        elems = enumerate_with_denominator(K, b, Fraction(args.bound), units=U)
        obj = {"field": K.label, "bound": args.bound, "denominator_norm": str(b.norm()),
               "count": len(elems), "elements": [ds.encode_element(x) for x in elems]}
        text = f"{len(elems)} elements with denominator ideal of norm {b.norm()}:\n" + \
            "\n".join(str(x) for x in elems)
    else:
        res = enumerate_bounded_height(K, Fraction(args.bound), units=U, variant=args.variant)
        obj = res.to_json()
        text = "{" + ", ".join(str(x) for x in res.elements) + "}" + f"\n{len(res)} elements ({res.completeness})"
    _emit(args, obj, text)
    return 0


def cmd_units(args):
    from .heights import height
    from .units import units_of_height_up_to

    K = _field(args.field)
    U = _units(K, args)
    obj = U.to_json()
    lines = [f"{K.label}: rank {U.rank}, torsion order {U.torsion_order}, {U.certified}"]
    lines += [f"  u{i + 1} = {u}" for i, u in enumerate(U.units)]
    if args.bound is not None:
        us = units_of_height_up_to(U, Fraction(args.bound))
        obj["units_of_bounded_height"] = [{"element": ds.encode_element(u),
                                           "height": _fmt(height(u).approx(args.precision), args.precision)}
                                          for u in us]
        lines.append(f"{len(us)} units of height <= {args.bound}")
        lines += [f"  {u}  H = {_fmt(height(u).approx(args.precision), args.precision)}" for u in us]
    _emit(args, obj, "\n".join(lines))
    return 0


def cmd_ideals(args):
    from .ideals import ideals_of_norm_up_to, principal_generator_search

    K = _field(args.field)
    _units(K, args)
    L = ideals_of_norm_up_to(K, int(args.bound))
    rows, lines = [], []
    for I in L:
        row = {"norm": str(I.norm()), "hnf": [[str(c) for c in r] for r in I.H], "den": I.den}
        line = f"N = {I.norm()}"
        if args.generators:
            res = principal_generator_search(I)
            row["status"] = res.status
            row["generator"] = ds.encode_element(res.generator) if res.generator is not None else None
            line += f"  {res.status}" + (f"  ({res.generator})" if res.generator is not None else "")
        rows.append(row)
        lines.append(line)
    _emit(args, {"field": K.label, "bound": args.bound, "ideals": rows},
          "\n".join(lines) + f"\n{len(L)} integral ideals of norm <= {args.bound}")
    return 0


def cmd_verify_curve(args):
    from .g2lab.curves import GenusTwoModel, good_reduction_verdict
    from .numfield import quadratic_field
    from .verify import compare_curve_discriminant

    if args.curve:
        rec = json.loads(open(args.curve).read())
        F = quadratic_field(int(rec["D"]))
        model = GenusTwoModel(ds.decode_poly(F, rec["P"]), ds.decode_poly(F, rec["Q"]), F)
        published = None
    else:
        model = ds.genus_two_model(args.D)
        published = compare_curve_discriminant(args.D)
    disc = model.discriminant()
    ic = model.igusa_clebsch()
    verdict = good_reduction_verdict(disc)
    obj = {"discriminant": ds.encode_element(disc), "norm": str(disc.norm()), "verdict": verdict,
           "igusa_clebsch": [ds.encode_element(v) if hasattr(v, "K") else str(v) for v in ic.as_tuple()]}
    lines = [f"disc(C) = {disc}", f"N(disc) = {disc.norm()}", f"verdict: {verdict['verdict']}"]
    status = 0
    if published is not None:
        _, pub, match, sign_ok = published
        obj["published"] = pub
        obj["matches_convention"] = match
        obj["sign_agrees"] = sign_ok
        lines.append(f"published: matches {match} convention, sign {'agrees' if sign_ok else 'differs'}")
        if match is None or not sign_ok:
            status = 1
    _emit(args, obj, "\n".join(lines))
    return status


def cmd_frobenius(args):
    from .galois.frobenius import frobenius_row

    t = ds.frobenius_table(args.D)
    rows, lines, bad = [], [], 0
    head = "Np  prime          a        " + "  ".join(f"mod {m}  o" for m in t["moduli"])
    lines.append(head)
    for r in t["rows"]:
        fr = frobenius_row(r["Np"], r["prime"], r["a"], t["coeff_field"], t["moduli"])
        cells = []
        entry = {"Np": r["Np"], "prime": r["prime"], "a": r["a"]}
        for m in t["moduli"]:
            o = fr.orders[m]
            ok = fr.residues[m].label == r["residue_" + m] and o == r["order_" + m]
            bad += not ok
            cells.append(f"{fr.residues[m].label:>7} {'-' if o is None else o}{'' if ok else ' (!)'}")
            entry["residue_" + m] = fr.residues[m].label
            entry["order_" + m] = o
            entry["agrees_" + m] = ok
        rows.append(entry)
        lines.append(f"{r['Np']:<3} {str(r['prime']):<14} {str(r['a']):<8} " + "  ".join(cells))
    lines.append("all rows agree with the published table" if not bad else f"{bad} disagreements")
    _emit(args, {"D": args.D, "rows": rows, "agree": not bad}, "\n".join(lines))
    return 1 if bad else 0


def cmd_fontaine(args):
    from .galois.fontaine import fontaine_bound, parse_delta

    with mpmath.workprec(args.precision):
        d = parse_delta(args.delta_f)
        v = fontaine_bound(args.p, d, prec=args.precision)
    text = _fmt(v, args.precision)
    _emit(args, {"p": args.p, "delta_f": args.delta_f, "bound": text}, text)
    return 0


def _poly_arg(args):
    if args.name:
        for group in ("rational",):
            data = ds.load_dataset("polynomials")[group]
            if args.name in data:
                return data[args.name]
        if args.name.startswith("table5:"):
            i, j = (int(t) for t in args.name[7:].split(","))
            return ds.table5_rows()[i]["polys"][j]
        raise KeyError(f"unknown polynomial {args.name!r}")
    return [int(c) for c in args.poly.split(",")]


def cmd_galois_scan(args):
    from .galois.scan import compare_group_candidates, cycle_type_scan

    poly = _poly_arg(args)
    hist = cycle_type_scan(poly, num_primes=args.primes, threads=args.threads)
    verdicts = compare_group_candidates(hist, alpha=args.alpha)
    obj = {"histogram": hist.to_json(),
           "verdicts": [{"label": v.label, "status": v.status, "reason": v.reason,
                         "realization": v.best_construction, "pvalue": v.pvalue} for v in verdicts]}
    lines = [f"{hist.primes_used} primes used, {hist.primes_skipped} skipped"]
    lines += [f"  {','.join(map(str, k))}: {n}" for k, n in sorted(hist.counts.items())]
    lines += [f"{v.label:>8}: {v.status} ({v.reason})" for v in verdicts]
    _emit(args, obj, "\n".join(lines))
    return 0


def cmd_search(args):
    from .g2lab.search import candidate_pair_search

    ext = ds.relative_extension(args.field)
    U = _units(ext.K, args)
    res = candidate_pair_search(ext, args.mode, Fraction(args.bound), support=tuple(args.support), units=U,
                                max_pairs=args.max_pairs)
    lines = [f"{res.stats['enumerated']} elements enumerated, {len(res.stage1)} pass the ramification test, "
             f"{len(res.candidates)} candidates ({res.label})"]
    for c in res.candidates[: args.show]:
        lines.append(f"  heights {', '.join(_fmt(h, 53) for h in c.heights)}: "
                     + "; ".join(str(a) for a in c.alphas))
    obj = {"mode": res.mode, "bound": args.bound, "exhaustive": res.exhaustive, "stats": res.stats,
           "stage1": [{"alpha": ds.encode_element(a), "height": float(H.approx(64))} for a, H, _ in res.stage1],
           "candidates": [{"alphas": [ds.encode_element(a) for a in c.alphas], "heights": list(c.heights),
                           "h_prime": [ds.encode_element(x) for x in c.h_prime]}
                          for c in res.candidates[: args.max_out]]}
    _emit(args, obj, "\n".join(lines))
    return 0


def cmd_tables(args):
    obj = ds.load_dataset(args.name)
    if args.name == "table1":
        text = "\n".join(ds.table1_lines())
    elif args.name == "frobenius":
        text = "\n".join(f"D = {D}: {len(t['rows'])} rows" for D, t in obj["tables"].items())
    elif args.name == "table5":
        text = "\n".join(f"{r['G']:<11} {r['gal']:<8} " + " | ".join(",".join(map(str, p)) for p in r["polys"])
                         for r in obj["rows"])
    else:
        text = ds.dump_dataset(obj)
    _emit(args, obj, text)
    return 0


def cmd_verify_all(args):
    from .verify import verify_all

    rep = verify_all(args.scope, samples=args.samples, num_primes=args.primes, threads=args.threads,
                     unit_bound=args.unit_bound)
    _emit(args, rep.to_json(), rep.summary())
    return 0 if rep.ok else 1


# parser

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write the result as JSON to this file")
    common.add_argument("--precision", type=int, default=64, help="working precision in bits for printed numerics")
    common.add_argument("--threads", type=int, default=_default_threads(), help="worker processes (env THREADS)")
    common.add_argument("--units-file", help="JSON unit basis to use instead of computing one")

    p = argparse.ArgumentParser(prog="heightlab", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("enumerate", parents=[common], help="elements of bounded height")
    s.add_argument("--field", required=True, help="label (Q, Q(i), Q(sqrtD), K353) or field JSON")
    s.add_argument("--bound", required=True, type=Fraction)
    s.add_argument("--denominator", help="generators of the denominator ideal (JSON list of coordinate lists)")
    s.add_argument("--units", dest="units_file", help="alias of --units-file")
    s.add_argument("--variant", choices=("full", "class-representatives"), default="full")
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("units", parents=[common], help="unit group and units of bounded height")
    s.add_argument("--field", required=True)
    s.add_argument("--bound", type=Fraction)
    s.set_defaults(func=cmd_units)

    s = sub.add_parser("ideals", parents=[common], help="integral ideals of bounded norm")
    s.add_argument("--field", required=True)
    s.add_argument("--bound", required=True, type=int)
    s.add_argument("--generators", action="store_true", help="also search for principal generators")
    s.set_defaults(func=cmd_ideals)

    s = sub.add_parser("verify-curve", parents=[common], help="discriminant and invariants of a genus two curve")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--D", type=int, choices=(353, 421, 1597))
    g.add_argument("--curve", help="JSON file with D, P, Q")
    s.set_defaults(func=cmd_verify_curve)

    s = sub.add_parser("frobenius", parents=[common], help="recompute a Frobenius table")
    s.add_argument("--D", type=int, required=True, choices=(353, 421, 1597, 1997))
    s.set_defaults(func=cmd_frobenius)

    s = sub.add_parser("fontaine", parents=[common], help="root-discriminant bound delta_F p^(1 + 1/(p-1))")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--delta-f", required=True, help="e.g. sqrt:353, 2^(3/2)*sqrt:1997 or a decimal")
    s.set_defaults(func=cmd_fontaine)

    s = sub.add_parser("galois-scan", parents=[common], help="cycle-type statistics and group candidates")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--poly", help="integer coefficients, constant term first, comma separated")
    g.add_argument("--name", help="h353, h421, h1997_sextic, g1997 or table5:i,j")
    s.add_argument("--primes", type=int, default=10_000)
    s.add_argument("--alpha", type=float, default=1e-4)
    s.set_defaults(func=cmd_galois_scan)

    s = sub.add_parser("search", parents=[common], help="candidate polynomials from elements of bounded height")
    s.add_argument("--field", default="K353")
    s.add_argument("--bound", type=Fraction, default=Fraction(100))
    s.add_argument("--mode", choices=("paired", "single"), default="paired")
    s.add_argument("--support", type=int, nargs="*", default=[2])
    s.add_argument("--max-pairs", type=int, default=20000)
    s.add_argument("--show", type=int, default=10)
    s.add_argument("--max-out", type=int, default=1000)
    s.set_defaults(func=cmd_search)

    s = sub.add_parser("tables", parents=[common], help="print an embedded dataset")
    s.add_argument("--name", required=True, choices=ds.DATASET_NAMES)
    s.set_defaults(func=cmd_tables)

    s = sub.add_parser("verify-all", parents=[common], help="run the verification suite")
    s.add_argument("--scope", choices=("all", "heights", "curves", "galois", "tables"), default="all")
    s.add_argument("--samples", type=int, default=1000)
    s.add_argument("--primes", type=int, default=10_000)
    s.add_argument("--unit-bound", type=int, default=10 ** 6)
    s.set_defaults(func=cmd_verify_all)
    return p


def cli_main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "precision", 64) < 16:
        parser.print_usage(sys.stderr)
        print("heightlab: error: --precision must be at least 16", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except (KeyError, ValueError, FileNotFoundError) as exc:
        print(f"heightlab: error: {exc}", file=sys.stderr)
        return 1
    except ArithmeticError as exc:
        print(f"heightlab: computation failed: {exc}", file=sys.stderr)
        return 1


def main():
    sys.exit(cli_main())
