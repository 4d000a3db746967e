"""Command line front end.

Subcommands: analyze, halfder, decompose, tp {build,verify,decompose,normalize},
examples.  Every report is a JSON document on stdout, deterministic byte for
byte across runs; the exit code is 0 exactly when every check in the report
passed.
"""

import argparse
import json
import os
import sys
from fractions import Fraction

from . import algebra, halfder, poset, tpstruct
from .errors import CapExceeded, GoldenMismatch, LietpError, ParseError


def _load_poset(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError("cannot read %s: %s" % (path, exc))
    return poset.parse_poset(text)


def _load_json(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise ParseError("cannot read %s: %s" % (path, exc))
    except ValueError as exc:
        raise ParseError("malformed JSON in %s: %s" % (path, exc))


def _as_fraction(v):
    # ints and "p/q" strings only; floats would break exactness
    if isinstance(v, float):
        raise ParseError("rational values must be integers or 'p/q' strings, got %r" % v)
    try:
        return Fraction(v)
    except (TypeError, ValueError) as exc:
        raise ParseError("bad rational value %r: %s" % (v, exc))


def _poset_summary(p):
    mins, maxs = poset.min_max(p)
    return {
        "size": len(p.elements),
        "elements": list(p.elements),
        "covers": [{"from": a, "to": b} for a, b in p.covers],
        "min": mins,
        "max": maxs,
    }


def _element_records(f):
    return sorted(algebra.to_records(f),
                  key=lambda r: f.owner.pair_key((r["from"], r["to"])))


def _table_payload(prod):
    rows = []
    for (pr1, pr2), elem in prod.entries():
        rows.append({
            "left": {"from": pr1[0], "to": pr1[1]},
            "right": {"from": pr2[0], "to": pr2[1]},
            "product": _element_records(elem),
        })
    return rows


def _product_from_data(p, data):
    entries = {}
    try:
        for row in data.get("table", []):
            left = (row["left"]["from"], row["left"]["to"])
            right = (row["right"]["from"], row["right"]["to"])
            entries[(left, right)] = algebra.from_records(p, row["product"])
        return tpstruct.tp_from_table(p, entries)
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError("bad product table: %s" % exc)


def _pair_rows(data, field):
    rows = {}
    for rec in data.get(field, []):
        try:
            rows[(rec["x"], rec["y"])] = _as_fraction(rec["value"])
        except (KeyError, TypeError) as exc:
            raise ParseError("bad %s entry %r: %s" % (field, rec, exc))
    return rows


def _decomposition_from_data(p, data, u0):
    try:
        mu = tpstruct.MuMap(p, _pair_rows(data, "mu"))
        nu = tpstruct.NuElement(p, _pair_rows(data, "nu"))
        lam = tpstruct.LambdaMap(p, _pair_rows(data, "lambda"))
    except ValueError as exc:
        raise ParseError(str(exc))
    return tpstruct.TPDecomposition(mu, nu, lam, u0)


def _decomposition_payload(dec):
    p = dec.mu.owner

    def rows(vals):
        return [{"x": x, "y": y, "value": str(v)}
                for (x, y), v in sorted(vals.items(),
                                        key=lambda it: p.pair_key(it[0]))]

    return {"u0": dec.u0, "mu": rows(dec.mu.values),
            "nu": rows(dec.nu.values), "lambda": rows(dec.lam.values)}


def _resolve_u0(p, flag, data=None):
    u0 = flag
    if u0 is None and data is not None:
        u0 = data.get("u0")
    if u0 is None:
        u0 = p.elements[0]
    p.index(u0)
    return u0


def cmd_analyze(args):
    p = _load_poset(args.poset)
    u0 = _resolve_u0(p, args.u0)
    part = poset.pair_classes(p)
    _blocks, bridges = poset.blocks_and_bridges(p)
    try:
        cycle_count = len(poset.enumerate_cycles(p))
    except CapExceeded:
        cycle_count = None
    mm = algebra.minmax_pairs(p)
    report = {
        "command": "analyze",
        "poset": _poset_summary(p),
        "u0": u0,
        "bridges": [{"from": a, "to": b}
                    for a, b in sorted(bridges, key=p.pair_key)],
        "cycle_count": cycle_count,
        "extreme_pairs": [
            {"from": x, "to": y, "sign": sgn,
             "side": sorted(vset, key=p.index)}
            for (x, y) in poset.extreme_pairs(p)
            for sgn, vset in [poset.sign_and_vset(p, u0, (x, y))]],
        "pair_classes": [
            {"representative": {"from": r[0], "to": r[1]}, "size": len(cls)}
            for k, cls in enumerate(part.classes)
            for r in [part.representative(k)]],
        "commutator_center_basis": [{"from": x, "to": y} for x, y in mm],
        "predicted_dimension": len(p.elements) + len(part) + len(mm),
    }
    return report, True


def cmd_halfder(args):
    p = _load_poset(args.poset)
    part = poset.pair_classes(p)
    mm = algebra.minmax_pairs(p)
    structural_dim = len(p.elements) + len(part) + len(mm)
    report = {
        "command": "halfder",
        "poset": _poset_summary(p),
        "structural": {
            "inner_basis": [{"from": x, "to": y} for x, y in mm],
            "sigma_classes": [
                {"from": r[0], "to": r[1]}
                for k in range(len(part))
                for r in [part.representative(k)]],
            "kappa_elements": list(p.elements),
            "dimension": structural_dim,
        },
    }
    ok = True
    if args.oracle:
        cap = int(os.environ.get("LIETP_ORACLE_CAP",
                                 halfder.DEFAULT_ORACLE_CAP))
        basis = halfder.half_derivation_space(p, cap=cap)
        verdict = "EQUAL" if len(basis) == structural_dim else "UNEQUAL"
        report["oracle"] = {"dimension": len(basis), "verdict": verdict}
        ok = verdict == "EQUAL"
    return report, ok


def cmd_decompose(args):
    p = _load_poset(args.poset)
    data = _load_json(args.operator)
    u0 = _resolve_u0(p, args.u0)
    images = {}
    try:
        for row in data["images"]:
            images[(row["from"], row["to"])] = algebra.from_records(
                p, row["image"])
    except (KeyError, TypeError) as exc:
        raise ParseError("bad operator file: %s" % exc)
    op = halfder.operator_from_images(p, images)
    dec = halfder.decompose(op, u0)
    report = {
        "command": "decompose",
        "poset": _poset_summary(p),
        "u0": u0,
        "decomposition": halfder.decomposition_report(dec),
        "reconstruction": "ok",
    }
    return report, True


def cmd_tp(args):
    p = _load_poset(args.poset)
    data = _load_json(args.data)
    u0 = _resolve_u0(p, args.u0, data)
    report = {"command": "tp %s" % args.mode, "poset": _poset_summary(p)}
    if args.mode == "build":
        dec = _decomposition_from_data(p, data, u0)
        prod = dec.reconstruct()
        ver = tpstruct.verify_tp(prod)
        report.update({"u0": u0, "table": _table_payload(prod),
                       "verify": ver})
        return report, tpstruct.tp_passes(ver)
    if args.mode == "verify":
        prod = _product_from_data(p, data)
        ver = tpstruct.verify_tp(prod)
        report["verify"] = ver
        return report, tpstruct.tp_passes(ver)
    if args.mode == "decompose":
        prod = _product_from_data(p, data)
        dec = tpstruct.decompose_tp(prod, u0)
        report.update({"u0": u0,
                       "decomposition": _decomposition_payload(dec),
                       "reconstruction": "ok"})
        return report, True
    # normalize: rescale nu to an indicator and report the automorphism
    dec = _decomposition_from_data(p, data, u0)
    norm, scales = tpstruct.normalize_nu(dec)
    transported = tpstruct.transport_product(dec.reconstruct(), scales)
    consistent = transported == norm.reconstruct()
    report.update({
        "u0": u0,
        "decomposition": _decomposition_payload(norm),
        "automorphism": [
            {"from": x, "to": y, "scale": str(v)}
            for (x, y), v in sorted(scales.items(),
                                    key=lambda it: p.pair_key(it[0]))],
        "consistent": consistent,
    })
    return report, consistent


# Worked examples frozen as literal data: the poset, its extreme pairs with
# sign and far-side set at u0 = first element, and the full product tables of
# the mutational structure (all nu values 1) and the lambda structure with the
# coefficients listed in "lam".  Tables are rows (left pair, right pair, cells).
GOLDEN_EXAMPLES = (
    {
        "name": "chain n=2",
        "elements": ("1", "2"),
        "covers": ((("1", "2")),),
        "extreme": (("1", "2"),),
        "sign_v": {("1", "2"): (1, ("2",))},
        "nu": {("1", "2"): 1},
        "lam": {("1", "2"): 1},
        "mutational": (
            (("1", "1"), ("1", "1"), (("1", "2", -1),)),
            (("1", "1"), ("2", "2"), (("1", "2", 1),)),
            (("2", "2"), ("2", "2"), (("1", "2", -1),)),
        ),
        "lambda_table": (
            (("1", "1"), ("1", "2"), (("1", "2", 1),)),
            (("2", "2"), ("1", "2"), (("1", "2", -1),)),
            (("1", "1"), ("1", "1"), (("2", "2", -1),)),
            (("1", "1"), ("2", "2"), (("2", "2", 1),)),
            (("2", "2"), ("2", "2"), (("2", "2", -1),)),
        ),
    },
    {
        "name": "chain n=5",
        "elements": ("1", "2", "3", "4", "5"),
        "covers": (("1", "2"), ("2", "3"), ("3", "4"), ("4", "5")),
        "extreme": (),
        "sign_v": {},
        "nu": {("1", "5"): 1},
        "lam": {},
        "mutational": (
            (("1", "1"), ("1", "1"), (("1", "5", -1),)),
            (("1", "1"), ("5", "5"), (("1", "5", 1),)),
            (("5", "5"), ("5", "5"), (("1", "5", -1),)),
        ),
        "lambda_table": (),
    },
    {
        "name": "two atoms over a root",
        "elements": ("1", "2", "3"),
        "covers": (("1", "2"), ("1", "3")),
        "extreme": (("1", "2"), ("1", "3")),
        "sign_v": {("1", "2"): (1, ("2",)), ("1", "3"): (1, ("3",))},
        "nu": {("1", "2"): 1, ("1", "3"): 1},
        "lam": {("1", "2"): 1, ("1", "3"): 2},
        "mutational": (
            (("1", "1"), ("1", "1"), (("1", "2", -1), ("1", "3", -1))),
            (("1", "1"), ("2", "2"), (("1", "2", 1),)),
            (("1", "1"), ("3", "3"), (("1", "3", 1),)),
            (("2", "2"), ("2", "2"), (("1", "2", -1),)),
            (("3", "3"), ("3", "3"), (("1", "3", -1),)),
        ),
        "lambda_table": (
            (("1", "1"), ("1", "2"), (("1", "2", 1),)),
            (("2", "2"), ("1", "2"), (("1", "2", -1),)),
            (("1", "1"), ("1", "3"), (("1", "3", 2),)),
            (("3", "3"), ("1", "3"), (("1", "3", -2),)),
            (("1", "1"), ("1", "1"), (("2", "2", -1), ("3", "3", -2))),
            (("1", "1"), ("2", "2"), (("2", "2", 1),)),
            (("1", "1"), ("3", "3"), (("3", "3", 2),)),
            (("2", "2"), ("2", "2"), (("2", "2", -1),)),
            (("3", "3"), ("3", "3"), (("3", "3", -2),)),
        ),
    },
    {
        "name": "chain with a branch",
        "elements": ("1", "2", "3", "4"),
        "covers": (("1", "2"), ("2", "3"), ("1", "4")),
        "extreme": (("1", "4"),),
        "sign_v": {("1", "4"): (1, ("4",))},
        "nu": {("1", "3"): 1, ("1", "4"): 1},
        "lam": {("1", "4"): 7},
        "mutational": (
            (("1", "1"), ("1", "1"), (("1", "3", -1), ("1", "4", -1))),
            (("1", "1"), ("3", "3"), (("1", "3", 1),)),
            (("1", "1"), ("4", "4"), (("1", "4", 1),)),
            (("3", "3"), ("3", "3"), (("1", "3", -1),)),
            (("4", "4"), ("4", "4"), (("1", "4", -1),)),
        ),
        "lambda_table": (
            (("1", "1"), ("1", "4"), (("1", "4", 7),)),
            (("4", "4"), ("1", "4"), (("1", "4", -7),)),
            (("1", "1"), ("1", "1"), (("4", "4", -7),)),
            (("1", "1"), ("4", "4"), (("4", "4", 7),)),
            (("4", "4"), ("4", "4"), (("4", "4", -7),)),
        ),
    },
    {
        "name": "zigzag on four elements",
        "elements": ("1", "2", "3", "4"),
        "covers": (("1", "3"), ("2", "3"), ("2", "4")),
        "extreme": (("1", "3"), ("2", "3"), ("2", "4")),
        "sign_v": {("1", "3"): (1, ("2", "3", "4")),
                   ("2", "3"): (-1, ("2", "4")),
                   ("2", "4"): (1, ("4",))},
        "nu": {("1", "3"): 1, ("2", "3"): 1, ("2", "4"): 1},
        "lam": {("1", "3"): 1, ("2", "3"): 2, ("2", "4"): 3},
        "mutational": (
            (("1", "1"), ("1", "1"), (("1", "3", -1),)),
            (("1", "1"), ("3", "3"), (("1", "3", 1),)),
            (("2", "2"), ("2", "2"), (("2", "3", -1), ("2", "4", -1))),
            (("2", "2"), ("3", "3"), (("2", "3", 1),)),
            (("2", "2"), ("4", "4"), (("2", "4", 1),)),
            (("3", "3"), ("3", "3"), (("1", "3", -1), ("2", "3", -1))),
            (("4", "4"), ("4", "4"), (("2", "4", -1),)),
        ),
        "lambda_table": (
            (("1", "1"), ("1", "3"), (("1", "3", 1),)),
            (("3", "3"), ("1", "3"), (("1", "3", -1),)),
            (("2", "2"), ("2", "3"), (("2", "3", 2),)),
            (("3", "3"), ("2", "3"), (("2", "3", -2),)),
            (("2", "2"), ("2", "4"), (("2", "4", 3),)),
            (("4", "4"), ("2", "4"), (("2", "4", -3),)),
            (("1", "1"), ("1", "1"),
             (("2", "2", -1), ("3", "3", -1), ("4", "4", -1))),
            (("1", "1"), ("3", "3"),
             (("2", "2", 1), ("3", "3", 1), ("4", "4", 1))),
            (("2", "2"), ("2", "2"), (("2", "2", 2), ("4", "4", -1))),
            (("2", "2"), ("3", "3"), (("2", "2", -2), ("4", "4", -2))),
            (("2", "2"), ("4", "4"), (("4", "4", 3),)),
            (("3", "3"), ("3", "3"),
             (("2", "2", 1), ("3", "3", -1), ("4", "4", 1))),
            (("4", "4"), ("4", "4"), (("4", "4", -3),)),
        ),
    },
    {
        "name": "crown on four elements",
        "elements": ("1", "2", "3", "4"),
        "covers": (("1", "3"), ("1", "4"), ("2", "3"), ("2", "4")),
        "extreme": (),
        "sign_v": {},
        "nu": {("1", "3"): 1, ("1", "4"): 1, ("2", "3"): 1, ("2", "4"): 1},
        "lam": {},
        "mutational": (
            (("1", "1"), ("1", "1"), (("1", "3", -1), ("1", "4", -1))),
            (("1", "1"), ("3", "3"), (("1", "3", 1),)),
            (("1", "1"), ("4", "4"), (("1", "4", 1),)),
            (("2", "2"), ("2", "2"), (("2", "3", -1), ("2", "4", -1))),
            (("2", "2"), ("3", "3"), (("2", "3", 1),)),
            (("2", "2"), ("4", "4"), (("2", "4", 1),)),
            (("3", "3"), ("3", "3"), (("1", "3", -1), ("2", "3", -1))),
            (("4", "4"), ("4", "4"), (("1", "4", -1), ("2", "4", -1))),
        ),
        "lambda_table": (),
    },
)


def _golden_product(p, rows):
    entries = {}
    for left, right, cells in rows:
        entries[(tuple(left), tuple(right))] = algebra.element(
            p, {(a, b): Fraction(v) for a, b, v in cells})
    return tpstruct.tp_from_table(p, entries)


def _check_example(ex):
    name = ex["name"]
    p = poset.build_poset(list(ex["elements"]),
                          [tuple(c) for c in ex["covers"]])
    u0 = p.elements[0]
    expected_extreme = [tuple(pr) for pr in ex["extreme"]]
    if poset.extreme_pairs(p) != expected_extreme:
        raise GoldenMismatch("%s: extreme pair set differs" % name)
    for pr, (sgn, side) in sorted(ex["sign_v"].items(),
                                  key=lambda it: p.pair_key(it[0])):
        got_sgn, got_side = poset.sign_and_vset(p, u0, tuple(pr))
        if got_sgn != sgn or got_side != frozenset(side):
            raise GoldenMismatch("%s: sign or side set differs at %r"
                                 % (name, pr))
    nu = tpstruct.NuElement(
        p, {tuple(k): Fraction(v) for k, v in ex["nu"].items()})
    lam = tpstruct.LambdaMap(
        p, {tuple(k): Fraction(v) for k, v in ex["lam"].items()})
    mut = tpstruct.mutational(nu)
    if mut != _golden_product(p, ex["mutational"]):
        raise GoldenMismatch("%s: mutational product table differs" % name)
    lst = tpstruct.lambda_structure(lam, u0)
    if lst != _golden_product(p, ex["lambda_table"]):
        raise GoldenMismatch("%s: lambda product table differs" % name)
    total = tpstruct.sum_products(mut, lst)
    ver = tpstruct.verify_tp(total)
    if not tpstruct.tp_passes(ver):
        raise GoldenMismatch("%s: summed table fails verification" % name)
    dec = tpstruct.decompose_tp(total, u0)
    if any(dec.mu.values.values()):
        raise GoldenMismatch("%s: decomposition has a spurious mu part" % name)
    if dec.nu.values != nu.values or dec.lam.values != lam.values:
        raise GoldenMismatch("%s: decomposition does not recover the inputs"
                             % name)
    return {"name": name, "status": "PASS"}


def _run_examples(golden=GOLDEN_EXAMPLES):
    results = [_check_example(ex) for ex in golden]
    return {"command": "examples", "results": results, "status": "PASS"}


def cmd_examples(args):
    return _run_examples(), True


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="lietp",
        description="Half-derivations and transposed Poisson structures "
                    "on the Lie incidence algebra of a finite poset.")
    sub = parser.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="poset combinatorics report")
    a.add_argument("poset")
    a.add_argument("--u0", default=None)
    a.set_defaults(func=cmd_analyze)

    h = sub.add_parser("halfder", help="half-derivation space description")
    h.add_argument("poset")
    h.add_argument("--oracle", action="store_true",
                   help="cross-check the dimension by brute force")
    h.set_defaults(func=cmd_halfder)

    d = sub.add_parser("decompose",
                       help="split an operator into inner, grading and "
                            "central parts")
    d.add_argument("poset")
    d.add_argument("operator")
    d.add_argument("--u0", default=None)
    d.set_defaults(func=cmd_decompose)

    t = sub.add_parser("tp", help="transposed Poisson structure tools")
    t.add_argument("mode", choices=["build", "verify", "decompose",
                                    "normalize"])
    t.add_argument("poset")
    t.add_argument("data")
    t.add_argument("--u0", default=None)
    t.set_defaults(func=cmd_tp)

    e = sub.add_parser("examples", help="re-run the worked examples against "
                                        "their frozen tables")
    e.set_defaults(func=cmd_examples)
    return parser


def _emit(report):
    sys.stdout.write(json.dumps(report, indent=2) + "\n")


def main(argv=None):
    args = _build_parser().parse_args(argv)
    try:
        report, ok = args.func(args)
    except LietpError as exc:
        _emit({"command": args.command,
               "error": {"type": type(exc).__name__, "detail": str(exc)}})
        return 1
    _emit(report)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
