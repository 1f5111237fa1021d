"""Command-line front end: ``facetres <verb> ...`` or ``python -m facetres``.

Exit codes: 0 success, 1 a property check failed, 2 bad input or an unmet
precondition.
"""

from __future__ import annotations

import argparse
import sys
from itertools import combinations

from . import complex as cx
from . import forest as fb
from .errors import FacetResError
from .fileformat import new_report, read_complex, report_json, report_text, serialize_complex
from .generate import KINDS, generate
from .ideal import facet_ideal, find_linear_quotient_order
from .koszul import (
    betti_table,
    class_product_nonzero,
    is_linear_resolution,
    monomial_cycle_basis,
    reg_pd,
    verify_linear_generation,
)
from .linalg import FieldSpec

PROPERTIES = ("alternating-sum", "monomial-basis", "unique-chain",
              "linear-generation", "bouquet-product", "counts")
METHODS = ("oracle", "recursive", "strand", "linear-total", "all")
MAX_BOUQUET_FAMILY = 3


class CheckFailed(Exception):
    """Carries a finished report whose verdict is a failure."""

    def __init__(self, doc):
        super().__init__("check failed")
        self.doc = doc


def _names(delta, masks):
    return [delta.label(m) for m in masks]


def _label_or_dash(delta, mask) -> str:
    return delta.label(mask) if mask else "-"


def _graded_dict(table) -> dict:
    return {f"{i},{j}": v for (i, j), v in sorted(table.graded().items())}


def _multigraded(table) -> list:
    return [f"b[{i},{table.label(a)}] = {v}" for (i, a), v in
            sorted(table.entries.items(), key=lambda kv: (kv[0][0], cx.popcount(kv[0][1]), kv[0][1]))]


# -- verbs --------------------------------------------------------------------

def cmd_analyze(delta, args) -> dict:
    mf = args.max_facets
    doc = new_report("analyze", complex=str(delta), facets=len(delta), vertices=delta.n,
                     dim=cx.dimension(delta), pure=cx.is_pure(delta),
                     connected=cx.is_connected(delta),
                     codim1_connected=cx.is_connected_codim1(delta))
    witness = cx.find_leafless_subcomplex(delta, mf)
    doc["forest"] = witness is None
    doc["tree"] = witness is None and doc["connected"]
    order = cx.leaf_order(delta)
    doc["quasi_forest"] = order is not None
    if order is not None:
        doc["leaf_order"] = _names(delta, order)
    if witness is not None:
        doc["leafless_witness"] = _names(delta, witness)
    doc["leaves"] = _names(delta, cx.leaves(delta))
    doc["free_vertices"] = {delta.label(f): _label_or_dash(delta, cx.free_vertices(delta, f))
                            for f in delta.facets}
    if doc["pure"] and doc["forest"] and all(cx.is_connected_codim1(c) for c in cx.components(delta)):
        doc["diameter"] = cx.diameter(delta)
    if doc["pure"]:
        doc["adjacent_faces"] = {delta.label(g): deg for g, deg in cx.adjacent_faces(delta) if deg >= 2}
    if doc["pure"] and doc["tree"] and doc["codim1_connected"]:
        sc = fb.structural_counts(delta)
        doc["counts"] = {"m": sc.facets, "faces": sc.faces, "O": sc.total_degree,
                         "identity_holds": sc.identity_holds}
    return doc


def _tagged(method, fn, *a):
    try:
        return fn(*a)
    except FacetResError as exc:
        raise type(exc)(f"[{method}] {exc}") from exc


def cmd_betti(delta, args) -> dict:
    field = FieldSpec.parse(args.field)
    I = facet_ideal(delta)
    doc = new_report("betti", complex=str(delta), method=args.method, field=str(field))
    methods = ["oracle", "recursive", "strand", "linear-total"] if args.method == "all" else [args.method]
    oracle = None
    if "oracle" in methods or len(methods) > 1:
        oracle = betti_table(I, field)
        reg, pd = reg_pd(oracle)
        doc.update(betti_table=oracle.render(), graded=_graded_dict(oracle), reg=reg, pd=pd)
        if args.multigraded:
            doc["multigraded"] = _multigraded(oracle)
    results, mismatches, skipped = {}, [], {}
    for m in methods:
        if m == "oracle":
            continue
        try:
            if m == "recursive":
                t = _tagged(m, fb.recursive_betti, delta)
                results[m] = _graded_dict(t)
                if oracle is None:
                    reg, pd = reg_pd(t)
                    doc.update(betti_table=t.render(), graded=results[m], reg=reg, pd=pd)
                    if args.multigraded:
                        doc["multigraded"] = _multigraded(t)
                elif t.entries != oracle.entries:
                    mismatches.append(m)
            elif m == "strand":
                d = cx.dimension(delta)
                strand = _tagged(m, fb.linear_strand_betti, delta)
                results[m] = {f"{i},{i + d}": v for i, v in strand.items()}
                if oracle is not None and any(oracle.beta(i, i + d) != v for i, v in strand.items()):
                    mismatches.append(m)
            elif m == "linear-total":
                totals = _tagged(m, fb.linear_tree_total_betti, delta)
                results[m] = {str(i): v for i, v in totals.items()}
                if oracle is not None:
                    ref = oracle.totals()
                    if any((ref[i] if i < len(ref) else 0) != v for i, v in totals.items()) \
                            or len(ref) - 1 > max(totals):
                        mismatches.append(m)
        except FacetResError as exc:
            if args.method != "all":
                raise
            skipped[m] = str(exc)
    if results:
        doc["methods"] = results
    if skipped:
        doc["not_applicable"] = skipped
    if args.method == "all":
        doc["mismatches"] = mismatches
        if mismatches:
            raise CheckFailed(doc)
    return doc


def cmd_classify(delta, args) -> dict:
    I = facet_ideal(delta)
    formula = fb.classify_linear_tree(delta)
    oracle = is_linear_resolution(I, betti_table(I, FieldSpec.parse(args.field)))
    order = find_linear_quotient_order(I)
    doc = new_report("classify", complex=str(delta), tree=True, pure=cx.is_pure(delta),
                     codim1_connected=cx.is_connected_codim1(delta),
                     intersection_property=formula, oracle_linear=oracle,
                     linear_quotient_order=_names(delta, order) if order else None)
    doc["agree"] = formula == oracle == (order is not None)
    if not doc["agree"]:
        raise CheckFailed(doc)
    return doc


def _is_graph(delta) -> bool:
    return all(cx.popcount(f) == 2 for f in delta.facets)


def cmd_reg(delta, args) -> dict:
    I = facet_ideal(delta)
    reg, _ = reg_pd(betti_table(I, FieldSpec.parse(args.field)))
    forest = cx.is_forest(delta, args.max_facets)
    doc = new_report("reg", complex=str(delta), oracle_reg=reg, forest=forest)
    if not _is_graph(delta):
        doc["note"] = "not a graph: no formula applies"
        return doc
    edges = fb.max_disconnected_edges_brute(delta)
    doc["disconnected_edges"] = len(edges)
    doc["witness"] = _names(delta, edges)
    if not forest:
        doc["note"] = "theorem not applicable: the graph has a cycle"
        return doc
    doc["formula_reg"] = fb.reg_1dim(delta)
    if doc["formula_reg"] != reg:
        raise CheckFailed(doc)
    return doc


def cmd_pd(delta, args) -> dict:
    I = facet_ideal(delta)
    _, pd = reg_pd(betti_table(I, FieldSpec.parse(args.field)))
    forest = cx.is_forest(delta, args.max_facets)
    doc = new_report("pd", complex=str(delta), oracle_pd=pd, forest=forest)
    if not _is_graph(delta):
        doc["note"] = "not a graph: no formula applies"
        return doc
    score, family = fb.max_bouquet_family(delta)
    doc["bouquet_pd"] = score
    doc["bouquets"] = [f"({delta.label(1 << b.root)}; {delta.label(b.flowers)})" for b in family]
    stems = fb.pick_stems(delta, family)
    doc["stems"] = _names(delta, stems) if stems is not None else None
    if not forest:
        doc["note"] = "theorem not applicable: the graph has a cycle"
        return doc
    if score != pd:
        raise CheckFailed(doc)
    return doc


def _check_alternating(delta, field) -> dict:
    I = facet_ideal(delta)
    table = betti_table(I, field)
    g = I.min_degree
    order = fb.find_main_order(delta)
    return {"g": g, "strand_sums": {str(j): s for j, s in fb.strand_sums(table).items()},
            "main_order": _names(delta, order) if order else None,
            "passed": fb.has_alternating_sum_property(table, g)}


def _check_monomial_basis(delta, field) -> dict:
    I = facet_ideal(delta)
    table = betti_table(I, field)
    top = max(i for i, _ in table.entries)
    failures = []
    for r in range(1, top + 1):
        for a, rep in monomial_cycle_basis(I, r, field).items():
            if not rep.spans:
                failures.append(f"i={r} a={table.label(a)}: rank {rep.rank} < b={rep.betti}")
    return {"failures": failures, "passed": not failures}


def _check_unique_chain(delta, field) -> dict:
    if not (cx.is_pure(delta) and cx.is_tree(delta) and cx.is_connected_codim1(delta)):
        raise fb.PreconditionViolated("unique-chain needs a pure tree connected in codimension 1")
    counts = {}
    for f, g in combinations(delta.facets, 2):
        counts[f"{delta.label(f)}-{delta.label(g)}"] = len(cx.irredundant_proper_chains(delta, f, g))
    return {"chain_counts": counts, "passed": all(c == 1 for c in counts.values())}


def _check_linear_generation(delta, field) -> dict:
    return {"passed": verify_linear_generation(facet_ideal(delta), field)}


def _check_bouquet_product(delta, field) -> dict:
    I = facet_ideal(delta)
    bouquets = fb.enumerate_bouquets(delta)
    cycles = {b: fb.bouquet_cycle(I, b, field) for b in bouquets}
    checked, bad, stem_bad = 0, [], 0
    for size in range(1, MAX_BOUQUET_FAMILY + 1):
        for fam in combinations(bouquets, size):
            valid = fb.valid_bouquet_family(delta, fam)
            nonzero = class_product_nonzero(I, [cycles[b] for b in fam])
            checked += 1
            if valid != nonzero:
                bad.append(" ".join(f"({delta.label(1 << b.root)};{delta.label(b.flowers)})"
                                    for b in fam))
            if fb.valid_with_stems(delta, fam) != nonzero:
                stem_bad += 1
    return {"families_checked": checked, "max_family_size": MAX_BOUQUET_FAMILY,
            "disagreements": bad, "with_stem_condition_disagreements": stem_bad,
            "passed": not bad}


def _check_counts(delta, field) -> dict:
    sc = fb.structural_counts(delta)
    dist = fb.distance_property_check(delta)
    n_leaves = len(cx.leaves(delta))
    ok = sc.identity_holds and dist.lower_bound_holds and (len(delta) < 2 or n_leaves >= 2)
    return {"m": sc.facets, "faces": sc.faces, "O": sc.total_degree,
            "identity_holds": sc.identity_holds, "leaves": n_leaves,
            "distance_lower_bound": dist.lower_bound_holds, "passed": ok}


CHECKS = {
    "alternating-sum": _check_alternating,
    "monomial-basis": _check_monomial_basis,
    "unique-chain": _check_unique_chain,
    "linear-generation": _check_linear_generation,
    "bouquet-product": _check_bouquet_product,
    "counts": _check_counts,
}


def cmd_check(delta, args) -> dict:
    result = CHECKS[args.property](delta, FieldSpec.parse(args.field))
    doc = new_report("check", complex=str(delta), property=args.property, **result)
    if not result["passed"]:
        raise CheckFailed(doc)
    return doc


# -- argument parsing ---------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--field", default="q", help="q (rationals) or gf:<p>")
    common.add_argument("--normalize", action="store_true",
                        help="drop non-maximal faces instead of rejecting them")
    common.add_argument("--max-facets", type=int, default=cx.MAX_FOREST_FACETS,
                        help="facet bound for the forest test")

    p = argparse.ArgumentParser(prog="facetres",
                                description="Facet ideals of simplicial forests and their Betti numbers.")
    sub = p.add_subparsers(dest="verb", required=True)
    for verb, helptext in [("analyze", "combinatorial summary"),
                           ("classify", "linear-tree classification"),
                           ("reg", "regularity of a graph forest"),
                           ("pd", "projective dimension of a graph forest")]:
        sp = sub.add_parser(verb, parents=[common], help=helptext)
        sp.add_argument("file")
    sp = sub.add_parser("betti", parents=[common], help="Betti table")
    sp.add_argument("file")
    sp.add_argument("--method", choices=METHODS, default="oracle")
    sp.add_argument("--multigraded", action="store_true")
    sp = sub.add_parser("check", parents=[common], help="verify a property")
    sp.add_argument("file")
    sp.add_argument("property", choices=PROPERTIES)
    sp = sub.add_parser("gen", help="random complex of a given kind")
    sp.add_argument("kind", choices=KINDS)
    sp.add_argument("--facets", type=int, default=5)
    sp.add_argument("--dim", type=int, default=2)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--max-vertices", type=int, default=None)
    sp.add_argument("-o", "--output")
    return p


VERBS = {"analyze": cmd_analyze, "betti": cmd_betti, "classify": cmd_classify,
         "reg": cmd_reg, "pd": cmd_pd, "check": cmd_check}


def _emit(doc, as_json: bool, out):
    print(report_json(doc) if as_json else report_text(doc), file=out)


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    if args.verb == "gen":
        try:
            delta = generate(args.kind, args.facets, args.dim, args.seed, args.max_vertices)
        except FacetResError as exc:
            print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
            return 2
        text = serialize_complex(delta, f"kind={args.kind} facets={args.facets} "
                                        f"dim={args.dim} seed={args.seed}")
        if args.output:
            with open(args.output, "w") as fh:
                fh.write(text)
        else:
            out.write(text)
        return 0
    try:
        FieldSpec.parse(args.field)
        delta = read_complex(args.file, normalize=args.normalize)
        doc = VERBS[args.verb](delta, args)
    except CheckFailed as exc:
        exc.doc["status"] = "FAIL"
        _emit(exc.doc, args.json, out)
        return 1
    except (FacetResError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    doc["status"] = "ok"
    _emit(doc, args.json, out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
