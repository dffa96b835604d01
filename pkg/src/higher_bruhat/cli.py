"""Command-line surface: enumeration, condition checking, sphericity, export.

Exit codes are a stable contract: 0 pass, 1 mathematical-condition
failure, 2 resource limit exceeded, 3 usage or input error.  JSON reports
are byte-deterministic for a fixed input and library version.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .bruhat import (
    OrderKind,
    dissection_instance,
    enumerate_bruhat,
    is_green,
    to_poset,
)
from .errors import InvariantError, ParameterError, ResourceLimitError
from .homology import DEFAULT_SIMPLEX_BUDGET, is_sphere_homology, reduced_homology
from .instance_io import (
    SCHEMA_VERSION,
    instance_to_doc,
    load_instance,
    poset_to_doc,
)
from .posets import count_chains, order_complex, proper_part
from .subsets import GroundParams
from .suspension_check import (
    DEFAULT_MAX_CHAINS,
    HOMOTOPY_DISCLAIMER,
    build_proof_maps,
    carrier_cone_check,
    check_conditions,
)

EXIT_PASS = 0
EXIT_CONDITION = 1
EXIT_RESOURCE = 2
EXIT_USAGE = 3


class _Parser(argparse.ArgumentParser):
    """argparse with usage errors on exit code 3 instead of 2."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _write_report(report: dict, out: str | None) -> None:
    if out is None:
        return
    blob = json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
    with open(out, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(blob)


def _parse_bruhat_args(values) -> tuple[GroundParams, OrderKind]:
    n_str, k_str, order_str = values
    try:
        n, k = int(n_str), int(k_str)
    except ValueError:
        raise ParameterError(f"bruhat n and k must be integers, got {n_str!r}, {k_str!r}")
    try:
        kind = OrderKind(order_str)
    except ValueError:
        raise ParameterError(
            f"unknown order kind {order_str!r}; use single_step or inclusion"
        )
    return GroundParams(n, k), kind


def _load_dissection(ns):
    if ns.bruhat is not None:
        params, kind = _parse_bruhat_args(ns.bruhat)
        order = enumerate_bruhat(params, kind=kind, max_subsets=ns.max_subsets)
        inst = dissection_instance(order)
        source = {"bruhat": {"n": params.n, "k": params.k, "order": kind.value}}
        return inst, source
    loaded = load_instance(ns.instance)
    inst = loaded.resolve_dissection(max_subsets=ns.max_subsets)
    return inst, {"file": ns.instance}


def _check_to_dict(check) -> dict:
    return {"name": check.name, "passed": check.passed, "witness": check.witness}


def cmd_enumerate(ns) -> int:
    params = GroundParams(ns.n, ns.k)
    methods = ["bfs", "bruteforce"] if ns.method == "both" else [ns.method]
    orders = [
        enumerate_bruhat(params, method=m, max_subsets=ns.max_subsets, jobs=ns.jobs)
        for m in methods
    ]
    order = orders[0]
    oracle_match = None
    if len(orders) == 2:
        oracle_match = [u.bits for u in orders[0].elements] == [
            u.bits for u in orders[1].elements
        ]
    histogram: list[list[int]] = []
    for u in order.elements:
        card = len(u)
        if histogram and histogram[-1][0] == card:
            histogram[-1][1] += 1
        else:
            histogram.append([card, 1])
    report = {
        "version": __version__,
        "command": "enumerate",
        "n": params.n,
        "k": params.k,
        "method": ns.method,
        "count": len(order),
        "by_cardinality": histogram,
    }
    if oracle_match is not None:
        report["oracle_match"] = oracle_match
    if ns.elements:
        report["elements"] = [str(u) for u in order.elements]
    _write_report(report, ns.out)
    print(f"B({params.n},{params.k}): {len(order)} consistent families")
    for card, count in histogram:
        print(f"  cardinality {card}: {count}")
    if oracle_match is not None:
        print(f"oracle match (bfs vs bruteforce): {oracle_match}")
    if oracle_match is False:
        raise InvariantError("bfs and bruteforce enumerations disagree")
    return EXIT_PASS


def cmd_check_lemma(ns) -> int:
    inst, source = _load_dissection(ns)
    condition_report = check_conditions(inst)
    report = {
        "version": __version__,
        "command": "check_lemma",
        "instance": source,
        "notes": [HOMOTOPY_DISCLAIMER],
        "preconditions": [_check_to_dict(c) for c in condition_report.preconditions],
        "conditions": [_check_to_dict(c) for c in condition_report.conditions],
    }
    ok = condition_report.all_pass
    if not ok:
        report["proof_maps"] = {"skipped": True}
        report["carrier"] = {"skipped": True}
    else:
        try:
            build_proof_maps(inst)
            report["proof_maps"] = {"passed": True, "error": None}
        except InvariantError as exc:
            report["proof_maps"] = {"passed": False, "error": str(exc)}
            ok = False
        carrier = carrier_cone_check(inst, max_chains=ns.max_chains, seed=ns.seed)
        report["carrier"] = {
            "total_chains": carrier.total_chains,
            "chains_checked": carrier.chains_checked,
            "sampled": carrier.sampled,
            "failures": list(carrier.failures),
            "notes": list(carrier.notes),
        }
        ok = ok and carrier.all_cones
    report["all_pass"] = ok
    _write_report(report, ns.out)

    print(HOMOTOPY_DISCLAIMER)
    for check in condition_report.preconditions + condition_report.conditions:
        status = "pass" if check.passed else f"FAIL ({check.witness})"
        print(f"  {check.name}: {status}")
    if "passed" in report.get("proof_maps", {}):
        pm = report["proof_maps"]
        print(f"  proof_maps: {'pass' if pm['passed'] else 'FAIL (' + pm['error'] + ')'}")
    if "total_chains" in report.get("carrier", {}):
        c = report["carrier"]
        mode = "sampled" if c["sampled"] else "all chains"
        status = "pass" if not c["failures"] else f"FAIL ({len(c['failures'])} chains)"
        print(f"  carrier cones ({c['chains_checked']}/{c['total_chains']}, {mode}): {status}")
    print(f"overall: {'pass' if ok else 'FAIL'}")
    return EXIT_PASS if ok else EXIT_CONDITION


def cmd_verify_sphericity(ns) -> int:
    params, kind = _parse_bruhat_args(ns.bruhat)
    order = enumerate_bruhat(params, kind=kind, max_subsets=ns.max_subsets)
    pp = proper_part(to_poset(order))
    # count chains before materializing them; the complex may be astronomical
    upcoming = 1 + count_chains(pp)
    if upcoming > ns.max_simplices:
        raise ResourceLimitError(
            f"order complex would have {upcoming} simplices, over the budget "
            f"of {ns.max_simplices}"
        )
    complex_ = order_complex(pp)
    homology = reduced_homology(complex_, max_simplices=ns.max_simplices)
    target = params.n - params.k - 2
    sphere = is_sphere_homology(homology, target)
    report = {
        "version": __version__,
        "command": "verify_sphericity",
        "n": params.n,
        "k": params.k,
        "order": kind.value,
        "sphere_dimension": target,
        "is_sphere": sphere,
        "num_simplices": complex_.num_simplices(),
        "f_vector": list(complex_.f_vector()),
        "homology": [
            {
                "degree": d,
                "betti": homology.betti_at(d),
                "torsion": list(homology.torsion_at(d)),
            }
            for d in homology.degrees()
        ],
        "notes": [HOMOTOPY_DISCLAIMER],
    }
    _write_report(report, ns.out)
    print(f"B({params.n},{params.k}) under {kind.value}:")
    print(f"  proper-part order complex: {complex_.num_simplices()} simplices")
    for entry in report["homology"]:
        torsion = entry["torsion"]
        extra = f" torsion {torsion}" if torsion else ""
        print(f"  reduced homology degree {entry['degree']}: betti {entry['betti']}{extra}")
    verdict = "matches" if sphere else "DOES NOT match"
    print(f"  {verdict} the homology of a {target}-sphere")
    print(f"  note: {HOMOTOPY_DISCLAIMER}")
    return EXIT_PASS if sphere else EXIT_CONDITION


def cmd_compare_orders(ns) -> int:
    params = GroundParams(ns.n, ns.k)
    order = enumerate_bruhat(params, max_subsets=ns.max_subsets)
    n = len(order)
    reach = order.reach()
    single_step_pairs = sum(row.bit_count() - 1 for row in reach)
    inclusion_pairs = 0
    differing = []
    for i, u in enumerate(order.elements):
        for j, v in enumerate(order.elements):
            if i == j:
                continue
            if u.bits & ~v.bits == 0:
                inclusion_pairs += 1
                if not reach[i] >> j & 1:
                    differing.append([str(u), str(v)])
    report = {
        "version": __version__,
        "command": "compare_orders",
        "n": params.n,
        "k": params.k,
        "count": n,
        "comparable_pairs_single_step": single_step_pairs,
        "comparable_pairs_inclusion": inclusion_pairs,
        "differing_pairs_count": len(differing),
        "differing_pairs": differing,
    }
    _write_report(report, ns.out)
    print(f"B({params.n},{params.k}): {n} elements")
    print(f"  comparable pairs, single-step: {single_step_pairs}")
    print(f"  comparable pairs, inclusion:   {inclusion_pairs}")
    if differing:
        print(f"  pairs comparable under inclusion only: {len(differing)}")
        for a, b in differing:
            print(f"    {a} < {b}")
    else:
        print("  the two orders coincide on this instance")
    return EXIT_PASS


def _dot_quote(label: str) -> str:
    return '"' + label.replace("\\", "\\\\").replace('"', '\\"') + '"'


def cmd_export(ns) -> int:
    green_labels: list[str] | None = None
    q_poset = None
    maps_doc = None
    if ns.bruhat is not None:
        params, kind = _parse_bruhat_args(ns.bruhat)
        order = enumerate_bruhat(params, kind=kind, max_subsets=ns.max_subsets)
        if params.n >= params.k + 2:
            inst = dissection_instance(order)
            p = inst.p
            green_labels = [p.labels[i] for i in sorted(inst.green)]
            doc = instance_to_doc(inst)
        else:
            # base case n = k+1: no level below, export the bare poset
            p = to_poset(order)
            green_labels = [
                p.labels[i] for i, u in enumerate(order.elements) if is_green(u)
            ]
            doc = {
                "schema": SCHEMA_VERSION,
                "P": poset_to_doc(p),
                "green": green_labels,
            }
    else:
        loaded = load_instance(ns.instance)
        p = loaded.resolve_poset(max_subsets=ns.max_subsets)
        green = loaded.green_indices(p)
        if green is not None:
            green_labels = [p.labels[i] for i in sorted(green)]
        doc = {"schema": SCHEMA_VERSION, "P": poset_to_doc(p)}
        if loaded.q is not None:
            doc["Q"] = poset_to_doc(loaded.q)
        if green_labels is not None:
            doc["green"] = green_labels
        if loaded.map_tables is not None:
            doc["maps"] = loaded.map_tables

    if ns.format == "json":
        blob = json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
    else:
        lines = ["digraph poset {", "  rankdir=BT;"]
        green_set = set(green_labels or [])
        for lbl in p.labels:
            if green_labels is None:
                lines.append(f"  {_dot_quote(lbl)};")
            elif lbl in green_set:
                lines.append(f"  {_dot_quote(lbl)} [style=filled, fillcolor=palegreen];")
            else:
                lines.append(f"  {_dot_quote(lbl)} [style=filled, fillcolor=lightpink];")
        for a, b in p.covers():
            lines.append(f"  {_dot_quote(p.labels[a])} -> {_dot_quote(p.labels[b])};")
        lines.append("}")
        blob = "\n".join(lines) + "\n"

    if ns.out is None:
        sys.stdout.write(blob)
    else:
        with open(ns.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(blob)
    return EXIT_PASS


def _add_instance_arguments(sub, require=True):
    group = sub.add_mutually_exclusive_group(required=require)
    group.add_argument("--instance", metavar="FILE", help="instance JSON file")
    group.add_argument(
        "--bruhat",
        nargs=3,
        metavar=("N", "K", "ORDER"),
        help="Bruhat instance: n, k and single_step or inclusion",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="higher-bruhat",
        description=(
            "Enumerate higher Bruhat orders, check suspension conditions on "
            "dissected bounded posets, and certify sphere homology of "
            "proper-part order complexes."
        ),
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p_enum = sub.add_parser("enumerate", help="enumerate B(n,k)")
    p_enum.add_argument("n", type=int)
    p_enum.add_argument("k", type=int)
    p_enum.add_argument(
        "--method", choices=["bfs", "bruteforce", "both"], default="bfs"
    )
    p_enum.add_argument("--max-subsets", type=int, default=None,
                        help="override the member-count limit")
    p_enum.add_argument("--jobs", type=int, default=1,
                        help="worker processes for the bruteforce scan")
    p_enum.add_argument("--elements", action="store_true",
                        help="include the full element list in the report")
    p_enum.add_argument("--out", metavar="FILE", help="write the JSON report here")
    p_enum.set_defaults(handler=cmd_enumerate)

    p_check = sub.add_parser(
        "check-lemma", help="check the suspension conditions on an instance"
    )
    _add_instance_arguments(p_check)
    p_check.add_argument("--max-chains", type=int, default=DEFAULT_MAX_CHAINS,
                         help="chain budget before carrier checks fall back to sampling")
    p_check.add_argument("--seed", type=int, default=0,
                         help="seed for the optional random part of the chain sample")
    p_check.add_argument("--max-subsets", type=int, default=None)
    p_check.add_argument("--out", metavar="FILE")
    p_check.set_defaults(handler=cmd_check_lemma)

    p_sphere = sub.add_parser(
        "verify-sphericity", help="certify sphere homology of a proper part"
    )
    p_sphere.add_argument(
        "--bruhat", nargs=3, metavar=("N", "K", "ORDER"), required=True
    )
    p_sphere.add_argument("--max-subsets", type=int, default=None)
    p_sphere.add_argument("--max-simplices", type=int, default=DEFAULT_SIMPLEX_BUDGET)
    p_sphere.add_argument("--out", metavar="FILE")
    p_sphere.set_defaults(handler=cmd_verify_sphericity)

    p_cmp = sub.add_parser(
        "compare-orders", help="compare single-step and inclusion comparability"
    )
    p_cmp.add_argument("n", type=int)
    p_cmp.add_argument("k", type=int)
    p_cmp.add_argument("--max-subsets", type=int, default=None)
    p_cmp.add_argument("--out", metavar="FILE")
    p_cmp.set_defaults(handler=cmd_compare_orders)

    p_exp = sub.add_parser("export", help="export an instance as JSON or DOT")
    _add_instance_arguments(p_exp)
    p_exp.add_argument("--format", choices=["json", "dot"], required=True)
    p_exp.add_argument("--max-subsets", type=int, default=None)
    p_exp.add_argument("--out", metavar="FILE")
    p_exp.set_defaults(handler=cmd_export)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return ns.handler(ns)
    except ResourceLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except ParameterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InvariantError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONDITION


if __name__ == "__main__":
    sys.exit(main())
