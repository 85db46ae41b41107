"""
Command-line entry point ``perc``.

Every subcommand prints a JSON summary. Subcommands that produce rows
(``simulate``, ``couple``, ``gff-verify``, ``iso``, ``scan``) also write
them as CSV with ``--output``. The exit code is 0 iff every check the
command performs passes.
"""

import argparse
import json
import logging
import sys
from pathlib import Path

import polars as pl
from conf import get_diameter_exact_limit, get_log_level
from graphs import (
    AbelianGroup,
    BoxGraph,
    CayleyGraph,
    FamilyGraph,
    coset_partition,
    metric_diameter,
    parse_descriptor,
    quotient_graph,
    write_family,
)
from isoperimetry import IsoWitness, exhaustive_iso_profile, iso_ratio, local_search_iso
from percolation import (
    embedding_containment_check,
    estimate_pc,
    mc_giant,
    quotient_containment_check,
    two_point,
    union_containment_check,
)
from potential import boundary_ring, centre_vertex, verify_gff_bound
from progressions import (
    SymmetricSet,
    certify,
    certify_corpus,
    extract_progression,
    random_corpus,
)

from runner.experiments import named_subgroup, parse_generators, run_experiment
from runner.models import ExperimentSpec
from runner.scan import gap_trend_holds, sharp_threshold_scan

logger = logging.getLogger(__name__)

COUPLING_KINDS = ("union", "quotient", "embed")


def parse_vertex_set(text: str) -> list[int]:
    """``1,2,3`` or ``set:<file>``, the file holding a JSON list or whitespace separated integers."""
    if text.startswith("set:"):
        body = Path(text[4:]).read_text().strip()
        if body.startswith("["):
            return [int(v) for v in json.loads(body)]
        return [int(v) for v in body.replace(",", " ").split()]
    return [int(v) for v in text.split(",") if v.strip()]


def _ints(text: str) -> list[int]:
    return [int(v) for v in text.split(",") if v.strip()]


def _emit(payload) -> None:
    if hasattr(payload, "model_dump_json"):
        print(payload.model_dump_json(indent=2))
    else:
        print(json.dumps(payload, indent=2, default=str))


def _family(args: argparse.Namespace) -> FamilyGraph:
    descriptor = args.graph or args.descriptor
    if descriptor is None:
        raise ValueError(f"perc {args.command} needs a graph descriptor, positional or --graph")
    return parse_descriptor(descriptor)


def _write_csv(records: list[dict], output: Path | None) -> None:
    if output is None:
        return
    output.parent.mkdir(parents=True, exist_ok=True)
    pl.DataFrame(records).write_csv(output)
    logger.info(f"Wrote {len(records)} rows to {output}")


def cmd_graph(args: argparse.Namespace) -> int:
    family = _family(args)
    G = family.graph
    diameter, exact = metric_diameter(G, get_diameter_exact_limit())
    payload = {
        "label": family.label,
        "vertices": G.vertex_count,
        "edges": G.edge_count,
        "diameter": diameter,
        "diameter_exact": exact,
        "transitive": family.transitive,
        "collapsed": G.collapsed_count,
    }
    if args.output:
        sidecar = write_family(family, args.output)
        payload["output"] = str(args.output)
        payload["coordinates"] = str(sidecar) if sidecar else None
    _emit(payload)
    return 0


def cmd_simulate(args: argparse.Namespace) -> int:
    family = _family(args)
    G = family.graph
    rows = []
    for p in args.p:
        if args.pair:
            x, y = args.pair
            estimate = two_point(G, p, x, y, args.trials, args.seed)
        else:
            estimate = mc_giant(G, p, args.alpha, args.trials, args.seed)
        rows.append({"p": p, **estimate.model_dump()})
    _write_csv(rows, args.output)
    event = "pair" if args.pair else "giant"
    _emit({"graph": family.label, "event": event, "alpha": args.alpha, "rows": rows})
    return 0


def cmd_pc(args: argparse.Namespace) -> int:
    G = _family(args).graph
    estimate = estimate_pc(
        G, args.alpha, args.q, args.tol, args.trials, args.seed, args.max_trials, args.strict
    )
    _emit(estimate)
    return 0


def cmd_couple(args: argparse.Namespace) -> int:
    family = _family(args)
    reports = {}
    if "union" in args.kind:
        p2 = args.p if args.p2 is None else args.p2
        reports["union"] = union_containment_check(family.graph, args.p, p2, args.samples, args.seed)
    if {"quotient", "embed"} & set(args.kind):
        if not isinstance(family.source, CayleyGraph):
            raise ValueError(f"{family.label} is not a Cayley graph")
        cayley = family.source
        orbit_map = coset_partition(cayley.group, named_subgroup(cayley, args.subgroup))
        if "quotient" in args.kind:
            reports["quotient"] = quotient_containment_check(
                cayley.graph, orbit_map, args.p, args.samples, args.seed
            )
        if "embed" in args.kind:
            Q, projection = quotient_graph(cayley.graph, orbit_map)
            reports["embed"] = embedding_containment_check(
                cayley.graph, Q, projection, args.p, args.samples, args.seed
            )
    rows = [
        {"p": args.p, "seed": args.seed, **report.model_dump()} for report in reports.values()
    ]
    _write_csv(rows, args.output)
    holds = all(report.holds for report in reports.values())
    _emit({"graph": family.label, "holds": holds, **{kind: r.model_dump() for kind, r in reports.items()}})
    return 0 if holds else 1


def cmd_gff_verify(args: argparse.Namespace) -> int:
    family = _family(args)
    box = family.source if isinstance(family.source, BoxGraph) else None
    if args.boundary == "ring":
        if box is None:
            raise ValueError(f"{family.label} is not a box; pass --boundary set:<file>")
        boundary = boundary_ring(box)
    else:
        boundary = parse_vertex_set(args.boundary)
    if args.a:
        A = parse_vertex_set(args.a)
    elif box is not None:
        A = [centre_vertex(box)]
    else:
        raise ValueError(f"{family.label} is not a box; pass --a")
    report = verify_gff_bound(family.graph, boundary, A, args.gff_samples, args.trials, args.seed)
    _write_csv(
        [
            {
                "bound": report.bound,
                "estimate": report.estimate,
                "stderr_outer": report.stderr_outer,
                "stderr_inner": report.stderr_inner,
                "conductance": report.conductance,
                "holds": report.holds,
            }
        ],
        args.output,
    )
    _emit(report)
    return 0 if report.holds else 1


def _profile_row(witness: IsoWitness) -> dict:
    return {
        "s": witness.size,
        "min_boundary": witness.boundary,
        "witness": " ".join(str(v) for v in witness.members),
    }


def cmd_iso(args: argparse.Namespace) -> int:
    G = _family(args).graph
    if args.set:
        best = iso_ratio(G, parse_vertex_set(args.set), args.d)
        rows = [_profile_row(best)]
    elif args.mode == "exhaustive":
        profile = exhaustive_iso_profile(G, connected_only=args.connected)
        best = profile.min_ratio(args.d)
        rows = [
            {
                "s": s,
                "min_boundary": profile.min_boundary[s],
                "witness": " ".join(str(v) for v in profile.witnesses[s]),
            }
            for s in sorted(profile.min_boundary)
        ]
    else:
        best = local_search_iso(G, args.d, seed=args.seed)
        rows = [_profile_row(best)]
    _write_csv(rows, args.output)
    _emit({"mode": "set" if args.set else args.mode, "min_ratio": best.model_dump(), "profile": rows})
    return 0


def cmd_extract(args: argparse.Namespace) -> int:
    group = AbelianGroup(_ints(args.mods))
    generators = parse_generators(args.gens)
    Q = SymmetricSet.subgroup(group, parse_generators(args.q)) if args.q else SymmetricSet.zero(group)
    result = extract_progression(group, generators, Q, args.r)
    report = certify(group, result, generators, Q, args.r)
    _emit({"result": result.model_dump(), "certificate": report.model_dump()})
    return 0 if report.ok else 1


def cmd_corpus(args: argparse.Namespace) -> int:
    instances = random_corpus(args.seed, args.count, max_order=args.max_order, max_rank=args.max_rank)
    records = certify_corpus(instances)
    failures = [record for record in records if not record.certified]
    _emit(
        {
            "seed": args.seed,
            "instances": len(records),
            "certified": len(records) - len(failures),
            "failures": [record.model_dump() for record in failures],
        }
    )
    return 0 if not failures else 1


def cmd_run(args: argparse.Namespace) -> int:
    spec = ExperimentSpec.model_validate_json(Path(args.spec).read_text())
    if args.output:
        spec.output = Path(args.output)
    summary = run_experiment(spec)
    _emit(summary)
    return 0 if summary.passed else 1


def cmd_scan(args: argparse.Namespace) -> int:
    rows = sharp_threshold_scan(
        args.family,
        _ints(args.sizes),
        args.alpha,
        args.eps,
        args.trials,
        args.seed,
        args.tol,
        args.max_trials,
    )
    _write_csv([row.model_dump() for row in rows], args.output)
    holds = gap_trend_holds(rows)
    _emit({"rows": [row.model_dump() for row in rows], "gap_trend_holds": holds})
    return 0 if holds else 1


def _command(sub, name: str, help: str, handler, graph: bool = False) -> argparse.ArgumentParser:
    p = sub.add_parser(name, help=help, allow_abbrev=False)
    p.set_defaults(handler=handler)
    if graph:
        p.add_argument("descriptor", nargs="?", help="Graph descriptor, e.g. torus:n=100,m=5")
        p.add_argument("--graph", help="Graph descriptor, in place of the positional one")
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="perc", description="Percolation experiments on finite graphs", allow_abbrev=False
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = _command(sub, "graph", "Build a graph from a descriptor and describe it", cmd_graph, graph=True)
    p.add_argument("--output", type=Path, help="Write the graph JSON (and coordinate sidecar) here")

    p = _command(sub, "simulate", "Giant-cluster or two-point probability", cmd_simulate, graph=True)
    p.add_argument("-p", "--p", type=float, nargs="+", required=True, help="One or more edge probabilities")
    p.add_argument("--alpha", type=float, default=0.5)
    p.add_argument("--pair", type=int, nargs=2, metavar=("X", "Y"), help="Estimate P(X <-> Y) instead")
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--output", type=Path, help="CSV of (p, estimate, stderr, trials, seed)")

    p = _command(sub, "pc", "Stochastic bisection for p_c(G, alpha, q)", cmd_pc, graph=True)
    p.add_argument("--alpha", type=float, default=0.5)
    p.add_argument("--q", type=float, default=0.5)
    p.add_argument("--tol", type=float, default=0.01)
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--max-trials", type=int)
    p.add_argument("--strict", action="store_true", help="Fail instead of returning an unresolved bracket")
    p.add_argument("--seed", type=int, required=True)

    p = _command(sub, "couple", "Containment checks of the percolation couplings", cmd_couple, graph=True)
    p.add_argument("-p", "--p", type=float, required=True)
    p.add_argument("--kind", choices=COUPLING_KINDS, nargs="+", default=["quotient", "embed"])
    p.add_argument("--p2", type=float, help="Second probability of the union coupling; defaults to p")
    p.add_argument("--subgroup", help="Subgroup generators such as (0,1)")
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--output", type=Path, help="CSV with one row per coupling kind")

    p = _command(
        sub, "gff-verify", "GFF connection bound with a Dirichlet boundary", cmd_gff_verify, graph=True
    )
    p.add_argument("--boundary", default="ring", help="ring (the outer ring of a box) or set:<file>")
    p.add_argument(
        "--a", "--set", dest="a", help="Vertex set A (1,2,3 or set:<file>); defaults to the box centre"
    )
    p.add_argument("--outer", "--gff-samples", dest="gff_samples", type=int, default=200)
    p.add_argument("--inner", "--trials", dest="trials", type=int, default=200)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--output", type=Path, help="CSV of (bound, estimate, stderr_outer, stderr_inner)")

    p = _command(sub, "iso", "Isoperimetric profile, ratio of a set or best set found", cmd_iso, graph=True)
    p.add_argument("-d", "--d", type=float, required=True)
    p.add_argument("--mode", choices=("exhaustive", "search"), default="search")
    p.add_argument("--exhaustive", dest="mode", action="store_const", const="exhaustive")
    p.add_argument("--set", help="Ratio of this set (1,2,3 or set:<file>)")
    p.add_argument("--connected", action="store_true", help="In exhaustive mode, only connected sets")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", type=Path, help="CSV profile of (s, min_boundary, witness)")

    p = _command(sub, "extract", "Extract and certify a progression in r·Â", cmd_extract)
    p.add_argument("--mods", required=True, help="Group moduli, e.g. 12,5")
    p.add_argument("--gens", required=True, help="Generators, e.g. (1,0),(0,1)")
    p.add_argument("--q", help="Generators of the subgroup Q; Q = {0} when omitted")
    p.add_argument("-r", type=int, required=True)

    p = _command(sub, "corpus", "Certify a seeded corpus of random extractions", cmd_corpus)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--count", type=int, default=200)
    p.add_argument("--max-order", type=int, default=4096)
    p.add_argument("--max-rank", type=int, default=3)

    p = _command(sub, "run", "Run an experiment spec", cmd_run)
    p.add_argument("--spec", required=True, type=Path)
    p.add_argument("--output", type=Path, help="Override the spec's output path")

    p = _command(sub, "scan", "Sharp-threshold gap over family sizes", cmd_scan)
    p.add_argument("--family", required=True, help="Template with an {L} field, e.g. torus:n={L},m={L}")
    p.add_argument("--sizes", required=True, help="Comma separated sizes")
    p.add_argument("--alpha", type=float, default=0.5)
    p.add_argument("--eps", type=float, default=0.25)
    p.add_argument("--tol", type=float, default=0.01)
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--max-trials", type=int)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--output", type=Path)
    return parser


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(
        level=get_log_level(),
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        stream=sys.stdout,
        force=True,
    )
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except Exception:
        logger.exception(f"perc {args.command} failed")
        return 1


if __name__ == "__main__":
    sys.exit(main())
