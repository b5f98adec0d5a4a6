"""Command-line front door: gen, colour, exact, bench and verify.

Exit codes: 0 valid, 1 invalid colouring, 2 usage or input error, 3 size limit.
"""
import argparse
import logging
import sys
from math import log2
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

from pydantic import ValidationError

from cfcolour.colouring import (meta_colour_traced, greedy_colourful, interval_union_pairs,
                                rect_subset_cf_traced, subset_cf_from_t_strong, subset_cf_from_t_um,
                                union_pairs_colouring)
from cfcolour.config import settings
from cfcolour.constructions import complete_hypergraph, star_hypergraph
from cfcolour.exceptions import ArgumentError, CFColourError, InputError
from cfcolour.geometry import (disc_hypergraph, interval_hypergraph, random_point_set, rank_normalize,
                               rectangle_hypergraph)
from cfcolour.hypergraph import sample_union_hypergraph, union_hypergraph, validate, validate_subset_cf
from cfcolour.models import (Algorithm, BenchRow, Family, Hypergraph, InstanceFile, Notion, PeelStep,
                             PointSet, RunReport, TraceSummary, Verdict)
from cfcolour.solvers import exact_chi, exact_chi_subset_cf
from cfcolour.storage import load_instance, load_report, write_bench, write_document
from cfcolour.utils import decode_colouring, encode_colouring, stopwatch

logger = logging.getLogger(__name__)

SUBSET_CF = "t-subset-CF"
POINT_FAMILIES = (Family.RECTANGLES, Family.DISCS)


# --- instances ---

def build_instance(family: Family, n: int, t: int, seed: int) -> InstanceFile:
    """Deterministic instance for `family`; point families carry their seeded points."""
    family = Family(family)
    if family == Family.CUSTOM:
        raise ArgumentError("custom instances are written by hand, not generated")
    points = [list(p) for p in random_point_set(n, seed).points] if family in POINT_FAMILIES else None
    try:
        instance = InstanceFile(family=family, n=n, t=t, seed=seed, points=points)
    except ValidationError as e:
        raise ArgumentError(f"invalid instance parameters: {e}") from e
    if family == Family.STAR:
        star_hypergraph(n, t)
    return instance


def instance_points(instance: InstanceFile) -> PointSet:
    """Point set of an instance, generated from its seed when not given."""
    if instance.points is not None:
        return rank_normalize(instance.points)
    return random_point_set(instance.n, instance.seed)


def instance_hypergraph(instance: InstanceFile) -> Tuple[Hypergraph, Optional[PointSet]]:
    """Hypergraph of an instance, with its points for point families."""
    family = instance.family
    if family == Family.INTERVALS:
        return interval_hypergraph(instance.n), None
    if family == Family.RECTANGLES:
        points = instance_points(instance)
        return rectangle_hypergraph(points), points
    if family == Family.DISCS:
        points = instance_points(instance)
        return disc_hypergraph(points), points
    if family == Family.STAR:
        return star_hypergraph(instance.n, instance.t), None
    if family == Family.COMPLETE:
        return complete_hypergraph(instance.n), None
    try:
        return Hypergraph(n=instance.n, hyperedges=instance.hyperedges), None
    except ValidationError as e:
        raise InputError(f"invalid custom hyperedges: {e}") from e


# --- verification ---

def union_verdict(hypergraph: Hypergraph, colouring, seed: int) -> Tuple[Verdict, str]:
    """Check a pair colouring on the union hypergraph, sampling unions on large inputs."""
    if hypergraph.edge_count <= settings.union_exhaustive_max_edges:
        return validate_subset_cf(union_hypergraph(hypergraph), colouring), "exhaustive"
    logger.info(f"{hypergraph.edge_count} hyperedges: checking {settings.union_sample_size} sampled unions")
    sample = sample_union_hypergraph(hypergraph, settings.union_sample_size, seed)
    return validate_subset_cf(sample, colouring), "sampled"


def summarize(trace: Sequence[PeelStep]) -> List[TraceSummary]:
    """Per-iteration counts of a peeling trace."""
    return [TraceSummary(iteration=step.iteration, survivors=len(step.survivors),
                         aux_colours=len(set(step.aux)), removed=len(step.removed)) for step in trace]


# --- algorithms ---

def run_algorithm(instance: InstanceFile, algorithm: Algorithm, t: int, trace: bool = False,
                  emit_colouring: bool = False) -> RunReport:
    """Colour an instance with `algorithm` and validate the result."""
    algorithm = Algorithm(algorithm)
    hypergraph, points = instance_hypergraph(instance)
    steps: List[PeelStep] = []
    edges_of_g = None
    verification = "exhaustive"

    with stopwatch() as elapsed:
        if algorithm in (Algorithm.T_UM, Algorithm.T_UM_SUM, Algorithm.T_STRONG_TUPLE):
            psi, steps = meta_colour_traced(hypergraph, lambda sub: greedy_colourful(sub, t))
            if algorithm == Algorithm.T_UM:
                colouring, notion = psi, Notion.T_UM.value
                verdict = validate(hypergraph, psi, Notion.T_UM, t)
            else:
                # a t-UM colouring is also t-strong-CF
                transform = subset_cf_from_t_um if algorithm == Algorithm.T_UM_SUM else subset_cf_from_t_strong
                colouring, notion = transform(psi, t, hypergraph.n), SUBSET_CF
                verdict = validate_subset_cf(hypergraph, colouring)
        elif algorithm == Algorithm.UNION_PAIRS:
            t = 2
            psi, steps = meta_colour_traced(hypergraph, lambda sub: greedy_colourful(sub, 2))
            colouring, notion = union_pairs_colouring(hypergraph, psi), SUBSET_CF
            verdict, verification = union_verdict(hypergraph, colouring, instance.seed)
        elif algorithm == Algorithm.INTERVAL_UNION:
            if instance.family != Family.INTERVALS:
                raise ArgumentError("interval-union needs an intervals instance")
            t = 2
            colouring, notion = interval_union_pairs(instance.n), SUBSET_CF
            verdict, verification = union_verdict(hypergraph, colouring, instance.seed)
        else:
            if points is None or instance.family != Family.RECTANGLES:
                raise ArgumentError("rect-subset needs a rectangles instance")
            result = rect_subset_cf_traced(points, t)
            colouring, steps, notion = result.tokens, result.trace, SUBSET_CF
            edges_of_g = result.graph.edge_count
            n = instance.n
            if n > 1 and edges_of_g > 40 * t * n * log2(n):
                logger.warning(f"ratio graph has {edges_of_g} edges, above 40 t n log n")
            verdict = validate_subset_cf(hypergraph, colouring)

    used = colouring.tokens_used if notion == SUBSET_CF else colouring.colours_used
    logger.info(f"{algorithm.value} on {instance.family.value} n={instance.n}: {used} colours, valid={verdict.valid}")
    return RunReport(
        instance=instance,
        algorithm=algorithm.value,
        notion=notion,
        t=t,
        colours_used=used,
        valid=verdict.valid,
        verification=verification,
        counterexample=list(verdict.counterexample) if verdict.counterexample else None,
        edges_of_G=edges_of_g,
        wall_time_ms=elapsed["millis"] if settings.report_wall_time else None,
        trace=summarize(steps) if trace else None,
        colouring=encode_colouring(colouring) if emit_colouring else None,
    )


def run_exact(instance: InstanceFile, notion: str, t: Optional[int], emit_colouring: bool = False) -> RunReport:
    """Exact optimum for `notion` on an instance."""
    hypergraph, _ = instance_hypergraph(instance)
    with stopwatch() as elapsed:
        if notion == SUBSET_CF:
            t = t or instance.t
            optimum, witness = exact_chi_subset_cf(hypergraph, t)
            verdict = validate_subset_cf(hypergraph, witness)
        else:
            notion_value = Notion(notion)
            t = (t or instance.t) if notion_value.parametric else None
            optimum, witness = exact_chi(hypergraph, notion_value, t)
            verdict = validate(hypergraph, witness, notion_value, t)
    return RunReport(
        instance=instance,
        algorithm="exact",
        notion=notion,
        t=t,
        colours_used=optimum,
        valid=verdict.valid,
        optimum=optimum,
        wall_time_ms=elapsed["millis"] if settings.report_wall_time else None,
        colouring=encode_colouring(witness) if emit_colouring else None,
    )


def verify_report(instance: InstanceFile, report: RunReport) -> Verdict:
    """Re-validate the colouring embedded in a report."""
    if report.colouring is None:
        raise InputError("report carries no colouring; rerun with --emit-colouring")
    hypergraph, _ = instance_hypergraph(instance)
    colouring = decode_colouring(report.colouring, instance.n)
    if report.notion != SUBSET_CF:
        return validate(hypergraph, colouring, report.notion, report.t)
    if report.algorithm in (Algorithm.UNION_PAIRS.value, Algorithm.INTERVAL_UNION.value):
        return union_verdict(hypergraph, colouring, instance.seed)[0]
    return validate_subset_cf(hypergraph, colouring)


def bench(family: Family, sizes: Sequence[int], t: int, trials: int, seed: int,
          algorithm: Algorithm) -> List[BenchRow]:
    """Colour counts over sizes and seeded trials."""
    rows = []
    for n in sizes:
        for trial in range(trials):
            instance = build_instance(family, n, t, seed + trial)
            with stopwatch() as elapsed:
                report = run_algorithm(instance, algorithm, t)
            rows.append(BenchRow(family=Family(family).value, n=n, t=report.t, seed=seed + trial,
                                 algorithm=Algorithm(algorithm).value, tokens=report.colours_used,
                                 edges_of_G=report.edges_of_G, valid=report.valid, millis=elapsed["millis"]))
    return rows


# --- argument parsing ---

def build_parser() -> argparse.ArgumentParser:
    """Argument parser with one subparser per command."""
    parser = argparse.ArgumentParser(prog="cfcolour", description="Conflict-free colourings of t-subsets")
    commands = parser.add_subparsers(dest="command", required=True)

    gen = commands.add_parser("gen", help="write an instance file")
    gen.add_argument("--family", required=True, choices=[f.value for f in Family])
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--t", type=int, default=2)
    gen.add_argument("--seed", type=int, default=settings.default_seed)
    gen.add_argument("--out", type=Path)

    colour = commands.add_parser("colour", help="colour an instance and self-verify")
    colour.add_argument("instance", type=Path)
    colour.add_argument("--algorithm", required=True, choices=[a.value for a in Algorithm])
    colour.add_argument("--t", type=int)
    colour.add_argument("--out", type=Path)
    colour.add_argument("--trace", action="store_true")
    colour.add_argument("--emit-colouring", action="store_true")

    exact = commands.add_parser("exact", help="exact optimum by backtracking")
    exact.add_argument("instance", type=Path)
    exact.add_argument("--notion", required=True, choices=[n.value for n in Notion] + [SUBSET_CF])
    exact.add_argument("--t", type=int)
    exact.add_argument("--out", type=Path)
    exact.add_argument("--emit-colouring", action="store_true")

    bench_cmd = commands.add_parser("bench", help="colour counts over sizes and trials as CSV")
    bench_cmd.add_argument("--family", required=True, choices=[f.value for f in Family if f != Family.CUSTOM])
    bench_cmd.add_argument("--algorithm", required=True, choices=[a.value for a in Algorithm])
    bench_cmd.add_argument("--n", type=int, nargs="*", default=[])
    bench_cmd.add_argument("--t", type=int, default=2)
    bench_cmd.add_argument("--trials", type=int, default=1)
    bench_cmd.add_argument("--seed", type=int, default=settings.default_seed)
    bench_cmd.add_argument("--out", type=Path, required=True)

    verify = commands.add_parser("verify", help="re-validate a report's colouring")
    verify.add_argument("instance", type=Path)
    verify.add_argument("--colouring", type=Path, required=True)

    return parser


def emit(document, out: Optional[Path]) -> None:
    """Write a document to `out`, or to stdout."""
    text = write_document(document, out)
    if out is None:
        sys.stdout.write(text)


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Run the command line and return the exit code."""
    logging.basicConfig(level=settings.log_level)
    args = build_parser().parse_args(argv)
    try:
        if args.command == "gen":
            emit(build_instance(args.family, args.n, args.t, args.seed), args.out)
            return 0
        if args.command == "colour":
            instance = load_instance(args.instance)
            report = run_algorithm(instance, args.algorithm, args.t or instance.t, args.trace, args.emit_colouring)
            emit(report, args.out)
            return 0 if report.valid else 1
        if args.command == "exact":
            instance = load_instance(args.instance)
            report = run_exact(instance, args.notion, args.t, args.emit_colouring)
            emit(report, args.out)
            return 0 if report.valid else 1
        if args.command == "bench":
            rows = bench(args.family, args.n, args.t, args.trials, args.seed, args.algorithm)
            write_bench(rows, args.out)
            return 0 if all(row.valid for row in rows) else 1
        verdict = verify_report(load_instance(args.instance), load_report(args.colouring))
        emit(verdict, None)
        return 0 if verdict.valid else 1
    except CFColourError as e:
        logger.error(f"{type(e).__name__}: {e.detail}")
        return e.exit_code
