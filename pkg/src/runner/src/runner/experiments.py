"""
Experiment kinds and the grid runner.

Every kind is a function from one grid row to a ``RowResult``, registered
with ``@experiment_kind``. ``run_experiment`` runs the rows in worker processes and
writes them in grid order as they complete, then derives the monotonicity
column, the run-level check and the JSON summary.
"""

import logging
import math
import re
import time
from collections.abc import Callable, Sequence
from functools import cached_property, partial

import numpy as np
from conf import get_worker_count
from graphs import (
    AbelianGroup,
    BoxGraph,
    CayleyGraph,
    FamilyGraph,
    GroupElement,
    build_graph,
    cayley_graph,
    coset_partition,
    generates,
    parse_descriptor,
    quotient_graph,
)
from isoperimetry import (
    exhaustive_iso_profile,
    growth_profile,
    local_search_iso,
    relative_growth_check,
    sparse_iso_sweep,
)
from percolation import (
    blocked_cycle_count,
    column_neighbourhood_size,
    crossing_probability,
    embedding_containment_check,
    expected_blocked_cycles,
    mc_giant,
    quotient_containment_check,
    two_point,
)
from potential import (
    DirichletSystem,
    boundary_ring,
    centre_vertex,
    effective_conductance,
    green_matrix,
    hitting_conductance,
    sample_gff_batch,
    verify_gff_bound,
    witness_identity_check,
)
from progressions import certify_corpus, random_corpus

from runner.chart import plot_results
from runner.models import (
    ExperimentSpec,
    ResultRow,
    RowBudgetError,
    RowResult,
    RunSummary,
    ScanRow,
    SpecError,
)
from runner.scan import gap_trend_holds, monotone_step, sharp_threshold_scan
from runner.workers import run_rows
from runner.writer import ResultWriter

logger = logging.getLogger(__name__)

_TUPLE = re.compile(r"\(([^)]*)\)")
_MISSING = object()


class RowContext:
    """One grid row as seen by an experiment kind."""

    def __init__(
        self,
        spec: ExperimentSpec,
        index: int,
        params: dict[str, int | float | str],
        descriptor: str | None,
        workers: int | None,
    ):
        self.spec = spec
        self.index = index
        self.params = params
        self.descriptor = descriptor
        self.workers = workers

    @property
    def seed(self) -> int:
        return self.spec.seed

    def value(self, name: str, default=_MISSING):
        if name in self.params:
            return self.params[name]
        if default is _MISSING:
            raise SpecError(f"{self.spec.kind} needs a grid parameter {name!r}")
        return default

    def get_float(self, name: str, default=_MISSING) -> float:
        return float(self.value(name, default))

    def get_int(self, name: str, default=_MISSING) -> int:
        value = self.value(name, default)
        if isinstance(value, float) and not value.is_integer():
            raise SpecError(f"Grid parameter {name!r} must be an integer, got {value}")
        return int(value)

    @property
    def trials(self) -> int:
        trials = self.get_int("trials", self.spec.trials)
        if trials > self.spec.trial_budget():
            raise RowBudgetError(f"{trials} trials exceed the budget of {self.spec.trial_budget()}")
        return trials

    @cached_property
    def family(self) -> FamilyGraph:
        if self.descriptor is None:
            raise SpecError(f"{self.spec.kind} needs a graph descriptor")
        family = parse_descriptor(self.descriptor)
        if family.graph.edge_count > self.spec.edge_budget():
            raise RowBudgetError(
                f"{self.descriptor} has {family.graph.edge_count} edges, "
                f"over the budget of {self.spec.edge_budget()}"
            )
        return family


type RowRunner = Callable[[RowContext], RowResult]
type RunCheck = Callable[[list[ResultRow]], bool | None]


class Experiment:
    """A registered experiment kind."""

    def __init__(
        self,
        kind: str,
        run: RowRunner,
        extra_columns: Sequence[str],
        sweep: str | None,
        increasing: bool,
        default_graph: str | None,
        finish: RunCheck | None,
    ):
        self.kind = kind
        self.run = run
        self.extra_columns = list(extra_columns)
        self.sweep = sweep
        self.increasing = increasing
        self.default_graph = default_graph
        self.finish = finish

    def columns(self, spec: ExperimentSpec) -> list[str]:
        return [
            "kind",
            "row",
            "graph",
            *spec.grid,
            "estimate",
            "stderr",
            "check",
            "monotone",
            *self.extra_columns,
            "status",
            "message",
            "runtime",
        ]

    def descriptor(self, spec: ExperimentSpec, params: dict[str, int | float | str]) -> str | None:
        template = spec.graph or self.default_graph
        if template is None:
            return None
        try:
            return template.format(**params)
        except KeyError as e:
            raise SpecError(f"Descriptor {template!r} refers to {e} which is not a grid parameter") from None

    def chart_parameter(self, spec: ExperimentSpec) -> str | None:
        if self.sweep in spec.grid:
            return self.sweep
        for name, values in spec.grid.items():
            if len(values) > 1 and all(isinstance(v, int | float) for v in values):
                return name
        return None


EXPERIMENTS: dict[str, Experiment] = {}


def experiment_kind(
    kind: str,
    extra: Sequence[str] = (),
    sweep: str | None = None,
    increasing: bool = True,
    default_graph: str | None = None,
    finish: RunCheck | None = None,
) -> Callable[[RowRunner], RowRunner]:
    def register(run: RowRunner) -> RowRunner:
        EXPERIMENTS[kind] = Experiment(kind, run, extra, sweep, increasing, default_graph, finish)
        return run

    return register


@experiment_kind("giant-grid", extra=("vertices", "edges"), sweep="p")
def giant_grid(ctx: RowContext) -> RowResult:
    G = ctx.family.graph
    estimate = mc_giant(
        G, ctx.get_float("p"), ctx.get_float("alpha", 0.5), ctx.trials, ctx.seed, ctx.workers
    )
    return RowResult(
        estimate=estimate.estimate,
        stderr=estimate.stderr,
        extra={"vertices": G.vertex_count, "edges": G.edge_count},
    )


@experiment_kind(
    "elongated-torus-phase",
    extra=("blocked_mean", "blocked_expected", "blocked_stderr", "blocked_formula"),
    sweep="m",
    default_graph="torus:n={n},m={m}",
)
def elongated_torus_phase(ctx: RowContext) -> RowResult:
    """
    Giant probability on (Z/nZ) × (Z/mZ) next to the count of even columns
    whose whole edge neighbourhood is closed. The count is compared with
    ⌊n/2⌋(1−p)^k, k the neighbourhood size (3m once m ≥ 3).
    """
    torus = ctx.family.source
    if not isinstance(torus, CayleyGraph) or len(getattr(torus.group, "moduli", ())) != 2:
        raise SpecError(f"{ctx.descriptor} is not an elongated torus")
    n, m = torus.group.moduli
    p = ctx.get_float("p")
    giant = mc_giant(torus.graph, p, ctx.get_float("alpha", 0.5), ctx.trials, ctx.seed, ctx.workers)

    samples = ctx.get_int("blocked_trials", min(ctx.trials, 50))
    counts = np.array([blocked_cycle_count(torus, p, ctx.seed, t) for t in range(samples)])
    per_column = (1.0 - p) ** column_neighbourhood_size(torus)
    expected = (n // 2) * per_column
    stderr = math.sqrt((n // 2) * per_column * (1.0 - per_column) / samples)
    check = abs(counts.mean() - expected) <= 3 * stderr
    if "max_giant" in ctx.params:
        check = check and giant.estimate <= ctx.get_float("max_giant")
    return RowResult(
        estimate=giant.estimate,
        stderr=giant.stderr,
        check=bool(check),
        extra={
            "blocked_mean": float(counts.mean()),
            "blocked_expected": expected,
            "blocked_stderr": stderr,
            "blocked_formula": expected_blocked_cycles(n, m, p),
        },
    )


@experiment_kind("progression-corpus", extra=("instances", "certified", "failures", "max_volume"))
def progression_corpus(ctx: RowContext) -> RowResult:
    count = ctx.get_int("count", 200)
    instances = random_corpus(
        ctx.seed,
        count,
        max_order=ctx.get_int("max_order", 4096),
        max_rank=ctx.get_int("max_rank", 3),
        max_generators=ctx.get_int("max_generators", 3),
    )
    records = certify_corpus(instances, workers=ctx.workers)
    certified = sum(record.certified for record in records)
    for record in records:
        if not record.certified:
            logger.warning(f"Instance {record.index} on Z{record.moduli} failed: {record.error}")
    return RowResult(
        estimate=certified / count,
        check=certified == count,
        extra={
            "instances": count,
            "certified": certified,
            "failures": count - certified,
            "max_volume": max((record.volume for record in records), default=0),
        },
    )


def _covariance_z(green, samples: int, seed: int) -> float:
    """Largest |empirical − 𝐆_B| over interior pairs, in standard errors."""
    interior = green.system.interior
    fields = sample_gff_batch(green, samples, seed)[:, interior]
    expected = green.matrix
    diagonal = np.diag(expected)
    stderr = np.sqrt((np.outer(diagonal, diagonal) + expected**2) / samples)
    return float((np.abs(np.cov(fields.T) - expected) / stderr).max())


@experiment_kind(
    "gff-verify",
    extra=("conductance", "bound", "witness_deviation", "covariance_z"),
    default_graph="grid:n={n}",
)
def gff_verify(ctx: RowContext) -> RowResult:
    """The GFF connection bound on a box with its outer ring as boundary and A the centre."""
    box = ctx.family.source
    if not isinstance(box, BoxGraph):
        raise SpecError(f"{ctx.descriptor} is not a box")
    G = box.graph
    ring, centre = boundary_ring(box), [centre_vertex(box)]
    report = verify_gff_bound(G, ring, centre, ctx.get_int("gff_samples", 200), ctx.trials, ctx.seed)
    green = green_matrix(DirichletSystem(G, ring))
    witness = witness_identity_check(green, centre, ring)
    check = report.holds and witness < 1e-8

    covariance_samples = ctx.get_int("covariance_samples", 0)
    covariance_z = None
    if covariance_samples:
        covariance_z = _covariance_z(green, covariance_samples, ctx.seed)
        check = check and covariance_z <= 5.0
    return RowResult(
        estimate=report.estimate,
        stderr=report.total_stderr,
        check=check,
        extra={
            "conductance": report.conductance,
            "bound": report.bound,
            "witness_deviation": witness,
            "covariance_z": covariance_z,
        },
    )


def _reaches_target(rows: list[ResultRow]) -> bool:
    return any(row.extra.get("reaches_target") for row in rows if row.status == "ok")


@experiment_kind(
    "box-connectivity", extra=("target", "reaches_target"), sweep="p", finish=_reaches_target
)
def box_connectivity(ctx: RowContext) -> RowResult:
    """P_p(corner ↔ opposite corner) on a box; the run passes once some p reaches the target."""
    G = ctx.family.graph
    target = ctx.get_float("target", 0.99)
    estimate = two_point(
        G, ctx.get_float("p"), 0, G.vertex_count - 1, ctx.trials, ctx.seed, ctx.workers
    )
    return RowResult(
        estimate=estimate.estimate,
        stderr=estimate.stderr,
        extra={"target": target, "reaches_target": estimate.estimate >= target},
    )


@experiment_kind("crossing", extra=("tolerance",), sweep="p")
def crossing(ctx: RowContext) -> RowResult:
    """Left-right crossing of B(n, n); at p = 1/2 it must sit within 4 standard errors of 1/2."""
    p, trials = ctx.get_float("p"), ctx.trials
    estimate = crossing_probability(ctx.get_int("n"), p, trials, ctx.seed)
    check, tolerance = None, None
    if p == 0.5:
        tolerance = 4 * 0.5 / math.sqrt(trials)
        check = abs(estimate.estimate - 0.5) <= tolerance
    return RowResult(
        estimate=estimate.estimate,
        stderr=estimate.stderr,
        check=check,
        extra={"tolerance": tolerance},
    )


def parse_generators(text: str) -> list[list[int]]:
    """Group elements written as ``(1,0),(0,1)``."""
    generators = [[int(c) for c in body.split(",") if c.strip()] for body in _TUPLE.findall(text)]
    if not generators:
        raise ValueError(f"Expected generators like (1,0),(0,1), got {text!r}")
    return generators


def _generated_subgroup(group, generators: Sequence[Sequence[int]]) -> list[GroupElement]:
    """Closure of the identity under right multiplication by the generators."""
    steps = [group.right_mul_indices(g) for g in generators]
    reached = np.zeros(group.order, dtype=bool)
    frontier = np.array([group.index(group.identity)])
    while frontier.size:
        reached[frontier] = True
        following = np.unique(np.concatenate([step[frontier] for step in steps]))
        frontier = following[~reached[following]]
    return [group.element(int(i)) for i in np.flatnonzero(reached)]


def named_subgroup(cayley: CayleyGraph, text: str | None) -> list[GroupElement]:
    """The subgroup named by ``(a,b),(c,d)`` text; by default the centre of a
    Heisenberg group, otherwise the cyclic subgroup of the last generator.
    """
    group = cayley.group
    if text:
        try:
            return _generated_subgroup(group, parse_generators(text))
        except ValueError as e:
            raise SpecError(str(e)) from None
    if hasattr(group, "center"):
        return group.center()
    return _generated_subgroup(group, [list(cayley.generators)[-1]])


@experiment_kind(
    "coupling-containment",
    extra=("blocks", "quotient_violations", "embedding_violations", "overlap"),
)
def coupling_containment(ctx: RowContext) -> RowResult:
    """
    Per-sample cluster containment for the quotient coupling onto G/H and
    for the rough-embedding coupling along the projection G → G/H.
    """
    cayley = ctx.family.source
    if not isinstance(cayley, CayleyGraph):
        raise SpecError(f"{ctx.descriptor} is not a Cayley graph")
    G, p, samples = cayley.graph, ctx.get_float("p"), ctx.trials
    subgroup = named_subgroup(cayley, str(ctx.value("subgroup", "")))
    orbit_map = coset_partition(cayley.group, subgroup)
    quotient = quotient_containment_check(G, orbit_map, p, samples, ctx.seed)
    Q, projection = quotient_graph(G, orbit_map)
    embedding = embedding_containment_check(G, Q, projection, p, samples, ctx.seed)
    return RowResult(
        estimate=float(quotient.violations + embedding.violations),
        check=quotient.holds and embedding.holds,
        extra={
            "blocks": Q.vertex_count,
            "quotient_violations": quotient.violations,
            "embedding_violations": embedding.violations,
            "overlap": embedding.overlap,
        },
    )


def _random_connected_graph(rng: np.random.Generator, max_vertices: int):
    n = int(rng.integers(3, max_vertices + 1))
    tree = [(int(rng.integers(0, v)), v) for v in range(1, n)]
    extra = rng.integers(0, n, size=(int(rng.integers(0, 2 * n)), 2))
    return build_graph(n, np.concatenate([np.array(tree), extra]))


@experiment_kind("conductance-exactness", extra=("path_deviation", "graphs", "graph_deviation"))
def conductance_exactness(ctx: RowContext) -> RowResult:
    """
    C_eff between the ends of a path with n edges against 1/n, and the
    hitting-probability formula against the current flow on random graphs.
    """
    n = ctx.get_int("n", 1000)
    path = parse_descriptor(f"path:n={n + 1}").graph
    path_deviation = abs(effective_conductance(path, [0], [n]) * n - 1.0)

    rng = np.random.default_rng(ctx.seed)
    count, max_vertices = ctx.get_int("graphs", 50), ctx.get_int("max_vertices", 200)
    graph_deviation = 0.0
    for _ in range(count):
        G = _random_connected_graph(rng, max_vertices)
        order = rng.permutation(G.vertex_count)
        split = int(rng.integers(1, min(4, G.vertex_count - 1) + 1))
        A, B = order[:split], order[split : split + int(rng.integers(1, 4))]
        flow = effective_conductance(G, A, B)
        hitting = hitting_conductance(G, A, B)
        graph_deviation = max(graph_deviation, abs(hitting - flow) / flow)
    return RowResult(
        estimate=max(path_deviation, graph_deviation),
        check=path_deviation <= 1e-10 and graph_deviation <= 1e-9,
        extra={"path_deviation": path_deviation, "graphs": count, "graph_deviation": graph_deviation},
    )


def _iso_corpus(seed: int, count: int, max_vertices: int) -> list[CayleyGraph]:
    """Random connected Cayley graphs of cyclic and rank-two Abelian groups."""
    rng = np.random.default_rng(seed)
    corpus = []
    while len(corpus) < count:
        order = int(rng.integers(4, max_vertices + 1))
        divisors = [d for d in range(2, order // 2 + 1) if order % d == 0]
        if divisors and rng.random() < 0.5:
            first = int(rng.choice(divisors))
            group = AbelianGroup((first, order // first))
        else:
            group = AbelianGroup((order,))
        k = int(rng.integers(1, 4))
        generators = [group.element(int(i)) for i in rng.integers(1, order, size=k)]
        if generates(group, generators):
            corpus.append(cayley_graph(group, generators))
    return corpus


@experiment_kind(
    "iso-oracle",
    extra=("graphs", "matches", "sparse_violations", "growth_violations"),
)
def iso_oracle(ctx: RowContext) -> RowResult:
    """
    Local search against the exhaustive isoperimetric profile for d = 1, 2
    on a random corpus, with the sparse boundary and relative growth
    inequalities swept over the same graphs.
    """
    count, r, rho = ctx.get_int("count", 10), ctx.get_int("r", 1), ctx.get_float("rho", 0.5)
    matches = sparse_violations = growth_violations = 0
    for i, cayley in enumerate(_iso_corpus(ctx.seed, count, ctx.get_int("max_vertices", 18))):
        G = cayley.graph
        profile = exhaustive_iso_profile(G)
        for d in (1, 2):
            exact = profile.min_ratio(d).ratio
            found = local_search_iso(G, d=d, seed=ctx.seed + i).ratio
            matches += math.isclose(found, exact)
        if G.vertex_count <= 16:
            sweep = sparse_iso_sweep(G, r, rho)
        else:
            sweep = sparse_iso_sweep(G, r, rho, samples=ctx.get_int("sparse_samples", 500), seed=ctx.seed + i)
        sparse_violations += sweep.violations
        growth_violations += len(relative_growth_check(growth_profile(G, 0)))
    fraction = matches / (2 * count)
    return RowResult(
        estimate=fraction,
        check=fraction >= 0.9 and sparse_violations == 0 and growth_violations == 0,
        extra={
            "graphs": count,
            "matches": matches,
            "sparse_violations": sparse_violations,
            "growth_violations": growth_violations,
        },
    )


def _scan_rows(rows: list[ResultRow]) -> list[ScanRow]:
    return [
        ScanRow(
            size=int(row.params["L"]),
            descriptor=row.graph or "",
            pc_low=row.extra["pc_low"],
            pc_high=row.extra["pc_high"],
            gap=row.estimate,
            gap_halfwidth=row.stderr,
            resolved=row.extra["resolved"],
            wide=row.extra["wide"],
        )
        for row in rows
        if row.status == "ok"
    ]


def _gap_trend(rows: list[ResultRow]) -> bool:
    return gap_trend_holds(_scan_rows(rows))


@experiment_kind(
    "sharp-threshold",
    extra=("pc_low", "pc_high", "resolved", "wide"),
    default_graph="torus:n={L},m={L}",
    finish=_gap_trend,
)
def sharp_threshold(ctx: RowContext) -> RowResult:
    """p_c at levels ε and 1−ε for one family size L; the run checks the gap trend."""
    template = ctx.spec.graph or "torus:n={L},m={L}"
    row = sharp_threshold_scan(
        template,
        [ctx.get_int("L")],
        ctx.get_float("alpha", 0.5),
        ctx.get_float("eps", 0.25),
        ctx.trials,
        ctx.seed,
        tol=ctx.get_float("tol", 0.01),
        max_trials=ctx.spec.max_trials,
    )[0]
    return RowResult(
        estimate=row.gap,
        stderr=row.gap_halfwidth,
        extra={"pc_low": row.pc_low, "pc_high": row.pc_high, "resolved": row.resolved, "wide": row.wide},
    )


def _run_row(
    experiment: Experiment,
    spec: ExperimentSpec,
    index: int,
    params: dict[str, int | float | str],
    workers: int | None,
) -> ResultRow:
    start = time.perf_counter()
    descriptor = None
    try:
        descriptor = experiment.descriptor(spec, params)
        outcome = experiment.run(RowContext(spec, index, params, descriptor, workers))
    except Exception as e:
        logger.exception(f"Row {index} of {spec.kind} failed")
        return ResultRow(
            kind=spec.kind,
            row=index,
            graph=descriptor,
            params=params,
            status="error",
            message=f"{type(e).__name__}: {e}",
            runtime=time.perf_counter() - start,
        )

    runtime = time.perf_counter() - start
    row = ResultRow(
        kind=spec.kind,
        row=index,
        graph=descriptor,
        params=params,
        estimate=outcome.estimate,
        stderr=outcome.stderr,
        check=outcome.check,
        extra=outcome.extra,
        runtime=runtime,
    )
    if runtime > spec.time_budget():
        logger.warning(f"Row {index} took {runtime:.1f}s, over the budget of {spec.time_budget()}s")
        row.status = "error"
        row.message = f"RowBudgetError: ran {runtime:.1f}s, over the budget of {spec.time_budget()}s"
    return row


def _failed(
    experiment: Experiment,
    spec: ExperimentSpec,
    grid: list[dict[str, int | float | str]],
    index: int,
    message: str,
    runtime: float,
) -> ResultRow:
    """Error row for a row whose process was terminated or died."""
    try:
        descriptor = experiment.descriptor(spec, grid[index])
    except SpecError:
        descriptor = None
    return ResultRow(
        kind=spec.kind,
        row=index,
        graph=descriptor,
        params=grid[index],
        status="error",
        message=message,
        runtime=runtime,
    )


def _params_key(params: dict[str, int | float | str]) -> tuple:
    return tuple(sorted(params.items()))


def _monotone(
    experiment: Experiment, spec: ExperimentSpec, row: ResultRow, done: dict[tuple, ResultRow]
) -> bool | None:
    """Compare a row with the one holding the previous value of the swept parameter."""
    sweep = experiment.sweep
    if sweep is None or sweep not in spec.grid or row.estimate is None:
        return None
    values = spec.grid[sweep]
    position = values.index(row.params[sweep])
    if position == 0:
        return None
    previous = done.get(_params_key({**row.params, sweep: values[position - 1]}))
    if previous is None or previous.estimate is None:
        return None
    return monotone_step(previous, row, increasing=experiment.increasing)


def run_experiment(spec: ExperimentSpec) -> RunSummary:
    """
    Run every grid row of the spec and stream them to ``spec.output``.

    Rows run in child processes, ``get_worker_count()`` at a time, and are
    written in grid order; a row over its wall-clock budget is terminated.
    A failing row is recorded with ``status="error"`` and the run
    continues. Every row uses ``spec.seed``, so neighbouring grid values
    share their random numbers and the output is reproducible.
    """
    experiment = EXPERIMENTS[spec.kind]
    grid = spec.rows()
    workers = min(get_worker_count(), len(grid))
    logger.info(f"Running {spec.kind}: {len(grid)} rows on {workers} workers, seed {spec.seed}")

    results: list[ResultRow] = []
    done: dict[tuple, ResultRow] = {}
    with ResultWriter(spec.output, experiment.columns(spec), experiment.extra_columns) as writer:

        def record(row: ResultRow) -> None:
            row.monotone = _monotone(experiment, spec, row, done)
            if row.monotone is False:
                logger.warning(f"Row {row.row} moves against the expected direction of {experiment.sweep}")
            done[_params_key(row.params)] = row
            results.append(row)
            writer.write(row)

        # a lone row process may use the trial workers itself
        inner = None if workers <= 1 else 1
        tasks = [
            partial(_run_row, experiment, spec, index, params, inner) for index, params in enumerate(grid)
        ]
        failure = partial(_failed, experiment, spec, grid)
        for row in run_rows(tasks, workers, spec.time_budget(), failure):
            record(row)

        run_check = experiment.finish(results) if experiment.finish else None
        errors = sum(row.status == "error" for row in results)
        failed = sum(row.status == "ok" and not row.passed for row in results)
        chart = None
        if spec.chart:
            parameter = experiment.chart_parameter(spec)
            if parameter is None:
                logger.warning(f"No numeric swept parameter to chart for {spec.kind}")
            else:
                chart = plot_results(results, parameter, spec.output.with_suffix(".png"))
        summary = RunSummary(
            kind=spec.kind,
            seed=spec.seed,
            rows=len(results),
            errors=errors,
            failed_checks=failed,
            run_check=run_check,
            passed=errors == 0 and failed == 0 and run_check is not False,
            output=spec.output,
            chart=chart,
        )
        writer.write_summary(summary)

    logger.info(
        f"{spec.kind} finished: {summary.rows} rows, {errors} errors, {failed} failed checks, "
        f"passed={summary.passed}"
    )
    return summary
