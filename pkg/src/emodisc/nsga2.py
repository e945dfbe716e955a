"""The NSGA-II engine: fast non-dominated sorting, crowding distance,
environmental selection, and the generational loop with optional decision
and/or objective discretization hooks.

The loop order per generation is: mating selection -> SBX -> polynomial
mutation -> [decision discretization] -> evaluation -> combine parents and
offspring -> [objective discretization for sorting] -> non-dominated sort +
crowding + truncation. Decision discretization always happens before
evaluation and rounds offspring on the resolution profile of the current
parent population; objective discretization only affects the vectors used
for sorting, never the recorded raw objectives. Crowding distances are
computed on raw objectives.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from . import metrics, problems
from .core import Population, RandomSource
from .discretization import (
    DiscretizationConfig,
    compute_resolution,
    discretize_decision,
    discretize_objectives,
    normalize_objectives,
)
from .problems import ProblemSpec
from .variation import VariationConfig, mutation_batch, sbx_batch, tournament_indices


@dataclass(frozen=True)
class AlgorithmConfig:
    population_size: int = 100
    max_generations: int = 200
    discretization: DiscretizationConfig = field(default_factory=DiscretizationConfig)
    variation: VariationConfig = field(default_factory=VariationConfig)

    def __post_init__(self):
        if self.population_size < 2 or self.population_size % 2 != 0:
            raise ValueError("population_size must be even and at least 2")
        if self.max_generations < 0:
            raise ValueError("max_generations must be non-negative")


@dataclass
class GenerationTrace:
    """Indicator values for one generation's parent population."""

    generation: int
    igd: float | None = None
    gd: float | None = None
    population: Population | None = field(default=None, repr=False, compare=False)


@dataclass(eq=False)
class RunRecord:
    """Everything one seeded run produced.

    ``duration_s`` is informational only: it is excluded from equality and
    from the canonical serialized form so reruns compare bit-identical.
    """

    problem: str
    M: int
    n: int
    algorithm: str
    seed: int
    population_size: int
    max_generations: int
    traces: list[GenerationTrace]
    final_decisions: np.ndarray
    final_objectives: np.ndarray
    final_igd: float | None = None
    final_gd: float | None = None
    duration_s: float | None = None

    def __eq__(self, other):
        if not isinstance(other, RunRecord):
            return NotImplemented
        return (
            self.problem == other.problem
            and self.M == other.M
            and self.n == other.n
            and self.algorithm == other.algorithm
            and self.seed == other.seed
            and self.population_size == other.population_size
            and self.max_generations == other.max_generations
            and [(t.generation, t.igd, t.gd) for t in self.traces]
            == [(t.generation, t.igd, t.gd) for t in other.traces]
            and np.array_equal(self.final_decisions, other.final_decisions)
            and np.array_equal(self.final_objectives, other.final_objectives)
            and self.final_igd == other.final_igd
            and self.final_gd == other.final_gd
        )


def fast_nondominated_sort(pop: Population) -> list[np.ndarray]:
    """Partition population indices into fronts by the sorting objectives."""
    if len(pop) == 0:
        raise ValueError("population must be non-empty")
    return nondominated_fronts(pop.F_sort)


def nondominated_fronts(F: np.ndarray) -> list[np.ndarray]:
    """Fronts F_0, F_1, ... of the rows of ``F`` (minimization).

    Within a front no row dominates another; every row of F_{i+1} is
    dominated by at least one row of F_i.
    """
    F = np.atleast_2d(np.asarray(F, dtype=float))
    weakly = np.all(F[:, None, :] <= F[None, :, :], axis=2)
    # i dominates j iff F_i <= F_j everywhere and not F_j <= F_i everywhere
    dominates = weakly & ~weakly.T
    counts = dominates.sum(axis=0)
    assigned = np.zeros(len(F), dtype=bool)
    fronts: list[np.ndarray] = []
    while not assigned.all():
        current = np.flatnonzero((counts == 0) & ~assigned)
        fronts.append(current)
        assigned[current] = True
        counts = counts - dominates[current].sum(axis=0)
    return fronts


def crowding_distance(front_objectives: np.ndarray) -> np.ndarray:
    """NSGA-II crowding distances for one front's objective vectors.

    Boundary members per objective get +inf; interior members accumulate
    normalized neighbor gaps. Fronts of size <= 2 are all +inf, and an
    objective with zero range contributes nothing.
    """
    F = np.atleast_2d(np.asarray(front_objectives, dtype=float))
    N, M = F.shape
    if N == 0:
        raise ValueError("front must be non-empty")
    if N <= 2:
        return np.full(N, np.inf)
    d = np.zeros(N)
    for j in range(M):
        order = np.argsort(F[:, j], kind="stable")
        vals = F[order, j]
        d[order[0]] = d[order[-1]] = np.inf
        span = vals[-1] - vals[0]
        if span > 0.0:
            d[order[1:-1]] += (vals[2:] - vals[:-2]) / span
    return d


def selection_indices(
    F_sort: np.ndarray, F_raw: np.ndarray, target_size: int
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Pick ``target_size`` member indices by (rank, crowding) truncation.

    Returns (indices, ranks, crowdings) aligned with each other. Whole fronts
    fill in rank order; the splitting front is truncated by descending
    crowding distance with ties broken by original index order.
    """
    if len(F_sort) < target_size:
        raise ValueError("combined population smaller than target size")
    chosen: list[np.ndarray] = []
    ranks: list[np.ndarray] = []
    crowds: list[np.ndarray] = []
    filled = 0
    for r, front in enumerate(nondominated_fronts(F_sort)):
        cd = crowding_distance(F_raw[front])
        if filled + len(front) <= target_size:
            chosen.append(front)
            ranks.append(np.full(len(front), r))
            crowds.append(cd)
            filled += len(front)
        else:
            order = np.argsort(-cd, kind="stable")[: target_size - filled]
            chosen.append(front[order])
            ranks.append(np.full(len(order), r))
            crowds.append(cd[order])
            filled = target_size
        if filled == target_size:
            break
    return np.concatenate(chosen), np.concatenate(ranks), np.concatenate(crowds)


def environmental_selection(combined: Population, target_size: int) -> Population:
    """Reduce ``combined`` to ``target_size`` members with ranks and crowding set."""
    idx, rank, crowd = selection_indices(combined.F_sort, combined.F, target_size)
    shared = combined.F_sort is combined.F
    return Population(
        X=combined.X[idx],
        F=combined.F[idx],
        F_sort=None if shared else combined.F_sort[idx],
        rank=rank,
        crowding=crowd,
    )


def _sorted_population(X, F, disc: DiscretizationConfig, target_size: int) -> Population:
    F_sort = (
        discretize_objectives(normalize_objectives(F), disc.objective_decimals)
        if disc.discretizes_objectives
        else None
    )
    return environmental_selection(Population(X, F, F_sort), target_size)


def run(
    problem: ProblemSpec,
    cfg: AlgorithmConfig,
    rng: RandomSource,
    reference_set: metrics.ReferenceSet | None = None,
    *,
    keep_snapshots: bool = False,
    validate_fronts: bool = False,
) -> RunRecord:
    """Execute one seeded NSGA-II run and return its record.

    If ``reference_set`` is given, IGD and GD of the parent population's raw
    objectives are recorded every generation (including generation 0).
    ``keep_snapshots`` retains each generation's population on its trace;
    ``validate_fronts`` re-checks the front partition every generation and is
    meant for tests.
    """
    started = time.perf_counter()
    lower, upper = problem.lower, problem.upper
    bounds = (lower, upper)
    disc = cfg.discretization

    X = lower + (upper - lower) * rng.random((cfg.population_size, problem.n))
    if disc.discretizes_decisions:
        X = discretize_decision(X, compute_resolution(X, bounds, disc), bounds)
    F = problems.evaluate(problem, X)
    pop = _sorted_population(X, F, disc, cfg.population_size)

    traces = [_trace(0, pop, reference_set, keep_snapshots)]
    if validate_fronts:
        _check_front_partition(pop)

    for t in range(1, cfg.max_generations + 1):
        parents = tournament_indices(pop.rank, pop.crowding, cfg.population_size, rng)
        C1, C2 = sbx_batch(
            pop.X[parents[0::2]], pop.X[parents[1::2]], cfg.variation, lower, upper, rng
        )
        Q = np.empty_like(pop.X)
        Q[0::2] = C1
        Q[1::2] = C2
        Q = mutation_batch(Q, cfg.variation, lower, upper, rng)
        if disc.discretizes_decisions:
            # resolution derives from the current parent population's spread;
            # offspring spread stays wide under variation, which would pin the
            # grid at its coarsest and lose the adaptive refinement
            Q = discretize_decision(Q, compute_resolution(pop.X, bounds, disc), bounds)
        QF = problems.evaluate(problem, Q)
        pop = _sorted_population(
            np.vstack([pop.X, Q]), np.vstack([pop.F, QF]), disc, cfg.population_size
        )
        traces.append(_trace(t, pop, reference_set, keep_snapshots))
        if validate_fronts:
            _check_front_partition(pop)

    return RunRecord(
        problem=problem.family,
        M=problem.M,
        n=problem.n,
        algorithm=disc.strategy,
        seed=rng.seed,
        population_size=cfg.population_size,
        max_generations=cfg.max_generations,
        traces=traces,
        final_decisions=pop.X,
        final_objectives=pop.F,
        final_igd=traces[-1].igd,
        final_gd=traces[-1].gd,
        duration_s=time.perf_counter() - started,
    )


def _trace(generation, pop, reference_set, keep_snapshots) -> GenerationTrace:
    igd_val = gd_val = None
    if reference_set is not None:
        igd_val, gd_val = metrics.igd_gd(pop.F, reference_set)
    return GenerationTrace(
        generation=generation,
        igd=igd_val,
        gd=gd_val,
        population=pop if keep_snapshots else None,
    )


def _check_front_partition(pop: Population) -> None:
    """Assert the stored ranks form a valid front partition of sort objectives."""
    F = pop.F_sort
    ranks = pop.rank
    for r in range(int(ranks.max()) + 1):
        front = np.flatnonzero(ranks == r)
        for i in front:
            for j in front:
                if _dominates_rows(F[i], F[j]):
                    raise AssertionError(f"intra-front dominance at rank {r}")
        if r > 0:
            prev = np.flatnonzero(ranks == r - 1)
            for j in front:
                if not any(_dominates_rows(F[i], F[j]) for i in prev):
                    raise AssertionError(f"member of front {r} lacks a dominator in front {r - 1}")


def _dominates_rows(a, b) -> bool:
    return bool(np.all(a <= b) and np.any(a < b))
