"""IGD/GD indicators and analytic reference-set generation.

Reference sets approximate the stored front samples used by common
benchmarking platforms: simplex-lattice constructions for the DTLZ problems
with closed-form fronts, and filtered Pareto-set samples for everything
else. Sets can be exported/imported as headerless CSV so externally sourced
reference files can be swapped in.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np
from scipy.spatial.distance import cdist

from . import problems
from .core import RandomSource
from .problems import ProblemSpec


@dataclass(frozen=True, eq=False)
class ReferenceSet:
    """Objective vectors on (or sampled near) a problem's Pareto front."""

    points: np.ndarray  # (R, M)
    problem: str = ""

    def __post_init__(self):
        pts = np.atleast_2d(np.asarray(self.points, dtype=float))
        if pts.size == 0:
            raise ValueError("reference set must be non-empty")
        object.__setattr__(self, "points", pts)

    def __len__(self) -> int:
        return len(self.points)


def igd(solutions, ref: ReferenceSet) -> float:
    """Mean distance from each reference point to its nearest solution."""
    S = _as_solution_matrix(solutions, ref)
    return float(cdist(ref.points, S).min(axis=1).mean())


def gd(solutions, ref: ReferenceSet) -> float:
    """Mean distance from each solution to its nearest reference point."""
    S = _as_solution_matrix(solutions, ref)
    return float(cdist(S, ref.points).min(axis=1).mean())


def igd_gd(solutions, ref: ReferenceSet) -> tuple[float, float]:
    """Both indicators from a single distance matrix (for per-generation traces)."""
    S = _as_solution_matrix(solutions, ref)
    d = cdist(ref.points, S)
    return float(d.min(axis=1).mean()), float(d.min(axis=0).mean())


def _as_solution_matrix(solutions, ref: ReferenceSet) -> np.ndarray:
    S = np.atleast_2d(np.asarray(solutions, dtype=float))
    if S.size == 0:
        raise ValueError("solution set must be non-empty")
    if S.shape[1] != ref.points.shape[1]:
        raise ValueError(
            f"solution dimension {S.shape[1]} does not match reference dimension {ref.points.shape[1]}"
        )
    return S


def simplex_lattice(M: int, divisions: int) -> np.ndarray:
    """All weight vectors with components i/divisions summing to 1.

    Produces C(divisions + M - 1, M - 1) rows.
    """
    if divisions < 1:
        raise ValueError("divisions must be positive")
    edges = np.array(
        list(itertools.combinations(range(divisions + M - 1), M - 1)), dtype=int
    ).reshape(-1, M - 1)
    first = np.column_stack([edges, np.full(len(edges), divisions + M - 1)])
    second = np.column_stack([np.full(len(edges), -1), edges])
    return (first - second - 1) / float(divisions)


def _lattice_count(M: int, divisions: int) -> int:
    return math.comb(divisions + M - 1, M - 1)


def _lattice_near_target(M: int, target: int) -> np.ndarray:
    """Simplex lattice with point count as close to ``target`` as possible.

    Uses a single layer when one lands closest; otherwise augments the
    largest under-target lattice with an inner layer shrunk toward the
    simplex centroid (w/2 + 1/(2M)), as is standard for many-objective
    reference directions.
    """
    h_low = 1
    while _lattice_count(M, h_low + 1) <= target:
        h_low += 1
    candidates: list[tuple[int, tuple[int, int | None]]] = [(_lattice_count(M, h_low), (h_low, None))]
    if _lattice_count(M, h_low) != target:
        candidates.append((_lattice_count(M, h_low + 1), (h_low + 1, None)))
        outer = _lattice_count(M, h_low)
        for h_inner in range(1, h_low + 1):
            candidates.append((outer + _lattice_count(M, h_inner), (h_low, h_inner)))
    # closest to target; ties prefer more points
    _, best = min(candidates, key=lambda c: (abs(c[0] - target), -c[0]))
    h_outer, h_inner = best
    W = simplex_lattice(M, h_outer)
    if h_inner is not None:
        inner = simplex_lattice(M, h_inner) / 2.0 + 1.0 / (2.0 * M)
        W = np.vstack([W, inner])
    return W


def nondominated_mask(F: np.ndarray, chunk: int = 128) -> np.ndarray:
    """Boolean mask of rows not Pareto-dominated by any other row."""
    F = np.atleast_2d(np.asarray(F, dtype=float))
    N = len(F)
    mask = np.empty(N, dtype=bool)
    for start in range(0, N, chunk):
        block = F[start : start + chunk]
        weakly = np.all(F[None, :, :] <= block[:, None, :], axis=2)
        strictly = np.any(F[None, :, :] < block[:, None, :], axis=2)
        mask[start : start + chunk] = ~np.any(weakly & strictly, axis=1)
    return mask


def build_reference_set(spec: ProblemSpec, target_count: int, rng: RandomSource) -> ReferenceSet:
    """Generate a reference set of roughly ``target_count`` front points.

    DTLZ1 uses the simplex lattice scaled onto its linear front; DTLZ2-4
    project lattice weights radially onto the unit sphere. DTLZ5 and the WFG
    problems evaluate Pareto-set samples, keep the non-dominated ones, and
    downsample.
    """
    if target_count < spec.M:
        raise ValueError("target_count must be at least M")
    family = spec.family
    if family == "dtlz1":
        points = 0.5 * _lattice_near_target(spec.M, target_count)
    elif family in ("dtlz2", "dtlz3", "dtlz4"):
        W = _lattice_near_target(spec.M, target_count)
        points = W / np.linalg.norm(W, axis=1)[:, None]
    elif family == "wfg1":
        # the 0.02-power bias amplifies the last-ulp normalization residue of
        # sampled optima into a visible offset, so this front is built from
        # the shape functions directly (as the reference platforms do)
        T = rng.random((3 * target_count, spec.M - 1))
        F = problems._wfg1_front(spec.M, T)
        F = F[nondominated_mask(F)]
        if len(F) > target_count:
            idx = _choice_without_replacement(rng, len(F), target_count)
            F = F[np.sort(idx)]
        points = F
    elif family == "dtlz5" or family.startswith("wfg"):
        X = problems.sample_pareto_set(spec, 3 * target_count, rng)
        F = problems.evaluate(spec, X)
        F = F[nondominated_mask(F)]
        if len(F) > target_count:
            idx = _choice_without_replacement(rng, len(F), target_count)
            F = F[np.sort(idx)]
        points = F
    else:
        raise NotImplementedError(f"no reference-set construction for family {family!r}")
    return ReferenceSet(points=points, problem=f"{family}_M{spec.M}")


def _choice_without_replacement(rng: RandomSource, n: int, size: int) -> np.ndarray:
    """Deterministic sample of ``size`` distinct indices from range(n)."""
    # partial Fisher-Yates driven by the run's own stream
    idx = np.arange(n)
    for i in range(size):
        j = i + int(rng.integers(0, n - i))
        idx[i], idx[j] = idx[j], idx[i]
    return idx[:size]


def save_reference_csv(ref: ReferenceSet, path) -> None:
    """Write one objective vector per line, comma separated, no header."""
    np.savetxt(path, ref.points, fmt="%.17g", delimiter=",")


def load_reference_csv(path, problem: str = "") -> ReferenceSet:
    """Load a reference set written by ``save_reference_csv`` (or any
    headerless numeric CSV with one point per line)."""
    points = np.atleast_2d(np.loadtxt(path, delimiter=","))
    if not np.all(np.isfinite(points)):
        raise ValueError(f"reference file {path} contains non-finite values")
    return ReferenceSet(points=points, problem=problem)
