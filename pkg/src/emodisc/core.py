"""Shared domain types: populations, Pareto dominance, and seeded randomness.

Everything works on minimization objectives. Decision and objective vectors
are plain 1-D float64 arrays; a population stores its members as row-stacked
matrices so the search operators can stay vectorized.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


def dominates(a: np.ndarray, b: np.ndarray) -> bool:
    """True iff objective vector ``a`` Pareto-dominates ``b`` (minimization).

    ``a`` dominates ``b`` when a_i <= b_i for every objective and a_j < b_j
    for at least one.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape:
        raise ValueError(f"objective vectors differ in length: {a.shape} vs {b.shape}")
    return bool(np.all(a <= b) and np.any(a < b))


def weakly_dominates(a: np.ndarray, b: np.ndarray) -> bool:
    """True iff a_i <= b_i for every objective (reflexive dominance)."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape:
        raise ValueError(f"objective vectors differ in length: {a.shape} vs {b.shape}")
    return bool(np.all(a <= b))


@dataclass(frozen=True)
class Individual:
    """Per-member view of a population row.

    ``sort_objectives`` is the vector non-dominated sorting runs on; it equals
    the raw objectives unless objective-space discretization is active.
    ``rank`` and ``crowding`` are meaningful only after environmental
    selection has been applied to the containing population.
    """

    decision: np.ndarray
    objectives: np.ndarray
    sort_objectives: np.ndarray
    rank: int
    crowding: float


class Population:
    """Row-stacked population: decisions ``X`` (N, n) and objectives ``F`` (N, M).

    ``F_sort`` holds the sorting objectives (same array object as ``F`` when no
    objective discretization is active). ``rank``/``crowding`` are filled by
    environmental selection; until then they are None. Treat all arrays as
    read-only once the population is constructed.
    """

    def __init__(
        self,
        X: np.ndarray,
        F: np.ndarray,
        F_sort: np.ndarray | None = None,
        rank: np.ndarray | None = None,
        crowding: np.ndarray | None = None,
    ):
        X = np.atleast_2d(np.asarray(X, dtype=float))
        F = np.atleast_2d(np.asarray(F, dtype=float))
        if len(X) != len(F):
            raise ValueError(f"decision/objective row counts differ: {len(X)} vs {len(F)}")
        self.X = X
        self.F = F
        self.F_sort = F if F_sort is None else np.atleast_2d(np.asarray(F_sort, dtype=float))
        if self.F_sort.shape != F.shape:
            raise ValueError("sort objectives must match raw objectives in shape")
        self.rank = rank
        self.crowding = crowding

    def __len__(self) -> int:
        return len(self.X)

    @property
    def n_objectives(self) -> int:
        return self.F.shape[1]

    @property
    def n_variables(self) -> int:
        return self.X.shape[1]

    def member(self, i: int) -> Individual:
        return Individual(
            decision=self.X[i],
            objectives=self.F[i],
            sort_objectives=self.F_sort[i],
            rank=int(self.rank[i]) if self.rank is not None else -1,
            crowding=float(self.crowding[i]) if self.crowding is not None else float("nan"),
        )


@dataclass
class RandomSource:
    """Seeded random stream: one source per run, never shared across runs.

    Identical seeds produce identical draw sequences, and a batched draw of
    shape (k, m) consumes the stream exactly like k sequential draws of m.
    """

    seed: int
    _gen: np.random.Generator = field(init=False, repr=False)

    def __post_init__(self):
        if not 0 <= int(self.seed) < 2**64:
            raise ValueError("seed must fit in 64 unsigned bits")
        self.seed = int(self.seed)
        self._gen = np.random.Generator(np.random.PCG64(self.seed))

    def random(self, size=None) -> np.ndarray | float:
        """Uniform floats in [0, 1)."""
        return self._gen.random(size)

    def integers(self, low: int, high: int, size=None) -> np.ndarray | int:
        """Uniform integers in [low, high)."""
        return self._gen.integers(low, high, size=size)
