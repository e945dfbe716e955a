"""Real-coded variation: simulated binary crossover, polynomial mutation,
and binary tournament mating selection.

The batch variants operate on row-stacked matrices and are what the engine
uses; the single-vector functions wrap them and consume the random stream
identically.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import Individual, Population, RandomSource


@dataclass(frozen=True)
class VariationConfig:
    """Crossover/mutation rates and distribution indices.

    ``mutation_rate`` of None resolves to 1/n at call time.
    """

    crossover_rate: float = 1.0
    mutation_rate: float | None = None
    eta_crossover: float = 20.0
    eta_mutation: float = 20.0

    def __post_init__(self):
        if not 0.0 <= self.crossover_rate <= 1.0:
            raise ValueError("crossover_rate must be in [0, 1]")
        if self.mutation_rate is not None and not 0.0 <= self.mutation_rate <= 1.0:
            raise ValueError("mutation_rate must be in [0, 1]")
        if self.eta_crossover <= 0 or self.eta_mutation <= 0:
            raise ValueError("distribution indices must be positive")


def sbx_batch(
    P1: np.ndarray,
    P2: np.ndarray,
    cfg: VariationConfig,
    lower: np.ndarray,
    upper: np.ndarray,
    rng: RandomSource,
) -> tuple[np.ndarray, np.ndarray]:
    """SBX on paired parent rows; returns two offspring matrices.

    Per pair, with probability 1 - crossover_rate the offspring are plain
    copies. Otherwise each variable independently crosses with probability
    0.5 using the polynomial spread factor, whose sign is drawn per variable
    (so a child mixes both parents' sides across variables; without the sign
    draw the search stalls on problems with very many variables). Offspring
    midpoints equal parent midpoints until clamping into bounds.
    """
    npairs, n = P1.shape
    cross = rng.random(npairs) < cfg.crossover_rate
    exchange = rng.random((npairs, n)) < 0.5
    active = np.nonzero(cross[:, None] & exchange)
    u = rng.random(active[0].size)
    sign = np.where(rng.random(active[0].size) < 0.5, 1.0, -1.0)
    exponent = 1.0 / (cfg.eta_crossover + 1.0)
    beta = np.where(u <= 0.5, 2.0 * u, 0.5 / (1.0 - u)) ** exponent * sign
    C1 = P1.copy()
    C2 = P2.copy()
    p1, p2 = P1[active], P2[active]
    mid = 0.5 * (p1 + p2)
    spread = beta * (0.5 * (p1 - p2))
    C1[active] = mid + spread
    C2[active] = mid - spread
    np.clip(C1, lower, upper, out=C1)
    np.clip(C2, lower, upper, out=C2)
    return C1, C2


def sbx_crossover(p1, p2, cfg: VariationConfig, bounds, rng: RandomSource):
    """SBX on a single parent pair; see ``sbx_batch``."""
    p1 = np.asarray(p1, dtype=float)
    p2 = np.asarray(p2, dtype=float)
    if p1.shape != p2.shape:
        raise ValueError("parents must have equal length")
    lower, upper = bounds
    C1, C2 = sbx_batch(p1[None, :], p2[None, :], cfg, lower, upper, rng)
    return C1[0], C2[0]


def mutation_batch(
    X: np.ndarray,
    cfg: VariationConfig,
    lower: np.ndarray,
    upper: np.ndarray,
    rng: RandomSource,
) -> np.ndarray:
    """Bounded polynomial mutation applied rowwise.

    Each variable mutates independently with probability mutation_rate
    (1/n by default); the perturbation shrinks to zero at the bounds so
    results stay feasible.
    """
    N, n = X.shape
    rate = cfg.mutation_rate if cfg.mutation_rate is not None else 1.0 / n
    rows, cols = np.nonzero(rng.random((N, n)) < rate)
    out = X.copy()
    if rows.size == 0:
        return out
    u = rng.random(rows.size)
    lo = np.broadcast_to(np.asarray(lower, dtype=float), (n,))[cols]
    hi = np.broadcast_to(np.asarray(upper, dtype=float), (n,))[cols]
    x = X[rows, cols]
    span = hi - lo
    power = cfg.eta_mutation + 1.0
    low_branch = u <= 0.5
    val_low = 2.0 * u + (1.0 - 2.0 * u) * (1.0 - (x - lo) / span) ** power
    val_high = 2.0 * (1.0 - u) + 2.0 * (u - 0.5) * (1.0 - (hi - x) / span) ** power
    delta = np.where(low_branch, val_low ** (1.0 / power) - 1.0, 1.0 - val_high ** (1.0 / power))
    out[rows, cols] = np.clip(x + delta * span, lo, hi)
    return out


def polynomial_mutation(x, cfg: VariationConfig, bounds, rng: RandomSource):
    """Polynomial mutation of a single decision vector; see ``mutation_batch``."""
    lower, upper = bounds
    return mutation_batch(np.asarray(x, dtype=float)[None, :], cfg, lower, upper, rng)[0]


def tournament_indices(
    rank: np.ndarray, crowding: np.ndarray, count: int, rng: RandomSource
) -> np.ndarray:
    """Vectorized binary tournaments: ``count`` winners drawn with replacement.

    Lower rank wins; rank ties go to larger crowding; remaining ties to the
    first-drawn candidate.
    """
    cand = rng.integers(0, len(rank), size=(count, 2))
    a, b = cand[:, 0], cand[:, 1]
    b_wins = (rank[b] < rank[a]) | ((rank[b] == rank[a]) & (crowding[b] > crowding[a]))
    return np.where(b_wins, b, a)


def binary_tournament(pop: Population, rng: RandomSource) -> Individual:
    """Draw two members uniformly (with replacement) and return the winner."""
    if len(pop) == 0:
        raise ValueError("population must be non-empty")
    if pop.rank is None or pop.crowding is None:
        raise ValueError("population needs rank and crowding before tournament selection")
    idx = tournament_indices(pop.rank, pop.crowding, 1, rng)[0]
    return pop.member(int(idx))
