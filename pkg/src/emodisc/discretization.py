"""Decision-space and objective-space discretization.

Two mechanisms, selectable per run:

* decision rounding ("dd"): each variable is mapped to [0, 1], rounded to an
  adaptive number of decimal places driven by the population standard
  deviation of that variable, and mapped back. Spread-out variables get a
  coarse grid, converged variables a fine one.
* objective gridding ("od"): objective vectors are min-max normalized over
  the population being sorted and rounded to a fixed number of decimal
  places; the rounded vectors replace the raw ones for non-dominated sorting.

"bd" applies both. All rounding is half-away-from-zero so results are
bit-reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import Population

STRATEGIES = ("none", "dd", "od", "bd")

# standard deviation of the uniform distribution on [0, 1]
SIGMA_MAX = 1.0 / np.sqrt(12.0)


@dataclass(frozen=True)
class DiscretizationConfig:
    """Strategy selector plus grid resolutions.

    ``d_min``/``d_max`` bound the adaptive per-variable decimal places used by
    the decision rounding; ``objective_decimals`` is the fixed objective-grid
    resolution.
    """

    strategy: str = "none"
    d_min: int = 2
    d_max: int = 8
    objective_decimals: int = 2

    def __post_init__(self):
        if self.strategy not in STRATEGIES:
            raise ValueError(f"strategy must be one of {STRATEGIES}, got {self.strategy!r}")
        if not 0 <= self.d_min <= self.d_max <= 15:
            raise ValueError("decimal places must satisfy 0 <= d_min <= d_max <= 15")
        if self.objective_decimals < 1:
            raise ValueError("objective_decimals must be at least 1")

    @property
    def discretizes_decisions(self) -> bool:
        return self.strategy in ("dd", "bd")

    @property
    def discretizes_objectives(self) -> bool:
        return self.strategy in ("od", "bd")


@dataclass(frozen=True)
class ResolutionProfile:
    """Per-variable decimal places and the deviations that produced them."""

    decimals: np.ndarray  # (n,) ints in [d_min, d_max]
    sigmas: np.ndarray  # (n,) population standard deviations in [0, 1] coords


def round_half_away(x: np.ndarray, decimals) -> np.ndarray:
    """Round to ``decimals`` places with ties going away from zero.

    ``decimals`` may be a scalar or a per-column array broadcastable against
    ``x``. Idempotent for a fixed resolution.
    """
    scale = np.power(10.0, decimals)
    return np.sign(x) * np.floor(np.abs(x) * scale + 0.5) / scale


def compute_resolution(pop, bounds, cfg: DiscretizationConfig) -> ResolutionProfile:
    """Derive per-variable decimal places from the population spread.

    Each variable is normalized to [0, 1]; its population standard deviation
    sigma (divide-by-N) sets d = round((1 - sigma/sigma_max)(d_max - d_min)
    + d_min), clamped into [d_min, d_max]. Values are sorted per variable
    before the moment computation so the result depends only on the
    population multiset.
    """
    X = pop.X if isinstance(pop, Population) else np.atleast_2d(np.asarray(pop, dtype=float))
    if len(X) == 0:
        raise ValueError("population must be non-empty")
    lower, upper = bounds
    Y = np.sort((X - lower) / (upper - lower), axis=0)
    sigmas = Y.std(axis=0)
    raw = (1.0 - sigmas / SIGMA_MAX) * (cfg.d_max - cfg.d_min) + cfg.d_min
    decimals = np.clip(round_half_away(raw, 0), cfg.d_min, cfg.d_max).astype(int)
    return ResolutionProfile(decimals=decimals, sigmas=sigmas)


def discretize_decision(x: np.ndarray, profile: ResolutionProfile, bounds) -> np.ndarray:
    """Snap decision vector(s) onto the per-variable grid of ``profile``.

    Components are normalized to [0, 1], rounded half-away-from-zero to the
    profile's decimal places, mapped back, and clamped into bounds.
    """
    lower, upper = bounds
    x = np.asarray(x, dtype=float)
    span = upper - lower
    scale = np.power(10.0, profile.decimals)
    # normalized values are non-negative, so half-away equals floor(v + 0.5)
    y = np.floor((x - lower) / span * scale + 0.5) / scale
    return np.clip(lower + y * span, lower, upper)


def normalize_objectives(raw: np.ndarray) -> np.ndarray:
    """Min-max normalize objective vectors columnwise over the given set.

    Columns with zero range map to 0.
    """
    F = np.atleast_2d(np.asarray(raw, dtype=float))
    if F.size == 0:
        raise ValueError("objective set must be non-empty")
    fmin = F.min(axis=0)
    span = F.max(axis=0) - fmin
    out = (F - fmin) / np.where(span > 0.0, span, 1.0)
    out[:, span == 0.0] = 0.0
    return out


def discretize_objectives(normalized: np.ndarray, objective_decimals: int) -> np.ndarray:
    """Round normalized objective vector(s) onto the 10^-decimals grid.

    Inputs must lie in [0, 1] (tolerance 1e-12); rounding is
    half-away-from-zero.
    """
    F = np.asarray(normalized, dtype=float)
    if np.any(F < -1e-12) or np.any(F > 1.0 + 1e-12):
        raise ValueError("normalized objectives must lie in [0, 1]")
    return round_half_away(np.clip(F, 0.0, 1.0), objective_decimals)
