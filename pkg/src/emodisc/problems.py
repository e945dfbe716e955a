"""Scalable DTLZ1-5 and WFG1-5 benchmark problems.

Each family is registered under a lowercase identifier ("dtlz1" .. "wfg5")
with a bounds builder, a batch evaluator, and a Pareto-optimal-set sampler.
All objectives are minimized.

Conventions baked in here:

* DTLZ uses n variables in [0, 1], the last ``n - M + 1`` being distance
  variables; the Pareto-optimal set fixes those at 0.5.
* WFG uses variable i (1-based) in [0, 2i]. The first ``k`` variables are
  position parameters (default ``k = M - 1``), the remaining ``l = n - k``
  are distance parameters whose optima sit at ``x_i = 0.35 * 2i``.
* WFG2/WFG3 reduce distance parameters pairwise; when ``l`` is odd the final
  distance parameter is paired with itself, so any (M, n) combination is
  accepted without silently changing k.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .core import RandomSource

PROBLEM_NAMES = (
    "dtlz1", "dtlz2", "dtlz3", "dtlz4", "dtlz5",
    "wfg1", "wfg2", "wfg3", "wfg4", "wfg5",
)


@dataclass(frozen=True, eq=False)
class ProblemSpec:
    """A fully configured benchmark instance (family, sizes, bounds)."""

    family: str
    M: int
    n: int
    lower: np.ndarray
    upper: np.ndarray
    position_count: int = 0  # WFG position-parameter count k; 0 for DTLZ


def make_problem(family: str, M: int, n: int, position_count: int | None = None) -> ProblemSpec:
    """Build a ProblemSpec for one of the registered families.

    ``position_count`` applies to WFG only (defaults to M - 1); it must be a
    positive multiple of M - 1 and smaller than n.
    """
    family = family.lower()
    if family not in _BUILDERS:
        raise ValueError(f"unknown problem family: {family!r}")
    if M < 2:
        raise ValueError("M must be at least 2")
    if n < M:
        raise ValueError(f"n must be at least M ({n} < {M})")
    return _BUILDERS[family](family, M, n, position_count)


def evaluate(spec: ProblemSpec, x: np.ndarray) -> np.ndarray:
    """Evaluate decision vector(s) ``x``: (n,) -> (M,) or (N, n) -> (N, M).

    Raises ValueError on wrong length or out-of-bounds components; evaluation
    never clamps its input.
    """
    x = np.asarray(x, dtype=float)
    single = x.ndim == 1
    X = np.atleast_2d(x)
    if X.shape[1] != spec.n:
        raise ValueError(f"expected {spec.n} variables, got {X.shape[1]}")
    if np.any(X < spec.lower) or np.any(X > spec.upper):
        raise ValueError("decision vector out of bounds")
    F = _EVALUATORS[spec.family](spec, X)
    return F[0] if single else F


def sample_pareto_set(spec: ProblemSpec, count: int, rng: RandomSource) -> np.ndarray:
    """Sample ``count`` Pareto-optimal decision vectors, shape (count, n).

    Distance variables are pinned at their known optima and position
    variables sampled uniformly; for families whose front is not the full
    image of the position space (e.g. WFG2), callers should non-dominated
    filter the evaluated samples.
    """
    if count < 1:
        raise ValueError("count must be positive")
    if spec.family not in _SAMPLERS:
        raise NotImplementedError(f"no Pareto-set sampler for family {spec.family!r}")
    return _SAMPLERS[spec.family](spec, count, rng)


def register_family(
    name: str,
    builder: Callable[[str, int, int, int | None], ProblemSpec],
    evaluator: Callable[[ProblemSpec, np.ndarray], np.ndarray],
    sampler: Callable[[ProblemSpec, int, RandomSource], np.ndarray] | None = None,
) -> None:
    """Register a problem family (used by tests to inject synthetic problems)."""
    _BUILDERS[name] = builder
    _EVALUATORS[name] = evaluator
    if sampler is not None:
        _SAMPLERS[name] = sampler


# ---------------------------------------------------------------------------
# DTLZ
# ---------------------------------------------------------------------------


def _dtlz_builder(family, M, n, position_count):
    if position_count is not None:
        raise ValueError("position_count applies to WFG problems only")
    lower = np.zeros(n)
    upper = np.ones(n)
    return ProblemSpec(family, M, n, lower, upper)


def _g_rastrigin(Xm: np.ndarray) -> np.ndarray:
    z = Xm - 0.5
    return 100.0 * (Xm.shape[1] + np.sum(z * z - np.cos(20.0 * np.pi * z), axis=1))


def _g_sphere(Xm: np.ndarray) -> np.ndarray:
    z = Xm - 0.5
    return np.sum(z * z, axis=1)


def _linear_front(Y: np.ndarray, g: np.ndarray) -> np.ndarray:
    """DTLZ1 construction: f_m = 0.5 (1+g) y_1..y_{M-m} (1 - y_{M-m+1})."""
    N, Mm1 = Y.shape
    M = Mm1 + 1
    F = np.empty((N, M))
    cum = np.cumprod(Y, axis=1)  # cum[:, j] = y_1 * ... * y_{j+1}
    for m in range(M):
        head = cum[:, Mm1 - 1 - m] if m < Mm1 else np.ones(N)
        tail = (1.0 - Y[:, Mm1 - m]) if m > 0 else 1.0
        F[:, m] = 0.5 * (1.0 + g) * head * tail
    return F


def _spherical_front(theta: np.ndarray, g: np.ndarray) -> np.ndarray:
    """Concave construction: products of cos/sin of the given angles."""
    N, Mm1 = theta.shape
    M = Mm1 + 1
    F = np.empty((N, M))
    cos = np.cos(theta)
    sin = np.sin(theta)
    cum = np.cumprod(cos, axis=1)
    for m in range(M):
        if m == 0:
            F[:, 0] = cum[:, -1]
        else:
            idx = Mm1 - m
            head = cum[:, idx - 1] if idx > 0 else np.ones(N)
            F[:, m] = head * sin[:, idx]
    return F * (1.0 + g)[:, None]


def _dtlz1(spec, X):
    Y, Xm = X[:, : spec.M - 1], X[:, spec.M - 1 :]
    return _linear_front(Y, _g_rastrigin(Xm))


def _dtlz2(spec, X):
    Y, Xm = X[:, : spec.M - 1], X[:, spec.M - 1 :]
    return _spherical_front(Y * (np.pi / 2.0), _g_sphere(Xm))


def _dtlz3(spec, X):
    Y, Xm = X[:, : spec.M - 1], X[:, spec.M - 1 :]
    return _spherical_front(Y * (np.pi / 2.0), _g_rastrigin(Xm))


def _dtlz4(spec, X, alpha=100.0):
    Y, Xm = X[:, : spec.M - 1], X[:, spec.M - 1 :]
    return _spherical_front(np.power(Y, alpha) * (np.pi / 2.0), _g_sphere(Xm))


def _dtlz5(spec, X):
    Y, Xm = X[:, : spec.M - 1], X[:, spec.M - 1 :]
    g = _g_sphere(Xm)
    theta = np.empty_like(Y)
    theta[:, 0] = Y[:, 0] * (np.pi / 2.0)
    if spec.M > 2:
        scale = np.pi / (4.0 * (1.0 + g))
        theta[:, 1:] = scale[:, None] * (1.0 + 2.0 * g[:, None] * Y[:, 1:])
    return _spherical_front(theta, g)


def _dtlz_sampler(spec, count, rng):
    X = np.full((count, spec.n), 0.5)
    X[:, : spec.M - 1] = rng.random((count, spec.M - 1))
    return X


# ---------------------------------------------------------------------------
# WFG transformations (Huband et al. toolkit functions, vectorized)
# ---------------------------------------------------------------------------


def _clip01(Y):
    # transformation algebra can drift a few ulp outside [0, 1]
    return np.clip(Y, 0.0, 1.0)


def _s_linear(y, A):
    return _clip01(np.abs(y - A) / np.abs(np.floor(A - y) + A))


def _s_decept(y, A, B, C):
    t1 = np.floor(y - A + B) * (1.0 - C + (A - B) / B) / (A - B)
    t2 = np.floor(A + B - y) * (1.0 - C + (1.0 - A - B) / B) / (1.0 - A - B)
    return _clip01(1.0 + (np.abs(y - A) - B) * (t1 + t2 + 1.0 / B))


def _s_multi(y, A, B, C):
    t = np.abs(y - C) / (2.0 * (np.floor(C - y) + C))
    return _clip01((1.0 + np.cos((4.0 * A + 2.0) * np.pi * (0.5 - t)) + 4.0 * B * t * t) / (B + 2.0))


def _b_flat(y, A, B, C):
    v = (
        A
        + np.minimum(0.0, np.floor(y - B)) * A * (B - y) / B
        - np.minimum(0.0, np.floor(C - y)) * (1.0 - A) * (y - C) / (1.0 - C)
    )
    return _clip01(v)


def _b_poly(y, alpha):
    return _clip01(np.power(y, alpha))


def _r_sum(Y, w):
    return _clip01(Y @ w / np.sum(w))


def _r_nonsep_pair(a, b):
    # two-element non-separable reduction (degree 2)
    return _clip01((a + b + 2.0 * np.abs(a - b)) / 3.0)


def _reduce_pairs(Yd):
    """Pairwise non-separable reduction of a distance block; odd width pairs
    the final column with itself."""
    l = Yd.shape[1]
    npairs = l // 2
    out = _r_nonsep_pair(Yd[:, 0 : 2 * npairs : 2], Yd[:, 1 : 2 * npairs : 2])
    if l % 2 == 1:
        out = np.column_stack([out, _r_nonsep_pair(Yd[:, -1], Yd[:, -1])])
    return out


def _group_means(Y, k, M, dist_block):
    """Uniform-weight reduction: M-1 position groups followed by the distance
    block mean."""
    gap = k // (M - 1)
    T = np.empty((len(Y), M))
    for i in range(M - 1):
        T[:, i] = Y[:, i * gap : (i + 1) * gap].mean(axis=1)
    T[:, M - 1] = dist_block.mean(axis=1)
    return _clip01(T)


def _degeneracy(T, A_vec):
    """x_i = max(t_M, A_i) (t_i - 0.5) + 0.5 with x_M = t_M."""
    tM = T[:, -1]
    X = np.empty_like(T)
    X[:, :-1] = np.maximum(tM[:, None], A_vec[None, :]) * (T[:, :-1] - 0.5) + 0.5
    X[:, -1] = tM
    return X


def _h_concave(T):
    N, Mm1 = T.shape
    h = np.empty((N, Mm1 + 1))
    sin = np.sin(T * (np.pi / 2.0))
    cos = np.cos(T * (np.pi / 2.0))
    cum = np.cumprod(sin, axis=1)
    h[:, 0] = cum[:, -1]
    for m in range(1, Mm1 + 1):
        idx = Mm1 - m
        head = cum[:, idx - 1] if idx > 0 else 1.0
        h[:, m] = head * cos[:, idx]
    return _clip01(h)


def _h_convex(T):
    N, Mm1 = T.shape
    h = np.empty((N, Mm1 + 1))
    one_cos = 1.0 - np.cos(T * (np.pi / 2.0))
    one_sin = 1.0 - np.sin(T * (np.pi / 2.0))
    cum = np.cumprod(one_cos, axis=1)
    h[:, 0] = cum[:, -1]
    for m in range(1, Mm1 + 1):
        idx = Mm1 - m
        head = cum[:, idx - 1] if idx > 0 else 1.0
        h[:, m] = head * one_sin[:, idx]
    return _clip01(h)


def _h_linear(T):
    N, Mm1 = T.shape
    h = np.empty((N, Mm1 + 1))
    cum = np.cumprod(T, axis=1)
    h[:, 0] = cum[:, -1]
    for m in range(1, Mm1 + 1):
        idx = Mm1 - m
        head = cum[:, idx - 1] if idx > 0 else 1.0
        h[:, m] = head * (1.0 - T[:, idx])
    return _clip01(h)


def _h_mixed(t1, A=5.0, alpha=1.0):
    aux = 2.0 * A * np.pi
    return _clip01(np.power(1.0 - t1 - np.cos(aux * t1 + 0.5 * np.pi) / aux, alpha))


def _h_disconnected(t1, alpha=1.0, beta=1.0, A=5.0):
    return _clip01(1.0 - np.power(t1, alpha) * np.cos(A * np.pi * np.power(t1, beta)) ** 2)


def _wfg_builder(family, M, n, position_count):
    k = (M - 1) if position_count is None else int(position_count)
    if k < 1 or k % (M - 1) != 0:
        raise ValueError("WFG position count must be a positive multiple of M - 1")
    if k >= n:
        raise ValueError("WFG position count must be smaller than n")
    idx = np.arange(1, n + 1, dtype=float)
    return ProblemSpec(family, M, n, np.zeros(n), 2.0 * idx, position_count=k)


def _wfg_finish(spec, P, H):
    S = 2.0 * np.arange(1, spec.M + 1, dtype=float)
    return P[:, -1][:, None] + S[None, :] * H


def _wfg1(spec, X):
    M, n, k = spec.M, spec.n, spec.position_count
    Y = X / spec.upper
    Y = np.column_stack([Y[:, :k], _s_linear(Y[:, k:], 0.35)])
    Y = np.column_stack([Y[:, :k], _b_flat(Y[:, k:], 0.8, 0.75, 0.85)])
    Y = _b_poly(Y, 0.02)
    w = 2.0 * np.arange(1, n + 1, dtype=float)
    gap = k // (M - 1)
    T = np.empty((len(X), M))
    for i in range(M - 1):
        sl = slice(i * gap, (i + 1) * gap)
        T[:, i] = _r_sum(Y[:, sl], w[sl])
    T[:, M - 1] = _r_sum(Y[:, k:], w[k:])
    P = _degeneracy(_clip01(T), np.ones(M - 1))
    H = _h_convex(P[:, :-1])
    H[:, -1] = _h_mixed(P[:, 0])
    return _wfg_finish(spec, P, H)


def _wfg2_t(spec, X):
    k = spec.position_count
    Y = X / spec.upper
    Y = np.column_stack([Y[:, :k], _s_linear(Y[:, k:], 0.35)])
    reduced = _reduce_pairs(Y[:, k:])
    return _group_means(Y, k, spec.M, reduced)


def _wfg2(spec, X):
    P = _degeneracy(_wfg2_t(spec, X), np.ones(spec.M - 1))
    H = _h_convex(P[:, :-1])
    H[:, -1] = _h_disconnected(P[:, 0])
    return _wfg_finish(spec, P, H)


def _wfg3(spec, X):
    A = np.zeros(spec.M - 1)
    A[0] = 1.0
    P = _degeneracy(_wfg2_t(spec, X), A)
    return _wfg_finish(spec, P, _h_linear(P[:, :-1]))


def _wfg4(spec, X):
    k = spec.position_count
    Y = _s_multi(X / spec.upper, 30.0, 10.0, 0.35)
    T = _group_means(Y, k, spec.M, Y[:, k:])
    P = _degeneracy(T, np.ones(spec.M - 1))
    return _wfg_finish(spec, P, _h_concave(P[:, :-1]))


def _wfg5(spec, X):
    k = spec.position_count
    Y = _s_decept(X / spec.upper, 0.35, 0.001, 0.05)
    T = _group_means(Y, k, spec.M, Y[:, k:])
    P = _degeneracy(T, np.ones(spec.M - 1))
    return _wfg_finish(spec, P, _h_concave(P[:, :-1]))


def _wfg_sampler(spec, count, rng):
    k = spec.position_count
    X = np.empty((count, spec.n))
    X[:, :k] = rng.random((count, k)) * spec.upper[:k]
    X[:, k:] = _scaled_exactly(0.35, spec.upper[k:])
    return X


def _scaled_exactly(fraction, upper):
    """fraction * upper, nudged so division by upper returns ``fraction``.

    Exact round-trips matter for the shift transformations, whose optima sit
    at an exact normalized value; where no representable product divides back
    exactly (the quotient grid is finer than the product grid for some
    scales) the closest value is kept.
    """
    z = fraction * upper
    for i in range(len(z)):
        for _ in range(4):
            q = z[i] / upper[i]
            if q == fraction:
                break
            z[i] = np.nextafter(z[i], np.inf if q < fraction else -np.inf)
    return z


def _wfg1_front(M: int, T: np.ndarray) -> np.ndarray:
    """Objective vectors on the WFG1 Pareto front for position parameters
    ``T`` in [0, 1]^(M-1); the distance coordinate is exactly zero there."""
    H = _h_convex(T)
    H[:, -1] = _h_mixed(T[:, 0])
    return 2.0 * np.arange(1, M + 1, dtype=float) * H


_BUILDERS: dict[str, Callable] = {}
_EVALUATORS: dict[str, Callable] = {}
_SAMPLERS: dict[str, Callable] = {}

for _name, _eval in [
    ("dtlz1", _dtlz1), ("dtlz2", _dtlz2), ("dtlz3", _dtlz3),
    ("dtlz4", _dtlz4), ("dtlz5", _dtlz5),
]:
    register_family(_name, _dtlz_builder, _eval, _dtlz_sampler)

for _name, _eval in [
    ("wfg1", _wfg1), ("wfg2", _wfg2), ("wfg3", _wfg3),
    ("wfg4", _wfg4), ("wfg5", _wfg5),
]:
    register_family(_name, _wfg_builder, _eval, _wfg_sampler)
