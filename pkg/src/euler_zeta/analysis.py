"""Characteristic-function inequalities, the Q(t) profile and translation searches.

For a characteristic function ``f``,
``|f(t1) - f(t2)|^2 <= 4 |1 - f(t1 - t2)|``. Multiplying through by ``Z(sigma)^2``
gives the scaled form on ``Z`` itself; replacing ``Z`` by its log series gives
the log form, which holds when every power sum is nonnegative.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .evaluator import (
    DEFAULT_BOUNDS,
    as_vector,
    check_point,
    eval_log_many,
    eval_product_many,
    product_majorant,
    truncation_tail_bound,
)
from .spec import EulerProductSpec, TruncationBounds

__all__ = [
    "GapReport",
    "plain_gap",
    "scaled_gap",
    "log_gap",
    "q_profile",
    "q_profile_plain",
    "SearchResult",
    "almost_period_search",
    "shifted_pair_search",
    "prime_tail",
]

_CHUNK = 1 << 15
_STAGES = (100, 10**4)


@dataclass(frozen=True)
class GapReport:
    kind: str  # plain | scaled | log
    sigma: tuple
    t1: tuple
    t2: tuple
    gap: float
    tail_bound: float


def _pts(spec, *ts):
    d = spec.dimension
    return np.stack([as_vector(t, d) for t in ts])


def _gap_values(spec, sigma, t1, t2, bounds, log: bool):
    d = spec.dimension
    t1, t2 = as_vector(t1, d), as_vector(t2, d)
    fn = eval_log_many if log else eval_product_many
    z0, zd, z1, z2 = fn(spec, sigma, _pts(spec, np.zeros(d), t1 - t2, t1, t2), bounds)
    return z0, zd, z1, z2, t1, t2


def _report(kind, spec, sigma, t1, t2, gap, bounds):
    return GapReport(kind, tuple(as_vector(sigma, spec.dimension)), tuple(t1), tuple(t2), float(gap),
                     truncation_tail_bound(spec, sigma, bounds))


def plain_gap(spec: EulerProductSpec, sigma, t1, t2, bounds: TruncationBounds = DEFAULT_BOUNDS) -> GapReport:
    """``4|1 - f(t1 - t2)| - |f(t1) - f(t2)|^2`` for the normalized ``f``."""
    z0, zd, z1, z2, t1, t2 = _gap_values(spec, sigma, t1, t2, bounds, False)
    gap = 4 * abs(1 - zd / z0) - abs(z1 / z0 - z2 / z0) ** 2
    return _report("plain", spec, sigma, t1, t2, gap, bounds)


def scaled_gap(spec: EulerProductSpec, sigma, t1, t2, bounds: TruncationBounds = DEFAULT_BOUNDS) -> GapReport:
    """``4|Z(s)||Z(s) - Z(s + i(t1 - t2))| - |Z(s + it1) - Z(s + it2)|^2`` at ``s = sigma``."""
    z0, zd, z1, z2, t1, t2 = _gap_values(spec, sigma, t1, t2, bounds, False)
    gap = 4 * abs(z0) * abs(z0 - zd) - abs(z1 - z2) ** 2
    return _report("scaled", spec, sigma, t1, t2, gap, bounds)


def log_gap(spec: EulerProductSpec, sigma, t1, t2, bounds: TruncationBounds = DEFAULT_BOUNDS) -> GapReport:
    """The scaled gap with ``Z`` replaced by its prime-power log series."""
    z0, zd, z1, z2, t1, t2 = _gap_values(spec, sigma, t1, t2, bounds, True)
    gap = 4 * abs(z0) * abs(z0 - zd) - abs(z1 - z2) ** 2
    return _report("log", spec, sigma, t1, t2, gap, bounds)


def _profile(spec, sigma, shift, t_grid, bounds, log):
    d = spec.dimension
    u = _unit(spec, None)
    t_grid = np.asarray(t_grid, dtype=np.float64)
    fn = eval_log_many if log else eval_product_many
    head = fn(spec, sigma, np.stack([np.zeros(d), shift * u]), bounds)
    a = fn(spec, sigma, t_grid[:, None] * u, bounds)
    b = fn(spec, sigma, (t_grid + shift)[:, None] * u, bounds)
    c = 4 * abs(head[0]) * abs(head[0] - head[1])
    return np.column_stack([t_grid, c - np.abs(a - b) ** 2])


def q_profile(spec: EulerProductSpec, sigma, shift: float, t_grid, bounds: TruncationBounds = DEFAULT_BOUNDS):
    """``(t, Q(t))`` rows, ``Q(t) = 4|L(s)||L(s) - L(s + i shift)| - |L(s + it) - L(s + i(t + shift))|^2``
    with ``L`` the log series at ``s = sigma``."""
    return _profile(spec, sigma, shift, t_grid, bounds, True)


def q_profile_plain(spec: EulerProductSpec, sigma, shift: float, t_grid, bounds: TruncationBounds = DEFAULT_BOUNDS):
    """Same as :func:`q_profile` with ``Z`` in place of its log."""
    return _profile(spec, sigma, shift, t_grid, bounds, False)


# ---------------------------------------------------------------- searches


@dataclass
class SearchResult:
    found: bool
    value: Optional[float] = None  # tau or t
    index: Optional[int] = None
    difference: Optional[float] = None
    tail_bound: float = 0.0
    scanned: int = 0
    notes: list = field(default_factory=list)


def _unit(spec, direction):
    d = spec.dimension
    if direction is None:
        if d != 1:
            raise ValueError("a direction vector is required when the dimension exceeds 1")
        return np.ones(1)
    u = as_vector(direction, d)
    n = np.linalg.norm(u)
    if n == 0:
        raise ValueError("direction must be nonzero")
    return u / n


def prime_tail(spec: EulerProductSpec, sigma, P: int) -> float:
    """Bound on ``|log prod_{p>P}|`` (the product has no ``r`` truncation)."""
    v = check_point(spec, sigma)
    out = 0.0
    for l in range(1, spec.phi + 1):
        if spec.rank_is_finite(l):
            if max(spec.special_primes(l), default=0) > P:
                return float("inf")
            continue
        out += spec.eta * 2.0 * P ** (1 - v[l - 1]) / (v[l - 1] - 1)
    return out


def _stage_slack(spec, sigma, P, R, log):
    if log:
        return 2.0 * truncation_tail_bound(spec, sigma, TruncationBounds(P=P, R=R))
    b = prime_tail(spec, sigma, P)
    return 2.0 * product_majorant(spec, sigma, TruncationBounds(P=P, R=R)) * float(np.expm1(b))


def _grid_search(spec, sigma, pairs, epsilon, n_grid, start, bounds, log):
    """Smallest grid index ``k`` with ``|F(a_k) - F(b_k)| < epsilon``.

    ``pairs(ks)`` maps grid indices to two ``(n, d)`` arrays of ``t`` vectors.
    Cheap truncations discard indices whose difference provably stays above
    ``epsilon`` at the full truncation; survivors are re-evaluated in full.
    """
    fn = eval_log_many if log else eval_product_many
    P, R = bounds.P, bounds.R
    stages = [q for q in _STAGES if q < P]
    slack = [_stage_slack(spec, sigma, q, R, log) for q in stages]
    for lo in range(start, n_grid + 1, _CHUNK):
        ks = np.arange(lo, min(n_grid + 1, lo + _CHUNK))
        for q, sl in zip(stages, slack):
            if not ks.size:
                break
            a, b = pairs(ks)
            tb = TruncationBounds(P=q, R=R)
            diff = np.abs(fn(spec, sigma, a, tb) - fn(spec, sigma, b, tb))
            ks = ks[diff < epsilon + sl]
        if not ks.size:
            continue
        a, b = pairs(ks)
        diff = np.abs(fn(spec, sigma, a, bounds) - fn(spec, sigma, b, bounds))
        hit = np.flatnonzero(diff < epsilon)
        if hit.size:
            i = hit[0]
            return int(ks[i]), float(diff[i]), int(ks[i] - start + 1)
    return None, None, n_grid - start + 1


def _check_eps(epsilon, step, t_max):
    if not epsilon > 0:
        raise ValueError("epsilon must be positive")
    if not step > 0:
        raise ValueError("step must be positive")
    if not t_max > 0:
        raise ValueError("the search range must be positive")


def almost_period_search(spec: EulerProductSpec, sigma, epsilon: float, tau_max: float = 1e4, step: float = 0.01,
                         direction=None, log: bool = False, tau_min: float = 0.0,
                         bounds: TruncationBounds = DEFAULT_BOUNDS) -> SearchResult:
    """Smallest grid ``tau`` in ``(0, tau_max]`` with ``|Z(sigma + i tau u) - Z(sigma)| < epsilon``.

    By continuity small ``tau`` qualify for any ``epsilon``; ``tau_min`` skips
    that neighbourhood so the result is a genuine return of the function.
    """
    _check_eps(epsilon, step, tau_max)
    u = _unit(spec, direction)
    d = spec.dimension
    n_grid = int(np.floor(tau_max / step + 1e-9))

    def pairs(ks):
        return (ks * step)[:, None] * u, np.zeros((len(ks), d))

    start = max(1, int(np.ceil(tau_min / step - 1e-9)))
    k, diff, scanned = _grid_search(spec, sigma, pairs, epsilon, n_grid, start, bounds, log)
    tail = truncation_tail_bound(spec, sigma, bounds)
    if k is None:
        return SearchResult(False, scanned=scanned, tail_bound=tail)
    return SearchResult(True, k * step, k, diff, tail, scanned)


def shifted_pair_search(spec: EulerProductSpec, sigma, lam, beta: float, epsilon: float, t_max: float = 1e4,
                        step: float = 0.01, direction=None, allow_zero: bool = False, log: bool = False,
                        t_min: float = 0.0, bounds: TruncationBounds = DEFAULT_BOUNDS) -> SearchResult:
    """Smallest grid ``t`` with ``|Z(sigma + i lam + i beta t u) - Z(sigma + i t u)| < epsilon``.

    ``t = 0`` is skipped unless ``allow_zero`` is set; ``t_min`` raises the start.
    """
    if beta == 1:
        raise ValueError("beta must differ from 1")
    _check_eps(epsilon, step, t_max)
    u = _unit(spec, direction)
    lam_v = as_vector(lam, spec.dimension)
    n_grid = int(np.floor(t_max / step + 1e-9))

    def pairs(ks):
        t = (ks * step)[:, None]
        return lam_v[None, :] + beta * t * u, t * u

    start = max(0 if allow_zero else 1, int(np.ceil(t_min / step - 1e-9)))
    k, diff, scanned = _grid_search(spec, sigma, pairs, epsilon, n_grid, start, bounds, log)
    tail = truncation_tail_bound(spec, sigma, bounds)
    if k is None:
        return SearchResult(False, scanned=scanned, tail_bound=tail)
    return SearchResult(True, k * step, k, diff, tail, scanned)
