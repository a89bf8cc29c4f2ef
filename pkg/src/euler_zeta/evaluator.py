"""Truncated evaluation of Euler products, their log series and Dirichlet series.

The log of a product is *defined* here by the prime-power series
``sum_p sum_r sum_{l,k} alpha^r p^{-r<c_l,s>} / r``. Away from the real axis this
is in general not the principal logarithm of :func:`eval_product`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence

import numpy as np

from . import kernels
from .numtheory import dirichlet_coefficients, prime_index, primes_up_to
from .spec import EulerProductSpec, TruncationBounds, _has_decay

__all__ = [
    "DomainError",
    "EvalPoint",
    "DEFAULT_BOUNDS",
    "as_vector",
    "check_point",
    "rank_exponents",
    "eval_product",
    "eval_product_many",
    "eval_log",
    "eval_log_many",
    "eval_series",
    "normalized_cf",
    "truncation_tail_bound",
    "product_majorant",
]

DEFAULT_BOUNDS = TruncationBounds()


class DomainError(ValueError):
    """The point lies outside the region of absolute convergence."""


def as_vector(x, d: int) -> np.ndarray:
    """Coerce a scalar or sequence to a length-``d`` float vector."""
    arr = np.atleast_1d(np.asarray(x, dtype=np.float64))
    if arr.shape == (1,) and d > 1:
        raise ValueError(f"expected a {d}-vector, got a scalar")
    if arr.shape != (d,):
        raise ValueError(f"expected a {d}-vector, got shape {arr.shape}")
    return arr


@dataclass(frozen=True)
class EvalPoint:
    sigma: tuple
    t: tuple

    @classmethod
    def of(cls, spec: EulerProductSpec, sigma, t=0.0) -> "EvalPoint":
        d = spec.dimension
        t = np.zeros(d) if np.isscalar(t) and t == 0 else t
        return cls(tuple(as_vector(sigma, d)), tuple(as_vector(t, d)))


# ---------------------------------------------------------------- prime data


@dataclass(frozen=True)
class _PrimeData:
    primes: np.ndarray
    logp: np.ndarray
    alpha: np.ndarray  # (n_primes, phi*eta)
    col_rank: np.ndarray  # rank index (0-based) of each column
    dirs: np.ndarray  # (phi, d)


def _support_primes(spec: EulerProductSpec) -> int:
    top = 0
    for l in range(1, spec.phi + 1):
        if spec.rank_is_finite(l):
            sp = spec.special_primes(l)
            if sp:
                top = max(top, max(sp))
    return top


@lru_cache(maxsize=16)
def _prime_data(spec: EulerProductSpec, P: int) -> _PrimeData:
    primes = primes_up_to(max(P, _support_primes(spec)))
    m = spec.phi * spec.eta
    alpha = np.zeros((len(primes), m), dtype=np.complex128)
    # values are generated per (p mod L, index mod I) class where possible
    for l in range(1, spec.phi + 1):
        cols = slice((l - 1) * spec.eta, l * spec.eta)
        if spec.rank_is_finite(l):
            for p in sorted(spec.special_primes(l)):
                i = int(np.searchsorted(primes, p))
                alpha[i, cols] = [complex(v) for v in spec.values(l, p, i + 1)]
            continue
        cache = {}
        L, I = spec.rank_modulus(l), spec.rank_index_period(l)
        special = spec.special_primes(l)
        has_decay = any(_has_decay(r) for r in spec.rules[l - 1])
        for i, p in enumerate(primes):
            p = int(p)
            if I is None or has_decay or p in special:
                alpha[i, cols] = [complex(v) for v in spec.values(l, p, i + 1)]
                continue
            key = (p % L, (i + 1) % I)
            row = cache.get(key)
            if row is None:
                row = cache[key] = [complex(v) for v in spec.values(l, p, i + 1)]
            alpha[i, cols] = row
    col_rank = np.repeat(np.arange(spec.phi), spec.eta)
    dirs = np.array([spec.direction_floats(l) for l in range(1, spec.phi + 1)], dtype=np.float64)
    return _PrimeData(primes, np.log(primes.astype(np.float64)), alpha, col_rank, dirs)


def rank_exponents(spec: EulerProductSpec, sigma) -> np.ndarray:
    """``v_l = <c_l, sigma>`` for each rank."""
    sig = as_vector(sigma, spec.dimension)
    dirs = np.array([spec.direction_floats(l) for l in range(1, spec.phi + 1)], dtype=np.float64)
    return dirs @ sig


def check_point(spec: EulerProductSpec, sigma, P: Optional[int] = None) -> np.ndarray:
    """Raise :class:`DomainError` unless ``sigma`` is in the convergence region.

    Ranks with infinitely many nontrivial factors need ``<c_l, sigma> > 1``; a
    rank supported on finitely many primes only needs every factor
    ``|alpha p^-<c_l, sigma>|`` below 1. Returns the rank exponents.
    """
    v = rank_exponents(spec, sigma)
    for l in range(1, spec.phi + 1):
        vl = v[l - 1]
        if not spec.rank_is_finite(l):
            if not vl > 1:
                raise DomainError(f"<c_{l}, sigma> = {vl:.12g} must exceed 1")
            continue
        for p in spec.special_primes(l):
            for a in _values_at(spec, l, p):
                if abs(complex(a)) * p ** (-vl) >= 1:
                    raise DomainError(f"factor at p={p} has |alpha p^-v| >= 1 at <c_{l}, sigma> = {vl:.12g}")
    return v


def _values_at(spec, l, p):
    return spec.values(l, p, prime_index(p))


def _w_matrix(data: _PrimeData, ts: np.ndarray) -> np.ndarray:
    # (nt, d) @ (d, m) -> <c_l, t> per column
    return ts @ data.dirs[data.col_rank].T


def _ts(spec, t) -> np.ndarray:
    arr = np.asarray(t, dtype=np.float64)
    d = spec.dimension
    if d == 1:
        return arr.reshape(-1, 1)
    return np.atleast_2d(arr).reshape(-1, d)


def eval_product_many(spec, sigma, ts, bounds: TruncationBounds = DEFAULT_BOUNDS) -> np.ndarray:
    """Truncated product at ``sigma + i t`` for each row of ``ts``."""
    v = check_point(spec, sigma)
    data = _prime_data(spec, bounds.P)
    return kernels.euler_batch(data.alpha, data.logp, v[data.col_rank], _w_matrix(data, _ts(spec, ts)),
                               kernels.MODE_PRODUCT, bounds.R)


def eval_log_many(spec, sigma, ts, bounds: TruncationBounds = DEFAULT_BOUNDS) -> np.ndarray:
    """Truncated log series at ``sigma + i t`` for each row of ``ts``."""
    v = check_point(spec, sigma)
    data = _prime_data(spec, bounds.P)
    return kernels.euler_batch(data.alpha, data.logp, v[data.col_rank], _w_matrix(data, _ts(spec, ts)),
                               kernels.MODE_LOG, bounds.R)


def _point_args(spec, point, t):
    if isinstance(point, EvalPoint):
        return np.array(point.sigma), np.array(point.t)
    d = spec.dimension
    return as_vector(point, d), (np.zeros(d) if t is None else as_vector(t, d))


def eval_product(spec, point, t=None, bounds: TruncationBounds = DEFAULT_BOUNDS) -> complex:
    """``prod_{p<=P} prod_{l,k} (1 - alpha_lk(p) p^{-<c_l, s>})^-1``.

    ``point`` is an :class:`EvalPoint` or a sigma vector (then ``t`` gives the
    imaginary part, default 0).
    """
    sig, tt = _point_args(spec, point, t)
    out = complex(eval_product_many(spec, sig, tt[None, :], bounds)[0])
    if not math.isfinite(out.real) or not math.isfinite(out.imag):
        raise DomainError("singular factor in truncated product")
    return out


def eval_log(spec, point, t=None, bounds: TruncationBounds = DEFAULT_BOUNDS) -> complex:
    """Prime-power log series, truncated at ``p <= P`` and ``r <= R``."""
    sig, tt = _point_args(spec, point, t)
    return complex(eval_log_many(spec, sig, tt[None, :], bounds)[0])


def eval_series(spec, point, t=None, N: int = DEFAULT_BOUNDS.N) -> complex:
    """``prod_l sum_{n<=N} a_l(n) n^{-<c_l, s>}``."""
    sig, tt = _point_args(spec, point, t)
    v = rank_exponents(spec, sig)
    if np.any(v <= 1):
        raise DomainError("the Dirichlet series form needs <c_l, sigma> > 1 for every rank")
    n = np.arange(1, N + 1, dtype=np.float64)
    logn = np.log(n)
    out = 1 + 0j
    for l in range(1, spec.phi + 1):
        a = dirichlet_coefficients(spec, l, N).values[1:]
        c = np.array(spec.direction_floats(l))
        s = v[l - 1] + 1j * float(c @ tt)
        out *= complex(np.sum(a * np.exp(-s * logn)))
    return out


def normalized_cf(spec, sigma, t, bounds: TruncationBounds = DEFAULT_BOUNDS) -> complex:
    """``f_sigma(t) = Z(sigma + it) / Z(sigma)``."""
    d = spec.dimension
    vals = eval_product_many(spec, as_vector(sigma, d), np.stack([np.zeros(d), as_vector(t, d)]), bounds)
    return complex(vals[1] / vals[0])


def normalized_cf_many(spec, sigma, ts, bounds: TruncationBounds = DEFAULT_BOUNDS) -> np.ndarray:
    d = spec.dimension
    z0 = eval_product_many(spec, as_vector(sigma, d), np.zeros((1, d)), bounds)[0]
    return eval_product_many(spec, sigma, ts, bounds) / z0


# ---------------------------------------------------------------- tails


def truncation_tail_bound(spec, sigma, bounds: TruncationBounds = DEFAULT_BOUNDS) -> float:
    """Upper bound on ``|log Z_truncated - log Z|`` at any ``t``.

    Per rank with exponent ``v > 1`` and infinitely many factors:
    ``eta * (2 P^{1-v}/(v-1) + sum_{p<=P} p^{-(R+1)v} / (1 - p^{-v}))``. For a
    rank supported on finitely many primes only the ``r > R`` geometric tail
    ``sum q^{R+1} / ((R+1)(1-q))`` with ``q = |alpha| p^{-v}`` remains. A small
    allowance covers the log-series terms the kernel drops below its floor.
    """
    v = check_point(spec, sigma)
    P, R = bounds.P, bounds.R
    data = _prime_data(spec, P)
    total = 0.0
    for l in range(1, spec.phi + 1):
        vl = float(v[l - 1])
        if spec.rank_is_finite(l):
            for p in spec.special_primes(l):
                for a in _values_at(spec, l, p):
                    q = abs(complex(a)) * p ** (-vl)
                    if q > 0:
                        total += q ** (R + 1) / ((R + 1) * (1 - q))
            continue
        ps = data.primes[data.primes <= P].astype(np.float64)
        x = ps ** (-vl)
        r_tail = float(np.sum(x ** (R + 1) / (1 - x)))
        p_tail = 2.0 * P ** (1 - vl) / (vl - 1)
        total += spec.eta * (p_tail + r_tail)
    total += 2.0 * kernels.LOG_TERM_FLOOR * data.alpha.size
    return total


def product_majorant(spec, sigma, bounds: TruncationBounds = DEFAULT_BOUNDS) -> float:
    """``prod (1 - |alpha| p^-v)^-1`` over the truncation; bounds ``|Z_trunc(s)|``."""
    v = check_point(spec, sigma)
    data = _prime_data(spec, bounds.P)
    x = np.abs(data.alpha) * np.exp(-v[data.col_rank][None, :] * data.logp[:, None])
    return float(np.exp(-np.sum(np.log1p(-x))))
