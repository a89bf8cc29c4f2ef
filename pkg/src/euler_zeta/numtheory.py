"""Primes, factorization, power sums and local/Dirichlet coefficients."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import kernels
from .exact import ComplexRational, is_exact
from .spec import EulerProductSpec

__all__ = [
    "primes_up_to",
    "prime_index",
    "factorize",
    "power_sum",
    "power_sums_of",
    "local_coefficients",
    "newton_series",
    "LocalCoefficientSeries",
    "DirichletCoefficientTable",
    "dirichlet_coefficients",
    "squarefree_indicator",
]


def primes_up_to(P: int) -> np.ndarray:
    """Ascending int64 array of the primes ``<= P`` (empty when ``P < 2``)."""
    if P < 2:
        return np.zeros(0, dtype=np.int64)
    return np.flatnonzero(kernels.prime_flags(int(P))).astype(np.int64)


class _PrimeCache:
    """Grows a sorted prime list on demand for index lookups."""

    def __init__(self):
        self.limit = 1
        self.primes = np.zeros(0, dtype=np.int64)

    def ensure(self, n: int) -> None:
        if n > self.limit:
            self.limit = max(n, 2 * self.limit, 1 << 16)
            self.primes = primes_up_to(self.limit)


_CACHE = _PrimeCache()


def prime_index(p: int) -> int:
    """Position of the prime ``p`` in 2, 3, 5, ... (``prime_index(2) == 1``)."""
    _CACHE.ensure(p)
    i = int(np.searchsorted(_CACHE.primes, p))
    if i >= len(_CACHE.primes) or _CACHE.primes[i] != p:
        raise ValueError(f"{p} is not prime")
    return i + 1


def factorize(n: int) -> list:
    """``[(p, nu), ...]`` with ``prod p**nu == n``, primes ascending."""
    if n < 1:
        raise ValueError("factorize needs n >= 1")
    out = []
    _CACHE.ensure(math.isqrt(n) + 1)
    for p in _CACHE.primes:
        p = int(p)
        if p * p > n:
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
    if n > 1:
        out.append((n, 1))
    return out


def power_sums_of(values: Sequence, r_max: int) -> list:
    """``[s_1, ..., s_rmax]`` with ``s_r = sum_k v_k**r`` (exact if all inputs are)."""
    exact = all(is_exact(v) for v in values)
    vals = list(values) if exact else [complex(v) for v in values]
    cur = list(vals)
    zero = ComplexRational(0) if exact else 0j
    out = []
    for _ in range(r_max):
        out.append(sum(cur, zero))
        cur = [c * v for c, v in zip(cur, vals)]
    return out


def power_sum(spec: EulerProductSpec, l: int, p: int, r: int):
    """``sum_k alpha_lk(p)**r``."""
    values = spec.values(l, p, prime_index(p))
    return power_sums_of(values, r)[-1]


def newton_series(values: Sequence, r_max: int) -> list:
    """``h_0..h_rmax``, the coefficients of ``prod_k (1 - v_k x)^-1``.

    Uses Newton's identity ``r h_r = sum_{i<=r} s_i h_{r-i}`` with power sums
    ``s_i``; exact when every value is a ComplexRational.
    """
    exact = all(is_exact(v) for v in values)
    s = power_sums_of(values, r_max)
    h = [ComplexRational(1) if exact else 1 + 0j]
    for r in range(1, r_max + 1):
        acc = ComplexRational(0) if exact else 0j
        for i in range(1, r + 1):
            acc = acc + s[i - 1] * h[r - i]
        h.append(acc / r)
    return h


@dataclass(frozen=True)
class LocalCoefficientSeries:
    l: int
    p: int
    values: tuple  # h_0..h_R
    exact: bool


def local_coefficients(spec: EulerProductSpec, l: int, p: int, r_max: int) -> LocalCoefficientSeries:
    vals = spec.values(l, p, prime_index(p))
    h = newton_series(vals, r_max)
    return LocalCoefficientSeries(l, p, tuple(h), all(is_exact(v) for v in vals))


@dataclass(frozen=True)
class DirichletCoefficientTable:
    """``a_l(n)`` for ``n <= N``; ``values[n]`` (index 0 unused)."""

    l: int
    N: int
    values: np.ndarray
    exact: bool

    def __getitem__(self, n: int) -> complex:
        return self.values[n]


def prime_power_values(spec: EulerProductSpec, l: int, N: int):
    """Local coefficients at every prime power ``<= N`` as a dense complex array.

    Returns ``(primes, pp, exact, series)`` where ``pp[p**k] = h_k(p)`` and
    ``series`` maps each prime to its exact/numeric ``h`` list. Series are cached
    by value tuple, so periodic rules cost one recurrence per class.
    """
    primes = primes_up_to(N)
    pp = np.zeros(N + 1, dtype=np.complex128)
    series = {}
    cache = {}
    exact_all = True
    for idx, p in enumerate(primes, 1):
        p = int(p)
        kmax = int(math.log(N) / math.log(p)) + 1
        while p**kmax > N:
            kmax -= 1
        vals = spec.values(l, p, idx)
        key = (vals, kmax)
        h = cache.get(key)
        if h is None:
            h = newton_series(vals, kmax)
            try:
                cache[key] = h
            except TypeError:  # pragma: no cover - all value types hash
                pass
        exact_all &= all(is_exact(v) for v in vals)
        series[p] = h
        q = p
        for k in range(1, kmax + 1):
            pp[q] = complex(h[k])
            q *= p
    return primes, pp, exact_all, series


def dirichlet_coefficients(spec: EulerProductSpec, l: int, N: int) -> DirichletCoefficientTable:
    """Multiplicative table ``a_l(1..N)`` built from prime-power values."""
    if N < 1:
        raise ValueError("N must be >= 1")
    primes, pp, exact, _ = prime_power_values(spec, l, N)
    table = kernels.multiplicative_table(N, primes, pp)
    return DirichletCoefficientTable(l, N, table, exact)


def squarefree_indicator(N: int) -> np.ndarray:
    """``|mu(n)|`` for ``n = 0..N`` (index 0 is 0)."""
    out = np.ones(N + 1, dtype=np.int8)
    out[0] = 0
    for p in primes_up_to(math.isqrt(N)):
        out[int(p) * int(p) :: int(p) * int(p)] = 0
    return out
