"""Hot numeric loops, each with a numba and a pure-numpy implementation.

The public entry points (:func:`prime_flags`, :func:`euler_batch`,
:func:`multiplicative_table`) dispatch on :func:`euler_zeta._backend.requested_backend`
at call time, so tests and benchmarks can flip ``EULER_ZETA_BACKEND`` without
re-importing. Both paths accumulate over primes in ascending order per
evaluation point; the numba path parallelises across points only.
"""

import numpy as np

from ._backend import HAVE_NUMBA, apply_thread_cap, requested_backend

MODE_PRODUCT = 0
MODE_LOG = 1

# terms of the log series below this modulus are dropped (below double eps
# relative to any value the series can take)
LOG_TERM_FLOOR = 1e-18

_CHUNK_ELEMS = 1 << 21


# ---------------------------------------------------------------- numpy path


def _prime_flags_numpy(n):
    flags = np.ones(n + 1, dtype=np.bool_)
    flags[:2] = False
    for p in range(2, int(n**0.5) + 1):
        if flags[p]:
            flags[p * p :: p] = False
    return flags


def _euler_batch_numpy(alpha, logp, v, w, mode, rmax):
    nt = w.shape[0]
    npr, m = alpha.shape
    out = np.empty(nt, dtype=np.complex128)
    if npr == 0 or m == 0:
        out[:] = 1.0 if mode == MODE_PRODUCT else 0.0
        return out
    step = max(1, _CHUNK_ELEMS // (npr * m))
    for lo in range(0, nt, step):
        hi = min(nt, lo + step)
        expo = v[None, None, :] + 1j * w[lo:hi, None, :]
        z = alpha[None, :, :] * np.exp(-expo * logp[None, :, None])
        if mode == MODE_PRODUCT:
            out[lo:hi] = np.prod((1.0 / (1.0 - z)).reshape(hi - lo, -1), axis=1)
        else:
            acc = np.zeros_like(z)
            zr = z.copy()
            for r in range(1, rmax + 1):
                acc += zr / r
                if r == rmax:
                    break
                zr = zr * z
                small = np.abs(zr) < LOG_TERM_FLOOR
                if small.all():
                    break
                zr[small] = 0.0
            out[lo:hi] = acc.reshape(hi - lo, -1).sum(axis=1)
    return out


def _multiplicative_table_numpy(n, primes, pp_values):
    table = np.ones(n + 1, dtype=np.complex128)
    table[0] = 0.0
    for p in primes:
        p = int(p)
        if p > n:
            break
        idx = np.arange(p, n + 1, p, dtype=np.int64)
        q = idx // p
        pk = np.full(idx.shape, p, dtype=np.int64)
        while True:
            more = q % p == 0
            if not more.any():
                break
            q[more] //= p
            pk[more] *= p
        table[idx] *= pp_values[pk]
    return table


# ---------------------------------------------------------------- numba path

if HAVE_NUMBA:  # pragma: no branch
    from numba import njit, prange

    @njit(cache=True)
    def _prime_flags_numba(n):
        flags = np.ones(n + 1, dtype=np.bool_)
        flags[0] = False
        if n >= 1:
            flags[1] = False
        p = 2
        while p * p <= n:
            if flags[p]:
                for q in range(p * p, n + 1, p):
                    flags[q] = False
            p += 1
        return flags

    @njit(cache=True, parallel=True)
    def _euler_batch_numba(alpha, logp, v, w, mode, rmax):
        nt = w.shape[0]
        npr, m = alpha.shape
        out = np.empty(nt, dtype=np.complex128)
        for it in prange(nt):
            if mode == MODE_PRODUCT:
                acc = 1.0 + 0.0j
                for ip in range(npr):
                    lp = logp[ip]
                    for j in range(m):
                        a = alpha[ip, j]
                        if a == 0:
                            continue
                        z = a * np.exp(-(v[j] + 1j * w[it, j]) * lp)
                        acc = acc / (1.0 - z)
                out[it] = acc
            else:
                acc = 0.0 + 0.0j
                for ip in range(npr):
                    lp = logp[ip]
                    for j in range(m):
                        a = alpha[ip, j]
                        if a == 0:
                            continue
                        z = a * np.exp(-(v[j] + 1j * w[it, j]) * lp)
                        zr = z
                        for r in range(1, rmax + 1):
                            acc += zr / r
                            zr = zr * z
                            if abs(zr) < LOG_TERM_FLOOR:
                                break
                out[it] = acc
        return out

    @njit(cache=True)
    def _multiplicative_table_numba(n, primes, pp_values):
        spf = np.zeros(n + 1, dtype=np.int64)
        for p in primes:
            if p > n:
                break
            for q in range(p, n + 1, p):
                if spf[q] == 0:
                    spf[q] = p
        table = np.ones(n + 1, dtype=np.complex128)
        table[0] = 0.0
        for k in range(2, n + 1):
            p = spf[k]
            pk = p
            q = k // p
            while q % p == 0:
                q //= p
                pk *= p
            table[k] = table[q] * pp_values[pk]
        return table


# ---------------------------------------------------------------- dispatch


def prime_flags(n: int) -> np.ndarray:
    """Boolean primality flags for ``0..n`` (sieve of Eratosthenes)."""
    if n < 1:
        return np.zeros(max(n + 1, 0), dtype=np.bool_)
    if requested_backend() == "numba":
        return _prime_flags_numba(n)
    return _prime_flags_numpy(n)


def euler_batch(alpha, logp, v, w, mode=MODE_PRODUCT, rmax=60):
    """Evaluate a truncated Euler product (or its log series) at many points.

    ``alpha`` is ``(n_primes, m)`` complex, one column per linear factor;
    ``logp`` holds ``log p`` per row; column ``j`` at point ``t`` uses the
    exponent ``v[j] + i*w[t, j]``. In product mode the result is
    ``prod (1 - alpha x)^-1``; in log mode it is the series
    ``sum_r (alpha x)^r / r`` truncated at ``rmax``.
    """
    alpha = np.ascontiguousarray(alpha, dtype=np.complex128)
    logp = np.ascontiguousarray(logp, dtype=np.float64)
    v = np.ascontiguousarray(v, dtype=np.float64)
    w = np.ascontiguousarray(np.atleast_2d(w), dtype=np.float64)
    if requested_backend() == "numba":
        apply_thread_cap()
        return _euler_batch_numba(alpha, logp, v, w, int(mode), int(rmax))
    return _euler_batch_numpy(alpha, logp, v, w, int(mode), int(rmax))


def multiplicative_table(n: int, primes: np.ndarray, pp_values: np.ndarray) -> np.ndarray:
    """Values ``a(0..n)`` of the multiplicative function with ``a(p^k) = pp_values[p^k]``."""
    primes = np.ascontiguousarray(primes, dtype=np.int64)
    pp_values = np.ascontiguousarray(pp_values, dtype=np.complex128)
    if requested_backend() == "numba":
        return _multiplicative_table_numba(int(n), primes, pp_values)
    return _multiplicative_table_numpy(int(n), primes, pp_values)
