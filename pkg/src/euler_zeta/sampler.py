"""The discrete distribution attached to a product with nonnegative coefficients.

``Pr(X = -sum_l log(n_l) c_l) = prod_l a_l(n_l) n_l^{-<c_l, sigma>} / Z(sigma)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .classifier import scan_coefficients
from .evaluator import DomainError, TruncationBounds, as_vector, check_point, eval_product
from .levy import zeta_upper_bound
from .numtheory import dirichlet_coefficients
from .spec import EulerProductSpec

__all__ = [
    "NegativeMassError",
    "DeficitError",
    "SupportAtomTable",
    "build_pmf",
    "draw",
    "empirical_cf",
    "pmf_cf",
    "MAX_DEFICIT",
]

MAX_DEFICIT = 1e-6
_MAX_ENTRIES = 5 * 10**6


class NegativeMassError(ValueError):
    def __init__(self, l: int, n: int, value):
        super().__init__(f"a_{l}({n}) = {value} is not a nonnegative real; no distribution exists")
        self.l, self.n, self.value = l, n, value


class DeficitError(ValueError):
    pass


@dataclass(frozen=True)
class SupportAtomTable:
    """Entries sorted by descending mass.

    Attributes:
        index: ``(n_entries, phi)`` integer tuples ``(n_1, ..., n_phi)``.
        x: ``(n_entries, d)`` support points.
        mass: probabilities, nonnegative.
        deficit: ``1 - sum(mass)``, the mass of all ``n_l > N``.
        deficit_bound: a rigorous upper bound on the true deficit.
    """

    index: np.ndarray
    x: np.ndarray
    mass: np.ndarray
    deficit: float
    deficit_bound: float
    sigma: tuple
    N: int

    def __len__(self):
        return len(self.mass)


def _rank_weights(spec, l, v, N):
    tab = dirichlet_coefficients(spec, l, N).values[1:]
    n = np.arange(1, N + 1, dtype=np.float64)
    return tab.real * n ** (-v)


def build_pmf(spec: EulerProductSpec, sigma, N: int, normalizer_P: int | None = None) -> SupportAtomTable:
    """Tabulate masses for all ``n_l <= N`` with nonzero mass.

    ``Z(sigma)`` comes from the truncated product with ``P = max(10 N, 10^5)``
    (primes beyond ``N`` still contribute to the normalization).
    """
    if spec.mode.kind == "integer":
        raise DomainError("the support formula needs independent or scalar-multiple directions")
    v = check_point(spec, sigma)
    if np.any(v <= 1):
        raise DomainError("the coefficient form needs <c_l, sigma> > 1 for every rank")
    scan = scan_coefficients(spec, N)
    if scan.witness is not None:
        raise NegativeMassError(*scan.witness)
    sig = as_vector(sigma, spec.dimension)
    P = normalizer_P or max(10 * N, 10**5)
    Z = eval_product(spec, sig, bounds=TruncationBounds(P=P, R=60, N=N)).real
    per_rank = []
    for l in range(1, spec.phi + 1):
        w = _rank_weights(spec, l, float(v[l - 1]), N)
        nz = np.flatnonzero(w > 0)
        per_rank.append((nz + 1, w[nz]))
    total = math.prod(len(r[0]) for r in per_rank)
    if total > _MAX_ENTRIES:
        raise ValueError(f"{total} support entries exceed the table limit; lower N")
    idx_grids = np.meshgrid(*[r[0] for r in per_rank], indexing="ij")
    w_grids = np.meshgrid(*[r[1] for r in per_rank], indexing="ij")
    index = np.stack([g.ravel() for g in idx_grids], axis=1).astype(np.int64)
    mass = np.prod(np.stack([g.ravel() for g in w_grids], axis=1), axis=1) / Z
    dirs = np.array([spec.direction_floats(l) for l in range(1, spec.phi + 1)])
    x = -np.log(index.astype(np.float64)) @ dirs
    order = np.argsort(-mass, kind="stable")
    index, x, mass = index[order], x[order], mass[order]
    deficit = float(1.0 - math.fsum(mass))
    return SupportAtomTable(index, x, mass, deficit, _deficit_bound(spec, v, N), tuple(sig), N)


def _deficit_bound(spec, v, N) -> float:
    """Rankin bound: mass with some ``n_l > N`` is at most
    ``sum_l N^{-(v_l - u_l)} Z_l(u_l) / Z_l(v_l)`` with ``u_l = (1 + v_l)/2``,
    using ``Z_l(u) <= zeta(u)^eta`` for coefficients bounded by the ``eta``-fold
    divisor function."""
    out = 0.0
    for vl in v:
        u = (1 + vl) / 2
        out += N ** (-(vl - u)) * zeta_upper_bound(u) ** spec.eta
    return float(min(1.0, out))


def draw(pmf: SupportAtomTable, seed: int, count: int) -> np.ndarray:
    """Inverse-CDF samples; ``(count, d)`` support points.

    Uses numpy's Philox4x64 counter-based generator keyed by ``seed``, so a
    given ``(seed, count)`` gives the same points on every platform.
    """
    if count < 0:
        raise ValueError("count must be nonnegative")
    if pmf.deficit > MAX_DEFICIT:
        raise DeficitError(f"normalization deficit {pmf.deficit:.3g} exceeds {MAX_DEFICIT:g}; raise N")
    d = pmf.x.shape[1]
    if count == 0:
        return np.zeros((0, d))
    rng = np.random.Generator(np.random.Philox(seed))
    cdf = np.cumsum(pmf.mass)
    u = rng.random(count) * cdf[-1]
    k = np.searchsorted(cdf, u, side="right")
    return pmf.x[np.minimum(k, len(cdf) - 1)]


def empirical_cf(samples: np.ndarray, t) -> complex:
    """``(1/M) sum_j exp(i <t, x_j>)``."""
    samples = np.asarray(samples, dtype=np.float64)
    if samples.ndim == 1:
        samples = samples[:, None]
    if len(samples) == 0:
        raise ValueError("empirical_cf needs at least one sample")
    tt = as_vector(t, samples.shape[1])
    return complex(np.mean(np.exp(1j * (samples @ tt))))


def pmf_cf(pmf: SupportAtomTable, t) -> complex:
    """Characteristic function of the tabulated part, ``sum mass exp(i <t, x>)``."""
    tt = as_vector(t, pmf.x.shape[1])
    return complex(np.sum(pmf.mass * np.exp(1j * (pmf.x @ tt))))

