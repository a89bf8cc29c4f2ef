"""(Quasi-)Levy measures of normalized Euler products.

``log f_sigma(t) = sum_a w_a (exp(-i <t, x_a>) - 1)`` with one atom per
``(p, r, l)``: location ``r log(p) c_l`` and weight
``(1/r) sum_k alpha_lk(p)^r p^{-r <c_l, sigma>}``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .evaluator import (
    DEFAULT_BOUNDS,
    _prime_data,
    as_vector,
    check_point,
    normalized_cf,
    truncation_tail_bound,
)
from .spec import EulerProductSpec, TruncationBounds

__all__ = [
    "QuasiLevyMeasure",
    "build_quasi_levy",
    "total_variation",
    "cf_from_measure",
    "reconstruction_gap",
    "zeta_upper_bound",
    "DROP_FLOOR",
]

DROP_FLOOR = 1e-18


@dataclass(frozen=True)
class QuasiLevyMeasure:
    """Atoms of the measure; ``p``, ``r``, ``l`` identify each location exactly."""

    p: np.ndarray
    r: np.ndarray
    l: np.ndarray  # 1-based rank
    x: np.ndarray  # (n_atoms, d)
    w: np.ndarray  # complex weights
    sigma: tuple
    bounds: TruncationBounds
    dropped_mass: float
    tv_bound: float  # 2 phi eta zeta(v) (or the finite-support analogue) + margin

    def __len__(self):
        return len(self.w)


def zeta_upper_bound(v: float, terms: int = 1000) -> float:
    """Certified upper bound on ``zeta(v)`` for ``v > 1`` (partial sum plus integral tail)."""
    if v <= 1:
        return math.inf
    n = np.arange(1, terms + 1, dtype=np.float64)
    return float(np.sum(n ** (-v))) + terms ** (1 - v) / (v - 1)


def build_quasi_levy(spec: EulerProductSpec, sigma, bounds: TruncationBounds = DEFAULT_BOUNDS) -> QuasiLevyMeasure:
    """All atoms for ``p <= P``, ``r <= R``; weights below 1e-18 are dropped into the margin."""
    if spec.mode.kind == "integer":
        raise ValueError("integer-dependent directions give colliding atoms; reduce the spec first")
    v = check_point(spec, sigma)
    data = _prime_data(spec, bounds.P)
    R = bounds.R
    eta = spec.eta
    ps, rs, ls, ws = [], [], [], []
    dropped = 0.0
    tv_bound = 0.0
    for l in range(1, spec.phi + 1):
        a = data.alpha[:, (l - 1) * eta : l * eta]
        live = np.any(a != 0, axis=1)
        a = a[live]
        prim = data.primes[live]
        x = np.exp(-v[l - 1] * np.log(prim.astype(np.float64)))
        z = a * x[:, None]  # alpha p^-v per factor
        zr = np.ones_like(z)
        for r in range(1, R + 1):
            zr = zr * z
            w = zr.sum(axis=1) / r
            keep = np.abs(w) >= DROP_FLOOR
            dropped += float(np.sum(np.abs(w[~keep])))
            if keep.any():
                ps.append(prim[keep])
                rs.append(np.full(int(keep.sum()), r, dtype=np.int64))
                ls.append(np.full(int(keep.sum()), l, dtype=np.int64))
                ws.append(w[keep])
            if not keep.any() and np.all(np.abs(zr) < DROP_FLOOR):
                break
        if spec.rank_is_finite(l):
            q = np.abs(z[z != 0])
            tv_bound += float(np.sum(-np.log1p(-q)))
        else:
            tv_bound += 2.0 * eta * zeta_upper_bound(float(v[l - 1]))
    if ps:
        p_arr, r_arr, l_arr = np.concatenate(ps), np.concatenate(rs), np.concatenate(ls)
        w_arr = np.concatenate(ws)
    else:
        p_arr = r_arr = l_arr = np.zeros(0, dtype=np.int64)
        w_arr = np.zeros(0, dtype=np.complex128)
    order = np.lexsort((l_arr, r_arr, p_arr))
    p_arr, r_arr, l_arr, w_arr = p_arr[order], r_arr[order], l_arr[order], w_arr[order]
    x_arr = (r_arr * np.log(p_arr.astype(np.float64)))[:, None] * data.dirs[l_arr - 1]
    return QuasiLevyMeasure(p_arr, r_arr, l_arr, x_arr, w_arr, tuple(as_vector(sigma, spec.dimension)),
                            bounds, dropped, tv_bound + dropped)


def check_injective(measure: QuasiLevyMeasure, sep: float = 1e-12) -> bool:
    """Distinct ``(p, r, l)`` triples sit at distinct points (pairwise ``> sep``)."""
    x = measure.x
    if len(x) < 2:
        return True
    keys = set(zip(measure.p.tolist(), measure.r.tolist(), measure.l.tolist()))
    if len(keys) != len(x):
        return False
    order = np.lexsort(x.T[::-1])
    xs = x[order]
    gaps = np.max(np.abs(np.diff(xs, axis=0)), axis=1)
    if np.all(gaps > sep):
        return True
    # sorted neighbours can hide a close pair only in d > 1; fall back to a full check
    if x.shape[1] == 1:
        return False
    for i in range(len(x)):
        if np.any(np.max(np.abs(x[i + 1 :] - x[i]), axis=1) <= sep):
            return False
    return True


def total_variation(measure: QuasiLevyMeasure) -> tuple:
    """``(sum |w|, within_bound)`` with the bound ``2 phi eta zeta(v)`` plus dropped mass."""
    tv = float(np.sum(np.abs(measure.w)))
    return tv, tv <= measure.tv_bound


def cf_from_measure(measure: QuasiLevyMeasure, t) -> complex:
    """``exp(sum_a w_a (exp(-i <t, x_a>) - 1))``."""
    if len(measure.w) == 0:
        return 1 + 0j
    tt = as_vector(t, measure.x.shape[1])
    phase = measure.x @ tt
    return complex(np.exp(np.sum(measure.w * (np.exp(-1j * phase) - 1.0))))


def reconstruction_gap(spec: EulerProductSpec, sigma, t, bounds: TruncationBounds = DEFAULT_BOUNDS) -> float:
    """``|cf_from_measure - normalized_cf|`` at matched truncation."""
    tt = as_vector(t, spec.dimension)
    if not np.any(tt):
        return 0.0
    m = build_quasi_levy(spec, sigma, bounds)
    return abs(cf_from_measure(m, tt) - normalized_cf(spec, sigma, tt, bounds))


def reconstruction_bound(spec: EulerProductSpec, sigma, bounds: TruncationBounds = DEFAULT_BOUNDS) -> float:
    return truncation_tail_bound(spec, sigma, bounds)
