"""Reference numbers reproduced from first principles.

Each check yields ``(name, passed, detail)``; the CLI ``repro`` command prints
one PASS/FAIL line per check.
"""

from __future__ import annotations

import numpy as np

from .analysis import log_gap, q_profile, q_profile_plain, scaled_gap
from .builtins import builtin_spec
from .spec import TruncationBounds

__all__ = ["run_checks", "GAP_SIGMA", "GAP_T1", "GAP_T2", "SCALED_TARGET", "LOG_TARGET"]

GAP_SIGMA = 1.5
GAP_T1, GAP_T2 = 19.3, 82.9
SCALED_TARGET, SCALED_TOL = -0.205831, 5e-3
LOG_TARGET, LOG_TOL = -0.16818, 1e-3
GAP_P = 2 * 10**6

Q_SIGMA, Q_SHIFT = 1.0 / 3.0, 7.0
Q_GRID = np.arange(4701) * 0.01  # [0, 47]


def _gap_bounds(pmax):
    return TruncationBounds(P=max(pmax or 0, GAP_P), R=60)


def check_scaled_gap(pmax=None):
    rep = scaled_gap(builtin_spec("dirichlet-chi4"), GAP_SIGMA, GAP_T1, GAP_T2, _gap_bounds(pmax))
    ok = abs(rep.gap - SCALED_TARGET) <= SCALED_TOL
    return "scaled-gap", ok, f"value={rep.gap:.6f} target={SCALED_TARGET} tol={SCALED_TOL:g}"


def check_log_gap(pmax=None):
    rep = log_gap(builtin_spec("dirichlet-chi4"), GAP_SIGMA, GAP_T1, GAP_T2, _gap_bounds(pmax))
    ok = abs(rep.gap - LOG_TARGET) <= LOG_TOL
    return "log-gap", ok, f"value={rep.gap:.6f} target={LOG_TARGET} tol={LOG_TOL:g}"


def check_q_profile(pmax=None):
    spec = builtin_spec("zq")
    bounds = TruncationBounds(P=max(pmax or 0, 10**4), R=60)
    q = q_profile(spec, Q_SIGMA, Q_SHIFT, Q_GRID, bounds)[:, 1]
    plain = q_profile_plain(spec, Q_SIGMA, Q_SHIFT, Q_GRID, bounds)[:, 1]
    i = int(np.argmin(q))
    ok = q[i] < 0 and plain.min() >= -1e-9
    return "q-profile", ok, f"min_log={q[i]:.6f} at t={Q_GRID[i]:.2f} min_plain={plain.min():.6f}"


def run_checks(pmax=None):
    """Yield the three reference checks in order."""
    for check in (check_scaled_gap, check_log_gap, check_q_profile):
        yield check(pmax)
