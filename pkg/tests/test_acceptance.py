"""Acceptance suite: one test per criterion, each recording a PASS/FAIL line
that is repeated in the terminal summary."""

import math
import random
import time

import numpy as np

from euler_zeta.analysis import (
    almost_period_search,
    log_gap,
    plain_gap,
    q_profile,
    q_profile_plain,
    scaled_gap,
    shifted_pair_search,
)
from euler_zeta.builtins import BUILTIN_NAMES, builtin_spec
from euler_zeta.classifier import (
    ID,
    ND,
    QUASI,
    certify_power_sums,
    classify,
    reduce_integer_dependent,
    scan_coefficients,
)
from euler_zeta.evaluator import eval_product, normalized_cf, rank_exponents
from euler_zeta.exact import ComplexRational, is_exact
from euler_zeta.levy import build_quasi_levy, reconstruction_gap, total_variation
from euler_zeta.numtheory import dirichlet_coefficients, newton_series, power_sums_of, primes_up_to
from euler_zeta.sampler import build_pmf, draw, empirical_cf
from euler_zeta.spec import ConstantExact, EulerProductSpec, TruncationBounds

from conftest import random_unit_disc, record_acceptance

ALL = list(BUILTIN_NAMES) + ["fn:0", "fn:1", "fn:2", "fn:3", "fn:4", "zeta-k:2", "zq-eta:5"]
SIGMA, T1, T2 = 1.5, 19.3, 82.9
GAP_BOUNDS = TruncationBounds(P=2 * 10**6, R=60)


def _reduced(name):
    spec = builtin_spec(name)
    return reduce_integer_dependent(spec) if spec.mode.kind == "integer" else spec


def _check(number, ok, detail):
    record_acceptance(number, bool(ok), detail)
    assert ok, detail


def test_criterion_01_scaled_gap():
    start = time.perf_counter()
    rep = scaled_gap(builtin_spec("dirichlet-chi4"), SIGMA, T1, T2, GAP_BOUNDS)
    dt = time.perf_counter() - start
    ok = abs(rep.gap - (-0.205831)) <= 5e-3 and dt < 60
    _check(1, ok, f"scaled gap {rep.gap:.6f} (target -0.205831 +- 5e-3), P={GAP_BOUNDS.P}, {dt:.2f} s")


def test_criterion_02_log_gap():
    rep = log_gap(builtin_spec("dirichlet-chi4"), SIGMA, T1, T2, GAP_BOUNDS)
    ok = abs(rep.gap - (-0.16818)) <= 1e-3
    _check(2, ok, f"log gap {rep.gap:.6f} (target -0.16818 +- 1e-3), tail bound {rep.tail_bound:.2e}")


def test_criterion_03_q_profile():
    spec = builtin_spec("zq")
    grid = np.arange(4701) * 0.01
    start = time.perf_counter()
    q = q_profile(spec, 1 / 3, 7.0, grid)[:, 1]
    plain = q_profile_plain(spec, 1 / 3, 7.0, grid)[:, 1]
    dt = time.perf_counter() - start
    ok = q.min() < 0 and plain.min() >= -1e-9 and dt < 5
    _check(3, ok, f"min Q (log) {q.min():.6f} at t={grid[np.argmin(q)]:.2f}, min plain {plain.min():.6f}, {dt:.2f} s")


GALLERY = [
    ("riemann", ID, {}),
    ("dirichlet-chi4", ND, {"n": 3}),
    ("zq", QUASI, {"p": 2, "r": 2}),
    ("fn:0", ND, {}),
    ("fn:1", QUASI, {}),
    ("fn:2", ID, {}),
    ("fn:3", ID, {}),
    ("zeta-l2s", QUASI, {}),
    ("zeta2-l2s", ID, {}),
    ("l-zeta2s", ND, {"n": 3}),
]


def _random_degree2(rng):
    pool = [ComplexRational(1), ComplexRational(-1), ComplexRational(0, 1), ComplexRational(0, -1)]
    vals = [rng.choice(pool) if rng.random() < 0.4 else random_unit_disc(rng, 8) for _ in range(2)]
    return EulerProductSpec(1, 1, 2, ((1,),), (tuple(ConstantExact(v) for v in vals),)), vals


def test_criterion_04_classification_gallery():
    bad = []
    for name, verdict, wit in GALLERY:
        v = classify(_reduced(name))
        if v.verdict != verdict or any(v.witness.get(k) != x for k, x in wit.items()):
            bad.append(f"{name}->{v.verdict} {v.witness_text()}")
    rng = random.Random(4)
    quasi = 0
    for _ in range(500):
        spec, vals = _random_degree2(rng)
        v = classify(spec, TruncationBounds(P=30, R=60, N=10**3))
        sums_ok = all(s.is_nonnegative_real() for s in power_sums_of(vals, 60))
        if v.verdict == QUASI or (v.verdict == ID) != sums_ok:
            quasi += 1
    ok = not bad and quasi == 0
    _check(4, ok, f"{len(GALLERY)} gallery verdicts, mismatches {bad or 'none'}; "
                  f"500 random eta=2 specs, dichotomy violations {quasi}")


def _brute(values, r_max):
    out = [ComplexRational(1)] + [ComplexRational(0)] * r_max
    for v in values:
        geo = [v**k for k in range(r_max + 1)]
        out = [sum((out[i] * geo[r - i] for i in range(r + 1)), ComplexRational(0)) for r in range(r_max + 1)]
    return out


def test_criterion_05_newton_oracle():
    rng = random.Random(5)
    mismatches = 0
    for trial in range(50):
        vals = [random_unit_disc(rng, 10) for _ in range(1 + trial % 4)]
        h = newton_series(vals, 12)
        mismatches += h != _brute(vals, 12) or not all(is_exact(x) for x in h)
    _check(5, mismatches == 0, f"50 exact tuples, eta <= 4, r <= 12: {mismatches} mismatches")


def test_criterion_06_levy_reconstruction():
    b = TruncationBounds(P=10**4, R=40)
    ts = (0.0, 1.0, 5.0, 12.0)
    riem = max(reconstruction_gap(builtin_spec("riemann"), 2.0, t, b) for t in ts)
    zq = max(reconstruction_gap(builtin_spec("zq"), 1 / 3, t, TruncationBounds(R=300)) for t in ts)
    over = []
    for name in ALL:
        spec = _reduced(name)
        m = build_quasi_levy(spec, np.full(spec.dimension, 2.0), TruncationBounds(P=10**3, R=40))
        if not total_variation(m)[1]:
            over.append(name)
    ok = riem < 1e-6 and zq < 1e-10 and not over
    _check(6, ok, f"riemann max gap {riem:.2e} (< 1e-6), zq max gap {zq:.2e} (< 1e-10), "
                  f"TV bound violations {over or 'none'}")


def test_criterion_07_sampling():
    spec = builtin_spec("riemann")
    pmf = build_pmf(spec, 2.0, 10**6)
    M = 10**5
    x = draw(pmf, 20240607, M)
    diffs = [abs(empirical_cf(x, t) - normalized_cf(spec, 2.0, t)) for t in (0.5, 1.0, 3.0)]
    p0 = 6 / math.pi**2
    freq = float(np.mean(x[:, 0] == 0))
    band = 3 * math.sqrt(p0 * (1 - p0) / M)
    ok = max(diffs) < 5 / math.sqrt(M) and abs(freq - p0) <= band
    _check(7, ok, f"max |ecf - cf| {max(diffs):.4f} (< {5 / math.sqrt(M):.4f}), "
                  f"freq(x=0) {freq:.5f} vs {p0:.5f} +- {band:.5f}")


def _sigma_v2(spec):
    base = np.ones(spec.dimension)
    return base * 2.0 / rank_exponents(spec, base).min()


def test_criterion_08_inequalities():
    rng = np.random.default_rng(8)
    b = TruncationBounds(P=10**4)
    worst_plain, worst_log, n_plain, n_log = np.inf, np.inf, 0, 0
    for name in ALL:
        spec = _reduced(name)
        verdict = classify(spec)
        cert = certify_power_sums(spec)
        sig = _sigma_v2(spec)
        pairs = rng.uniform(-50, 50, size=(200, 2, spec.dimension))
        if verdict.verdict in (ID, QUASI):
            n_plain += 1
            worst_plain = min(worst_plain, min(plain_gap(spec, sig, a, c, b).gap for a, c in pairs))
        if cert.status == "AllNonnegative" and cert.complete:
            n_log += 1
            worst_log = min(worst_log, min(log_gap(spec, sig, a, c, b).gap for a, c in pairs))
    ok = worst_plain >= -1e-9 and worst_log >= -1e-9
    _check(8, ok, f"plain gap min {worst_plain:.3e} over {n_plain} specs, "
                  f"log gap min {worst_log:.3e} over {n_log} complete-ID specs")


def _zeta_series(s, N=10**6):
    """Independent check: partial Dirichlet sum with the first Euler-Maclaurin term."""
    n = np.arange(1, N + 1, dtype=np.float64)
    return complex(np.sum(np.exp(-s * np.log(n)))) + N ** (1 - s) / (s - 1) - 0.5 * N ** (-s)


def test_criterion_09_almost_periodicity():
    spec = builtin_spec("riemann")
    b = TruncationBounds(P=10**4)
    res = almost_period_search(spec, 2.0, 0.05, tau_max=1e5, tau_min=1.0, bounds=b)
    tau_diff = abs(_zeta_series(2 + 1j * res.value) - _zeta_series(2.0)) if res.found else math.inf
    pair = shifted_pair_search(spec, 2.0, 0.3, 2.0, 0.05, t_max=1e5, bounds=b)
    t = pair.value if pair.found else math.nan
    pair_diff = abs(_zeta_series(2 + 1j * (0.3 + 2 * t)) - _zeta_series(2 + 1j * t)) if pair.found else math.inf
    ok = res.found and res.value <= 1e5 and tau_diff < 0.05 and pair.found and pair_diff < 0.05
    _check(9, ok, f"tau={res.value} |diff| {tau_diff:.4f}; shifted pair t={t} |diff| {pair_diff:.4f} (eps 0.05)")


def test_criterion_10_structural():
    problems = []
    N = 10**4
    for name in ALL:
        spec = _reduced(name)
        for l in range(1, spec.phi + 1):
            a = dirichlet_coefficients(spec, l, N).values
            for m in range(2, 101):
                ns = np.arange(m + 1, N // m + 1)
                ns = ns[np.gcd(ns, m) == 1]
                if ns.size and not np.allclose(a[m * ns], a[m] * a[ns], atol=1e-9):
                    problems.append(f"{name}: multiplicativity at m={m}")
                    break
        real = all(np.all(dirichlet_coefficients(spec, l, 500).values.imag == 0) for l in range(1, spec.phi + 1))
        rng = np.random.default_rng(10)
        sig2 = np.full(spec.dimension, 2.0)
        if real:
            for _ in range(5):
                t = rng.uniform(-20, 20, size=spec.dimension)
                if abs(normalized_cf(spec, sig2, t) - normalized_cf(spec, sig2, -t).conjugate()) > 1e-12:
                    problems.append(f"{name}: hermitian symmetry")
                    break
        for _ in range(100):
            sig = rng.uniform(1.05, 4.0, size=spec.dimension)
            t = rng.uniform(-100, 100, size=spec.dimension)
            if not abs(eval_product(spec, sig, t, TruncationBounds(P=2000))) > 0:
                problems.append(f"{name}: zero value")
                break
        if scan_coefficients(spec, N).clean:
            for l in range(1, spec.phi + 1):
                for i, p in enumerate(primes_up_to(100), 1):
                    for s in power_sums_of(spec.values(l, int(p), i), 20):
                        if (s.im != 0) if is_exact(s) else abs(complex(s).imag) > 1e-12:
                            problems.append(f"{name}: non-real power sum at p={p}")
    _check(10, not problems, f"{len(ALL)} specs; problems {problems or 'none'}")
