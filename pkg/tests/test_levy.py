import numpy as np
import pytest

from euler_zeta.builtins import BUILTIN_NAMES, builtin_spec
from euler_zeta.classifier import ID, classify, reduce_integer_dependent
from euler_zeta.evaluator import normalized_cf, truncation_tail_bound
from euler_zeta.exact import ComplexRational
from euler_zeta.levy import (
    build_quasi_levy,
    cf_from_measure,
    check_injective,
    reconstruction_gap,
    total_variation,
    zeta_upper_bound,
)
from euler_zeta.spec import ConstantExact, EulerProductSpec, TruncationBounds

from conftest import valid_sigma

B = TruncationBounds(P=10**3, R=40)


def _atom(m, p, r, l=1):
    k = np.flatnonzero((m.p == p) & (m.r == r) & (m.l == l))
    assert k.size == 1
    return k[0]


def _reduced(name):
    spec = builtin_spec(name)
    return reduce_integer_dependent(spec) if spec.mode.kind == "integer" else spec


def test_riemann_atoms():
    m = build_quasi_levy(builtin_spec("riemann"), 2.0, B)
    k = _atom(m, 2, 1)
    assert m.x[k, 0] == pytest.approx(np.log(2)) and m.w[k] == pytest.approx(0.25, abs=1e-16)
    k = _atom(m, 2, 2)
    assert m.x[k, 0] == pytest.approx(2 * np.log(2)) and m.w[k] == pytest.approx(0.03125, abs=1e-16)
    assert np.all(m.x != 0)


def test_signed_atoms():
    m = build_quasi_levy(builtin_spec("zq"), 2.0, B)
    assert m.w[_atom(m, 2, 2)] == pytest.approx(-1 / 32, abs=1e-16)
    m = build_quasi_levy(builtin_spec("dirichlet-chi4"), 2.0, B)
    assert m.w[_atom(m, 3, 1)] == pytest.approx(-1 / 9, abs=1e-16)


def test_total_variation_examples():
    tv, ok = total_variation(build_quasi_levy(builtin_spec("riemann"), 2.0, B))
    assert ok and tv < 2 * np.pi**2 / 6
    empty = EulerProductSpec(1, 1, 1, ((1,),), ((ConstantExact(ComplexRational(0)),),))
    m = build_quasi_levy(empty, 2.0, B)
    assert len(m) == 0 and total_variation(m) == (0.0, True)
    assert cf_from_measure(m, 3.0) == 1
    tv, ok = total_variation(build_quasi_levy(builtin_spec("zq"), 2.0, B))
    units = [1, 1j, -1j]
    expected = sum(abs(sum(u**r for u in units)) * 2.0 ** (-2 * r) / r for r in range(1, B.R + 1))
    assert ok and tv == pytest.approx(expected, rel=1e-14)


def test_cf_from_measure_examples():
    spec = builtin_spec("riemann")
    b = TruncationBounds(P=10**4, R=40)
    m = build_quasi_levy(spec, 2.0, b)
    assert cf_from_measure(m, 0.0) == 1
    tail = truncation_tail_bound(spec, 2.0, b)
    assert abs(cf_from_measure(m, 1.0) - normalized_cf(spec, 2.0, 1.0, b)) <= 2 * tail
    zq = builtin_spec("zq")
    b = TruncationBounds(R=200)
    m = build_quasi_levy(zq, 2.0, b)
    for t in np.linspace(-20, 20, 9):
        assert abs(cf_from_measure(m, t) - normalized_cf(zq, 2.0, t, b)) < 1e-12


def test_reconstruction_examples():
    assert reconstruction_gap(builtin_spec("riemann"), 2.0, 0.0) == 0.0
    assert reconstruction_gap(builtin_spec("riemann"), 2.0, 5.0, TruncationBounds(P=10**4, R=40)) < 1e-6
    assert reconstruction_gap(builtin_spec("zq"), 1 / 3, 7.0, TruncationBounds(R=300)) < 1e-10


def test_integer_mode_rejected():
    with pytest.raises(ValueError):
        build_quasi_levy(builtin_spec("zeta-l2s"), 2.0, B)


def test_zeta_upper_bound():
    assert np.pi**2 / 6 <= zeta_upper_bound(2.0) < np.pi**2 / 6 + 1e-6
    assert zeta_upper_bound(1.0) == np.inf


ALL = list(BUILTIN_NAMES) + ["fn:0", "fn:1", "fn:3", "zeta-k:2", "zq-eta:5"]


@pytest.mark.parametrize("name", ALL)
def test_measure_invariants(name):
    spec = _reduced(name)
    sig = valid_sigma(spec)
    m = build_quasi_levy(spec, sig, B)
    assert check_injective(m)
    assert total_variation(m)[1]
    # locations are exactly r log(p) c_l
    dirs = np.array([spec.direction_floats(l) for l in range(1, spec.phi + 1)])
    np.testing.assert_array_equal(m.x, (m.r * np.log(m.p.astype(float)))[:, None] * dirs[m.l - 1])
    tail = truncation_tail_bound(spec, sig, B)
    rng = np.random.default_rng(8)
    for _ in range(7):
        t = rng.uniform(-25, 25, size=spec.dimension)
        assert reconstruction_gap(spec, sig, t, B) <= 3 * tail + 1e-13


@pytest.mark.parametrize("name", ALL)
def test_verdict_coherence(name):
    spec = _reduced(name)
    v = classify(spec)
    if not (v.verdict == ID and v.complete):
        return
    m = build_quasi_levy(spec, valid_sigma(spec), B)
    assert np.all(np.abs(m.w.imag) <= 1e-12) and np.all(m.w.real >= -1e-12)


def test_injectivity_detects_collisions():
    m = build_quasi_levy(builtin_spec("riemann"), 2.0, TruncationBounds(P=10, R=3))
    dup = type(m)(m.p, m.r, m.l, m.x.copy(), m.w, m.sigma, m.bounds, 0.0, m.tv_bound)
    dup.x[1] = dup.x[0]
    assert not check_injective(dup)
