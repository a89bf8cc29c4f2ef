import math

import numpy as np
import pytest

from euler_zeta.builtins import builtin_spec
from euler_zeta.evaluator import DomainError, normalized_cf, truncation_tail_bound
from euler_zeta.sampler import (
    DeficitError,
    NegativeMassError,
    build_pmf,
    draw,
    empirical_cf,
    pmf_cf,
)
from euler_zeta.spec import TruncationBounds


@pytest.fixture(scope="module")
def riemann_pmf():
    return build_pmf(builtin_spec("riemann"), 2.0, 10**6)


ZETA2 = math.pi**2 / 6


def test_masses(riemann_pmf):
    pmf = riemann_pmf
    # the normalizer is a truncated product at P = 10N
    rel = math.expm1(truncation_tail_bound(builtin_spec("riemann"), 2.0, TruncationBounds(P=10**7)))
    assert pmf.mass[0] == pytest.approx(1 / ZETA2, rel=rel)
    assert pmf.x[0, 0] == 0 and pmf.index[0, 0] == 1
    k = np.flatnonzero(pmf.index[:, 0] == 2)[0]
    assert pmf.x[k, 0] == -np.log(2)
    assert pmf.mass[k] == pytest.approx(0.25 * pmf.mass[0], rel=1e-15)
    assert np.all(pmf.mass >= 0) and np.all(np.diff(pmf.mass) <= 0)
    assert abs(math.fsum(pmf.mass) + pmf.deficit - 1) < 1e-12
    assert 0 <= pmf.deficit <= pmf.deficit_bound


def test_support_formula():
    pmf = build_pmf(builtin_spec("zeta-zeta-axes"), (3.0, 4.0), 50)
    np.testing.assert_array_equal(pmf.x, -np.log(pmf.index.astype(float)) @ np.eye(2))


def test_negative_mass():
    with pytest.raises(NegativeMassError) as info:
        build_pmf(builtin_spec("dirichlet-chi4"), 2.0, 100)
    assert info.value.n == 3
    with pytest.raises(DomainError):
        build_pmf(builtin_spec("riemann"), 1.0, 100)


def test_draw_contract(riemann_pmf):
    assert draw(riemann_pmf, 1, 0).shape == (0, 1)
    a = draw(riemann_pmf, 42, 1000)
    b = draw(riemann_pmf, 42, 1000)
    np.testing.assert_array_equal(a, b)
    assert not np.array_equal(a, draw(riemann_pmf, 43, 1000))
    with pytest.raises(ValueError):
        draw(riemann_pmf, 1, -1)


def test_draw_refuses_large_deficit():
    pmf = build_pmf(builtin_spec("riemann"), 2.0, 100)
    with pytest.raises(DeficitError):
        draw(pmf, 1, 10)


def test_zero_frequency(riemann_pmf):
    M = 10**5
    x = draw(riemann_pmf, 42, M)
    p = 1 / ZETA2
    freq = np.mean(x[:, 0] == 0)
    assert abs(freq - p) <= 3 * math.sqrt(p * (1 - p) / M)


def test_empirical_cf(riemann_pmf):
    spec = builtin_spec("riemann")
    M = 10**5
    x = draw(riemann_pmf, 42, M)
    assert empirical_cf(x, 0.0) == 1
    for t in (0.5, 1.0, 3.0):
        assert abs(empirical_cf(x, t) - normalized_cf(spec, 2.0, t)) < 5 / math.sqrt(M)
    assert empirical_cf(np.zeros((1, 1)), 12.3) == 1
    with pytest.raises(ValueError):
        empirical_cf(np.zeros((0, 1)), 1.0)


def test_pmf_cf_matches_normalized(riemann_pmf):
    spec = builtin_spec("riemann")
    tol = riemann_pmf.deficit_bound + 2 * truncation_tail_bound(spec, 2.0)
    for t in np.linspace(-10, 10, 11):
        assert abs(pmf_cf(riemann_pmf, t) - normalized_cf(spec, 2.0, t)) <= tol


@pytest.mark.parametrize("name", ["riemann", "dedekind-qi", "fn:2", "zq", "zeta-k:2", "zeta2-lpi-lmi"])
def test_nonnegative_normalized(name):
    pmf = build_pmf(builtin_spec(name), 2.5, 2000)
    assert np.all(pmf.mass >= 0)
    assert pmf.deficit <= pmf.deficit_bound + 1e-12


def test_product_structure_two_ranks():
    spec = builtin_spec("zeta-zeta-axes")
    sig = (4.0, 4.0)
    pmf = build_pmf(spec, sig, 300)
    t1, t2 = 0.7, 2.1
    joint = pmf_cf(pmf, (t1, t2)) * pmf_cf(pmf, (0.0, 0.0))
    assert joint == pytest.approx(pmf_cf(pmf, (t1, 0.0)) * pmf_cf(pmf, (0.0, t2)), abs=1e-14)
    M = 10**5
    x = draw(pmf, 7, M)
    e = empirical_cf(x, (t1, t2))
    marg = empirical_cf(x, (t1, 0.0)) * empirical_cf(x, (0.0, t2))
    assert abs(e - marg) < 10 / math.sqrt(M)
    assert abs(e - normalized_cf(spec, sig, (t1, t2))) < 5 / math.sqrt(M)
