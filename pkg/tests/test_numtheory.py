import math
import random
from fractions import Fraction

import numpy as np
import pytest

from euler_zeta import kernels
from euler_zeta.builtins import BUILTIN_NAMES, builtin_spec
from euler_zeta.exact import ComplexRational
from euler_zeta.numtheory import (
    dirichlet_coefficients,
    factorize,
    local_coefficients,
    newton_series,
    power_sum,
    power_sums_of,
    prime_index,
    primes_up_to,
    squarefree_indicator,
)

from conftest import random_unit_disc

ONE, I, ZERO = ComplexRational(1), ComplexRational(0, 1), ComplexRational(0)


def _trial_division_is_prime(n):
    return n >= 2 and all(n % d for d in range(2, math.isqrt(n) + 1))


def test_primes_small():
    assert primes_up_to(10).tolist() == [2, 3, 5, 7]
    assert primes_up_to(2).tolist() == [2]
    assert primes_up_to(1).tolist() == []


def test_prime_count_million(backend):
    flags = kernels.prime_flags(10**6)
    assert int(flags.sum()) == 78498
    assert len(primes_up_to(10**6)) == 78498


def test_sieve_matches_trial_division(backend):
    flags = kernels.prime_flags(3000)
    assert [n for n in range(3001) if flags[n]] == [n for n in range(3001) if _trial_division_is_prime(n)]


def test_prime_index():
    assert [prime_index(p) for p in (2, 3, 5, 7, 11, 7919)] == [1, 2, 3, 4, 5, 1000]
    assert prime_index(1_000_003) == 78499


def test_factorize_examples():
    assert factorize(1) == []
    assert factorize(12) == [(2, 2), (3, 1)]
    assert factorize(2**5 * 7**3) == [(2, 5), (7, 3)]
    with pytest.raises(ValueError):
        factorize(0)


def test_factorize_reconstructs(rng):
    for _ in range(300):
        n = rng.randint(1, 10**8)
        fac = factorize(n)
        assert math.prod(p**e for p, e in fac) == n
        assert all(_trial_division_is_prime(p) for p, _ in fac)
        assert [p for p, _ in fac] == sorted({p for p, _ in fac})


def test_power_sum_examples():
    assert power_sums_of([ONE, ONE, I, -I], 2)[-1] == 0
    for n in (1, 2, 5):
        spec = builtin_spec(f"fn:{n}")
        for r in (2, 6, 10, 14):
            assert power_sum(spec, 1, 2, r) == n - 2
    eta = 4
    spec = builtin_spec(f"zq-eta:{eta}")
    for j in (1, 2, 3):
        r = 4 * j - 2
        assert power_sum(spec, 1, 2, r) == -1 + Fraction(eta - 3, eta**r)


def test_local_coefficient_examples():
    assert local_coefficients(builtin_spec("zq"), 1, 2, 5).values == tuple(map(ComplexRational, (1, 1, 0, 0, 1, 1)))
    assert newton_series([ONE, -ONE], 3) == [1, 0, 1, 0]
    assert newton_series([ONE, ONE], 3)[3] == 4
    assert newton_series([ZERO, ZERO, ZERO], 6) == [1, 0, 0, 0, 0, 0, 0]
    assert newton_series([], 3) == [1, 0, 0, 0]


def _brute_force(values, r_max):
    """Coefficients of prod (1 - v x)^-1 by multiplying geometric series."""
    out = [ComplexRational(1)] + [ComplexRational(0)] * r_max
    for v in values:
        geo = [v**k for k in range(r_max + 1)]
        out = [sum((out[i] * geo[r - i] for i in range(r + 1)), ComplexRational(0)) for r in range(r_max + 1)]
    return out


def test_newton_matches_brute_force():
    rng = random.Random(7)
    for trial in range(50):
        eta = 1 + trial % 4
        values = [random_unit_disc(rng) for _ in range(eta)]
        assert newton_series(values, 12) == _brute_force(values, 12)


def test_zeta_k_binomial():
    for k in (1, 2, 3, 5):
        spec = builtin_spec(f"zeta-k:{k}")
        for p in primes_up_to(20):
            h = local_coefficients(spec, 1, int(p), 10).values
            assert [int(x.re) for x in h] == [math.comb(r + k - 1, k - 1) for r in range(11)]


def test_numeric_series_flagged():
    from euler_zeta.spec import EulerProductSpec, PowerDecay

    spec = EulerProductSpec(1, 1, 1, ((1,),), ((PowerDecay("1/2"),),))
    series = local_coefficients(spec, 1, 3, 4)
    assert not series.exact
    assert series.values[2] == pytest.approx(3 ** -1.0)


def test_dedekind_coefficients():
    tab = dirichlet_coefficients(builtin_spec("dedekind-qi"), 1, 100)
    chi = {0: 0, 1: 1, 2: 0, 3: -1}
    for n in range(1, 101):
        expected = sum(chi[d % 4] for d in range(1, n + 1) if n % d == 0)
        assert tab[n] == expected
    assert tab[5] == 2 and tab[3] == 0


@pytest.mark.parametrize("name", list(BUILTIN_NAMES) + ["fn:3", "zeta-k:3", "zq-eta:5"])
def test_multiplicativity(name):
    spec = builtin_spec(name)
    N = 10**4
    for l in range(1, spec.phi + 1):
        a = dirichlet_coefficients(spec, l, N).values
        assert a[1] == 1
        m = np.arange(1, 101)
        for n in range(1, N // 2 + 1):
            ms = m[(m * n <= N) & (np.gcd(m, n) == 1)]
            if ms.size:
                np.testing.assert_allclose(a[ms * n], a[ms] * a[n], rtol=0, atol=1e-12)


def test_multiplicativity_all_pairs_riemann_family():
    # all coprime pairs, not just small m, on a spec with varied coefficients
    spec = builtin_spec("zeta2-lpi-lmi")
    N = 10**4
    a = dirichlet_coefficients(spec, 1, N).values
    for m in range(2, 101):
        ns = np.arange(m, N // m + 1)
        ns = ns[np.gcd(ns, m) == 1]
        np.testing.assert_allclose(a[m * ns], a[m] * a[ns], atol=1e-9)


def test_tables_agree_across_backends(monkeypatch):
    if "numba" not in __import__("conftest").BACKENDS:
        pytest.skip("numba unavailable")
    spec = builtin_spec("zq-eta:5")
    primes = primes_up_to(5000)
    from euler_zeta.numtheory import prime_power_values

    _, pp, _, _ = prime_power_values(spec, 1, 5000)
    monkeypatch.setenv("EULER_ZETA_BACKEND", "numpy")
    a = kernels.multiplicative_table(5000, primes, pp)
    monkeypatch.setenv("EULER_ZETA_BACKEND", "numba")
    b = kernels.multiplicative_table(5000, primes, pp)
    np.testing.assert_allclose(a, b, atol=1e-14)


def test_squarefree_indicator():
    sf = squarefree_indicator(1000)
    for n in range(1, 1001):
        assert sf[n] == all(e == 1 for _, e in factorize(n))
