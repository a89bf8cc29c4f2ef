"""Three-way classification of normalized Euler products.

``f_sigma(t) = Z(sigma + it) / Z(sigma)`` is

* infinitely divisible when every power sum ``sum_k alpha_lk(p)^r`` is a
  nonnegative real,
* a characteristic function that is not infinitely divisible (quasi-infinitely
  divisible only) when some power sum fails but every Dirichlet coefficient
  ``a_l(n)`` is a nonnegative real,
* not a characteristic function when some ``a_l(n)`` is negative or non-real.

Both quantifiers run over infinitely many ``r`` or ``n``. The certificates below
close them where periodicity of exact unit values and geometric decay of the
rest allow it, and otherwise report the bounds actually checked.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .exact import ComplexRational, is_exact
from .numtheory import newton_series, power_sums_of, prime_index, primes_up_to
from .spec import DECAY, DependenceMode, EulerProductSpec, RootBranch, TruncationBounds

__all__ = [
    "ModeError",
    "ID",
    "QUASI",
    "ND",
    "UNDECIDED",
    "PowerSumCertificate",
    "CoefficientScan",
    "ClassificationVerdict",
    "certify_values",
    "certify_power_sums",
    "scan_coefficients",
    "classify",
    "classify_degree2",
    "reduce_integer_dependent",
    "structurally_nonnegative",
]

ID = "InfinitelyDivisible"
QUASI = "QuasiInfinitelyDivisibleOnly"
ND = "NotCharacteristic"
UNDECIDED = "Undecided"

DEAD_BAND = 1e-9
UNIT_TOL = 1e-12
CLASSIFY_BOUNDS = TruncationBounds(P=10**4, R=60, N=10**4)

_QUARTER = {ComplexRational(1): 0, ComplexRational(0, 1): 1, ComplexRational(-1): 2, ComplexRational(0, -1): 3}


class ModeError(ValueError):
    """The spec has integer-dependent directions; reduce it first."""


# ---------------------------------------------------------------- sign tests


def _sign_state(s) -> str:
    """'ok', 'bad' or 'band' for a power sum or coefficient value."""
    if is_exact(s):
        return "ok" if s.is_nonnegative_real() else "bad"
    s = complex(s)
    if abs(s.imag) > DEAD_BAND or s.real < -DEAD_BAND:
        return "bad"
    if s != 0 and abs(s.real) <= DEAD_BAND:
        return "band"
    return "ok"  # positive real part, rounding-level imaginary part


# ---------------------------------------------------------------- per-tuple certificate


@dataclass(frozen=True)
class TupleCertificate:
    status: str  # "ok" | "violation" | "undecided"
    complete: bool = False
    r: Optional[int] = None
    value: object = None


def _split(values):
    units, pos, other, odd_units = [], [], [], []
    decay = False
    for v in values:
        if v is DECAY:
            decay = True
        elif is_exact(v):
            if v.is_zero():
                continue
            if v in _QUARTER:
                units.append(_QUARTER[v])
            elif v.is_unit():
                odd_units.append(complex(v))
            elif v.is_real() and v.re > 0:
                pos.append(float(v.re))
            else:
                other.append(abs(complex(v)))
        else:
            c = complex(v)
            if c == 0:
                continue
            if abs(abs(c) - 1) <= UNIT_TOL:
                odd_units.append(c)
            elif c.imag == 0 and c.real > 0:
                pos.append(c.real)
            else:
                other.append(abs(c))
    return units, pos, other, odd_units, decay


def _conjugation_closed(values) -> bool:
    vals = [v for v in values if v is not DECAY and not (is_exact(v) and v.is_zero())]
    if not all(is_exact(v) for v in vals):
        return True  # numeric sums are tested directly
    pool = list(vals)
    while pool:
        v = pool.pop()
        if v.is_real():
            continue
        try:
            pool.remove(v.conjugate())
        except ValueError:
            return False
    return True


_I_POW = [1, 1j, -1, -1j]


def _unit_sum(units, r) -> int:
    return int(round(sum(_I_POW[(q * r) % 4] for q in units).real))


def certify_values(values, R: int) -> TupleCertificate:
    """Decide ``sum_k v_k^r >= 0`` for all ``r`` where possible.

    Exact values in ``{+-1, +-i}`` give a power sum with period 4; every other
    nonzero value has modulus below 1 and contributes a decaying tail, with
    positive reals only ever adding. ``DECAY`` stands for a positive value of
    unknown size (a generic ``p^-a``).
    """
    vals = list(values)
    concrete = [v for v in vals if v is not DECAY]
    units, pos, other, odd_units, decay = _split(vals)
    sums = power_sums_of(concrete, R) if concrete else [ComplexRational(0)] * R
    band_at = None
    for r, s in enumerate(sums, 1):
        st = _sign_state(s)
        if st == "bad":
            if decay and (is_exact(s) and s.is_real() or not is_exact(s) and abs(complex(s).imag) <= DEAD_BAND):
                # an unknown positive term could repair a negative real sum
                return TupleCertificate("undecided", r=r, value=s)
            return TupleCertificate("violation", True, r, s)
        if st == "band" and band_at is None and not decay:
            band_at = r
    if band_at is not None:
        return TupleCertificate("undecided", r=band_at, value=sums[band_at - 1])
    if odd_units or not _conjugation_closed(concrete):
        return TupleCertificate("ok", False)
    # closing the quantifier over r > R
    tail_sum = sum(other)
    max_pos = max(pos, default=0.0)
    dominated = not other or tail_sum <= max_pos
    complete = True
    for rho in range(4):
        su = _unit_sum(units, rho)
        r_next = R + 1 + ((rho - (R + 1)) % 4)
        t_next = sum(a**r_next for a in other)
        if su > 0:
            if not (dominated or t_next < su):
                complete = False
        elif su == 0:
            if not dominated:
                complete = False
        else:
            # a negative unit part eventually beats the decaying remainder
            if decay:
                complete = False
                continue
            r = r_next
            while r < 100 * R + 10**4:
                rest = sum(a**r for a in other) + sum(a**r for a in pos)
                if rest < -su:
                    s = power_sums_of(concrete, r)[-1]
                    return TupleCertificate("violation", True, r, s)
                r += 4
            complete = False
    return TupleCertificate("ok", complete)


# ---------------------------------------------------------------- spec-level power sums


@dataclass
class PowerSumCertificate:
    status: str  # "AllNonnegative" | "Violation" | "Undecided"
    complete: bool = False
    l: Optional[int] = None
    p: Optional[int] = None
    r: Optional[int] = None
    value: object = None
    bounds: tuple = ()
    notes: list = field(default_factory=list)


def _prime_iter(spec: EulerProductSpec, l: int, P: int):
    """Yield ``(p, index, values)`` for primes up to P, then special primes beyond."""
    primes = primes_up_to(P)
    for i, p in enumerate(primes, 1):
        yield int(p), i, spec.values(l, int(p), i)
    extra = sorted(q for q in spec.special_primes(l) if q > P)
    for q in extra:
        yield q, None, spec.values(l, q, prime_index(q))


def _generic_classes(spec: EulerProductSpec, l: int):
    """``[(res, j, values)]`` over the generic classes, or None if not periodic."""
    I = spec.rank_index_period(l)
    if I is None:
        return None
    L = spec.rank_modulus(l)
    out = []
    for res in range(L):
        if math.gcd(res, L) != 1:
            continue
        for j in range(I):
            out.append((res, j, spec.class_values(l, res, j)))
    return out


def _find_class_prime(spec, l, res, j, lo, hi):
    L, I = spec.rank_modulus(l), spec.rank_index_period(l)
    primes = primes_up_to(hi)
    special = spec.special_primes(l)
    for i, p in enumerate(primes, 1):
        p = int(p)
        if p > lo and p % L == res and i % I == j and p not in special:
            return p, i
    return None


def certify_power_sums(spec: EulerProductSpec, bounds: TruncationBounds = CLASSIFY_BOUNDS) -> PowerSumCertificate:
    """Certify ``sum_k alpha_lk(p)^r >= 0`` over all ``(l, p, r)``, or find a violation."""
    _require_reduced(spec)
    P, R = bounds.P, bounds.R
    complete = True
    undecided = None
    notes = []
    for l in range(1, spec.phi + 1):
        cache = {}
        for p, _, vals in _prime_iter(spec, l, P):
            cert = cache.get(vals)
            if cert is None:
                cert = cache[vals] = certify_values(vals, R)
            if cert.status == "violation":
                return PowerSumCertificate("Violation", True, l, p, cert.r, cert.value, (P, R))
            if cert.status == "undecided" and undecided is None:
                undecided = (l, p, cert.r, cert.value)
            complete &= cert.complete
        classes = _generic_classes(spec, l)
        if classes is None:
            complete = False
            notes.append(f"rank {l}: values do not repeat over primes; checked p <= {P} only")
            continue
        for res, j, vals in classes:
            cert = certify_values(vals, R)
            if cert.status == "ok":
                complete &= cert.complete
                continue
            hit = _find_class_prime(spec, l, res, j, P, 10 * P)
            if hit is not None:
                p, idx = hit
                c2 = certify_values(spec.values(l, p, idx), R)
                if c2.status == "violation":
                    return PowerSumCertificate("Violation", True, l, p, c2.r, c2.value, (P, R))
            complete = False
            notes.append(f"rank {l}: class p={res} mod {spec.rank_modulus(l)} may fail beyond p <= {P}")
    if undecided is not None:
        l, p, r, val = undecided
        return PowerSumCertificate("Undecided", False, l, p, r, val, (P, R),
                                   notes + ["power sum inside the numeric dead band"])
    return PowerSumCertificate("AllNonnegative", complete, bounds=(P, R), notes=notes)


# ---------------------------------------------------------------- coefficient scan


@dataclass
class CoefficientScan:
    witness: Optional[tuple] = None  # (l, n, value)
    undecided_at: Optional[tuple] = None  # (l, n, value)
    N: int = 0

    @property
    def clean(self) -> bool:
        return self.witness is None and self.undecided_at is None


def scan_coefficients(spec: EulerProductSpec, N: int = 10**4) -> CoefficientScan:
    """First ``(l, n <= N)`` with ``a_l(n)`` not a nonnegative real.

    ``a_l`` is multiplicative, so the first failure is at a prime power; only
    prime powers are examined. The smallest ``n`` over all ranks is reported.
    """
    best = None
    band = None
    for l in range(1, spec.phi + 1):
        cache = {}
        for i, p in enumerate(primes_up_to(N), 1):
            p = int(p)
            if best is not None and p > best[1]:
                break
            vals = spec.values(l, p, i)
            kmax, q = 0, 1
            while q * p <= N:
                q *= p
                kmax += 1
            key = (vals, kmax)
            h = cache.get(key)
            if h is None:
                h = cache[key] = newton_series(vals, kmax)
            q = p
            for k in range(1, kmax + 1):
                st = _sign_state(h[k])
                if st == "bad":
                    if best is None or (q, l) < (best[1], best[0]):
                        best = (l, q, h[k])
                    break
                if st == "band" and (band is None or q < band[1]):
                    band = (l, q, h[k])
                q *= p
    if band is not None and best is not None and best[1] < band[1]:
        band = None
    return CoefficientScan(best, band, N)


# ---------------------------------------------------------------- structure


def structurally_nonnegative(values) -> bool:
    """True when ``prod (1 - v x)^-1`` visibly has nonnegative coefficients.

    Exact unit values are grouped into factors ``{1, -1, i, -i}``,
    ``{1, i, -i}`` and ``{1, -1}`` (each with a nonnegative series); positive
    reals and zeros are always fine.
    """
    counts = {0: 0, 1: 0, 2: 0, 3: 0}
    for v in values:
        if v is DECAY:
            continue
        if not is_exact(v):
            c = complex(v)
            if c == 0 or (c.imag == 0 and c.real > 0):
                continue
            return False
        if v.is_zero() or (v.is_real() and v.re > 0 and v != 1):
            continue
        q = _QUARTER.get(v)
        if q is None:
            return False
        counts[q] += 1
    if counts[1] != counts[3]:
        return False
    return counts[0] >= max(counts[1], counts[2])


def _structural_certificate(spec: EulerProductSpec, P: int) -> bool:
    for l in range(1, spec.phi + 1):
        seen = set()
        for _, _, vals in _prime_iter(spec, l, P):
            if vals in seen:
                continue
            seen.add(vals)
            if not structurally_nonnegative(vals):
                return False
        classes = _generic_classes(spec, l)
        if classes is None or not all(structurally_nonnegative(v) for _, _, v in classes):
            return False
    return True


# ---------------------------------------------------------------- verdicts


@dataclass
class ClassificationVerdict:
    verdict: str
    witness: Optional[dict] = None
    bounds: dict = field(default_factory=dict)
    complete: bool = False
    notes: list = field(default_factory=list)

    def witness_text(self) -> str:
        if not self.witness:
            return "none"
        return ",".join(f"{k}:{_fmt_val(v)}" for k, v in self.witness.items())


def _fmt_val(v) -> str:
    if is_exact(v):
        return str(v).replace(" ", "")
    if isinstance(v, complex):
        return f"{v.real:.12g}{v.imag:+.12g}i" if v.imag else f"{v.real:.12g}"
    return str(v)


def _require_reduced(spec: EulerProductSpec) -> None:
    if spec.mode.kind == "integer":
        raise ModeError("integer-dependent directions: call reduce_integer_dependent first")


def classify(spec: EulerProductSpec, bounds: TruncationBounds = CLASSIFY_BOUNDS) -> ClassificationVerdict:
    """Full decision tree; specs with at most two exact factors per rank go to
    :func:`classify_degree2`, where the answer is always complete."""
    _require_reduced(spec)
    if spec.eta <= 2 and spec.is_exact:
        return classify_degree2(spec, bounds)
    cert = certify_power_sums(spec, bounds)
    bnd = {"P": bounds.P, "R": bounds.R}
    if cert.status == "AllNonnegative":
        return ClassificationVerdict(ID, None, bnd, cert.complete, cert.notes)
    scan = scan_coefficients(spec, bounds.N)
    bnd["N"] = bounds.N
    if scan.witness is not None:
        l, n, val = scan.witness
        return ClassificationVerdict(ND, {"l": l, "n": n, "a": val}, bnd, True)
    if cert.status == "Undecided" or scan.undecided_at is not None:
        notes = list(cert.notes)
        if scan.undecided_at is not None:
            notes.append(f"coefficient a_{scan.undecided_at[0]}({scan.undecided_at[1]}) inside the numeric dead band")
        return ClassificationVerdict(UNDECIDED, None, bnd, False, notes)
    complete = _structural_certificate(spec, bounds.P) and spec.is_exact
    notes = [] if complete else [f"coefficients checked for n <= {bounds.N} only"]
    wit = {"l": cert.l, "p": cert.p, "r": cert.r, "sum": cert.value}
    return ClassificationVerdict(QUASI, wit, bnd, complete, notes)


def _real_nonneg(v) -> bool:
    return v.is_nonnegative_real()


def _degree2_witness(vals, p: int, cap: int = 10**4):
    """Exponent ``r`` with ``h_r`` not a nonnegative real, or None if all are."""
    vals = [v for v in vals]
    if len(vals) == 1:
        vals = vals + [ComplexRational(0)]
    a, b = vals
    s1, e2 = a + b, a * b
    if not s1.is_real():
        return 1, s1
    if not e2.is_real():
        return 2, s1 * s1 - e2
    if a.is_real() and b.is_real():
        return (None, None) if s1.re >= 0 else (1, s1)
    # conjugate pair R e^{+-i theta}: h_r = R^r sin((r+1) theta) / sin(theta)
    h_prev, h = ComplexRational(1), s1
    if not _real_nonneg(h):
        return 1, h
    for r in range(2, cap):
        h_prev, h = h, s1 * h - e2 * h_prev
        if not _real_nonneg(h):
            return r, h
    return -1, None


def classify_degree2(spec: EulerProductSpec, bounds: TruncationBounds = CLASSIFY_BOUNDS) -> ClassificationVerdict:
    """Complete verdict for ``eta <= 2`` with exact values: infinitely divisible
    or not a characteristic function, never quasi-only."""
    _require_reduced(spec)
    if spec.eta > 2 or not spec.is_exact:
        raise ValueError("classify_degree2 needs eta <= 2 and exact coefficient values")
    P = bounds.P
    best = None
    for l in range(1, spec.phi + 1):
        cache = {}
        for p, _, vals in _prime_iter(spec, l, P):
            if best is not None and p > best[1]:
                break
            hit = cache.get(vals)
            if hit is None:
                hit = cache[vals] = _degree2_witness(vals, p)
            r, val = hit
            if r == -1:
                return ClassificationVerdict(UNDECIDED, None, {"P": P}, False, [f"no sign change found at p={p}"])
            if r is not None and (best is None or p**r < best[1]):
                best = (l, p**r, val)
        classes = _generic_classes(spec, l) or []
        for res, j, vals in classes:
            r, _ = _degree2_witness(vals, 0)
            if r is None:
                continue
            found = _find_class_prime(spec, l, res, j, 1, max(10 * P, 10**5))
            if found is None:
                continue
            p, idx = found
            r, val = _degree2_witness(spec.values(l, p, idx), p)
            if best is None or p**r < best[1]:
                best = (l, p**r, val)
    if best is None:
        return ClassificationVerdict(ID, None, {"P": P}, True)
    l, n, val = best
    return ClassificationVerdict(ND, {"l": l, "n": n, "a": val}, {"P": P}, True)


# ---------------------------------------------------------------- reduction


def reduce_integer_dependent(spec: EulerProductSpec) -> EulerProductSpec:
    """Rewrite ``c_l = g_l c`` as a single rank in direction ``c``.

    Each factor ``1 - alpha x^g`` becomes ``prod_{k=1..g} (1 - alpha^{1/g}
    e^{2 pi i k/g} x)``; the new degree is ``sum_l g_l * eta``. A spec with
    ``g = (1,)`` is returned with the same rules.
    """
    if spec.mode.kind != "integer":
        raise ModeError("reduce_integer_dependent needs integer-dependent directions")
    gammas = [int(g) for g in spec.mode.gammas]
    base = tuple(Fraction(x) / gammas[0] if isinstance(x, Fraction) else float(x) / gammas[0]
                 for x in spec.directions[0])
    rules = []
    for l, g in enumerate(gammas, 1):
        for rule in spec.rules[l - 1]:
            if g == 1:
                rules.append(rule)
            else:
                rules.extend(RootBranch(rule, g, k) for k in range(1, g + 1))
    return EulerProductSpec(spec.dimension, 1, len(rules), (base,), (tuple(rules),), DependenceMode(),
                            (spec.name + "/reduced") if spec.name else "")
