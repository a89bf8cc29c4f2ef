"""Euler-product specifications: coefficient rules, the product spec, and the
JSON spec-file format.

A spec describes

    Z(s) = prod_p prod_{l<=phi} prod_{k<=eta} (1 - alpha_lk(p) p^{-<c_l, s>})^{-1}

with ``d``-dimensional direction vectors ``c_l`` and one
:class:`CoefficientRule` per ``(l, k)`` that yields ``alpha_lk(p)``.
"""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

from .exact import ComplexRational, format_complex, parse_complex

__all__ = [
    "SpecError",
    "SpecSyntaxError",
    "SpecConstraintError",
    "DECAY",
    "ConstantExact",
    "PowerDecay",
    "DirichletCharacter",
    "UnitPowerByIndex",
    "FiniteSupport",
    "RootBranch",
    "CoefficientRule",
    "DependenceMode",
    "EulerProductSpec",
    "TruncationBounds",
    "DependenceReport",
    "parse_spec",
    "serialize_spec",
    "validate_dependence",
    "rule_from_dict",
    "rule_to_dict",
]

ONE = ComplexRational(1)
ZERO = ComplexRational(0)
_UNIT_QUARTERS = {ComplexRational(1): 0, ComplexRational(0, 1): 1, ComplexRational(-1): 2, ComplexRational(0, -1): -1}
_QUARTER_UNITS = [ComplexRational(1), ComplexRational(0, 1), ComplexRational(-1), ComplexRational(0, -1)]


class SpecError(ValueError):
    """Base class for spec parsing and validation failures."""


class SpecSyntaxError(SpecError):
    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(message + where)
        self.line = line
        self.column = column


class SpecConstraintError(SpecError):
    pass


class _Decay:
    """Marker for a class value that is a positive real tending to 0 with p."""

    def __repr__(self):
        return "DECAY"


DECAY = _Decay()


def _check_bound(v: ComplexRational, what: str) -> None:
    if v.norm() > 1:
        raise SpecConstraintError(f"{what}: |{v}| > 1")


# ------------------------------------------------------------------ rules
#
# Every rule exposes the same small interface:
#   value_at(p, index)     value at the prime p, the index-th prime
#   special_primes()       primes whose value is not the generic class value
#   modulus, index_period  generic primes are classified by (p mod modulus,
#                          index mod index_period); index_period None means the
#                          values never repeat and no class argument applies
#   class_value(res, j)    value shared by generic primes with p = res (mod
#                          modulus) and index = j (mod index_period)
#   is_exact               every value is a ComplexRational


@dataclass(frozen=True)
class ConstantExact:
    value: ComplexRational

    def __post_init__(self):
        object.__setattr__(self, "value", ComplexRational.coerce(self.value))
        _check_bound(self.value, "constant")

    modulus = 1
    index_period = 1
    is_exact = True

    def value_at(self, p: int, index: int):
        return self.value

    def special_primes(self) -> frozenset:
        return frozenset()

    def class_value(self, res: int, j: int):
        return self.value

    def vanishes_generically(self) -> bool:
        return self.value.is_zero()


@dataclass(frozen=True)
class PowerDecay:
    """``alpha(p) = p^-exponent`` with a positive rational exponent."""

    exponent: Fraction

    def __post_init__(self):
        object.__setattr__(self, "exponent", Fraction(self.exponent))
        if self.exponent <= 0:
            raise SpecConstraintError("power_decay exponent must be positive")

    modulus = 1
    index_period = 1
    is_exact = False

    def value_at(self, p: int, index: int):
        return complex(p ** (-float(self.exponent)))

    def special_primes(self) -> frozenset:
        return frozenset()

    def class_value(self, res: int, j: int):
        return DECAY

    def vanishes_generically(self) -> bool:
        return False


def _prime_divisors(q: int) -> frozenset:
    out, d = set(), 2
    while d * d <= q:
        while q % d == 0:
            out.add(d)
            q //= d
        d += 1
    if q > 1:
        out.add(q)
    return frozenset(out)


@dataclass(frozen=True)
class DirichletCharacter:
    """A residue table mod ``modulus``; zero on residues sharing a factor with it."""

    modulus: int
    table: tuple

    def __post_init__(self):
        q = int(self.modulus)
        if q < 1:
            raise SpecConstraintError("character modulus must be positive")
        tab = tuple(ComplexRational.coerce(v) for v in self.table)
        if len(tab) != q:
            raise SpecConstraintError(f"character table needs {q} entries, got {len(tab)}")
        for r, v in enumerate(tab):
            _check_bound(v, f"character value at residue {r}")
            if math.gcd(r, q) != 1 and not v.is_zero():
                raise SpecConstraintError(f"character value at non-coprime residue {r} must be 0")
        coprime = [r for r in range(q) if math.gcd(r, q) == 1]
        for a in coprime:
            for b in coprime:
                if tab[a * b % q] != tab[a] * tab[b]:
                    raise SpecConstraintError(
                        f"character table is not multiplicative at residues {a}, {b} mod {q}"
                    )
        object.__setattr__(self, "modulus", q)
        object.__setattr__(self, "table", tab)

    index_period = 1
    is_exact = True

    @classmethod
    def from_mapping(cls, modulus: int, mapping: dict) -> "DirichletCharacter":
        tab = [ZERO] * modulus
        for r, v in mapping.items():
            r = int(r)
            if not 0 <= r < modulus:
                raise SpecConstraintError(f"character residue {r} out of range mod {modulus}")
            tab[r] = v if isinstance(v, ComplexRational) else parse_complex(str(v))
        return cls(modulus, tuple(tab))

    def value_at(self, p: int, index: int):
        return self.table[p % self.modulus]

    def special_primes(self) -> frozenset:
        return _prime_divisors(self.modulus)

    def class_value(self, res: int, j: int):
        return self.table[res % self.modulus]

    def vanishes_generically(self) -> bool:
        return all(v.is_zero() for r, v in enumerate(self.table) if math.gcd(r, self.modulus) == 1)


@dataclass(frozen=True)
class UnitPowerByIndex:
    """``alpha(p_n) = base^n`` where ``p_n`` is the n-th prime (``p_1 = 2``).

    Bases in ``{1, -1, i, -i}`` give exact, periodic values. Any other unit base
    is evaluated in floating point (exact powers would grow without bound).
    """

    base: ComplexRational

    def __post_init__(self):
        object.__setattr__(self, "base", ComplexRational.coerce(self.base))
        if not self.base.is_unit():
            raise SpecConstraintError(f"unit_power_by_index base must have modulus 1, got {self.base}")

    modulus = 1

    @property
    def index_period(self) -> Optional[int]:
        q = _UNIT_QUARTERS.get(self.base)
        if q is None:
            return None
        return {0: 1, 2: 2, 1: 4, -1: 4}[q]

    @property
    def is_exact(self) -> bool:
        return self.index_period is not None

    def value_at(self, p: int, index: int):
        period = self.index_period
        if period is None:
            return complex(self.base) ** index
        return self.base ** (index % period)

    def special_primes(self) -> frozenset:
        return frozenset()

    def class_value(self, res: int, j: int):
        return self.base ** (j % self.index_period)

    def vanishes_generically(self) -> bool:
        return False


@dataclass(frozen=True)
class FiniteSupport:
    """Explicit values on finitely many primes, ``default`` elsewhere."""

    values: tuple  # sorted ((p, ComplexRational), ...)
    default: "CoefficientRule" = field(default_factory=lambda: ConstantExact(ZERO))

    def __post_init__(self):
        items = self.values.items() if isinstance(self.values, dict) else self.values
        vals = []
        for p, v in items:
            p = int(p)
            if p < 2 or any(p % d == 0 for d in range(2, math.isqrt(p) + 1)):
                raise SpecConstraintError(f"finite_support key {p} is not a prime")
            v = v if isinstance(v, ComplexRational) else parse_complex(str(v))
            _check_bound(v, f"finite_support value at p={p}")
            vals.append((p, v))
        object.__setattr__(self, "values", tuple(sorted(vals)))

    @property
    def mapping(self) -> dict:
        return dict(self.values)

    @property
    def modulus(self) -> int:
        return self.default.modulus

    @property
    def index_period(self):
        return self.default.index_period

    @property
    def is_exact(self) -> bool:
        return self.default.is_exact

    def value_at(self, p: int, index: int):
        for q, v in self.values:
            if q == p:
                return v
        return self.default.value_at(p, index)

    def special_primes(self) -> frozenset:
        return frozenset(q for q, _ in self.values) | self.default.special_primes()

    def class_value(self, res: int, j: int):
        return self.default.class_value(res, j)

    def vanishes_generically(self) -> bool:
        return self.default.vanishes_generically()


def _has_decay(rule) -> bool:
    if isinstance(rule, PowerDecay):
        return True
    if isinstance(rule, FiniteSupport):
        return _has_decay(rule.default)
    if isinstance(rule, RootBranch):
        return _has_decay(rule.of)
    return False


@dataclass(frozen=True)
class RootBranch:
    """``alpha(p) = of(p)^(1/degree) * exp(2 pi i branch / degree)`` (principal root).

    Used when a factor ``1 - alpha p^{-g<c,s>}`` is split into ``g`` factors in
    ``p^{-<c,s>}``. The value stays exact when it lands in ``{0, +-1, +-i}``.
    """

    of: "CoefficientRule"
    degree: int
    branch: int

    def __post_init__(self):
        if int(self.degree) < 1:
            raise SpecConstraintError("root degree must be a positive integer")
        object.__setattr__(self, "degree", int(self.degree))
        object.__setattr__(self, "branch", int(self.branch))

    def _root(self, v):
        g, k = self.degree, self.branch
        if v is DECAY:
            return DECAY
        if isinstance(v, ComplexRational):
            if v.is_zero():
                return ZERO
            q = _UNIT_QUARTERS.get(v)
            if g == 1:
                return v
            if q is not None and (q + 4 * k) % g == 0:
                return _QUARTER_UNITS[((q + 4 * k) // g) % 4]
        v = complex(v)
        if v == 0:
            return 0j
        return cmath.exp((math.log(abs(v)) + 1j * cmath.phase(v)) / g + 2j * math.pi * k / g)

    @property
    def modulus(self) -> int:
        return self.of.modulus

    @property
    def index_period(self):
        # a root of p^-a is only a positive real on the trivial branch
        if _has_decay(self.of) and self.branch % self.degree != 0:
            return None
        return self.of.index_period

    @property
    def is_exact(self) -> bool:
        return self.of.is_exact and all(isinstance(self._root(v), ComplexRational) for v in self._exact_range())

    def _exact_range(self):
        of = self.of
        vals = []
        if isinstance(of, FiniteSupport):
            vals.extend(v for _, v in of.values)
            of = of.default
        if isinstance(of, ConstantExact):
            vals.append(of.value)
        elif isinstance(of, DirichletCharacter):
            vals.extend(of.table)
        elif isinstance(of, UnitPowerByIndex) and of.index_period:
            vals.extend(of.base**j for j in range(of.index_period))
        else:
            vals.append(None)
        return [v if v is not None else 0.5j for v in vals]

    def value_at(self, p: int, index: int):
        return self._root(self.of.value_at(p, index))

    def special_primes(self) -> frozenset:
        return self.of.special_primes()

    def class_value(self, res: int, j: int):
        return self._root(self.of.class_value(res, j))

    def vanishes_generically(self) -> bool:
        return self.of.vanishes_generically()


CoefficientRule = Union[ConstantExact, PowerDecay, DirichletCharacter, UnitPowerByIndex, FiniteSupport, RootBranch]


# ------------------------------------------------------------------ spec


@dataclass(frozen=True)
class DependenceMode:
    """How the direction vectors relate: ``independent``, ``scalar`` or ``integer``."""

    kind: str = "independent"
    gammas: tuple = ()

    def __post_init__(self):
        if self.kind not in ("independent", "scalar", "integer"):
            raise SpecConstraintError(f"unknown dependence mode {self.kind!r}")
        if self.kind == "independent":
            if self.gammas:
                raise SpecConstraintError("independent mode takes no scaling factors")
            return
        gam = tuple(Fraction(g) if isinstance(g, (int, Fraction)) else float(g) for g in self.gammas)
        object.__setattr__(self, "gammas", gam)
        if self.kind == "scalar":
            if not gam or gam[0] != 1:
                raise SpecConstraintError("scalar mode requires gamma_1 = 1")
            if len(set(float(g) for g in gam)) != len(gam):
                raise SpecConstraintError("scalar mode requires distinct scaling factors")
        else:
            for g in gam:
                if isinstance(g, float) or g.denominator != 1 or g < 1:
                    raise SpecConstraintError("integer mode requires positive-integer scaling factors")

    def __str__(self):
        if self.kind == "independent":
            return "independent"
        return f"{self.kind}:" + ",".join(_num_str(g) for g in self.gammas)


def _num_str(x) -> str:
    if isinstance(x, Fraction):
        return str(x)
    return repr(float(x))


@dataclass(frozen=True)
class EulerProductSpec:
    dimension: int
    phi: int
    eta: int
    directions: tuple
    rules: tuple
    mode: DependenceMode = DependenceMode()
    name: str = ""

    def __post_init__(self):
        if self.dimension < 1 or self.phi < 1 or self.eta < 1:
            raise SpecConstraintError("dimension, phi and eta must be positive integers")
        dirs = tuple(tuple(_coerce_number(x) for x in row) for row in self.directions)
        if len(dirs) != self.phi:
            raise SpecConstraintError(f"expected {self.phi} direction vectors, got {len(dirs)}")
        for l, row in enumerate(dirs, 1):
            if len(row) != self.dimension:
                raise SpecConstraintError(f"direction c_{l} has length {len(row)}, expected {self.dimension}")
            if all(x == 0 for x in row):
                raise SpecConstraintError(f"direction c_{l} is the zero vector")
        rules = tuple(tuple(r) for r in self.rules)
        if len(rules) != self.phi or any(len(r) != self.eta for r in rules):
            raise SpecConstraintError(f"rules must form a {self.phi}x{self.eta} grid")
        object.__setattr__(self, "directions", dirs)
        object.__setattr__(self, "rules", rules)
        if self.mode.kind != "independent" and len(self.mode.gammas) != self.phi:
            raise SpecConstraintError(f"mode {self.mode.kind} needs {self.phi} scaling factors")

    # coefficient access
    def values(self, l: int, p: int, index: int) -> tuple:
        """``(alpha_l1(p), ..., alpha_l,eta(p))`` for rank ``l`` (1-based)."""
        return tuple(rule.value_at(p, index) for rule in self.rules[l - 1])

    def direction_floats(self, l: int) -> tuple:
        return tuple(float(x) for x in self.directions[l - 1])

    def special_primes(self, l: Optional[int] = None) -> frozenset:
        ranks = [l] if l is not None else range(1, self.phi + 1)
        out = frozenset()
        for ll in ranks:
            for rule in self.rules[ll - 1]:
                out |= rule.special_primes()
        return out

    def rank_is_finite(self, l: int) -> bool:
        """True when every factor of rank ``l`` is 1 outside finitely many primes."""
        return all(rule.vanishes_generically() for rule in self.rules[l - 1])

    @property
    def is_finite_support(self) -> bool:
        return all(self.rank_is_finite(l) for l in range(1, self.phi + 1))

    @property
    def is_exact(self) -> bool:
        return all(rule.is_exact for row in self.rules for rule in row)

    def rank_modulus(self, l: int) -> int:
        m = 1
        for rule in self.rules[l - 1]:
            m = m * rule.modulus // math.gcd(m, rule.modulus)
        return m

    def rank_index_period(self, l: int) -> Optional[int]:
        """Common period of the index classes, or None if some rule never repeats."""
        m = 1
        for rule in self.rules[l - 1]:
            per = rule.index_period
            if per is None:
                return None
            m = m * per // math.gcd(m, per)
        return m

    def class_values(self, l: int, res: int, j: int) -> tuple:
        return tuple(rule.class_value(res, j) for rule in self.rules[l - 1])

    def with_name(self, name: str) -> "EulerProductSpec":
        return EulerProductSpec(self.dimension, self.phi, self.eta, self.directions, self.rules, self.mode, name)


def _coerce_number(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise SpecConstraintError("boolean is not a number")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        if not math.isfinite(x):
            raise SpecConstraintError("direction entries must be finite")
        return x
    if isinstance(x, str):
        try:
            return Fraction(x.strip()) if "/" in x else _decimal(x)
        except (ValueError, ZeroDivisionError) as exc:
            raise SpecConstraintError(f"bad number {x!r}") from exc
    raise SpecConstraintError(f"bad number {x!r}")


def _decimal(text: str):
    text = text.strip()
    try:
        return Fraction(int(text))
    except ValueError:
        return float(text)


@dataclass(frozen=True)
class TruncationBounds:
    """Cutoffs for primes (``P``), prime powers (``R``) and coefficients (``N``)."""

    P: int = 10**5
    R: int = 60
    N: int = 10**4

    def __post_init__(self):
        if self.P < 2 or self.R < 1 or self.N < 1:
            raise ValueError("bounds need P >= 2, R >= 1, N >= 1")


# ------------------------------------------------------------------ dependence


@dataclass
class DependenceReport:
    ok: bool
    mode: str
    rank: Optional[int] = None
    message: str = ""
    notes: list = field(default_factory=list)


def _numeric_rank(rows: Sequence[Sequence[float]], tol: float = 1e-10) -> int:
    a = [list(map(float, r)) for r in rows]
    if not a:
        return 0
    nrows, ncols = len(a), len(a[0])
    rank = 0
    for col in range(ncols):
        pivot = max(range(rank, nrows), key=lambda i: abs(a[i][col]), default=None)
        if pivot is None or abs(a[pivot][col]) <= tol:
            continue
        a[rank], a[pivot] = a[pivot], a[rank]
        for i in range(rank + 1, nrows):
            f = a[i][col] / a[rank][col]
            for j in range(col, ncols):
                a[i][j] -= f * a[rank][j]
        rank += 1
        if rank == nrows:
            break
    return rank


def validate_dependence(spec: EulerProductSpec) -> DependenceReport:
    mode = spec.mode
    if mode.kind == "independent":
        rank = _numeric_rank(spec.directions)
        ok = rank == spec.phi
        msg = f"rank {rank} of {spec.phi} direction vectors"
        return DependenceReport(ok, "independent", rank, msg + ("" if ok else ": linearly dependent"))
    base = spec.direction_floats(1)
    bad = []
    for l in range(1, spec.phi + 1):
        g = float(mode.gammas[l - 1])
        if mode.kind == "integer":
            gcd_base = [float(x) / float(mode.gammas[0]) for x in spec.directions[0]]
            expect = [g * x for x in gcd_base]
        else:
            expect = [g * x for x in base]
        got = spec.direction_floats(l)
        if any(abs(e - x) > 1e-12 * max(1.0, abs(e)) for e, x in zip(expect, got)):
            bad.append(l)
    if bad:
        return DependenceReport(False, mode.kind, None, f"c_l != gamma_l * c for l in {bad}")
    if mode.kind == "scalar":
        return DependenceReport(
            True, "scalar", None, "directions are declared scalar multiples",
            ["rational linear independence of the scaling factors is user-declared, not decided"],
        )
    return DependenceReport(
        True, "integer", None, "directions are positive-integer multiples of one vector",
        ["reduce before classification"],
    )


# ------------------------------------------------------------------ file format

_TOP_KEYS = {"dimension", "phi", "eta", "directions", "mode", "rules", "name"}
_RULE_KEYS = {
    "constant": {"kind", "value"},
    "power_decay": {"kind", "exponent"},
    "character": {"kind", "modulus", "values"},
    "unit_power_by_index": {"kind", "base"},
    "finite_support": {"kind", "values", "default"},
    "root": {"kind", "of", "degree", "branch"},
}


def rule_from_dict(obj, where: str = "rule") -> CoefficientRule:
    if not isinstance(obj, dict):
        raise SpecConstraintError(f"{where}: rule must be an object")
    kind = obj.get("kind")
    if kind not in _RULE_KEYS:
        raise SpecConstraintError(f"{where}: unknown rule kind {kind!r}")
    extra = set(obj) - _RULE_KEYS[kind]
    if extra:
        raise SpecConstraintError(f"{where}: unknown keys {sorted(extra)}")
    missing = _RULE_KEYS[kind] - set(obj) - ({"default"} if kind == "finite_support" else set())
    if missing:
        raise SpecConstraintError(f"{where}: missing keys {sorted(missing)}")
    try:
        if kind == "constant":
            return ConstantExact(_cr(obj["value"]))
        if kind == "power_decay":
            return PowerDecay(Fraction(str(obj["exponent"])))
        if kind == "character":
            return DirichletCharacter.from_mapping(int(obj["modulus"]), {int(k): _cr(v) for k, v in obj["values"].items()})
        if kind == "unit_power_by_index":
            return UnitPowerByIndex(_cr(obj["base"]))
        if kind == "finite_support":
            default = rule_from_dict(obj["default"], where + ".default") if "default" in obj else ConstantExact(ZERO)
            return FiniteSupport(tuple((int(k), _cr(v)) for k, v in obj["values"].items()), default)
        return RootBranch(rule_from_dict(obj["of"], where + ".of"), int(obj["degree"]), int(obj["branch"]))
    except SpecConstraintError as exc:
        raise SpecConstraintError(f"{where}: {exc}") from None
    except (ValueError, TypeError, AttributeError, ZeroDivisionError) as exc:
        raise SpecConstraintError(f"{where}: {exc}") from None


def _cr(v) -> ComplexRational:
    if isinstance(v, bool):
        raise ValueError("boolean is not a complex literal")
    if isinstance(v, int):
        return ComplexRational(v)
    return parse_complex(str(v))


def rule_to_dict(rule: CoefficientRule) -> dict:
    if isinstance(rule, ConstantExact):
        return {"kind": "constant", "value": format_complex(rule.value)}
    if isinstance(rule, PowerDecay):
        return {"kind": "power_decay", "exponent": str(rule.exponent)}
    if isinstance(rule, DirichletCharacter):
        return {
            "kind": "character",
            "modulus": rule.modulus,
            "values": {str(r): format_complex(v) for r, v in enumerate(rule.table) if not v.is_zero()},
        }
    if isinstance(rule, UnitPowerByIndex):
        return {"kind": "unit_power_by_index", "base": format_complex(rule.base)}
    if isinstance(rule, FiniteSupport):
        return {
            "kind": "finite_support",
            "values": {str(p): format_complex(v) for p, v in rule.values},
            "default": rule_to_dict(rule.default),
        }
    if isinstance(rule, RootBranch):
        return {"kind": "root", "of": rule_to_dict(rule.of), "degree": rule.degree, "branch": rule.branch}
    raise TypeError(f"unknown rule {rule!r}")


def _parse_mode(text) -> DependenceMode:
    if not isinstance(text, str):
        raise SpecConstraintError("mode must be a string")
    text = text.strip()
    if text == "independent":
        return DependenceMode()
    kind, sep, rest = text.partition(":")
    if not sep or kind not in ("scalar", "integer"):
        raise SpecConstraintError(f"bad mode {text!r}")
    return DependenceMode(kind, tuple(_coerce_number(g.strip()) for g in rest.split(",") if g.strip()))


def parse_spec(text: str) -> EulerProductSpec:
    """Parse and validate spec-file content (JSON, see the README for the grammar)."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecSyntaxError(exc.msg, exc.lineno, exc.colno) from None
    if not isinstance(doc, dict):
        raise SpecSyntaxError("spec document must be a JSON object", 1, 1)
    extra = set(doc) - _TOP_KEYS
    if extra:
        raise SpecConstraintError(f"unknown keys {sorted(extra)}")
    missing = (_TOP_KEYS - {"name", "mode"}) - set(doc)
    if missing:
        raise SpecConstraintError(f"missing keys {sorted(missing)}")
    try:
        d, phi, eta = int(doc["dimension"]), int(doc["phi"]), int(doc["eta"])
    except (TypeError, ValueError):
        raise SpecConstraintError("dimension, phi and eta must be integers") from None
    rules_doc = doc["rules"]
    if not isinstance(rules_doc, list) or any(not isinstance(row, list) for row in rules_doc):
        raise SpecConstraintError("rules must be an array of arrays")
    rules = tuple(
        tuple(rule_from_dict(r, f"rules[{i}][{j}]") for j, r in enumerate(row)) for i, row in enumerate(rules_doc)
    )
    dirs = doc["directions"]
    if not isinstance(dirs, list) or any(not isinstance(row, list) for row in dirs):
        raise SpecConstraintError("directions must be an array of arrays")
    spec = EulerProductSpec(
        d, phi, eta, tuple(tuple(row) for row in dirs), rules,
        _parse_mode(doc.get("mode", "independent")), str(doc.get("name", "")),
    )
    report = validate_dependence(spec)
    if not report.ok:
        raise SpecConstraintError(f"inconsistent mode: {report.message}")
    return spec


def serialize_spec(spec: EulerProductSpec) -> str:
    doc = {
        "name": spec.name,
        "dimension": spec.dimension,
        "phi": spec.phi,
        "eta": spec.eta,
        "directions": [[_dir_out(x) for x in row] for row in spec.directions],
        "mode": str(spec.mode),
        "rules": [[rule_to_dict(r) for r in row] for row in spec.rules],
    }
    return json.dumps(doc, indent=2)


def _dir_out(x):
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else str(x)
    return x


def iter_ranks(spec: EulerProductSpec) -> Iterable[int]:
    return range(1, spec.phi + 1)
