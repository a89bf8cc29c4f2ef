"""Named example products.

``builtin_spec(name)`` accepts the plain names in :data:`BUILTIN_NAMES` and the
parameterised families ``fn:<n>``, ``zeta-k:<k>`` and ``zq-eta:<eta>``.
"""

from __future__ import annotations

from fractions import Fraction

from .exact import ComplexRational
from .spec import (
    ConstantExact,
    DependenceMode,
    DirichletCharacter,
    EulerProductSpec,
    FiniteSupport,
    RootBranch,
    UnitPowerByIndex,
)

__all__ = ["builtin_spec", "BUILTIN_NAMES", "BUILTIN_FAMILIES", "CHI4", "describe_builtins"]

ONE = ComplexRational(1)
ZERO = ComplexRational(0)
I = ComplexRational(0, 1)

# the non-principal character mod 4
CHI4 = DirichletCharacter(4, (ZERO, ONE, ZERO, -ONE))


def _c(v) -> ConstantExact:
    return ConstantExact(ComplexRational.coerce(v) if not isinstance(v, ComplexRational) else v)


def _one_dim(rules, name, eta=None):
    rules = tuple(rules)
    return EulerProductSpec(1, 1, eta or len(rules), ((1,),), (rules,), DependenceMode(), name)


def _at_two(values, name):
    return _one_dim([FiniteSupport(((2, v),)) for v in values], name)


def _riemann():
    return _one_dim([_c(1)], "riemann")


def _chi4():
    return _one_dim([CHI4], "dirichlet-chi4")


def _dedekind_qi():
    return _one_dim([_c(1), CHI4], "dedekind-qi")


def _zq():
    return _at_two([ONE, I, -I], "zq")


def _fn(n: int):
    if n < 0:
        raise ValueError("fn:<n> needs n >= 0")
    return _at_two([ONE] * n + [I, -I], f"fn:{n}")


def _zq_eta(eta: int):
    if eta < 4:
        raise ValueError("zq-eta:<eta> needs eta >= 4")
    tail = [ComplexRational(Fraction(1, eta))] * (eta - 3)
    return _at_two([ONE, I, -I] + tail, f"zq-eta:{eta}")


def _zeta_k(k: int):
    if k < 1:
        raise ValueError("zeta-k:<k> needs k >= 1")
    return _one_dim([_c(1)] * k, f"zeta-k:{k}")


def _dependent(rules, gammas, name, eta):
    dirs = tuple((g,) for g in gammas)
    return EulerProductSpec(1, len(gammas), eta, dirs, tuple(tuple(r) for r in rules),
                            DependenceMode("integer", tuple(gammas)), name)


def _zeta_l2s():
    # zeta(s) L(2s)
    return _dependent([[_c(1)], [CHI4]], (1, 2), "zeta-l2s", 1)


def _zeta2_l2s():
    # zeta(s)^2 L(2s); the second row pads with a zero factor
    return _dependent([[_c(1), _c(1)], [CHI4, _c(0)]], (1, 2), "zeta2-l2s", 2)


def _l_zeta2s():
    # L(s) zeta(2s)
    return _dependent([[CHI4], [_c(1)]], (1, 2), "l-zeta2s", 1)


def _zeta3s_factored():
    # zeta(3s) as three linear factors at the cube roots of unity
    return _one_dim([RootBranch(_c(1), 3, k) for k in (3, 1, 2)], "zeta3s-factored")


def _zeta3s():
    return EulerProductSpec(1, 1, 1, ((3,),), ((_c(1),),), DependenceMode("integer", (3,)), "zeta3s")


def _l_plus_i():
    return _one_dim([UnitPowerByIndex(I)], "l-plus-i")


def _l_minus_i():
    return _one_dim([UnitPowerByIndex(-I)], "l-minus-i")


def _zeta2_lpi_lmi():
    return _one_dim([_c(1), _c(1), UnitPowerByIndex(I), UnitPowerByIndex(-I)], "zeta2-lpi-lmi")


def _alt():
    # alpha(p) = -1 everywhere: zeta(2s)/zeta(s)
    return _one_dim([_c(-1)], "zeta2s-over-zeta")


def _zeta_l_2d():
    # zeta(s_1) L(s_1 + 2 s_2)
    return EulerProductSpec(2, 2, 1, ((1, 0), (1, 2)), ((_c(1),), (CHI4,)), DependenceMode(), "zeta-l-2d")


def _zeta_l_axes():
    # zeta(s_1) L(s_2): rank-wise product structure on the axes
    return EulerProductSpec(2, 2, 1, ((1, 0), (0, 1)), ((_c(1),), (_c(1),)), DependenceMode(), "zeta-zeta-axes")


_PLAIN = {
    "riemann": _riemann,
    "dirichlet-chi4": _chi4,
    "dedekind-qi": _dedekind_qi,
    "zq": _zq,
    "zeta-l2s": _zeta_l2s,
    "zeta2-l2s": _zeta2_l2s,
    "l-zeta2s": _l_zeta2s,
    "zeta3s-factored": _zeta3s_factored,
    "zeta3s": _zeta3s,
    "l-plus-i": _l_plus_i,
    "l-minus-i": _l_minus_i,
    "zeta2-lpi-lmi": _zeta2_lpi_lmi,
    "zeta2s-over-zeta": _alt,
    "zeta-l-2d": _zeta_l_2d,
    "zeta-zeta-axes": _zeta_l_axes,
}
_FAMILIES = {"fn": _fn, "zeta-k": _zeta_k, "zq-eta": _zq_eta}

BUILTIN_NAMES = tuple(_PLAIN)
BUILTIN_FAMILIES = tuple(f"{k}:<n>" for k in _FAMILIES)

_DESCRIPTIONS = {
    "riemann": "zeta(s)",
    "dirichlet-chi4": "L(s, chi_-4)",
    "dedekind-qi": "zeta(s) L(s, chi_-4), the Dedekind zeta of Q(i)",
    "zq": "(1 - 2^-s)^-1 (1 + 2^-2s)^-1, values {1, i, -i} at p = 2",
    "zeta-l2s": "zeta(s) L(2s), integer-dependent directions (1, 2)",
    "zeta2-l2s": "zeta(s)^2 L(2s), integer-dependent directions (1, 2)",
    "l-zeta2s": "L(s) zeta(2s), integer-dependent directions (1, 2)",
    "zeta3s-factored": "zeta(3s) split over the cube roots of unity",
    "zeta3s": "zeta(3s) as one factor in direction 3",
    "l-plus-i": "prod (1 - i^n p_n^-s)^-1",
    "l-minus-i": "prod (1 - (-i)^n p_n^-s)^-1",
    "zeta2-lpi-lmi": "zeta(s)^2 times l-plus-i times l-minus-i",
    "zeta2s-over-zeta": "alpha = -1: zeta(2s)/zeta(s)",
    "zeta-l-2d": "zeta(s_1) L(s_1 + 2 s_2)",
    "zeta-zeta-axes": "zeta(s_1) zeta(s_2)",
    "fn:<n>": "(1 - 2^-s)^-n (1 + 2^-2s)^-1",
    "zeta-k:<k>": "zeta(s)^k",
    "zq-eta:<n>": "values {1, i, -i, 1/n, ..., 1/n} at p = 2 (n >= 4 factors)",
}


def builtin_spec(name: str) -> EulerProductSpec:
    """Look up a named spec; raises ``KeyError`` for unknown names."""
    name = name.strip()
    if name in _PLAIN:
        return _PLAIN[name]()
    fam, sep, arg = name.partition(":")
    if sep and fam in _FAMILIES:
        try:
            n = int(arg)
        except ValueError:
            raise KeyError(f"bad parameter in builtin name {name!r}") from None
        return _FAMILIES[fam](n)
    raise KeyError(f"unknown builtin spec {name!r}")


def describe_builtins() -> list:
    return [(k, v) for k, v in _DESCRIPTIONS.items()]
