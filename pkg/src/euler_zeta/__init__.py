"""Polynomial Euler products with complex coefficients.

Evaluation of the product, its log series and Dirichlet series; classification
of the normalized function ``Z(sigma + it) / Z(sigma)`` as infinitely divisible,
quasi-infinitely divisible only, or not a characteristic function; the attached
(quasi-)Levy measure; the induced discrete distribution; and the
characteristic-function inequalities used to study value distribution.
"""

from .builtins import builtin_spec
from .exact import ComplexRational, parse_complex
from .spec import EulerProductSpec, TruncationBounds, parse_spec, serialize_spec, validate_dependence

__version__ = "0.1.0"

__all__ = [
    "ComplexRational",
    "parse_complex",
    "EulerProductSpec",
    "TruncationBounds",
    "parse_spec",
    "serialize_spec",
    "validate_dependence",
    "builtin_spec",
]
