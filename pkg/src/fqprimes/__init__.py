"""Exact arithmetic over F_q[t]: factorization, Mobius and character sums,
quadratic families, and exhaustive prime-counting experiments.

The heavy inner loops run on a compiled extension when it built at install
time and on a pure-Python twin otherwise; `backend_name()` reports which one
is active, and setting the environment variable FQPRIMES_PURE forces the
pure path. Both produce identical results.
"""

from .backend import backend_name
from .experiments import (
    BoundViolationError,
    BudgetError,
    ExperimentReport,
    run_experiment,
    sweep,
)
from .factorization import (
    Factorization,
    FactorizationType,
    cauchy_probability,
    euler_phi,
    factor,
    factorization_type,
    frobenius_class,
    is_irreducible,
    mobius,
    mobius_via_discriminant,
    squarefree_decomposition,
)
from .family import (
    QuadraticFamily,
    ShortInterval,
    check_admissible,
    enumerate_interval,
    specialize,
    verify_discriminant_identity,
)
from .field import Field, FieldElement
from .ntheory import irreducible_count, partitions, prime_power_split
from .poly import Poly, discriminant, gcd, is_square, pow_mod, resultant

__version__ = "0.1.0"

__all__ = [
    "BoundViolationError",
    "BudgetError",
    "ExperimentReport",
    "Factorization",
    "FactorizationType",
    "Field",
    "FieldElement",
    "Poly",
    "QuadraticFamily",
    "ShortInterval",
    "__version__",
    "backend_name",
    "cauchy_probability",
    "check_admissible",
    "discriminant",
    "enumerate_interval",
    "euler_phi",
    "factor",
    "factorization_type",
    "frobenius_class",
    "gcd",
    "irreducible_count",
    "is_irreducible",
    "is_square",
    "mobius",
    "mobius_via_discriminant",
    "partitions",
    "pow_mod",
    "prime_power_split",
    "resultant",
    "run_experiment",
    "specialize",
    "squarefree_decomposition",
    "sweep",
    "verify_discriminant_identity",
]
