"""monorbit: exact computation around monomial dynamical systems.

The package constructs monomial self-maps of affine space, enumerates the
iterates that land on a hypersurface, computes zero sets of linear
recurrence sequences and solutions of unit equations at desk scale, and
evaluates the explicit counting bounds that govern those sets, checking
observed counts against the bounds.

All core arithmetic is exact: scalars live in cyclotomic fields, orbit
coordinates are carried in exponent form, and interval arithmetic is used
only to certify strict inequalities (never to decide equality).
"""

__version__ = "0.1.0"

from .bounds import BoundValue, compare_count, evaluate_bound
from .cyclotomic import CyclotomicNumber, cyclotomic_polynomial, embed_numeric
from .dynamics import (
    Hypersurface,
    IntersectionReport,
    MonomialMap,
    OrbitPoint,
    compose_power,
    dominant_term_threshold,
    evaluate_exact,
    evaluate_modular,
    intersection_set,
    orbit_point,
    synchronized_intersection,
)
from .errors import (
    FactorizationError,
    MonorbitError,
    PrecisionError,
    ResourceLimitError,
    UnsuitablePrimeError,
)
from .recurrences import (
    ExponentialPolynomial,
    LinearRecurrence,
    ZeroSetReport,
    degeneracy_order,
    exppoly_zero_scan,
    lrs_terms,
    minimal_order,
    ratio_polynomial,
    residue_decompose,
    value_set,
    zero_set,
)
from .scalars import (
    IndependenceResult,
    MonomialScalar,
    RelationLattice,
    format_scalar,
    group_order_D,
    is_multiplicatively_independent,
    multiplicative_relations,
    parse_scalar,
    ratio_order,
)
from .theorems import TheoremCheck, applicable_theorems, pairwise_ratio_independent
from .unitequations import (
    SetPartition,
    SubgroupGamma,
    UnitSolution,
    WeakProportionalityReport,
    bell_number,
    compare_with_bounds,
    enumerate_solutions,
    proportionality_classes,
    set_partitions,
    suitable_partitions,
    weak_proportionality_classes,
)

__all__ = [
    "__version__",
    "BoundValue",
    "compare_count",
    "evaluate_bound",
    "CyclotomicNumber",
    "cyclotomic_polynomial",
    "embed_numeric",
    "Hypersurface",
    "IntersectionReport",
    "MonomialMap",
    "OrbitPoint",
    "compose_power",
    "dominant_term_threshold",
    "evaluate_exact",
    "evaluate_modular",
    "intersection_set",
    "orbit_point",
    "synchronized_intersection",
    "MonorbitError",
    "FactorizationError",
    "PrecisionError",
    "ResourceLimitError",
    "UnsuitablePrimeError",
    "ExponentialPolynomial",
    "LinearRecurrence",
    "ZeroSetReport",
    "degeneracy_order",
    "exppoly_zero_scan",
    "lrs_terms",
    "minimal_order",
    "ratio_polynomial",
    "residue_decompose",
    "value_set",
    "zero_set",
    "IndependenceResult",
    "MonomialScalar",
    "RelationLattice",
    "format_scalar",
    "group_order_D",
    "is_multiplicatively_independent",
    "multiplicative_relations",
    "parse_scalar",
    "ratio_order",
    "TheoremCheck",
    "applicable_theorems",
    "pairwise_ratio_independent",
    "SetPartition",
    "SubgroupGamma",
    "UnitSolution",
    "WeakProportionalityReport",
    "bell_number",
    "compare_with_bounds",
    "enumerate_solutions",
    "proportionality_classes",
    "set_partitions",
    "suitable_partitions",
    "weak_proportionality_classes",
]
