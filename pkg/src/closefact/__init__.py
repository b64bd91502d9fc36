"""closefact: exact-arithmetic toolkit for integers with three close
factorizations n = A*B = (A+a1)(B-b1) = (A+a2)(B-b2).

Provides the offset-quad solver and case decomposition, the extremal family
attaining the sharp bound, exhaustive enumeration and range scans verifying
the cube and sharp bounds and the lattice-gap inequalities, and a CLI with
jsonl/csv/human reports and optional figures.
"""

from .arith import (
    DEFAULT_SIEVE_CEILING,
    DivisorList,
    FactoredInteger,
    SieveBudgetError,
    divisors,
    factorize,
    is_prime,
    pow6_compare,
    sieve_divisor_lists,
)
from .family import (
    FamilyInstance,
    ThresholdScan,
    family_attains_bound,
    family_instance,
    family_margin_holds,
    family_quad,
    family_threshold_scan,
)
from .model import (
    CaseDecomposition,
    CaseTag,
    DecompositionError,
    FactorizationTriple,
    LatticeTriple,
    MarginCertificate,
    OffsetQuad,
    classify,
    cube_bound,
    decompose,
    gap,
    gap_lower_holds,
    gap_lower_test,
    quad_from_triple,
    sharp_bound,
    solve_quad,
    spread_lower_holds,
    triple_from_points,
)
from .search import (
    GapRecord,
    MaxEntry,
    ScanReport,
    cross_check,
    enumerate_quads,
    max_ab,
    min_gap_triple,
    scan_gaps,
    triples_for_n,
)

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_SIEVE_CEILING",
    "CaseDecomposition",
    "CaseTag",
    "DecompositionError",
    "DivisorList",
    "FactoredInteger",
    "FactorizationTriple",
    "FamilyInstance",
    "GapRecord",
    "LatticeTriple",
    "MarginCertificate",
    "MaxEntry",
    "OffsetQuad",
    "ScanReport",
    "SieveBudgetError",
    "ThresholdScan",
    "classify",
    "cross_check",
    "cube_bound",
    "decompose",
    "divisors",
    "enumerate_quads",
    "factorize",
    "family_attains_bound",
    "family_instance",
    "family_margin_holds",
    "family_quad",
    "family_threshold_scan",
    "gap",
    "gap_lower_holds",
    "gap_lower_test",
    "is_prime",
    "max_ab",
    "min_gap_triple",
    "pow6_compare",
    "quad_from_triple",
    "scan_gaps",
    "sharp_bound",
    "sieve_divisor_lists",
    "solve_quad",
    "spread_lower_holds",
    "triple_from_points",
    "triples_for_n",
]
