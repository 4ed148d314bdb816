"""Exact finite-level models for p-adic hyperplane arrangements.

Truncated valuation rings Z/p^n, Smith forms with transforms, points and
tubes of P^d(Z/p^n), arrangements and their fibration types, explicit
Cech-type complexes, and the lattices of zero-mass measures that model
units on tube complements.
"""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    ArrangementError,
    BadModulus,
    ConfigError,
    InvariantViolation,
    MalformedSystem,
    NonComplex,
    NotInvertible,
    NotUnimodular,
    ParseError,
    PointInTube,
    PrecisionTooLow,
    PredictionMismatch,
    SizeLimit,
)
from .local_algebra import (  # noqa: E402
    INF,
    IntSNF,
    LocalSNF,
    TruncElem,
    snf_int,
    snf_local,
    valuation,
)
from .complexes import CochainComplex, DegreeReport, complex_cohomology  # noqa: E402
from .projective import (  # noqa: E402
    AlgebraicHyperplane,
    Hyperplane,
    ProjPoint,
    canonicalize,
    enumerate_points,
    gl_act,
    project,
    tube_relation,
)
from .arrangements import (  # noqa: E402
    Arrangement,
    CompatibleFamily,
    UniShape,
    classify_uni,
    compatible_family,
    int_contains,
    mv_degree_bounds,
    project_arrangement,
    rank,
    simple_elements,
)
from .cech import (  # noqa: E402
    GradedTable,
    projective_twist_rank,
    torus_cohomology,
    torus_complex,
    twisted_complex,
    twisted_concentration,
    xdt_graded_ht,
)
from .limits import (  # noqa: E402
    FilteredSystem,
    Measure,
    MonomialBox,
    SymbolicUnit,
    check_filtered_condition,
    check_restriction_inclusion,
    kummer_reduce,
    limit_element,
    pushforward,
    restriction_scaling,
    unit_valuation,
    verify_log_exp,
    zero_mass_basis,
)
from .serialization import load_arrangement, save_arrangement  # noqa: E402
from .harness import VerificationReport, run_suite  # noqa: E402
