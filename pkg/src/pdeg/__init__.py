"""Probabilistic degree toolkit for symmetric Boolean functions.

Spectra (value vectors indexed by Hamming weight) are classified by their
period and constant-window radius; recipes build random low-degree
polynomials that compute them with small error over a chosen field, and the
verification, reduction, and bounds modules check those claims from scratch.
"""

from .symfun import (
    DecompositionReport,
    Spectrum,
    bounded_radius,
    bounded_radius_flagged,
    complement_spectrum,
    is_t_constant,
    min_t_constant,
    named_spectrum,
    parse_spectrum_file,
    period,
    reflect_spectrum,
    restrict,
    spectrum,
    standard_decomposition,
    threshold_combination,
    window_distinctness,
    xor_spectra,
)
from .polyalg import (
    GF2,
    RATIONALS,
    FieldElement,
    FieldSpec,
    MultilinearPoly,
    SymPoly,
    binomial_in_field,
    constant_sympoly,
    exact_sympoly,
    expand_multilinear,
    interpolate_window,
    periodic_exact,
)
from .probpoly import (
    ConstantsProfile,
    Recipe,
    SeedStream,
    amplify,
    char0_or,
    compose,
    constant_recipe,
    declared_bound,
    enumerate_draws,
    eval_expr,
    exact_recipe,
    expr_from_json,
    expr_to_json,
    general_recipe,
    get_profile,
    majority_tail,
    paper_profile,
    practical_profile,
    razborov_or,
    recipe_from_json,
    sample,
    sample_stream,
    sum_recipes,
    t_constant_recipe,
    bounded_recipe,
    threshold_tuple,
    xor_combine,
)
from .verify import (
    DegreeAudit,
    ErrorReport,
    degree_audit,
    empirical_error,
    exact_error,
    expand_expr,
    expected_spectrum_values,
    identity_check,
    identity_failures,
)
from .reductions import (
    DeltaProduct,
    LiteralCombiner,
    ReductionCertificate,
    ShrinkResult,
    delta_from_shifts,
    maj_from_general,
    maj_from_periodic,
    mod_from_periodic,
    shifted_delta,
    shrink_support,
    thr_complement_from_bounded,
    thr_restrictions,
)
from .bounds import (
    BoundReport,
    bernstein_tail,
    predicted_bounds,
    recurrence_audit,
    recurrence_report,
)

__version__ = "0.1.0"

__all__ = [
    "BoundReport",
    "ConstantsProfile",
    "DecompositionReport",
    "DegreeAudit",
    "DeltaProduct",
    "ErrorReport",
    "FieldElement",
    "FieldSpec",
    "GF2",
    "LiteralCombiner",
    "MultilinearPoly",
    "RATIONALS",
    "Recipe",
    "ReductionCertificate",
    "SeedStream",
    "ShrinkResult",
    "Spectrum",
    "SymPoly",
    "amplify",
    "bernstein_tail",
    "binomial_in_field",
    "bounded_radius",
    "bounded_radius_flagged",
    "bounded_recipe",
    "char0_or",
    "complement_spectrum",
    "compose",
    "constant_recipe",
    "constant_sympoly",
    "declared_bound",
    "degree_audit",
    "delta_from_shifts",
    "empirical_error",
    "enumerate_draws",
    "eval_expr",
    "exact_error",
    "exact_recipe",
    "exact_sympoly",
    "expand_expr",
    "expand_multilinear",
    "expected_spectrum_values",
    "expr_from_json",
    "expr_to_json",
    "general_recipe",
    "get_profile",
    "identity_check",
    "identity_failures",
    "interpolate_window",
    "is_t_constant",
    "maj_from_general",
    "maj_from_periodic",
    "majority_tail",
    "min_t_constant",
    "mod_from_periodic",
    "named_spectrum",
    "paper_profile",
    "parse_spectrum_file",
    "period",
    "periodic_exact",
    "practical_profile",
    "predicted_bounds",
    "razborov_or",
    "recipe_from_json",
    "recurrence_audit",
    "recurrence_report",
    "reflect_spectrum",
    "restrict",
    "sample",
    "sample_stream",
    "shifted_delta",
    "shrink_support",
    "spectrum",
    "standard_decomposition",
    "sum_recipes",
    "t_constant_recipe",
    "thr_complement_from_bounded",
    "thr_restrictions",
    "threshold_combination",
    "threshold_tuple",
    "window_distinctness",
    "xor_combine",
    "xor_spectra",
]
