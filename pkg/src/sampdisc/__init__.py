"""Sampling discretization laboratory for trigonometric polynomials.

Builds hyperbolic cross frequency sets, certifies two-sided sampling
inequalities for their polynomial spaces, and measures minimal sampling
budgets, uniform-norm constants, and entropy numbers at desk scale.
"""

from .index_sets import (AnisotropyWeights, BudgetError, IndexSet,
                         anisotropic_cross, cube, custom_index_set,
                         dyadic_block, step_hyperbolic_cross)
from .trig_poly import (TrigPolynomial, dyadic_projection, evaluate,
                        evaluate_on_grid, random_polynomial,
                        real_imaginary_parts, shift, wrap_torus)
from .norms import (NormResult, discrete_lq, l2_norm, lq_norm, sup_norm,
                    vector_norm_inequality_check, vector_norm_ratio)
from .discretization import (DiscretizationReport, MinimalMResult, PointSet,
                             certify, complex_from_real_report,
                             equispaced_grid_points, frame_bounds_q2,
                             generate_points, meets_target, minimal_m_search,
                             ratio_extremize, subsampled_grid_points,
                             uniform_random_points, witness_ratio)
from .nikolskii import (NikolskiiEstimate, asymptotic_comparison,
                        nikolskii_constant)
from .entropy import (BallCloud, EntropyEstimate, build_cloud,
                      compare_bound_shape, covering_upper_estimate,
                      entropy_ladder, packing_lower_bound)
from .experiments import (ArbitrarySetRecord, ExponentFit, ScalingRecord,
                          arbitrary_Q_study, fit_exponent,
                          reference_exponent, scaling_study)

__version__ = "0.1.0"

__all__ = [
    "AnisotropyWeights", "ArbitrarySetRecord", "BallCloud", "BudgetError",
    "DiscretizationReport", "EntropyEstimate", "ExponentFit", "IndexSet",
    "MinimalMResult", "NikolskiiEstimate", "NormResult", "PointSet",
    "ScalingRecord", "TrigPolynomial", "anisotropic_cross",
    "arbitrary_Q_study", "asymptotic_comparison", "build_cloud", "certify",
    "compare_bound_shape", "complex_from_real_report",
    "covering_upper_estimate", "cube", "custom_index_set", "discrete_lq",
    "dyadic_block", "dyadic_projection", "entropy_ladder",
    "equispaced_grid_points", "evaluate", "evaluate_on_grid", "fit_exponent",
    "frame_bounds_q2", "generate_points", "l2_norm", "lq_norm",
    "meets_target", "minimal_m_search", "nikolskii_constant",
    "packing_lower_bound", "random_polynomial", "ratio_extremize",
    "real_imaginary_parts", "reference_exponent", "scaling_study", "shift",
    "step_hyperbolic_cross", "subsampled_grid_points", "sup_norm",
    "uniform_random_points", "vector_norm_inequality_check",
    "vector_norm_ratio", "witness_ratio", "wrap_torus",
]
