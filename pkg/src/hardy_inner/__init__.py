"""Inner functions in weighted Hardy spaces H^2_omega.

Build analogues of finite Blaschke products by kernel projections, test
inner-ness in several equivalent ways, and recover inner factors through
the reproducing kernel of H^2_omega(|b|^2).
"""

__version__ = "0.1.0"

from .blaschke import (
    BlaschkeSpec,
    InnerFunctionResult,
    classical_blaschke,
    compare_to_oracle,
    construct_blaschke_analogue,
    scan_extraneous_zeros,
)
from .divisor import check_ho_analogue, inner_from_kernel, kernel_at_zero, moment_matrix
from .errors import (
    IllConditionedGram,
    InvalidWeight,
    OutsideDomain,
    SpaceMismatch,
    UseProjectionPath,
    WeightConditionViolation,
    ZeroVector,
)
from .innercheck import (
    InnerReport,
    Verdict,
    check_definition,
    check_expansive_inequality,
    extremal_value,
    inner_report,
    mstar_mf_one,
    phi_k,
)
from .kernels import KernelSpec, adjoint_on_kernel, kernel_coeffs, kernel_gram_entry
from .projector import gram_matrix, project_complement, shapiro_shields_vector
from .series import SeriesFn, eval_deriv, evaluate, inner_product, mul, norm, normalize
from .weights import (
    BERGMAN,
    DIRICHLET,
    HARDY,
    WeightSequence,
    classify_monomial_inner,
    make_weight,
    monomial_multiplier_norm,
)

__all__ = [
    "BERGMAN",
    "BlaschkeSpec",
    "DIRICHLET",
    "HARDY",
    "IllConditionedGram",
    "InnerFunctionResult",
    "InnerReport",
    "InvalidWeight",
    "KernelSpec",
    "OutsideDomain",
    "SeriesFn",
    "SpaceMismatch",
    "UseProjectionPath",
    "Verdict",
    "WeightConditionViolation",
    "WeightSequence",
    "ZeroVector",
    "adjoint_on_kernel",
    "check_definition",
    "check_expansive_inequality",
    "check_ho_analogue",
    "classical_blaschke",
    "classify_monomial_inner",
    "compare_to_oracle",
    "construct_blaschke_analogue",
    "eval_deriv",
    "evaluate",
    "extremal_value",
    "gram_matrix",
    "inner_from_kernel",
    "inner_product",
    "inner_report",
    "kernel_at_zero",
    "kernel_coeffs",
    "kernel_gram_entry",
    "make_weight",
    "moment_matrix",
    "monomial_multiplier_norm",
    "mstar_mf_one",
    "mul",
    "norm",
    "normalize",
    "phi_k",
    "project_complement",
    "scan_extraneous_zeros",
    "shapiro_shields_vector",
    "__version__",
]
