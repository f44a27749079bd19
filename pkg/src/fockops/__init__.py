"""fockops: weighted Fock-space machinery and composition-operator checks.

The package is layered bottom-up: radial weights define moment tables,
moments define monomial norms and the reproducing kernel, the kernel feeds
symbol algebra and truncated operator matrices, and the criteria module
turns operator characterizations into tolerance-aware verdicts that the
verify module cross-checks against brute-force matrix oracles.
"""

from .errors import (
    CrossCheckFailure,
    DegreeOverflow,
    DimensionMismatch,
    FockopsError,
    IndexOutOfRange,
    NonFiniteValue,
    QuadratureBudgetExceeded,
    SingularMatrix,
    TailNotConvergent,
    TruncationBudgetExceeded,
)
from .kernel import KernelEvaluator, g_eval, kernel_eval, kernel_norm_sq
from .moments import MomentTable, compute_moments, monomial_norm_sq
from .operators import (
    AffineMap,
    ConstantSymbol,
    KernelMultipleSymbol,
    Polynomial,
    PolynomialSymbol,
    TruncatedOperator,
    ZeroSymbol,
    adjoint_on_kernel,
    apply_symbol,
    compose_polynomial,
    defect_coisometry,
    defect_isometry,
    defect_self_adjoint,
    truncated_matrix,
)
from .weights import (
    AdmissibilityReport,
    WeightFunction,
    check_admissible,
    linear_quadratic_weight,
    linear_weight,
    polynomial_weight,
    resolve_weight,
)

__version__ = "0.1.0"

__all__ = [
    "AffineMap",
    "AdmissibilityReport",
    "ConstantSymbol",
    "CrossCheckFailure",
    "DegreeOverflow",
    "DimensionMismatch",
    "FockopsError",
    "IndexOutOfRange",
    "KernelEvaluator",
    "KernelMultipleSymbol",
    "MomentTable",
    "NonFiniteValue",
    "Polynomial",
    "PolynomialSymbol",
    "QuadratureBudgetExceeded",
    "SingularMatrix",
    "TailNotConvergent",
    "TruncatedOperator",
    "TruncationBudgetExceeded",
    "WeightFunction",
    "ZeroSymbol",
    "adjoint_on_kernel",
    "apply_symbol",
    "check_admissible",
    "compose_polynomial",
    "compute_moments",
    "defect_coisometry",
    "defect_isometry",
    "defect_self_adjoint",
    "g_eval",
    "kernel_eval",
    "kernel_norm_sq",
    "linear_quadratic_weight",
    "linear_weight",
    "monomial_norm_sq",
    "polynomial_weight",
    "resolve_weight",
    "truncated_matrix",
    "__version__",
]
