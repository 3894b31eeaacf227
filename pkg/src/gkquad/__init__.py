"""Gaussian kernel quadrature on scaled Gauss-Hermite nodes.

The package builds kernel quadrature rules for the Gaussian kernel under
the standard Gaussian measure.  The headline rule places nodes at scaled
Gauss-Hermite points and evaluates its weights in closed form, with no
linear solve, so it remains computable at sizes where the kernel matrix
is numerically singular.  Supporting modules cover the Hermite
polynomial machinery, the kernel eigendecomposition, the exact
solve-based weights, QR-based reference weights, tensor-product
cubature, and worst-case-error diagnostics.
"""

from .approx import (
    ApproxRule,
    approx_rule,
    christoffel_darboux_sum,
    eigen_exactness_residual,
    even_hermite_series,
    machine_truncation,
    qr_weights,
    scaled_nodes,
)
from .errors import (
    DegreeOverflowError,
    DomainError,
    EvaluationError,
    GkquadError,
    IllConditionedError,
    NumericalFailureError,
    SizeError,
)
from .exact import (
    KernelSystem,
    exact_weights,
    kernel_mean,
    kernel_mean_mean,
    kernel_system,
)
from .gauss_hermite import (
    MEASURE_TAG,
    N_MAX,
    NodeResidualWarning,
    QuadratureRule,
    gh_rule,
    node_bound_holds,
)
from .hermite import DEGREE_MAX, HermiteSequence, hermite_eval, normalized_sequence
from .mercer import (
    ALPHA_DEFAULT,
    GaussianKernel,
    MercerBasis,
    basis_from,
    eigenfunction,
    eigenfunction_mean,
    eigenvalue,
    kernel_truncated,
)
from .tensor import (
    DIM_MAX,
    GRID_MAX,
    SeparableGaussianKernel,
    TensorRule,
    gaussian_poly_integrand,
    tensor_integrate,
    tensor_rule,
)
from .wce import (
    ConvergenceConstants,
    WceReport,
    eta_lemma_check,
    multivariate_constants,
    theoretical_constants,
    worst_case_error,
)

__version__ = "0.1.0"
