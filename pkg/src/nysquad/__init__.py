"""Low-rank kernel approximation and convex kernel quadrature.

The package turns a positive semi-definite kernel on the unit cube into
small, convex-weighted quadrature rules with worst-case error guarantees
in the kernel's RKHS.  The pipeline:

1. pick landmarks and build a rank-s approximation of the kernel
   (``build_nystrom_svd`` and friends in :mod:`nysquad.lowrank`);
2. draw a large candidate sample and compress it down to s + 1 points
   matching the approximation's test-function means
   (:func:`nysquad.quadrature.kernel_quadrature`);
3. evaluate the result in closed form (:func:`nysquad.quadrature.worst_case_error`).

Estimator-style wrappers live in :mod:`nysquad.estimators`; the benchmark
harness behind the ``nysquad`` command in :mod:`nysquad.experiment`.
"""

from .exceptions import AnalyticUnavailableError, ConfigError, NumericalConsistencyError
from .kernels import (
    GaussianKernel,
    KorobovKernel,
    bernoulli_polynomial,
    iid_nystrom_bound,
)
from .linalg import DEFAULT_RTOL, null_vector, pinv, pinv_rank, psd_sqrt, sym_eig
from .lowrank import (
    LowRankKernel,
    build_mercer_empirical,
    build_mercer_mu,
    build_nystrom,
    build_nystrom_svd,
    mu_residual_exact,
)
from .recombination import DiscreteMeasure, recombine
from .quadrature import (
    Quadrature,
    kernel_quadrature,
    mmd,
    monte_carlo_constant,
    uniform_quadrature,
    worst_case_error,
)
from .samplers import SeededGenerator, generate, halton, landmark_mix
from .estimators import LowRankFeatures, QuadratureReducer
from .experiment import ExperimentConfig, ResultRow, run_experiment, write_csv

__version__ = "0.1.0"

__all__ = [
    "AnalyticUnavailableError",
    "ConfigError",
    "NumericalConsistencyError",
    "GaussianKernel",
    "KorobovKernel",
    "bernoulli_polynomial",
    "iid_nystrom_bound",
    "DEFAULT_RTOL",
    "null_vector",
    "pinv",
    "pinv_rank",
    "psd_sqrt",
    "sym_eig",
    "LowRankKernel",
    "build_mercer_empirical",
    "build_mercer_mu",
    "build_nystrom",
    "build_nystrom_svd",
    "mu_residual_exact",
    "DiscreteMeasure",
    "recombine",
    "Quadrature",
    "kernel_quadrature",
    "mmd",
    "monte_carlo_constant",
    "uniform_quadrature",
    "worst_case_error",
    "SeededGenerator",
    "generate",
    "halton",
    "landmark_mix",
    "LowRankFeatures",
    "QuadratureReducer",
    "ExperimentConfig",
    "ResultRow",
    "run_experiment",
    "write_csv",
    "__version__",
]
