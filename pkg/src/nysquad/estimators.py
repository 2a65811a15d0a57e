"""Estimator-style wrappers around the functional core.

``LowRankFeatures`` is a transformer: fit on landmarks, transform points
into the feature space of the chosen approximation (so downstream linear
models work in the approximated RKHS).  ``QuadratureReducer`` fits on a
candidate sample and exposes the compressed rule as fitted attributes.
Both follow the usual conventions: constructor stores hyperparameters
verbatim, ``fit`` returns self, learned state ends in an underscore.
"""

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin

from .kernels import KorobovKernel
from .linalg import DEFAULT_RTOL
from .lowrank import (
    build_mercer_empirical,
    build_mercer_mu,
    build_nystrom,
    build_nystrom_svd,
)
from .quadrature import kernel_quadrature
from .validation import as_points

_METHODS = ("nystrom", "nystrom-svd", "mercer-mu", "mercer-empirical")


def _resolve_kernel(kernel, d):
    if kernel is None:
        return KorobovKernel(1, d)
    if kernel.d != d:
        raise ValueError(f"kernel dimension {kernel.d} does not match data dimension {d}")
    return kernel


def _build(kernel, Z, method, rank, reference, rtol):
    if method == "nystrom":
        return build_nystrom(kernel, Z, rtol)
    s = Z.shape[0] if rank is None else rank
    if method == "nystrom-svd":
        return build_nystrom_svd(kernel, Z, s, rtol)
    if method == "mercer-mu":
        return build_mercer_mu(kernel, Z, s, rtol)
    if method == "mercer-empirical":
        if reference is None:
            raise ValueError("method 'mercer-empirical' needs reference points")
        return build_mercer_empirical(kernel, Z, reference, s, rtol)
    raise ValueError(f"unknown method {method!r}; expected one of {_METHODS}")


class LowRankFeatures(BaseEstimator, TransformerMixin):
    """Map points to the feature space of a landmark approximation.

    Parameters
    ----------
    kernel : Kernel or None, default Korobov r=1 in the data dimension.
    method : one of 'nystrom', 'nystrom-svd', 'mercer-mu',
        'mercer-empirical'.
    rank : target rank; None keeps everything the cutoff retains.
    reference : sample defining the empirical measure for
        'mercer-empirical'.
    rtol : relative eigenvalue cutoff shared by all rank decisions.
    """

    def __init__(self, kernel=None, method="nystrom-svd", rank=None,
                 reference=None, rtol=DEFAULT_RTOL):
        self.kernel = kernel
        self.method = method
        self.rank = rank
        self.reference = reference
        self.rtol = rtol

    def fit(self, X, y=None):
        Z = as_points(X)
        kernel = _resolve_kernel(self.kernel, Z.shape[1])
        self.approximation_ = _build(kernel, Z, self.method, self.rank,
                                     self.reference, self.rtol)
        self.n_features_in_ = Z.shape[1]
        self.rank_ = self.approximation_.rank
        return self

    def transform(self, X):
        if not hasattr(self, "approximation_"):
            raise RuntimeError("not fitted")
        return self.approximation_.features(as_points(X, self.n_features_in_))


class QuadratureReducer(BaseEstimator):
    """Compress a sample into a convex quadrature rule.

    ``fit(X)`` treats X as the candidate sample; landmarks default to X
    itself.  Fitted attributes: ``points_``, ``weights_``,
    ``approximation_``, ``quadrature_``.
    """

    def __init__(self, kernel=None, method="nystrom-svd", rank=None,
                 landmarks=None, enforce_inequality=True, rtol=DEFAULT_RTOL):
        self.kernel = kernel
        self.method = method
        self.rank = rank
        self.landmarks = landmarks
        self.enforce_inequality = enforce_inequality
        self.rtol = rtol

    def fit(self, X, y=None):
        Y = as_points(X)
        kernel = _resolve_kernel(self.kernel, Y.shape[1])
        Z = Y if self.landmarks is None else as_points(self.landmarks, Y.shape[1])
        reference = Y if self.method == "mercer-empirical" else None
        approx = _build(kernel, Z, self.method, self.rank, reference, self.rtol)
        self.approximation_ = approx
        self.quadrature_ = kernel_quadrature(approx, Y, self.enforce_inequality)
        self.points_ = self.quadrature_.points
        self.weights_ = self.quadrature_.weights
        self.n_features_in_ = Y.shape[1]
        return self

    def integrate(self, values):
        """Apply the fitted rule to per-point function values."""
        if not hasattr(self, "quadrature_"):
            raise RuntimeError("not fitted")
        return self.quadrature_.integrate(np.asarray(values, dtype=float))
