"""Convex quadrature rules and their kernel-metric error functionals.

A quadrature here is a convex weighting of finitely many points in the
unit cube.  ``kernel_quadrature`` compresses a large candidate sample down
to rank + 1 points while matching the empirical means of the test
functions of a low-rank kernel approximation; ``worst_case_error`` and
``mmd`` measure quality in the RKHS metric, the former against the uniform
measure in closed form, the latter between two discrete measures.
"""

from math import fsum, sqrt

import numpy as np

from .exceptions import NumericalConsistencyError
from .recombination import recombine
from .validation import as_points, check_weights

# Quadratic forms more negative than this indicate broken numerics rather
# than roundoff; values in (-NEGATIVE_TOL, 0) are clamped to zero.
NEGATIVE_TOL = 1e-10

_BLOCK_ELEMENTS = 1 << 24


class Quadrature:
    """Points with convex weights, plus a provenance record."""

    def __init__(self, points, weights, provenance=None):
        self.points = np.asarray(points, dtype=float)
        if self.points.ndim == 1:
            self.points = self.points.reshape(-1, 1)
        self.weights = check_weights(weights, atol=1e-12)
        if self.points.shape[0] != self.weights.shape[0]:
            raise ValueError("points and weights must have matching lengths")
        self.provenance = dict(provenance) if provenance else {}

    @property
    def n_points(self):
        return self.points.shape[0]

    def __repr__(self):
        return f"Quadrature(n_points={self.n_points})"

    def integrate(self, values):
        """Weighted sum of per-point function values."""
        values = np.asarray(values, dtype=float)
        if values.shape[0] != self.n_points:
            raise ValueError("values must align with the quadrature points")
        return float(self.weights @ values)


def uniform_quadrature(points):
    """The empirical measure of a sample, as a quadrature."""
    points = np.asarray(points, dtype=float)
    if points.ndim == 1:
        points = points.reshape(-1, 1)
    n = points.shape[0]
    return Quadrature(points, np.full(n, 1.0 / n), {"kind": "empirical"})


def _quadratic_form(points, v, kernel):
    """v.T @ k(points, points) @ v without materializing huge grams."""
    n = v.shape[0]
    if n * n <= _BLOCK_ELEMENTS:
        return float(v @ kernel.gram(points) @ v)
    step = max(1, _BLOCK_ELEMENTS // n)
    parts = []
    for lo in range(0, n, step):
        hi = min(lo + step, n)
        parts.append(float(v[lo:hi] @ (kernel.gram(points[lo:hi], points) @ v)))
    return fsum(parts)


def _residual_sqrt(value):
    if value < -NEGATIVE_TOL:
        raise NumericalConsistencyError(
            f"squared kernel distance {value:.3e} is negative beyond tolerance")
    return sqrt(max(value, 0.0))


def worst_case_error(quadrature, kernel):
    """Exact worst-case integration error of the rule over the unit ball of
    the kernel's RKHS, target measure uniform.

    Requires the kernel's closed-form mean embedding and double integral.
    """
    w = quadrature.weights
    pts = quadrature.points
    quad = _quadratic_form(pts, w, kernel)
    cross = float(w @ kernel.mean_embedding(pts))
    value = quad - 2.0 * cross + kernel.double_integral()
    return _residual_sqrt(value)


def mmd(q1, q2, kernel):
    """Kernel maximum mean discrepancy between two discrete measures.

    The union support is canonicalized (lexicographic row order, duplicate
    points merged) so the value is symmetric in its arguments bit-for-bit.
    """
    p1 = as_points(q1.points, kernel.d)
    p2 = as_points(q2.points, kernel.d)
    stacked = np.vstack([p1, p2])
    support, inverse = np.unique(stacked, axis=0, return_inverse=True)
    inverse = inverse.reshape(-1)
    a = np.zeros(support.shape[0])
    b = np.zeros(support.shape[0])
    np.add.at(a, inverse[: p1.shape[0]], q1.weights)
    np.add.at(b, inverse[p1.shape[0] :], q2.weights)
    value = _quadratic_form(support, a - b, kernel)
    return _residual_sqrt(value)


def monte_carlo_constant(kernel):
    """The constant c with E[mmd(empirical n-sample, target)^2] = c / n."""
    return kernel.diagonal - kernel.double_integral()


def kernel_quadrature(approximation, sample, enforce_inequality=True, seed=None,
                      *, cross_gram=None):
    """Compress a candidate sample into a convex rule with at most
    rank + 1 points whose test-function means match the sample exactly.

    With ``enforce_inequality`` the rule additionally never exceeds the
    sample mean of the root-residual of the approximation, which is what
    turns the reduction into a worst-case error guarantee.  ``cross_gram``
    may carry a precomputed k(sample, landmarks) to avoid recomputing it
    across approximations sharing the same landmarks.
    """
    kernel = approximation.kernel
    Y = as_points(sample, kernel.d)
    n = Y.shape[0]
    if cross_gram is None:
        phi = approximation.features(Y)
    else:
        phi = cross_gram @ approximation.factor
    weights = np.full(n, 1.0 / n)
    if enforce_inequality:
        residual = kernel.diag(Y) - (phi**2).sum(axis=1)
        direction = np.sqrt(np.maximum(residual, 0.0))
    else:
        direction = None
    reduced = recombine(weights, phi, direction)
    provenance = {
        "kind": approximation.kind,
        "rank": approximation.rank,
        "n_candidates": n,
        "enforce_inequality": enforce_inequality,
    }
    if seed is not None:
        provenance["seed"] = seed
    return Quadrature(Y[reduced.indices], reduced.weights, provenance)
