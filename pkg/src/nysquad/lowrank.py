"""Landmark-based low-rank kernel approximations.

Every variant built here has the factored form

    k_app(x, y) = k(x, Z) @ B @ B.T @ k(Z, y)

for a landmark set Z and an (ell x rank) factor B, so test functions,
diagonals and residuals all reduce to one cross-gram against Z.  The
variants differ in how B is chosen:

* ``build_nystrom``       -- classic landmark projection, full retained rank;
* ``build_nystrom_svd``   -- the same followed by the best rank-s truncation,
                             equivalently a truncated Mercer expansion of the
                             projection under the empirical landmark measure;
* ``build_mercer_mu``     -- rank-s truncation of the Mercer expansion under
                             the target measure itself, via the closed-form
                             squared kernel;
* ``build_mercer_empirical`` -- the same with the squared kernel estimated
                             from a reference sample X.
"""

import numpy as np

from .exceptions import NumericalConsistencyError
from .linalg import DEFAULT_RTOL, inverted_eigenvalues, pinv, sym_eig
from .validation import as_points


class LowRankKernel:
    """A factored low-rank kernel approximation anchored at landmarks.

    ``eigenvalues`` holds the full descending spectrum of the construction
    (length ell, zeros included): the empirical-measure eigenvalues
    lambda_i / ell for the projection variants, the target-measure
    eigenvalues kappa_i for the Mercer variants.  The trailing sum
    ``eigenvalues[rank:]`` is then the exact mean gap to the untruncated
    projection under the corresponding measure; for the projection
    variants that equals the mean residual against k itself, because the
    full projection interpolates k on the landmarks.
    """

    def __init__(self, kernel, landmarks, factor, kind, eigenvalues):
        self.kernel = kernel
        self.landmarks = landmarks
        self.factor = factor
        self.kind = kind
        self.eigenvalues = eigenvalues

    @property
    def rank(self):
        return self.factor.shape[1]

    def __repr__(self):
        return (f"LowRankKernel(kind={self.kind!r}, rank={self.rank}, "
                f"landmarks={self.landmarks.shape[0]})")

    def features(self, X):
        """Feature map Phi with Phi[i, j] = phi_j(x_i); k_app = Phi @ Phi.T."""
        return self.kernel.gram(X, self.landmarks) @ self.factor

    def pairwise(self, X, Y=None):
        """Matrix of k_app values; bit-symmetric when Y is omitted."""
        fx = self.features(X)
        if Y is None:
            g = fx @ fx.T
            return (g + g.T) / 2.0
        return fx @ self.features(Y).T

    def __call__(self, x, y):
        x = as_points(x, self.kernel.d)
        y = as_points(y, self.kernel.d)
        if x.shape[0] == 1 and y.shape[0] == 1:
            return float(self.pairwise(x, y)[0, 0])
        if x.shape[0] != y.shape[0]:
            raise ValueError("x and y must hold the same number of points")
        return np.einsum("ij,ij->i", self.features(x), self.features(y))

    def diag(self, X):
        """Vector of k_app(x, x) over the rows of X."""
        return (self.features(X) ** 2).sum(axis=1)

    def residual_diag(self, X):
        """Vector of k(x, x) - k_app(x, x), clamped at zero.

        The residual is nonnegative wherever the approximation is dominated
        by k; the clamp only absorbs roundoff.
        """
        res = self.kernel.diag(X) - self.diag(X)
        return np.maximum(res, 0.0)


def _retained(values, rtol, s=None):
    values = np.maximum(values, 0.0)
    cutoff = rtol * values[0] if values.size else 0.0
    keep = values > cutoff
    if s is not None:
        keep[s:] = False
    return values, keep


def build_nystrom(kernel, landmarks, rtol=DEFAULT_RTOL, *, gram_eig=None):
    """Landmark projection k(x, Z) k(Z, Z)^+ k(Z, y) at full retained rank."""
    Z = as_points(landmarks, kernel.d)
    if gram_eig is None:
        gram_eig = sym_eig(kernel.gram(Z))
    values, keep = _retained(gram_eig.values, rtol)
    factor = gram_eig.vectors[:, keep] / np.sqrt(values[keep])
    return LowRankKernel(kernel, Z, factor, "nystrom-full", values / Z.shape[0])


def build_nystrom_svd(kernel, landmarks, s, rtol=DEFAULT_RTOL, *, gram_eig=None):
    """Best rank-``s`` truncation of the landmark projection."""
    Z = as_points(landmarks, kernel.d)
    if not 1 <= s <= Z.shape[0]:
        raise ValueError(f"rank must satisfy 1 <= s <= {Z.shape[0]}, got {s}")
    if gram_eig is None:
        gram_eig = sym_eig(kernel.gram(Z))
    values, keep = _retained(gram_eig.values, rtol, s)
    factor = gram_eig.vectors[:, keep] / np.sqrt(values[keep])
    return LowRankKernel(kernel, Z, factor, "nystrom-svd", values / Z.shape[0])


def _mercer_build(kernel, Z, s, squared_gram, kind, rtol, gram_eig):
    """Shared core of the Mercer variants.

    With H the PSD square root of the squared-kernel gram, the target is
    the spectrum of H k(Z,Z)^+ H; test functions come from H^+ applied to
    its eigenvectors.  Everything is assembled in the eigenbasis of the
    squared-kernel gram, where H and H^+ are diagonal, so H k(Z,Z)^+ H is
    an orthogonal conjugation of the small matrix actually decomposed and
    no full-size square root or pseudo-inverse is ever formed.  One
    decomposition also means H and H^+ share a single rank decision.
    """
    if not 1 <= s <= Z.shape[0]:
        raise ValueError(f"rank must satisfy 1 <= s <= {Z.shape[0]}, got {s}")
    if gram_eig is None:
        gram_eig = sym_eig(kernel.gram(Z))

    h_eig = sym_eig(squared_gram)
    h_values, h_keep = _retained(h_eig.values, rtol)
    roots = np.where(h_keep, np.sqrt(h_values), 0.0)
    inv_roots = np.where(h_keep, np.divide(1.0, roots, where=roots > 0,
                                           out=np.zeros_like(roots)), 0.0)

    # uh.T k(Z,Z)^+ uh, then scaled by the diagonal square root on both sides
    a = h_eig.vectors.T @ gram_eig.vectors
    w = (a * inverted_eigenvalues(gram_eig.values, rtol)) @ a.T
    mid = roots[:, None] * w * roots[None, :]
    mid_eig = sym_eig((mid + mid.T) / 2.0)
    kappa, keep = _retained(mid_eig.values, rtol, s)
    factor = h_eig.vectors @ (inv_roots[:, None]
                              * (mid_eig.vectors[:, keep] * np.sqrt(kappa[keep])))
    return LowRankKernel(kernel, Z, factor, kind, kappa)


def build_mercer_mu(kernel, landmarks, s, rtol=DEFAULT_RTOL, *,
                    gram_eig=None, squared_gram=None):
    """Rank-``s`` Mercer truncation of the landmark projection under the
    target measure, using the closed-form squared kernel."""
    Z = as_points(landmarks, kernel.d)
    if squared_gram is None:
        squared_gram = kernel.squared().gram(Z)
    return _mercer_build(kernel, Z, s, squared_gram, "mercer-mu", rtol, gram_eig)


def build_mercer_empirical(kernel, landmarks, reference, s, rtol=DEFAULT_RTOL, *,
                           gram_eig=None, cross_gram=None):
    """Rank-``s`` Mercer truncation under the empirical measure of a
    reference sample X, with the squared kernel estimated as
    (1/M) k(Z, X) k(X, Z)."""
    Z = as_points(landmarks, kernel.d)
    X = as_points(reference, kernel.d)
    if X.shape[0] < 1:
        raise ValueError("reference sample must be nonempty")
    if cross_gram is None:
        cross_gram = kernel.gram(Z, X)
    squared_gram = cross_gram @ cross_gram.T / X.shape[0]
    squared_gram = (squared_gram + squared_gram.T) / 2.0
    return _mercer_build(kernel, Z, s, squared_gram, "mercer-empirical", rtol, gram_eig)


def mu_residual_exact(kernel, landmarks, rtol=DEFAULT_RTOL, *,
                      gram_eig=None, squared_gram=None):
    """Mean residual of the full landmark projection under the target
    measure, via the trace identity

        mu(k - k^Z) = mu(k) - tr(k(Z, Z)^+ h(Z, Z)),

    where h is the closed-form squared kernel.  Nonnegative up to roundoff.
    """
    Z = as_points(landmarks, kernel.d)
    if squared_gram is None:
        squared_gram = kernel.squared().gram(Z)
    if gram_eig is None:
        gram_eig = sym_eig(kernel.gram(Z))
    kinv = pinv(None, rtol, eig=gram_eig)
    value = kernel.diagonal - float(np.sum(kinv * squared_gram))
    if value < -1e-8:
        raise NumericalConsistencyError(
            f"mean residual {value:.3e} is negative beyond tolerance")
    return value
