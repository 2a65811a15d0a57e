"""Dense symmetric linear algebra with one shared rank cutoff.

Every rank decision (pseudo-inverse, truncated pseudo-inverse, PSD square
root) uses the same relative threshold ``rtol * lambda_max`` so the pieces
of a factored approximation never disagree about numerical rank.
"""

from dataclasses import dataclass

import numpy as np

from .validation import check_square

DEFAULT_RTOL = 1e-10


@dataclass(frozen=True)
class SymEig:
    """Eigendecomposition of a symmetric matrix, eigenvalues descending."""

    values: np.ndarray
    vectors: np.ndarray


def sym_eig(a):
    """Full eigendecomposition of (a + a.T) / 2, descending eigenvalues."""
    a = check_square(a)
    sym = (a + a.T) / 2.0
    values, vectors = np.linalg.eigh(sym)
    return SymEig(values[::-1].copy(), vectors[:, ::-1].copy())


def _spectral_rebuild(eig, transformed):
    """U diag(t) U.T, symmetrized so the result is bit-exactly symmetric."""
    b = (eig.vectors * transformed) @ eig.vectors.T
    return (b + b.T) / 2.0


def inverted_eigenvalues(values, rtol=DEFAULT_RTOL):
    """Reciprocals of PSD eigenvalues with the shared rank cutoff applied:
    entries at or below ``rtol`` times the largest (and negatives, clamped
    first) invert to zero."""
    values = np.maximum(np.asarray(values, dtype=float), 0.0)
    cutoff = rtol * values[0] if values.size else 0.0
    return np.where(values > cutoff, np.divide(1.0, values, where=values > 0,
                                               out=np.zeros_like(values)), 0.0)


def pinv(a, rtol=DEFAULT_RTOL, *, eig=None):
    """Moore-Penrose pseudo-inverse of a symmetric PSD matrix.

    Eigenvalues at or below ``rtol`` times the largest are treated as zero;
    negative ones are clamped first.
    """
    if eig is None:
        eig = sym_eig(a)
    return _spectral_rebuild(eig, inverted_eigenvalues(eig.values, rtol))


def pinv_rank(a, s, rtol=DEFAULT_RTOL, *, eig=None):
    """Pseudo-inverse of the best rank-``s`` approximation of a PSD matrix."""
    if eig is None:
        eig = sym_eig(a)
    n = eig.values.shape[0]
    if not 1 <= s <= n:
        raise ValueError(f"rank must satisfy 1 <= s <= {n}, got {s}")
    values = np.maximum(eig.values, 0.0)
    cutoff = rtol * values[0] if values.size else 0.0
    keep = values > cutoff
    keep[s:] = False
    inv = np.where(keep, np.divide(1.0, values, where=values > 0,
                                   out=np.zeros_like(values)), 0.0)
    return _spectral_rebuild(eig, inv)


def psd_sqrt(a, rtol=DEFAULT_RTOL, *, eig=None):
    """Symmetric PSD square root; eigenvalues below the cutoff are zeroed."""
    if eig is None:
        eig = sym_eig(a)
    values = np.maximum(eig.values, 0.0)
    cutoff = rtol * values[0] if values.size else 0.0
    roots = np.where(values > cutoff, np.sqrt(values), 0.0)
    return _spectral_rebuild(eig, roots)


def null_vector(phi):
    """A nonzero vector c with phi @ c ~ 0, normalized to unit max-norm.

    ``phi`` must be m x n with n >= m + 1 so a null direction exists.  The
    last column of a complete QR of phi.T is orthogonal to every row of
    phi by construction; its largest-magnitude entry is scaled to +1,
    which fixes the sign deterministically.  The all-zero matrix maps to
    the first basis vector.
    """
    phi = np.asarray(phi, dtype=float)
    if phi.ndim != 2:
        raise ValueError("expected a 2-d array")
    m, n = phi.shape
    if n < m + 1:
        raise ValueError(f"need at least {m + 1} columns for a guaranteed null vector")
    if not np.all(np.isfinite(phi)):
        raise ValueError("non-finite entries")
    if np.abs(phi).max() == 0.0:
        c = np.zeros(n)
        c[0] = 1.0
        return c
    q, _ = np.linalg.qr(phi.T, mode="complete")
    c = q[:, -1]
    pivot = np.argmax(np.abs(c))
    return c / c[pivot]
