"""Measure reduction by windowed basis-pursuit elimination.

Given a convex weighting of N points and s test functions, ``recombine``
returns a convex reweighting supported on at most s + 1 of the points with
the same test-function means, without ever increasing the mean of an
optional scalar direction function.

The elimination walks an active window of s + 2 positive-weight points.
Stacking a constant row on top of the windowed test-function values gives
an (s + 1) x (s + 2) matrix whose null vector c satisfies sum(c) = 0, so c
carries both signs and some weight can be driven exactly to zero while all
column sums (including total mass) are preserved.  Cost is O(N * s^3) from
one small QR factorization per elimination.
"""

import numpy as np

from .linalg import null_vector
from .validation import check_weights

# Weights at or below this value after an update are snapped to exact zero.
SNAP_TOL = 1e-14


class DiscreteMeasure:
    """Weights on a subset of a host point set, stored as indices."""

    def __init__(self, indices, weights):
        self.indices = np.asarray(indices, dtype=int)
        self.weights = np.asarray(weights, dtype=float)
        if self.indices.shape != self.weights.shape:
            raise ValueError("indices and weights must have matching shapes")

    @property
    def support_size(self):
        return int(np.count_nonzero(self.weights > 0.0))

    def __repr__(self):
        return f"DiscreteMeasure(support={self.support_size})"


def _step_size(c, w):
    """Largest t with w - t * c >= 0; ties resolved to the lowest index."""
    pos = np.flatnonzero(c > 0.0)
    ratios = w[pos] / c[pos]
    j = int(np.argmin(ratios))
    return float(ratios[j]), int(pos[j])


def _apply_step(w, act, c, g):
    """One elimination along the null direction c over the active indices.

    The sign of c is chosen so the mean of g never increases; if the
    direction is flat either way, the larger step clears more weight."""
    sigma = float(c @ g[act])
    if sigma == 0.0:
        t_pos, j_pos = _step_size(c, w[act])
        t_neg, j_neg = _step_size(-c, w[act])
        if t_neg > t_pos:
            c, t, j = -c, t_neg, j_neg
        else:
            t, j = t_pos, j_pos
    else:
        if sigma < 0.0:
            c = -c
        t, j = _step_size(c, w[act])
    w[act] -= t * c
    w[act[j]] = 0.0
    low = act[w[act] <= SNAP_TOL]
    w[low] = 0.0


def recombine(weights, test_values, direction=None):
    """Reduce a convex weighting to at most s + 1 support points.

    Parameters
    ----------
    weights : (N,) nonnegative, summing to 1.
    test_values : (N, s) values of the s test functions at the points.
    direction : (N,) optional; the output mean of this function never
        exceeds the input mean (used for one-sided residual control).

    Returns
    -------
    DiscreteMeasure with indices into the input rows.  With N <= s + 1 the
    input is returned unchanged.  Linearly dependent test functions (a
    constant column, duplicates) leave null directions below the window
    size, so the support then shrinks below s + 1 -- a single constant
    test function reduces to one point.
    """
    w = check_weights(weights).copy()
    F = np.asarray(test_values, dtype=float)
    if F.ndim != 2 or F.shape[0] != w.shape[0]:
        raise ValueError("test_values must be (N, s) with N matching weights")
    if not np.all(np.isfinite(F)):
        raise ValueError("test_values: non-finite entries")
    N, s = F.shape
    if direction is None:
        g = np.zeros(N)
    else:
        g = np.asarray(direction, dtype=float).reshape(-1)
        if g.shape[0] != N or not np.all(np.isfinite(g)):
            raise ValueError("direction must be a finite length-N vector")

    if N <= s + 1:
        return DiscreteMeasure(np.arange(N), w)

    order = [int(i) for i in np.flatnonzero(w > 0.0)]
    active = order[: s + 2]
    ptr = len(active)

    while len(active) == s + 2:
        act = np.array(active)
        phi = np.empty((s + 1, s + 2))
        phi[0] = 1.0
        phi[1:] = F[act].T
        _apply_step(w, act, null_vector(phi), g)
        active = [i for i in active if w[i] > 0.0]
        while len(active) < s + 2 and ptr < len(order):
            i = order[ptr]
            ptr += 1
            if w[i] > 0.0:
                active.append(i)

    # degenerate cleanup: when the surviving columns are linearly
    # dependent (constant or duplicated test functions), null directions
    # still exist below window size and the support can shrink further
    while True:
        act = np.flatnonzero(w > 0.0)
        if act.size <= 1:
            break
        phi = np.vstack([np.ones(act.size), F[act].T])
        _, sing, vt = np.linalg.svd(phi)
        if sing[-1] > 1e-12 * sing[0]:
            break
        c = vt[-1]
        _apply_step(w, act, c / c[np.argmax(np.abs(c))], g)

    survivors = np.flatnonzero(w > 0.0)
    total = w[survivors].sum()
    return DiscreteMeasure(survivors, w[survivors] / total)
