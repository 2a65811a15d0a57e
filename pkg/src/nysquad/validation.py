"""Input validation helpers used by the public entry points.

All point sets are handled internally as 2-d float arrays of shape
(n_points, n_dims).  ``as_points`` performs the coercion from the looser
shapes accepted at the API boundary.
"""

import numpy as np


def as_points(x, d=None, name="points"):
    """Coerce ``x`` to a (n, d) float array.

    Scalars become a single 1-d point.  A 1-d array is read as n points
    when ``d`` is 1 (or unknown) and as a single point when its length
    equals ``d``.
    """
    arr = np.asarray(x, dtype=float)
    if arr.ndim == 0:
        arr = arr.reshape(1, 1)
    elif arr.ndim == 1:
        if d is not None and d > 1:
            if arr.shape[0] != d:
                raise ValueError(
                    f"{name}: 1-d input of length {arr.shape[0]} does not match d={d}"
                )
            arr = arr.reshape(1, d)
        else:
            arr = arr.reshape(-1, 1)
    elif arr.ndim != 2:
        raise ValueError(f"{name}: expected at most 2 dimensions, got {arr.ndim}")
    if d is not None and arr.shape[1] != d:
        raise ValueError(f"{name}: expected {d} columns, got {arr.shape[1]}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name}: non-finite values")
    return arr


def check_unit_cube(x, name="points"):
    """Raise if any coordinate falls outside [0, 1]."""
    if x.size and (x.min() < 0.0 or x.max() > 1.0):
        raise ValueError(f"{name}: coordinates must lie in [0, 1]")


def check_weights(w, name="weights", require_convex=True, atol=1e-9):
    """Validate a weight vector; convex means nonnegative and summing to 1."""
    w = np.asarray(w, dtype=float).reshape(-1)
    if not np.all(np.isfinite(w)):
        raise ValueError(f"{name}: non-finite values")
    if require_convex:
        if w.size == 0:
            raise ValueError(f"{name}: empty")
        if w.min() < -atol:
            raise ValueError(f"{name}: negative entries")
        if abs(w.sum() - 1.0) > atol:
            raise ValueError(f"{name}: weights must sum to 1")
    return w


def check_square(a, name="matrix"):
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"{name}: expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError(f"{name}: non-finite values")
    return a
