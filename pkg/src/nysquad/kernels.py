"""Kernels on the unit cube with known Mercer decompositions.

The workhorse is the periodic Sobolev (Korobov) kernel of smoothness ``r``

    k_r(x, y) = 1 + (-1)**(r-1) * (2*pi)**(2*r) / (2*r)! * B_{2r}(|x - y|)

on [0, 1], where ``B_n`` is the n-th Bernoulli polynomial, together with its
d-fold product on [0, 1]**d.  Under the uniform measure its eigenfunctions are
the constant and the pairs sqrt(2)*cos(2*pi*m*x), sqrt(2)*sin(2*pi*m*x), with
eigenvalues 1 and m**(-2*r) (twice).  A Gaussian kernel is included as a
spectrum-free companion for identities that hold for any PSD kernel.
"""

import heapq
from fractions import Fraction
from math import comb, factorial, fsum, log, pi, sqrt

import numpy as np

from .exceptions import AnalyticUnavailableError
from .validation import as_points, check_unit_cube

MAX_BERNOULLI_DEGREE = 12

# zeta(2k) = (-1)**(k+1) * B_{2k} * (2*pi)**(2k) / (2 * (2k)!), tabulated in
# closed form so spectral tails never rely on truncating the defining series.
ZETA_EVEN = {
    2: pi**2 / 6,
    4: pi**4 / 90,
    6: pi**6 / 945,
    8: pi**8 / 9450,
    10: pi**10 / 93555,
    12: 691 * pi**12 / 638512875,
}


def _bernoulli_coefficient_table(max_degree):
    """Coefficient lists (ascending powers) of B_0 .. B_max, exact rationals.

    Bernoulli numbers from the defining recurrence
    sum_{j<=m} C(m+1, j) b_j = 0, b_0 = 1, then
    B_n(t) = sum_k C(n, k) * b_{n-k} * t**k.
    """
    numbers = [Fraction(1)]
    for m in range(1, max_degree + 1):
        acc = sum(comb(m + 1, j) * numbers[j] for j in range(m))
        numbers.append(Fraction(-1, m + 1) * acc)
    table = []
    for n in range(max_degree + 1):
        coeffs = [comb(n, k) * numbers[n - k] for k in range(n + 1)]
        table.append(np.array([float(c) for c in coeffs]))
    return table

_BERNOULLI_COEFFS = _bernoulli_coefficient_table(MAX_BERNOULLI_DEGREE)


def bernoulli_polynomial(n, t):
    """Evaluate the Bernoulli polynomial B_n on [0, 1].

    Only the even degrees up to 12 appearing in kernel evaluations are
    exposed.  ``t`` may be a scalar or an array.
    """
    if not isinstance(n, (int, np.integer)) or n < 0:
        raise ValueError(f"degree must be a nonnegative integer, got {n!r}")
    if n > MAX_BERNOULLI_DEGREE or n % 2 == 1:
        raise ValueError(f"unsupported degree {n}: need even n <= {MAX_BERNOULLI_DEGREE}")
    t = np.asarray(t, dtype=float)
    if t.size and (t.min() < 0.0 or t.max() > 1.0):
        raise ValueError("argument outside [0, 1]")
    coeffs = _BERNOULLI_COEFFS[n]
    out = np.full_like(t, coeffs[-1])
    for c in coeffs[-2::-1]:
        out = out * t + c
    return out if out.ndim else float(out)


# Row-block size for pairwise evaluations; keeps temporaries near ~128 MB
# even for the largest experiment grids.
_GRAM_BLOCK_ELEMENTS = 1 << 24


class Kernel:
    """Common surface of the concrete kernels: elementwise and pairwise
    evaluation plus whatever closed-form quantities the kernel supports."""

    d = 1

    def _pairwise(self, x, y):  # pragma: no cover - abstract
        raise NotImplementedError

    def _elementwise(self, x, y):  # pragma: no cover - abstract
        raise NotImplementedError

    def _validate(self, x, name):
        return as_points(x, self.d, name)

    def __call__(self, x, y):
        """Evaluate k(x_i, y_i) elementwise for paired point arrays."""
        x = self._validate(x, "x")
        y = self._validate(y, "y")
        if x.shape[0] == 1 and y.shape[0] == 1:
            return float(self._elementwise(x, y)[0])
        if x.shape[0] != y.shape[0]:
            raise ValueError("x and y must hold the same number of points")
        return self._elementwise(x, y)

    def gram(self, X, Y=None):
        """Pairwise kernel matrix k(X, Y); symmetric form when Y is omitted.

        The one-argument form fills the lower triangle by mirroring the
        upper one, so gram(X) is symmetric bit-for-bit.
        """
        X = self._validate(X, "X")
        if Y is None:
            G = self._blocked_pairwise(X, X)
            G = np.triu(G) + np.triu(G, 1).T
            return G
        Y = self._validate(Y, "Y")
        return self._blocked_pairwise(X, Y)

    def _blocked_pairwise(self, X, Y):
        n, m = X.shape[0], Y.shape[0]
        if n * m <= _GRAM_BLOCK_ELEMENTS:
            return self._pairwise(X, Y)
        out = np.empty((n, m))
        step = max(1, _GRAM_BLOCK_ELEMENTS // max(m, 1))
        for lo in range(0, n, step):
            hi = min(lo + step, n)
            out[lo:hi] = self._pairwise(X[lo:hi], Y)
        return out

    def diag(self, X):
        """Vector of k(x, x) over the rows of X."""
        X = self._validate(X, "X")
        return self._elementwise(X, X)

    # Closed-form quantities; concrete kernels override what they support.

    def squared(self):
        """Kernel h(x, y) = integral of k(x, t) k(t, y) over the uniform measure."""
        raise AnalyticUnavailableError(f"no closed-form squared kernel for {self!r}")

    def spectrum(self):
        """Descending eigenvalues of the integral operator, uniform measure."""
        raise AnalyticUnavailableError(f"no analytic spectrum for {self!r}")

    def mean_embedding(self, X):
        """Vector of integral k(x_i, t) dt over the rows of X."""
        raise AnalyticUnavailableError(f"no closed-form mean embedding for {self!r}")

    def double_integral(self):
        """Integral of k over the product of two uniform measures."""
        raise AnalyticUnavailableError(f"no closed-form double integral for {self!r}")


class KorobovKernel(Kernel):
    """Periodic Sobolev kernel of integer smoothness r >= 1 on [0, 1]**d."""

    def __init__(self, r, d=1):
        if not isinstance(r, (int, np.integer)) or r < 1:
            raise ValueError(f"smoothness must be a positive integer, got {r!r}")
        if 2 * r > MAX_BERNOULLI_DEGREE:
            raise ValueError(f"unsupported degree: 2*r must not exceed {MAX_BERNOULLI_DEGREE}")
        if not isinstance(d, (int, np.integer)) or d < 1:
            raise ValueError(f"dimension must be a positive integer, got {d!r}")
        self.r = int(r)
        self.d = int(d)
        self._scale = (-1.0) ** (self.r - 1) * (2 * pi) ** (2 * self.r) / factorial(2 * self.r)

    @property
    def kind(self):
        return "korobov" if self.d == 1 else "korobov-product"

    def __repr__(self):
        return f"KorobovKernel(r={self.r}, d={self.d})"

    def _validate(self, x, name):
        pts = as_points(x, self.d, name)
        check_unit_cube(pts, name)
        return pts

    def _pairwise(self, x, y):
        out = np.ones((x.shape[0], y.shape[0]))
        for j in range(self.d):
            delta = np.abs(x[:, j, None] - y[None, :, j])
            out *= 1.0 + self._scale * bernoulli_polynomial(2 * self.r, delta)
        return out

    def _elementwise(self, x, y):
        out = np.ones(x.shape[0])
        for j in range(self.d):
            delta = np.abs(x[:, j] - y[:, j])
            out *= 1.0 + self._scale * bernoulli_polynomial(2 * self.r, delta)
        return out

    @property
    def diagonal(self):
        """The constant value of k(x, x), equal to (1 + 2*zeta(2r))**d."""
        return (1.0 + 2.0 * ZETA_EVEN[2 * self.r]) ** self.d

    def diag(self, X):
        X = self._validate(X, "X")
        return np.full(X.shape[0], self.diagonal)

    def squared(self):
        # One Fourier mode at a time: integrating cos(2*pi*m(x-t)) against
        # cos(2*pi*m(t-y)) squares each eigenvalue, which doubles r.
        return KorobovKernel(2 * self.r, self.d)

    def spectrum(self):
        return KorobovSpectrum(self.r, self.d)

    def mean_embedding(self, X):
        X = self._validate(X, "X")
        return np.ones(X.shape[0])

    def double_integral(self):
        return 1.0


class GaussianKernel(Kernel):
    """Gaussian kernel exp(-||x - y||**2 / (2 * lengthscale**2))."""

    def __init__(self, lengthscale=1.0, d=1):
        if not lengthscale > 0:
            raise ValueError(f"lengthscale must be positive, got {lengthscale!r}")
        self.lengthscale = float(lengthscale)
        self.d = int(d)

    kind = "gaussian"

    def __repr__(self):
        return f"GaussianKernel(lengthscale={self.lengthscale}, d={self.d})"

    def _pairwise(self, x, y):
        sq = np.zeros((x.shape[0], y.shape[0]))
        for j in range(self.d):
            sq += (x[:, j, None] - y[None, :, j]) ** 2
        return np.exp(-sq / (2.0 * self.lengthscale**2))

    def _elementwise(self, x, y):
        sq = ((x - y) ** 2).sum(axis=1)
        return np.exp(-sq / (2.0 * self.lengthscale**2))

    @property
    def diagonal(self):
        return 1.0

    def diag(self, X):
        X = self._validate(X, "X")
        return np.ones(X.shape[0])


class KorobovSpectrum:
    """Descending eigenvalue enumeration for the Korobov kernel, uniform
    measure, including eigenfunction evaluators in dimension one.

    Eigenvalues in d > 1 are all products of per-coordinate eigenvalues,
    enumerated lazily best-first (heap over multi-indices with dedup), with
    ties broken by lexicographic multi-index so the order is deterministic.
    """

    def __init__(self, r, d=1):
        self.r = int(r)
        self.d = int(d)
        self._values = []
        self._heap = None
        self._seen = None

    @property
    def trace(self):
        """Sum of all eigenvalues, (1 + 2*zeta(2r))**d in closed form."""
        return (1.0 + 2.0 * ZETA_EVEN[2 * self.r]) ** self.d

    def _one_dim(self, i):
        # index 0 is the constant; indices 2m-1, 2m share eigenvalue m**(-2r)
        return 1.0 if i == 0 else float((i + 1) // 2) ** (-2 * self.r)

    def _extend(self, count):
        if self._heap is None:
            start = (0,) * self.d
            self._heap = [(-1.0, start)]
            self._seen = {start}
        while len(self._values) < count and self._heap:
            neg, idx = heapq.heappop(self._heap)
            self._values.append(-neg)
            for j in range(self.d):
                succ = idx[:j] + (idx[j] + 1,) + idx[j + 1 :]
                if succ not in self._seen:
                    self._seen.add(succ)
                    value = 1.0
                    for i in succ:
                        value *= self._one_dim(i)
                    heapq.heappush(self._heap, (-value, succ))

    def top(self, m):
        """The m largest eigenvalues, descending."""
        if m < 0:
            raise ValueError("m must be nonnegative")
        self._extend(m)
        return np.array(self._values[:m])

    def tail(self, s):
        """Sum of the eigenvalues after the s largest ones.

        Computed as trace minus a partial sum so no infinite series is
        ever truncated term by term.
        """
        if s < 0:
            raise ValueError("s must be nonnegative")
        head = fsum(self.top(s)) if s else 0.0
        return max(self.trace - head, 0.0)

    def eigenfunction(self, i):
        """The i-th eigenfunction (d = 1 only), matching the order of top()."""
        if self.d != 1:
            raise AnalyticUnavailableError("eigenfunctions are exposed only for d = 1")
        if i < 0:
            raise ValueError("index must be nonnegative")
        if i == 0:
            return lambda x: np.ones_like(np.asarray(x, dtype=float))
        m = (i + 1) // 2
        if i % 2 == 1:
            return lambda x: sqrt(2.0) * np.cos(2 * pi * m * np.asarray(x, dtype=float))
        return lambda x: sqrt(2.0) * np.sin(2 * pi * m * np.asarray(x, dtype=float))


def iid_nystrom_bound(kernel, n_landmarks, rank, split):
    """Closed-form bound on the expected mean root-residual of a rank-``rank``
    landmark approximation built from ``n_landmarks`` i.i.d. uniform landmarks.

    ``split`` is the free spectral index the bound is optimised over; natural
    logarithm throughout.
    """
    if rank < 1 or split < 1 or n_landmarks < 1:
        raise ValueError("n_landmarks, rank and split must be positive")
    spec = kernel.spectrum()
    tail_s = spec.tail(rank)
    tail_m = spec.tail(split)
    k_max = kernel.diagonal
    ell = float(n_landmarks)
    return (
        2.0 * sqrt(tail_s)
        + 4.0 * sqrt(tail_m)
        + sqrt(k_max) / ell * (80.0 * split**2 * log(1.0 + 2.0 * ell) / 9.0 + 69.0)
    )
