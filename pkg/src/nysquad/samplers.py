"""Deterministic point-set generation.

All randomness flows through ``SeededGenerator``, a (seed, stream) pair.
Streams are tuples of labels hashed to integers, so generators for
unrelated purposes are independent and adding a new purpose never perturbs
the draws of an existing one.

Point kinds:

* ``iid-uniform``  -- i.i.d. uniform on [0, 1]**d;
* ``grid``         -- the 1-d lattice {1/n, 2/n, ..., 1};
* ``halton-owen``  -- Halton points (prime bases, radical-inverse index
                      starting at 1) with nested uniform digit scrambling,
                      truncated at 32 digits per base; permutations come
                      from a counter-based hash of (seed, stream,
                      dimension, digit path);
* ``beta25``       -- i.i.d. Beta(2, 5) per coordinate, via 30 bisection
                      steps on the closed-form CDF.
"""

import hashlib
from dataclasses import dataclass, field

import numpy as np

_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)
_HALTON_DIGITS = 32

# CDF of Beta(2, 5): integral of 30 t (1 - t)^4, expanded.
_BETA25_CDF_COEFFS = (0.0, 0.0, 15.0, -40.0, 45.0, -24.0, 5.0)


def _label_to_int(label):
    if isinstance(label, (int, np.integer)):
        if label < 0:
            raise ValueError("stream labels must be nonnegative")
        return int(label)
    digest = hashlib.blake2b(str(label).encode(), digest_size=4).digest()
    return int.from_bytes(digest, "big")


@dataclass(frozen=True)
class SeededGenerator:
    """A reproducible randomness source identified by seed and stream."""

    seed: int
    stream: tuple = field(default_factory=tuple)

    def child(self, *labels):
        """Derive an independent substream from string or integer labels."""
        return SeededGenerator(self.seed, self.stream + tuple(_label_to_int(x) for x in labels))

    def numpy_rng(self):
        return np.random.Generator(
            np.random.PCG64(np.random.SeedSequence(self.seed, spawn_key=self.stream))
        )

    def _hash_key(self):
        payload = str((self.seed, self.stream)).encode()
        return hashlib.blake2b(payload, digest_size=16).digest()


def beta25_inverse_cdf(u):
    """Quantile function of Beta(2, 5) by bisection on the closed-form CDF."""
    u = np.asarray(u, dtype=float)
    lo = np.zeros_like(u)
    hi = np.ones_like(u)
    for _ in range(30):
        mid = 0.5 * (lo + hi)
        cdf = np.zeros_like(mid)
        for c in _BETA25_CDF_COEFFS[::-1]:
            cdf = cdf * mid + c
        below = cdf < u
        lo = np.where(below, mid, lo)
        hi = np.where(below, hi, mid)
    return 0.5 * (lo + hi)


def _tiny_permutation(base, digest):
    """Fisher-Yates permutation of range(base) driven by a hash integer."""
    h = int.from_bytes(digest, "big")
    vals = list(range(base))
    for i in range(base - 1, 0, -1):
        h, r = divmod(h, i + 1)
        vals[i], vals[r] = vals[r], vals[i]
    return vals


def _scrambled_radical_inverse(n, base, key, dim, scramble):
    """Radical inverses of 1..n in ``base`` with nested digit scrambling.

    The permutation applied at digit level j depends on the path of digits
    above it (in output significance order), so each point ends up uniform
    in its elementary interval.  Permutations are memoized per path up to
    the deepest level at which two indices can still share a path; beyond
    that every path is unique to its point and caching would only cost
    memory.
    """
    out = np.empty(n)
    if not scramble:
        for idx in range(1, n + 1):
            x, scale, m = 0.0, 1.0 / base, idx
            while m:
                m, rem = divmod(m, base)
                x += rem * scale
                scale /= base
            out[idx - 1] = x
        return out

    shared_levels = 0
    m = n
    while m:
        m //= base
        shared_levels += 1
    cache = {}
    prefix = key + dim.to_bytes(4, "big")
    for idx in range(1, n + 1):
        digits = []
        m = idx
        while m:
            m, rem = divmod(m, base)
            digits.append(rem)
        x = 0.0
        scale = 1.0 / base
        path = b""
        for level in range(_HALTON_DIGITS):
            digit = digits[level] if level < len(digits) else 0
            if level < shared_levels:
                entry = cache.get(path)
                if entry is None:
                    digest = hashlib.blake2b(prefix + path, digest_size=16).digest()
                    entry = _tiny_permutation(base, digest)
                    cache[path] = entry
            else:
                digest = hashlib.blake2b(prefix + path, digest_size=16).digest()
                entry = _tiny_permutation(base, digest)
            x += entry[digit] * scale
            scale /= base
            path += bytes([digit])
        out[idx - 1] = x
    return out


def halton(n, d, gen=None, scramble=True):
    """(n, d) Halton points; scrambled unless ``scramble`` is off, in which
    case the first dimension starts 1/2, 1/4, 3/4, ..."""
    if d > len(_PRIMES):
        raise ValueError(f"at most {len(_PRIMES)} dimensions supported")
    if scramble and gen is None:
        raise ValueError("scrambling requires a SeededGenerator")
    key = gen._hash_key() if gen is not None else b""
    out = np.empty((n, d))
    for j in range(d):
        out[:, j] = _scrambled_radical_inverse(n, _PRIMES[j], key, j, scramble)
    return out


def generate(kind, n, d, gen):
    """Generate an (n, d) point set of the requested kind."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if kind == "iid-uniform":
        return gen.numpy_rng().random((n, d))
    if kind == "grid":
        if d != 1:
            raise ValueError("grid points are only defined for d = 1")
        return (np.arange(1, n + 1) / n).reshape(-1, 1)
    if kind == "halton-owen":
        return halton(n, d, gen)
    if kind == "beta25":
        u = gen.numpy_rng().random((n, d))
        return beta25_inverse_cdf(u)
    raise ValueError(f"unknown point kind {kind!r}")


def landmark_mix(structured, n, d, gen):
    """Landmark set: the structured points followed by 20 * n Beta(2, 5)
    contamination points.  The structured block keeps its order, so it is
    recoverable as the prefix."""
    structured = np.asarray(structured, dtype=float)
    if structured.ndim == 1:
        structured = structured.reshape(-1, 1)
    if structured.shape[1] != d:
        raise ValueError("structured points do not match dimension")
    noise = generate("beta25", 20 * n, d, gen)
    return np.vstack([structured, noise])
