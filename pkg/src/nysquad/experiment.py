"""Benchmark harness: quadrature error versus point count.

For each trial a candidate sample Y (N i.i.d. uniform points, N tied to n
by the n-rule), a structured landmark set H (1-d lattice, or scrambled
Halton in higher dimension) and a contaminated landmark set Z (H followed
by 20 n Beta(2, 5) points) are drawn once and shared by every method, so
per-(trial, method) randomness comes from dedicated streams and adding a
method never perturbs the others.

Methods
-------
monte-carlo                n i.i.d. uniform points, weights 1/n
grid-or-halton-baseline    H with weights 1/n (fresh scramble for d >= 2)
kq-ksH                     reduction of Y under rank-(n-1) svd at H
kq-ksZ                     reduction of Y under rank-(n-1) svd at Z
kq-ksYZ                    reduction of Y, empirical Mercer variant at Z
kq-ksmuZ                   reduction of Y, target-measure Mercer variant at Z
"""

import time
from dataclasses import dataclass

import numpy as np

from .exceptions import ConfigError
from .kernels import KorobovKernel
from .linalg import DEFAULT_RTOL, sym_eig
from .lowrank import build_mercer_empirical, build_mercer_mu, build_nystrom_svd
from .quadrature import Quadrature, kernel_quadrature, worst_case_error
from .samplers import SeededGenerator, generate, landmark_mix

CSV_HEADER = "figure,method,d,r,n,N,trial,seed,wce_sq,runtime_ms"

ALL_METHODS = (
    "monte-carlo",
    "grid-or-halton-baseline",
    "kq-ksH",
    "kq-ksZ",
    "kq-ksYZ",
    "kq-ksmuZ",
)

_KQ_METHODS = {"kq-ksH", "kq-ksZ", "kq-ksYZ", "kq-ksmuZ"}
_Z_BASED = {"kq-ksZ", "kq-ksYZ", "kq-ksmuZ"}

FIGURE_PRESETS = {
    "fig1a": {"d": 1, "r": 1, "n_rule": "n2", "n_list": (4, 8, 16, 32, 64, 128)},
    "fig1b": {"d": 2, "r": 1, "n_rule": "n2", "n_list": (4, 8, 16, 32, 64, 128)},
    "fig1c": {"d": 3, "r": 3, "n_rule": "n2", "n_list": (4, 8, 16, 32, 64, 128)},
    "fig2a": {"d": 1, "r": 2, "n_rule": "n2", "n_list": (4, 8, 16, 32, 64)},
    "fig2b": {"d": 1, "r": 2, "n_rule": "n3", "n_list": (4, 8, 16, 32, 64)},
}


@dataclass
class ExperimentConfig:
    figure: str = "custom"
    d: int = 1
    r: int = 1
    n_list: tuple = (4, 8, 16, 32, 64, 128)
    n_rule: str = "n2"
    trials: int = 20
    methods: tuple = ALL_METHODS
    seed: int = 0
    enforce_inequality: bool = True
    rtol: float = DEFAULT_RTOL

    @classmethod
    def from_figure(cls, figure, **overrides):
        """Start from a named preset; keyword overrides win."""
        if figure != "custom":
            if figure not in FIGURE_PRESETS:
                raise ConfigError(f"unknown figure {figure!r}")
            merged = dict(FIGURE_PRESETS[figure])
            merged.update(overrides)
            overrides = merged
        cfg = cls(figure=figure, **overrides)
        cfg.validate()
        return cfg

    def validate(self):
        def is_int(x):
            return isinstance(x, int) and not isinstance(x, bool)

        if self.figure != "custom" and self.figure not in FIGURE_PRESETS:
            raise ConfigError(f"unknown figure {self.figure!r}")
        if not is_int(self.d) or not 1 <= self.d <= 15:
            raise ConfigError(f"d must be an integer in [1, 15], got {self.d!r}")
        if not is_int(self.r) or not 1 <= self.r <= 6:
            raise ConfigError(f"r must be an integer in [1, 6], got {self.r!r}")
        ns = tuple(self.n_list)
        if not ns or any(not is_int(n) or n < 2 for n in ns):
            raise ConfigError("n_list must hold integers >= 2")
        if any(b <= a for a, b in zip(ns, ns[1:])):
            raise ConfigError("n_list must be strictly increasing")
        if self.n_rule not in ("n2", "n3"):
            raise ConfigError(f"n_rule must be 'n2' or 'n3', got {self.n_rule!r}")
        if not is_int(self.trials) or self.trials < 1:
            raise ConfigError("trials must be a positive integer")
        ms = tuple(self.methods)
        if not ms:
            raise ConfigError("methods must be nonempty")
        for m in ms:
            if m not in ALL_METHODS:
                raise ConfigError(f"unknown method {m!r}")
        if len(set(ms)) != len(ms):
            raise ConfigError("duplicate methods")
        if "kq-ksmuZ" in ms and self.r > 3:
            raise ConfigError("kq-ksmuZ needs the squared kernel, available for r <= 3")
        if not is_int(self.seed) or not 0 <= self.seed < 2**64:
            raise ConfigError("seed must be an unsigned 64-bit integer")
        if not isinstance(self.enforce_inequality, bool):
            raise ConfigError("enforce_inequality must be a boolean")
        if not (isinstance(self.rtol, float) and 0.0 < self.rtol < 1.0):
            raise ConfigError("rtol must be a float in (0, 1)")

    def sample_size(self, n):
        return n**2 if self.n_rule == "n2" else n**3


@dataclass(frozen=True)
class ResultRow:
    figure: str
    method: str
    d: int
    r: int
    n: int
    N: int
    trial: int
    seed: int
    wce_sq: float
    runtime_ms: int

    def to_csv(self):
        return (f"{self.figure},{self.method},{self.d},{self.r},{self.n},"
                f"{self.N},{self.trial},{self.seed},{self.wce_sq:.17g},"
                f"{self.runtime_ms}")


def _structured_points(cfg, n, gen):
    if cfg.d == 1:
        return generate("grid", n, 1, gen)
    return generate("halton-owen", n, cfg.d, gen)


def _method_quadrature(method, kernel, cfg, n, Y, H, Z, shared, trial_gen):
    s = n - 1
    if method == "monte-carlo":
        pts = generate("iid-uniform", n, cfg.d, trial_gen.child("mc"))
        return Quadrature(pts, np.full(n, 1.0 / n), {"kind": method})
    if method == "grid-or-halton-baseline":
        pts = H if cfg.d == 1 else _structured_points(cfg, n, trial_gen.child("baseline"))
        return Quadrature(pts, np.full(n, 1.0 / n), {"kind": method})
    if method == "kq-ksH":
        approx = build_nystrom_svd(kernel, H, s, cfg.rtol)
        return kernel_quadrature(approx, Y, cfg.enforce_inequality, seed=cfg.seed)
    if method == "kq-ksZ":
        approx = build_nystrom_svd(kernel, Z, s, cfg.rtol, gram_eig=shared["z_eig"])
    elif method == "kq-ksYZ":
        approx = build_mercer_empirical(kernel, Z, Y, s, cfg.rtol,
                                        gram_eig=shared["z_eig"],
                                        cross_gram=shared["k_yz"].T)
    elif method == "kq-ksmuZ":
        approx = build_mercer_mu(kernel, Z, s, cfg.rtol, gram_eig=shared["z_eig"])
    else:
        raise ConfigError(f"unknown method {method!r}")
    return kernel_quadrature(approx, Y, cfg.enforce_inequality, seed=cfg.seed,
                             cross_gram=shared["k_yz"])


def run_experiment(config):
    """Run every (method, n, trial) cell; rows sorted by (method, n, trial).

    Shared per-trial data (candidate sample, landmark grams and their
    eigendecompositions) is computed outside the timed sections, so
    runtime_ms covers method-specific work only.
    """
    config.validate()
    cfg = config
    kernel = KorobovKernel(cfg.r, cfg.d)
    root = SeededGenerator(cfg.seed)
    rows = []
    for n in cfg.n_list:
        N = cfg.sample_size(n)
        for t in range(cfg.trials):
            trial_gen = root.child("trial", n, t)
            Y = generate("iid-uniform", N, cfg.d, trial_gen.child("Y"))
            H = _structured_points(cfg, n, trial_gen.child("H"))
            Z = landmark_mix(H, n, cfg.d, trial_gen.child("Z"))
            shared = {}
            if _Z_BASED & set(cfg.methods):
                shared["z_eig"] = sym_eig(kernel.gram(Z))
                shared["k_yz"] = kernel.gram(Y, Z)
            for method in cfg.methods:
                start = time.perf_counter()
                q = _method_quadrature(method, kernel, cfg, n, Y, H, Z,
                                       shared, trial_gen)
                wce = worst_case_error(q, kernel)
                elapsed = time.perf_counter() - start
                rows.append(ResultRow(cfg.figure, method, cfg.d, cfg.r, n, N,
                                      t, cfg.seed, wce * wce,
                                      int(round(elapsed * 1000.0))))
    rows.sort(key=lambda row: (row.method, row.n, row.trial))
    return rows


def write_csv(rows, path, rtol_comment=None):
    """Write result rows; floats carry 17 significant digits.

    ``rtol_comment`` (a float) adds a leading ``# rtol=`` line recording a
    non-default cutoff.
    """
    lines = []
    if rtol_comment is not None:
        lines.append(f"# rtol={rtol_comment:.17g}")
    lines.append(CSV_HEADER)
    lines.extend(row.to_csv() for row in rows)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")
