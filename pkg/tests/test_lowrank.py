"""Tests for the landmark-based low-rank approximation builders.

Oracles: closed-form single-landmark formulas, eigenvalue tails computed
straight from numpy on the raw gram, and Monte Carlo integration of the
residual with a standard-error budget.
"""

import math

import mpmath
import numpy as np
import pytest
from numpy.testing import assert_allclose, assert_array_equal

from nysquad.exceptions import NumericalConsistencyError
from nysquad.kernels import GaussianKernel, KorobovKernel, iid_nystrom_bound
from nysquad.lowrank import (
    build_mercer_empirical,
    build_mercer_mu,
    build_nystrom,
    build_nystrom_svd,
    mu_residual_exact,
)


def landmarks_for(kernel, ell, seed):
    rng = np.random.default_rng(seed)
    return rng.random((ell, kernel.d))


class TestNystromFull:
    def test_reproduces_kernel_on_landmarks(self):
        for kernel in (KorobovKernel(1), KorobovKernel(2, 2), GaussianKernel(0.4, 2)):
            Z = landmarks_for(kernel, 12, seed=0)
            app = build_nystrom(kernel, Z)
            assert_allclose(app.pairwise(Z), kernel.gram(Z), atol=1e-8)

    def test_interpolates_against_landmark_slice(self):
        # k_app(x, z_j) = k(x, z_j) for every landmark z_j, any x
        kernel = KorobovKernel(1)
        Z = landmarks_for(kernel, 10, seed=1)
        X = landmarks_for(kernel, 25, seed=2)
        app = build_nystrom(kernel, Z)
        assert_allclose(app.pairwise(X, Z), kernel.gram(X, Z), atol=1e-8)

    def test_single_landmark_closed_form(self):
        kernel = KorobovKernel(2)
        z = np.array([[0.3]])
        app = build_nystrom(kernel, z)
        xs = np.linspace(0.0, 1.0, 11)[:, None]
        expected = np.outer(kernel.gram(xs, z)[:, 0], kernel.gram(xs, z)[:, 0])
        expected /= float(kernel(0.3, 0.3))
        assert_allclose(app.pairwise(xs), expected, rtol=1e-12)

    def test_residual_diag_bounds(self):
        kernel = KorobovKernel(1, 2)
        Z = landmarks_for(kernel, 8, seed=3)
        X = landmarks_for(kernel, 200, seed=4)
        res = build_nystrom(kernel, Z).residual_diag(X)
        assert (res >= 0.0).all()
        assert (res <= kernel.diag(X) + 1e-12).all()

    def test_features_square_to_pairwise(self):
        kernel = GaussianKernel(0.5, 3)
        Z = landmarks_for(kernel, 6, seed=5)
        X = landmarks_for(kernel, 9, seed=6)
        app = build_nystrom(kernel, Z)
        f = app.features(X)
        assert f.shape == (9, app.rank)
        assert_allclose(f @ f.T, app.pairwise(X), atol=1e-12)

    def test_duplicate_landmarks_stay_finite(self):
        # rank-deficient gram: the shared cutoff must absorb the copies
        kernel = KorobovKernel(1)
        Z = np.array([[0.2], [0.2], [0.7]])
        app = build_nystrom(kernel, Z)
        assert app.rank == 2
        assert np.isfinite(app.pairwise(Z)).all()


class TestNystromSvd:
    def test_full_rank_matches_untruncated(self):
        kernel = KorobovKernel(1)
        Z = landmarks_for(kernel, 9, seed=7)
        full = build_nystrom(kernel, Z)
        svd = build_nystrom_svd(kernel, Z, s=9)
        assert_array_equal(svd.factor, full.factor)
        assert_array_equal(svd.eigenvalues, full.eigenvalues)

    def test_empirical_mean_residual_is_eigenvalue_tail(self):
        """Averaging the truncation residual over the landmarks themselves
        recovers the tail of the gram spectrum divided by ell."""
        cases = [(KorobovKernel(1), 20), (GaussianKernel(0.3, 2), 20)]
        for kernel, ell in cases:
            Z = landmarks_for(kernel, ell, seed=8)
            lams = np.sort(np.linalg.eigvalsh(kernel.gram(Z)))[::-1]
            for s in (1, 5, ell // 2, ell - 1):
                app = build_nystrom_svd(kernel, Z, s)
                got = app.residual_diag(Z).mean()
                want = lams[s:].sum() / ell
                assert_allclose(got, want, atol=1e-8 * lams[0])

    def test_mean_residual_monotone_in_rank(self):
        kernel = KorobovKernel(2)
        Z = landmarks_for(kernel, 16, seed=9)
        X = landmarks_for(kernel, 300, seed=10)
        means = [build_nystrom_svd(kernel, Z, s).residual_diag(X).mean()
                 for s in range(1, 17)]
        assert (np.diff(means) <= 1e-12).all()

    @pytest.mark.parametrize("s", [0, -2, 10])
    def test_rejects_bad_rank(self, s):
        kernel = KorobovKernel(1)
        with pytest.raises(ValueError):
            build_nystrom_svd(kernel, landmarks_for(kernel, 5, seed=11), s)


class TestMercerMu:
    def test_eigenvalues_dominated_by_kernel_spectrum(self):
        kernel = KorobovKernel(1)
        spec_top = kernel.spectrum().top(24)
        for seed in range(5):
            Z = landmarks_for(kernel, 24, seed=seed)
            app = build_mercer_mu(kernel, Z, s=24)
            assert (app.eigenvalues <= np.asarray(spec_top) + 1e-8).all()

    def test_factor_diagonalizes_squared_gram(self):
        """Columns of the factor are orthogonal under the squared-kernel
        gram with squared norms kappa_i: that is what makes the feature
        functions an orthogonal family under the target measure."""
        kernel = KorobovKernel(1)
        Z = landmarks_for(kernel, 12, seed=12)
        s = 6
        app = build_mercer_mu(kernel, Z, s)
        h_gram = kernel.squared().gram(Z)
        inner = app.factor.T @ h_gram @ app.factor
        assert_allclose(inner, np.diag(app.eigenvalues[:app.rank]), atol=1e-10)

    def test_trace_matches_exact_residual(self):
        # diagonal - sum(kappa) over the full construction is exactly the
        # mean residual of the untruncated projection
        kernel = KorobovKernel(2)
        Z = landmarks_for(kernel, 10, seed=13)
        app = build_mercer_mu(kernel, Z, s=10)
        assert_allclose(kernel.diagonal - app.eigenvalues.sum(),
                        mu_residual_exact(kernel, Z), atol=1e-10)

    def test_diag_dominated_by_projection(self):
        # truncation can only remove mass: diag <= full projection diag
        kernel = KorobovKernel(1, 2)
        Z = landmarks_for(kernel, 10, seed=14)
        X = landmarks_for(kernel, 100, seed=15)
        full = build_nystrom(kernel, Z).diag(X)
        for s in (2, 5, 9):
            assert (build_mercer_mu(kernel, Z, s).diag(X) <= full + 1e-9).all()


class TestMercerEmpirical:
    def test_orthogonality_under_reference_measure(self):
        kernel = KorobovKernel(1)
        Z = landmarks_for(kernel, 10, seed=16)
        X = landmarks_for(kernel, 400, seed=17)
        app = build_mercer_empirical(kernel, Z, X, s=5)
        f = app.features(X)
        inner = f.T @ f / X.shape[0]
        assert_allclose(inner, np.diag(app.eigenvalues[:app.rank]), atol=1e-10)

    def test_collapses_to_svd_when_reference_is_landmarks(self):
        kernel = KorobovKernel(1)
        Z = landmarks_for(kernel, 16, seed=18)
        probes = landmarks_for(kernel, 60, seed=19)
        for s in (1, 4, 15):
            emp = build_mercer_empirical(kernel, Z, Z, s)
            svd = build_nystrom_svd(kernel, Z, s)
            assert_allclose(emp.pairwise(probes), svd.pairwise(probes), atol=1e-9)

    def test_full_rank_with_nested_reference_matches_projection(self):
        # Z inside X forces range(K_Z) into the empirical squared gram's
        # range, so keeping every mode recovers the plain projection
        kernel = KorobovKernel(1)
        Z = landmarks_for(kernel, 8, seed=20)
        X = np.vstack([Z, landmarks_for(kernel, 40, seed=21)])
        probes = landmarks_for(kernel, 50, seed=22)
        emp = build_mercer_empirical(kernel, Z, X, s=8)
        full = build_nystrom(kernel, Z)
        assert_allclose(emp.pairwise(probes), full.pairwise(probes), atol=1e-8)

    def test_rejects_empty_reference(self):
        kernel = KorobovKernel(1)
        with pytest.raises(ValueError):
            build_mercer_empirical(kernel, landmarks_for(kernel, 4, seed=23),
                                   np.empty((0, 1)), s=2)


class TestMuResidualExact:
    def test_single_landmark_closed_form(self):
        # one landmark z: residual mean = (1 + 2 zeta(2r)) - (1 + 2 zeta(4r)) / (1 + 2 zeta(2r)),
        # independent of where z sits
        for r in (1, 2, 3):
            kernel = KorobovKernel(r)
            diag = 1.0 + 2.0 * float(mpmath.zeta(2 * r))
            hdiag = 1.0 + 2.0 * float(mpmath.zeta(4 * r))
            want = diag - hdiag / diag
            for z in (0.0, 0.37, 0.91):
                got = mu_residual_exact(kernel, np.array([[z]]))
                assert_allclose(got, want, rtol=1e-12)

    def test_monte_carlo_agreement(self):
        kernel = KorobovKernel(1)
        Z = (np.arange(1, 9) / 8.0)[:, None]
        exact = mu_residual_exact(kernel, Z)
        rng = np.random.default_rng(24)
        sample = rng.random((100_000, 1))
        res = build_nystrom(kernel, Z).residual_diag(sample)
        se = res.std(ddof=1) / math.sqrt(res.size)
        assert abs(res.mean() - exact) <= 3.0 * se

    def test_monotone_under_nested_grids(self):
        # grid(4) is a subset of grid(64), so the projection residual shrinks
        kernel = KorobovKernel(1)
        coarse = mu_residual_exact(kernel, (np.arange(1, 5) / 4.0)[:, None])
        fine = mu_residual_exact(kernel, (np.arange(1, 65) / 64.0)[:, None])
        assert fine < coarse < kernel.diagonal

    def test_inconsistent_inputs_raise(self):
        kernel = KorobovKernel(1)
        Z = landmarks_for(kernel, 5, seed=25)
        bogus = 100.0 * kernel.gram(Z)
        with pytest.raises(NumericalConsistencyError):
            mu_residual_exact(kernel, Z, squared_gram=bogus)

    def test_shrinks_with_more_landmarks_on_average(self):
        kernel = KorobovKernel(1)
        means = []
        for ell in (10, 20):
            vals = [mu_residual_exact(kernel, landmarks_for(kernel, ell, seed=s))
                    for s in range(50)]
            means.append(np.mean(vals))
        assert means[1] < means[0]


class TestIidBoundSanity:
    def test_mean_root_residual_below_diagnostic_bound(self):
        """The closed-form i.i.d.-landmark bound dominates the Monte Carlo
        estimate of the mean root residual.  The bound is very loose, so
        this is a never-violated sanity check rather than a tightness
        claim."""
        kernel = KorobovKernel(1)
        ell, s = 20, 5
        rng = np.random.default_rng(40)
        estimates = []
        for _ in range(100):
            Z = rng.random((ell, 1))
            app = build_nystrom_svd(kernel, Z, s)
            probes = rng.random((2000, 1))
            estimates.append(np.sqrt(app.residual_diag(probes)).mean())
        assert np.mean(estimates) <= iid_nystrom_bound(kernel, ell, s, s)
