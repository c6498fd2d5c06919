import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from knotfold.errors import (
    DegenerateSpectrum,
    DimensionMismatch,
    InsufficientData,
    NotSymmetric,
)
from knotfold.pca import (
    CovarianceAccumulator,
    PrincipalComponentAnalysis,
    dimension_estimate,
    normalized_variances,
    project,
    sym_eig,
)


def random_symmetric(n, seed):
    rng = np.random.default_rng(seed)
    a = rng.standard_normal((n, n))
    return (a + a.T) / 2


class TestAccumulator:
    def test_hand_example(self):
        acc = CovarianceAccumulator(2).add([1, 0]).add([-1, 0])
        assert np.allclose(acc.finalize(), [[2, 0], [0, 0]])

    def test_insufficient_data(self):
        with pytest.raises(InsufficientData):
            CovarianceAccumulator(2).add([1, 2]).finalize()

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            CovarianceAccumulator(2).add([1, 2, 3])

    def test_matches_numpy_cov(self):
        x = np.random.default_rng(1).standard_normal((50, 6))
        acc = CovarianceAccumulator(6)
        for row in x:
            acc.add(row)
        assert np.allclose(acc.finalize(), np.cov(x.T), atol=1e-12)

    def test_merge_equals_single_pass(self):
        x = np.random.default_rng(2).standard_normal((101, 5))
        whole = CovarianceAccumulator(5).add_block(x)
        parts = CovarianceAccumulator(5).add_block(x[:33]).merge(
            CovarianceAccumulator(5).add_block(x[33:]))
        rel = np.abs(whole.finalize() - parts.finalize()).max()
        assert rel <= 1e-10 * max(1.0, np.abs(whole.finalize()).max())

    def test_permutation_invariance(self):
        x = np.random.default_rng(3).standard_normal((40, 4))
        a = CovarianceAccumulator(4).add_block(x)
        b = CovarianceAccumulator(4).add_block(x[::-1])
        assert np.allclose(a.finalize(), b.finalize(), rtol=1e-9)


class TestSymEig:
    def test_diagonal(self):
        es = sym_eig(np.diag([3.0, 1.0]))
        assert np.allclose(es.eigenvalues, [3, 1])
        assert np.allclose(np.abs(es.eigenvectors), np.eye(2))

    def test_hand_2x2(self):
        es = sym_eig([[2.0, 1.0], [1.0, 2.0]])
        assert np.allclose(es.eigenvalues, [3, 1])
        assert np.allclose(np.abs(es.eigenvectors[:, 0]),
                           [1 / np.sqrt(2)] * 2)

    def test_zero_matrix(self):
        es = sym_eig(np.zeros((3, 3)))
        assert np.allclose(es.eigenvalues, 0)
        assert np.allclose(es.eigenvectors.T @ es.eigenvectors, np.eye(3))

    def test_not_symmetric(self):
        with pytest.raises(NotSymmetric):
            sym_eig([[0.0, 1.0], [0.0, 0.0]])

    @pytest.mark.parametrize("n", [3, 20, 64, 65, 200])
    def test_contract_both_solvers(self, n):
        k = random_symmetric(n, n)
        es = sym_eig(k)
        v, lam = es.eigenvectors, es.eigenvalues
        norm = max(1.0, float(np.abs(k).max()))
        assert np.abs(k @ v - v * lam).max() <= 1e-8 * norm
        assert np.abs(v.T @ v - np.eye(n)).max() <= 1e-10
        assert (np.diff(lam) <= 1e-12).all()
        assert abs(np.trace(k) - lam.sum()) <= 1e-8 * max(1, abs(np.trace(k)))

    def test_rank_deficient_large(self):
        rng = np.random.default_rng(7)
        b = rng.standard_normal((10, 120))
        k = b.T @ b / 9
        es = sym_eig(k)
        assert (es.eigenvalues[10:] < 1e-8).all()
        v = es.eigenvectors
        assert np.abs(k @ v - v * es.eigenvalues).max() <= 1e-8 * np.abs(k).max()

    def test_sign_convention(self):
        es = sym_eig(random_symmetric(12, 5))
        for i in range(12):
            col = es.eigenvectors[:, i]
            assert col[np.argmax(np.abs(col))] > 0

    def test_deterministic(self):
        k = random_symmetric(30, 9)
        a, b = sym_eig(k), sym_eig(k.copy())
        assert np.array_equal(a.eigenvalues, b.eigenvalues)
        assert np.array_equal(a.eigenvectors, b.eigenvectors)


class TestVariances:
    def test_normalized(self):
        es = sym_eig(np.diag([3.0, 1.0]))
        lam_bar, s = normalized_variances(es)
        assert np.allclose(lam_bar, [0.75, 0.25])
        assert np.allclose(s, [0.75, 1.0])
        assert abs(s[-1] - 1.0) <= 1e-12

    def test_single_positive(self):
        es = sym_eig(np.diag([5.0, 0.0, 0.0]))
        lam_bar, _ = normalized_variances(es)
        assert np.allclose(lam_bar, [1, 0, 0])

    def test_degenerate(self):
        with pytest.raises(DegenerateSpectrum):
            normalized_variances(sym_eig(np.zeros((2, 2))))


class TestDimension:
    def test_examples(self):
        assert dimension_estimate([0.96, 0.03, 0.01]) == 1
        assert dimension_estimate([0.70, 0.20, 0.06, 0.04]) == 3

    def test_boundary_closed(self):
        assert dimension_estimate([0.95, 0.05]) == 1

    def test_threshold_param(self):
        assert dimension_estimate([0.5, 0.3, 0.2], threshold=0.79) == 2


class TestScaleEquivariance:
    @given(st.floats(0.1, 100), st.integers(0, 1000))
    @settings(max_examples=20, deadline=None)
    def test_scaling_rows(self, c, seed):
        x = np.random.default_rng(seed).standard_normal((30, 5))
        k1 = CovarianceAccumulator(5).add_block(x).finalize()
        k2 = CovarianceAccumulator(5).add_block(c * x).finalize()
        e1, e2 = sym_eig(k1), sym_eig(k2)
        assert np.allclose(e2.eigenvalues, c * c * e1.eigenvalues,
                           rtol=1e-9, atol=1e-12)
        assert np.abs(e2.normalized - e1.normalized).max() <= 1e-10
        assert dimension_estimate(e1.normalized) == \
            dimension_estimate(e2.normalized)


class TestProjection:
    def test_distances_preserved_full_rank(self):
        x = np.random.default_rng(11).standard_normal((25, 6))
        acc = CovarianceAccumulator(6).add_block(x)
        es = sym_eig(acc.finalize())
        y = project(x, acc.mean, es, 6)
        centered = x - acc.mean
        for i in (0, 5, 11):
            for j in (3, 17):
                d1 = np.linalg.norm(centered[i] - centered[j])
                d2 = np.linalg.norm(y[i] - y[j])
                assert abs(d1 - d2) <= 1e-8

    def test_mean_maps_to_origin(self):
        x = np.random.default_rng(12).standard_normal((10, 4))
        acc = CovarianceAccumulator(4).add_block(x)
        es = sym_eig(acc.finalize())
        assert np.allclose(project(acc.mean[None, :], acc.mean, es, 4), 0)

    def test_k_too_large(self):
        x = np.random.default_rng(13).standard_normal((10, 4))
        acc = CovarianceAccumulator(4).add_block(x)
        es = sym_eig(acc.finalize())
        with pytest.raises(DimensionMismatch):
            project(x, acc.mean, es, 5)


class TestEstimatorFacade:
    def test_fit_transform(self):
        x = np.random.default_rng(21).standard_normal((40, 8))
        pca = PrincipalComponentAnalysis(n_components=3)
        y = pca.fit_transform(x)
        assert y.shape == (40, 3)
        assert pca.dimension_ >= 1
        assert abs(pca.cumulative_variance_[-1] - 1.0) <= 1e-12

    def test_params_roundtrip(self):
        pca = PrincipalComponentAnalysis()
        pca.set_params(n_components=2, variance_threshold=0.9)
        assert pca.get_params() == {"n_components": 2,
                                    "variance_threshold": 0.9}
        with pytest.raises(ValueError):
            pca.set_params(bogus=1)
