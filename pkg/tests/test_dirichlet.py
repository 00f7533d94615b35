import math
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from cptforge.dirichlet import (
    HyperParams,
    SimplexPoint,
    aggregate_params,
    dirichlet_covariance,
    dirichlet_density,
    dirichlet_mean,
    dirichlet_normalizer,
    dirichlet_pdf,
    dirichlet_pdf_many,
    dirichlet_sample,
    dirichlet_sample_many,
    gamma_nat,
    one_sum_check,
    push_coords,
    simplex_cells,
    simplex_quadrature,
)
from cptforge.finset import FinMap, Multiset
from cptforge.mle import mle
from cptforge.rng import make_rng

hyperparams_st = st.lists(st.integers(1, 8), min_size=1, max_size=5).map(
    lambda a: HyperParams(tuple(a))
)


class TestGammaNat:
    def test_base_cases(self):
        assert gamma_nat(1) == 1
        assert gamma_nat(2) == 1

    def test_recursion(self):
        assert gamma_nat(5) == 24
        for k in range(1, 30):
            assert gamma_nat(k + 1) == k * gamma_nat(k)

    def test_zero_rejected(self):
        with pytest.raises(ValueError):
            gamma_nat(0)

    def test_exact_for_large_arguments(self):
        assert gamma_nat(25) == math.factorial(24)


class TestHyperParams:
    def test_rejects_zero(self):
        with pytest.raises(ValueError):
            HyperParams((1, 0))

    def test_increment(self):
        assert HyperParams((2, 3)).increment(1).alphas == (2, 4)

    def test_total_at_least_n(self):
        a = HyperParams((1, 1, 1))
        assert a.total >= a.n


class TestSimplexPoint:
    def test_rejects_boundary(self):
        with pytest.raises(ValueError):
            SimplexPoint((0.0, 1.0))

    def test_rejects_bad_sum(self):
        with pytest.raises(ValueError):
            SimplexPoint((0.5, 0.6))

    def test_single_outcome_point(self):
        assert SimplexPoint((1.0,)).coords == (1.0,)

    def test_complete(self):
        x = SimplexPoint.complete((0.2, 0.3))
        assert x.coords == (0.2, 0.3, 0.5)


class TestDirichletPdf:
    def test_uniform_on_two_outcomes(self):
        a = HyperParams((1, 1))
        for t in (0.1, 0.5, 0.93):
            assert dirichlet_pdf(a, SimplexPoint((t, 1 - t))) == 1.0

    def test_linear_case(self):
        assert dirichlet_pdf(HyperParams((2, 1)), SimplexPoint((0.3, 0.7))) == pytest.approx(0.6)

    def test_uniform_on_three_outcomes(self):
        assert dirichlet_pdf(HyperParams((1, 1, 1)), SimplexPoint((0.2, 0.3, 0.5))) == 2.0

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            dirichlet_pdf(HyperParams((1, 1)), SimplexPoint((0.2, 0.3, 0.5)))

    def test_normalizer_is_exact(self):
        assert dirichlet_normalizer(HyperParams((2, 3, 4))) == F(
            gamma_nat(9), gamma_nat(2) * gamma_nat(3) * gamma_nat(4)
        )

    def test_vectorised_matches_scalar(self):
        a = HyperParams((3, 1, 2))
        pts = np.array([[0.2, 0.3, 0.5], [0.6, 0.1, 0.3]])
        vals = dirichlet_pdf_many(a, pts)
        for row, v in zip(pts, vals):
            assert dirichlet_pdf(a, SimplexPoint(tuple(row))) == pytest.approx(v, rel=1e-15)


class TestSimplexQuadrature:
    def test_cell_weights_sum_to_simplex_volume(self):
        for n in (2, 3, 4):
            _, w = simplex_cells(n, 23)
            assert w.sum() == pytest.approx(1 / math.factorial(n - 1), abs=1e-14)

    def test_constant_on_two_outcomes(self):
        assert simplex_quadrature(lambda x: 1.0, 2, 100) == pytest.approx(1.0, abs=1e-9)

    def test_coordinate_mean_by_symmetry(self):
        got = simplex_quadrature(lambda x: x[0], 2, 100)
        assert got == pytest.approx(0.5, abs=1e-6)

    def test_linear_density_normalisation(self):
        a = HyperParams((2, 1, 1))
        got = simplex_quadrature(lambda pts: dirichlet_pdf_many(a, pts), 3, 400, vectorized=True)
        assert got == pytest.approx(1.0, abs=1e-3)

    def test_four_outcome_normalisation(self):
        a = HyperParams((2, 1, 1, 2))
        got = simplex_quadrature(lambda pts: dirichlet_pdf_many(a, pts), 4, 40, vectorized=True)
        assert got == pytest.approx(1.0, abs=5e-3)

    def test_dimension_cap(self):
        with pytest.raises(ValueError):
            simplex_quadrature(lambda x: 1.0, 5, 10)

    def test_resolution_floor(self):
        with pytest.raises(ValueError):
            simplex_quadrature(lambda x: 1.0, 2, 1)

    def test_degenerate_dimension(self):
        assert simplex_quadrature(lambda x: 3.0, 1, 10) == 3.0

    def test_scalar_and_vectorised_paths_agree(self):
        a = HyperParams((2, 2))
        scalar = simplex_quadrature(lambda x: dirichlet_pdf(a, x), 2, 50)
        vector = simplex_quadrature(lambda pts: dirichlet_pdf_many(a, pts), 2, 50, vectorized=True)
        assert scalar == pytest.approx(vector, rel=1e-12)


class TestDirichletSampler:
    def test_mean_within_four_standard_errors(self):
        a = HyperParams((2, 1, 1))
        draws = 100_000
        xs = dirichlet_sample_many(a, draws, make_rng(11))
        for i, target in enumerate((0.5, 0.25, 0.25)):
            se = xs[:, i].std(ddof=1) / math.sqrt(draws)
            assert abs(xs[:, i].mean() - target) <= 4 * se

    def test_symmetric_case(self):
        xs = dirichlet_sample_many(HyperParams((1, 1)), 100_000, make_rng(12))
        se = xs[:, 0].std(ddof=1) / math.sqrt(len(xs))
        assert abs(xs[:, 0].mean() - 0.5) <= 4 * se

    def test_fixed_seed_replays_bit_identically(self):
        a = HyperParams((3, 2, 4))
        xs = dirichlet_sample_many(a, 1000, make_rng(99))
        ys = dirichlet_sample_many(a, 1000, make_rng(99))
        assert np.array_equal(xs, ys)
        assert dirichlet_sample(a, make_rng(5)) == dirichlet_sample(a, make_rng(5))

    def test_single_draw_is_valid_point(self):
        x = dirichlet_sample(HyperParams((2, 5)), make_rng(0))
        assert isinstance(x, SimplexPoint)

    def test_covariances_match_analytic_moments(self):
        # Oracle: textbook covariance formulas, exact rationals.
        a = HyperParams((2, 3, 1))
        draws = 100_000
        xs = dirichlet_sample_many(a, draws, make_rng(13))
        cov = dirichlet_covariance(a)
        centered = xs - xs.mean(axis=0)
        for i in range(3):
            for j in range(i, 3):
                prods = centered[:, i] * centered[:, j]
                se = prods.std(ddof=1) / math.sqrt(draws)
                assert abs(prods.mean() - float(cov[i][j])) <= 4 * se


class TestDirichletMean:
    def test_example(self):
        assert dirichlet_mean(HyperParams((2, 1, 1))).probs == (F(1, 2), F(1, 4), F(1, 4))

    def test_symmetric(self):
        assert dirichlet_mean(HyperParams((1, 1))).probs == (F(1, 2), F(1, 2))

    @given(hyperparams_st)
    def test_mean_is_normalised_pseudo_counts(self, alpha):
        assert dirichlet_mean(alpha) == mle(Multiset(alpha.alphas))

    def test_mean_integral_matches(self):
        a = HyperParams((2, 1, 1))
        for i in range(3):
            got = simplex_quadrature(
                lambda pts: pts[:, i] * dirichlet_pdf_many(a, pts), 3, 400, vectorized=True
            )
            assert got == pytest.approx(float(F(a.alphas[i], a.total)), abs=1e-3)


class TestAggregateParams:
    def test_merge_first_two(self):
        h = FinMap((0, 0, 1), 2)
        assert aggregate_params(h, HyperParams((2, 3, 4))).alphas == (5, 4)

    def test_identity(self):
        a = HyperParams((2, 3, 4))
        assert aggregate_params(FinMap.identity(3), a) == a

    def test_constant_map_gives_total(self):
        assert aggregate_params(FinMap.constant(3), HyperParams((2, 3, 4))).alphas == (9,)

    def test_non_surjective_rejected(self):
        with pytest.raises(ValueError):
            aggregate_params(FinMap((0, 0), 2), HyperParams((1, 1)))


class TestPushCoords:
    def test_sums_fibres(self):
        h = FinMap((0, 1, 0), 2)
        xs = np.array([[0.2, 0.3, 0.5]])
        assert np.allclose(push_coords(h, xs), [[0.7, 0.3]])

    def test_rows_still_sum_to_one(self):
        h = FinMap((0, 1, 0, 1), 2)
        xs = dirichlet_sample_many(HyperParams((1, 2, 3, 4)), 50, make_rng(3))
        pushed = push_coords(h, xs)
        assert np.allclose(pushed.sum(axis=1), 1.0)


class TestOneSumCheck:
    def test_uniform_case_is_exact(self):
        # Integrand is the constant 2 on (0, s): midpoint rule is exact.
        a = HyperParams((1, 1, 1))
        for s in (0.25, 0.5, 0.8):
            lhs, rhs = one_sum_check(a, SimplexPoint((s, 1 - s)), 50)
            assert lhs == pytest.approx(2 * s, abs=1e-12)
            assert rhs == pytest.approx(lhs, abs=1e-12)

    def test_two_outcome_degenerate_case(self):
        # Merging both coordinates: the merged density is the point mass,
        # and the integral recovers total mass 1.
        lhs, rhs = one_sum_check(HyperParams((2, 1)), SimplexPoint((1.0,)), 10_000)
        assert lhs == 1.0
        assert rhs == pytest.approx(1.0, abs=1e-6)

    def test_closed_form_against_quadrature(self):
        a = HyperParams((2, 2, 1))
        x = SimplexPoint((0.5, 0.5))
        lhs, rhs = one_sum_check(a, x, 10_000)
        assert lhs == pytest.approx(0.5, abs=1e-12)  # 4 * 0.5**3
        assert abs(lhs - rhs) <= 1e-4

    def test_requires_matching_sizes(self):
        with pytest.raises(ValueError):
            one_sum_check(HyperParams((1, 1, 1)), SimplexPoint((1.0,)), 100)


class TestSimplexDensity:
    def test_dirichlet_density_integrates_to_one(self):
        d = dirichlet_density(HyperParams((2, 3, 1)))
        got = simplex_quadrature(d.eval_many, 3, 200, vectorized=True)
        assert got == pytest.approx(1.0, abs=1e-3)

    def test_eval_matches_pdf(self):
        a = HyperParams((2, 3, 1))
        d = dirichlet_density(a)
        x = SimplexPoint((0.3, 0.45, 0.25))
        assert d.eval(x) == dirichlet_pdf(a, x)
        assert d.pure_dirichlet and d.dirichlet_params == a
