import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from aqg_lab.analysis import (
    LEMMAS,
    NormKind,
    NormRequest,
    check_commutator,
    check_interpolation,
    check_lp_interpolation,
    check_pointwise_product,
    check_product_estimate,
    check_riesz_lp,
    check_sobolev_interpolation,
    directional_norm,
    dissipation_pair,
    homogeneous_norm,
    inner_product,
    l2_norm,
    lp_norm,
    pointwise_product_constant,
    random_field,
    seeded_field,
    sobolev_norm,
    verify_lemmas,
)
from aqg_lab.analysis.lemmas import RatioReport, ResolutionRatio
from aqg_lab.analysis.suite import RESOLUTION_GROWTH, SampleFamily
from aqg_lab.core.errors import FieldError, ParameterError
from aqg_lab.dynamics import DissipationParams
from aqg_lab.spectral import Grid, PhysicalField, SpectralField, inverse_transform


def family(grid: Grid, count: int, seed: int, kmax: int = 5):
    rng = np.random.default_rng(seed)
    return [random_field(grid, rng, kmax=kmax) for _ in range(count)]


class TestNorms:
    def test_lp_norm_of_constant(self, grid16):
        f = PhysicalField(grid16, np.full(grid16.shape, -2.0))
        for p in (1.0, 2.0, 3.5):
            assert lp_norm(f, p) == pytest.approx(2.0 * grid16.area ** (1.0 / p))
        assert lp_norm(f, math.inf) == 2.0

    def test_lp_norm_large_exponent_does_not_overflow(self, grid16):
        f = PhysicalField(grid16, np.full(grid16.shape, 1e3))
        assert lp_norm(f, 400.0) == pytest.approx(1e3 * grid16.area ** (1.0 / 400.0))

    def test_lp_norm_of_zero_field(self, grid16):
        assert lp_norm(PhysicalField.zeros(grid16), 4.0) == 0.0

    def test_lp_norm_rejects_exponent_below_one(self, grid16):
        with pytest.raises(ParameterError):
            lp_norm(PhysicalField.zeros(grid16), 0.5)

    def test_sobolev_zero_is_l2(self, make_field, grid16):
        theta = make_field(grid16)
        assert sobolev_norm(theta, 0.0) == pytest.approx(l2_norm(theta), rel=1e-14)
        assert inner_product(theta, theta) == pytest.approx(l2_norm(theta) ** 2, rel=1e-14)

    def test_norms_of_a_sine(self, sine, grid16):
        theta = sine(grid16, 2, 0)
        base = math.sqrt(grid16.area / 2.0)
        assert l2_norm(theta) == pytest.approx(base)
        assert sobolev_norm(theta, 1.0) == pytest.approx(math.sqrt(5.0) * base)
        assert homogeneous_norm(theta, 1.5) == pytest.approx(2.0**1.5 * base)
        assert directional_norm(theta, 1, 0.5) == pytest.approx(2.0**0.5 * base)
        assert directional_norm(theta, 2, 0.5) == 0.0

    def test_homogeneous_norm_with_mean(self, grid16):
        coefficients = np.zeros(grid16.shape, dtype=np.complex128)
        coefficients[0, 0] = 1.0
        F = SpectralField(grid16, coefficients)
        with pytest.raises(FieldError):
            homogeneous_norm(F, 0.0)
        assert homogeneous_norm(F, 0.0, drop_mean=True) == 0.0
        # positive orders annihilate the mean anyway
        assert homogeneous_norm(F, 1.0) == 0.0

    def test_dissipation_pair_matches_directional_norms(self, make_field, grid16):
        theta = make_field(grid16)
        params = DissipationParams(alpha=0.3, beta=0.8)
        d1, d2 = dissipation_pair(theta, params)
        assert d1 == pytest.approx(directional_norm(theta, 1, 0.3) ** 2)
        assert d2 == pytest.approx(directional_norm(theta, 2, 0.8) ** 2)

    def test_norm_request_keys(self):
        assert NormRequest(NormKind.LP, math.inf).key == "lp.inf"
        assert NormRequest(NormKind.SOBOLEV, 2.0).key == "hs.2"
        assert NormRequest(NormKind.HOMOGENEOUS, 0.5).key == "hsdot.0.5"
        assert NormRequest(NormKind.DIRECTIONAL_DISSIPATION, 0.75, axis=2).key == "diss2.0.75"

    def test_norm_request_validation(self):
        with pytest.raises(ParameterError):
            NormRequest(NormKind.LP, 0.5)
        with pytest.raises(ParameterError):
            NormRequest(NormKind.DIRECTIONAL_DISSIPATION, 0.5, axis=0)

    def test_norm_request_evaluates_like_the_norm(self, make_field, grid16):
        theta = make_field(grid16)
        assert NormRequest(NormKind.LP, 4.0).evaluate(theta) == pytest.approx(
            lp_norm(inverse_transform(theta), 4.0)
        )
        assert NormRequest(NormKind.SOBOLEV, 1.0).evaluate(theta) == sobolev_norm(theta, 1.0)


class TestRandomFields:
    def test_mean_free_hermitian_band_limited(self, make_field, grid32):
        theta = make_field(grid32)
        assert theta.coefficients[0, 0] == 0
        assert theta.hermitian_defect() < 1e-15
        assert not np.any(theta.coefficients[~grid32.dealias_mask])

    def test_same_seed_gives_identical_fields(self, grid32):
        a = seeded_field(grid32, 99)
        b = seeded_field(grid32, 99)
        np.testing.assert_array_equal(a.coefficients, b.coefficients)

    def test_same_field_on_every_resolution(self):
        coarse = inverse_transform(seeded_field(Grid(32, 32), 5, kmax=6)).values
        fine = inverse_transform(seeded_field(Grid(64, 64), 5, kmax=6)).values
        np.testing.assert_allclose(fine[::2, ::2], coarse, atol=1e-12)

    def test_expected_energy_matches_amplitude(self, grid32):
        energies = [l2_norm(seeded_field(grid32, seed, amplitude=1.5)) ** 2 for seed in range(400)]
        assert np.mean(energies) == pytest.approx(1.5**2, rel=0.1)

    @pytest.mark.parametrize("kmax", [0, 11])
    def test_patch_must_fit_the_dealiased_box(self, grid32, kmax):
        with pytest.raises(ParameterError):
            seeded_field(grid32, 1, kmax=kmax)

    def test_inner_square_below_kmin_is_empty(self, grid32):
        theta = seeded_field(grid32, 4, kmax=6, kmin=4)
        m = np.rint(np.fft.fftfreq(32, 1.0 / 32)).astype(int)
        band = np.maximum(np.abs(m)[:, None], np.abs(m)[None, :])
        assert not np.any(theta.coefficients[band < 4])
        assert np.any(theta.coefficients[band == 4])
        assert not np.any(theta.coefficients[band > 6])
        with pytest.raises(ParameterError):
            seeded_field(grid32, 4, kmax=6, kmin=7)

    def test_truncated_patch_keeps_the_inner_draws(self):
        grid = Grid(64, 64)
        full = random_field(grid, np.random.default_rng(3), kmax=10)
        cut = random_field(grid, np.random.default_rng(3), kmax=10, truncate=5)
        coarse = random_field(Grid(32, 32), np.random.default_rng(3), kmax=10, truncate=5)
        m = np.rint(np.fft.fftfreq(64, 1.0 / 64)).astype(int)
        inner = np.maximum(np.abs(m)[:, None], np.abs(m)[None, :]) <= 5
        np.testing.assert_array_equal(cut.coefficients[inner], full.coefficients[inner])
        assert not np.any(cut.coefficients[~inner])
        np.testing.assert_allclose(
            inverse_transform(cut).values[::2, ::2], inverse_transform(coarse).values, atol=1e-12
        )


class TestLemmaCheckers:
    def test_interpolation_is_exact_hoelder(self, grid32):
        for axis in (1, 2):
            report = check_interpolation(family(grid32, 20, 1, kmax=10), axis, 0.2, 1.4, 0.5, 2.0)
            assert report.sample_count == 20
            assert report.within_bound
            assert report.secondary.lemma == "interpolation-homogeneous"
            assert report.secondary.max_ratio <= 1.0 + 1e-10

    def test_interpolation_endpoint_is_equality(self, grid32):
        report = check_interpolation(family(grid32, 5, 2), 1, 0.3, 1.1, 1.0, 1.0)
        assert report.max_ratio == pytest.approx(1.0, rel=1e-12)

    def test_interpolation_weight_out_of_range(self, grid32):
        with pytest.raises(ParameterError):
            check_interpolation(family(grid32, 1, 3), 1, 0.2, 1.4, 1.5, 2.0)

    def test_x2_only_field_is_skipped_on_axis_one(self, sine, grid16):
        report = check_interpolation(sine(grid16, 0, 2), 1, 0.2, 1.4, 0.5, 0.0)
        assert report.sample_count == 0
        assert report.skipped == 1

    def test_pointwise_product_tight_example(self, sine, grid16):
        theta = sine(grid16, 1, 0)
        report = check_pointwise_product(theta, theta, 1, 1.0)
        assert report.max_ratio == pytest.approx(0.5, rel=1e-10)

    @pytest.mark.parametrize("r", [0.5, 1.0, 1.7])
    def test_pointwise_product_within_constant(self, grid32, r):
        f = family(grid32, 15, 4, kmax=10)
        g = family(grid32, 15, 5, kmax=10)
        for axis in (1, 2):
            report = check_pointwise_product(f, g, axis, r)
            assert report.bound == pytest.approx(pointwise_product_constant(r) * (1 + 1e-8))
            assert report.within_bound

    def test_pointwise_product_constant(self):
        assert pointwise_product_constant(0.5) == 1.0
        assert pointwise_product_constant(1.0) == 1.0
        assert pointwise_product_constant(1.7) == pytest.approx(2.0**0.7)

    def test_riesz_bound_at_p_two(self, grid32):
        report = check_riesz_lp(family(grid32, 10, 6, kmax=10), 2.0)
        assert report.within_bound

    def test_riesz_rejects_endpoint_exponents(self, grid32):
        with pytest.raises(ParameterError):
            check_riesz_lp(family(grid32, 1, 6), 1.0)
        with pytest.raises(ParameterError):
            check_riesz_lp(family(grid32, 1, 6), math.inf)

    def test_riesz_at_p_four_asserts_nothing(self, grid32):
        report = check_riesz_lp(family(grid32, 5, 6), 4.0)
        assert report.bound is None
        assert report.within_bound is None
        assert report.max_ratio > 0

    def test_product_estimate_does_not_grow_under_refinement(self):
        grids = [Grid(32, 32), Grid(64, 64)]
        samples = SampleFamily(7, 1, resolutions=(32, 64))
        f = [field for grid in grids for field in samples.fields(grid, 6, 0)]
        g = [field for grid in grids for field in samples.fields(grid, 6, 1)]
        report = check_product_estimate(f, g, 0.5, 0.5)
        assert [r.grid for r in report.per_resolution] == ["32x32", "64x64"]
        # the finer grid resolves modes the coarse one drops
        assert report.resolution_spread() > 1e-6
        assert report.resolution_growth() <= RESOLUTION_GROWTH
        assert report.secondary.lemma == "product-one-term"

    def test_product_estimate_domain(self, grid32):
        fields = family(grid32, 1, 9)
        with pytest.raises(ParameterError):
            check_product_estimate(fields, fields, 1.0, 0.5)
        with pytest.raises(ParameterError):
            check_product_estimate(fields, fields, 0.2, -0.3)

    def test_commutator_does_not_grow_under_refinement(self):
        grids = [Grid(32, 32), Grid(64, 64)]
        samples = SampleFamily(10, 4, resolutions=(32, 64), gamma=3.0)
        f = [field for grid in grids for field in samples.fields(grid, 4, 0)]
        g = [field for grid in grids for field in samples.fields(grid, 4, 1)]
        report = check_commutator(f, g, 2.0, 0.6)
        assert report.sample_count == 8
        assert report.resolution_spread() > 1e-6
        assert report.resolution_growth() <= RESOLUTION_GROWTH
        assert report.secondary.resolution_growth() <= RESOLUTION_GROWTH

    def test_commutator_domain(self, grid32):
        fields = family(grid32, 1, 12)
        with pytest.raises(ParameterError):
            check_commutator(fields, fields, 1.0, 0.5)
        with pytest.raises(ParameterError):
            check_commutator(fields, fields, 2.0, 1.0)

    def test_sobolev_and_lp_interpolation(self, grid32):
        fields = family(grid32, 10, 13, kmax=10)
        assert check_sobolev_interpolation(fields, 0.5, 2.0).within_bound
        for p in (4.0, 8.0):
            assert check_lp_interpolation(fields, p).within_bound

    def test_report_serializes_to_one_line(self, grid32):
        line = check_riesz_lp(family(grid32, 2, 14), 2.0).to_ndjson()
        assert "\n" not in line
        assert '"lemma": "riesz"' in line

    @given(
        r=st.floats(min_value=0.05, max_value=2.5),
        axis=st.sampled_from([1, 2]),
        seed=st.integers(min_value=0, max_value=2**32 - 1),
    )
    @settings(max_examples=20, deadline=None)
    def test_pointwise_product_bound_property(self, r, axis, seed):
        grid = Grid(16, 16)
        rng = np.random.default_rng(seed)
        f, g = random_field(grid, rng), random_field(grid, rng)
        assert check_pointwise_product(f, g, axis, r).within_bound


class TestLemmaSuite:
    def test_unknown_lemma(self):
        with pytest.raises(ParameterError):
            verify_lemmas(lemma="9.9")

    def test_suite_ids(self):
        assert set(LEMMAS) == {
            "interpolation",
            "product",
            "riesz",
            "commutator",
            "pointwise-product",
            "sobolev-interpolation",
            "lp-interpolation",
        }

    def test_pointwise_product_suite(self):
        verdicts = verify_lemmas("pointwise-product", samples=5, seed=1, resolutions=(32,))
        assert len(verdicts) == 6
        assert all(v.passed for v in verdicts)

    def test_stability_suite_over_two_resolutions(self):
        verdicts = verify_lemmas("product", samples=3, seed=2, resolutions=(32, 64))
        assert len(verdicts) == 1
        assert verdicts[0].passed
        assert len(verdicts[0].report.per_resolution) == 2
        assert verdicts[0].report.resolution_spread() > 0.0

    def test_refinement_verdict_tracks_growth_not_spread(self):
        rising = RatioReport(
            lemma="product",
            per_resolution=[
                ResolutionRatio(grid="32x32", max_ratio=1.0, sample_count=3),
                ResolutionRatio(grid="64x64", max_ratio=1.5, sample_count=3),
            ],
        )
        assert rising.resolution_growth() == pytest.approx(0.5)
        falling = rising.model_copy(update={"per_resolution": rising.per_resolution[::-1]})
        assert falling.resolution_spread() == pytest.approx(0.5)
        assert falling.resolution_growth() == pytest.approx(-1.0 / 3.0)

    def test_suite_is_reproducible(self):
        a = verify_lemmas("riesz", samples=3, seed=3, resolutions=(32,))
        b = verify_lemmas("riesz", samples=3, seed=3, resolutions=(32,))
        assert [v.report.max_ratio for v in a] == [v.report.max_ratio for v in b]
