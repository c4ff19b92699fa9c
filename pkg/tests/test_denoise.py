import math

import numpy as np
import pytest

from ro3kit import (
    DAUB4,
    HAAR,
    ImageBuf,
    ThresholdSpec,
    add_gaussian_noise,
    denoise_threshold,
    hard_threshold,
    mad_sigma,
    mse,
    psnr,
    soft_threshold,
    universal_threshold,
)
from conftest import synthetic_scene


class TestMadSigma:
    def test_all_zeros(self):
        assert mad_sigma(np.zeros((4, 4))) == 0.0

    def test_unit_median(self):
        assert mad_sigma(np.array([0.6745])) == pytest.approx(1.0)

    def test_three_values(self):
        assert mad_sigma(np.array([1.0, 2.0, 3.0])) == pytest.approx(2.0 / 0.6745)

    def test_even_count_uses_central_mean(self):
        # |values| sorted: 1, 2, 4, 8 -> median 3
        assert mad_sigma(np.array([-4.0, 1.0, 8.0, -2.0])) == pytest.approx(3.0 / 0.6745)

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            mad_sigma(np.array([]))


class TestUniversalThreshold:
    def test_zero_sigma(self):
        assert universal_threshold(0.0, 1024) == 0.0

    def test_single_pixel(self):
        assert universal_threshold(1.0, 1) == 0.0

    def test_direct_value(self):
        assert universal_threshold(2.0, 256) == pytest.approx(2.0 * math.sqrt(2.0 * math.log(256)))

    def test_invalid_n(self):
        with pytest.raises(ValueError):
            universal_threshold(1.0, 0)


class TestHardThreshold:
    def test_below(self):
        assert hard_threshold(np.array([5.0]), 7.0) == pytest.approx([0.0])

    def test_above_kept_verbatim(self):
        assert hard_threshold(np.array([10.0]), 7.0) == pytest.approx([10.0])

    def test_boundary_zeroed(self):
        out = hard_threshold(np.array([-7.0, 7.0]), 7.0)
        np.testing.assert_array_equal(out, [0.0, 0.0])

    def test_output_is_zero_or_input(self):
        rng = np.random.default_rng(0)
        x = rng.normal(0, 5, 200)
        y = hard_threshold(x, 3.0)
        assert np.all((y == 0) | (y == x))

    def test_idempotent(self):
        rng = np.random.default_rng(1)
        x = rng.normal(0, 5, (8, 8))
        once = hard_threshold(x, 2.5)
        np.testing.assert_array_equal(hard_threshold(once, 2.5), once)


class TestSoftThreshold:
    def test_subtraction(self):
        assert soft_threshold(np.array([10.0]), 7.0) == pytest.approx([3.0])

    def test_zeroing(self):
        assert soft_threshold(np.array([6.9]), 7.0) == pytest.approx([0.0])

    def test_sign_symmetric(self):
        assert soft_threshold(np.array([-10.0]), 7.0) == pytest.approx([-3.0])

    def test_matches_shrinkage_oracle(self):
        rng = np.random.default_rng(2)
        x = rng.normal(0, 5, 500)
        lam = 2.0
        oracle = np.sign(x) * np.maximum(np.abs(x) - lam, 0.0)
        np.testing.assert_allclose(soft_threshold(x, lam), oracle)

    def test_positive_only_compat_variant(self):
        x = np.array([-10.0, -7.0, 6.9, 10.0])
        out = soft_threshold(x, 7.0, positive_only=True)
        np.testing.assert_allclose(out, [-10.0, 0.0, 0.0, 3.0])

    def test_never_grows_magnitude(self):
        rng = np.random.default_rng(3)
        x = rng.normal(0, 5, (16, 16))
        y = soft_threshold(x, 1.7)
        assert np.all(np.abs(y) <= np.abs(x) + 1e-15)

    def test_zeros_are_fixed_points(self):
        # a second soft pass re-shrinks nonzero survivors, so only zeros are fixed
        rng = np.random.default_rng(4)
        x = rng.normal(0, 5, (8, 8))
        lam = 2.0
        once = soft_threshold(x, lam)
        twice = soft_threshold(once, lam)
        zeros = once == 0
        np.testing.assert_array_equal(twice[zeros], once[zeros])
        assert np.all(np.abs(twice) <= np.abs(once))

    @pytest.mark.parametrize("fn", [hard_threshold, soft_threshold])
    def test_monotone_in_lambda(self, fn):
        rng = np.random.default_rng(5)
        x = rng.normal(0, 5, 300)
        lams = [0.0, 0.5, 1.0, 2.0, 4.0, 8.0]
        mags = [np.abs(fn(x, lam)) for lam in lams]
        for smaller, larger in zip(mags[1:], mags[:-1]):
            assert np.all(smaller <= larger + 1e-15)

    def test_negative_lambda_rejected(self):
        with pytest.raises(ValueError):
            soft_threshold(np.zeros(3), -1.0)
        with pytest.raises(ValueError):
            hard_threshold(np.zeros(3), -1.0)


class TestThresholdSpec:
    def test_chained_evaluation(self):
        coeffs = np.full((128, 128), 0.6745)
        spec = ThresholdSpec.from_subband(coeffs, "hard")
        assert spec.sigma == pytest.approx(1.0)
        assert spec.n == 16384
        assert spec.lam == pytest.approx(math.sqrt(2.0 * math.log(16384)))
        # every coefficient is below the threshold, so shrinkage zeroes all
        assert np.abs(hard_threshold(coeffs, spec.lam)).max() == 0.0

    def test_bad_mode(self):
        with pytest.raises(ValueError):
            ThresholdSpec.from_subband(np.ones((2, 2)), "fuzzy")


class TestDenoiseThreshold:
    def test_constant_image_unchanged(self):
        img = ImageBuf.from_planes([np.full((16, 16), 77.0)])
        out = denoise_threshold(img, DAUB4, 1, "soft")
        np.testing.assert_allclose(out.planes[0], 77.0, atol=1e-9)

    def test_zero_lambda_is_identity(self):
        rng = np.random.default_rng(6)
        img = ImageBuf.from_planes([rng.uniform(0, 255, (16, 16))])
        out = denoise_threshold(img, DAUB4, 2, "soft", lam=0.0)
        np.testing.assert_allclose(out.planes[0], img.planes[0], atol=1e-9)

    @pytest.mark.parametrize("mode", ["soft", "hard"])
    @pytest.mark.parametrize("basis", [HAAR, DAUB4], ids=lambda b: b.name)
    def test_improves_noisy_image(self, mode, basis):
        clean = ImageBuf.from_planes([synthetic_scene(128)])
        noisy = add_gaussian_noise(clean, 0.0, 0.02, seed=7)
        out = denoise_threshold(noisy, basis, 1, mode)
        assert psnr(clean, out) > psnr(clean, noisy)

    def test_odd_size_padded_and_cropped(self):
        rng = np.random.default_rng(7)
        img = ImageBuf.from_planes([rng.uniform(0, 255, (15, 13))])
        out = denoise_threshold(img, DAUB4, 2, "soft")
        assert out.planes[0].shape == (15, 13)

    def test_color_channels_independent(self):
        rng = np.random.default_rng(8)
        planes = [rng.uniform(0, 255, (16, 16)) for _ in range(3)]
        img = ImageBuf.from_planes(planes)
        out = denoise_threshold(img, DAUB4, 1, "soft")
        single = denoise_threshold(ImageBuf.from_planes([planes[1]]), DAUB4, 1, "soft")
        np.testing.assert_array_equal(out.planes[1], single.planes[0])

    def test_bad_mode(self):
        img = ImageBuf.from_planes([np.zeros((4, 4))])
        with pytest.raises(ValueError):
            denoise_threshold(img, DAUB4, 1, "median")

    def test_mse_reduced_not_just_psnr(self):
        clean = ImageBuf.from_planes([synthetic_scene(128)])
        noisy = add_gaussian_noise(clean, 0.0, 0.02, seed=3)
        out = denoise_threshold(noisy, DAUB4, 1, "soft")
        assert mse(clean, out) < mse(clean, noisy)
