import numpy as np
import pytest

from vna import video_noise as vn
from vna.config import NoiseItem
from vna.errors import BadPermutation, BoxOutOfBounds
from vna.seeds import rng_for


def textured(h=48, w=64, seed=0):
    return np.random.default_rng(seed).integers(0, 256, (h, w, 3)).astype(np.uint8)


def seq_of(frames, fps=10.0):
    return vn.FrameSeq(list(frames), fps)


class TestOcclude:
    def test_full_intensity_blacks_whole_frame(self):
        out = vn.occlude_frame(textured(), 1.0)
        assert np.all(out == 0)

    def test_zero_intensity_identity(self):
        f = textured()
        assert vn.occlude_frame(f, 0.0) is f

    def test_quarter_area_zeroes_exactly_quarter(self):
        f = np.full((480, 640, 3), 200, np.uint8)
        out = vn.occlude_frame(f, 0.25)
        zeroed = np.all(out == 0, axis=-1)
        assert zeroed.sum() == 480 * 640 // 4
        # centered 320x240 box
        assert zeroed[120:360, 160:480].all()

    def test_explicit_box_out_of_bounds(self):
        with pytest.raises(BoxOutOfBounds):
            vn.occlude_frame(textured(), 0.5, {"x": 50, "y": 0, "w": 20, "h": 10})

    def test_blank_is_black_screen(self):
        f = textured()
        assert np.all(vn.blank_frame(f, 0.5) == 0)
        assert vn.blank_frame(f, 0.0) is f


class TestGaussianBlur:
    def test_sigma_zero_identity(self):
        f = textured()
        assert vn.gaussian_blur_frame(f, 0.0) is f

    def test_constant_frame_is_fixed_point(self):
        c = np.full((48, 64, 3), 137, np.uint8)
        assert np.array_equal(vn.gaussian_blur_frame(c, 3.3), c)

    def test_delta_matches_2d_kernel_oracle(self):
        sigma = 2.0
        radius = int(np.ceil(3 * sigma))
        frame = np.zeros((64, 64, 3), np.uint8)
        frame[32, 32] = 255
        out = vn.gaussian_blur_frame(frame, sigma)
        # independent oracle: evaluate the 2-D Gaussian on the grid directly
        x = np.arange(-radius, radius + 1)
        g = np.exp(-(x**2) / (2 * sigma**2))
        g /= g.sum()
        kernel2d = np.outer(g, g)
        oracle = np.zeros((64, 64))
        oracle[32 - radius:32 + radius + 1, 32 - radius:32 + radius + 1] = kernel2d * 255
        oracle = np.clip(np.floor(oracle + 0.5), 0, 255)
        for ch in range(3):
            assert np.abs(out[..., ch].astype(int) - oracle.astype(int)).max() <= 1


class TestAverageBlur:
    def test_k1_identity(self):
        f = textured()
        assert vn.average_blur_frame(f, 1) is f

    def test_constant_unchanged(self):
        c = np.full((32, 32, 3), 99, np.uint8)
        assert np.array_equal(vn.average_blur_frame(c, 5), c)

    def test_matches_neighborhood_mean_oracle(self):
        f = textured(16, 16, seed=3)
        out = vn.average_blur_frame(f, 3)
        pad = np.pad(f.astype(float), ((1, 1), (1, 1), (0, 0)), mode="reflect")
        oracle = np.zeros_like(f, float)
        for dy in range(3):
            for dx in range(3):
                oracle += pad[dy:dy + 16, dx:dx + 16]
        oracle = np.clip(np.floor(oracle / 9 + 0.5), 0, 255).astype(np.uint8)
        assert np.array_equal(out, oracle)


class TestAdditiveGaussian:
    def test_zero_intensity_identity(self):
        f = textured()
        assert vn.additive_gaussian_frame(f, 0.0, rng_for(0)) is f

    def test_std_on_midgray(self):
        f = np.full((480, 640, 3), 128, np.uint8)  # ~9.2e5 samples
        out = vn.additive_gaussian_frame(f, 25.5, rng_for(0, "ag"))
        delta = out.astype(float) - 128.0
        assert delta.std() == pytest.approx(25.5, rel=0.05)

    def test_same_seed_is_byte_identical(self):
        f = textured()
        a = vn.additive_gaussian_frame(f, 12.0, rng_for(5, "frame", 3))
        b = vn.additive_gaussian_frame(f, 12.0, rng_for(5, "frame", 3))
        assert np.array_equal(a, b)


class TestImpulse:
    def test_zero_strength_identity(self):
        f = textured()
        assert vn.impulse_frame(f, 0.0, rng_for(0)) is f

    def test_corruption_fraction_at_full_strength(self):
        f = np.full((480, 640, 3), 128, np.uint8)
        out = vn.impulse_frame(f, 0.1, rng_for(0, "imp"))
        changed = np.any(out != f, axis=-1)
        assert changed.mean() == pytest.approx(0.10, abs=0.005)

    def test_changed_pixels_are_pure_black_or_white(self):
        f = np.full((100, 100, 3), 128, np.uint8)
        out = vn.impulse_frame(f, 0.1, rng_for(1, "imp"))
        changed = out[np.any(out != f, axis=-1)]
        assert set(map(tuple, changed)) <= {(0, 0, 0), (255, 255, 255)}


class TestColorAdjust:
    @pytest.mark.parametrize("kind", vn.ADJUST_KINDS)
    def test_midpoint_is_identity(self, kind):
        f = textured()
        assert np.array_equal(vn.color_adjust_frame(f, kind, 0.5), f)

    def test_contrast_formula(self):
        f = np.full((2, 2, 3), 160, np.uint8)
        assert vn.color_adjust_frame(f, "contrast", 1.0)[0, 0, 0] == 192

    def test_saturation_zero_is_grayscale(self):
        f = textured(seed=3)
        gray = vn.color_adjust_frame(f, "saturation", 0.0)
        # independent grayscale conversion
        luma = np.clip(np.floor(f.astype(float) @ [0.299, 0.587, 0.114] + 0.5), 0, 255).astype(np.uint8)
        assert np.array_equal(gray, np.stack([luma] * 3, axis=-1))

    def test_brightness_offsets(self):
        f = np.full((2, 2, 3), 100, np.uint8)
        assert vn.color_adjust_frame(f, "brightness", 1.0)[0, 0, 0] == 228  # 100 + 127.5, half up
        assert vn.color_adjust_frame(f, "brightness", 0.0)[0, 0, 0] == 0    # clamped


class TestInvertAndSwap:
    def test_invert_is_involution(self):
        f = textured()
        assert np.array_equal(vn.invert_frame(vn.invert_frame(f)), f)

    def test_swap_rgb_to_bgr(self):
        f = np.array([[[10, 20, 30]]], np.uint8)
        assert tuple(vn.channel_swap_frame(f, "BGR")[0, 0]) == (30, 20, 10)

    def test_identity_permutation_bit_identical(self):
        f = textured()
        assert vn.channel_swap_frame(f, "RGB") is f

    def test_bad_permutation(self):
        with pytest.raises(BadPermutation):
            vn.channel_swap_frame(textured(), "RRB")


class TestFrameSeqOps:
    def test_temporal_locality_and_dims(self):
        seq = seq_of([textured(seed=i) for i in range(20)], fps=10.0)
        out = vn.gaussian_blur(seq, (0.5, 1.5), 0.4)
        assert out.fps == seq.fps and len(out.frames) == 20
        for i in range(20):
            same = np.array_equal(out.frames[i], seq.frames[i])
            assert same == (not 5 <= i < 15)

    def test_seq_determinism_under_seed(self):
        seq = seq_of([textured(seed=i) for i in range(6)])
        a = vn.impulse(seq, (0.0, 0.6), 1.0, seed=3)
        b = vn.impulse(seq, (0.0, 0.6), 1.0, seed=3)
        for fa, fb in zip(a.frames, b.frames):
            assert np.array_equal(fa, fb)

    def test_segment_clamped_to_sequence(self):
        seq = seq_of([textured(seed=i) for i in range(5)])
        out = vn.invert(seq, (0.0, 99.0))
        assert all(np.array_equal(o, vn.invert_frame(f)) for o, f in zip(out.frames, seq.frames))


class TestApplyItem:
    def test_dispatch_covers_registry_kinds(self):
        f = textured()
        kinds = ["occlude", "blank", "gblur", "avg_blur", "add_gauss", "impulse",
                 "contrast", "brightness", "saturation", "gamma", "invert", "channel_swap"]
        for kind in kinds:
            item = NoiseItem("video", kind, 0.0, 1.0, 0.6)
            out = vn.apply_item(f, 0, item, item_seed=2)
            assert out.shape == f.shape and out.dtype == np.uint8

    def test_parallel_derivation_matches_serial(self):
        # per-frame RNG depends only on (item seed, frame index)
        f = textured()
        item = NoiseItem("video", "add_gauss", 0.0, 1.0, 0.5)
        serial = [vn.apply_item(f, i, item, 7) for i in range(4)]
        shuffled = [vn.apply_item(f, i, item, 7) for i in (2, 0, 3, 1)]
        for i, j in enumerate((2, 0, 3, 1)):
            assert np.array_equal(shuffled[i], serial[j])
