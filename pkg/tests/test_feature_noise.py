import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vna import feature_noise as fn
from vna.errors import ConfigError, ParseError
from vna.seeds import rng_for


def seq(t=20, d=4, seed=0):
    # values bounded away from zero so a zero vector can only mean "dropped"
    values = rng_for(seed, "fs").normal(3.0, 0.5, (t, d))
    return fn.FeatureSeq(values, np.ones(t, bool))


class TestRandomDrop:
    def test_rate_zero_identity(self):
        fs = seq()
        out = fn.random_drop(fs, 0.0, seed=1)
        assert np.array_equal(out.values, fs.values) and out.mask.all()

    def test_rate_one_drops_everything(self):
        out = fn.random_drop(seq(), 1.0, seed=1)
        assert not out.values.any() and not out.mask.any()

    def test_binomial_bound(self):
        fs = seq(t=10000, d=2)
        out = fn.random_drop(fs, 0.4, seed=5)
        dropped = int((~out.mask).sum())
        assert abs(dropped - 4000) <= 150  # ~3 sigma of Binomial(10000, 0.4)

    def test_only_valid_timesteps_redrawn(self):
        fs = seq(t=10)
        fs.mask[:5] = False
        fs.values[:5] = 0.0
        out = fn.random_drop(fs, 0.0, seed=2)
        assert not out.mask[:5].any() and out.mask[5:].all()


class TestStructuralDrop:
    def test_rate_zero_identity(self):
        fs = seq()
        out = fn.structural_drop(fs, 0.0, seed=1)
        assert np.array_equal(out.values, fs.values) and out.mask.all()

    def test_rate_one_erases_all(self):
        out = fn.structural_drop(seq(), 1.0, seed=1)
        assert not out.values.any() and not out.mask.any()

    def test_exact_block_length(self):
        out = fn.structural_drop(seq(t=10), 0.3, seed=4)
        dropped = np.flatnonzero(~out.mask)
        assert len(dropped) == 3
        assert np.array_equal(dropped, np.arange(dropped[0], dropped[0] + 3))

    def test_single_maximal_run(self):
        for s in range(20):
            out = fn.structural_drop(seq(t=37), 0.4, seed=s)
            gaps = np.diff(np.flatnonzero(~out.mask))
            assert (gaps == 1).all()
            assert (~out.mask).sum() == round(0.4 * 37)

    def test_bad_rate(self):
        with pytest.raises(ConfigError):
            fn.structural_drop(seq(), 1.2)


@given(t=st.integers(1, 60), d=st.integers(1, 8), rate=st.floats(0.0, 1.0),
       seed=st.integers(0, 2**32), structural=st.booleans())
@settings(max_examples=120, deadline=None)
def test_three_way_consistency(t, d, rate, seed, structural):
    """dropped timestep <=> zero vector <=> mask false, for both drop kinds."""
    fs = seq(t=t, d=d, seed=seed)
    out = (fn.structural_drop if structural else fn.random_drop)(fs, rate, seed=seed)
    zero_rows = ~out.values.any(axis=1)
    assert np.array_equal(zero_rows, ~out.mask)


class TestFileFormat:
    def test_round_trip(self, tmp_path):
        fs = seq(t=13, d=5)
        fs.mask[3] = False
        fs.values[3] = 0.0
        path = tmp_path / "x.vnaf"
        fn.write_features(path, fs, provenance={"source": "test"})
        back = fn.read_features(path)
        assert np.array_equal(back.values, fs.values)
        assert np.array_equal(back.mask, fs.mask)
        assert back.modality == "feature"

    def test_sidecar_carries_modality(self, tmp_path):
        fs = fn.FeatureSeq(np.ones((4, 2), np.float32), np.ones(4, bool), modality="audio")
        path = tmp_path / "a.vnaf"
        fn.write_features(path, fs)
        assert fn.read_features(path).modality == "audio"

    def test_truncated_file_rejected(self, tmp_path):
        fs = seq(t=8, d=3)
        path = tmp_path / "t.vnaf"
        fn.write_features(path, fs)
        path.write_bytes(path.read_bytes()[:-5])
        with pytest.raises(ParseError):
            fn.read_features(path)

    def test_bad_magic_rejected(self, tmp_path):
        path = tmp_path / "bad.vnaf"
        path.write_bytes(b"NOPE" + b"\x00" * 40)
        with pytest.raises(ParseError):
            fn.read_features(path)
