import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from xyzcodes import noise


class TestFromBias:
    def test_depolarizing_split(self):
        m = noise.from_bias(0.3, 0.5)
        assert m.px == pytest.approx(0.1)
        assert m.py == pytest.approx(0.1)
        assert m.pz == pytest.approx(0.1)

    def test_infinite_bias(self):
        m = noise.from_bias(0.2, math.inf)
        assert (m.px, m.py, m.pz) == (0.0, 0.0, 0.2)
        assert m.eta == math.inf

    def test_eta_ten(self):
        m = noise.from_bias(0.11, 10)
        assert m.pz == pytest.approx(0.1)
        assert m.px == pytest.approx(0.005)
        assert m.py == pytest.approx(0.005)

    def test_invalid_p(self):
        with pytest.raises(ValueError):
            noise.from_bias(1.5, 1.0)
        with pytest.raises(ValueError):
            noise.from_bias(0.1, -2.0)

    @settings(max_examples=200, deadline=None)
    @given(
        st.floats(1e-6, 1.0, allow_nan=False),
        st.floats(1e-3, 1e6, allow_nan=False),
    )
    def test_bias_roundtrip(self, p, eta):
        m = noise.from_bias(p, eta)
        assert m.eta == pytest.approx(eta, rel=1e-9)
        assert m.p == pytest.approx(p, rel=1e-12)


class TestPure:
    def test_pure_x(self):
        assert noise.pure("X", 0.1) == noise.NoiseModel(0.1, 0.0, 0.0)

    def test_zero_rate_is_identity_channel(self):
        m = noise.pure("Z", 0.0)
        assert m.p == 0.0

    def test_pure_y(self):
        assert noise.pure("Y", 0.14) == noise.NoiseModel(0.0, 0.14, 0.0)

    def test_unknown_pauli(self):
        with pytest.raises(ValueError):
            noise.pure("W", 0.1)


class TestSample:
    def test_zero_rate_always_identity(self):
        rng = np.random.default_rng(0)
        e = noise.sample(noise.NoiseModel(0, 0, 0), 64, rng)
        assert e.weight() == 0

    def test_all_x(self):
        rng = np.random.default_rng(0)
        e = noise.sample(noise.NoiseModel(1.0, 0.0, 0.0), 32, rng)
        assert e.xbits.weight() == 32 and e.zbits.weight() == 0

    def test_empirical_frequencies(self):
        model = noise.from_bias(0.3, 2.0)
        rng = np.random.default_rng(123)
        n = 1_000_000
        e = noise.sample(model, n, rng)
        x = e.xbits.to_dense().astype(bool)
        z = e.zbits.to_dense().astype(bool)
        counts = {
            "X": (x & ~z).sum(),
            "Y": (x & z).sum(),
            "Z": (~x & z).sum(),
        }
        for pauli, prob in [("X", model.px), ("Y", model.py), ("Z", model.pz)]:
            sigma = math.sqrt(prob * (1 - prob) * n)
            assert abs(counts[pauli] - prob * n) < 3 * sigma

    def test_fixed_seed_reproducible(self):
        model = noise.from_bias(0.2, 3.0)
        a = noise.sample(model, 100, np.random.default_rng(7))
        b = noise.sample(model, 100, np.random.default_rng(7))
        assert a.xbits == b.xbits and a.zbits == b.zbits
