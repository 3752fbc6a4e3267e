# type: ignore

import numpy as np
import pytest

from olspace.streams import derive_seed, stream_for


class TestDeriveSeed:
    def test_streams_are_named(self):
        assert derive_seed(42, "a") == derive_seed(42, "a")
        assert derive_seed(42, "a") != derive_seed(42, "b")
        assert derive_seed(42, "a") != derive_seed(43, "a")

    @pytest.mark.parametrize("name", ["", "pq_indicators[u^2*, w=1]", "witness[u^3, w=t^-1/2]"])
    def test_fits_in_64_bits(self, name):
        assert 0 <= derive_seed(7, name) < 2**64


class TestStreamFor:
    def test_stream_reproducible(self):
        np.testing.assert_array_equal(stream_for(1, "x").uniform(size=4), stream_for(1, "x").uniform(size=4))

    def test_independent_of_draw_order(self):
        first = stream_for(1, "x")
        stream_for(1, "y").uniform(size=100)
        second = stream_for(1, "x")
        assert first.uniform() == second.uniform()

    def test_named_streams_differ(self):
        assert not np.array_equal(stream_for(1, "x").uniform(size=4), stream_for(1, "y").uniform(size=4))
