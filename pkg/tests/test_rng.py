import numpy as np
import pytest

from slicetwin.rng import STREAM_NAMES, RngStreams


def test_same_seed_reproduces_every_stream():
    a, b = RngStreams(42), RngStreams(42)
    for name in STREAM_NAMES:
        assert np.array_equal(getattr(a, name).uniform(size=16), getattr(b, name).uniform(size=16))


def test_streams_are_mutually_distinct():
    streams = RngStreams(42)
    draws = {name: tuple(getattr(streams, name).uniform(size=4)) for name in STREAM_NAMES}
    assert len(set(draws.values())) == len(STREAM_NAMES)


def test_consuming_one_stream_leaves_others_untouched():
    a, b = RngStreams(7), RngStreams(7)
    a.traffic.uniform(size=1000)  # burn the traffic stream only
    assert np.array_equal(a.fading.uniform(size=8), b.fading.uniform(size=8))


def test_tuple_entropy_differs_from_plain_seed():
    # note (5, 0) would NOT differ: SeedSequence zero-pads entropy, which is
    # why episode entropy is offset to (seed, 1 + episode) upstream
    plain = RngStreams(5).traffic.uniform(size=4)
    episode = RngStreams((5, 1)).traffic.uniform(size=4)
    assert not np.array_equal(plain, episode)


def test_unknown_stream_name():
    with pytest.raises(AttributeError, match="no rng stream"):
        RngStreams(1).nonexistent
