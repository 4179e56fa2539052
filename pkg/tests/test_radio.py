import numpy as np
import pytest

from slicetwin import radio


def test_distance_overhead_and_triangles():
    assert radio.distance((0, 0), (0, 0), 100.0) == 100.0
    assert radio.distance((3, 4), (0, 0), 0.0) == pytest.approx(5.0, rel=1e-15)
    assert radio.distance((30, 40), (0, 0), 120.0) == pytest.approx(130.0, rel=1e-15)


def test_distances_vectorized_matches_scalar(rng):
    ue = rng.uniform(0, 600, size=(20, 2))
    fbs = np.array([300.0, 250.0])
    vec = radio.distances(ue, fbs, 100.0)
    for i in range(20):
        assert vec[i] == pytest.approx(radio.distance(ue[i], fbs, 100.0), rel=1e-15)
    assert np.all(vec >= 100.0)


def test_gain_with_pinned_fading():
    assert radio.gain_sq(10.0, 1.0, 2.0, 1.0 + 0j) == pytest.approx(0.01, rel=1e-12)
    # doubling distance under beta=2 quarters the power gain
    g1 = radio.gain_sq(50.0, 1e-4, 2.0, 1.0 + 0j)
    g2 = radio.gain_sq(100.0, 1e-4, 2.0, 1.0 + 0j)
    assert g1 / g2 == pytest.approx(4.0, rel=1e-12)


def test_pathloss_identity_with_unit_fading(rng):
    # |h|^2 * d^beta recovers kappa exactly when fading is pinned to 1
    for d in rng.uniform(10, 1000, size=50):
        assert radio.gain_sq(d, 3e-4, 2.0, 1.0 + 0j) * d**2.0 == pytest.approx(3e-4, rel=1e-12)


def test_fading_second_moment(rng):
    g = radio.draw_fading(rng, 1_000_000)
    assert np.mean(np.abs(g) ** 2) == pytest.approx(1.0, rel=0.01)
    mean_gain = np.mean(radio.gain_sq(100.0, 1e-4, 2.0, g))
    assert mean_gain == pytest.approx(1e-4 / 100.0**2, rel=0.01)


def test_interference_no_other_nodes(rng):
    cross = np.zeros((1, 1))
    assert radio.interference(0, cross, np.array([1.0]), rng, 0.0) == 0.0


def test_interference_single_pinned_term(rng):
    cross = np.array([[0.0, 0.01], [0.02, 0.0]])
    got = radio.interference(0, cross, np.array([1.0, 1.0]), rng, 0.0)
    assert got == pytest.approx(0.02, rel=1e-12)  # only UE 2's column entry counts


def test_interference_matches_brute_force_sum(rng):
    m = 5
    cross = rng.uniform(0, 1e-6, size=(m, m))
    powers = rng.uniform(0.1, 1.0, size=m)
    for i in range(m):
        expected = sum(powers[j] * cross[j, i] for j in range(m) if j != i)
        got = radio.interference(i, cross, powers, rng, 0.0)
        assert got == pytest.approx(expected, rel=1e-12)


def test_interference_ntn_floor(rng):
    # with a huge sigma, draws go negative often; the floor keeps watts >= 0
    vals = [radio.interference(0, np.zeros((1, 1)), np.ones(1), rng, 1.0) for _ in range(200)]
    assert min(vals) >= 0.0
    assert max(vals) > 0.0


def test_sinr_arithmetic_and_oracle(rng):
    assert radio.sinr(1.0, 3e-9, 1e-9, 0.0) == pytest.approx(3.0, rel=1e-12)
    for _ in range(100):
        p, g, n0, i = rng.uniform(0.1, 2), rng.uniform(1e-10, 1e-6), rng.uniform(1e-12, 1e-9), rng.uniform(0, 1e-8)
        assert radio.sinr(p, g, n0, i) == p * g / (n0 + i)
    # more interference can only hurt
    s = [radio.sinr(1.0, 1e-8, 1e-9, i) for i in (0.0, 1e-9, 1e-6, 1e-3)]
    assert s == sorted(s, reverse=True)


def test_rate_examples():
    assert radio.achievable_rate(1e6, 3.0) == pytest.approx(2e6, rel=1e-12)
    assert radio.achievable_rate(0.0, 1e9) == 0.0
    assert radio.achievable_rate(2e7, 1.0) == pytest.approx(2e7, rel=1e-12)


def test_rate_monotone_in_bandwidth_and_sinr(rng):
    b = np.sort(rng.uniform(0, 2e7, size=50))
    assert np.all(np.diff(radio.achievable_rate(b, 1.5)) >= 0)
    s = np.sort(rng.uniform(0, 100, size=50))
    assert np.all(np.diff(radio.achievable_rate(1e6, s)) >= 0)


def test_latency_term_by_term():
    got = radio.latency(1e6, 2e7, 1e-3, 3e5, cap=10.0)
    assert got == pytest.approx(0.052, rel=1e-12)


def test_latency_empty_queue_exact():
    base = 1e-3 + 123.0 / radio.SPEED_OF_LIGHT
    assert radio.latency(0.0, 5e6, 1e-3, 123.0, cap=1.0) == base


def test_latency_starvation_cap():
    assert radio.latency(500.0, 0.0, 1e-3, 100.0, cap=1.0) == 1.0
    # a trickle rate cannot report worse than total starvation
    assert radio.latency(500.0, 1e-9, 1e-3, 100.0, cap=1.0) == 1.0


def test_latency_nonincreasing_in_rate(rng):
    rates = np.sort(rng.uniform(0, 1e7, size=100))
    lat = radio.latency(1e5, rates, 1e-3, 200.0, cap=1.0)
    assert np.all(np.diff(lat) <= 1e-15)


def test_latency_decomposition_uncapped(rng):
    for _ in range(100):
        data = rng.uniform(1, 1e5)
        rate = rng.uniform(1e6, 1e8)  # fast enough that the cap never binds
        d = rng.uniform(100, 1000)
        full = radio.latency(data, rate, 1e-3, d, cap=10.0)
        empty = radio.latency(0.0, rate, 1e-3, d, cap=10.0)
        assert full - empty == pytest.approx(data / rate, rel=1e-9)
