import math

import pytest

from dpe.errors import InputError
from dpe.rng import RngStream
from dpe.seqcore import Direction
from dpe.synth import (
    SPARSE_N,
    TrialSpec,
    delayed_flip_indicator,
    gen_ar1,
    gen_delayed_bitflip,
    gen_skew_tent,
    gen_sparse,
    generate_trial,
    skew_tent,
)


class TestRngStream:
    def test_identical_streams_replay(self):
        a = RngStream(123, 7)
        b = RngStream(123, 7)
        assert [a.next_u64() for _ in range(20)] == [b.next_u64() for _ in range(20)]

    def test_distinct_streams_differ(self):
        a = RngStream(123, 0)
        b = RngStream(123, 1)
        assert [a.next_u64() for _ in range(4)] != [b.next_u64() for _ in range(4)]

    def test_uniform_in_unit_interval(self):
        rng = RngStream(5)
        draws = [rng.uniform() for _ in range(2000)]
        assert all(0.0 <= u < 1.0 for u in draws)
        assert 0.4 < sum(draws) / len(draws) < 0.6

    def test_normal_moments(self):
        rng = RngStream(5)
        draws = [rng.normal() for _ in range(4000)]
        mean = sum(draws) / len(draws)
        var = sum((d - mean) ** 2 for d in draws) / len(draws)
        assert abs(mean) < 0.1
        assert abs(var - 1.0) < 0.15

    def test_sample_without_replacement(self):
        rng = RngStream(9)
        picks = rng.sample_without_replacement(100, 30)
        assert len(picks) == len(set(picks)) == 30
        assert all(0 <= p < 100 for p in picks)


class TestDelayedBitflip:
    def test_indicator_matches_hand_rule(self):
        x = (1, 1, 0, 1, 0, 0, 0, 0)
        assert delayed_flip_indicator(x, 0) == (0, 0, 0, 1, 0, 0, 0, 0)
        assert delayed_flip_indicator(x, 2) == (0, 0, 0, 0, 0, 1, 0, 0)

    def test_overlapping_triggers(self):
        x = (1, 1, 0, 1, 1, 0, 1, 0)
        # trigger ends at 0-based 3 and 6
        assert delayed_flip_indicator(x, 0) == (0, 0, 0, 1, 0, 0, 1, 0)

    def test_no_trigger_gives_all_zeros(self):
        assert delayed_flip_indicator((0,) * 12, 3) == (0,) * 12

    def test_generated_pair_consistent(self):
        pair = gen_delayed_bitflip(100, 2, RngStream(1, 0))
        assert len(pair.x) == len(pair.y) == 100
        assert pair.ground_truth == Direction.X_CAUSES_Y
        assert pair.y.symbols == delayed_flip_indicator(pair.x.symbols, 2)

    def test_determinism(self):
        a = gen_delayed_bitflip(64, 1, RngStream(77, 3))
        b = gen_delayed_bitflip(64, 1, RngStream(77, 3))
        assert a.x == b.x and a.y == b.y

    def test_parameter_validation(self):
        with pytest.raises(InputError):
            gen_delayed_bitflip(4, 0, RngStream(0))
        with pytest.raises(InputError):
            gen_delayed_bitflip(100, 7, RngStream(0))


class TestAr1:
    def test_lengths_after_drop(self):
        pair = gen_ar1(0.5, 1500, 500, RngStream(2, 0))
        assert len(pair.x) == len(pair.y) == 1000

    def test_ground_truth_labels(self):
        assert gen_ar1(0.5, 100, 10, RngStream(2, 0)).ground_truth == Direction.Y_CAUSES_X
        assert gen_ar1(0.0, 100, 10, RngStream(2, 0)).ground_truth == Direction.INDEPENDENT

    def test_determinism(self):
        a = gen_ar1(0.3, 400, 100, RngStream(11, 5))
        b = gen_ar1(0.3, 400, 100, RngStream(11, 5))
        assert a.x == b.x and a.y == b.y

    def test_uncoupled_pair_nearly_uncorrelated(self):
        # sanity bound, not sharp: binarized independent AR(1) streams
        pair = gen_ar1(0.0, 1100, 100, RngStream(3, 0))
        xs, ys = pair.x.symbols, pair.y.symbols
        n = len(xs)
        mx, my = sum(xs) / n, sum(ys) / n
        cov = sum((a - mx) * (b - my) for a, b in zip(xs, ys)) / n
        sx = math.sqrt(sum((a - mx) ** 2 for a in xs) / n)
        sy = math.sqrt(sum((b - my) ** 2 for b in ys) / n)
        assert abs(cov / (sx * sy)) < 0.1


class TestSkewTent:
    def test_map_values(self):
        assert skew_tent(0.2, 0.35) == pytest.approx(0.571428571, abs=1e-9)
        assert skew_tent(0.5, 0.35) == pytest.approx(0.769230769, abs=1e-9)

    def test_orbit_stays_in_unit_interval(self):
        rng = RngStream(4, 0)
        x = rng.uniform()
        for _ in range(5000):
            x = skew_tent(x, 0.76)
            assert 0.0 <= x <= 1.0

    def test_ground_truth_labels(self):
        assert gen_skew_tent(0.5, 200, 50, RngStream(5, 0)).ground_truth == Direction.X_CAUSES_Y
        assert gen_skew_tent(0.0, 200, 50, RngStream(5, 0)).ground_truth == Direction.INDEPENDENT

    def test_determinism(self):
        a = gen_skew_tent(0.4, 300, 100, RngStream(6, 2))
        b = gen_skew_tent(0.4, 300, 100, RngStream(6, 2))
        assert a.x == b.x and a.y == b.y

    def test_lengths(self):
        pair = gen_skew_tent(0.4, 1500, 500, RngStream(6, 2))
        assert len(pair.x) == len(pair.y) == 1000


class TestSparse:
    def test_x_has_exactly_k_ones(self):
        for k in (5, 25, 50):
            pair = gen_sparse(k, RngStream(7, k))
            assert sum(pair.x.symbols) == k

    def test_y_ones_are_successors_of_x_ones(self):
        pair = gen_sparse(25, RngStream(8, 0))
        t1 = {i for i, s in enumerate(pair.x.symbols) if s == 1}
        t2 = {i for i, s in enumerate(pair.y.symbols) if s == 1}
        expected = {t + 1 for t in t1 if t + 1 < SPARSE_N}
        assert t2 == expected
        assert len(t2) <= 25

    def test_lengths_and_truth(self):
        pair = gen_sparse(10, RngStream(9, 0))
        assert len(pair.x) == len(pair.y) == SPARSE_N
        assert pair.ground_truth == Direction.X_CAUSES_Y

    def test_determinism(self):
        a = gen_sparse(12, RngStream(10, 4))
        b = gen_sparse(12, RngStream(10, 4))
        assert a.x == b.x and a.y == b.y

    def test_k_validation(self):
        with pytest.raises(InputError):
            gen_sparse(0, RngStream(0))
        with pytest.raises(InputError):
            gen_sparse(51, RngStream(0))


class TestTrialSpec:
    def test_config_roundtrip(self):
        spec = TrialSpec("ar1", "phi", (0.2, 0.4), 1500, 500, 200, 42)
        assert TrialSpec.from_config(spec.to_config()) == spec

    def test_config_missing_key(self):
        with pytest.raises(InputError, match="missing"):
            TrialSpec.from_config("family=ar1\n")

    def test_validation(self):
        with pytest.raises(InputError):
            TrialSpec("nope", "phi", (0.1,), 100, 0, 10, 1)
        with pytest.raises(InputError):
            TrialSpec("ar1", "phi", (0.1,), 100, 100, 10, 1)
        with pytest.raises(InputError):
            TrialSpec("ar1", "phi", (0.1,), 100, 0, 0, 1)

    def test_generate_trial_dispatch(self):
        for family, value, length, drop in (
            ("delay_bitflip", 2.0, 100, 0),
            ("ar1", 0.3, 200, 50),
            ("skew_tent", 0.3, 200, 50),
            ("sparse", 5.0, 2000, 0),
        ):
            pair = generate_trial(family, value, length, drop, RngStream(1, 0))
            assert len(pair.x) == len(pair.y)
