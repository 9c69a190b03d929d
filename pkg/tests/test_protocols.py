import math

import numpy as np
import pytest

import holeburn as hb

SQRT2 = math.sqrt(2.0)


class TestMakeStirap:
    def test_counterintuitive_order(self):
        schedule = hb.make_stirap(10.0, SQRT2)
        assert len(schedule) == 1
        pair = schedule.segments[0].pair
        assert pair.peak_23 < pair.peak_12
        assert schedule.segments[0].carrier_offset == 0.0
        assert pair.t_center == 0.0

    def test_negative_delay_swaps_order(self):
        pair = hb.make_stirap(10.0, -SQRT2).segments[0].pair
        assert pair.peak_12 < pair.peak_23

    def test_rejects_zero_amplitude(self):
        with pytest.raises(ValueError):
            hb.make_stirap(0.0, SQRT2)


class TestMakeQubitIsolation:
    def test_single_target(self):
        schedule = hb.make_qubit_isolation(100.0, [(5.0, 0.0)])
        assert len(schedule) == 2
        burn, unburn = schedule.segments
        assert burn.pair.tau > 0 and unburn.pair.tau < 0
        assert unburn.pair.omega_max == 5.0

    def test_five_target_train(self):
        specs = [(5.0, n * 500.0) for n in (-2, -1, 0, 1, 2)]
        schedule = hb.make_qubit_isolation(100.0, specs)
        assert len(schedule) == 6
        assert [seg.carrier_offset for seg in schedule.segments] == \
            [0.0, -1000.0, -500.0, 0.0, 500.0, 1000.0]

    def test_empty_unburn_equals_plain_stirap(self):
        assert hb.make_qubit_isolation(10.0, []) == hb.make_stirap(10.0, SQRT2)

    def test_segments_spaced_by_default_gap(self):
        schedule = hb.make_qubit_isolation(100.0, [(5.0, 0.0), (5.0, 1.0)])
        for a, b in zip(schedule.segments, schedule.segments[1:]):
            gap = (b.pair.t_center - abs(b.pair.tau) / 2) - \
                  (a.pair.t_center + abs(a.pair.tau) / 2)
            assert gap == pytest.approx(10.0)

    def test_rejects_amplitude_at_or_above_burn(self):
        with pytest.raises(ValueError, match="unburn segment 1"):
            hb.make_qubit_isolation(10.0, [(5.0, 0.0), (10.0, 0.0)])

    def test_rejects_overlapping_custom_spacing(self):
        with pytest.raises(ValueError, match="floor"):
            hb.make_qubit_isolation(10.0, [(5.0, 0.0)], gap=4.0)

    def test_rejects_wrong_delay_signs(self):
        with pytest.raises(ValueError):
            hb.make_qubit_isolation(10.0, [(5.0, 0.0)], burn_tau=-1.0)
        with pytest.raises(ValueError):
            hb.make_qubit_isolation(10.0, [(5.0, 0.0)], unburn_tau=1.0)


class TestProtocolSpec:
    def test_build_single(self):
        spec = hb.ProtocolSpec(burn_omega_max=20.0)
        assert spec.build() == hb.make_stirap(20.0, SQRT2)

    def test_build_isolation(self):
        spec = hb.ProtocolSpec(burn_omega_max=100.0, unburn=((5.0, 0.0),))
        assert spec.build() == hb.make_qubit_isolation(100.0, [(5.0, 0.0)])

    def test_pure_burn_allows_any_delay(self):
        # plain delay sweeps include zero and reversed delays
        for tau in (0.0, -SQRT2, 3.0):
            hb.ProtocolSpec(burn_omega_max=10.0, burn_tau=tau).build()

    def test_isolation_constraints(self):
        with pytest.raises(ValueError):
            hb.ProtocolSpec(burn_omega_max=10.0, burn_tau=0.0, unburn=((5.0, 0.0),))
        with pytest.raises(ValueError):
            hb.ProtocolSpec(burn_omega_max=10.0, unburn=((15.0, 0.0),))
        with pytest.raises(ValueError):
            hb.ProtocolSpec(burn_omega_max=10.0, unburn=((5.0, 0.0),), unburn_tau=0.5)


class TestMixingAngle:
    def test_early_times_start_at_zero(self):
        schedule = hb.make_stirap(10.0, SQRT2)
        theta, _ = hb.mixing_angle(schedule, -4.0)
        assert 0.0 <= theta < 0.01

    def test_late_times_reach_half_pi(self):
        schedule = hb.make_stirap(10.0, SQRT2)
        theta, _ = hb.mixing_angle(schedule, 4.0)
        assert math.pi / 2 - 0.01 < theta <= math.pi / 2

    def test_midpoint_is_exactly_quarter_pi(self):
        for tau in (0.5, SQRT2, 3.0):
            theta, _ = hb.mixing_angle(hb.make_stirap(7.0, tau), 0.0)
            assert theta == math.pi / 4

    def test_midpoint_rate_closed_form(self):
        _, theta_dot = hb.mixing_angle(hb.make_stirap(10.0, SQRT2), 0.0)
        assert theta_dot == pytest.approx(SQRT2 / 2, abs=1e-15)
        _, theta_dot = hb.mixing_angle(hb.make_stirap(10.0, 2.0), 0.0)
        assert theta_dot == pytest.approx(1.0, abs=1e-15)

    def test_rate_matches_finite_differences(self):
        # closed form against centered differences of the angle itself
        schedule = hb.make_stirap(10.0, SQRT2)
        step = 1e-4
        worst = 0.0
        for t in np.linspace(-4.0, 4.0, 1000):
            theta_minus, _ = hb.mixing_angle(schedule, t - step)
            theta_plus, _ = hb.mixing_angle(schedule, t + step)
            fd = (theta_plus - theta_minus) / (2 * step)
            _, closed = hb.mixing_angle(schedule, t)
            worst = max(worst, abs(fd - closed) / abs(closed))
        assert worst < 1e-6

    def test_monotone_over_segment(self):
        forward = hb.make_stirap(10.0, SQRT2)
        ts = np.linspace(-5.6, 5.6, 400)
        thetas = [hb.mixing_angle(forward, t)[0] for t in ts]
        assert np.all(np.diff(thetas) >= 0)
        reverse = hb.make_stirap(10.0, -SQRT2)
        thetas = [hb.mixing_angle(reverse, t)[0] for t in ts]
        assert np.all(np.diff(thetas) <= 0)

    def test_composite_traverses_up_then_down(self):
        schedule = hb.make_qubit_isolation(100.0, [(5.0, 0.0)])
        burn, unburn = (seg.pair for seg in schedule.segments)
        start, _ = hb.mixing_angle(schedule, burn.t_center - 4.0)
        middle, _ = hb.mixing_angle(schedule, burn.t_center + 4.0)
        end, _ = hb.mixing_angle(schedule, unburn.t_center + 4.0)
        assert start < 0.01
        assert middle > math.pi / 2 - 0.01
        assert end < 0.01

    def test_undefined_between_segments(self):
        # widen the gap so a drive-free stretch exists between the windows
        schedule = hb.make_qubit_isolation(100.0, [(5.0, 0.0)], gap=14.0)
        burn, unburn = (seg.pair for seg in schedule.segments)
        dead = 0.5 * (burn.window[1] + unburn.window[0])
        with pytest.raises(ValueError, match="undefined"):
            hb.mixing_angle(schedule, dead)

    def test_undefined_far_outside(self):
        with pytest.raises(ValueError, match="undefined"):
            hb.mixing_angle(hb.make_stirap(10.0, SQRT2), 100.0)
