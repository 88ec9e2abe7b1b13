import math

import pytest

from tripodkin.trajectory import (
    DEG,
    TrajectorySpec,
    heave_mm,
    pitch_deg,
    reference_config,
    roll_deg,
    sample_times,
    unit_step,
)


class TestUnitStep:
    def test_left_closed(self):
        assert unit_step(0.0) == 1.0
        assert unit_step(2.5, 2.5) == 1.0
        assert unit_step(2.4999999, 2.5) == 0.0


class TestHeave:
    def test_initial_value(self):
        # parabola at 50 plus a sine that starts at zero phase
        assert heave_mm(0.0) == pytest.approx(50.0, abs=1e-9)

    def test_continuous_at_parabola_ramp_seam(self):
        assert heave_mm(2.5) == pytest.approx(heave_mm(2.5 - 1e-9), abs=1e-6)

    def test_single_valued_at_seams(self):
        # at the seam only the ramp window is active
        assert heave_mm(2.5) == pytest.approx(60.0 + 15.0 * math.sin(1.25 * math.pi - 3 * math.pi))

    def test_sine_only_after_five_seconds(self):
        for t in (5.0, 7.3, 12.0):
            assert heave_mm(t) == pytest.approx(15.0 * math.sin(0.5 * math.pi * t - 3 * math.pi))

    def test_dips_below_workspace_floor(self):
        assert min(heave_mm(t / 100) for t in range(500, 2000)) < 0.0


class TestAngles:
    def test_roll_ramp_then_cosine(self):
        assert roll_deg(1.0) == pytest.approx(0.4)
        assert roll_deg(4.999999) == pytest.approx(2.0, abs=1e-5)
        assert roll_deg(5.0) == pytest.approx(2.0 * math.cos(2.0 * math.pi))
        assert roll_deg(6.25) == pytest.approx(2.0 * math.cos(0.4 * math.pi * 6.25))

    def test_pitch_ramp_then_sine(self):
        assert pitch_deg(0.0, 0.2) == pytest.approx(1.0)
        assert pitch_deg(2.0, 0.2) == pytest.approx(0.2)
        assert pitch_deg(3.0, 0.2) == 0.0  # between the seams
        assert pitch_deg(6.0, 1.0) == pytest.approx(math.sin(12.0 * math.pi), abs=1e-12)
        assert pitch_deg(5.25, 1.0) == pytest.approx(math.sin(2 * math.pi * 1.0 * 5.25))

    def test_reference_config_converts_to_radians(self):
        config = reference_config(1.0, 0.2)
        assert config.alpha == pytest.approx(roll_deg(1.0) * DEG)
        assert config.beta == pytest.approx(pitch_deg(1.0, 0.2) * DEG)
        assert config.z == pytest.approx(heave_mm(1.0))


class TestSampling:
    def test_sample_count_and_endpoints(self):
        times = sample_times(TrajectorySpec(duration=20.0, rate=100.0))
        assert len(times) == 2001
        assert times[0] == 0.0
        assert times[-1] == pytest.approx(20.0)

    def test_spec_validation(self):
        with pytest.raises(ValueError):
            TrajectorySpec(duration=0.0)
        with pytest.raises(ValueError):
            TrajectorySpec(rate=-1.0)
        with pytest.raises(ValueError):
            TrajectorySpec(f_pitch=0.0)
