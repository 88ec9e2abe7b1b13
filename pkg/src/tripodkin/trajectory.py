"""Benchmark trajectory: combined parabolic, ramp and sinusoidal segments.

The heave runs a parabola, then a descending ramp, with a 15 mm sine riding
on top throughout; roll ramps up and then follows a slow cosine; pitch ramps
down and then follows a sine at a configurable frequency.  Trajectory angles
are specified in degrees and converted to radians at the boundary.

The unit step is left-closed (u(0) = 1) and each windowed segment excludes
its right edge so the signals stay single-valued at the 2.5 s and 5 s seams.
After 5 s the heave sine dips below the rated workspace floor; kinematics
remain well defined there and runs proceed with an out-of-box flag.
"""

import math
from dataclasses import dataclass

from .geometry import WorkspaceConfig

DEG = math.pi / 180.0


@dataclass(frozen=True)
class TrajectorySpec:
    """Duration (s), sample rate (Hz) and pitch sinusoid frequency (Hz)."""

    duration: float = 20.0
    rate: float = 100.0
    f_pitch: float = 0.2

    def __post_init__(self):
        if self.duration <= 0 or self.rate <= 0 or self.f_pitch <= 0:
            raise ValueError("duration, rate and f_pitch must be positive")


def unit_step(t: float, tau: float = 0.0) -> float:
    """Delayed unit step, left-closed: value 1 at t == tau."""
    return 1.0 if t >= tau else 0.0


def heave_mm(t: float) -> float:
    u = unit_step
    return (
        (50.0 + 1.6 * t * t) * (u(t) - u(t, 2.5))
        + (85.0 - 10.0 * t) * (u(t, 2.5) - u(t, 5.0))
        + 15.0 * math.sin(0.5 * math.pi * t - 3.0 * math.pi)
    )


def roll_deg(t: float) -> float:
    u = unit_step
    return 0.4 * t * (u(t) - u(t, 5.0)) + 2.0 * math.cos(0.4 * math.pi * t) * u(t, 5.0)


def pitch_deg(t: float, f_pitch: float) -> float:
    u = unit_step
    return (-0.4 * t + 1.0) * (1.0 - u(t, 2.5)) + math.sin(
        2.0 * math.pi * f_pitch * t
    ) * u(t, 5.0)


def reference_config(t: float, f_pitch: float) -> WorkspaceConfig:
    """Workspace configuration (mm, rad) at time t."""
    return WorkspaceConfig(
        z=heave_mm(t),
        alpha=roll_deg(t) * DEG,
        beta=pitch_deg(t, f_pitch) * DEG,
    )


def sample_times(spec: TrajectorySpec):
    """Uniform sample instants, inclusive of t = 0 and t = duration."""
    n = round(spec.duration * spec.rate)
    return [i / spec.rate for i in range(n + 1)]
