"""Gradient-descent forward kinematics for the three-limb platform.

The solver alternates two cheap closed forms with one scalar gradient step:
from the current heave estimate it reconstructs pitch (front limb) and roll
(rear limb difference), assembles the estimated rotation, and then moves the
heave estimate down the gradient of the half squared mismatch between the
measured limb lengths and the simplified inverse kinematics.
"""

import math
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from . import scalarmath as sm
from .errors import InfeasibleJointLength, NonFiniteIterate, ZeroLengthLimb
from .geometry import (
    ZERO_LIMB_TOL,
    JointLengths,
    ManipulatorGeometry,
    WorkspaceConfig,
    chain_vector,
    rotation_rows,
    yaw_closed_form,
)

#: Below this the roll denominator carries no roll information; the estimate
#: falls back to zero roll (the legitimate zero-heave, zero-pitch state).
ROLL_DENOMINATOR_TOL = 1e-9

#: Sanity interval for the heave iterate (mm); leaving it raises
#: NonFiniteIterate.
HEAVE_GUARD = (-1e3, 1e4)


@dataclass(frozen=True)
class FkSettings:
    """Solver settings: step size, iteration count, initialization."""

    eta: float = 0.08
    max_iters: int = 6
    z_init: Optional[float] = None  # None: warm start from mean limb length
    include_gamma_hat: bool = True
    early_stop: bool = False
    early_stop_tol: float = 1e-9
    # Project inverse-trig arguments onto [-1, 1] instead of raising when the
    # measured lengths graze the simplified model's feasibility boundary
    # (needed when tracking trajectories that leave the rated workspace).
    clamp_infeasible: bool = False

    def __post_init__(self):
        if not self.eta > 0:
            raise ValueError("step size eta must be positive")
        if self.max_iters < 1:
            raise ValueError("max_iters must be at least 1")


@dataclass(frozen=True)
class IterationRecord:
    """State of one solver iteration (z_end is the post-update heave)."""

    index: int
    z_start: float
    beta: float
    alpha: float
    gamma: float
    roll_degenerate: bool
    cost: float
    gradient: float
    z_end: float


@dataclass(frozen=True)
class FkSolution:
    """Final estimate plus the per-iteration trace."""

    z_hat: float
    alpha_hat: float
    beta_hat: float
    gamma_hat: float
    trace: tuple
    converged_step_norm: float

    @property
    def config(self):
        return WorkspaceConfig(self.z_hat, self.alpha_hat, self.beta_hat)


class RollEstimate(NamedTuple):
    angle: float
    degenerate: bool


# ---------------------------------------------------------------------------
# Generic scalar kernels
# ---------------------------------------------------------------------------


def pitch_from_heave(d1, l1, z_hat, strict=True):
    """Pitch angle consistent with the front limb length at the given heave,
    neglecting the in-plane parasitic translations."""
    a2 = 2.0 * (d1 * d1)
    az = 2.0 * d1 * z_hat
    h = sm.sqrt(a2 * a2 + az * az)
    lam = sm.asin(sm.clamp_unit(az / h, "pitch estimate", strict))
    om = sm.acos(sm.clamp_unit((a2 + z_hat * z_hat - l1 * l1) / h, "pitch estimate", strict))
    return lam - om


def roll_from_heave(d2, d3, l2, l3, z_hat, beta_hat, strict=True):
    """Roll angle consistent with the rear limb difference, neglecting the
    in-plane parasitic translations.  Returns (angle, degenerate_flag).

    Positive roll tips the platform toward +z on the +y side, which lengthens
    the +y rear limb, so the squared difference enters as l2^2 - l3^2.
    """
    den = z_hat * sm.cos(beta_hat) + d2 * sm.sin(beta_hat)
    if abs(den) < ROLL_DENOMINATOR_TOL:
        # Zero heave and pitch: equal rear limbs force zero roll.
        return 0.0, True
    num = (l2 * l2 - l3 * l3) / (4.0 * d3)
    kappa = sm.acos(sm.clamp_unit(num / abs(den), "roll estimate", strict))
    return math.pi / 2.0 - kappa, False


def fk_iteration(d1, d2, d3, joints, theta, z_hat, eta, include_gamma_hat,
                 strict=True):
    """One solver iteration at heave estimate z_hat.

    Returns (beta, alpha, roll_degenerate, gamma, cost, gradient, z_next).
    """
    l1, l2, l3 = theta
    beta = pitch_from_heave(d1, l1, z_hat, strict)
    alpha, degenerate = roll_from_heave(d2, d3, l2, l3, z_hat, beta, strict)
    if include_gamma_hat:
        gamma = yaw_closed_form(d1, d2, d3, alpha, beta)
    else:
        gamma = 0.0
    rows = rotation_rows(alpha, beta, gamma)
    acc = 0.0
    grad = 0.0
    for a, l in zip(joints, theta):
        vx, vy, vz = chain_vector(rows, a, 0.0, 0.0, z_hat)
        lt = sm.sqrt(vx * vx + vy * vy + vz * vz)
        if lt < ZERO_LIMB_TOL:
            raise ZeroLengthLimb("simplified limb length vanished")
        diff = lt - l
        acc = acc + diff * diff
        grad = grad + diff * (vz / lt)
    cost = 0.5 * acc
    z_next = z_hat - eta * grad
    return beta, alpha, degenerate, gamma, cost, grad, z_next


# ---------------------------------------------------------------------------
# Public float API
# ---------------------------------------------------------------------------


def estimate_pitch(geom: ManipulatorGeometry, l1: float, z_hat: float) -> float:
    """Pitch estimate from the front limb length and a heave estimate."""
    return pitch_from_heave(geom.d1, l1, z_hat)


def estimate_roll(
    geom: ManipulatorGeometry, l2: float, l3: float, z_hat: float, beta_hat: float
) -> RollEstimate:
    """Roll estimate from the rear limb lengths, a heave estimate and the
    pitch estimate.  Degenerate denominators resolve to zero roll."""
    angle, degenerate = roll_from_heave(geom.d2, geom.d3, l2, l3, z_hat, beta_hat)
    return RollEstimate(angle, degenerate)


def cost_simplified(geom: ManipulatorGeometry, theta: JointLengths, theta_tilde: JointLengths) -> float:
    """Half squared limb-length mismatch (the quantity whose heave gradient
    drives the solver); the unscaled quadratic cost is twice this value."""
    acc = 0.0
    for l, lt in zip(theta.as_tuple(), theta_tilde.as_tuple()):
        diff = lt - l
        acc += diff * diff
    return 0.5 * acc


def dlt_dz(geom: ManipulatorGeometry, z_hat: float, rotation: np.ndarray, limb_index: int) -> float:
    """Partial derivative of one simplified limb length with respect to heave.

    Always lies in [-1, 1]: it is the z component of a unit vector.
    """
    if limb_index not in (1, 2, 3):
        raise ValueError("limb_index must be 1, 2 or 3")
    rows = tuple(tuple(float(v) for v in row) for row in rotation)
    joint = geom.base_joints[limb_index - 1]
    vx, vy, vz = chain_vector(rows, joint, 0.0, 0.0, z_hat)
    lt = sm.sqrt(vx * vx + vy * vy + vz * vz)
    if lt < ZERO_LIMB_TOL:
        raise ZeroLengthLimb(f"limb {limb_index} simplified length vanished")
    return vz / lt


def gradient_z(
    geom: ManipulatorGeometry, theta: JointLengths, z_hat: float, rotation: np.ndarray
) -> float:
    """Heave gradient of the half squared mismatch with the rotation frozen:
    sum of (l_tilde_i - l_i) * d(l_tilde_i)/dz.  Its magnitude never exceeds
    the L1 norm of (l_tilde - l)."""
    rows = tuple(tuple(float(v) for v in row) for row in rotation)
    grad = 0.0
    for joint, l in zip(geom.base_joints, theta.as_tuple()):
        vx, vy, vz = chain_vector(rows, joint, 0.0, 0.0, z_hat)
        lt = sm.sqrt(vx * vx + vy * vy + vz * vz)
        if lt < ZERO_LIMB_TOL:
            raise ZeroLengthLimb("simplified limb length vanished")
        grad += (lt - l) * (vz / lt)
    return grad


def solve_fk(
    geom: ManipulatorGeometry, theta: JointLengths, settings: FkSettings = FkSettings()
) -> FkSolution:
    """Run the fixed-iteration gradient FK solver.

    Each iteration estimates pitch and roll from the current heave, assembles
    the estimated rotation (including the closed-form yaw unless disabled),
    and takes one gradient step on the heave.  Exactly max_iters iterations
    run unless early_stop is enabled and the step norm drops below tolerance.
    """
    t = theta.as_tuple()
    if any(l < 0 for l in t):
        raise ValueError("joint lengths must be non-negative")
    if settings.z_init is None:
        z_hat = (t[0] + t[1] + t[2]) / 3.0
    else:
        z_hat = float(settings.z_init)

    joints = geom.base_joints
    trace = []
    step_norm = math.inf
    for k in range(settings.max_iters):
        try:
            beta, alpha, degenerate, gamma, cost, grad, z_next = fk_iteration(
                geom.d1, geom.d2, geom.d3, joints, t, z_hat,
                settings.eta, settings.include_gamma_hat,
                strict=not settings.clamp_infeasible,
            )
        except InfeasibleJointLength as exc:
            exc.iteration = k
            raise
        if not math.isfinite(z_next) or not HEAVE_GUARD[0] <= z_next <= HEAVE_GUARD[1]:
            raise NonFiniteIterate(
                f"heave iterate {z_next!r} left {HEAVE_GUARD} at iteration {k}"
            )
        trace.append(
            IterationRecord(
                index=k, z_start=z_hat, beta=beta, alpha=alpha, gamma=gamma,
                roll_degenerate=degenerate, cost=cost, gradient=grad, z_end=z_next,
            )
        )
        step_norm = abs(z_next - z_hat)
        z_hat = z_next
        if settings.early_stop and step_norm < settings.early_stop_tol:
            break

    last = trace[-1]
    return FkSolution(
        z_hat=last.z_end,
        alpha_hat=last.alpha,
        beta_hat=last.beta,
        gamma_hat=last.gamma,
        trace=tuple(trace),
        converged_step_norm=step_norm,
    )
