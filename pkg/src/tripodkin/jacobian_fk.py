"""Jacobian-based forward kinematics baseline.

One step linearizes the exact inverse kinematics (parasitic motions included)
around the previous configuration and solves a 3x3 system for the workspace
increment.  The Jacobian comes from central finite differences over the exact
mapping, which is the least error-prone faithful treatment given that no
analytic Jacobian of the parasitic expressions is carried here.
"""

from dataclasses import dataclass

import numpy as np

from .errors import SingularJacobian
from .geometry import (
    JointLengths,
    ManipulatorGeometry,
    WorkspaceConfig,
    exact_ik_lengths,
)


@dataclass(frozen=True)
class JbSettings:
    """Baseline settings: finite-difference steps (mm, rad, rad), iterations
    per sample, and the relative pivot tolerance of the linear solve."""

    fd_step: tuple = (1e-4, 1e-6, 1e-6)
    iters_per_sample: int = 1
    singular_tolerance: float = 1e-12

    def __post_init__(self):
        if not all(h > 0 for h in self.fd_step):
            raise ValueError("finite-difference steps must be positive")
        if self.iters_per_sample < 1:
            raise ValueError("iters_per_sample must be at least 1")


# ---------------------------------------------------------------------------
# Generic scalar kernels
# ---------------------------------------------------------------------------


def solve3(rows, rhs, singular_tolerance=1e-12):
    """Solve a 3x3 linear system by Gaussian elimination with partial
    pivoting.  Raises SingularJacobian when a pivot falls below
    singular_tolerance relative to the largest matrix entry."""
    a = [list(r) for r in rows]
    b = list(rhs)
    scale = abs(a[0][0])
    for i in range(3):
        for j in range(3):
            m = abs(a[i][j])
            if m > scale:
                scale = m
    if not scale > 0:
        raise SingularJacobian("zero matrix")
    tol = singular_tolerance * scale
    for col in range(3):
        pivot_row = col
        pivot_mag = abs(a[col][col])
        for r in range(col + 1, 3):
            m = abs(a[r][col])
            if m > pivot_mag:
                pivot_mag = m
                pivot_row = r
        if not pivot_mag > tol:
            raise SingularJacobian(f"pivot magnitude {float(pivot_mag)!r} below tolerance")
        if pivot_row != col:
            a[col], a[pivot_row] = a[pivot_row], a[col]
            b[col], b[pivot_row] = b[pivot_row], b[col]
        for r in range(col + 1, 3):
            f = a[r][col] / a[col][col]
            for c in range(col + 1, 3):
                a[r][c] = a[r][c] - f * a[col][c]
            b[r] = b[r] - f * b[col]
    x2 = b[2] / a[2][2]
    x1 = (b[1] - a[1][2] * x2) / a[1][1]
    x0 = (b[0] - a[0][1] * x1 - a[0][2] * x2) / a[0][0]
    return x0, x1, x2


def jacobian_rows(d1, d2, d3, joints, z, alpha, beta, steps):
    """Central-difference Jacobian of the exact IK mapping; entry (i, j) is
    d(l_i)/d(var_j) with variables ordered (z, alpha, beta)."""
    cols = []
    values = [z, alpha, beta]
    for j in range(3):
        h = steps[j]
        plus = list(values)
        minus = list(values)
        plus[j] = plus[j] + h
        minus[j] = minus[j] - h
        lp, _, _, _, _ = exact_ik_lengths(d1, d2, d3, joints, plus[0], plus[1], plus[2])
        lm, _, _, _, _ = exact_ik_lengths(d1, d2, d3, joints, minus[0], minus[1], minus[2])
        cols.append(tuple((lp[i] - lm[i]) / (2.0 * h) for i in range(3)))
    return tuple(tuple(cols[j][i] for j in range(3)) for i in range(3))


def jb_step(d1, d2, d3, joints, theta_n, prev, prev_theta, steps, singular_tolerance):
    """One first-order update: solve J(prev) dTheta = theta_n - prev_theta."""
    rows = jacobian_rows(d1, d2, d3, joints, prev[0], prev[1], prev[2], steps)
    rhs = tuple(theta_n[i] - prev_theta[i] for i in range(3))
    dz, dalpha, dbeta = solve3(rows, rhs, singular_tolerance)
    return prev[0] + dz, prev[1] + dalpha, prev[2] + dbeta


# ---------------------------------------------------------------------------
# Public float API
# ---------------------------------------------------------------------------


def jacobian(
    geom: ManipulatorGeometry, config: WorkspaceConfig, settings: JbSettings = JbSettings()
) -> np.ndarray:
    """Finite-difference Jacobian of the exact IK at a configuration; columns
    ordered (z, alpha, beta)."""
    rows = jacobian_rows(
        geom.d1, geom.d2, geom.d3, geom.base_joints,
        config.z, config.alpha, config.beta, settings.fd_step,
    )
    return np.array(rows, dtype=float)


def solve_fk_jb(
    geom: ManipulatorGeometry,
    theta_n: JointLengths,
    prev_config: WorkspaceConfig,
    prev_theta: JointLengths,
    settings: JbSettings = JbSettings(),
) -> WorkspaceConfig:
    """Estimate the configuration matching theta_n from the previous sample.

    Takes iters_per_sample first-order steps; after the first step the
    reference joint lengths are recomputed from the updated configuration.
    """
    current = (prev_config.z, prev_config.alpha, prev_config.beta)
    ref_theta = prev_theta.as_tuple()
    target = theta_n.as_tuple()
    joints = geom.base_joints
    for it in range(settings.iters_per_sample):
        current = jb_step(
            geom.d1, geom.d2, geom.d3, joints, target, current, ref_theta,
            settings.fd_step, settings.singular_tolerance,
        )
        if it + 1 < settings.iters_per_sample:
            lengths, _, _, _, _ = exact_ik_lengths(
                geom.d1, geom.d2, geom.d3, joints, current[0], current[1], current[2]
            )
            ref_theta = lengths
    return WorkspaceConfig(z=current[0], alpha=current[1], beta=current[2])
