"""Geometric model of a three-limb SPR motion platform.

The platform is a triangle the same size as its base triangle.  The front
joint sits on the +x axis at ``d1``; the two rear joints sit at ``(-d2, +-d3)``.
Heave ``Z``, roll ``alpha`` and pitch ``beta`` are the independent degrees of
freedom; the revolute-joint constraints force small dependent translations
``X``, ``Y`` and a yaw ``gamma`` (the parasitic motions), for which this module
carries closed-form fractional expressions.

All lengths are millimetres and all angles radians.  Core formulas are written
over :mod:`tripodkin.scalarmath` so they run unchanged on counting scalars.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import scalarmath as sm
from .errors import DegenerateOrientation, ZeroLengthLimb

#: Limb lengths below this are treated as zero (unit direction undefined).
ZERO_LIMB_TOL = 1e-12

#: Relative threshold (scaled by d2^4 for unit consistency) below which the
#: parasitic-translation denominators are considered degenerate.
DEGENERATE_DENOMINATOR_REL = 1e-9


@dataclass(frozen=True)
class ManipulatorGeometry:
    """Base/platform dimensions: front-joint x offset and rear-joint offsets."""

    d1: float
    d2: float
    d3: float

    def __post_init__(self):
        if not (self.d1 > 0 and self.d2 > 0 and self.d3 > 0):
            raise ValueError("geometry dimensions d1, d2, d3 must be positive")

    @property
    def base_joints(self):
        """Spherical-joint coordinates a_i in the base frame (platform-frame
        revolute joints share the same coordinates)."""
        return (
            (self.d1, 0.0, 0.0),
            (-self.d2, self.d3, 0.0),
            (-self.d2, -self.d3, 0.0),
        )

    @property
    def rear_slope(self):
        """Slope m of the rear joint rays through the platform origin."""
        return -self.d3 / self.d2


@dataclass(frozen=True)
class WorkspaceConfig:
    """Independent DoF triple: heave z (mm), roll alpha and pitch beta (rad)."""

    z: float
    alpha: float
    beta: float

    def __post_init__(self):
        if not all(math.isfinite(v) for v in (self.z, self.alpha, self.beta)):
            raise ValueError("workspace configuration must be finite")


@dataclass(frozen=True)
class ParasiticMotion:
    """Dependent motions: translations x, y (mm) and yaw gamma (rad)."""

    x: float
    y: float
    gamma: float


@dataclass(frozen=True)
class JointLengths:
    """Prismatic actuator lengths (mm)."""

    l1: float
    l2: float
    l3: float

    def as_tuple(self):
        return (self.l1, self.l2, self.l3)


@dataclass(frozen=True)
class FullPose:
    """Complete platform pose: DoFs, parasitic motions, rotation, translation."""

    config: WorkspaceConfig
    parasitic: ParasiticMotion
    rotation: np.ndarray
    translation: np.ndarray

    @property
    def transform(self):
        """4x4 homogeneous transform from platform frame to base frame."""
        t = np.eye(4)
        t[:3, :3] = self.rotation
        t[:3, 3] = self.translation
        return t


# ---------------------------------------------------------------------------
# Generic scalar kernels (run on floats or counting scalars)
# ---------------------------------------------------------------------------


def rotation_rows(alpha, beta, gamma):
    """Rows of Rz(gamma) @ Ry(beta) @ Rx(alpha), element-wise expanded."""
    sa, ca = sm.sin(alpha), sm.cos(alpha)
    sb, cb = sm.sin(beta), sm.cos(beta)
    sg, cg = sm.sin(gamma), sm.cos(gamma)
    return (
        (cg * cb, cg * sb * sa - sg * ca, cg * sb * ca + sg * sa),
        (sg * cb, sg * sb * sa + cg * ca, sg * sb * ca - cg * sa),
        (-sb, cb * sa, cb * ca),
    )


def chain_vector(rows, joint, px, py, pz):
    """Components of P + (R - I) a for one limb (base and platform joints
    share coordinates, so the limb vector is P + R a - a)."""
    ax, ay, az = joint
    vx = px + rows[0][0] * ax + rows[0][1] * ay + rows[0][2] * az - ax
    vy = py + rows[1][0] * ax + rows[1][1] * ay + rows[1][2] * az - ay
    vz = pz + rows[2][0] * ax + rows[2][1] * ay + rows[2][2] * az - az
    return vx, vy, vz


def chain_length(rows, joint, px, py, pz):
    vx, vy, vz = chain_vector(rows, joint, px, py, pz)
    return sm.sqrt(vx * vx + vy * vy + vz * vz)


def yaw_closed_form(d1, d2, d3, alpha, beta):
    """Closed-form yaw forced by the rear revolute constraints:
    atan of the ratio n/d with n = k sa sb, d = k ca + d3^2 cb."""
    sa, ca = sm.sin(alpha), sm.cos(alpha)
    sb, cb = sm.sin(beta), sm.cos(beta)
    k = d1 * d2 + d2 * d2
    return sm.atan(k * sa * sb / (k * ca + d3 * d3 * cb))


def parasitic_xyg(d1, d2, d3, z, alpha, beta):
    """Closed-form parasitic translations and yaw at a workspace config.

    The revolute-joint constraints are linear in the platform translation once
    the yaw is known, and the yaw itself satisfies tan(gamma) = n/d with short
    polynomials n, d in the roll/pitch trig values.  Eliminating exactly gives
    fractional expressions over the shared denominator core n^2 + d^2; the
    numerators are kept term-by-term in factored trigonometric form
    (sines/cosines computed once, no symbolic resimplification) so each
    monomial can be audited against the constraint solver in
    :mod:`tripodkin.bounds`.
    """
    sa, ca = sm.sin(alpha), sm.cos(alpha)
    sb, cb = sm.sin(beta), sm.cos(beta)
    ca2 = ca * ca
    ca3 = ca2 * ca
    ca4 = ca2 * ca2
    sa2 = sa * sa
    cb2 = cb * cb
    cb3 = cb2 * cb
    sb2 = sb * sb
    sa2sb2 = sa2 * sb2
    sa4sb4 = sa2sb2 * sa2sb2
    d1q = d1 * d1
    d2q = d2 * d2
    d3q = d3 * d3
    d2c = d2q * d2
    d2f = d2q * d2q
    d2v = d2f * d2
    d3f = d3q * d3q

    # Denominator core: n^2 + d^2 for n = k sa sb, d = k ca + d3^2 cb,
    # k = d1 d2 + d2^2.
    bracket = (
        d1q * d2q * ca2
        + 2 * d1 * d2c * ca2
        + d2f * ca2
        + 2 * d1 * d2 * d3q * ca * cb
        + 2 * d2q * d3q * ca * cb
        + d3f * cb2
        + d1q * d2q * sa2sb2
        + 2 * d1 * d2c * sa2sb2
        + d2f * sa2sb2
    )
    qx = ca * cb * bracket
    qy = ca * bracket

    guard = DEGENERATE_DENOMINATOR_REL * d2f
    if abs(qx) < guard or abs(qy) < guard:
        raise DegenerateOrientation(
            f"parasitic denominators degenerate at alpha={float(alpha)!r}, "
            f"beta={float(beta)!r}"
        )
    hroot = sm.sqrt(bracket)

    px_quad = (
        d1q * d2c * ca4
        + 2 * d1 * d2f * ca4
        + d2v * ca4
        - d1q * d2c * ca3 * cb
        - 2 * d1 * d2f * ca3 * cb
        - d2v * ca3 * cb
        + 2 * d1 * d2q * d3q * ca3 * cb
        + 2 * d2c * d3q * ca3 * cb
        - 2 * d1 * d2q * d3q * ca2 * cb2
        - 2 * d2c * d3q * ca2 * cb2
        + d2 * d3f * ca2 * cb2
        - d2 * d3f * ca * cb3
        + 2 * d1q * d2c * ca2 * sa2sb2
        + 4 * d1 * d2f * ca2 * sa2sb2
        + 2 * d2v * ca2 * sa2sb2
        - d1q * d2c * ca * cb * sa2sb2
        - 2 * d1 * d2f * ca * cb * sa2sb2
        - d2v * ca * cb * sa2sb2
        + 2 * d1 * d2q * d3q * ca * cb * sa2sb2
        + 2 * d2c * d3q * ca * cb * sa2sb2
        - d1q * d2 * d3q * cb2 * sa2sb2
        - 2 * d1 * d2q * d3q * cb2 * sa2sb2
        - d2c * d3q * cb2 * sa2sb2
        + d1q * d2c * sa4sb4
        + 2 * d1 * d2f * sa4sb4
        + d2v * sa4sb4
    )
    px_lin = z * sb * (
        (d1 * d2 + d2q) * ca2
        + d3q * ca * cb
        + (d1 * d2 + d2q) * cb2 * sa2
        + (d1 * d2 + d2q) * sa2sb2
    )
    x = (px_quad + px_lin * hroot) / qx

    py_quad = d3q * sa * sb * (
        -(d1 * d2q + d2c) * ca2
        + (d1q * d2 + 2 * d1 * d2q + d2c - d2 * d3q) * ca * cb
        + (d1 * d3q + d2 * d3q) * cb2
        - (d1 * d2q + d2c) * sa2sb2
    )
    py_lin = -(z * sa) * ((d1 * d2 + d2q) * ca * cb + d3q * cb2 + d3q * sb2)
    y = (py_quad + py_lin * hroot) / qy

    k = d1 * d2 + d2q
    gamma = sm.atan(k * sa * sb / (k * ca + d3q * cb))
    return x, y, gamma


def exact_ik_lengths(d1, d2, d3, joints, z, alpha, beta):
    """Limb lengths of the exact workspace-to-joint mapping, plus the pose
    intermediates (x, y, gamma, rotation rows)."""
    x, y, gamma = parasitic_xyg(d1, d2, d3, z, alpha, beta)
    rows = rotation_rows(alpha, beta, gamma)
    lengths = tuple(chain_length(rows, a, x, y, z) for a in joints)
    return lengths, x, y, gamma, rows


def simplified_ik_lengths(joints, z, rows):
    """Limb lengths with the in-plane translations truncated to zero."""
    return tuple(chain_length(rows, a, 0.0, 0.0, z) for a in joints)


# ---------------------------------------------------------------------------
# Public float API
# ---------------------------------------------------------------------------


def rotation_matrix(alpha, beta, gamma):
    """Platform rotation Rz(gamma) @ Ry(beta) @ Rx(alpha) as a 3x3 array."""
    return np.array(rotation_rows(alpha, beta, gamma), dtype=float)


def parasitic_motions(geom: ManipulatorGeometry, config: WorkspaceConfig) -> ParasiticMotion:
    """Closed-form parasitic motions at a workspace config.

    Raises DegenerateOrientation when the fractional denominators fall below
    1e-9 * d2^4, which only happens far outside the intended workspace.
    """
    x, y, gamma = parasitic_xyg(
        geom.d1, geom.d2, geom.d3, config.z, config.alpha, config.beta
    )
    return ParasiticMotion(x, y, gamma)


def full_pose(geom: ManipulatorGeometry, config: WorkspaceConfig) -> FullPose:
    """Assemble the complete pose (rotation and translation) at a config."""
    par = parasitic_motions(geom, config)
    r = rotation_matrix(config.alpha, config.beta, par.gamma)
    p = np.array([par.x, par.y, config.z], dtype=float)
    return FullPose(config=config, parasitic=par, rotation=r, translation=p)


def inverse_kinematics_exact(geom: ManipulatorGeometry, config: WorkspaceConfig) -> JointLengths:
    """Exact joint lengths |P + R a_i - a_i| including parasitic motions."""
    lengths, _, _, _, _ = exact_ik_lengths(
        geom.d1, geom.d2, geom.d3, geom.base_joints, config.z, config.alpha, config.beta
    )
    return JointLengths(*lengths)


def inverse_kinematics_simplified(
    geom: ManipulatorGeometry, config: WorkspaceConfig, rotation: np.ndarray
) -> JointLengths:
    """Simplified joint lengths with translation truncated to [0, 0, z].

    The rotation is caller-supplied so FK solvers can pass their own estimated
    rotation rather than the exact one.
    """
    rows = tuple(tuple(float(v) for v in row) for row in rotation)
    return JointLengths(*simplified_ik_lengths(geom.base_joints, config.z, rows))


def joint_positions(geom: ManipulatorGeometry, pose: FullPose, directions: bool = True):
    """Platform joint positions b_i = P + R b_i^M in the base frame.

    With ``directions=True`` also returns the unit limb directions
    (b_i - a_i) / l_i, raising ZeroLengthLimb if any limb is shorter than
    ZERO_LIMB_TOL; with ``directions=False`` the second element is None.
    """
    joints = np.array(geom.base_joints, dtype=float)
    positions = pose.translation + joints @ pose.rotation.T
    if not directions:
        return positions, None
    deltas = positions - joints
    lengths = np.linalg.norm(deltas, axis=1)
    if np.any(lengths < ZERO_LIMB_TOL):
        raise ZeroLengthLimb("unit limb direction undefined for zero-length limb")
    return positions, deltas / lengths[:, None]
