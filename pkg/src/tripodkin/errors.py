"""Exception types raised by the kinematics and solver layers."""


class KinematicsError(Exception):
    """Base class for all errors raised by this package."""


class DegenerateOrientation(KinematicsError):
    """Orientation far outside the intended workspace: a constrained-translation
    denominator collapsed below the unit-consistent threshold."""


class ZeroLengthLimb(KinematicsError):
    """A limb length is numerically zero, so its unit direction (or a derivative
    that divides by it) is undefined."""


class InfeasibleJointLength(KinematicsError):
    """An inverse trig argument left [-1, 1] by more than the clamping
    tolerance: the given joint lengths are inconsistent with any platform
    orientation at the current heave estimate."""

    def __init__(self, message, iteration=None):
        super().__init__(message)
        self.iteration = iteration


class NonFiniteIterate(KinematicsError):
    """The heave iterate left the sanity interval or became non-finite."""


class SingularJacobian(KinematicsError):
    """The 3x3 linear solve hit a pivot below the singularity tolerance."""


class NoConvergence(KinematicsError):
    """The constraint solver failed to reach its residual tolerance."""


class DegeneratePose(KinematicsError):
    """A pose-dependent denominator (limb length sum) vanished."""


class StepTooLarge(KinematicsError):
    """The step size violates the contraction precondition eta < 1/c1."""

    def __init__(self, message, c1=None):
        super().__init__(message)
        self.c1 = c1
