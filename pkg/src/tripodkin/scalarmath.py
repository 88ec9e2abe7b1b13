"""Scalar math helpers generic over the numeric type.

Every kinematic formula in this package is written against these functions so
the same code path runs on plain floats and on instrumented counting scalars
(see :mod:`tripodkin.opcount`).  Objects that carry their own ``sin``/``cos``/
``asin``/``acos``/``sqrt`` methods are dispatched to those methods; everything
else goes through :mod:`math`, so float results are bit-identical either way.
"""

import math

from .errors import InfeasibleJointLength

#: Arguments this far outside [-1, 1] are treated as floating-point noise and
#: clamped; anything worse raises InfeasibleJointLength.
UNIT_CLAMP_TOL = 1e-9


def sin(x):
    if type(x) is float:
        return math.sin(x)
    try:
        return x.sin()
    except AttributeError:
        return math.sin(x)


def cos(x):
    if type(x) is float:
        return math.cos(x)
    try:
        return x.cos()
    except AttributeError:
        return math.cos(x)


def asin(x):
    if type(x) is float:
        return math.asin(x)
    try:
        return x.asin()
    except AttributeError:
        return math.asin(x)


def acos(x):
    if type(x) is float:
        return math.acos(x)
    try:
        return x.acos()
    except AttributeError:
        return math.acos(x)


def atan(x):
    if type(x) is float:
        return math.atan(x)
    try:
        return x.atan()
    except AttributeError:
        return math.atan(x)


def sqrt(x):
    if type(x) is float:
        return math.sqrt(x)
    try:
        return x.sqrt()
    except AttributeError:
        return math.sqrt(x)


def clamp_unit(x, context="", strict=True):
    """Clamp x into [-1, 1], tolerating UNIT_CLAMP_TOL of overshoot.

    In strict mode an overshoot beyond the tolerance raises
    InfeasibleJointLength, since that signals inputs inconsistent with the
    kinematic model rather than rounding noise.  Non-strict mode projects any
    overshoot onto the boundary, which estimators use when the inputs are
    expected to graze infeasibility (trajectories running outside the rated
    workspace).
    """
    if x > 1.0:
        if strict and x > 1.0 + UNIT_CLAMP_TOL:
            raise InfeasibleJointLength(
                f"inverse-trig argument {float(x)!r} outside [-1, 1]"
                + (f" in {context}" if context else "")
            )
        return 1.0
    if x < -1.0:
        if strict and x < -(1.0 + UNIT_CLAMP_TOL):
            raise InfeasibleJointLength(
                f"inverse-trig argument {float(x)!r} outside [-1, 1]"
                + (f" in {context}" if context else "")
            )
        return -1.0
    return x
