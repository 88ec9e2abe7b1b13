"""Instrumented arithmetic for elementary-operation comparisons.

A CountingScalar wraps a float, performs exactly the same IEEE operations as
the plain value would (results are bit-identical), and tallies adds/subs,
muls/divs and transcendental calls on a shared counter.  Because every
kinematic kernel in this package is generic over the scalar type, running a
kernel once on counting scalars yields its exact operation count.

Transcendental calls (sin, cos, asin, acos, sqrt) get their own category
since reference tool weightings vary; the published reference totals for an
analytic-Jacobian baseline and the one-iteration gradient solver are carried
alongside as annotations, not as assertions.
"""

import math
from dataclasses import dataclass, field

from .geometry import (
    ManipulatorGeometry,
    WorkspaceConfig,
    exact_ik_lengths,
    inverse_kinematics_exact,
    parasitic_xyg,
    rotation_rows,
    simplified_ik_lengths,
)
from .gradient_fk import fk_iteration
from .jacobian_fk import jb_step

DEG = math.pi / 180.0

TARGETS = ("gradient_iteration", "jb_step", "exact_ik", "simplified_ik", "parasitic")

#: Published reference totals for one analytic-Jacobian step and one gradient
#: iteration (reported for context; this implementation's counts differ).
REFERENCE_COUNTS = {
    "jb_method": {"add_sub": 1953, "mul_div": 11087, "total": 13040},
    "proposed_one_iteration": {"add_sub": 205, "mul_div": 199, "total": 404},
}


@dataclass
class OpCounter:
    adds: int = 0
    muls: int = 0
    transcendental: int = 0

    @property
    def total(self) -> int:
        return self.adds + self.muls + self.transcendental

    def snapshot(self) -> "OpCounts":
        return OpCounts(self.adds, self.muls, self.transcendental)


@dataclass(frozen=True)
class OpCounts:
    adds: int
    muls: int
    transcendental: int

    @property
    def total(self) -> int:
        return self.adds + self.muls + self.transcendental

    def to_dict(self) -> dict:
        return {
            "add_sub": self.adds,
            "mul_div": self.muls,
            "transcendental": self.transcendental,
            "total": self.total,
        }


class CountingScalar:
    """Float wrapper that counts elementary operations on a shared counter."""

    __slots__ = ("value", "counter")

    def __init__(self, value, counter: OpCounter):
        self.value = float(value)
        self.counter = counter

    @staticmethod
    def _val(other):
        if isinstance(other, CountingScalar):
            return other.value
        if isinstance(other, (int, float)):
            return float(other)
        return None

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        v = self._val(other)
        if v is None:
            return NotImplemented
        self.counter.adds += 1
        return CountingScalar(self.value + v, self.counter)

    def __radd__(self, other):
        v = self._val(other)
        if v is None:
            return NotImplemented
        self.counter.adds += 1
        return CountingScalar(v + self.value, self.counter)

    def __sub__(self, other):
        v = self._val(other)
        if v is None:
            return NotImplemented
        self.counter.adds += 1
        return CountingScalar(self.value - v, self.counter)

    def __rsub__(self, other):
        v = self._val(other)
        if v is None:
            return NotImplemented
        self.counter.adds += 1
        return CountingScalar(v - self.value, self.counter)

    def __mul__(self, other):
        v = self._val(other)
        if v is None:
            return NotImplemented
        self.counter.muls += 1
        return CountingScalar(self.value * v, self.counter)

    def __rmul__(self, other):
        v = self._val(other)
        if v is None:
            return NotImplemented
        self.counter.muls += 1
        return CountingScalar(v * self.value, self.counter)

    def __truediv__(self, other):
        v = self._val(other)
        if v is None:
            return NotImplemented
        self.counter.muls += 1
        return CountingScalar(self.value / v, self.counter)

    def __rtruediv__(self, other):
        v = self._val(other)
        if v is None:
            return NotImplemented
        self.counter.muls += 1
        return CountingScalar(v / self.value, self.counter)

    def __neg__(self):
        self.counter.adds += 1
        return CountingScalar(-self.value, self.counter)

    def __abs__(self):
        # Sign manipulation, not arithmetic: uncounted.
        return CountingScalar(abs(self.value), self.counter)

    # transcendental -------------------------------------------------------
    def sin(self):
        self.counter.transcendental += 1
        return CountingScalar(math.sin(self.value), self.counter)

    def cos(self):
        self.counter.transcendental += 1
        return CountingScalar(math.cos(self.value), self.counter)

    def asin(self):
        self.counter.transcendental += 1
        return CountingScalar(math.asin(self.value), self.counter)

    def acos(self):
        self.counter.transcendental += 1
        return CountingScalar(math.acos(self.value), self.counter)

    def atan(self):
        self.counter.transcendental += 1
        return CountingScalar(math.atan(self.value), self.counter)

    def sqrt(self):
        self.counter.transcendental += 1
        return CountingScalar(math.sqrt(self.value), self.counter)

    # comparisons and conversions ------------------------------------------
    def __float__(self):
        return self.value

    def __lt__(self, other):
        return self.value < self._val(other)

    def __le__(self, other):
        return self.value <= self._val(other)

    def __gt__(self, other):
        return self.value > self._val(other)

    def __ge__(self, other):
        return self.value >= self._val(other)

    def __eq__(self, other):
        v = self._val(other)
        return v is not None and self.value == v

    def __hash__(self):
        return hash(self.value)

    def __repr__(self):
        return f"CountingScalar({self.value!r})"


def unwrap(x):
    """Plain float value of a scalar, counting or not."""
    return x.value if isinstance(x, CountingScalar) else float(x)


DEFAULT_COUNT_CONFIG = WorkspaceConfig(z=50.0, alpha=2.0 * DEG, beta=1.0 * DEG)


def count_ops(target: str, geom: ManipulatorGeometry, config: WorkspaceConfig = None) -> OpCounts:
    """Run one target computation on counting scalars and return its counts.

    Targets: gradient_iteration (one full solver iteration), jb_step (one
    baseline step including its finite-difference Jacobian: 6 exact-IK calls,
    two per workspace variable, plus the pivoted 3x3 solve), exact_ik,
    simplified_ik (rotation assembly plus limb norms), parasitic.
    """
    if target not in TARGETS:
        raise ValueError(f"unknown target {target!r}; expected one of {TARGETS}")
    config = config or DEFAULT_COUNT_CONFIG
    counter = OpCounter()

    def wrap(v):
        return CountingScalar(v, counter)

    d1, d2, d3 = wrap(geom.d1), wrap(geom.d2), wrap(geom.d3)
    joints = (
        (d1, 0.0, 0.0),
        (-d2, d3, 0.0),
        (-d2, -d3, 0.0),
    )
    counter.adds = 0  # joint construction (negations) is setup, not work

    theta_true = inverse_kinematics_exact(geom, config)

    if target == "parasitic":
        parasitic_xyg(d1, d2, d3, wrap(config.z), wrap(config.alpha), wrap(config.beta))
    elif target == "exact_ik":
        exact_ik_lengths(
            d1, d2, d3, joints, wrap(config.z), wrap(config.alpha), wrap(config.beta)
        )
    elif target == "simplified_ik":
        par = parasitic_xyg(geom.d1, geom.d2, geom.d3, config.z, config.alpha, config.beta)
        rows = rotation_rows(wrap(config.alpha), wrap(config.beta), wrap(par[2]))
        simplified_ik_lengths(joints, wrap(config.z), rows)
    elif target == "gradient_iteration":
        t = tuple(wrap(v) for v in theta_true.as_tuple())
        z0 = (theta_true.l1 + theta_true.l2 + theta_true.l3) / 3.0
        fk_iteration(d1, d2, d3, joints, t, wrap(z0), 0.08, True)
    elif target == "jb_step":
        prev = WorkspaceConfig(config.z - 0.5, config.alpha - 0.005 * DEG, config.beta + 0.005 * DEG)
        prev_theta = inverse_kinematics_exact(geom, prev)
        jb_step(
            d1, d2, d3, joints,
            tuple(wrap(v) for v in theta_true.as_tuple()),
            (wrap(prev.z), wrap(prev.alpha), wrap(prev.beta)),
            tuple(wrap(v) for v in prev_theta.as_tuple()),
            (1e-4, 1e-6, 1e-6),
            1e-12,
        )
    return counter.snapshot()


@dataclass(frozen=True)
class OpReport:
    counts: dict  # target -> OpCounts
    reference: dict = field(default_factory=lambda: dict(REFERENCE_COUNTS))

    @property
    def ratio(self) -> float:
        return self.counts["jb_step"].total / self.counts["gradient_iteration"].total

    def to_dict(self) -> dict:
        return {
            "counts": {name: c.to_dict() for name, c in self.counts.items()},
            "jb_over_gradient_ratio": self.ratio,
            "reference": self.reference,
        }


def opcount_report(geom: ManipulatorGeometry, config: WorkspaceConfig = None) -> OpReport:
    """Count every target on the same representative configuration."""
    return OpReport(counts={t: count_ops(t, geom, config) for t in TARGETS})


def format_table(report: OpReport) -> str:
    """Plain-text comparison table with the published reference annotations."""
    lines = []
    header = f"{'target':<24}{'+/-':>8}{'*//':>8}{'trig/sqrt':>11}{'total':>8}"
    lines.append(header)
    lines.append("-" * len(header))
    for name in TARGETS:
        c = report.counts[name]
        lines.append(
            f"{name:<24}{c.adds:>8}{c.muls:>8}{c.transcendental:>11}{c.total:>8}"
        )
    lines.append("-" * len(header))
    lines.append(f"measured jb_step / gradient_iteration ratio: {report.ratio:.1f}x")
    for name, ref in report.reference.items():
        lines.append(
            f"reference {name}: +/- {ref['add_sub']}, */ {ref['mul_div']}, "
            f"total {ref['total']}"
        )
    return "\n".join(lines)
