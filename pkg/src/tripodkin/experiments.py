"""Experiment runners behind the service endpoints and the CLI.

Each runner is deterministic for fixed inputs (and seed, where one applies)
and renders its tabular output as CSV text with shortest-roundtrip float
formatting, so repeated runs are byte-identical.
"""

from dataclasses import dataclass, replace
from typing import Optional

import numpy as np

from .bounds import WorkspaceBox, nominal_workspace
from .errors import KinematicsError
from .geometry import (
    ManipulatorGeometry,
    WorkspaceConfig,
    inverse_kinematics_exact,
    parasitic_motions,
)
from .gradient_fk import FkSettings, cost_simplified, solve_fk
from .jacobian_fk import JbSettings, solve_fk_jb
from .trajectory import DEG, TrajectorySpec, reference_config, sample_times

DEFAULT_GEOMETRY = ManipulatorGeometry(d1=1150.0, d2=500.0, d3=390.0)

TRAJECTORY_CSV_COLUMNS = (
    "t", "Z_true", "alpha_true_deg", "beta_true_deg", "method",
    "Z_hat", "alpha_hat_deg", "beta_hat_deg",
    "eZ", "eAlpha_deg", "eBeta_deg", "iters", "cost", "out_of_box",
)


@dataclass(frozen=True)
class RunRecord:
    """One trajectory sample for one method; errors are estimate minus true."""

    t: float
    z_true: float
    alpha_true_deg: float
    beta_true_deg: float
    method: str
    z_hat: float
    alpha_hat_deg: float
    beta_hat_deg: float
    e_z: float
    e_alpha_deg: float
    e_beta_deg: float
    iters: int
    cost: float
    out_of_box: bool

    def csv_row(self) -> str:
        vals = (
            self.t, self.z_true, self.alpha_true_deg, self.beta_true_deg,
            self.method, self.z_hat, self.alpha_hat_deg, self.beta_hat_deg,
            self.e_z, self.e_alpha_deg, self.e_beta_deg, self.iters,
            self.cost, int(self.out_of_box),
        )
        return ",".join(v if isinstance(v, str) else repr(v) for v in vals)


@dataclass
class TrajectoryResult:
    records: list
    summary: dict

    def csv(self) -> str:
        lines = [",".join(TRAJECTORY_CSV_COLUMNS)]
        lines.extend(r.csv_row() for r in self.records)
        return "\n".join(lines) + "\n"


def _in_box(config: WorkspaceConfig, box: WorkspaceBox) -> bool:
    return (
        box.z[0] <= config.z <= box.z[1]
        and box.alpha[0] <= config.alpha <= box.alpha[1]
        and box.beta[0] <= config.beta <= box.beta[1]
    )


def _channel_stats(records, attr):
    vals = np.array([getattr(r, attr) for r in records])
    return {
        "rms": float(np.sqrt(np.mean(vals**2))),
        "max_abs": float(np.max(np.abs(vals))),
    }


def run_trajectory(
    geom: ManipulatorGeometry,
    spec: TrajectorySpec,
    fk_settings: FkSettings = FkSettings(),
    jb_settings: JbSettings = JbSettings(),
    warm_start: bool = True,
    box: Optional[WorkspaceBox] = None,
) -> TrajectoryResult:
    """Track the benchmark trajectory with both FK methods.

    Joint lengths come from the exact IK at each sample.  Both methods chain
    their estimates: the gradient solver warm-starts its heave from the
    previous sample's estimate (mean limb length when cold), the baseline
    linearizes around its previous estimate with reference lengths recomputed
    there.  The baseline is seeded with the true initial configuration.
    """
    box = box or nominal_workspace()
    times = sample_times(spec)
    records = []

    grad_prev_z: Optional[float] = None
    jb_prev: Optional[WorkspaceConfig] = None

    for idx, t in enumerate(times):
        config = reference_config(t, spec.f_pitch)
        theta = inverse_kinematics_exact(geom, config)
        out_of_box = not _in_box(config, box)
        true_deg = (config.alpha / DEG, config.beta / DEG)

        # gradient method; projection clamping because the benchmark
        # trajectory leaves the rated workspace after t = 5 s, where the
        # measured lengths can graze the simplified model's feasibility edge
        z_init = grad_prev_z if (warm_start and grad_prev_z is not None) else None
        try:
            sol = solve_fk(
                geom, theta,
                replace(fk_settings, z_init=z_init, clamp_infeasible=True),
            )
        except KinematicsError as exc:
            raise KinematicsError(
                f"gradient solver failed at sample {idx} (t={t:.3f}s): {exc}"
            ) from exc
        grad_prev_z = sol.z_hat
        records.append(
            RunRecord(
                t=t, z_true=config.z,
                alpha_true_deg=true_deg[0], beta_true_deg=true_deg[1],
                method="gradient",
                z_hat=sol.z_hat, alpha_hat_deg=sol.alpha_hat / DEG,
                beta_hat_deg=sol.beta_hat / DEG,
                e_z=sol.z_hat - config.z,
                e_alpha_deg=sol.alpha_hat / DEG - true_deg[0],
                e_beta_deg=sol.beta_hat / DEG - true_deg[1],
                iters=len(sol.trace), cost=sol.trace[-1].cost,
                out_of_box=out_of_box,
            )
        )

        # baseline method
        if jb_prev is None:
            est = config  # assumed known initial configuration
            jb_iters = 0
        else:
            prev_theta = inverse_kinematics_exact(geom, jb_prev)
            try:
                est = solve_fk_jb(geom, theta, jb_prev, prev_theta, jb_settings)
            except KinematicsError as exc:
                raise KinematicsError(
                    f"baseline solver failed at sample {idx} (t={t:.3f}s): {exc}"
                ) from exc
            jb_iters = jb_settings.iters_per_sample
        jb_prev = est
        jb_theta = inverse_kinematics_exact(geom, est)
        jb_cost = cost_simplified(geom, theta, jb_theta)
        records.append(
            RunRecord(
                t=t, z_true=config.z,
                alpha_true_deg=true_deg[0], beta_true_deg=true_deg[1],
                method="jb",
                z_hat=est.z, alpha_hat_deg=est.alpha / DEG,
                beta_hat_deg=est.beta / DEG,
                e_z=est.z - config.z,
                e_alpha_deg=est.alpha / DEG - true_deg[0],
                e_beta_deg=est.beta / DEG - true_deg[1],
                iters=jb_iters, cost=jb_cost,
                out_of_box=out_of_box,
            )
        )

    z_true = np.array([r.z_true for r in records[::2]])
    heave_range = float(z_true.max() - z_true.min())
    summary = {
        "f_pitch": spec.f_pitch,
        "rate": spec.rate,
        "duration": spec.duration,
        "samples": len(times),
        "heave_range": heave_range,
        "methods": {},
    }
    for method in ("gradient", "jb"):
        recs = [r for r in records if r.method == method]
        early = [r for r in recs if r.t < 5.0]
        summary["methods"][method] = {
            "z": _channel_stats(recs, "e_z"),
            "alpha_deg": _channel_stats(recs, "e_alpha_deg"),
            "beta_deg": _channel_stats(recs, "e_beta_deg"),
            "z_ramp_parabola": _channel_stats(early, "e_z"),
        }
    return TrajectoryResult(records=records, summary=summary)


# ---------------------------------------------------------------------------
# Parasitic ratio map
# ---------------------------------------------------------------------------


@dataclass
class ParasiticMapResult:
    summary: dict
    bin_edges: np.ndarray
    counts: dict

    def csv(self) -> str:
        lines = ["ratio,bin_lo,bin_hi,count"]
        for name, counts in self.counts.items():
            for i, c in enumerate(counts):
                lines.append(
                    f"{name},{self.bin_edges[i]!r},{self.bin_edges[i + 1]!r},{int(c)}"
                )
        return "\n".join(lines) + "\n"


def parasitic_ratio_map(
    geom: ManipulatorGeometry,
    grid_n: int = 41,
    bins: int = 64,
    box: Optional[WorkspaceBox] = None,
) -> ParasiticMapResult:
    """Grid the workspace and histogram the x/z and y/z translation ratios.

    The z = 0 plane is excluded (ratios undefined there).  Grids are endpoint
    inclusive, so refining n to 2n - 1 keeps all coarse points and the maxima
    are non-decreasing under refinement.
    """
    box = box or nominal_workspace()
    zs = np.linspace(box.z[0], box.z[1], grid_n)[1:]
    alphas = np.linspace(box.alpha[0], box.alpha[1], grid_n)
    betas = np.linspace(box.beta[0], box.beta[1], grid_n)
    rx, ry = [], []
    for z in zs:
        for alpha in alphas:
            for beta in betas:
                par = parasitic_motions(geom, WorkspaceConfig(z, alpha, beta))
                rx.append(par.x / z)
                ry.append(par.y / z)
    rx = np.array(rx)
    ry = np.array(ry)
    lo = float(min(rx.min(), ry.min()))
    hi = float(max(rx.max(), ry.max()))
    edges = np.linspace(lo, hi, bins + 1)
    counts_x, _ = np.histogram(rx, bins=edges)
    counts_y, _ = np.histogram(ry, bins=edges)

    def stats(r):
        a = np.abs(r)
        return {
            "max_abs": float(a.max()),
            "p99_abs": float(np.percentile(a, 99.0)),
            "mean_abs": float(a.mean()),
        }

    summary = {
        "grid_n": grid_n,
        "points": int(rx.size),
        "x_over_z": stats(rx),
        "y_over_z": stats(ry),
    }
    return ParasiticMapResult(
        summary=summary,
        bin_edges=edges,
        counts={"x_over_z": counts_x, "y_over_z": counts_y},
    )
