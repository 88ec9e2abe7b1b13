"""FastAPI application exposing the kinematics core."""

import math

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from ..bounds import VerificationReport, run_verification
from ..errors import KinematicsError
from ..experiments import parasitic_ratio_map, run_trajectory
from ..geometry import (
    JointLengths,
    ManipulatorGeometry,
    WorkspaceConfig,
    inverse_kinematics_exact,
    parasitic_motions,
)
from ..gradient_fk import FkSettings, solve_fk
from ..jacobian_fk import JbSettings
from ..opcount import format_table, opcount_report
from ..trajectory import TrajectorySpec
from .models import (
    FkRequest,
    FkResponse,
    IkRequest,
    IkResponse,
    OpcountRequest,
    OpcountResponse,
    ParasiticMapRequest,
    ParasiticMapResponse,
    TraceRecordModel,
    TrajectoryRequest,
    TrajectoryResponse,
    VerifyBoundsRequest,
    VerifyBoundsResponse,
)

DEG = math.pi / 180.0


def _geometry(model) -> ManipulatorGeometry:
    return ManipulatorGeometry(d1=model.d1, d2=model.d2, d3=model.d3)


def create_app() -> FastAPI:
    app = FastAPI(title="tripodkin", version="0.1.0")

    @app.exception_handler(KinematicsError)
    async def kinematics_error_handler(request: Request, exc: KinematicsError):
        return JSONResponse(
            status_code=400,
            content={"error": type(exc).__name__, "detail": str(exc)},
        )

    @app.get("/healthz")
    def healthz():
        return {"status": "ok"}

    @app.post("/ik", response_model=IkResponse)
    def ik(req: IkRequest):
        geom = _geometry(req.geometry)
        config = WorkspaceConfig(req.z, req.alpha_deg * DEG, req.beta_deg * DEG)
        par = parasitic_motions(geom, config)
        lengths = inverse_kinematics_exact(geom, config)
        return IkResponse(
            l1=lengths.l1, l2=lengths.l2, l3=lengths.l3,
            x=par.x, y=par.y, gamma_deg=par.gamma / DEG,
        )

    @app.post("/fk", response_model=FkResponse)
    def fk(req: FkRequest):
        geom = _geometry(req.geometry)
        settings = FkSettings(
            eta=req.eta, max_iters=req.iters,
            z_init=req.z_init, include_gamma_hat=req.include_gamma_hat,
        )
        sol = solve_fk(geom, JointLengths(req.l1, req.l2, req.l3), settings)
        trace = None
        if req.trace:
            trace = [
                TraceRecordModel(
                    index=rec.index, z_start=rec.z_start,
                    alpha_deg=rec.alpha / DEG, beta_deg=rec.beta / DEG,
                    gamma_deg=rec.gamma / DEG, roll_degenerate=rec.roll_degenerate,
                    cost=rec.cost, gradient=rec.gradient, z_end=rec.z_end,
                )
                for rec in sol.trace
            ]
        return FkResponse(
            z_hat=sol.z_hat,
            alpha_hat_deg=sol.alpha_hat / DEG,
            beta_hat_deg=sol.beta_hat / DEG,
            gamma_hat_deg=sol.gamma_hat / DEG,
            converged_step_norm=sol.converged_step_norm,
            trace=trace,
        )

    @app.post("/trajectory", response_model=TrajectoryResponse)
    def trajectory(req: TrajectoryRequest):
        geom = _geometry(req.geometry)
        spec = TrajectorySpec(
            duration=req.trajectory.duration,
            rate=req.trajectory.rate,
            f_pitch=req.trajectory.f_pitch,
        )
        fk_settings = FkSettings(
            eta=req.solver.eta,
            max_iters=req.solver.iters,
            include_gamma_hat=req.solver.include_gamma_hat,
        )
        result = run_trajectory(
            geom, spec, fk_settings, JbSettings(), warm_start=req.warm_start
        )
        return TrajectoryResponse(csv=result.csv(), summary=result.summary)

    @app.post("/parasitic-map", response_model=ParasiticMapResponse)
    def parasitic_map(req: ParasiticMapRequest):
        geom = _geometry(req.geometry)
        result = parasitic_ratio_map(geom, grid_n=req.grid_n, bins=req.bins)
        return ParasiticMapResponse(csv=result.csv(), summary=result.summary)

    @app.post("/verify-bounds", response_model=VerifyBoundsResponse)
    def verify_bounds(req: VerifyBoundsRequest):
        geom = _geometry(req.geometry)
        if req.samples == 0:
            report = VerificationReport(seed=req.seed, checks=[])
        elif req.samples is None:
            report = run_verification(geom, seed=req.seed)
        else:
            # The Lipschitz sampling calibrates the orientation check and
            # keeps its default effort; only sweep sizes scale.
            n = req.samples
            report = run_verification(
                geom, seed=req.seed,
                parasitic_samples=n, lemma_samples=n, gradient_samples=n,
                expansion_samples=n, envelope_samples=n,
                orientation_samples=n,
            )
        return VerifyBoundsResponse(passed=report.passed, report=report.to_dict())

    @app.post("/opcount", response_model=OpcountResponse)
    def opcount(req: OpcountRequest):
        geom = _geometry(req.geometry)
        report = opcount_report(geom)
        return OpcountResponse(report=report.to_dict(), table=format_table(report))

    return app
