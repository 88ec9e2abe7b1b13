"""Pydantic request/response models for the kinematics service.

External interfaces speak degrees and millimetres; the core works in radians.
"""

from typing import Optional

from pydantic import BaseModel, Field


class GeometryModel(BaseModel):
    d1: float = Field(default=1150.0, gt=0, description="front joint x offset, mm")
    d2: float = Field(default=500.0, gt=0, description="rear joint x offset magnitude, mm")
    d3: float = Field(default=390.0, gt=0, description="rear joint y offset magnitude, mm")


class SolverModel(BaseModel):
    eta: float = Field(default=0.08, gt=0)
    iters: int = Field(default=6, ge=1)
    include_gamma_hat: bool = True


class TrajectoryModel(BaseModel):
    duration: float = Field(default=20.0, gt=0)
    rate: float = Field(default=100.0, gt=0)
    f_pitch: float = Field(default=0.2, gt=0)


class IkRequest(BaseModel):
    geometry: GeometryModel = GeometryModel()
    z: float
    alpha_deg: float
    beta_deg: float


class IkResponse(BaseModel):
    l1: float
    l2: float
    l3: float
    x: float
    y: float
    gamma_deg: float


class TraceRecordModel(BaseModel):
    index: int
    z_start: float
    alpha_deg: float
    beta_deg: float
    gamma_deg: float
    roll_degenerate: bool
    cost: float
    gradient: float
    z_end: float


class FkRequest(BaseModel):
    geometry: GeometryModel = GeometryModel()
    l1: float = Field(ge=0)
    l2: float = Field(ge=0)
    l3: float = Field(ge=0)
    eta: float = Field(default=0.08, gt=0)
    iters: int = Field(default=6, ge=1)
    include_gamma_hat: bool = True
    z_init: Optional[float] = None
    trace: bool = False


class FkResponse(BaseModel):
    z_hat: float
    alpha_hat_deg: float
    beta_hat_deg: float
    gamma_hat_deg: float
    converged_step_norm: float
    trace: Optional[list[TraceRecordModel]] = None


class TrajectoryRequest(BaseModel):
    geometry: GeometryModel = GeometryModel()
    solver: SolverModel = SolverModel()
    trajectory: TrajectoryModel = TrajectoryModel()
    warm_start: bool = True


class TrajectoryResponse(BaseModel):
    csv: str
    summary: dict


class ParasiticMapRequest(BaseModel):
    geometry: GeometryModel = GeometryModel()
    grid_n: int = Field(default=41, ge=2)
    bins: int = Field(default=64, ge=1)


class ParasiticMapResponse(BaseModel):
    csv: str
    summary: dict


class VerifyBoundsRequest(BaseModel):
    geometry: GeometryModel = GeometryModel()
    seed: int = 0
    # None runs each check at its default sample count; an integer overrides
    # all of them (0 produces an empty report).
    samples: Optional[int] = Field(default=None, ge=0)


class VerifyBoundsResponse(BaseModel):
    passed: bool
    report: dict


class OpcountRequest(BaseModel):
    geometry: GeometryModel = GeometryModel()


class OpcountResponse(BaseModel):
    report: dict
    table: str
