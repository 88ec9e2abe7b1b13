"""Kinematics library, FK solvers, bound verification and benchmark service
for a three-limb SPR motion platform."""

from .errors import (
    DegenerateOrientation,
    DegeneratePose,
    InfeasibleJointLength,
    KinematicsError,
    NoConvergence,
    NonFiniteIterate,
    SingularJacobian,
    StepTooLarge,
    ZeroLengthLimb,
)
from .geometry import (
    FullPose,
    JointLengths,
    ManipulatorGeometry,
    ParasiticMotion,
    WorkspaceConfig,
    full_pose,
    inverse_kinematics_exact,
    inverse_kinematics_simplified,
    joint_positions,
    parasitic_motions,
    rotation_matrix,
)
from .gradient_fk import (
    FkSettings,
    FkSolution,
    IterationRecord,
    cost_simplified,
    dlt_dz,
    estimate_pitch,
    estimate_roll,
    gradient_z,
    solve_fk,
)
from .jacobian_fk import JbSettings, jacobian, solve_fk_jb
from .bounds import (
    EpsilonTerms,
    LipschitzEstimate,
    TheoremBound,
    WorkspaceBox,
    constraint_residuals,
    epsilon_terms,
    gradient_bound_check,
    lemma1_check,
    lipschitz_estimate,
    nominal_workspace,
    parasitic_constraint_oracle,
    run_verification,
    theorem1_bound,
)
from .opcount import CountingScalar, OpCounter, count_ops, opcount_report
from .trajectory import TrajectorySpec, reference_config, sample_times
from .experiments import parasitic_ratio_map, run_trajectory

__version__ = "0.1.0"
