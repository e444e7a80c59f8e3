"""Minimizers, critical exponents, and gradient flows for the pair kernels
exp(-d**q) on the unit interval."""

__version__ = "0.1.0"

from .asymptotics import (
    lobatto_points,
    log_energy,
    log_energy_maximizer,
    small_q_expansion,
)
from .branches import (
    CriticalExponent,
    EvenBranchEnergies,
    OddBranchEnergies,
    critical_exponent,
    even_branch_energy,
    even_critical,
    odd_branch_energies,
    odd_critical_exact,
    phi,
)
from .errors import (
    BracketFailureError,
    LogEnergyCollisionError,
    NoActiveGapsError,
    NonConvergenceError,
    NonConvergenceWarning,
    PairPhaseError,
    UnsupportedRegimeError,
)
from .flow import FlowConfig, Trajectory, initial_condition, run_flow
from .kernel import (
    Configuration,
    GapVector,
    KernelParam,
    energy,
    gap_energy,
    gradient,
    reflect,
    to_configuration,
    to_gaps,
)
from .kkt import (
    ClusterSummary,
    KktReport,
    cluster_summary,
    clustering_law,
    gap_derivative,
    kkt_report,
)
from .solver import (
    MinimizeResult,
    SolverConfig,
    default_starts,
    minimize,
    project_to_simplex,
)
from .svg import flow_svg, phase_diagram_svg
from .verify import (
    SUITES,
    CriterionResult,
    VerifyReport,
    report_as_dict,
    run_suite,
)
from .cli import PhaseCell, RunManifest, classify_phase, main

__all__ = [
    "__version__",
    # kernel
    "KernelParam",
    "Configuration",
    "GapVector",
    "energy",
    "gap_energy",
    "gradient",
    "to_gaps",
    "to_configuration",
    "reflect",
    # solver
    "SolverConfig",
    "MinimizeResult",
    "minimize",
    "project_to_simplex",
    "default_starts",
    # kkt
    "KktReport",
    "ClusterSummary",
    "gap_derivative",
    "kkt_report",
    "cluster_summary",
    "clustering_law",
    # branches
    "OddBranchEnergies",
    "EvenBranchEnergies",
    "CriticalExponent",
    "odd_branch_energies",
    "odd_critical_exact",
    "even_branch_energy",
    "phi",
    "even_critical",
    "critical_exponent",
    # asymptotics
    "log_energy",
    "lobatto_points",
    "small_q_expansion",
    "log_energy_maximizer",
    # flow
    "FlowConfig",
    "Trajectory",
    "initial_condition",
    "run_flow",
    # verification suites
    "SUITES",
    "CriterionResult",
    "VerifyReport",
    "run_suite",
    "report_as_dict",
    # rendering
    "phase_diagram_svg",
    "flow_svg",
    # command line
    "main",
    "PhaseCell",
    "RunManifest",
    "classify_phase",
    # errors
    "PairPhaseError",
    "NonConvergenceError",
    "NonConvergenceWarning",
    "UnsupportedRegimeError",
    "NoActiveGapsError",
    "BracketFailureError",
    "LogEnergyCollisionError",
]
