"""Coverage model, planner, oracles, and simulator for k-set randomized
duty-cycle scheduling in wireless sensor networks."""

from .estimates import CoverageEstimate
from .geometry import (
    FieldSpec,
    clipped_coverage_fraction,
    disk_rect_overlap,
    effective_coverage_probability,
)
from .model import (
    FOREST_Q,
    NetworkSpec,
    ScheduleSpec,
    coverage_probability_from_geometry,
    expected_nonempty_subsets,
    forest_coverage_intensity,
    network_coverage_intensity,
    point_coverage_intensity,
)
from .oracle import (
    BudgetExceededError,
    binomial_network_coverage,
    enumerate_point_coverage,
    sample_point_coverage,
)
from .planner import (
    BindingCheck,
    InfeasibleTargetError,
    PlanResult,
    PlanTarget,
    coverage_curve,
    max_subsets,
    min_nodes,
)
from .sim import (
    Deployment,
    SimConfig,
    SweepRow,
    analytic_grid_coverage,
    deploy,
    estimate_network_coverage,
    point_coverage_of_deployment,
    sweep,
)

__version__ = "0.1.0"

__all__ = [
    "BindingCheck",
    "BudgetExceededError",
    "CoverageEstimate",
    "Deployment",
    "FOREST_Q",
    "FieldSpec",
    "InfeasibleTargetError",
    "NetworkSpec",
    "PlanResult",
    "PlanTarget",
    "ScheduleSpec",
    "SimConfig",
    "SweepRow",
    "analytic_grid_coverage",
    "binomial_network_coverage",
    "clipped_coverage_fraction",
    "coverage_curve",
    "coverage_probability_from_geometry",
    "deploy",
    "disk_rect_overlap",
    "effective_coverage_probability",
    "enumerate_point_coverage",
    "estimate_network_coverage",
    "expected_nonempty_subsets",
    "forest_coverage_intensity",
    "max_subsets",
    "min_nodes",
    "network_coverage_intensity",
    "point_coverage_intensity",
    "point_coverage_of_deployment",
    "sample_point_coverage",
    "sweep",
]
