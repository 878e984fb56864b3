"""Models package."""

from .substrate import (
    IDENTIFIER,
    NodeKind,
    ResourceVector,
    NodeCharacteristics,
    SubstrateNode,
    SubstrateLink,
    SubstrateGraph
)
from .slices import (
    ConstraintKind,
    PlacementConstraint,
    UNRESTRICTED,
    NFSpec,
    SFCSpec,
    SliceRequest
)
from .solution import (
    INGRESS,
    EGRESS,
    SolveStatus,
    NFAssignment,
    HopRoute,
    PlacementSolution,
    Verdict,
    ConstraintFamily,
    FamilyVerdict,
    VerificationReport
)
from .options import PairMode, BuildConfig, SolverLimits
from .experiment import (
    GenParams,
    ConfigPoint,
    ExperimentPlan,
    ExperimentRecord,
    Regression,
    AggregateStats,
    TrendReport
)

__all__ = [
    'IDENTIFIER',
    'NodeKind',
    'ResourceVector',
    'NodeCharacteristics',
    'SubstrateNode',
    'SubstrateLink',
    'SubstrateGraph',
    'ConstraintKind',
    'PlacementConstraint',
    'UNRESTRICTED',
    'NFSpec',
    'SFCSpec',
    'SliceRequest',
    'INGRESS',
    'EGRESS',
    'SolveStatus',
    'NFAssignment',
    'HopRoute',
    'PlacementSolution',
    'Verdict',
    'ConstraintFamily',
    'FamilyVerdict',
    'VerificationReport',
    'PairMode',
    'BuildConfig',
    'SolverLimits',
    'GenParams',
    'ConfigPoint',
    'ExperimentPlan',
    'ExperimentRecord',
    'Regression',
    'AggregateStats',
    'TrendReport'
]
