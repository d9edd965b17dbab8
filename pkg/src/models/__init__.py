"""Domain records shared across modules."""

from .dgp import DgpConfig, MechanismTruth
from .mechanism import Frame, MechanismParams
from .results import BGammaResult, ReplicationResult

__all__ = [
    "DgpConfig",
    "MechanismTruth",
    "Frame",
    "MechanismParams",
    "BGammaResult",
    "ReplicationResult",
]
