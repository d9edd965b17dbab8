"""Serialisable records of one replication."""

import math
from typing import Any, Dict, List, Optional, Sequence

from pydantic import BaseModel, ConfigDict, Field

from .mechanism import MechanismParams


def nullable(values: Sequence[float]) -> List[Optional[float]]:
    """Floats with NaN replaced by None, so records stay valid JSON."""
    return [None if value is None or math.isnan(value) else float(value) for value in values]


class BGammaResult(BaseModel):
    """Stage-two outcome for one bound B_gamma."""

    model_config = ConfigDict(extra="forbid")

    b_gamma: float
    converged: bool = True
    error: Optional[str] = None
    ate_curve: Optional[float] = None
    ate_direct: Optional[float] = None
    # E_hat[y1 | y0] on the common grid; None marks a failed point
    curve: List[Optional[float]] = Field(default_factory=list)
    lambda_star: Optional[float] = None
    norm: Optional[float] = None
    dropped_rows: int = 0
    gamma: List[float] = Field(default_factory=list)

    @classmethod
    def failed(cls, b_gamma: float, error: str) -> "BGammaResult":
        return cls(b_gamma=b_gamma, converged=False, error=error)


class ReplicationResult(BaseModel):
    """One simulated dataset carried through both stages for every B_gamma."""

    model_config = ConfigDict(extra="forbid")

    index: int
    seed: int
    converged: bool = True
    error: Optional[str] = None
    mechanism: Optional[MechanismParams] = None
    mechanism_transformed: Optional[MechanismParams] = None
    treated_share: Optional[float] = None
    n0: int = 0
    n1: int = 0
    bandwidths: Optional[Dict[str, float]] = None
    # affine maps of y0, x and y1 onto [-1, 1]; gamma is expressed in these coordinates
    maps: Optional[Dict[str, Dict[str, float]]] = None
    per_b: List[BGammaResult] = Field(default_factory=list)
    elapsed: float = 0.0

    def for_b(self, b_gamma: float) -> Optional[BGammaResult]:
        for result in self.per_b:
            if result.b_gamma == b_gamma:
                return result
        return None

    def usable(self, b_gamma: float) -> bool:
        """Converged at both stages and produced an ATE for ``b_gamma``."""
        result = self.for_b(b_gamma)
        return (
            self.converged
            and result is not None
            and result.converged
            and result.ate_curve is not None
        )

    def deterministic_dump(self) -> Dict[str, Any]:
        """Record without wall-clock timing."""
        return self.model_dump(mode="json", exclude={"elapsed"})
