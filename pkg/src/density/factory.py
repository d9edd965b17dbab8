"""Factory for creating density backends."""

from typing import Optional

from ..basis import AffineMap
from ..dgp.dataset import ObservedDataset
from ..errors import InvalidArgumentError
from ..models import DgpConfig
from .bandwidth import Bandwidths
from .base import DensityModel
from .kde_model import KdeDensityModel
from .oracle_model import OracleDensityModel


class DensityFactory:
    """Factory for creating density backends."""

    @staticmethod
    def create(
        kind: str,
        map_y0: AffineMap,
        map_x: AffineMap,
        dataset: Optional[ObservedDataset] = None,
        config: Optional[DgpConfig] = None,
        n_hermite: int = 32,
        bandwidths: Optional[Bandwidths] = None,
    ) -> DensityModel:
        """Create a density backend.

        Args:
            kind: "kde" (needs ``dataset``) or "oracle" (needs ``config``)
            map_y0: affine map of y0 onto [-1, 1]
            map_x: affine map of x onto [-1, 1]
            n_hermite: Gauss-Hermite nodes for the y0 integrals

        Returns:
            DensityModel instance
        """
        kind = kind.lower()

        if kind == "kde":
            if dataset is None:
                raise InvalidArgumentError("the kde backend needs a dataset")
            return KdeDensityModel(dataset, map_y0, map_x, n_hermite=n_hermite, bandwidths=bandwidths)
        elif kind == "oracle":
            if config is None:
                raise InvalidArgumentError("the oracle backend needs a DgpConfig")
            # the true integrands are smooth but wider than a kernel, so at least 64 nodes
            return OracleDensityModel(config, map_y0, map_x, n_hermite=max(n_hermite, 64))
        else:
            raise InvalidArgumentError(f"Unknown density backend: {kind}")

    @staticmethod
    def get_available_types() -> "list[str]":
        """Get list of available density backends."""
        return ["kde", "oracle"]
