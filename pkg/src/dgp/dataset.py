"""Observed and complete simulation samples."""

from dataclasses import dataclass
from pathlib import Path
from typing import Union

import numpy as np
import pandas as pd

from ..errors import DatasetError, InvalidArgumentError

CSV_COLUMNS = ["x", "z", "y_obs"]
FLOAT_FORMAT = "%.17g"


@dataclass(frozen=True, eq=False)
class ObservedDataset:
    """Records (x_i, z_i, y_obs_i) with y_obs = y1 when z = 1 and y0 when z = 0."""

    x: np.ndarray
    z: np.ndarray
    y_obs: np.ndarray

    def __post_init__(self) -> None:
        x = np.array(self.x, dtype=float)
        z = np.array(self.z, dtype=np.int8)
        y_obs = np.array(self.y_obs, dtype=float)
        if not (x.shape == z.shape == y_obs.shape) or x.ndim != 1:
            raise InvalidArgumentError("x, z and y_obs must be equal-length vectors")
        if not np.all((z == 0) | (z == 1)):
            raise InvalidArgumentError("z must be 0 or 1")
        for name, value in (("x", x), ("z", z), ("y_obs", y_obs)):
            value.setflags(write=False)
            object.__setattr__(self, name, value)

    @property
    def n(self) -> int:
        return int(self.x.size)

    @property
    def n1(self) -> int:
        return int(np.count_nonzero(self.z))

    @property
    def n0(self) -> int:
        return self.n - self.n1

    @property
    def treated_mask(self) -> np.ndarray:
        return self.z == 1

    @property
    def treated_x(self) -> np.ndarray:
        return self.x[self.treated_mask]

    @property
    def treated_y1(self) -> np.ndarray:
        return self.y_obs[self.treated_mask]

    @property
    def control_x(self) -> np.ndarray:
        return self.x[~self.treated_mask]

    @property
    def control_y0(self) -> np.ndarray:
        return self.y_obs[~self.treated_mask]

    @property
    def treated_share(self) -> float:
        return self.n1 / self.n if self.n else float("nan")

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({"x": self.x, "z": self.z.astype(int), "y_obs": self.y_obs})

    def to_csv(self, path: Union[str, Path, None] = None) -> str:
        """Write ``x,z,y_obs`` rows; returns the CSV text."""
        text = self.to_frame().to_csv(index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
        if path is not None:
            Path(path).write_text(text)
        return text

    @classmethod
    def from_frame(cls, frame: pd.DataFrame) -> "ObservedDataset":
        """Validate an ``x,z,y_obs`` frame; every failure is a DatasetError."""
        missing = [column for column in CSV_COLUMNS if column not in frame.columns]
        if missing:
            raise DatasetError(f"dataset is missing columns {missing}")
        try:
            columns = {name: frame[name].to_numpy(dtype=float) for name in CSV_COLUMNS}
        except (TypeError, ValueError) as exc:
            raise DatasetError(f"dataset has non-numeric entries: {exc}") from exc
        for name, values in columns.items():
            bad = np.flatnonzero(~np.isfinite(values))
            if bad.size:
                raise DatasetError(f"column {name} is missing or non-finite at row {int(bad[0])}")
        bad = np.flatnonzero((columns["z"] != 0) & (columns["z"] != 1))
        if bad.size:
            row = int(bad[0])
            raise DatasetError(f"z must be 0 or 1, got {columns['z'][row]:g} at row {row}")
        return cls(x=columns["x"], z=columns["z"].astype(np.int8), y_obs=columns["y_obs"])

    @classmethod
    def from_csv(cls, path: Union[str, Path]) -> "ObservedDataset":
        try:
            frame = pd.read_csv(path, float_precision="round_trip")
        except OSError as exc:
            raise DatasetError(f"cannot read dataset {path}: {exc}") from exc
        except (pd.errors.ParserError, pd.errors.EmptyDataError, UnicodeDecodeError) as exc:
            raise DatasetError(f"cannot parse dataset {path}: {exc}") from exc
        return cls.from_frame(frame)


@dataclass(frozen=True, eq=False)
class CompleteData:
    """Both potential outcomes; only the simulator ever sees these."""

    x: np.ndarray
    y0: np.ndarray
    y1: np.ndarray
    z: np.ndarray
    propensity: np.ndarray

    def observed(self) -> ObservedDataset:
        return ObservedDataset(x=self.x, z=self.z, y_obs=np.where(self.z == 1, self.y1, self.y0))

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            {
                "x": self.x,
                "y0": self.y0,
                "y1": self.y1,
                "z": self.z.astype(int),
                "propensity": self.propensity,
            }
        )


@dataclass(frozen=True, eq=False)
class Simulation:
    observed: ObservedDataset
    complete: CompleteData
    seed: int
