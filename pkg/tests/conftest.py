import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent.parent))

from src.dgp import simulate  # noqa: E402
from src.models import DgpConfig  # noqa: E402

SAMPLE_SEED = 7


@pytest.fixture(scope="session")
def dgp_config() -> DgpConfig:
    return DgpConfig()


@pytest.fixture(scope="session")
def sample_simulation(dgp_config):
    return simulate(dgp_config, SAMPLE_SEED)


@pytest.fixture(scope="session")
def sample_dataset(sample_simulation):
    return sample_simulation.observed


@pytest.fixture(scope="session")
def repo_root() -> Path:
    return Path(__file__).parent.parent
