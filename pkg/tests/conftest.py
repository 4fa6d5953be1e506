import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from fracstab.presets import get_preset, run_preset


@pytest.fixture(scope="session")
def example1_run():
    return run_preset(get_preset("example1"))


@pytest.fixture(scope="session")
def example2_run():
    return run_preset(get_preset("example2"))


@pytest.fixture(scope="session")
def example3_run():
    return run_preset(get_preset("example3"))
