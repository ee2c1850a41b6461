import os

import pytest

from omnirate import PacketModel

HERE = os.path.dirname(__file__)


@pytest.fixture(scope="session")
def example1() -> PacketModel:
    """The three-user packet model used throughout the docs and tests."""
    return PacketModel(
        {
            "1": ["a", "b", "c", "d", "e"],
            "2": ["a", "b", "f"],
            "3": ["c", "d", "f"],
        }
    )


@pytest.fixture(scope="session")
def example1_path() -> str:
    return os.path.join(HERE, "data", "example1.json")
