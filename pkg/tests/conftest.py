import pathlib

import pytest

from qgrass.lattice import Context
from qgrass import straighten

GOLDEN = pathlib.Path(__file__).parent / "golden"


def golden_text(name: str) -> str:
    return (GOLDEN / name).read_text().rstrip("\n")


@pytest.fixture(scope="session")
def ctx333() -> Context:
    return Context(3, 3, 1, 3)


@pytest.fixture(scope="session")
def gb333(ctx333):
    """The full straightening basis at (3,3,1,3); expensive, shared."""
    return straighten.reduced_groebner(ctx333)
