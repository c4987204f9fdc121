import pytest

from flopcat.algebra_tables import CurveData
from flopcat.sod_twist import standard_objects


@pytest.fixture(scope="session")
def node():
    return standard_objects(12)


@pytest.fixture(scope="session")
def node14():
    return standard_objects(14)


@pytest.fixture(scope="session")
def curve():
    return CurveData(1, -1, 14)
