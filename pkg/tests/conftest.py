import pathlib

import pytest

from pelwedge.cyclofield import cyclo_field

FIXTURES = pathlib.Path(__file__).parent / "fixtures"


@pytest.fixture
def F4():
    return cyclo_field(4)


@pytest.fixture
def F5():
    return cyclo_field(5)


@pytest.fixture
def F8():
    return cyclo_field(8)


@pytest.fixture
def fixtures_dir():
    return FIXTURES
