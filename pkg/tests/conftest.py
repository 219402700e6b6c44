import pytest

from robucl import load_fixture


@pytest.fixture(scope="session")
def full30():
    return load_fixture("u235_full")


@pytest.fixture(scope="session")
def trimmed26():
    return load_fixture("u235_trimmed")


@pytest.fixture(scope="session")
def small9():
    return load_fixture("u235_small")


@pytest.fixture(scope="session")
def density5():
    return load_fixture("granite_density")
