import pytest

from specialsets.field import field_for_q
from specialsets.hermitian import space_for_q


@pytest.fixture(scope="session")
def F9():
    return field_for_q(3)


@pytest.fixture(scope="session")
def H3():
    return space_for_q(3)


@pytest.fixture(scope="session")
def H5():
    return space_for_q(5)
