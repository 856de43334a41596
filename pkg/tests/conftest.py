import pytest

from transquad.permgroup import Triple, catalog, parse_cycles


def element(group, cycles: str) -> int:
    """Index of the element written in cycle notation."""
    return group.index(parse_cycles(cycles, group.degree))


def triple(group, a: str, b: str, c: str) -> Triple:
    return Triple(element(group, a), element(group, b), element(group, c))


@pytest.fixture(scope="session")
def c2():
    return catalog("cyclic", 2)


@pytest.fixture(scope="session")
def c4():
    return catalog("cyclic", 4)


@pytest.fixture(scope="session")
def s3():
    return catalog("symmetric", 3)
