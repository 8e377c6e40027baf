import pytest

from zumkeller.additive import build_range_table


@pytest.fixture(scope="session")
def table10k():
    """Shared classification table over [1, 10000]."""
    return build_range_table(10_000)


@pytest.fixture(scope="session")
def table2k():
    return build_range_table(2_000)
