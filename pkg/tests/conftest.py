import pytest

from ramapoly.treecore import TreeEnumerator


@pytest.fixture(scope="session")
def enum():
    """One shared enumerator so memoized sub-forests are reused across tests."""
    return TreeEnumerator()
