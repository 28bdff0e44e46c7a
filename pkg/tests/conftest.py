import pytest

from cubical.io import FIXTURES, load_fixture


@pytest.fixture(scope="session")
def fx():
    """All bundled fixture complexes, by name."""
    return {name: load_fixture(name) for name in FIXTURES}
