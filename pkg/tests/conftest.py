import pytest

from nomfix import default_signature


@pytest.fixture
def sig():
    return default_signature()
