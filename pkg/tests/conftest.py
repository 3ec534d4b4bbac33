import pytest

from lconj.cli import bundled_example, parse_workspace


@pytest.fixture(scope="session")
def s4ws():
    return parse_workspace(bundled_example("s4_conjugate"))


@pytest.fixture(scope="session")
def d16ws():
    return parse_workspace(bundled_example("d16_normalizer"))


def by_label(eta):
    return eta.as_labels()
