from importlib import resources

import pytest

from deltafilt.generators import a2_algebra, a2_system
from deltafilt.modules import direct_sum, projective, simple


@pytest.fixture
def a2():
    return a2_algebra(2)


@pytest.fixture
def a2sys():
    return a2_system(2)


@pytest.fixture
def a2mods(a2):
    """``(P1, S1, S2)`` over the path algebra of ``1 -> 2``."""
    return projective(a2, "1"), simple(a2, "1"), simple(a2, "2")


@pytest.fixture
def p1s2(a2mods):
    p1, _, s2 = a2mods
    return direct_sum(p1, s2)


@pytest.fixture
def a2_text():
    return resources.files("deltafilt").joinpath("data/a2.toml").read_text()
