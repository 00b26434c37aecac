import numpy as np
import pytest

from adjointlab.compactform import build_compact_form
from adjointlab.rootsys import build_root_system

ALL_TYPES = ("A1", "A2", "B2", "C2", "G2")


@pytest.fixture(scope="session")
def systems():
    return {t: build_root_system(t) for t in ALL_TYPES}


@pytest.fixture(scope="session")
def bases(systems):
    # building the compact forms (especially G2 inside so(7)) is the slow
    # part of setup, so share one copy across the whole session
    return {t: build_compact_form(systems[t]) for t in ALL_TYPES}


@pytest.fixture()
def rng():
    return np.random.default_rng(987654321)
