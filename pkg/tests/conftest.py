import numpy as np
import pytest

from qwteleport.algebra import HADAMARD, I2, I3, KET_L, KET_R, X, Z
from qwteleport.config import load_example
from qwteleport.teleport import Procedure


@pytest.fixture(scope="session")
def example1():
    return load_example(1)[0]


@pytest.fixture(scope="session")
def example2():
    return load_example(2)[0]


@pytest.fixture(scope="session")
def example3():
    return load_example(3)[0]


def with_fields(proc, **changes):
    fields = {f: getattr(proc, f) for f in ("psi", "c1", "c2", "h1", "h2_tilde")}
    fields.update(changes)
    return Procedure(**fields)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
