from pathlib import Path

import numpy as np
import pytest

from ebos.matio import read_matrix

DATA = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def ex2():
    """The 12x8 worked example: A, B (blocks 2,4), C (blocks 2,2,3)."""
    return {
        "A": read_matrix(DATA / "ex2_A.csv"),
        "B": read_matrix(DATA / "ex2_B.csv"),
        "C": read_matrix(DATA / "ex2_C.csv"),
        "gpart": (2, 4),
        "hpart": (2, 2, 3),
    }


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
