import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))  # for oracles.py

from latticeframes import (
    FiniteAbelianGroup,
    measured_set_from_indices,
    subgroup_from_generators,
)


def make_lattice(G, *gens):
    return subgroup_from_generators(G, [G.element(g) for g in gens])


def make_omega(G, *indices):
    return measured_set_from_indices(G, indices)


@pytest.fixture
def z4():
    return FiniteAbelianGroup([4])


@pytest.fixture
def z6():
    return FiniteAbelianGroup([6])


@pytest.fixture
def z8():
    return FiniteAbelianGroup([8])


@pytest.fixture
def z12():
    return FiniteAbelianGroup([12])


@pytest.fixture
def z2z2():
    return FiniteAbelianGroup([2, 2])


@pytest.fixture
def z2z4():
    return FiniteAbelianGroup([2, 4])


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
