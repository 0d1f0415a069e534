import numpy as np
import pytest

from sepvol import DensityMatrix, DimensionSpec, validate_density

import oracles


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


@pytest.fixture
def bell():
    return validate_density(oracles.bell_matrix(), (2, 2))


def make_werner(eps) -> DensityMatrix:
    return validate_density(oracles.werner_matrix(eps), (2, 2))


def make_random(dims, rng) -> DensityMatrix:
    import math

    matrix = oracles.random_mixed(math.prod(dims), rng)
    return DensityMatrix(DimensionSpec(tuple(dims)), np.ascontiguousarray(matrix))
