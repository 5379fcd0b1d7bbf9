"""Shared fixtures and independent oracles used across the suite.

The oracle helpers below deliberately avoid the library's own map
application: they enumerate attractor points by digit arithmetic so they
can serve as independent expected values.
"""

import math

import numpy as np
import pytest

import ifs_chisel as ic


@pytest.fixture(scope="session")
def example_system():
    return ic.builtin("paper-example")


@pytest.fixture(scope="session")
def example_ellipse(example_system):
    return ic.ellipse_params(example_system)


TRIANGLE = np.array([[0.0, 0.0], [1.0, 0.0], [0.5, math.sqrt(3.0) / 2.0]])


def cantor_endpoints(level: int) -> np.ndarray:
    """Left endpoints of the level-n middle-third intervals, as plane points.

    Every endpoint is sum_k c_k / 3**k with digits c_k in {0, 2}; there are
    2**level of them.
    """
    idx = np.arange(1 << level)[:, None]
    digits = (idx >> np.arange(level)[None, :]) & 1
    xs = (2.0 * digits / 3.0 ** np.arange(1, level + 1)[None, :]).sum(axis=1)
    return np.column_stack([xs, np.zeros_like(xs)])


def sierpinski_address_points(level: int) -> np.ndarray:
    """All length-n address points sum_k v[i_k] / 2**k over the unit triangle."""
    idx = np.arange(3**level)[:, None]
    digits = (idx // 3 ** np.arange(level)[None, :]) % 3
    weights = (0.5 ** np.arange(1, level + 1))[None, :, None]
    return (TRIANGLE[digits] * weights).sum(axis=1)


def random_similitude_system(rng: np.random.Generator) -> ic.IfsSystem:
    """A 2-5 map system of random rotation similitudes with centers in
    [-1, 1]^2 and ratios in [0.15, 0.85]."""
    count = int(rng.integers(2, 6))
    maps = [
        ic.rotation_similitude(
            rng.uniform(-1.0, 1.0, 2),
            float(rng.uniform(-math.pi, math.pi)),
            float(rng.uniform(0.15, 0.85)),
        )
        for _ in range(count)
    ]
    return ic.IfsSystem(maps)
