"""Deterministic randomness helpers.

Every randomized routine derives its generator from (seed, tag, index), so
independent sampling sites never share a stream and runs with the same
seed are reproducible byte for byte.
"""

from __future__ import annotations

import random
from fractions import Fraction

import numpy as np

from .linalg import zeros

DEFAULT_BOUND = 10 ** 6


def subrng(seed: int, tag: str, index: int = 0) -> random.Random:
    return random.Random(f"{seed}/{tag}/{index}")


def random_exact_matrix(nrows: int, ncols: int, rng: random.Random,
                        bound: int = DEFAULT_BOUND) -> np.ndarray:
    out = zeros((nrows, ncols))
    for i in range(nrows):
        for j in range(ncols):
            out[i, j] = Fraction(rng.randint(-bound, bound))
    return out


def random_exact_vector(n: int, rng: random.Random,
                        bound: int = DEFAULT_BOUND) -> np.ndarray:
    out = np.empty(n, dtype=object)
    for i in range(n):
        out[i] = Fraction(rng.randint(-bound, bound))
    return out


def random_rational_matrix(nrows: int, ncols: int, rng: random.Random,
                           bound: int = DEFAULT_BOUND,
                           den_bound: int = 1000) -> np.ndarray:
    out = zeros((nrows, ncols))
    for i in range(nrows):
        for j in range(ncols):
            out[i, j] = Fraction(rng.randint(-bound, bound),
                                 rng.randint(1, den_bound))
    return out


def random_float_matrix(nrows: int, ncols: int, rng: random.Random,
                        scale: float = 1.0) -> np.ndarray:
    return np.array([[rng.uniform(-scale, scale) for _ in range(ncols)]
                     for _ in range(nrows)])


def random_float_vector(n: int, rng: random.Random, scale: float = 1.0) -> np.ndarray:
    return np.array([rng.uniform(-scale, scale) for _ in range(n)])


def random_config(dim: int, count: int, rng: random.Random,
                  exact: bool = True, bound: int = DEFAULT_BOUND):
    """Random integer-coordinate configuration; generic with overwhelming
    probability at the default bound."""
    from .motions import PointConfiguration

    if exact:
        return PointConfiguration(random_exact_matrix(dim, count, rng, bound))
    return PointConfiguration(random_float_matrix(dim, count, rng, float(bound)))


def random_general_config(dim: int, count: int, seed: int, tag: str = "config",
                          exact: bool = True, bound: int = DEFAULT_BOUND):
    """Random configuration rejected until it is in general position."""
    from .errors import DegenerateConfigError

    for attempt in range(50):
        p = random_config(dim, count, subrng(seed, tag, attempt),
                          exact=exact, bound=bound)
        if p.is_general_position():
            return p
    raise DegenerateConfigError("could not sample a general-position configuration")
