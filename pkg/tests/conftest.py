"""Shared fixtures and helpers for the test suite."""

from __future__ import annotations

import numpy as np
import pytest

from aybe.structures import BDStructure, CyclicPermutation, enumerate_structures


def rand_complex(rng, scale=1.5):
    return complex(rng.uniform(-scale, scale), rng.uniform(-scale, scale))


def rand_matrix(rng, n):
    return rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))


def rand_tensor2(rng, n):
    from aybe.tensors import Tensor2

    return Tensor2(n, rng.standard_normal((n, n, n, n)) + 1j * rng.standard_normal((n, n, n, n)))


def guarded_point(rng, r, margin=0.2, scale=1.5):
    """A random argument tuple keeping ``margin`` away from every pole of r."""
    for _ in range(10_000):
        z = tuple(rand_complex(rng, scale) for _ in range(r.arity))
        if r.pole_distance(*z) > margin:
            return z
    raise RuntimeError("could not find a guarded point")


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(20240612)


@pytest.fixture(scope="session")
def bd3():
    """Small structure with one chain pair: C0 = C = (1 2 3), Gamma1 = {(1,2)}."""
    c0 = CyclicPermutation.standard(3)
    return BDStructure(c0, c0, [(1, 2)])


@pytest.fixture(scope="session")
def bd4():
    """Depth-two structure: C0 = C = (1 2 3 4), Gamma1 = {(1,2), (2,3)}."""
    c0 = CyclicPermutation.standard(4)
    return BDStructure(c0, c0, [(1, 2), (2, 3)])


@pytest.fixture(scope="session")
def corpus_n3():
    return [bd for n in (1, 2, 3) for bd in enumerate_structures(n)]
