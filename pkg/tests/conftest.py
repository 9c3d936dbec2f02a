"""Shared fixtures; the expensive objects are built once per session."""

import pytest

import zelab as z


@pytest.fixture(scope="session")
def mobius_million():
    return z.mobius_sieve(10**6)


@pytest.fixture(scope="session")
def feig_r():
    # depth-8 superstable parameter of the period-doubling cascade
    return z.locate_cascade_parameter(8)


@pytest.fixture(scope="session")
def feig_map(feig_r):
    return z.MapSpec("logistic", (feig_r,), (0.0, 1.0))


@pytest.fixture(scope="session")
def feig_tower(feig_map):
    T = z.build_tower(feig_map, 0.5, 8)
    assert T.depth == 8, "fixture tower must reach depth 8"
    return T


@pytest.fixture(scope="session")
def two_cycle_map():
    return z.MapSpec("logistic", (3.2,), (0.0, 1.0))


@pytest.fixture(scope="session")
def two_cycle_tower(two_cycle_map):
    return z.build_tower(two_cycle_map, 0.5, 1)


@pytest.fixture(scope="session")
def chaotic_map():
    return z.MapSpec("logistic", (4.0,), (0.0, 1.0))


@pytest.fixture(scope="session")
def chaotic_sample(chaotic_map):
    # generic orbit sample standing in for an attractor sample at r = 4
    return chaotic_map.orbit(0.1234, 1000 + 8192)[1001:]


def trial_division_mobius(n: int) -> int:
    """Independent Mobius oracle by full trial-division factorization."""
    if n == 1:
        return 1
    count = 0
    d = 2
    while d * d <= n:
        if n % d == 0:
            n //= d
            if n % d == 0:
                return 0
            count += 1
        else:
            d += 1
    return (-1) ** (count + 1)


@pytest.fixture(scope="session")
def mobius_oracle():
    return trial_division_mobius
