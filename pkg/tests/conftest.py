"""Shared fixtures: the desk-scale population and its replicate series are
expensive, so they are built once per session and reused."""

from __future__ import annotations

import time

import pytest

from tqesample import MCConfig, PopulationSpec, ci_sweep_population, generate_population, run_replicates

DESK_SEED = 7
DESK_N = 15000
DESK_DENSITY = 0.07
DESK_SIZES = (100, 200, 400, 625, 1000, 2000)


@pytest.fixture(scope="session")
def desk_pop():
    return generate_population(PopulationSpec.single(DESK_N, DESK_DENSITY, seed=DESK_SEED))


@pytest.fixture(scope="session")
def desk_config():
    return MCConfig(replicates=2000, sample_sizes=DESK_SIZES, level=0.95, seed=DESK_SEED)


@pytest.fixture(scope="session")
def desk_sweep(desk_pop, desk_config):
    """(SweepResult, elapsed seconds), single-threaded."""
    start = time.perf_counter()
    sweep = ci_sweep_population(desk_pop, desk_config)
    return sweep, time.perf_counter() - start


@pytest.fixture(scope="session")
def desk_series_100(desk_pop, desk_config):
    return run_replicates(desk_pop, 100, desk_config)


@pytest.fixture(scope="session")
def desk_series_625(desk_pop, desk_config):
    return run_replicates(desk_pop, 625, desk_config)


@pytest.fixture(scope="session")
def desk_series_1000(desk_pop, desk_config):
    return run_replicates(desk_pop, 1000, desk_config)
