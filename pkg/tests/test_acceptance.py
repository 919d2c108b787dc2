"""Acceptance gate: one test per release criterion, each printing a
pass/fail line (run with ``pytest -s tests/test_acceptance.py`` to see them).

The expensive desk-scale fixtures (15000-sentence population, 2000
replicates) are shared session-wide via conftest.
"""

from __future__ import annotations

import itertools
import json
import math
import random
import time
from contextlib import contextmanager

import numpy as np
import pytest

from tqesample import (
    DEFAULT_PED_MODEL,
    MCConfig,
    fit_normal,
    fpc_interval,
    insdel_distance,
    mean_pedn_sweep,
    pedn,
    required_sample_size,
    wald_delta,
)
from tqesample.cli import main

from test_ped import oracle_insdel, random_token_list, tanh_oracle


@contextmanager
def criterion(number: int, description: str):
    try:
        yield
    except BaseException:
        print(f"[criterion {number:2d}] FAIL — {description}", flush=True)
        raise
    print(f"[criterion {number:2d}] PASS — {description}", flush=True)


def test_criterion_1_sample_size_solver():
    with criterion(1, "sample-size solver values and sub-millisecond runtime"):
        res = required_sample_size(0.07, 0.02, 0.95)
        assert res.exact == pytest.approx(625.2, abs=0.1)
        assert res.recommended in (625, 626)
        res = required_sample_size(0.07, 0.01, 0.95)
        assert res.exact == pytest.approx(2500.9, abs=0.5)

        calls = 1000
        start = time.perf_counter()
        for _ in range(calls):
            required_sample_size(0.07, 0.02, 0.95)
        per_call = (time.perf_counter() - start) / calls
        assert per_call < 1e-3, f"solver took {per_call * 1e3:.3f} ms per call"


def test_criterion_2_wald_deltas():
    with criterion(2, "Wald half-widths at the reference sample sizes"):
        assert wald_delta(0.07, 150, 0.95) == pytest.approx(0.0408, abs=0.001)
        assert wald_delta(0.07, 15, 0.95) == pytest.approx(0.129, abs=0.002)
        assert wald_delta(0.07, 1, 0.95) == pytest.approx(0.500, abs=0.005)
        assert wald_delta(0.2, 15, 0.95) == pytest.approx(0.202, abs=0.003)


def test_criterion_3_scorecard_fpc():
    with criterion(3, "scorecard interval with finite-population correction"):
        est = fpc_interval(0.085, 23.5, 58.82, 0.95)
        assert est.delta == pytest.approx(0.088, abs=0.001)
        assert est.upper == pytest.approx(0.173, abs=0.002)
        assert est.lower == 0.0
        assert est.clamped


def test_criterion_4_mc_analytic_agreement(desk_sweep):
    with criterion(4, "Monte Carlo half-widths track the analytic curve within 15%"):
        sweep, elapsed = desk_sweep
        assert elapsed < 60.0, f"desk-scale sweep took {elapsed:.1f}s"
        for row in sweep.rows:
            rel = abs(row.mc_delta - row.analytic_delta) / row.analytic_delta
            assert rel < 0.15, f"n={row.sample_size}: relative gap {rel:.3f}"
        at_625 = next(row for row in sweep.rows if row.sample_size == 625)
        assert 0.016 <= at_625.mc_delta <= 0.024


def test_criterion_5_histogram_width_scaling(desk_series_100, desk_series_1000):
    with criterion(5, "10x smaller samples give a ~sqrt(10)-wider density bell"):
        ratio = (
            fit_normal(desk_series_100.densities).sigma
            / fit_normal(desk_series_1000.densities).sigma
        )
        lo, hi = math.sqrt(10) * 0.7, math.sqrt(10) * 1.3
        assert lo <= ratio <= hi, f"sigma ratio {ratio:.3f} outside [{lo:.3f}, {hi:.3f}]"


def test_criterion_6_coverage(desk_pop, desk_series_625):
    with criterion(6, "per-replicate Wald intervals cover the true density 90-97%"):
        realized = desk_pop.realized_density
        covered = 0
        for density in desk_series_625.densities:
            delta = wald_delta(float(density), 625, 0.95)
            if density - delta <= realized <= density + delta:
                covered += 1
        fraction = covered / len(desk_series_625.densities)
        assert 0.90 <= fraction <= 0.97, f"coverage {fraction:.4f}"


def test_criterion_7_edit_distance_oracle():
    with criterion(7, "insert/delete distance matches exhaustive search; metric axioms"):
        rnd = random.Random(77)
        pool = []
        for _ in range(1000):
            a, b = random_token_list(rnd), random_token_list(rnd)
            assert insdel_distance(a, b) == oracle_insdel(a, b), (a, b)
            pool.append(a)
            pool.append(b)
        for x, y, z in itertools.islice(zip(pool, pool[1:], pool[2:]), 500):
            dxy, dyz, dxz = insdel_distance(x, y), insdel_distance(y, z), insdel_distance(x, z)
            assert dxy == insdel_distance(y, x)
            assert (dxy == 0) == (x == y)
            assert dxz <= dxy + dyz


def test_criterion_8_pedn_properties():
    with criterion(8, "PEDn normalization: unit at zero, monotone, oracle value"):
        for c in (0.5, 1.0, 2.0):
            assert pedn(0.0, c) == 1.0
            values = pedn(np.linspace(0.0, 6.0, 1000), c)
            assert np.all(np.diff(values) < 0)
        assert pedn(1.0, 1.0) == pytest.approx(1 - tanh_oracle(1.0), abs=1e-12)
        assert pedn(1.0, 1.0) == pytest.approx(0.23840, abs=1e-4)


def test_criterion_9_ped_sweep_shape():
    with criterion(9, "mean-PEDn half-width blows up below ~200 sentences, scales 1/sqrt(n)"):
        config = MCConfig(
            replicates=2000,
            sample_sizes=(25, 50, 100, 200, 400, 800, 1600, 2000),
            level=0.95,
            seed=11,
        )
        sweep = mean_pedn_sweep(DEFAULT_PED_MODEL, 1.0, config)
        deltas = {row.sample_size: row.mc_delta for row in sweep.rows}
        assert deltas[100] > 2.0 * deltas[800]
        scaled = [deltas[n] * math.sqrt(n) for n in (100, 200, 400, 800, 1600, 2000)]
        spread = max(scaled) / min(scaled)
        assert spread <= 1.2, f"delta*sqrt(n) spread {spread:.3f}"


def _drop_timestamp(payload: dict) -> dict:
    clone = json.loads(json.dumps(payload))
    clone["manifest"].pop("timestamp")
    clone["manifest"]["parameters"].pop("workers", None)
    return clone


def test_criterion_10_cli_determinism(tmp_path, capsys):
    with criterion(10, "simulate/ped runs with one seed are byte-identical, parallel included"):
        sim = lambda outdir, *extra: main(
            [
                "simulate", "--n-population", "3000", "--density", "0.07",
                "--sample-sizes", "100,400", "--replicates", "300", "--seed", "42",
                "--out", str(outdir), *extra,
            ]
        )
        dirs = (tmp_path / "s1", tmp_path / "s2", tmp_path / "s3")
        assert sim(dirs[0]) == 0
        assert sim(dirs[1]) == 0
        assert sim(dirs[2], "--workers", "4") == 0
        for name in ("sweep.csv", "histogram_n100.csv", "histogram_n400.csv"):
            reference = (dirs[0] / name).read_bytes()
            assert (dirs[1] / name).read_bytes() == reference
            assert (dirs[2] / name).read_bytes() == reference
        payloads = [json.loads((d / "normal_fits.json").read_text()) for d in dirs]
        assert _drop_timestamp(payloads[0]) == _drop_timestamp(payloads[1])

        ped = lambda outdir, *extra: main(
            [
                "ped", "--model", "zero-inflated", "--zero-mass", "0.35", "--tail-rate", "3.0",
                "--sweep", "50,200", "--replicates", "300", "--seed", "42",
                "--out", str(outdir), *extra,
            ]
        )
        dirs = (tmp_path / "p1", tmp_path / "p2", tmp_path / "p3")
        assert ped(dirs[0]) == 0
        assert ped(dirs[1]) == 0
        assert ped(dirs[2], "--workers", "4") == 0
        reference = (dirs[0] / "sweep.csv").read_bytes()
        assert (dirs[1] / "sweep.csv").read_bytes() == reference
        assert (dirs[2] / "sweep.csv").read_bytes() == reference
        payloads = [json.loads((d / "summary.json").read_text()) for d in dirs]
        assert _drop_timestamp(payloads[0]) == _drop_timestamp(payloads[1])
        assert _drop_timestamp(payloads[0]) == _drop_timestamp(payloads[2])
        capsys.readouterr()  # swallow the CLI chatter
