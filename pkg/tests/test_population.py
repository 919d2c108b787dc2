"""Population generation and sample draws, checked against counting and
enumeration oracles."""

from __future__ import annotations

import itertools
import math

import numpy as np
import pytest

from tqesample import (
    ErrorCategory,
    PopulationSpec,
    draw_sample,
    error_density,
    generate_population,
    load_population,
    save_population,
)
from tqesample.population import _finish


class TestSpecValidation:
    def test_rejects_empty_population(self):
        with pytest.raises(ValueError):
            PopulationSpec.single(0, 0.1)

    def test_rejects_bad_density(self):
        with pytest.raises(ValueError):
            PopulationSpec.single(10, 1.5)
        with pytest.raises(ValueError):
            PopulationSpec.single(10, -0.1)

    def test_rejects_duplicate_names(self):
        with pytest.raises(ValueError):
            PopulationSpec(10, (ErrorCategory("a", 0.1), ErrorCategory("a", 0.2)))

    def test_rejects_no_categories(self):
        with pytest.raises(ValueError):
            PopulationSpec(10, ())

    def test_rejects_bad_seed(self):
        with pytest.raises(ValueError):
            PopulationSpec.single(10, 0.1, seed=-1)
        with pytest.raises(ValueError):
            PopulationSpec.single(10, 0.1, seed=2**64)


class TestGenerate:
    def test_density_zero(self):
        pop = generate_population(PopulationSpec.single(1000, 0.0, seed=1))
        assert pop.total_errors == 0

    def test_density_one(self):
        pop = generate_population(PopulationSpec.single(1000, 1.0, seed=1))
        assert pop.total_errors == 1000

    def test_binomial_count_within_three_sigma(self):
        # Binomial(15000, 0.07): mean 1050, sd sqrt(N p (1-p)) ~ 31.2
        pop = generate_population(PopulationSpec.single(15000, 0.07, seed=42))
        sd = math.sqrt(15000 * 0.07 * 0.93)
        assert abs(pop.total_errors - 1050) <= 3 * sd

    def test_deterministic_bit_identical(self):
        spec = PopulationSpec(
            500,
            (ErrorCategory("grammar", 0.05), ErrorCategory("terminology", 0.02)),
            seed=99,
        )
        a = generate_population(spec)
        b = generate_population(spec)
        assert np.array_equal(a.flags, b.flags)
        assert a.total_errors == b.total_errors

    def test_different_seeds_differ(self):
        a = generate_population(PopulationSpec.single(2000, 0.3, seed=1))
        b = generate_population(PopulationSpec.single(2000, 0.3, seed=2))
        assert not np.array_equal(a.flags, b.flags)

    def test_flags_read_only(self):
        pop = generate_population(PopulationSpec.single(10, 0.5, seed=1))
        with pytest.raises(ValueError):
            pop.flags[0, 0] = 1


class TestErrorDensity:
    def test_all_zero(self):
        pop = generate_population(PopulationSpec.single(100, 0.0, seed=1))
        assert error_density(pop) == 0.0

    def test_ratio_by_definition(self):
        # counting oracle: exactly 70 flags set out of 1000
        spec = PopulationSpec.single(1000, 0.07, seed=1)
        flags = np.zeros((1000, 1), dtype=np.uint8)
        flags[:70, 0] = 1
        pop = _finish(spec, flags)
        assert error_density(pop) == 0.07

    def test_superposition_can_exceed_one(self):
        spec = PopulationSpec(
            10, (ErrorCategory("a", 1.0), ErrorCategory("b", 1.0)), seed=1
        )
        pop = generate_population(spec)
        assert error_density(pop) == 2.0
        assert pop.total_errors == 20


class TestDrawSample:
    def test_census_recovers_total(self):
        pop = generate_population(PopulationSpec.single(200, 0.3, seed=5))
        sample = draw_sample(pop, 200, stream_key=0)
        assert sample.error_count == pop.total_errors
        assert np.array_equal(sample.indices, np.arange(200))

    def test_single_sentence_of_clean_population(self):
        pop = generate_population(PopulationSpec.single(50, 0.0, seed=5))
        assert draw_sample(pop, 1, stream_key=3).error_count == 0

    def test_out_of_range(self):
        pop = generate_population(PopulationSpec.single(50, 0.1, seed=5))
        with pytest.raises(ValueError):
            draw_sample(pop, 0, stream_key=0)
        with pytest.raises(ValueError):
            draw_sample(pop, 51, stream_key=0)

    def test_pure_function_of_key(self):
        pop = generate_population(PopulationSpec.single(500, 0.2, seed=5))
        a = draw_sample(pop, 50, stream_key=17)
        b = draw_sample(pop, 50, stream_key=17)
        assert np.array_equal(a.indices, b.indices)
        assert a.error_count == b.error_count

    def test_no_duplicates_without_replacement(self):
        pop = generate_population(PopulationSpec.single(300, 0.2, seed=6))
        for key in range(50):
            sample = draw_sample(pop, 40, stream_key=key)
            assert len(np.unique(sample.indices)) == sample.size == 40
            assert sample.error_count <= 40

    def test_with_replacement_can_repeat(self):
        pop = generate_population(PopulationSpec.single(3, 0.5, seed=6))
        seen_duplicate = any(
            len(np.unique(draw_sample(pop, 3, key, with_replacement=True).indices)) < 3
            for key in range(30)
        )
        assert seen_duplicate

    def test_all_pairs_equally_likely(self):
        # enumeration oracle: every C(5,2) subset should appear ~1/10 of the time
        pop = generate_population(PopulationSpec.single(5, 0.5, seed=8))
        expected_pairs = set(itertools.combinations(range(5), 2))
        counts = {pair: 0 for pair in expected_pairs}
        draws = 100_000
        for key in range(draws):
            sample = draw_sample(pop, 2, stream_key=key)
            counts[tuple(sample.indices)] += 1
        assert set(counts) == expected_pairs
        for pair, count in counts.items():
            assert count / draws == pytest.approx(0.1, abs=0.01), pair

    def test_unbiased_mean_density(self):
        pop = generate_population(PopulationSpec.single(2000, 0.12, seed=9))
        n, draws = 50, 10_000
        total = sum(draw_sample(pop, n, key).error_count for key in range(draws))
        mean_density = total / (n * draws)
        p = pop.realized_density
        se = math.sqrt(p * (1 - p) / n * (2000 - n) / 1999) / math.sqrt(draws)
        assert abs(mean_density - p) <= 4 * se

    def test_matches_exact_hypergeometric(self):
        # brute-force oracle: enumerate all C(12, 5) subsets of the realized flags
        pop = generate_population(PopulationSpec.single(12, 0.4, seed=10))
        flags = pop.errors_per_sentence
        n = 5
        subsets = list(itertools.combinations(range(12), n))
        exact = {}
        for subset in subsets:
            k = int(flags[list(subset)].sum())
            exact[k] = exact.get(k, 0) + 1
        exact = {k: v / len(subsets) for k, v in exact.items()}

        draws = 100_000
        observed = {}
        for key in range(draws):
            k = draw_sample(pop, n, stream_key=key).error_count
            observed[k] = observed.get(k, 0) + 1
        observed = {k: v / draws for k, v in observed.items()}

        support = set(exact) | set(observed)
        tvd = 0.5 * sum(abs(exact.get(k, 0.0) - observed.get(k, 0.0)) for k in support)
        assert tvd < 0.01


class TestExportImport:
    def test_round_trip(self, tmp_path):
        spec = PopulationSpec(
            777,
            (ErrorCategory("grammar", 0.08), ErrorCategory("style", 0.03)),
            seed=123,
        )
        pop = generate_population(spec)
        path = tmp_path / "pop.bin"
        save_population(pop, path)
        loaded = load_population(path)
        assert loaded.spec == pop.spec
        assert np.array_equal(loaded.flags, pop.flags)
        assert loaded.total_errors == pop.total_errors

    def test_rejects_foreign_file(self, tmp_path):
        path = tmp_path / "junk.bin"
        path.write_bytes(b'{"format": "something-else"}\n\x00\x01')
        with pytest.raises(ValueError):
            load_population(path)

    def test_rejects_truncated_bitmap(self, tmp_path):
        pop = generate_population(PopulationSpec.single(64, 0.5, seed=3))
        path = tmp_path / "pop.bin"
        save_population(pop, path)
        data = path.read_bytes()
        path.write_bytes(data[:-4])
        with pytest.raises(ValueError):
            load_population(path)
