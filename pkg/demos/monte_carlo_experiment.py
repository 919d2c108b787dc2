"""Replaying the review process thousands of times
===================================================

Instead of trusting the closed-form half-width, simulate it: build a
15000-sentence population with errors placed uniformly at density 0.07, draw
2000 samples at each size, and compare the spread of the observed densities
with the analytic curve. Histograms and the sweep land in ./demo_output/.
"""

from pathlib import Path

from tqesample import (
    MCConfig,
    PopulationSpec,
    ci_sweep_population,
    empirical_ci,
    fit_normal,
    generate_population,
    histogram,
    run_replicates,
    write_histogram_csv,
    write_sweep_csv,
)

outdir = Path("demo_output")
outdir.mkdir(exist_ok=True)

spec = PopulationSpec.single(num_sentences=15000, density=0.07, seed=7)
pop = generate_population(spec)
print(
    f"population: {pop.num_sentences} sentences, {pop.total_errors} errors "
    f"(realized density {pop.realized_density:.4f})"
)

config = MCConfig(replicates=2000, sample_sizes=(100, 200, 400, 625, 1000, 2000), seed=7)


def ascii_histogram(series, width=50):
    bins = histogram(series)
    peak = max(freq for _, freq in bins)
    for value, freq in bins:
        bar = "#" * max(1, round(freq / peak * width))
        print(f"  {value:>4} {bar}")


# The error count over repeated samples forms a bell curve; ten times fewer
# sentences per sample makes the bell (relative to its mean) much wider.
for size in (1000, 100):
    series = run_replicates(pop, size, config)
    fit = fit_normal(series.error_counts)
    print(f"\nerror counts over {config.replicates} samples of {size} sentences "
          f"(mu {fit.mu:.1f}, sigma {fit.sigma:.2f}):")
    ascii_histogram(series)
    write_histogram_csv(histogram(series), outdir / f"histogram_n{size}.csv")
    ci = empirical_ci(series.densities)
    print(f"  95% of observed densities fall in [{ci.lower:.4f}, {ci.upper:.4f}]")

# Sweep the half-width across sample sizes and set it against the formula.
sweep = ci_sweep_population(pop, config)
print(f"\n{'n':>6} {'simulated':>10} {'analytic':>9}")
for row in sweep.rows:
    print(f"{row.sample_size:>6} {row.mc_delta:>10.4f} {row.analytic_delta:>9.4f}")
write_sweep_csv(sweep, outdir / "sweep.csv")
print(f"\nwrote {outdir}/sweep.csv and two histogram CSVs")
print("the simulated and analytic columns agree to within a few percent,")
print("with the simulated value drifting low at large n where the sample")
print("becomes a noticeable share of the population (the correction the")
print("plain formula omits).")
