"""Sample-size planning and confidence estimation for translation quality review.

The package answers one practical question from three directions: how many
sentences of a translated job must a reviewer check before the measured error
density (or mean post-editing distance) can be trusted to a given half-width?

- :mod:`tqesample.intervals` holds the closed-form Wald and finite-population
  math plus the sample-size solver and word/page unit conversions.
- :mod:`tqesample.population` generates synthetic populations of sentences
  with randomly placed errors and draws reproducible samples from them.
- :mod:`tqesample.montecarlo` replays the sampling process thousands of times
  to compare empirical half-widths with the analytic curve.
- :mod:`tqesample.ped` scores post-editing distance, normalizes it onto
  (0, 1], and sweeps the half-width of the mean score against sample size.
- :mod:`tqesample.cli` exposes all of it as the ``tqesample`` command.
"""

__version__ = "0.1.0"

from .intervals import (
    ConversionConstants,
    IntervalEstimate,
    SampleSizeResult,
    TextVolume,
    convert_sentences,
    fpc_interval,
    fpc_sigma,
    required_sample_size,
    sentences_from_words,
    wald_delta,
    wald_interval,
    wald_sigma,
    z_for_level,
)
from .montecarlo import (
    DEFAULT_REPLICATES,
    DEFAULT_SWEEP_SIZES,
    EmpiricalCI,
    MCConfig,
    NormalFit,
    ReplicateSeries,
    SweepResult,
    SweepRow,
    ci_sweep,
    ci_sweep_population,
    empirical_ci,
    fit_normal,
    histogram,
    run_replicates,
    sweep_to_dict,
    write_histogram_csv,
    write_sweep_csv,
)
from .ped import (
    DEFAULT_PED_MODEL,
    PedDistributionModel,
    PedRecord,
    insdel_distance,
    mean_pedn_sweep,
    min_size_for_delta,
    ped_score,
    pedn,
    read_pairs_tsv,
    read_ped_values,
    sample_ped,
    score_pairs,
    tokenize,
)
from .population import (
    ErrorCategory,
    Population,
    PopulationSpec,
    Sample,
    draw_sample,
    error_density,
    generate_population,
    load_population,
    save_population,
)
from .rng import GENERATOR_NAME

__all__ = [
    "ConversionConstants",
    "DEFAULT_PED_MODEL",
    "DEFAULT_REPLICATES",
    "DEFAULT_SWEEP_SIZES",
    "EmpiricalCI",
    "ErrorCategory",
    "GENERATOR_NAME",
    "IntervalEstimate",
    "MCConfig",
    "NormalFit",
    "PedDistributionModel",
    "PedRecord",
    "Population",
    "PopulationSpec",
    "ReplicateSeries",
    "Sample",
    "SampleSizeResult",
    "SweepResult",
    "SweepRow",
    "TextVolume",
    "ci_sweep",
    "ci_sweep_population",
    "convert_sentences",
    "draw_sample",
    "empirical_ci",
    "error_density",
    "fit_normal",
    "fpc_interval",
    "fpc_sigma",
    "generate_population",
    "histogram",
    "insdel_distance",
    "load_population",
    "mean_pedn_sweep",
    "min_size_for_delta",
    "ped_score",
    "pedn",
    "read_pairs_tsv",
    "read_ped_values",
    "required_sample_size",
    "run_replicates",
    "sample_ped",
    "save_population",
    "score_pairs",
    "sentences_from_words",
    "sweep_to_dict",
    "tokenize",
    "wald_delta",
    "wald_interval",
    "wald_sigma",
    "write_histogram_csv",
    "write_sweep_csv",
    "z_for_level",
]
