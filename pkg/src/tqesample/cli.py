"""Command-line front end: calculators, the scorecard workflow, Monte Carlo
simulation and PED analysis.

Every machine-readable output embeds a run manifest (command, parameters,
seed, generator, version, timestamp); replaying a manifest reproduces the
payload bit for bit, timestamp aside. Text output is rendered from the same
payload the JSON serializes, at 4 significant digits.

Exit codes: 0 success, 2 usage error, 3 domain error, 4 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from dataclasses import asdict, dataclass
from datetime import datetime, timezone
from pathlib import Path

from . import __version__
from .intervals import (
    ConversionConstants,
    IntervalEstimate,
    convert_sentences,
    fpc_interval,
    required_sample_size,
    sentences_from_words,
    wald_delta,
    wald_interval,
)
from .montecarlo import (
    DEFAULT_REPLICATES,
    DEFAULT_SWEEP_SIZES,
    MCConfig,
    empirical_ci,
    fit_normal,
    histogram,
    run_replicates,
    sweep_to_dict,
    SweepResult,
    SweepRow,
    write_histogram_csv,
    write_sweep_csv,
)
from .ped import (
    PedDistributionModel,
    mean_pedn_sweep,
    min_size_for_delta,
    read_pairs_tsv,
    read_ped_values,
    score_pairs,
)
from .population import PopulationSpec, generate_population
from .rng import GENERATOR_NAME

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DOMAIN = 3
EXIT_IO = 4


class UsageError(Exception):
    """Bad flag combinations or config files; maps to exit code 2."""


@dataclass(frozen=True)
class RunManifest:
    """Reproducibility record embedded in every JSON output."""

    command: str
    parameters: dict
    seed: int
    generator: str
    artifact_version: str
    timestamp: str


def _manifest(command: str, parameters: dict, seed: int) -> RunManifest:
    return RunManifest(
        command=command,
        parameters=parameters,
        seed=seed,
        generator=GENERATOR_NAME,
        artifact_version=__version__,
        timestamp=datetime.now(timezone.utc).isoformat(),
    )


# ---------------------------------------------------------------------------
# settings: built-in defaults < config file < explicit flags

_DEFAULT_SETTINGS = {
    "level": 0.95,
    "seed": 0,
    "words_per_sentence": 17.0,
    "sentences_per_page": 15.0,
    "words_per_page": 250.0,
    "c": 1.0,
}


def _resolve_settings(args: argparse.Namespace) -> dict:
    settings = dict(_DEFAULT_SETTINGS)
    if args.config is not None:
        try:
            raw = Path(args.config).read_text(encoding="utf-8")
        except OSError:
            raise
        try:
            loaded = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise UsageError(f"config file {args.config}: invalid JSON ({exc})") from exc
        if not isinstance(loaded, dict):
            raise UsageError(f"config file {args.config}: expected a JSON object")
        unknown = sorted(set(loaded) - set(_DEFAULT_SETTINGS))
        if unknown:
            raise UsageError(f"config file {args.config}: unknown keys {unknown}")
        settings.update(loaded)
    for key in _DEFAULT_SETTINGS:
        value = getattr(args, key, None)
        if value is not None:
            settings[key] = value
    settings["seed"] = int(settings["seed"])
    return settings


def _constants(settings: dict) -> ConversionConstants:
    return ConversionConstants(
        words_per_sentence=float(settings["words_per_sentence"]),
        sentences_per_page=float(settings["sentences_per_page"]),
        words_per_page=float(settings["words_per_page"]),
    )


def _fmt(x) -> str:
    """4 significant digits for text output; large counts get digit grouping."""
    if isinstance(x, bool) or not isinstance(x, (int, float)):
        return str(x)
    if isinstance(x, int):
        return f"{x:,}"
    if abs(x) >= 10000:
        return f"{x:,.0f}"
    return f"{x:.4g}"


def _payload(command: str, parameters: dict, seed: int, results: dict) -> dict:
    return {"manifest": asdict(_manifest(command, parameters, seed)), "results": results}


def _emit_report(args: argparse.Namespace, payload: dict, text_lines: list[str]) -> None:
    """Reports: text or JSON to stdout; --out always receives the JSON."""
    if args.out is not None:
        Path(args.out).write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        for line in text_lines:
            print(line)


def _write_json(path: Path, payload: dict) -> None:
    path.write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")


def _interval_results(est: IntervalEstimate) -> dict:
    out = asdict(est)
    out["warnings"] = (
        ["normal approximation is rough: fewer than 5 expected errors or non-errors in the sample"]
        if est.small_sample
        else []
    )
    return out


def _interval_lines(results: dict, label: str) -> list[str]:
    lines = [
        f"{label}: {_fmt(results['point'])} ± {_fmt(results['delta'])}",
        f"{int(results['level'] * 100)}% interval: [{_fmt(results['lower'])}, {_fmt(results['upper'])}]"
        + ("  (clamped to [0, 1])" if results["clamped"] else ""),
    ]
    lines += [f"warning: {w}" for w in results["warnings"]]
    return lines


# ---------------------------------------------------------------------------
# subcommands


def cmd_sample_size(args: argparse.Namespace) -> int:
    settings = _resolve_settings(args)
    constants = _constants(settings)
    result = required_sample_size(args.p, args.delta, settings["level"])
    volume = convert_sentences(result.recommended, constants)
    warnings = []
    if args.p in (0.0, 1.0):
        warnings.append(
            f"error density {args.p:g} has zero variance; any sample meets the target"
        )
    results = {
        "p": args.p,
        "target_delta": args.delta,
        "level": settings["level"],
        "exact": result.exact,
        "recommended": result.recommended,
        "words": volume.words,
        "pages": volume.pages,
        "warnings": warnings,
    }
    payload = _payload(
        "sample-size",
        {"p": args.p, "delta": args.delta, "level": settings["level"], "constants": asdict(constants)},
        settings["seed"],
        results,
    )
    lines = [
        f"recommended sample: {_fmt(result.recommended)} sentences (exact {_fmt(result.exact)})",
        f"equivalent volume: {_fmt(volume.words)} words, {_fmt(volume.pages)} pages",
    ] + [f"warning: {w}" for w in warnings]
    _emit_report(args, payload, lines)
    return EXIT_OK


def cmd_interval(args: argparse.Namespace) -> int:
    settings = _resolve_settings(args)
    if args.population is None:
        est = wald_interval(args.p, args.n, settings["level"])
    else:
        est = fpc_interval(args.p, args.n, args.population, settings["level"])
    results = _interval_results(est)
    results["population"] = args.population
    payload = _payload(
        "interval",
        {"p": args.p, "n": args.n, "population": args.population, "level": settings["level"]},
        settings["seed"],
        results,
    )
    _emit_report(args, payload, _interval_lines(results, "error density"))
    return EXIT_OK


def cmd_scorecard(args: argparse.Namespace) -> int:
    settings = _resolve_settings(args)
    constants = _constants(settings)
    if args.sample_words <= 0:
        raise ValueError(f"sample must contain words, got {args.sample_words}")
    if args.sample_words > args.job_words:
        raise ValueError(
            f"sample ({args.sample_words} words) exceeds the job ({args.job_words} words)"
        )
    if args.errors < 0:
        raise ValueError(f"error count must be nonnegative, got {args.errors}")
    n = sentences_from_words(args.sample_words, constants)
    N = sentences_from_words(args.job_words, constants)
    density = args.errors / n
    if density > 1.0:
        raise ValueError(
            f"observed density {density:.3f} exceeds 1 error per sentence; "
            "the binary per-sentence model does not apply"
        )
    est = fpc_interval(density, n, N, settings["level"])
    results = _interval_results(est)
    results.update(
        {
            "job_words": args.job_words,
            "sample_words": args.sample_words,
            "errors_found": args.errors,
            "sample_sentences": n,
            "population_sentences": N,
        }
    )
    payload = _payload(
        "scorecard",
        {
            "job_words": args.job_words,
            "sample_words": args.sample_words,
            "errors": args.errors,
            "level": settings["level"],
            "constants": asdict(constants),
        },
        settings["seed"],
        results,
    )
    lines = [
        f"reviewed {_fmt(n)} of {_fmt(N)} sentences "
        f"({_fmt(args.sample_words)} of {_fmt(args.job_words)} words), "
        f"{_fmt(args.errors)} errors found",
    ] + _interval_lines(results, "observed error density")
    _emit_report(args, payload, lines)
    return EXIT_OK


def _parse_sizes(text: str) -> tuple[int, ...]:
    """Comma list ('100,1000') or MIN:MAX doubling ladder ('25:2000')."""
    text = text.strip()
    try:
        if ":" in text:
            lo_s, hi_s = text.split(":", 1)
            lo, hi = int(lo_s), int(hi_s)
            if lo < 1 or hi < lo:
                raise ValueError
            sizes = []
            size = lo
            while size < hi:
                sizes.append(size)
                size *= 2
            sizes.append(hi)
            return tuple(sizes)
        sizes = sorted({int(part) for part in text.split(",") if part.strip()})
        if not sizes or sizes[0] < 1:
            raise ValueError
        return tuple(sizes)
    except ValueError:
        raise UsageError(
            f"cannot parse sample sizes {text!r}; use '100,1000' or '25:2000'"
        ) from None


def _outdir(args: argparse.Namespace) -> Path:
    out = Path(args.out) if args.out is not None else Path(".")
    out.mkdir(parents=True, exist_ok=True)
    return out


def cmd_simulate(args: argparse.Namespace) -> int:
    settings = _resolve_settings(args)
    seed = settings["seed"]
    if args.sample_sizes is not None:
        sizes = _parse_sizes(args.sample_sizes)
    else:
        sizes = tuple(s for s in DEFAULT_SWEEP_SIZES if s <= args.n_population)
        if not sizes:
            raise ValueError(f"population of {args.n_population} sentences is too small to sweep")
    spec = PopulationSpec.single(args.n_population, args.density, seed=seed)
    config = MCConfig(
        replicates=args.replicates, sample_sizes=sizes, level=settings["level"], seed=seed
    )
    pop = generate_population(spec)
    outdir = _outdir(args)

    fits = {}
    rows = []
    for size in sizes:
        series = run_replicates(pop, size, config, workers=args.workers)
        write_histogram_csv(histogram(series), outdir / f"histogram_n{size}.csv")
        count_fit = fit_normal(series.error_counts)
        density_fit = fit_normal(series.densities)
        fits[str(size)] = {
            "counts": asdict(count_fit),
            "densities": asdict(density_fit),
        }
        ci = empirical_ci(series.densities, config.level)
        rows.append(
            SweepRow(
                sample_size=size,
                mc_delta=ci.delta,
                analytic_delta=wald_delta(pop.realized_density, size, config.level),
                lower=ci.lower,
                upper=ci.upper,
            )
        )
    sweep = SweepResult(rows=tuple(rows))
    write_sweep_csv(sweep, outdir / "sweep.csv")

    parameters = {
        "n_population": args.n_population,
        "density": args.density,
        "sample_sizes": list(sizes),
        "replicates": args.replicates,
        "level": settings["level"],
        "workers": args.workers,
    }
    results = sweep_to_dict(sweep, config, spec)
    results["realized_density"] = pop.realized_density
    results["total_errors"] = pop.total_errors
    results["normal_fits"] = fits
    payload = _payload("simulate", parameters, seed, results)
    _write_json(outdir / "normal_fits.json", payload)

    lines = [
        f"population: {args.n_population} sentences, realized density "
        f"{_fmt(pop.realized_density)} ({pop.total_errors} errors)",
        f"{'size':>6} {'mean_count':>11} {'sigma':>8} {'mc_delta':>9} {'analytic':>9}",
    ]
    for row in sweep.rows:
        f = fits[str(row.sample_size)]["counts"]
        lines.append(
            f"{row.sample_size:>6} {_fmt(f['mu']):>11} {_fmt(f['sigma']):>8} "
            f"{_fmt(row.mc_delta):>9} {_fmt(row.analytic_delta):>9}"
        )
    lines.append(f"wrote sweep.csv, normal_fits.json and {len(sizes)} histogram CSVs to {outdir}")
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        for line in lines:
            print(line)
    return EXIT_OK


def _ped_model(args: argparse.Namespace, settings: dict, outdir: Path) -> tuple[PedDistributionModel, dict]:
    """Build the PED source from exactly one of --tsv / --ped-list / --model."""
    chosen = [name for name, val in (("--tsv", args.tsv), ("--ped-list", args.ped_list), ("--model", args.model)) if val]
    if len(chosen) != 1:
        raise UsageError("choose exactly one PED source: --tsv, --ped-list or --model")
    info: dict = {"source": chosen[0]}
    if args.tsv:
        pairs = read_pairs_tsv(args.tsv)
        records, skipped = score_pairs(pairs, c=settings["c"], char_level=args.char_level)
        if skipped:
            print(f"warning: skipped {skipped} segment(s) with an empty candidate", file=sys.stderr)
        if not records:
            raise ValueError(f"{args.tsv}: no scorable segments")
        with open(outdir / "segments.tsv", "w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh, delimiter="\t")
            writer.writerow(("candidate_len", "edit_ops", "ped", "pedn"))
            for rec in records:
                writer.writerow((rec.candidate_len, rec.edit_ops, rec.ped, rec.pedn))
        info.update(
            {
                "segments": len(records),
                "skipped_empty": skipped,
                "mean_ped": sum(r.ped for r in records) / len(records),
                "mean_pedn": sum(r.pedn for r in records) / len(records),
            }
        )
        return PedDistributionModel.from_values([r.ped for r in records]), info
    if args.ped_list:
        values = read_ped_values(args.ped_list)
        if not values:
            raise ValueError(f"{args.ped_list}: no values")
        info.update({"segments": len(values), "mean_ped": sum(values) / len(values)})
        return PedDistributionModel.from_values(values), info
    if args.model != "zero-inflated":
        raise UsageError(f"unknown model {args.model!r}")
    return PedDistributionModel.zero_inflated(args.zero_mass, args.tail_rate), info


def cmd_ped(args: argparse.Namespace) -> int:
    settings = _resolve_settings(args)
    seed = settings["seed"]
    outdir = _outdir(args)
    model, source_info = _ped_model(args, settings, outdir)

    results: dict = {
        "model": model.to_dict(),
        "c": settings["c"],
        "source": source_info,
        "generator": GENERATOR_NAME,
    }
    lines = [f"PED source: {source_info}"]

    sweep = None
    if args.sweep is not None:
        sizes = _parse_sizes(args.sweep)
        config = MCConfig(
            replicates=args.replicates, sample_sizes=sizes, level=settings["level"], seed=seed
        )
        sweep = mean_pedn_sweep(model, c=settings["c"], config=config, workers=args.workers)
        write_sweep_csv(sweep, outdir / "sweep.csv")
        results["sweep"] = sweep_to_dict(sweep, config)
        lines.append(f"{'size':>6} {'mc_delta':>9} {'analytic':>9}")
        for row in sweep.rows:
            lines.append(f"{row.sample_size:>6} {_fmt(row.mc_delta):>9} {_fmt(row.analytic_delta):>9}")
        if args.target_delta is not None:
            minimum = min_size_for_delta(sweep, args.target_delta)
            results["target_delta"] = args.target_delta
            results["min_sample_size"] = minimum
            if minimum is None:
                lines.append(
                    f"no swept size reaches delta <= {_fmt(args.target_delta)}; extend the sweep"
                )
            else:
                lines.append(
                    f"smallest swept size with delta <= {_fmt(args.target_delta)}: {minimum} sentences"
                )

    parameters = {
        "tsv": str(args.tsv) if args.tsv else None,
        "ped_list": str(args.ped_list) if args.ped_list else None,
        "model": args.model,
        "zero_mass": args.zero_mass,
        "tail_rate": args.tail_rate,
        "c": settings["c"],
        "char_level": args.char_level,
        "sweep": args.sweep,
        "replicates": args.replicates,
        "level": settings["level"],
        "target_delta": args.target_delta,
        "workers": args.workers,
    }
    payload = _payload("ped", parameters, seed, results)
    _write_json(outdir / "summary.json", payload)
    lines.append(f"wrote summary.json{' and sweep.csv' if sweep is not None else ''} to {outdir}")
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        for line in lines:
            print(line)
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--level", type=float, default=None, help="confidence level (default 0.95)")
    common.add_argument("--seed", type=int, default=None, help="random seed (default 0)")
    common.add_argument("--json", action="store_true", help="print the JSON payload instead of text")
    common.add_argument("--out", type=Path, default=None, help="output file (reports) or directory (simulate/ped)")
    common.add_argument("--config", type=Path, default=None, help="JSON settings file; flags override it")
    common.add_argument("--words-per-sentence", dest="words_per_sentence", type=float, default=None)
    common.add_argument("--sentences-per-page", dest="sentences_per_page", type=float, default=None)
    common.add_argument("--words-per-page", dest="words_per_page", type=float, default=None)

    parser = argparse.ArgumentParser(
        prog="tqesample",
        description="Sample-size planning and confidence estimation for translation quality review.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sample-size", parents=[common], help="sentences needed for a target half-width")
    p.add_argument("--p", type=float, required=True, help="expected error density in [0, 1]")
    p.add_argument("--delta", type=float, required=True, help="target half-width")
    p.set_defaults(func=cmd_sample_size)

    p = sub.add_parser("interval", parents=[common], help="confidence interval for an observed density")
    p.add_argument("--p", type=float, required=True, help="observed error density in [0, 1]")
    p.add_argument("--n", type=float, required=True, help="sample size in sentences (fractional allowed)")
    p.add_argument(
        "--population",
        type=float,
        default=None,
        help="population size in sentences; enables the finite-population correction",
    )
    p.set_defaults(func=cmd_interval)

    p = sub.add_parser("scorecard", parents=[common], help="job-level estimate from a review scorecard")
    p.add_argument("--job-words", dest="job_words", type=float, required=True)
    p.add_argument("--sample-words", dest="sample_words", type=float, required=True)
    p.add_argument("--errors", type=float, required=True, help="errors found in the sample")
    p.set_defaults(func=cmd_scorecard)

    p = sub.add_parser("simulate", parents=[common], help="Monte Carlo sampling experiment")
    p.add_argument("--n-population", dest="n_population", type=int, required=True)
    p.add_argument("--density", type=float, required=True)
    p.add_argument("--sample-sizes", dest="sample_sizes", type=str, default=None, help="'100,1000' or '10:2000'")
    p.add_argument("--replicates", type=int, default=DEFAULT_REPLICATES)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("ped", parents=[common], help="post-editing-distance scoring and sweeps")
    p.add_argument("--tsv", type=Path, default=None, help="two-column TSV: candidate<TAB>post-edited")
    p.add_argument("--ped-list", dest="ped_list", type=Path, default=None, help="one PED value per line")
    p.add_argument("--model", choices=["zero-inflated"], default=None, help="synthetic PED source")
    p.add_argument("--zero-mass", dest="zero_mass", type=float, default=0.35)
    p.add_argument("--tail-rate", dest="tail_rate", type=float, default=3.0)
    p.add_argument("--c", dest="c", type=float, default=None, help="PEDn normalization constant (default 1)")
    p.add_argument("--char-level", dest="char_level", action="store_true")
    p.add_argument("--sweep", type=str, default=None, help="'100,1000' or '25:2000'")
    p.add_argument("--replicates", type=int, default=DEFAULT_REPLICATES)
    p.add_argument("--target-delta", dest="target_delta", type=float, default=None)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_ped)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


def run() -> None:
    """Console-script entry point."""
    raise SystemExit(main())
