import csv
import json
import logging
import math
import sys

import click

from src.config import LOG_LEVEL
from src.evaluation import EvaluationOptions, evaluate_bounds, snr_from_db
from src.exceptions import BudgetExceededError, DomainError
from src.figures import FIGURE_TITLES, FigureId, FigureSpec, build_figure
from src.models.base import SessionLocal, init_db
from src.models.ensemble import EnsembleKind, EnsembleSpec
from src.models.scenario import Distortion, Scenario, ScenarioSnapshot
from src.models.signal import SignalKind, SignalModel
from src.models.simulation_run import archive_report
from src.bounds import DEFAULT_C1, DEFAULT_C2, DeterministicMode
from src.simulator import Verdict, estimate_error_probability, run_capacity_sweep, write_reports_csv
from src.validation import validate

logger = logging.getLogger("sensecap.cli")

# Stable exit codes
EXIT_OK = 0
EXIT_VALIDATION_FAILED = 1
EXIT_USAGE = 2
EXIT_REGIME = 3

MODELS = {"bernoulli": SignalKind.BernoulliDiscrete, "gaussian": SignalKind.SparseGaussian}


def _load_config(ctx, param, value):
    """Merge a JSON config file under the explicit flags."""
    if value is None:
        return value
    try:
        with open(value) as handle:
            data = json.load(handle)
    except (OSError, json.JSONDecodeError) as e:
        raise click.BadParameter(f"cannot read config: {str(e)}")
    if not isinstance(data, dict):
        raise click.BadParameter("config must be a JSON object")
    ctx.default_map = {**(ctx.default_map or {}), **data}
    return value


config_option = click.option(
    "--config",
    type=click.Path(dir_okay=False),
    callback=_load_config,
    is_eager=True,
    expose_value=False,
    help="JSON file of option defaults; explicit flags win.",
)


def scenario_options(func):
    """Options shared by every command that describes a scenario."""
    options = [
        click.option("--model", type=click.Choice(sorted(MODELS)), default="bernoulli", show_default=True),
        click.option("--alpha", type=float, default=0.5, show_default=True, help="Sparsity ratio."),
        click.option("--snr-db", type=float, default=None, help="SNR in dB, -inf allowed."),
        click.option("--snr", type=float, default=10.0, show_default=True, help="Linear SNR, ignored with --snr-db."),
        click.option("--d0", type=float, default=0.0, show_default=True, help="Distortion level."),
        click.option("--n", "n", type=int, default=100, show_default=True, help="Signal dimension."),
        click.option("--m", "m", type=int, default=50, show_default=True, help="Number of sensors."),
        click.option(
            "--ensemble",
            type=click.Choice([k.value for k in EnsembleKind if k != EnsembleKind.Explicit]),
            default=EnsembleKind.GaussianDense.value,
            show_default=True,
        ),
        click.option("--beta", type=float, default=1.0, show_default=True, help="Diversity ratio."),
        click.option("--filter-length", type=int, default=None, help="ToeplitzFIR filter length."),
        click.option("--downsample", type=float, default=None, help="ToeplitzFIR downsampling fraction."),
        click.option("--sigma1-sq", type=float, default=1.0, show_default=True),
        click.option("--sigma0-sq", type=float, default=0.0, show_default=True),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def _build(params) -> tuple[Scenario, SignalModel, EnsembleSpec]:
    """Scenario triple from parsed options; pydantic errors become usage errors."""
    try:
        snr = snr_from_db(params["snr_db"]) if params["snr_db"] is not None else params["snr"]
        kind = MODELS[params["model"]]
        model = SignalModel(
            kind=kind,
            alpha=params["alpha"],
            sigma1_sq=params["sigma1_sq"],
            sigma0_sq=params["sigma0_sq"],
        )
        distortion = Distortion.Hamming if kind == SignalKind.BernoulliDiscrete else Distortion.Squared
        scenario = Scenario(n=params["n"], m=params["m"], snr=snr, d0=params["d0"], distortion=distortion)
        ensemble = EnsembleSpec(
            kind=EnsembleKind(params["ensemble"]),
            beta=params["beta"],
            filter_length=params["filter_length"],
            downsample=params["downsample"],
        )
    except (ValueError, DomainError) as e:
        raise click.UsageError(str(e))
    return scenario, model, ensemble


def _exit_on_regime(scenario, model, ensemble, force: bool) -> None:
    report = validate(scenario, model, ensemble)
    for warning in report.warnings:
        click.echo(f"warning: {warning}", err=True)
    if report.ok:
        return
    for violation in report.violations:
        click.echo(f"regime: [{violation.lemma}] {violation.constraint}: {violation.message}", err=True)
    if not force:
        sys.exit(EXIT_REGIME)


@click.group()
@click.option("--log-level", default=LOG_LEVEL, show_default=True, help="Logging level.")
def cli(log_level):
    """Sensing capacity bounds, figure data and Monte Carlo validation."""
    logging.basicConfig(level=log_level.upper())


@cli.command("bounds")
@config_option
@scenario_options
@click.option("--alphabet-size", type=int, default=2, show_default=True)
@click.option("--epsilon", type=float, default=0.1, show_default=True, help="Target error for sensor counts.")
@click.option("--c1", type=float, default=DEFAULT_C1, show_default=True)
@click.option("--c2", type=float, default=DEFAULT_C2, show_default=True)
@click.option("--mode", type=click.Choice([m.value for m in DeterministicMode]), default="Normalized", show_default=True)
@click.option("--cover-k", type=float, default=None, help="Override for the cover constant K in bits.")
@click.option("--force", is_flag=True, help="Evaluate even when a precondition fails.")
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv", show_default=True)
def cmd_bounds(**params):
    """Print every applicable bound with its provenance and validity."""
    scenario, model, ensemble = _build(params)
    _exit_on_regime(scenario, model, ensemble, params["force"])
    try:
        options = EvaluationOptions(
            alphabet_size=params["alphabet_size"],
            epsilon=params["epsilon"],
            c1=params["c1"],
            c2=params["c2"],
            mode=DeterministicMode(params["mode"]),
            cover_k=params["cover_k"],
        )
        rows = evaluate_bounds(scenario, model, ensemble, options)
    except (ValueError, DomainError) as e:
        raise click.UsageError(str(e))

    if params["fmt"] == "json":
        click.echo(json.dumps([row.model_dump() for row in rows], indent=2))
        return
    writer = csv.writer(click.get_text_stream("stdout"), lineterminator="\n")
    writer.writerow(["name", "value", "unit", "lemma", "valid", "reason"])
    for row in rows:
        value = "" if row.value is None else (repr(row.value) if isinstance(row.value, float) else row.value)
        writer.writerow([row.name, value, row.unit, row.lemma, str(row.valid).lower(), row.reason])


def _parse_override(text: str):
    key, sep, raw = text.partition("=")
    if not sep or not key:
        raise click.BadParameter(f"expected key=value, got {text!r}")
    try:
        value = json.loads(raw)
    except json.JSONDecodeError:
        value = raw
    return key.replace("-", "_"), value


@cli.command("figure")
@config_option
@click.argument("figure_id", required=False, type=click.Choice([f.value for f in FigureId]))
@click.option("--output", "-o", type=click.Path(dir_okay=False, writable=True), default=None, help="CSV path, stdout if omitted.")
@click.option("--set", "overrides", multiple=True, help="Grid override key=value (value parsed as JSON).")
@click.option("--list", "list_ids", is_flag=True, help="List figure ids and exit.")
def cmd_figure(figure_id, output, overrides, list_ids):
    """Write the data table behind a figure as CSV."""
    if list_ids:
        for fid in FigureId:
            click.echo(f"{fid.value}\t{FIGURE_TITLES[fid]}")
        return
    if figure_id is None:
        raise click.UsageError("FIGURE_ID is required unless --list is given")

    try:
        spec = FigureSpec(figure_id=FigureId(figure_id), overrides=dict(_parse_override(o) for o in overrides), output=output)
        table = build_figure(spec)
    except (ValueError, DomainError) as e:
        raise click.UsageError(str(e))

    if output is None:
        table.write_csv(click.get_text_stream("stdout"))
    else:
        with open(output, "w", newline="") as handle:
            table.write_csv(handle)
        logger.info(f"Wrote {len(table.rows)} rows to {output}")
    for key, value in table.annotations.items():
        click.echo(f"{key}={value!r}", err=True)


@cli.command("simulate")
@config_option
@scenario_options
@click.option("--trials", type=click.IntRange(min=1), default=1000, show_default=True)
@click.option("--seed", type=click.IntRange(min=0), default=0, show_default=True)
@click.option("--workers", type=click.IntRange(min=1), default=None, help="Worker threads.")
@click.option("--fixed-matrix", is_flag=True, help="Draw one G for all trials.")
@click.option("--output", "-o", type=click.Path(dir_okay=False, writable=True), default=None, help="JSON path, stdout if omitted.")
@click.option("--csv", "csv_path", type=click.Path(dir_okay=False, writable=True), default=None, help="Also write a one-row CSV.")
@click.option("--archive", is_flag=True, help="Store the report in the run archive.")
@click.option("--force", is_flag=True, help="Simulate even when a precondition fails.")
def cmd_simulate(**params):
    """Estimate the error probability of the exhaustive ML decoder."""
    scenario, model, ensemble = _build(params)
    _exit_on_regime(scenario, model, ensemble, params["force"])
    try:
        report = estimate_error_probability(
            scenario,
            model,
            ensemble,
            trials=params["trials"],
            seed=params["seed"],
            workers=params["workers"],
            fixed_matrix=params["fixed_matrix"],
        )
    except (BudgetExceededError, DomainError) as e:
        raise click.UsageError(str(e))

    text = report.model_dump_json(indent=2)
    if params["output"] is None:
        click.echo(text)
    else:
        with open(params["output"], "w") as handle:
            handle.write(text + "\n")
    if params["csv_path"] is not None:
        with open(params["csv_path"], "w", newline="") as handle:
            write_reports_csv([report], handle)

    if params["archive"]:
        init_db()
        db = SessionLocal()
        try:
            run = archive_report(db, report)
            click.echo(f"archived run {run.id}", err=True)
        finally:
            db.close()


def _validation_grid(n_values, alphas, snrs):
    for n in n_values:
        for alpha in alphas:
            for snr in snrs:
                for d0 in (0.0, 1.0 / n):
                    for m in (max(1, n // 2), 4 * n):
                        yield Scenario(n=n, m=m, snr=snr, d0=d0), SignalModel(kind=SignalKind.BernoulliDiscrete, alpha=alpha)


@cli.command("validate")
@config_option
@click.option("--n-values", multiple=True, type=int, default=(8, 12, 16), show_default=True)
@click.option("--alphas", multiple=True, type=float, default=(0.25, 0.5), show_default=True)
@click.option("--snrs", multiple=True, type=float, default=(1.0, 10.0), show_default=True, help="Linear SNR values.")
@click.option("--trials", type=click.IntRange(min=1), default=10_000, show_default=True)
@click.option("--seed", type=click.IntRange(min=0), default=0, show_default=True)
@click.option("--workers", type=click.IntRange(min=1), default=None)
@click.option("--output", "-o", type=click.Path(dir_okay=False, writable=True), default=None, help="CSV path, stdout if omitted.")
def cmd_validate(n_values, alphas, snrs, trials, seed, workers, output):
    """Run the Fano / union sandwich grid; exit 1 on any violated cell."""
    ensemble = EnsembleSpec(kind=EnsembleKind.GaussianDense)
    reports = []
    try:
        for index, (scenario, model) in enumerate(_validation_grid(n_values, alphas, snrs)):
            reports.append(
                estimate_error_probability(scenario, model, ensemble, trials, seed + index, workers=workers)
            )
    except (BudgetExceededError, DomainError) as e:
        raise click.UsageError(str(e))

    if output is None:
        write_reports_csv(reports, click.get_text_stream("stdout"))
    else:
        with open(output, "w", newline="") as handle:
            write_reports_csv(reports, handle)

    failed = [r for r in reports if r.verdict != Verdict.Consistent]
    click.echo(f"{len(reports) - len(failed)}/{len(reports)} cells consistent", err=True)
    if failed:
        sys.exit(EXIT_VALIDATION_FAILED)


@cli.command("sweep")
@config_option
@scenario_options
@click.option("--c", "c_values", multiple=True, type=float, help="Operating points n/m.")
@click.option("--n-values", multiple=True, type=int, default=(8, 12, 16), show_default=True)
@click.option("--trials", type=click.IntRange(min=1), default=1000, show_default=True)
@click.option("--seed", type=click.IntRange(min=0), default=0, show_default=True)
@click.option("--workers", type=click.IntRange(min=1), default=None)
def cmd_sweep(**params):
    """Error probability across n at fixed operating points n/m."""
    scenario, model, ensemble = _build(params)
    template = ScenarioSnapshot(scenario=scenario, model=model, ensemble=ensemble)
    try:
        sweep = run_capacity_sweep(
            template, params["c_values"], params["n_values"], params["trials"], params["seed"], params["workers"]
        )
    except (BudgetExceededError, DomainError) as e:
        raise click.UsageError(str(e))
    click.echo("c,n,m,p_hat,ci_low,ci_high")
    for row in sweep.rows:
        r = row.report
        click.echo(f"{row.c!r},{row.n},{row.m},{r.p_hat!r},{r.ci_low!r},{r.ci_high!r}")
    for trend in sweep.trends:
        click.echo(f"c={trend.c!r} monotone={str(trend.monotone).lower()}", err=True)


if __name__ == "__main__":
    cli()
