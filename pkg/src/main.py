"""Command-line entry point for the semiparametric HTE estimator."""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, NoReturn, Optional

import numpy as np

from .config.run_config import MechanismMode, RunConfig, load_run_config
from .config.settings import settings
from .dgp import (
    ObservedDataset,
    ignorable_ate,
    known_marginal,
    known_moments,
    population_treated_share,
    simulate,
    true_ate,
    true_e_y1_given_y0,
)
from .errors import ConfigurationError, HteError
from .harness import read_replications, run_study, summarize, write_report
from .harness.replication import build_estimator, stage_one
from .harness.report import TABLE_COLUMNS
from .harness.study import StudyOutcome, common_grid
from .hte import ate_direct, ate_from_curve, hte_curve
from .utils.logger import error, info, section, setup_rich_logging, stats, success, table

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_RUNTIME = 2


class UsageError(Exception):
    """Raised instead of argparse's own exit so the CLI controls the code."""


class CliParser(argparse.ArgumentParser):
    def error(self, message: str) -> NoReturn:
        self.print_help(sys.stderr)
        raise UsageError(message)


def build_parser() -> CliParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="run configuration JSON (default: HTE_CONFIG_PATH)")
    common.add_argument("--seed", type=int, help="seed of a single dataset / seed base of a study")
    common.add_argument("--reps", type=int, help="number of replications")
    common.add_argument("--b-gamma", type=float, nargs="+", dest="b_gamma", help="Sobolev bound(s)")
    common.add_argument("--workers", type=int, help="worker processes")
    common.add_argument("--out", help="output directory")
    common.add_argument("--mechanism", choices=[m.value for m in MechanismMode])
    common.add_argument("--verbose", "-v", action="store_true", help="debug logging")

    parser = CliParser(
        prog="hte",
        description="Semiparametric 2SLS estimation of heterogeneous treatment effects",
    )
    commands = parser.add_subparsers(dest="command", required=True, parser_class=CliParser)

    simulate_cmd = commands.add_parser("simulate", parents=[common], help="emit a simulated dataset CSV")
    simulate_cmd.add_argument("--complete", action="store_true", help="also write complete.csv")
    commands.add_parser("oracle", parents=[common], help="emit true curve, ATE and moments as JSON")
    estimate_cmd = commands.add_parser(
        "estimate", parents=[common], help="fit one dataset: SeriesModel JSON + HteCurve CSV"
    )
    estimate_cmd.add_argument("--data", help="observed dataset CSV (x,z,y_obs); simulated when omitted")
    commands.add_parser("replicate", parents=[common], help="run the full study")
    commands.add_parser("report", parents=[common], help="re-aggregate stored replications in --out")
    return parser


def resolve_config(args: argparse.Namespace) -> RunConfig:
    """Config file (or defaults) with command-line overrides applied."""
    path = args.config or settings.config_path
    config = load_run_config(path) if path else RunConfig()
    updates: Dict[str, Any] = {}
    if args.seed is not None:
        updates["seed_base"] = args.seed
    if args.reps is not None:
        updates["replications"] = args.reps
    if args.b_gamma:
        updates["b_gammas"] = args.b_gamma
    if args.workers is not None:
        updates["workers"] = args.workers
    if args.out is not None:
        updates["output_dir"] = args.out
    if args.mechanism is not None:
        updates["mechanism_mode"] = args.mechanism
    if not updates:
        return config
    try:
        return RunConfig.model_validate({**config.model_dump(), **updates})
    except ValueError as exc:
        raise ConfigurationError(f"invalid command-line override: {exc}") from exc


def output_dir(args: argparse.Namespace, config: RunConfig) -> Path:
    path = Path(args.out or config.output_dir or settings.output_dir)
    path.mkdir(parents=True, exist_ok=True)
    return path


def cmd_simulate(args: argparse.Namespace, config: RunConfig) -> int:
    simulation = simulate(config.dgp, config.seed_base)
    if args.out is None and not args.complete:
        sys.stdout.write(simulation.observed.to_csv())
        return EXIT_OK
    out = output_dir(args, config)
    simulation.observed.to_csv(out / "dataset.csv")
    if args.complete:
        simulation.complete.to_frame().to_csv(
            out / "complete.csv", index=False, float_format="%.17g", lineterminator="\n"
        )
    success(f"Simulated N={config.dgp.n} (seed {config.seed_base}) into {out}")
    return EXIT_OK


def oracle_payload(config: RunConfig) -> Dict[str, Any]:
    marginal = known_marginal(config.dgp)
    grid = common_grid(config)
    e_y1 = np.asarray(true_e_y1_given_y0(config.dgp, grid))
    return {
        "true_ate": true_ate(config.dgp),
        "ignorable_ate": ignorable_ate(config.dgp),
        "moments": known_moments(config.dgp).to_dict(),
        "marginal": marginal.to_dict(),
        "treated_share": population_treated_share(config.dgp),
        "curve": {"y0": grid.tolist(), "e_y1": e_y1.tolist(), "hte": (e_y1 - grid).tolist()},
    }


def cmd_oracle(args: argparse.Namespace, config: RunConfig) -> int:
    payload = json.dumps(oracle_payload(config), indent=2)
    if args.out is not None:
        (output_dir(args, config) / "oracle.json").write_text(payload + "\n", encoding="utf-8")
    sys.stdout.write(payload + "\n")
    return EXIT_OK


def cmd_estimate(args: argparse.Namespace, config: RunConfig) -> int:
    if args.data:
        dataset = ObservedDataset.from_csv(args.data)
    else:
        dataset = simulate(config.dgp, config.seed_base).observed
    out = output_dir(args, config)
    marginal = known_marginal(config.dgp)
    mech = stage_one(config, dataset)
    info(f"Mechanism ({config.mechanism_mode.value}): {mech.as_vector().round(4).tolist()}")
    estimator = build_estimator(config, dataset, mech)

    rows: List[List[Any]] = []
    n_quad = config.quadrature.n_quad
    for b_gamma in config.b_gammas:
        model = estimator.fit(b_gamma)
        curve = hte_curve(
            model,
            estimator.densities,
            marginal,
            config.grid,
            n_quad,
            truth=lambda y0: true_e_y1_given_y0(config.dgp, y0),
        )
        (out / f"model_B{b_gamma:g}.json").write_text(model.to_json() + "\n", encoding="utf-8")
        curve.to_csv(out / f"curve_B{b_gamma:g}.csv")
        rows.append(
            [
                b_gamma,
                ate_from_curve(model, estimator.densities, marginal, n_quad),
                ate_direct(model, estimator.densities, marginal, n_quad),
                model.lambda_star,
                model.dropped_rows,
            ]
        )
    table("Estimates", rows, ["B_gamma", "ATE (curve)", "ATE (direct)", "lambda*", "dropped"])
    success(f"Wrote models and curves to {out}")
    return EXIT_OK


def show_table(outcome: StudyOutcome) -> None:
    if outcome.summary is None:
        return
    frame = outcome.summary.table_frame()[TABLE_COLUMNS]
    rows = [list(row) for row in frame.astype(object).itertuples(index=False)]
    table("ATE by B_gamma", rows, TABLE_COLUMNS)


def cmd_replicate(args: argparse.Namespace, config: RunConfig) -> int:
    section("Simulation study", f"{config.replications} replication(s), B_gamma = {config.b_gammas}")
    outcome = run_study(config, workers=config.workers)
    out = output_dir(args, config)
    write_report(outcome, out)
    show_table(outcome)
    stats(
        {
            "Replications": len(outcome.results),
            "Flagged": outcome.n_flagged,
            "Workers": outcome.workers,
            "Elapsed (s)": outcome.elapsed,
        }
    )
    success(f"Report written to {out}")
    return EXIT_OK


def cmd_report(args: argparse.Namespace, config: RunConfig) -> int:
    out = output_dir(args, config)
    if not args.config and not settings.config_path:
        metadata = out / "metadata.json"
        if metadata.exists():
            try:
                echoed = json.loads(metadata.read_text(encoding="utf-8"))["config"]
                config = RunConfig.model_validate(echoed)
            except (KeyError, ValueError) as exc:
                raise ConfigurationError(f"unreadable run metadata {metadata}: {exc}") from exc
    results = read_replications(out)
    grid = common_grid(config)
    outcome = StudyOutcome(
        config=config,
        results=results,
        elapsed=0.0,
        workers=0,
        summary=summarize(config, results, grid),
        grid=grid,
    )
    write_report(outcome, out, include_results=False)
    show_table(outcome)
    success(f"Re-aggregated {len(results)} replication(s) in {out}")
    return EXIT_OK


COMMANDS = {
    "simulate": cmd_simulate,
    "oracle": cmd_oracle,
    "estimate": cmd_estimate,
    "replicate": cmd_replicate,
    "report": cmd_report,
}


def main(argv: Optional[List[str]] = None) -> int:
    """Run the CLI; returns 0 on success, 1 on usage errors, 2 on runtime failures."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        error(str(exc))
        return EXIT_USAGE
    setup_rich_logging("DEBUG" if args.verbose else settings.log_level)

    try:
        config = resolve_config(args)
        return COMMANDS[args.command](args, config)
    except ConfigurationError as exc:
        error(str(exc))
        return EXIT_USAGE
    except HteError as exc:
        error(f"{type(exc).__name__}: {exc}")
        logger.debug("runtime failure", exc_info=True)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
