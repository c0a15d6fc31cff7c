"""chernoff-kit command-line entry point."""

import argparse
import json
import logging
import sys
from collections.abc import Sequence
from pathlib import Path

from src.analysis.numerical_range import (
    SectorSpec,
    contained_in_qs_domain,
    contained_in_sector,
    min_semi_angle,
    range_boundary,
)
from src.config.settings import settings
from src.errors import ChernoffKitError, InvalidKato
from src.families.kato import get_kato
from src.linalg.interchange import load_operator
from src.runner.models import Scenario, load_scenario
from src.runner.scenario import EXIT_CONFIG, EXIT_OK, EXIT_VIOLATION, run_scenario, run_sweep
from src.runner.writers import write_frame_csv

logger = logging.getLogger(__name__)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chernoff-kit",
        description="Chernoff product formula approximants and convergence-bound verification",
    )
    parser.add_argument("--log-level", default=None, help="Override CHERNOFF_KIT_LOG_LEVEL")
    sub = parser.add_subparsers(dest="command", required=True)

    rate = sub.add_parser("rate", help="Error curve and fitted rate for a scenario")
    rate.add_argument("--config", required=True, type=Path)
    rate.add_argument("--out", type=Path, default=None)

    verify = sub.add_parser("verify", help="Run a scenario's bound suite")
    verify.add_argument("--config", required=True, type=Path)
    verify.add_argument("--out", type=Path, default=None)

    range_cmd = sub.add_parser("range", help="Numerical-range verdict for a matrix")
    range_cmd.add_argument("--matrix", required=True, type=Path)
    range_cmd.add_argument("--alpha", required=True, type=float)
    range_cmd.add_argument("--points", type=int, default=None)
    range_cmd.add_argument("--out", type=Path, default=None)

    kato = sub.add_parser("kato", help="Validate a built-in Kato function")
    kato.add_argument("--id", required=True, dest="kato_id")

    sweep = sub.add_parser("sweep", help="Rerun a scenario over consecutive seeds")
    sweep.add_argument("--config", required=True, type=Path)
    sweep.add_argument("--seeds", required=True, type=int)
    sweep.add_argument("--out", type=Path, default=None)
    return parser


def _load(args: argparse.Namespace) -> Scenario:
    scenario = load_scenario(args.config)
    if args.out is not None:
        scenario = scenario.with_overrides(out_dir=str(args.out))
    return scenario


def cmd_rate(args: argparse.Namespace) -> int:
    result = run_scenario(_load(args), include_bounds=False)
    if result.exit_code == EXIT_CONFIG:
        print(f"error: {result.error}", file=sys.stderr)
        return EXIT_CONFIG
    for curve in result.curves:
        print(json.dumps(curve.to_dict()))
    return result.exit_code


def cmd_verify(args: argparse.Namespace) -> int:
    result = run_scenario(_load(args))
    if result.exit_code == EXIT_CONFIG:
        print(f"error: {result.error}", file=sys.stderr)
        return EXIT_CONFIG
    for report in result.reports:
        if not report.passed:
            logger.warning(
                "FAIL %s %s margin=%.6g", report.bound_id.value, report.params, report.margin
            )
    print(result.summary)
    return result.exit_code


def cmd_range(args: argparse.Namespace) -> int:
    sector = SectorSpec(args.alpha)
    operator = load_operator(args.matrix)
    boundary = range_boundary(operator, args.points)
    in_sector, sector_margin = contained_in_sector(boundary, sector)
    in_domain, domain_margin = contained_in_qs_domain(boundary, sector)
    verdict = {
        "alpha": args.alpha,
        "points": len(boundary.points),
        "contained_in_sector": in_sector,
        "contained_in_qs_domain": in_domain,
        "margins": {"sector": sector_margin, "qs_domain": domain_margin},
        "min_semi_angle": min_semi_angle(boundary),
        "extremality_defect": boundary.extremality_defect(operator),
    }
    if args.out is not None:
        args.out.mkdir(parents=True, exist_ok=True)
        write_frame_csv(boundary.to_frame(), args.out / "range.csv")
        (args.out / "range.json").write_text(json.dumps(verdict, indent=2) + "\n")
    print(json.dumps(verdict))
    return EXIT_OK


def cmd_kato(args: argparse.Namespace) -> int:
    try:
        report = get_kato(args.kato_id).to_dict()
    except InvalidKato as e:
        print(json.dumps({"id": args.kato_id, "valid": False, "clause": e.clause, "error": str(e)}))
        return EXIT_VIOLATION
    print(json.dumps(report))
    return EXIT_OK


def cmd_sweep(args: argparse.Namespace) -> int:
    results = run_sweep(_load(args), args.seeds)
    for seed, result in results:
        print(f"seed {seed}: {result.summary}")
    return max(result.exit_code for _, result in results)


COMMANDS = {
    "rate": cmd_rate,
    "verify": cmd_verify,
    "range": cmd_range,
    "kato": cmd_kato,
    "sweep": cmd_sweep,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if isinstance(e.code, int) else EXIT_CONFIG

    level = (args.log_level or settings.log_level).upper()
    logging.basicConfig(
        level=getattr(logging, level, logging.INFO),
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        stream=sys.stderr,
    )

    try:
        return COMMANDS[args.command](args)
    except (ChernoffKitError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return EXIT_CONFIG
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
