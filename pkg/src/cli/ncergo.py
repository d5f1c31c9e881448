#!/usr/bin/env python3
"""
ncergo - CLI Entry Point

Ergodic averages, couplings and disjointness experiments on quantum tori
and free-group dual systems. Results go to CSV with a provenance sidecar;
verification lines go to stdout.
"""

import argparse
import os
import sys
from pathlib import Path

# Add src to path for imports
sys.path.insert(0, str(Path(__file__).parent.parent))

from lib.logging import get_logger, setup_logging  # noqa: E402
from lib.parsing import ConfigParseError, load_config, parse_scalar  # noqa: E402
from models.provenance import Provenance  # noqa: E402
from models.surd import ParameterError  # noqa: E402
from services.experiment_service import ExperimentService  # noqa: E402
from services.oracle_service import DEFAULT_TRUNCATION, TruncationRangeError  # noqa: E402
from services.storage_service import StorageError, StorageService  # noqa: E402
from services.verification_service import VerificationService  # noqa: E402

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_INTERRUPTED = 130

LOG_LEVELS = ["DEBUG", "INFO", "WARNING", "ERROR"]


def load_env_config():
    """Load configuration from .env file if available."""
    try:
        from dotenv import load_dotenv
        load_dotenv()
    except ImportError:
        # python-dotenv not available, continue without it
        pass


def default_truncation() -> int:
    raw = os.getenv("NCERGO_TRUNCATION")
    if raw is None:
        return DEFAULT_TRUNCATION
    try:
        return int(raw)
    except ValueError:
        raise ParameterError(f"NCERGO_TRUNCATION must be an integer, got '{raw}'")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ncergo",
        description="ncergo - ergodic averages and joinings on quantum tori and free-group systems",
        epilog="Examples:\n"
               "  ncergo verify --suite joinings\n"
               "  ncergo average --config config/experiments/torus_unique_ergodic.ini --out data/results/average.csv\n"
               "  ncergo disjoint --config config/experiments/mirror_relative.ini --out data/results/mirror.csv\n"
               "  ncergo group --config config/experiments/dual_s_letters.ini --out data/results/group.csv\n"
               "  ncergo oracle --theta '1/2*sqrt(2)' --truncation 16 --samples 100 --seed 0",
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument(
        "--log-level",
        choices=LOG_LEVELS,
        default=None,
        help="Logging level (default: NCERGO_LOG_LEVEL or WARNING)",
    )
    sub = parser.add_subparsers(dest="cmd", required=True)

    verify = sub.add_parser("verify", help="Run the property suites and print PASS/FAIL lines")
    verify.add_argument(
        "--suite",
        action="append",
        choices=list(VerificationService.SUITES),
        help="Suite to run; repeat for several (default: all)",
    )
    verify.add_argument("--seed", type=int, default=None, help="RNG seed (default: config seed or 0)")
    verify.add_argument("--config", help="Experiment file whose [run] seed is used")
    verify.set_defaults(func=cmd_verify)

    for name, help_text in (
        ("average", "Ergodic averages against the conditional expectation"),
        ("disjoint", "Averaged couplings against the target joining"),
        ("group", "Correlation averages of dual free-group systems"),
    ):
        table = sub.add_parser(name, help=help_text)
        table.add_argument("--config", required=True, help="Experiment file (INI sections)")
        table.add_argument("--out", required=True, help="Output CSV; <out>.meta.json is written next to it")
        table.set_defaults(func=cmd_table)

    oracle = sub.add_parser("oracle", help="Compare symbolic operations with truncated matrices")
    oracle.add_argument("--theta", required=True, help="Deformation parameter, e.g. 1/5 or 1/2*sqrt(2)")
    oracle.add_argument("--truncation", type=int, default=None,
                        help=f"Basis half-width N (default: NCERGO_TRUNCATION or {DEFAULT_TRUNCATION})")
    oracle.add_argument("--samples", type=int, default=100, help="Random pairs to compare (default: 100)")
    oracle.add_argument("--seed", type=int, default=0, help="RNG seed (default: 0)")
    oracle.set_defaults(func=cmd_oracle)
    return parser


def report(results) -> int:
    """Print one line per invariant; nonzero when any failed."""
    for result in results:
        print(result.line())
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAILED


def cmd_verify(args) -> int:
    logger = get_logger("ncergo.main")
    seed = args.seed
    if seed is None:
        seed = load_config(args.config).seed if args.config else 0
    logger.info("Running verification", suites=args.suite or "all", seed=seed)
    service = VerificationService(seed=seed, truncation=default_truncation())
    return report(service.run(args.suite))


def cmd_table(args) -> int:
    logger = get_logger("ncergo.main")
    config = load_config(args.config)
    rows = ExperimentService().table(args.cmd, config)
    storage = StorageService()
    provenance = Provenance.for_run(args.cmd, args.config, config.seed, len(rows))
    path = storage.save_table(storage.to_frame(rows), args.out, provenance)
    logger.info("Table written", subcommand=args.cmd, out=str(path), rows=len(rows))
    return EXIT_OK


def cmd_oracle(args) -> int:
    theta = parse_scalar(args.theta)
    truncation = args.truncation if args.truncation is not None else default_truncation()
    if args.samples < 1:
        raise ParameterError(f"--samples must be positive, got {args.samples}")
    service = VerificationService(seed=args.seed, truncation=truncation)
    return report(service.oracle_equivalence(theta, truncation, args.samples, args.seed))


def main(argv=None) -> int:
    """Main CLI entry point with argument parsing."""
    load_env_config()
    parser = build_parser()
    args = parser.parse_args(argv)

    level = args.log_level or os.getenv("NCERGO_LOG_LEVEL", "WARNING").upper()
    if level not in LOG_LEVELS:
        parser.error(f"invalid log level '{level}'")
    setup_logging(level=level)
    logger = get_logger("ncergo.main")

    try:
        logger.info("Starting ncergo", subcommand=args.cmd)
        return args.func(args)
    except ConfigParseError as e:
        logger.error("Config parse error", error=str(e))
        print(f"error: {args.config}: {e}" if getattr(args, "config", None) else f"error: {e}",
              file=sys.stderr)
        return EXIT_USAGE
    except (ParameterError, TruncationRangeError) as e:
        logger.error("Invalid parameters", error=str(e))
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except StorageError as e:
        logger.error("Storage failed", error=str(e))
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FAILED
    except OSError as e:
        logger.error("Cannot read input", error=str(e), path=e.filename)
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except KeyboardInterrupt:
        logger.info("ncergo interrupted by user")
        return EXIT_INTERRUPTED


if __name__ == '__main__':
    sys.exit(main())
