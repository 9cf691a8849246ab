"""
Command-line entry point for the multicover engine.
Loads a run description, executes it and prints a JSON report.

Usage:
    python -m src.runner.main solve --spec run.json
    python -m src.runner.main corpus --points 3 --covers 2 --members 3 --horizon 3
"""

import argparse
import json
import logging
import sys
from typing import List, Optional

from dotenv import load_dotenv
from pydantic import ValidationError

from ..errors import InvalidSpaceError, MulticoverError, SchemaError
from .commands import run
from .config_manager import DEFAULT_CONFIG_DIR, ConfigManager
from .corpus import CorpusSize, generate
from .loader import load_json, parse_run_spec, schema_error
from .schemas import Command, EngineSettings, GameSpec, Report

# Load environment variables
load_dotenv()

EXIT_SCHEMA = 3
EXIT_OTHER = 4


def setup_logging(level: str = "INFO", log_format: str = "text", log_file: Optional[str] = None):
    """Configure logging based on settings."""
    log_level = getattr(logging, level.upper(), logging.INFO)
    handler = logging.FileHandler(log_file) if log_file else logging.StreamHandler(sys.stderr)

    if log_format == "json":
        # JSON logging format
        import time

        class JsonFormatter(logging.Formatter):
            def format(self, record):
                log_data = {
                    "timestamp": time.strftime(
                        "%Y-%m-%dT%H:%M:%SZ", time.gmtime(record.created)
                    ),
                    "level": record.levelname,
                    "logger": record.name,
                    "message": record.getMessage(),
                }
                if hasattr(record, "fingerprint"):
                    log_data["fingerprint"] = record.fingerprint
                if hasattr(record, "duration_ms"):
                    log_data["duration_ms"] = record.duration_ms
                return json.dumps(log_data)

        handler.setFormatter(JsonFormatter())
    else:
        # Text logging format
        handler.setFormatter(
            logging.Formatter(
                "%(asctime)s - %(name)s - %(levelname)s - %(message)s",
                datefmt="%Y-%m-%d %H:%M:%S",
            )
        )

    logging.root.handlers = [handler]
    logging.root.setLevel(log_level)


logger = logging.getLogger(__name__)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="multicover",
        description="Solve, play and verify cover-boundedness games on multicovered spaces",
    )
    parser.add_argument("--config-dir", default=DEFAULT_CONFIG_DIR, help="Directory holding engine.yml")
    parser.add_argument("--limit-states", type=int, help="Solver memo entries allowed")
    parser.add_argument("--probe-box", type=int, help="Default lattice probe box half width")
    parser.add_argument("--seed", type=int, help="Seed for sampled runs")
    parser.add_argument("--output", help="Write the report (or corpus files) here instead of stdout")
    parser.add_argument("--json", action="store_true", default=True, help="JSON report (always on)")
    verbs = parser.add_subparsers(dest="verb", required=True)

    for command in Command:
        verb = verbs.add_parser(command.value, help=f"Run a {command.value} description")
        verb.add_argument("--spec", required=True, help="JSON run description")

    corpus = verbs.add_parser("corpus", help="Enumerate small instances and optionally solve them")
    corpus.add_argument("--points", type=int, required=True)
    corpus.add_argument("--covers", type=int, default=1)
    corpus.add_argument("--members", type=int, default=3)
    corpus.add_argument("--horizon", type=int, help="Solve every instance at this horizon")
    corpus.add_argument("--budget", type=int, default=1, help="Per-round budget for the sweep")
    corpus.add_argument("--sample", type=int, help="Keep this many instances")
    return parser


def load_settings(args: argparse.Namespace) -> EngineSettings:
    settings = ConfigManager(args.config_dir).load_settings()
    if args.limit_states is not None:
        settings.solver.state_limit = args.limit_states
    if args.probe_box is not None:
        settings.probes.probe_box = args.probe_box
    return settings


def execute(args: argparse.Namespace, settings: EngineSettings) -> Report:
    if args.verb == "corpus":
        size = CorpusSize(args.points, args.covers, args.members)
        game = GameSpec(horizon=args.horizon, budget=args.budget) if args.horizon is not None else None
        return generate(size, settings, game, args.sample, args.seed or 0, args.output)

    data = load_json(args.spec)
    if isinstance(data, dict):
        data.setdefault("command", args.verb)
        if args.seed is not None:
            data["seed"] = args.seed
    spec = parse_run_spec(data)
    if spec.command.value != args.verb:
        raise SchemaError(f"description is for {spec.command.value}, not {args.verb}", "command")
    return run(spec, settings)


def emit(report: Report, output: Optional[str]) -> None:
    text = json.dumps(report.model_dump(mode="json"), sort_keys=True, indent=2)
    if output:
        with open(output, 'w') as f:
            f.write(text + "\n")
    else:
        print(text)


def main(argv: Optional[List[str]] = None) -> int:
    """Entry point; returns the process exit code."""
    args = build_parser().parse_args(argv)
    try:
        settings = load_settings(args)
    except ValueError as e:
        setup_logging()
        logger.error(str(e))
        return EXIT_SCHEMA
    setup_logging(settings.logging.level, settings.logging.format, settings.logging.file)

    try:
        report = execute(args, settings)
    except (SchemaError, InvalidSpaceError) as e:
        logger.error(f"Invalid input: {e}")
        return EXIT_SCHEMA
    except ValidationError as e:
        logger.error(f"Invalid input: {schema_error(e)}")
        return EXIT_SCHEMA
    except (MulticoverError, OSError) as e:
        logger.error(f"Run failed: {e}")
        return EXIT_OTHER
    except Exception as e:
        logger.exception(f"Unexpected error: {e}")
        return EXIT_OTHER

    # Corpus files go to --output, the report to stdout.
    emit(report, None if args.verb == "corpus" else args.output)
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
