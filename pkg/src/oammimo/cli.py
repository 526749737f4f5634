"""Command-line entry point: ``oammimo {fig2,fig3,fig4,props,all}``.

Exit codes: 0 success, 2 configuration error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import logging
import sys

from .config import ScenarioConfig, load_scenario
from .errors import ConfigError, DomainError, NotPSDError, ShapeError
from .experiments import RUNNERS
from .output import write_outputs

log = logging.getLogger("oammimo")

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERIC = 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="oammimo",
        description="Compare OAM mode multiplexing with correlated MIMO on aligned UCAs.",
    )
    parser.add_argument("command", choices=[*RUNNERS, "all"])
    parser.add_argument("--config", help="scenario JSON file (defaults are used otherwise)")
    parser.add_argument("--out", help="output directory (overrides out_dir)")
    parser.add_argument("--seed", type=int, help="64-bit Monte Carlo seed")
    parser.add_argument("--draws", type=int, help="Monte Carlo draws for ergodic capacity")
    parser.add_argument("--svg", action="store_true", help="also write an SVG plot per table")
    parser.add_argument("-v", "--verbose", action="store_true")
    return parser


def _resolve_config(args) -> ScenarioConfig:
    cfg = load_scenario(args.config) if args.config else ScenarioConfig()
    overrides = {}
    if args.out is not None:
        overrides["out_dir"] = args.out
    if args.seed is not None:
        overrides["seed"] = args.seed
    if args.draws is not None:
        overrides["draws"] = args.draws
    if args.svg:
        overrides["svg"] = True
    return cfg.replace(**overrides) if overrides else cfg


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        cfg = _resolve_config(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    names = list(RUNNERS) if args.command == "all" else [args.command]
    try:
        for name in names:
            table = RUNNERS[name](cfg)
            for path in write_outputs(table, cfg.out_dir, cfg.svg):
                log.info("wrote %s", path)
                print(path)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (NotPSDError, DomainError, ShapeError, FloatingPointError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return 1
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
