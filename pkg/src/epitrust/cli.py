"""Command line interface.

``epitrust simulate`` runs one configured batch (or a named preset) and
writes the CSV outputs into a directory; ``simulate`` is installed as a
direct alias of the subcommand. Exit codes: 0 on success, 2 on a
configuration problem, 1 on any runtime failure.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from ._version import __version__
from .config import merge_config_dicts, parse_config, read_config_file
from .errors import ConfigError, EpitrustError
from .experiments import PRESETS, execute_cells, run_preset


def _add_simulate_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", required=True, help="JSON config file")
    parser.add_argument("--preset", choices=sorted(PRESETS), help="named experiment preset")
    parser.add_argument("--seed", type=int, help="master seed (unsigned 64-bit)")
    parser.add_argument("--runs", type=int, help="override run count")
    parser.add_argument("--steps", type=int, help="override step count")
    parser.add_argument("--p-obj", type=float, dest="p_obj", help="override objective reliability")
    parser.add_argument("--out", default="out", help="output directory (default: out)")
    parser.add_argument("--threads", type=int, default=1, help="worker processes for the batch")
    parser.add_argument(
        "--dump-graphs", action="store_true", help="also write per-run edge lists under <out>/graphs/"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="epitrust")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    _add_simulate_args(sub.add_parser("simulate", help="run a batch and write CSV outputs"))
    return parser


def _cli_overrides(args: argparse.Namespace) -> dict:
    overrides = {}
    if args.seed is not None:
        overrides["master_seed"] = args.seed
    if args.runs is not None:
        overrides["runs"] = args.runs
    if args.steps is not None:
        overrides["steps"] = args.steps
    if args.p_obj is not None:
        overrides["p_obj"] = args.p_obj
    return overrides


def _run_simulate(args: argparse.Namespace) -> int:
    config_layer = read_config_file(args.config)
    overrides = _cli_overrides(args)
    out_dir = Path(args.out)
    if args.preset:
        written = run_preset(
            args.preset,
            out_dir,
            config_layer=config_layer,
            cli_overrides=overrides,
            n_jobs=args.threads,
            dump_graphs=args.dump_graphs,
        )
    else:
        config = parse_config(merge_config_dicts(config_layer, overrides))
        written = execute_cells(
            [config],
            ("agents", "runs", "summary"),
            out_dir,
            n_jobs=args.threads,
            dump_graphs=args.dump_graphs,
        )
    for path in written:
        print(path)
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "simulate":
            return _run_simulate(args)
        parser.error(f"unknown command {args.command!r}")
        return 2
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    except EpitrustError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 1


def simulate_main(argv=None) -> int:
    """Entry point for the bare ``simulate`` alias."""
    argv = sys.argv[1:] if argv is None else list(argv)
    return main(["simulate", *argv])


def main_entry() -> None:
    raise SystemExit(main())


def simulate_entry() -> None:
    raise SystemExit(simulate_main())
