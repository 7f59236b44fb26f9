"""Command-line experiment runner.

Exit codes: 0 success, 2 invalid configuration, 3 numerical guard tripped
(for example a singular equivalent spectrum), 4 I/O failure.
"""

import argparse
import json
import sys
from pathlib import Path

from .config import ConfigError, load_config, validate_config
from .experiments import run_experiment, write_design_artifacts
from .receiver import SpectrumSingularError

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3
EXIT_IO = 4


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ofdmradar",
        description="CP-OFDM MIMO radar experiments: waveform design, "
        "range reconstruction, baselines, and pointing-error studies",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="run an experiment and write its artifacts")
    run_p.add_argument("--config", required=True, type=Path, help="JSON run configuration")
    run_p.add_argument("--out", required=True, type=Path, help="output directory")
    run_p.add_argument("--seed", type=int, default=None, help="override noise.seed")
    run_p.add_argument("--trials", type=int, default=None, help="override noise.trials")

    val_p = sub.add_parser("validate", help="check a configuration without running")
    val_p.add_argument("--config", required=True, type=Path)

    des_p = sub.add_parser("design", help="emit the designed waveforms only")
    des_p.add_argument("--config", required=True, type=Path)
    des_p.add_argument("--out", required=True, type=Path)
    return parser


def _cmd_validate(args) -> int:
    try:
        text = args.config.read_text(encoding="utf-8")
    except OSError as exc:
        print(f"error: cannot read {args.config}: {exc}", file=sys.stderr)
        return EXIT_IO
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        print(
            f"config: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}",
            file=sys.stderr,
        )
        return EXIT_CONFIG
    diagnostics = validate_config(doc)
    for diag in diagnostics:
        print(diag, file=sys.stderr)
    if diagnostics:
        return EXIT_CONFIG
    print("config ok")
    return EXIT_OK


def _cmd_run(args) -> int:
    cfg = load_config(args.config).with_overrides(seed=args.seed, trials=args.trials)
    run_experiment(cfg, args.out)
    written = sorted(p.name for p in args.out.iterdir() if p.is_file())
    print(f"wrote {len(written)} files to {args.out}: " + ", ".join(written))
    return EXIT_OK


def _cmd_design(args) -> int:
    cfg = load_config(args.config)
    files = write_design_artifacts(cfg, args.out)
    print(f"wrote {len(files)} files to {args.out}: " + ", ".join(sorted(files)))
    return EXIT_OK


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        if args.command == "validate":
            return _cmd_validate(args)
        if args.command == "run":
            return _cmd_run(args)
        return _cmd_design(args)
    except ConfigError as exc:
        for diag in exc.diagnostics:
            print(diag, file=sys.stderr)
        return EXIT_CONFIG
    except SpectrumSingularError as exc:
        print(f"numerical guard: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
