"""Command-line front end.

Verbs:

* ``interord list`` — show the built-in experiments.
* ``interord run NAME_OR_CONFIG`` — run a builtin or a JSON config file and
  write the artifact directory. Exit code 0 when every configured expectation
  held, 1 when a verdict violated an expectation, 2 on configuration errors.
* ``interord export-config NAME`` — print a builtin's configuration JSON.
* ``interord validate CONFIG`` — parse and validate a config file without
  running it.

Output root precedence for ``run``: ``--out`` flag, then the environment
variable named in ``--help``, then the config's ``output_dir``, then
``./interord_out``.
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from ._version import __version__
from .config import ConfigError, load_config, parse_config
from .experiments import (
    BUILTINS,
    OUTPUT_ROOT_ENV,
    builtin_names,
    get_builtin,
    run_experiment,
)

__all__ = ["main", "build_parser"]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="interord",
        description=(
            "Simulate aggregate interference from spatial point processes and "
            "check stochastic orderings empirically."
        ),
    )
    parser.add_argument(
        "--version", action="version", version=f"%(prog)s {__version__}"
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    sub.add_parser("list", help="list built-in experiments")

    run_p = sub.add_parser("run", help="run a builtin or a JSON config file")
    run_p.add_argument(
        "experiment", help="builtin name or path to a JSON config file"
    )
    run_p.add_argument(
        "--out",
        help=(
            "output root directory (overrides the "
            f"{OUTPUT_ROOT_ENV} environment variable and the config)"
        ),
    )
    run_p.add_argument(
        "--seed", type=int, help="override the config's master seed"
    )
    threads = run_p.add_mutually_exclusive_group()
    threads.add_argument(
        "--threads",
        type=int,
        metavar="K",
        help="number of worker processes (results are identical to --serial)",
    )
    threads.add_argument(
        "--serial", action="store_true", help="run in-process (the default)"
    )
    run_p.add_argument(
        "--quiet", action="store_true", help="suppress progress output"
    )

    export_p = sub.add_parser(
        "export-config", help="print a builtin's configuration JSON"
    )
    export_p.add_argument("name", help="builtin name")
    export_p.add_argument(
        "--out", help="write to this file instead of standard output"
    )

    val_p = sub.add_parser(
        "validate", help="validate a JSON config file without running it"
    )
    val_p.add_argument("config", help="path to a JSON config file")
    return parser


def _resolve_experiment(token: str):
    if token in BUILTINS:
        return get_builtin(token)
    path = Path(token)
    if path.exists():
        return load_config(path)
    raise ConfigError(
        f"{token!r} is neither a builtin nor an existing config file "
        f"(builtins: {', '.join(builtin_names())})"
    )


def _cmd_list() -> int:
    for name in builtin_names():
        raw = BUILTINS[name]
        print(f"{name}")
        print(f"    {raw.get('description', '').strip()}")
        print(
            f"    comparison={raw['comparison']} "
            f"n={raw['n_replicates']} seed={raw['seed']}"
        )
    return 0


def _cmd_run(args) -> int:
    cfg = _resolve_experiment(args.experiment)
    if args.seed is not None:
        if args.seed < 0:
            raise ConfigError(f"--seed must be >= 0, got {args.seed}")
        raw = dict(cfg.raw)
        raw["seed"] = args.seed
        cfg = parse_config(raw)
    n_jobs = 1
    if args.threads is not None:
        if args.threads < 1:
            raise ConfigError(f"--threads must be >= 1, got {args.threads}")
        n_jobs = args.threads
    echo = None if args.quiet else print
    started = time.monotonic()
    result = run_experiment(cfg, out_root=args.out, n_jobs=n_jobs, echo=echo)
    elapsed = time.monotonic() - started
    if echo:
        echo(f"finished {cfg.name} in {elapsed:.1f} s")
    if result.violations:
        for line in result.violations:
            print(f"FAILED EXPECTATION: {line}", file=sys.stderr)
        return 1
    return 0


def _cmd_export_config(args) -> int:
    cfg = get_builtin(args.name)
    text = cfg.export_json()
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


def _cmd_validate(args) -> int:
    path = Path(args.config)
    if not path.exists():
        raise ConfigError(f"config file not found: {path}")
    cfg = load_config(path)
    print(
        f"OK: {cfg.name} (comparison={cfg.comparison}, "
        f"scenarios={','.join(cfg.scenario_keys)}, "
        f"n_replicates={cfg.n_replicates}, hash={cfg.config_hash()[:12]})"
    )
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.verb == "list":
            return _cmd_list()
        if args.verb == "run":
            return _cmd_run(args)
        if args.verb == "export-config":
            return _cmd_export_config(args)
        if args.verb == "validate":
            return _cmd_validate(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    raise AssertionError("unreachable verb")  # pragma: no cover


if __name__ == "__main__":
    sys.exit(main())
