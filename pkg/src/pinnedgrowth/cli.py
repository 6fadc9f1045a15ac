"""Command-line front end: ``run``, ``sweep`` and ``verify``.

Exit status: 0 on success, 1 when a verification check fails, 2 on usage
or configuration errors.  ``PINNEDGROWTH_WORKERS`` sets the worker count
for the pair-energy kernels.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import __version__
from .errors import PinnedGrowthError
from .exact import FIELDS, RATIONAL
from .kernels import default_workers
from .report import (
    FAMILIES,
    ExperimentConfig,
    dumps,
    error_report,
    rows_to_csv,
    run,
    sweep,
    sweep_row,
)
from .verify import SUITES, verify

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def _sizes(text: str):
    try:
        return [int(s) for s in text.split(",") if s.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad size list {text!r}")


def _add_set_options(p):
    p.add_argument("--family", choices=FAMILIES, default="interval")
    p.add_argument("--n", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--bound", type=int)
    p.add_argument("--base", help="geometric ratio, e.g. 2, 1/2 or 1+1i")
    p.add_argument("--field", choices=FIELDS, default=RATIONAL)
    p.add_argument("--input", dest="path", help="set literal file (one scalar per line)")
    p.add_argument("--cap-bruteforce", type=int, default=None,
                   help="largest |A| for the A^6 oracle (default 12)")
    p.add_argument("--cap-points", type=int, default=None,
                   help="largest |P| for line spectra and rectangle distances (default 1024)")
    p.add_argument("--out", help="write output here instead of stdout")
    p.add_argument("--format", choices=("json", "csv"), default=None)
    p.add_argument("--timing", action="store_true", help="print per-stage timings to stderr")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="pinnedgrowth", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p_run = sub.add_parser("run", help="compute every quantity for one set")
    _add_set_options(p_run)
    p_run.add_argument("--config", help="re-run the config embedded in a JSON report")

    p_sweep = sub.add_parser("sweep", help="one CSV row per size")
    _add_set_options(p_sweep)
    p_sweep.add_argument("--sizes", type=_sizes, required=True, help="ascending, e.g. 8,16,32")

    p_verify = sub.add_parser("verify", help="run an invariant suite over the built-in corpus")
    p_verify.add_argument("suite", choices=SUITES + ("all",))
    p_verify.add_argument("--quiet", action="store_true", help="print failures and the summary only")
    return parser


def _config_from_args(args) -> ExperimentConfig:
    values = {
        "family": args.family,
        "n": args.n,
        "base": args.base,
        "seed": args.seed,
        "bound": args.bound,
        "path": args.path,
        "field": args.field,
    }
    if args.cap_bruteforce is not None:
        values["cap_bruteforce"] = args.cap_bruteforce
    if args.cap_points is not None:
        values["cap_points"] = args.cap_points
    return ExperimentConfig(**values)


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _print_timings(timings: dict):
    for name, seconds in timings.items():
        print(f"timing {name}: {seconds:.3f}s", file=sys.stderr)


def cmd_run(args) -> int:
    config = None
    try:
        if args.config:
            embedded = json.loads(Path(args.config).read_text(encoding="utf-8"))
            config = ExperimentConfig.from_dict(embedded["config"])
        else:
            config = _config_from_args(args)
        timings = {}
        report = run(config, timings=timings)
    except (PinnedGrowthError, OSError, KeyError, TypeError, json.JSONDecodeError) as exc:
        _emit(dumps(error_report(config, exc)), args.out)
        return EXIT_USAGE
    if args.timing:
        _print_timings(timings)
    if args.format == "csv":
        _emit(rows_to_csv([sweep_row(report)]), args.out)
    else:
        _emit(dumps(report), args.out)
    return EXIT_OK


def cmd_sweep(args) -> int:
    config = _config_from_args(args)
    timings = {}
    try:
        rows = sweep(config, args.sizes, timings=timings)
    except PinnedGrowthError as exc:
        _emit(dumps(error_report(config, exc)), args.out)
        return EXIT_USAGE
    if args.timing:
        _print_timings(timings)
    if args.format == "json":
        _emit(json.dumps({"config": config.to_dict(), "rows": rows}, indent=2) + "\n", args.out)
    else:
        _emit(rows_to_csv(rows), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    suites = SUITES if args.suite == "all" else (args.suite,)
    failed = 0
    for suite in suites:
        checks = verify(suite)
        bad = [c for c in checks if not c.ok]
        failed += len(bad)
        for c in checks:
            if not (args.quiet and c.ok):
                print(c.line())
        print(f"{suite}: {len(checks) - len(bad)}/{len(checks)} checks passed")
    return EXIT_FAILED if failed else EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    logging.getLogger(__name__).info("workers=%d", default_workers())
    if args.command == "run":
        return cmd_run(args)
    if args.command == "sweep":
        return cmd_sweep(args)
    return cmd_verify(args)


if __name__ == "__main__":
    sys.exit(main())
