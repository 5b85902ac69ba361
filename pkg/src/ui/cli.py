import argparse
import json
import logging
import sys
import numpy as np
from repositories.config_utilities import RunConfig, load_run_config, parse_parameter, save_run_config
from services.checks import SUITES, invariant_checks as default_invariant_checks
from services.errors import (DomainError, HahnSystemError, IndexRangeError, ParameterDegeneracyError,
                             ParameterRegimeError, SizeMismatchError)
from services.figures import figure_data as default_figure_data
from utilities.check_summary import CheckSummary

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_NUMERICAL = 3

USAGE_ERRORS = (ParameterRegimeError, ParameterDegeneracyError, IndexRangeError, SizeMismatchError, DomainError)
TARGETS = {"figure": range(1, 8), "phase": range(0, 4), "spectrum": range(0, 4)}
FORMATS = ("csv", "json")


class UsageError(Exception):
    """Command line input that cannot be turned into a run.
    """


def _plain(value):
    # numpy scalars to Python values, NaN and infinities to null
    if isinstance(value, dict):
        return {str(key): _plain(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(item) for item in value]
    if isinstance(value, np.generic):
        value = value.item()
    if isinstance(value, float) and not np.isfinite(value):
        return None
    return value


def _add_shared_options(parser, suppress):
    default = argparse.SUPPRESS if suppress else None
    parser.add_argument("--param", action="append", metavar="KEY=VALUE",
                        default=default, help="override a default parameter, repeatable")
    parser.add_argument("--out", metavar="PATH", default=default, help="output file, stdout if omitted")
    parser.add_argument("--format", choices=FORMATS, default=default, help="output format, csv by default")
    parser.add_argument("--config", metavar="PATH", default=default, help="run configuration to load")
    parser.add_argument("--emit-config", metavar="PATH", default=default,
                        help="write the resolved run configuration")
    parser.add_argument("--verbose", action="store_true",
                        default=argparse.SUPPRESS if suppress else False, help="log at DEBUG level")


def build_parser():
    """Function builds the argument parser with the figure, phase, spectrum,
    reconstruct and check subcommands.
    """

    parser = argparse.ArgumentParser(
        prog="hahn", description="Continuous Hahn quantum system: figures, phase shifts, spectra, "
                                 "potential reconstruction and invariant checks.")
    _add_shared_options(parser, suppress=False)
    commands = parser.add_subparsers(dest="command")
    figure = commands.add_parser("figure", help="data of figure 1..7")
    figure.add_argument("target", type=int, choices=TARGETS["figure"], metavar="ID")
    phase = commands.add_parser("phase", help="phase shift sweep of example 0..3")
    phase.add_argument("target", type=int, choices=TARGETS["phase"], metavar="EXAMPLE")
    spectrum = commands.add_parser("spectrum", help="discrete spectrum of example 0..3")
    spectrum.add_argument("target", type=int, choices=TARGETS["spectrum"], metavar="EXAMPLE")
    commands.add_parser("reconstruct", help="potential reconstruction in one basis configuration")
    check = commands.add_parser("check", help="run invariant check suites")
    check.add_argument("target", nargs="?", default="all", choices=SUITES + ("all",), metavar="SUITE")
    for subparser in (figure, phase, spectrum, commands.choices["reconstruct"], check):
        _add_shared_options(subparser, suppress=True)
    return parser


class CommandLineInterface:
    """Class parses the command line, resolves the run configuration, calls the
    services and writes the data table or check report.
    """

    def __init__(self, figure_data=default_figure_data, invariant_checks=default_invariant_checks,
                 stdout=None):
        self.figure_data = figure_data
        self.invariant_checks = invariant_checks
        self.stdout = stdout
        self.parser = build_parser()

    def run(self, argv):
        """Method runs one command and returns its exit code: 0 success, 1 failed
        check, 2 usage error and 3 numerical failure.

        Args:
            argv (list): Arguments without the program name.

        Returns:
            int: Exit code.
        """

        try:
            args = self.parser.parse_args(argv)
        except SystemExit as exit_request:
            return EXIT_OK if exit_request.code in (0, None) else EXIT_USAGE
        self.configure_logging(args.verbose)
        try:
            config = self.resolve_config(args)
            return self.execute(config, args.emit_config)
        except UsageError as error:
            logger.error("usage error: %s", error)
            return EXIT_USAGE
        except USAGE_ERRORS as error:
            logger.error("%s: %s", type(error).__name__, error)
            return EXIT_USAGE
        except HahnSystemError as error:
            logger.error("%s: %s", type(error).__name__, error)
            return EXIT_NUMERICAL

    def configure_logging(self, verbose):
        root = logging.getLogger()
        if not root.handlers:
            logging.basicConfig(format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
        root.setLevel(logging.DEBUG if verbose else logging.WARNING)

    def resolve_config(self, args):
        """Method merges a loaded run configuration with the explicit flags; the
        flags win.

        Raises:
            UsageError: Missing command, unreadable config or malformed override.
        """

        loaded = RunConfig(command=None)
        if args.config:
            try:
                loaded = load_run_config(args.config)
            except (OSError, ValueError, KeyError) as error:
                raise UsageError(f"cannot read run configuration {args.config}: {error}") from error
        command = args.command or loaded.command
        if command is None:
            raise UsageError("a command or --config is required")
        if args.command:
            target = getattr(args, "target", None)
            target = None if target is None else str(target)
        else:
            target = loaded.target
        parameters = dict(loaded.parameters)
        try:
            parameters.update(parse_parameter(text) for text in args.param or [])
        except ValueError as error:
            raise UsageError(str(error)) from error
        output_format = args.format or loaded.output_format or "csv"
        if output_format not in FORMATS:
            raise UsageError(f"unknown format {output_format}")
        return RunConfig(command, target, parameters, args.out or loaded.output, output_format)

    def _target_number(self, config):
        try:
            number = int(config.target)
        except (TypeError, ValueError) as error:
            raise UsageError(f"{config.command} needs a numeric target, got {config.target}") from error
        if number not in TARGETS[config.command]:
            raise UsageError(f"unknown {config.command} target {number}")
        return number

    def execute(self, config, emit_config=None):
        """Method runs a resolved configuration.
        """

        if config.command == "check":
            return self.run_checks(config, emit_config)
        if config.command == "figure":
            table, metadata = self.figure_data.figure(self._target_number(config), config.parameters)
        elif config.command == "phase":
            table, metadata = self.figure_data.phase_table(self._target_number(config), config.parameters)
        elif config.command == "spectrum":
            table, metadata = self.figure_data.spectrum_table(self._target_number(config), config.parameters)
        elif config.command == "reconstruct":
            table, metadata = self.figure_data.reconstruction_table(config.parameters)
        else:
            raise UsageError(f"unknown command {config.command}")
        if emit_config:
            resolved = RunConfig(config.command, metadata["target"], metadata["parameters"],
                                 config.output, config.output_format)
            save_run_config(resolved, emit_config)
        logger.debug("%s %s produced %d rows", config.command, metadata["target"], len(table))
        self.write(self.render(table, metadata, config.output_format), config.output)
        return EXIT_OK

    def run_checks(self, config, emit_config=None):
        suite = config.target or "all"
        if suite not in SUITES + ("all",):
            raise UsageError(f"unknown check suite {suite}")
        if emit_config:
            save_run_config(RunConfig("check", suite, {}, config.output, "json"), emit_config)
        summary = CheckSummary(self.invariant_checks.run_suite(suite))
        self.write(summary.report(), config.output)
        for result in summary.results:
            if not result.passed:
                logger.error("invariant %s failed: achieved %s, tolerance %.3e",
                             result.name, result.achieved, result.tolerance)
        return EXIT_OK if summary.all_passed else EXIT_CHECK_FAILED

    def render(self, table, metadata, output_format):
        """Method formats a table as CSV with 17 significant digits, or as JSON with
        the metadata header.
        """

        if output_format == "csv":
            return table.to_csv(index=False, float_format="%.17g", lineterminator="\n")
        content = {"metadata": _plain(metadata), "columns": [str(column) for column in table.columns],
                   "rows": [_plain(list(row)) for row in table.itertuples(index=False, name=None)]}
        return json.dumps(content, indent=2, sort_keys=True) + "\n"

    def write(self, text, path):
        if path is None:
            (self.stdout or sys.stdout).write(text)
            return
        with open(path, "w", encoding="utf-8", newline="") as output_file:
            output_file.write(text)
