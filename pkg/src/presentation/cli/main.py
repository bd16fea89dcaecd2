"""
Main CLI Entry Point

Command-line interface for the cyclic and Milnor K-theory toolkit.

This is the composition root: services are wired here, reports are
formatted here, and exceptions are mapped to exit codes here.
"""

import argparse
import logging
import sys
import time
from typing import List, Optional, Sequence

from ...application.services.cyclic_service import HC_ROUTES
from ...application.services.verification_service import SUITES
from ...domain.exceptions import DomainException, UsageError
from ...domain.limits import capacity_scope
from ...domain.models.report import Report
from ...infrastructure.config.settings import Settings, parse_capacity

EXIT_ERROR = 1
EXIT_USAGE = 64

# Configure logging
logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
    stream=sys.stderr,
)
logger = logging.getLogger(__name__)


class _ArgumentParser(argparse.ArgumentParser):
    """ArgumentParser that raises UsageError instead of exiting with status 2."""

    def error(self, message: str):
        raise UsageError(message)


def _positive(value: str) -> int:
    try:
        return parse_capacity(value, "--capacity")
    except UsageError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def build_parser() -> argparse.ArgumentParser:
    """
    Command-line arguments for every subcommand.

    Global options come before the subcommand.
    """
    parser = _ArgumentParser(
        prog='cm',
        description='Exact cyclic homology, Kähler differentials and Milnor K-theory of finite algebras',
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  # Milnor K_2 of F_2[x]/x^2
  cm milnor configs/z2x.json --n 2

  # Relative K_2 against relative differentials for F_7[e]/e^2, written as JSON
  cm --json out.json verify goodwillie-milnor configs/f7eps.json --n 1

  # HC_1 against Omega^1/dR
  cm verify hc1 configs/qxy.json configs/qeps.json

  # Relative negative cyclic homology with 5 columns
  cm hn configs/qeps.json --n 1 --depth 5 --relative

  # Pages of a random bicomplex
  cm --format json specseq-demo --seed 3
        """
    )
    parser.add_argument('--json', dest='json_path', metavar='PATH',
                        help='Write the JSON report to PATH')
    parser.add_argument('--format', choices=('text', 'json'), default='text',
                        help='Report format on stdout (default: text)')
    parser.add_argument('--capacity', type=_positive, metavar='N',
                        help='Entry budget scaling every capacity limit (overrides CM_CAPACITY)')
    parser.add_argument('--timing', action='store_true',
                        help='Record runtime_ms in the report')
    parser.add_argument('--verbose', '-v', action='store_true',
                        help='Enable verbose logging')

    commands = parser.add_subparsers(dest='command', metavar='COMMAND')
    commands.required = True

    def with_config(name: str, help_text: str) -> argparse.ArgumentParser:
        sub = commands.add_parser(name, help=help_text)
        sub.add_argument('config', help='Algebra config (JSON)')
        return sub

    algebra = with_config('algebra', 'Summarize an algebra: units, residue fields, stability')
    algebra.add_argument('--stability', type=int, metavar='M', help='Check m-fold stability')

    omega = with_config('omega', 'Kähler differentials Omega^n')
    omega.add_argument('--n', type=int, required=True)
    omega.add_argument('--relative', action='store_true', help='Relative to the ideal')
    omega.add_argument('--mod-exact', action='store_true', help='Quotient by exact forms')

    hh = with_config('hh', 'Hochschild homology HH_n')
    hh.add_argument('--n', type=int, required=True)
    hh.add_argument('--relative', action='store_true')

    hc = with_config('hc', 'Cyclic homology HC_n')
    hc.add_argument('--n', type=int, required=True)
    hc.add_argument('--relative', action='store_true')
    hc.add_argument('--route', choices=HC_ROUTES, default='cc', help='Bicomplex to use (default: cc)')

    hn = with_config('hn', 'Truncated negative cyclic homology HN_n')
    hn.add_argument('--n', type=int, required=True)
    hn.add_argument('--depth', type=int, required=True, metavar='M')
    hn.add_argument('--relative', action='store_true')

    milnor = with_config('milnor', 'Milnor K-group K^M_n')
    milnor.add_argument('--n', type=int, required=True)
    milnor.add_argument('--relative', action='store_true')
    milnor.add_argument('--extra-relations', action='store_true',
                        help='Add the redundant {u,-u} and anticommutativity relations')
    milnor.add_argument('--full', action='store_true', help='Unoptimized presentation on all units')

    dennis_stein = with_config('dennis-stein', 'Dennis-Stein group D_2')
    dennis_stein.add_argument('--relative', action='store_true')

    dlog = with_config('dlog', 'dlog of a symbol of units in Omega^n')
    dlog.add_argument('--symbol', required=True, help='Comma-separated units, e.g. "1+e,3"')

    verify = commands.add_parser('verify', help='Run a verification suite')
    verify.add_argument('suite', choices=SUITES)
    verify.add_argument('configs', nargs='*', metavar='CONFIG')
    verify.add_argument('--n', type=int)
    verify.add_argument('--depth', type=int, metavar='M')
    verify.add_argument('--seed', type=int, metavar='S')
    verify.add_argument('--count', type=int, metavar='K')

    demo = commands.add_parser('specseq-demo', help='Pages of a random bicomplex')
    demo.add_argument('--seed', type=int, default=0, metavar='S')
    demo.add_argument('--max-page', type=int, default=6, metavar='R')
    return parser


def parse_arguments(argv: Optional[Sequence[str]] = None) -> argparse.Namespace:
    return build_parser().parse_args(argv)


def _emit(report: Report, args: argparse.Namespace) -> None:
    from ..formatters.console_formatter import ConsoleFormatter
    from ..formatters.json_formatter import JSONFormatter

    json_formatter = JSONFormatter()
    if args.format == 'json':
        print(json_formatter.format(report))
    else:
        print(ConsoleFormatter().format(report))
    if args.json_path:
        json_formatter.write_to_file(report, args.json_path)


def _write_failure(args: argparse.Namespace, message: str) -> None:
    if not getattr(args, 'json_path', None):
        return
    from ..formatters.json_formatter import JSONFormatter

    check = getattr(args, "suite", None) or args.command
    report = Report.failure(check, {"argv": getattr(args, "argv", [])}, message)
    try:
        JSONFormatter().write_to_file(report, args.json_path)
    except OSError as e:
        logger.error(f"could not write error report: {e}")


def run(argv: Optional[Sequence[str]] = None) -> int:
    """
    Parse argv, run one command and emit its report.

    Returns:
        0 for yes, 2 for no, 1 on errors, 64 on usage errors
    """
    arguments: List[str] = list(sys.argv[1:] if argv is None else argv)
    try:
        args = parse_arguments(arguments)
    except UsageError as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as e:
        return int(e.code or 0)
    args.argv = arguments

    if args.verbose:
        logging.getLogger().setLevel(logging.DEBUG)

    from ...infrastructure.container import build_services
    from .commands import CommandRunner

    try:
        settings = Settings.from_env().with_capacity(args.capacity)
        runner = CommandRunner(build_services())
        started = time.perf_counter()
        with capacity_scope(settings.limits):
            report = runner.run(args)
        if args.timing:
            report = report.with_runtime(round((time.perf_counter() - started) * 1000, 3))
        _emit(report, args)
        logger.info(f"{report.check}: {report.verdict.value}")
        return report.exit_code

    except UsageError as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (DomainException, OSError) as e:
        logger.error(f"{args.command} failed: {e}", exc_info=True)
        print(f"Error: {e}", file=sys.stderr)
        _write_failure(args, str(e))
        return EXIT_ERROR


def main():
    """Console-script entry point."""
    sys.exit(run())


if __name__ == '__main__':
    main()
