"""
Command-line front end.

::

    sta-phase phases --scenario loop.json --steps 10000 --formula both \\
        --out loop.csv --format csv
    sta-phase verify [--tol 1e-8]
    sta-phase table

Exit codes: 0 success, 2 input error, 3 numerical failure during integration,
4 verification failure.
"""

import argparse
import json
import logging
import sys

from . import _settings
from ._version import __version__
from .algorithms.ga_core import format_cayley_table
from .algorithms.phase import integrate_phases
from .errors import IntegrationError, ScenarioError
from .tools.report import FORMATS, write_report
from .tools.scenarios import build_trajectory, load_scenario
from .tools.verification import outcomes_to_dict, run_checks

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_NUMERIC = 3
EXIT_VERIFY = 4


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage already; keep the message on stderr
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, '%s: error: %s\n' % (self.prog, message))


def build_parser():
    parser = _Parser(prog='sta-phase',
                     description='Dynamic and geometric phases of Dirac '
                                 'spinors in the spacetime algebra.')
    parser.add_argument('--version', action='version',
                        version='%(prog)s ' + __version__)
    parser.add_argument('-v', '--verbose', action='count', default=0,
                        help='INFO logging; repeat for DEBUG')
    parser.add_argument('-q', '--quiet', action='store_true',
                        help='only log errors')
    sub = parser.add_subparsers(dest='command', metavar='command',
                                parser_class=_Parser)
    sub.required = True

    phases = sub.add_parser('phases', help='integrate the phases of a '
                                           'scenario and write a report')
    phases.add_argument('--scenario', required=True,
                        help='scenario JSON file')
    phases.add_argument('--steps', type=int, default=None,
                        help="integration steps (default: the scenario's "
                             "'steps')")
    phases.add_argument('--formula', choices=_settings.FORMULAS,
                        default='both', help='which local rates to integrate')
    phases.add_argument('--out', required=True,
                        help='report file; a bare name goes to $%s when set'
                             % _settings.OUTPUT_DIR_VARIABLE)
    phases.add_argument('--format', choices=FORMATS, default='csv',
                        dest='fmt', help='report format')
    phases.add_argument('--integrator', choices=_settings.INTEGRATORS,
                        default=_settings.DEFAULT_INTEGRATOR)
    phases.add_argument('--proper-time', action='store_true',
                        help='report rates per unit proper time')
    phases.set_defaults(func=cmd_phases)

    verify = sub.add_parser('verify', help='run the self-test suite')
    verify.add_argument('--tol', type=float, default=None,
                        help='override every check tolerance')
    verify.add_argument('--json', action='store_true',
                        help='print the outcome as JSON')
    verify.set_defaults(func=cmd_verify)

    table = sub.add_parser('table', help='print the signed Cayley table')
    table.set_defaults(func=cmd_table)
    return parser


def _configure_logging(verbose, quiet):
    if quiet:
        level = logging.ERROR
    elif verbose >= 2:
        level = logging.DEBUG
    elif verbose == 1:
        level = logging.INFO
    else:
        level = logging.WARNING
    logging.basicConfig(level=level, stream=sys.stderr,
                        format='%(levelname)s %(name)s: %(message)s')


def cmd_phases(args):
    try:
        spec = load_scenario(args.scenario)
    except ScenarioError as err:
        logger.error('%s: %s', args.scenario, err)
        return EXIT_INPUT
    steps = args.steps if args.steps is not None else spec.steps
    if steps < 2:
        logger.error('--steps must be at least 2, got %d', steps)
        return EXIT_INPUT
    traj = build_trajectory(spec)
    try:
        report = integrate_phases(traj, steps=steps, formula=args.formula,
                                  integrator=args.integrator,
                                  proper_time=args.proper_time)
    except IntegrationError as err:
        logger.error('integration failed at %s', err)
        return EXIT_NUMERIC
    try:
        write_report(report, args.out, args.fmt)
    except OSError as err:
        logger.error('cannot write %s: %s', args.out, err.strerror)
        return EXIT_INPUT
    return EXIT_OK


def cmd_verify(args):
    try:
        outcomes = run_checks(tolerance=args.tol)
    except ValueError as err:
        logger.error('%s', err)
        return EXIT_INPUT
    summary = outcomes_to_dict(outcomes)
    if args.json:
        print(json.dumps(summary, indent=2))
    else:
        for o in outcomes:
            print('%-28s %s  %.3e  (tol %.1e)'
                  % (o.name, 'pass' if o.passed else 'FAIL', o.max_residual,
                     o.tolerance))
        if summary['failures']:
            print('failed: %s' % ', '.join(summary['failures']))
    return EXIT_OK if summary['passed'] else EXIT_VERIFY


def cmd_table(args):
    sys.stdout.write(format_cayley_table())
    return EXIT_OK


def main(argv=None):
    """
    Entry point.

    Args:
        argv: Argument list without the program name. Default is `None` (use
            ``sys.argv[1:]``)

    Returns:
        int: Exit code
    """

    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exit_:
        return exit_.code
    _configure_logging(args.verbose, args.quiet)
    return args.func(args)


if __name__ == '__main__':
    sys.exit(main())
