"""
the ``parchsh`` command-line interface
"""
import sys
from argparse import ArgumentParser

from .. import base
from ..base import ParchshSystem
from ..base.config import ConfigurationException, configure_logging
from ..strategy import StrategyError, BitStringError
from ..game import GameError
from ..verify import VerificationError, JunkExtractionError
from .config import COMMANDS, FORMATS, COVERAGES, build_config
from .commands import COMMAND_FUNCS, EXIT_OK, EXIT_VIOLATION, EXIT_CONFIG, EXIT_VALIDATION

__all__ = [ 'define_opts', 'main', 'system' ]

system = ParchshSystem("Command-Line Interface", "cli")

description = \
"""simulate and verify self-testing of n/2 maximally entangled pairs through the parallel
CHSH game.
"""

epilog = """exit status: 0 on success, 1 if a certified bound or search guarantee is violated,
2 for an invalid configuration, 3 if a strategy fails validation.  The SEED environment
variable supplies the seed when --seed is not given.
"""

_command_help = {
    "value":    "print the exact game value of a strategy",
    "simulate": "estimate the game value by simulating the referee",
    "certify":  "run the full self-test and report measured vs. certified bounds",
    "sweep":    "certify a grid of noisy strategies and emit one CSV row per grid point",
    "logset":   "print the logarithmic-size separating question set",
    "strategy": "write a generated strategy as a JSON document"
}

def _common_opts():
    parser = ArgumentParser(add_help=False)
    parser.add_argument('--n', type=int, dest='n', metavar='N', default=None,
                        help="the number of tested qubits (even; n/2 subtests)")
    parser.add_argument('--noise', type=str, dest='noise', default=None,
                        choices=["none", "bob-rotation", "partial-entanglement"],
                        help="the perturbation applied to the ideal strategy")
    parser.add_argument('--noise-param', type=float, dest='noise_param', metavar='VAL',
                        default=None, help="the noise model's parameter (radians)")
    parser.add_argument('--strategy', type=str, dest='strategy', metavar='FILE', default=None,
                        help="read the strategy from a JSON strategy document")
    parser.add_argument('--rounds', type=int, dest='rounds', metavar='R', default=None,
                        help="the number of referee rounds to simulate")
    parser.add_argument('--seed', type=int, dest='seed', metavar='S', default=None,
                        help="the seed for all sampling")
    parser.add_argument('--out', type=str, dest='out', metavar='FILE', default=None,
                        help="write output to FILE instead of standard out")
    parser.add_argument('--format', type=str, dest='format', choices=FORMATS, default=None,
                        help="the output format (default: csv)")
    parser.add_argument('--coverage', type=str, dest='coverage', choices=COVERAGES,
                        default=None, help="enumerate or sample the general conditions "+
                                           "(default: exhaustive iff n <= 6)")
    parser.add_argument('--samples', type=int, dest='samples', metavar='K', default=None,
                        help="the number of sampled (s, t) pairs under sampled coverage")
    parser.add_argument('--workers', type=int, dest='workers', metavar='W', default=None,
                        help="the number of worker threads / sample streams")
    parser.add_argument('--ns', type=int, dest='ns', metavar='N', nargs='*', default=None,
                        help="the values of n to sweep")
    parser.add_argument('--etas', type=float, dest='etas', metavar='VAL', nargs='*',
                        default=None, help="the noise parameters to sweep")
    parser.add_argument('--config', type=str, dest='config', metavar='FILE', default=None,
                        help="a YAML or JSON configuration file")
    parser.add_argument('--logfile', type=str, dest='logfile', metavar='FILE', default=None,
                        help="also write log messages to FILE")
    parser.add_argument('-v', '--verbose', dest='verbose', action='store_true', default=False,
                        help="print debug messages to standard error")
    parser.add_argument('-q', '--quiet', dest='quiet', action='store_true', default=False,
                        help="print no log messages to standard error")
    return parser

def define_opts(progname=None):
    parser = ArgumentParser(progname, None, description, epilog)
    parser.add_argument("--version", action="version",
                        version="%(prog)s " + system.system_version)
    common = _common_opts()
    subparsers = parser.add_subparsers(dest='command', metavar='COMMAND')
    subparsers.required = True
    for cmd in COMMANDS:
        subparsers.add_parser(cmd, parents=[common], help=_command_help[cmd],
                              description=_command_help[cmd])
    return parser

def main(args, out=None) -> int:
    """
    run the command line and return the exit status
    :param args:  the command-line arguments (excluding the program name)
    :param out:   the stream to write to when --out is not given (default: standard out)
    """
    parser = define_opts("parchsh")
    try:
        opts = parser.parse_args(args)
    except SystemExit as ex:
        return ex.code if isinstance(ex.code, int) else EXIT_CONFIG

    system.make_global()
    log = system.getSysLogger()
    try:
        cfg = build_config(opts)
    except ConfigurationException as ex:
        print("%s: %s" % (parser.prog, str(ex)), file=sys.stderr)
        return EXIT_CONFIG

    configure_logging(cfg.settings, addstderr=True)
    log.debug("running %s with n=%s, noise=%s(%s)", cfg.command, cfg.n, cfg.noise,
              cfg.noise_param)

    fd = None
    try:
        if cfg.out:
            fd = open(cfg.out, 'w')
        return COMMAND_FUNCS[cfg.command](cfg, fd or out or sys.stdout)

    except (ConfigurationException, BitStringError) as ex:
        log.error(str(ex))
        return EXIT_CONFIG
    except StrategyError as ex:
        log.error(str(ex))
        return EXIT_VALIDATION
    except JunkExtractionError as ex:
        log.error("%s failed: %s", cfg.command, str(ex))
        return EXIT_VIOLATION
    except (GameError, VerificationError) as ex:
        # a precondition of the command, such as a size limit, was not met
        log.error(str(ex))
        return EXIT_CONFIG
    except base.ParchshException as ex:
        log.error("%s failed: %s", cfg.command, str(ex))
        return EXIT_VIOLATION
    except IOError as ex:
        log.error("%s: %s", cfg.out, str(ex))
        return EXIT_CONFIG
    finally:
        if fd:
            fd.close()

if __name__ == '__main__':
    sys.exit(main(sys.argv[1:]))
