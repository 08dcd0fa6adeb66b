import argparse
import json
import logging
import sys

from application import RaySplitToolkit
from errors import RaySplitError, UsageError
from report.json_writer import normalise
from utility import SCHEMA_VERSION, RunConfig, get_service_name, get_thread_count, load_config_file

log = logging.getLogger(__name__)


class ArgumentParser(argparse.ArgumentParser):
    """Reports malformed arguments as UsageError instead of exiting."""

    def error(self, message):
        raise UsageError(message, prog=self.prog)


def float_list(text):
    try:
        return tuple(float(item) for item in text.split(',') if item.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f'expected comma-separated numbers, got {text!r}')


def _potential_options(parser):
    parser.add_argument('--b', type=float, help='step position in (0, 1), default 0.7')
    parser.add_argument('--lambda', dest='lam', type=float, help='scaling constant in [0, 1), default 0.5')


def _output_options(parser):
    parser.add_argument('--out', help="artifact path, '-' for stdout")
    parser.add_argument('--report', help='JSON report path')
    parser.add_argument('--format', choices=('csv', 'json'))


def _orbit_options(parser):
    parser.add_argument('--max-length', dest='max_length', type=int, help='longest primitive code, default 7')
    parser.add_argument('--count', type=int, help='number of shortest primitive orbits instead of a length')
    parser.add_argument('--nu-max', dest='nu_max', type=int, help='repetitions per orbit, default 10')


def build_parser(application_name: str):
    parser = ArgumentParser(prog=application_name, description='Exact ray-splitting spectra, orbits and sum rules.')
    parser.add_argument('--config', help='JSON file whose keys mirror the long flag names')
    parser.add_argument('--threads', type=int, help='worker threads, default from RAYSPLIT_THREADS or 1')
    subparsers = parser.add_subparsers(dest='subcommand', required=True)

    spectrum = subparsers.add_parser('spectrum', help='secular roots with completeness report')
    _potential_options(spectrum)
    spectrum.add_argument('--breakpoints', type=float_list, help='N-step breakpoints 0,b1,...,1')
    spectrum.add_argument('--lambdas', type=float_list, help='N-step scaling constants')
    spectrum.add_argument('--kmax', dest='k_max', type=float)
    _output_options(spectrum)

    orbits = subparsers.add_parser('orbits', help='primitive orbit table')
    _potential_options(orbits)
    _orbit_options(orbits)
    _output_options(orbits)

    trace = subparsers.add_parser('trace', help='trace-formula density')
    _potential_options(trace)
    _orbit_options(trace)
    trace.add_argument('--kmin', dest='k_min', type=float)
    trace.add_argument('--kmax', dest='k_max', type=float)
    trace.add_argument('--dk', type=float)
    trace.add_argument('--eta', type=float, help='imaginary shift of k')
    trace.add_argument('--resummed', action='store_const', const=True, help='sum repetitions geometrically')
    trace.add_argument('--k-domain', dest='k_domain', action='store_const', const=True,
                       help='density per unit k instead of per unit E')
    _output_options(trace)

    fourier = subparsers.add_parser('fourier', help='Fourier orbit spectroscopy')
    _potential_options(fourier)
    fourier.add_argument('--roots', dest='roots_path', help='spectrum CSV with a k column')
    fourier.add_argument('--n-roots', dest='n_roots', type=int, help='compute this many roots instead')
    fourier.add_argument('--kmax', dest='k_max', type=float)
    fourier.add_argument('--smin', dest='s_min', type=float)
    fourier.add_argument('--smax', dest='s_max', type=float)
    fourier.add_argument('--ds', type=float)
    fourier.add_argument('--threshold', type=float, help='peak threshold as a fraction of the root count')
    fourier.add_argument('--tolerance', type=float, help='match tolerance, default 4 pi / k_max')
    fourier.add_argument('--separation', type=float, help='peak separation, default 20 pi / k_max')
    _output_options(fourier)

    graph_check = subparsers.add_parser('graph-check', help='S-matrix against orbit sums')
    _potential_options(graph_check)
    graph_check.add_argument('--samples', type=int)
    graph_check.add_argument('--kmax', dest='k_max', type=float)
    graph_check.add_argument('--n-max', dest='n_max', type=int)
    graph_check.add_argument('--seed', type=int)
    _output_options(graph_check)

    identity = subparsers.add_parser('identity', help='exact sum rule for words of length 2M')
    identity.add_argument('--m', type=int)
    identity.add_argument('--allow-large', dest='allow_large', action='store_const', const=True)
    _output_options(identity)

    return parser, subparsers.choices


def _option_names(parser):
    names = {}
    for action in parser._actions:
        for option in action.option_strings:
            names[option.lstrip('-').replace('-', '_')] = action.dest
        names.setdefault(action.dest, action.dest)
    return names


def apply_config(config_path, parser, subparser):
    """Config values become defaults, so explicit flags still win."""
    allowed = _option_names(subparser)
    defaults = {}
    for key, value in load_config_file(config_path).items():
        if key == 'threads':
            parser.set_defaults(threads=value)
            continue
        if key not in allowed:
            raise UsageError(f'unknown config key {key!r} for {subparser.prog}', key=key)
        if isinstance(value, list):
            value = tuple(value)
        defaults[allowed[key]] = value
    subparser.set_defaults(**defaults)


class CommandLineApp:

    def __init__(self):
        self.parser = None
        self.subparsers = None
        self.application_name = None

    def setup(self, application_name):
        self.application_name = application_name
        self.parser, self.subparsers = build_parser(application_name)
        log.debug(" setup -- Setting up command line for [%s]", application_name)

    def parse(self, argv):
        pre_parser = argparse.ArgumentParser(add_help=False)
        pre_parser.add_argument('--config')
        known, _ = pre_parser.parse_known_args(argv)
        if known.config:
            subcommand = next((arg for arg in argv if arg in self.subparsers), None)
            if subcommand is None:
                raise UsageError('a subcommand is required')
            apply_config(known.config, self.parser, self.subparsers[subcommand])

        options = vars(self.parser.parse_args(argv))
        options['threads'] = get_thread_count(options.get('threads'))
        return RunConfig.from_options(options)

    def run(self, argv):
        try:
            config = self.parse(argv)
            log.debug(" run -- [%s] executing %s", self.application_name, config.subcommand)
            toolkit = RaySplitToolkit(output_format=config.format)
            return toolkit.execute(config)
        except RaySplitError as e:
            log.debug(" run -- %s failed", self.application_name, exc_info=True)
            error = {'schema_version': SCHEMA_VERSION}
            error.update(e.as_dict())
            sys.stderr.write(json.dumps(normalise(error), sort_keys=True) + '\n')
            return e.exit_code


def run(argv=None):
    app = CommandLineApp()
    app.setup(application_name=get_service_name())
    return app.run(sys.argv[1:] if argv is None else list(argv))


if __name__ == '__main__':
    sys.exit(run())
