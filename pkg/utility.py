import json
import logging
import os
from dataclasses import dataclass, fields

import numpy as np
from scipy.signal import find_peaks

from errors import ArtifactError, UsageError, ValidationError

log = logging.getLogger(__name__)

ENVIRONMENT_SERVICE_NAME_KEY = 'RAYSPLIT_SERVICE_NAME'
ENVIRONMENT_THREADS_KEY = 'RAYSPLIT_THREADS'
ENVIRONMENT_LOG_LEVEL_KEY = 'RAYSPLIT_LOG_LEVEL'

SCHEMA_VERSION = 1
SIGNIFICANT_DIGITS = 15


def get_service_name():
    service_name = 'raysplit'
    service_name = os.getenv(ENVIRONMENT_SERVICE_NAME_KEY, service_name)
    return service_name


def get_log_level():
    return os.getenv(ENVIRONMENT_LOG_LEVEL_KEY, 'INFO').upper()


def get_thread_count(threads=None):
    """
        Thread count for the parallel scans. An explicit value wins over
        the environment; the default is a single thread so runs stay reproducible.

    :param threads:
    :return:
    """
    if threads is None:
        threads = os.getenv(ENVIRONMENT_THREADS_KEY, 1)
    try:
        threads = int(threads)
    except (TypeError, ValueError):
        raise ValidationError('threads', f'not an integer: {threads!r}')
    if threads < 1:
        raise ValidationError('threads', f'must be at least 1, got {threads}')
    return threads


def load_config_file(source_file: str):
    """
        Loads a JSON run configuration whose keys mirror the long flag names.
    :param source_file:
    :return: dict with dashes normalised to underscores
    """
    try:
        with open(source_file, 'r') as f:
            config = json.load(f)
    except OSError as e:
        raise ArtifactError(f'cannot read config file {source_file}: {e.strerror}', path=source_file)
    except json.JSONDecodeError as e:
        raise UsageError(f'config file {source_file} is not valid JSON: {e.msg}', path=source_file)

    if not isinstance(config, dict):
        raise UsageError(f'config file {source_file} must hold a JSON object', path=source_file)
    return {key.replace('-', '_'): value for key, value in config.items()}


@dataclass(frozen=True)
class RunConfig:
    """Validated settings for one CLI invocation."""
    subcommand: str
    b: float = 0.7
    lam: float = 0.5
    breakpoints: tuple = ()
    lambdas: tuple = ()
    k_min: float = 1.0
    k_max: float = 100.0
    dk: float = 0.01
    s_min: float = 0.2
    s_max: float = 10.0
    ds: float = None
    max_length: int = 7
    count: int = None
    nu_max: int = 10
    eta: float = 0.0
    threshold: float = 0.05
    tolerance: float = None
    separation: float = None
    resummed: bool = False
    k_domain: bool = False
    roots_path: str = None
    n_roots: int = None
    samples: int = 100
    n_max: int = 12
    seed: int = 0
    m: int = 4
    allow_large: bool = False
    threads: int = 1
    out: str = '-'
    report: str = None
    format: str = 'csv'

    def __post_init__(self):
        if bool(self.breakpoints) != bool(self.lambdas):
            given, missing = ('breakpoints', 'lambdas') if self.breakpoints else ('lambdas', 'breakpoints')
            raise ValidationError(missing, f'an N-step potential needs both breakpoints and lambdas, '
                                           f'only {given} given')

    @property
    def is_chain(self):
        return bool(self.lambdas)

    @classmethod
    def from_options(cls, options: dict):
        """Builds a config from parsed options, ignoring keys that are not fields."""
        names = {item.name for item in fields(cls)}
        return cls(**{key: value for key, value in options.items() if key in names and value is not None})


def fixed(value):
    """Rounds a float to the artifact precision so identical runs give identical bytes."""
    if isinstance(value, (bool, int, np.integer)) and not isinstance(value, float):
        return int(value)
    return float(f'{float(value):.{SIGNIFICANT_DIGITS}g}')


def parabolic_vertex(x, y, index):
    """
        Refines a sampled extremum at `index` by the vertex of the parabola
        through its two neighbours. Edge samples are returned unchanged.
    """
    if index <= 0 or index >= len(y) - 1:
        return float(x[index])
    y0, y1, y2 = y[index - 1], y[index], y[index + 1]
    denominator = y0 - 2.0 * y1 + y2
    if denominator == 0.0:
        return float(x[index])
    offset = 0.5 * (y0 - y2) / denominator
    step = 0.5 * (x[index + 1] - x[index - 1])
    return float(x[index] + offset * step)


def local_maxima(x, y, height=None, distance=None):
    """
        Parabolic-refined positions of the local maxima of y(x).

    :param x: increasing sample points
    :param y: samples
    :param height: minimum peak value
    :param distance: minimum separation in x; within it only the highest peak survives
    :return: (positions, indices)
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    samples = None
    if distance:
        spacing = float(np.min(np.diff(x))) if len(x) > 1 else 1.0
        samples = max(1.0, distance / spacing)
    indices, _ = find_peaks(y, height=height, distance=samples)
    positions = np.array([parabolic_vertex(x, y, index) for index in indices], dtype=float)
    return positions, indices


def local_minima(x, y):
    positions, indices = local_maxima(x, -np.asarray(y, dtype=float))
    return positions, indices
