import bisect
import logging
import math
from multiprocessing.pool import ThreadPool

import numpy as np

from analysis import FourierProfile, PeakMatch, PeakMatchReport
from errors import ValidationError
from utility import local_maxima

log = logging.getLogger(__name__)

BLOCK = 256
BLOCKS_PER_TASK = 64
ROOT_CHUNK = 4096
UNIFORM_TOLERANCE = 1e-9


def default_s_grid(k_max: float, s_min: float = 0.2, s_max: float = 10.0, ds: float = None):
    """Uniform grid with spacing pi/(4 k_max): eight samples per resolution width."""
    if s_max <= s_min:
        raise ValidationError('s_max', f'must exceed s_min={s_min}, got {s_max}')
    step = ds or math.pi / (4.0 * k_max)
    count = int(math.floor((s_max - s_min) / step + 1e-9)) + 1
    return s_min + step * np.arange(count)


def _is_uniform(s):
    if len(s) < 3:
        return False
    steps = np.diff(s)
    return bool(np.all(np.abs(steps - steps[0]) <= UNIFORM_TOLERANCE * max(1.0, abs(steps[0]))))


def _direct(k, s):
    total = np.zeros(len(s), dtype=complex)
    for start in range(0, len(k), ROOT_CHUNK):
        chunk = k[start:start + ROOT_CHUNK]
        total += np.exp(-1j * np.outer(s, chunk)).sum(axis=1)
    return total


def _uniform_blocks(k, kernel, starts):
    """F(start + m ds) for every start and m < BLOCK as one matrix product, flattened in s order."""
    return (np.exp(-1j * np.outer(starts, k)) @ kernel).ravel()


def fourier_transform(roots, s_grid, threads: int = 1) -> FourierProfile:
    """
        Fourier image of the spectral density,
        F(s) = sum_j exp(-i s k_j).

        On a uniform grid the phases factor as exp(-i s_block k) exp(-i m ds k),
        so groups of blocks of BLOCK samples reduce to one matrix product each.

    :param roots: sorted wavenumbers
    :param s_grid: increasing sample points
    :param threads:
    :return:
    """
    k = np.asarray(roots, dtype=float)
    s = np.asarray(s_grid, dtype=float)
    if len(k) == 0:
        raise ValidationError('roots', 'at least one root is required')
    if s.ndim != 1 or len(s) == 0:
        raise ValidationError('s_grid', 'must be a non-empty one-dimensional grid')
    if np.any(np.diff(k) < 0.0):
        raise ValidationError('roots', 'must be sorted')

    if _is_uniform(s):
        step = s[1] - s[0]
        kernel = np.exp(-1j * np.outer(k, step * np.arange(BLOCK)))
        starts = s[::BLOCK]
        tasks = [(k, kernel, starts[i:i + BLOCKS_PER_TASK]) for i in range(0, len(starts), BLOCKS_PER_TASK)]
        with ThreadPool(processes=max(1, threads)) as pool:
            blocks = pool.starmap(_uniform_blocks, tasks)
        values = np.concatenate(blocks)[:len(s)]
    else:
        values = _direct(k, s)

    log.debug(" fourier_transform -- %s roots on %s samples", len(k), len(s))
    return FourierProfile(s_grid=s, magnitude=np.abs(values), j_roots=len(k), k_max=float(k[-1]))


def detect_peaks(profile: FourierProfile, threshold_fraction: float = 0.05, separation: float = None):
    """
        Local maxima of |F| above threshold_fraction * j_roots with parabolic refinement.
        Within `separation` (default ten resolution widths, 20 pi / k_max) only the strongest survives,
        which removes the sidelobes of a finite root sum.
    """
    if not 0.0 < threshold_fraction < 1.0:
        raise ValidationError('threshold', f'must lie in (0, 1), got {threshold_fraction}')
    if separation is None:
        separation = 10.0 * profile.resolution
    positions, _ = local_maxima(profile.s_grid, profile.magnitude,
                                height=threshold_fraction * profile.j_roots, distance=separation)
    return [float(position) for position in positions]


def match_peaks(peaks, actions, tolerance: float) -> PeakMatchReport:
    """
        Assigns each peak to the nearest candidate action within tolerance.

    :param peaks: sorted peak positions
    :param actions: sorted ActionLines or plain floats
    :param tolerance:
    :return:
    """
    if tolerance <= 0.0:
        raise ValidationError('tolerance', f'must be positive, got {tolerance}')
    values = [getattr(action, 's', action) for action in actions]
    labels = [', '.join(action.labels) if hasattr(action, 'labels') else None for action in actions]

    matches = []
    for peak in peaks:
        position = bisect.bisect_left(values, peak)
        nearest = None
        for index in (position - 1, position):
            if 0 <= index < len(values) and abs(values[index] - peak) <= tolerance:
                if nearest is None or abs(values[index] - peak) < abs(values[nearest] - peak):
                    nearest = index
        if nearest is None:
            matches.append(PeakMatch(s=peak))
        else:
            matches.append(PeakMatch(s=peak, action=values[nearest], label=labels[nearest]))

    report = PeakMatchReport(tolerance=tolerance, matches=matches)
    if report.unmatched:
        log.info(" match_peaks -- %s of %s peaks unmatched", len(report.unmatched), len(matches))
    return report


def peak_width(profile: FourierProfile, s_peak: float) -> float:
    """Full width at half maximum of the peak nearest s_peak, linearly interpolated."""
    s = profile.s_grid
    y = profile.magnitude
    index = int(np.argmin(np.abs(s - s_peak)))
    while 0 < index < len(y) - 1 and max(y[index - 1], y[index + 1]) > y[index]:
        index += 1 if y[index + 1] > y[index - 1] else -1
    half = 0.5 * y[index]

    left = index
    while left > 0 and y[left] > half:
        left -= 1
    right = index
    while right < len(y) - 1 and y[right] > half:
        right += 1
    if y[left] > half or y[right] > half:
        raise ValidationError('s_peak', f'peak at {s_peak} is not resolved inside the grid')

    crossing_left = s[left] + (half - y[left]) * (s[left + 1] - s[left]) / (y[left + 1] - y[left])
    crossing_right = s[right - 1] + (half - y[right - 1]) * (s[right] - s[right - 1]) / (y[right] - y[right - 1])
    return float(crossing_right - crossing_left)
