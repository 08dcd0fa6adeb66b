import logging
import math
from multiprocessing.pool import ThreadPool

import numpy as np

from errors import CompletenessError, ValidationError
from spectrum import (DEGENERACY_THRESHOLD, OVERSAMPLING, WEYL_TOLERANCE, CompletenessReport, SecularInterface,
                      SpectrumResult)

log = logging.getLogger(__name__)

ROOT_TOLERANCE = 1e-12
MAX_BISECTIONS = 200
MAX_REFINEMENTS = 4
DUPLICATE_TOLERANCE = 1e-9
WINDOW_BEHIND = 8.0
WINDOW_AHEAD = 1.0


def _bisect(secular: SecularInterface, lo, hi):
    """
        Vectorised bisection over independent brackets, then one guarded Newton step.
        Brackets shrink to 1e-12 or to a few ulps where k is too large for that.
    """
    flo = secular.evaluate(lo)
    tolerance = np.maximum(ROOT_TOLERANCE, 4.0 * np.spacing(hi))

    for _ in range(MAX_BISECTIONS):
        active = (hi - lo) > tolerance
        if not active.any():
            break
        mid = 0.5 * (lo + hi)
        fmid = secular.evaluate(mid)
        same_side = (np.sign(fmid) == np.sign(flo)) & active
        other_side = (np.sign(fmid) != np.sign(flo)) & (fmid != 0.0) & active
        exact = (fmid == 0.0) & active
        lo = np.where(same_side | exact, mid, lo)
        flo = np.where(same_side, fmid, flo)
        hi = np.where(other_side | exact, mid, hi)

    roots = 0.5 * (lo + hi)
    values = secular.evaluate(roots)
    slopes = secular.derivative(roots)
    with np.errstate(divide='ignore', invalid='ignore'):
        polished = np.where(slopes != 0.0, roots - values / slopes, roots)
    inside = (polished >= lo - tolerance) & (polished <= hi + tolerance)
    better = np.abs(secular.evaluate(polished)) <= np.abs(values)
    return np.where(inside & better, polished, roots)


def _scan_chunk(secular: SecularInterface, grid, first, last, closing):
    """Roots bracketed between grid points first..last (inclusive)."""
    ks = grid[first:last + 1]
    values = secular.evaluate(ks)
    signs = np.sign(values)

    bracket = np.nonzero(signs[:-1] * signs[1:] < 0)[0]
    on_grid = (values == 0.0) & (ks > 0.0)
    if not closing:
        on_grid[-1] = False

    found = _bisect(secular, ks[bracket], ks[bracket + 1]) if len(bracket) else np.empty(0)
    return np.sort(np.concatenate([found, ks[on_grid]]))


def scan(secular: SecularInterface, start: float, stop: float, step: float, threads: int = 1):
    """
        Sign-change scan of [start, stop] with the given step, split into
        contiguous chunks for the thread pool. Grid points are fixed by their
        global index so any thread count gives bit-identical roots.
    """
    count = max(1, int(math.ceil((stop - start) / step)))
    grid = start + step * np.arange(count + 1)
    grid[-1] = stop

    chunks = max(1, min(threads, count))
    edges = np.linspace(0, count, chunks + 1).astype(int)
    tasks = [(int(edges[i]), int(edges[i + 1]), i == chunks - 1) for i in range(chunks) if edges[i + 1] > edges[i]]

    if len(tasks) == 1:
        parts = [_scan_chunk(secular, grid, *tasks[0])]
    else:
        with ThreadPool(processes=len(tasks)) as pool:
            parts = pool.starmap(_scan_chunk, [(secular, grid) + task for task in tasks])
    return np.concatenate(parts)


def staircase_deviation(roots, slope: float, k_max: float):
    """
        sup over [0, k_max] of |N(k) - slope*k| for the empirical staircase.
        The extremes sit just before and at each root, or at k_max.

    :return: (deviation, k where it is reached)
    """
    if len(roots) == 0:
        return slope * k_max, k_max
    index = np.arange(1, len(roots) + 1)
    before = np.abs(index - 1 - slope * roots)
    after = np.abs(index - slope * roots)
    candidates = np.maximum(before, after)
    worst = int(np.argmax(candidates))
    ending = abs(len(roots) - slope * k_max)
    if ending > candidates[worst]:
        return float(ending), float(k_max)
    return float(candidates[worst]), float(roots[worst])


def _merge(roots, window, rescanned):
    outside = roots[(roots < window[0]) | (roots > window[1])]
    merged = np.sort(np.concatenate([outside, rescanned]))
    if len(merged) > 1:
        keep = np.concatenate([[True], np.diff(merged) > DUPLICATE_TOLERANCE])
        merged = merged[keep]
    return merged


def isolate_roots(secular: SecularInterface, k_max: float, threads: int = 1, expected_count=None) -> SpectrumResult:
    """
        Finds every root in (0, k_max] and checks the list against the Weyl line.
        A violation triggers a rescan of the offending window with half the step,
        up to four times, after which the failure is reported, never a short list.
        A root whose residual is too large, or a count that disagrees with
        `expected_count`, raises CompletenessError as well.

    :param secular:
    :param k_max:
    :param threads:
    :param expected_count: exact count when the secular function provides one
    :return:
    """
    k_max = float(k_max)
    if not math.isfinite(k_max) or k_max <= 0.0:
        raise ValidationError('k_max', f'must be positive, got {k_max}')

    slope = secular.weyl_slope()
    step = 1.0 / (OVERSAMPLING * slope)
    roots = scan(secular, 0.0, k_max, step, threads)

    refinements = 0
    deviation, worst_k = staircase_deviation(roots, slope, k_max)
    while deviation > WEYL_TOLERANCE:
        window = (max(0.0, worst_k - WINDOW_BEHIND / slope), min(k_max, worst_k + WINDOW_AHEAD / slope))
        if refinements == MAX_REFINEMENTS:
            raise CompletenessError(
                f'staircase deviation {deviation:.3f} exceeds {WEYL_TOLERANCE} after {refinements} refinements',
                interval=window, deviation=deviation)
        refinements += 1
        log.warning(" isolate_roots -- staircase deviation %s near k=%s, rescanning [%s, %s] with step %s",
                    deviation, worst_k, window[0], window[1], step / 2 ** refinements)
        rescanned = scan(secular, window[0], window[1], step / 2 ** refinements, threads)
        roots = _merge(roots, window, rescanned)
        deviation, worst_k = staircase_deviation(roots, slope, k_max)

    residuals = secular.evaluate(roots) if len(roots) else np.empty(0)
    max_residual = float(np.max(np.abs(residuals))) if len(roots) else 0.0
    if max_residual > secular.residual_tolerance():
        worst = float(roots[int(np.argmax(np.abs(residuals)))])
        raise CompletenessError(
            f'largest residual {max_residual:.3g} exceeds {secular.residual_tolerance():.3g}',
            interval=(worst, worst), residual=max_residual)

    near_degenerate = ()
    if len(roots):
        flagged = np.abs(secular.derivative(roots)) < DEGENERACY_THRESHOLD
        near_degenerate = tuple(float(k) for k in roots[flagged])
        if near_degenerate:
            log.warning(" isolate_roots -- %s near-degenerate roots flagged", len(near_degenerate))

    if expected_count is not None and expected_count != len(roots):
        raise CompletenessError(f'found {len(roots)} roots, exact count is {expected_count}',
                                interval=(0.0, k_max), found=len(roots), expected=expected_count)

    report = CompletenessReport(
        max_deviation=deviation,
        tolerance=WEYL_TOLERANCE,
        weyl_slope=slope,
        scan_step=step,
        refinements=refinements,
        near_degenerate=near_degenerate,
        max_residual=max_residual,
        expected_count=expected_count)
    log.info(" isolate_roots -- %s roots up to k=%s, staircase deviation %s", len(roots), k_max, deviation)
    return SpectrumResult(roots=roots, residuals=residuals, k_max=k_max, completeness_report=report)
