import importlib
import logging
import math

import numpy as np
import pandas as pd

from analysis.fourier import default_s_grid, detect_peaks, fourier_transform, match_peaks
from combinatorics.sum_rule import verify_sum_rule
from errors import EXIT_FINDING, ArtifactError, ValidationError
from graph.checks import oracle_deviations
from model.chain import build_nstep
from model.step import ScaledStepPotential, build_potential
from orbits.record import action_lattice, is_newtonian_multiple, orbit_label, shortest_orbits
from report import Artifact, ArtifactWriterInterface
from spectrum.chain import nstep_find_roots
from spectrum.step import find_roots, first_roots
from traceformula.density import density_peaks, newtonian_prediction, rho_resummed, rho_trace
from utility import RunConfig, get_log_level

log = logging.getLogger(__name__)

EXIT_OK = 0

WRITERS = {
    'csv': ('report.csv_writer', 'CsvWriter'),
    'json': ('report.json_writer', 'JsonWriter'),
}


def load_writer(output_format: str) -> ArtifactWriterInterface:
    if output_format not in WRITERS:
        raise ValidationError('format', f'must be one of {sorted(WRITERS)}, got {output_format!r}')
    module_str, class_name = WRITERS[output_format]
    writer_module = importlib.import_module(module_str)
    writer: ArtifactWriterInterface = getattr(writer_module, class_name)()
    writer.setup()
    return writer


def read_roots(path: str):
    """Roots from a spectrum CSV (column `k`), sorted."""
    try:
        frame = pd.read_csv(path)
    except (OSError, pd.errors.ParserError, pd.errors.EmptyDataError) as e:
        raise ArtifactError(f'cannot read roots from {path}: {e}', path=path)
    if 'k' not in frame.columns:
        raise ArtifactError(f'{path} has no column k', path=path, columns=list(frame.columns))
    try:
        roots = np.sort(frame['k'].to_numpy(dtype=float))
    except (TypeError, ValueError) as e:
        raise ArtifactError(f'{path} has a non-numeric k column: {e}', path=path)
    if len(roots) == 0:
        raise ValidationError('roots', f'{path} holds no roots')
    if not np.all(np.isfinite(roots)):
        raise ValidationError('roots', f'{path} holds non-finite roots', path=path)
    return roots


class RaySplitToolkit:

    def __init__(self, output_format='csv'):

        logging.basicConfig(level=get_log_level())

        self.writer = load_writer(output_format)
        self.report_writer = load_writer('json')

    def _emit(self, artifact: Artifact, config: RunConfig):
        self.writer.write(artifact, config.out)
        if config.report:
            self.report_writer.write(Artifact(kind=f'{artifact.kind}-report', payload=artifact.payload),
                                     config.report)

    @staticmethod
    def potential(config: RunConfig):
        if config.is_chain:
            return build_nstep(config.breakpoints, config.lambdas)
        return build_potential(config.b, config.lam)

    @staticmethod
    def step_potential(config: RunConfig) -> ScaledStepPotential:
        if config.is_chain:
            raise ValidationError('lambdas', f'{config.subcommand} supports the single-step potential only')
        return build_potential(config.b, config.lam)

    def execute_spectrum(self, config: RunConfig):
        """
            Roots up to k_max with residuals and the completeness report.
        """
        if config.k_max <= 0.0:
            raise ValidationError('k_max', f'must be positive, got {config.k_max}')
        pot = self.potential(config)
        if config.is_chain:
            result = nstep_find_roots(pot, config.k_max, threads=config.threads)
        else:
            result = find_roots(pot, config.k_max, threads=config.threads)

        table = pd.DataFrame({
            'n': np.arange(1, len(result) + 1),
            'k': result.roots,
            'E': result.energies,
            'residual': result.residuals,
        })
        payload = {'potential': pot.as_dict(), 'k_max': config.k_max,
                   'completeness': result.completeness_report.as_dict()}
        log.info(" execute_spectrum -- %s roots up to k=%s, staircase deviation %s",
                 len(result), config.k_max, result.completeness_report.max_deviation)
        self._emit(Artifact(kind='spectrum', table=table, payload=payload), config)
        return EXIT_OK

    def execute_orbits(self, config: RunConfig):
        pot = self.step_potential(config)
        max_length = config.max_length if config.count is None else None
        orbits = shortest_orbits(pot, max_length=max_length, count=config.count)

        rows = []
        for rec in orbits:
            for nu in range(1, config.nu_max + 1):
                rows.append({
                    'code': orbit_label(rec.code, nu), 'length': rec.length * nu, 'nu': nu,
                    'nL': rec.n_L * nu, 'nR': rec.n_R * nu,
                    'sigma': rec.sigma * nu, 'tau2': rec.tau2 * nu,
                    'sign': rec.chi_parity ** nu, 'S0': rec.S0 * nu})
        table = pd.DataFrame(rows, columns=['code', 'length', 'nu', 'nL', 'nR', 'sigma', 'tau2', 'sign', 'S0'])
        payload = {'potential': pot.as_dict(), 'primitive_orbits': len(orbits), 'nu_max': config.nu_max}
        self._emit(Artifact(kind='orbits', table=table, payload=payload), config)
        return EXIT_OK

    def _k_grid(self, config: RunConfig):
        if not 0.0 < config.k_min < config.k_max:
            raise ValidationError('k_min', f'need 0 < k_min < k_max, got {config.k_min} and {config.k_max}')
        if config.dk <= 0.0:
            raise ValidationError('dk', f'must be positive, got {config.dk}')
        samples = int(math.floor((config.k_max - config.k_min) / config.dk + 1e-9)) + 1
        return config.k_min + config.dk * np.arange(samples)

    def execute_trace(self, config: RunConfig):
        """
            Trace-formula density on a k grid next to the Newtonian-only density,
            with its peaks, the Newtonian comb and the exact roots in range.
        """
        pot = self.step_potential(config)
        k_grid = self._k_grid(config)
        max_length = config.max_length if config.count is None else None
        orbits = shortest_orbits(pot, max_length=max_length, count=config.count)
        newtonian = [rec for rec in orbits if rec.word == 'LR']

        if config.resummed:
            profile = rho_resummed(pot, orbits, k_grid, eta=config.eta, k_domain=config.k_domain,
                                   max_length=max_length)
            newtonian_profile = rho_resummed(pot, newtonian, k_grid, eta=config.eta, k_domain=config.k_domain)
        else:
            profile = rho_trace(pot, orbits, config.nu_max, k_grid, eta=config.eta, k_domain=config.k_domain,
                                max_length=max_length)
            newtonian_profile = rho_trace(pot, newtonian, config.nu_max, k_grid, eta=config.eta,
                                          k_domain=config.k_domain)

        table = pd.DataFrame({'k': profile.k_grid, 'rho': profile.values, 'rho_newtonian': newtonian_profile.values})
        comb = [k for k in newtonian_prediction(pot, int(config.k_max * pot.omega1 / math.pi) + 1)
                if config.k_min <= k <= config.k_max]
        exact = find_roots(pot, config.k_max, threads=config.threads).roots
        payload = {
            'potential': pot.as_dict(),
            'truncation': profile.truncation.as_dict(),
            'eta': config.eta,
            'k_domain': config.k_domain,
            'peaks': density_peaks(profile),
            'newtonian_comb': comb,
            'exact_roots': exact[exact >= config.k_min],
        }
        self._emit(Artifact(kind='trace', table=table, payload=payload), config)
        return EXIT_OK

    def execute_fourier(self, config: RunConfig):
        """
            |F(s)| over the roots of a spectrum file (or freshly computed roots),
            peaks, and their match against the orbit action lattice.
        """
        pot = self.step_potential(config)
        if config.roots_path:
            roots = read_roots(config.roots_path)
        elif config.n_roots:
            roots = first_roots(pot, config.n_roots, threads=config.threads)
        else:
            roots = find_roots(pot, config.k_max, threads=config.threads).roots
        k_max = float(roots[-1])

        s_grid = default_s_grid(k_max, s_min=config.s_min, s_max=config.s_max, ds=config.ds)
        profile = fourier_transform(roots, s_grid, threads=config.threads)
        peaks = detect_peaks(profile, threshold_fraction=config.threshold, separation=config.separation)
        tolerance = config.tolerance or 2.0 * profile.resolution
        report = match_peaks(peaks, action_lattice(pot, config.s_max + tolerance), tolerance)

        non_newtonian = [match.s for match in report.matched if not is_newtonian_multiple(match.action, pot, 1e-9)]
        table = pd.DataFrame({'s': profile.s_grid, 'absF': profile.magnitude})
        payload = {
            'potential': pot.as_dict(),
            'j_roots': profile.j_roots,
            'k_max': k_max,
            'threshold': config.threshold,
            'match': report.as_dict(),
            'non_newtonian_peaks': non_newtonian,
        }
        log.info(" execute_fourier -- %s peaks, matched fraction %s, %s non-Newtonian",
                 len(peaks), report.matched_fraction, len(non_newtonian))
        self._emit(Artifact(kind='fourier', table=table, payload=payload), config)
        return EXIT_OK

    def execute_graph_check(self, config: RunConfig):
        pot = self.step_potential(config)
        result = oracle_deviations(pot, samples=config.samples, k_max=config.k_max, n_max=config.n_max,
                                   seed=config.seed)
        self.report_writer.write(Artifact(kind='graph-check', payload={'potential': pot.as_dict(),
                                                                       'deviations': result.as_dict()}),
                                 config.out)
        return EXIT_OK

    def execute_identity(self, config: RunConfig):
        """
            Exact sum-rule verdict. The report is always JSON: per-beta sums,
            the expanded polynomial and PASS/FAIL.
        """
        result = verify_sum_rule(config.m, allow_large=config.allow_large)
        table = pd.DataFrame({'beta': np.arange(config.m + 1),
                              'sum': [str(value) for value in result.sums],
                              'binomial': list(result.binomials)})
        self.report_writer.write(Artifact(kind='identity', table=table, payload=result.as_dict()), config.out)
        log.info(" execute_identity -- M=%s %s", config.m, result.verdict)
        return EXIT_OK if result.verdict == 'PASS' else EXIT_FINDING

    def execute(self, config: RunConfig):
        handler = getattr(self, 'execute_' + config.subcommand.replace('-', '_'), None)
        if handler is None:
            raise ValidationError('subcommand', f'unknown subcommand {config.subcommand!r}')
        return handler(config)
