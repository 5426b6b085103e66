"""The gaussmzi command line: qfi, sweep, regimes, heisenberg and verify.

Every command reads the same configuration sections, so one JSON file can
drive all of them:

    gaussmzi qfi --config=scenario.json
    gaussmzi sweep --config=scenario.json --axis=beta --stop=600 --output=dip.csv
    gaussmzi regimes --set port0.xi.factor=2.3 --set port1.zeta.factor=2.2
    gaussmzi verify --seed=7
"""
#-----------------------------------------------------------------------------
# Imports
#-----------------------------------------------------------------------------

import functools
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

import numpy as np
from traitlets import Bool, Enum, Float, Instance, Int, Unicode

from ipcfg.csvreporter import CsvReporter
from ipcfg.extratraitlets import Angle
from ipcfg.mziapplication import AppConfigurable, MziApplication
from ipcfg.progressreporter import ProgressReporter

from . import oracle
from .detection import (DifferenceIntensity, Homodyne, SensitivityPoint, SingleModeIntensity,
                        observable_stats, scheme_from_name)
from .exceptions import FlatObjective, MziError, NonPositiveInformation, TruncationError, \
    UndefinedBoundary, VerificationFailure
from .fisher import fisher_matrix, qcrb, qfi, qfi_closed_form
from .heisenberg import (asymptotic_qfi, fractions_to_parameters, heisenberg_optima,
                         simplex_grid)
from .interferometer import BsConvention, MziScenario
from .losses import lossy_optimal_working_point, lossy_sensitivity, lossy_variance
from .pmc import PmcSet, apply_pmc, boundaries, classify
from .states import TWO_PI, GaussianPort

__all__ = ['main', 'GaussMziApp']

#-----------------------------------------------------------------------------
# Globals
#-----------------------------------------------------------------------------

SCHEME_ORDER = ('difference', 'single', 'homodyne')
PMC_CHOICES = ['none'] + [p.value for p in PmcSet]

MEAN_RTOL = 1e-8
VARIANCE_RTOL = 1e-6
FISHER_RTOL = 1e-4
FIDELITY_TOL = 1e-8
FLATNESS_TOL = 1e-9
FLATNESS_STEP = 1e-3

#-----------------------------------------------------------------------------
# Configuration sections
#-----------------------------------------------------------------------------


class Port1(AppConfigurable):
    """Input port 1: coherent amplitude alpha, squeezed by zeta."""
    alpha_magnitude = Float(0.0, help='|alpha|, coherent amplitude of port 1.').tag(config=True)
    alpha_phase = Angle(0.0, help='theta_alpha, phase of alpha. With a PMC set this is '
                        'the reference phase.').tag(config=True)
    zeta_factor = Float(0.0, help='z, squeezing factor of port 1.').tag(config=True)
    zeta_phase = Angle(0.0, help='phi_zeta, squeeze phase of port 1. Ignored when a PMC '
                       'set is selected.').tag(config=True)

    def validate(self):
        if self.alpha_magnitude < 0:
            self.fail('alpha_magnitude must be >= 0, got %r' % self.alpha_magnitude)
        if self.zeta_factor < 0:
            self.fail('zeta_factor must be >= 0, got %r' % self.zeta_factor)


class Port0(AppConfigurable):
    """Input port 0: coherent amplitude beta, squeezed by xi."""
    beta_magnitude = Float(0.0, help='|beta|, coherent amplitude of port 0.').tag(config=True)
    beta_phase = Angle(0.0, help='theta_beta, phase of beta. Ignored when a PMC set is '
                       'selected.').tag(config=True)
    xi_factor = Float(0.0, help='r, squeezing factor of port 0.').tag(config=True)
    xi_phase = Angle(0.0, help='theta, squeeze phase of port 0. Ignored when a PMC set is '
                     'selected.').tag(config=True)

    def validate(self):
        if self.beta_magnitude < 0:
            self.fail('beta_magnitude must be >= 0, got %r' % self.beta_magnitude)
        if self.xi_factor < 0:
            self.fail('xi_factor must be >= 0, got %r' % self.xi_factor)


class Interferometer(AppConfigurable):
    """Beam-splitter convention, working point, detector efficiency and the
    optional phase-matching condition applied to the input phases."""
    convention = Enum([c.value for c in BsConvention], 'symmetric',
                      help='Beam-splitter convention.').tag(config=True)
    phase = Angle(0.5 * math.pi, help='phi, total internal phase (working point).').tag(
        config=True)
    efficiency = Float(1.0, help='eta, efficiency shared by all detectors, in (0, 1].').tag(
        config=True)
    pmc = Enum(PMC_CHOICES, 'none', help='Phase-matching condition setting the input phases '
               'relative to theta_alpha, or none to use the configured phases.').tag(config=True)

    def validate(self):
        if not 0 < self.efficiency <= 1:
            self.fail('efficiency must lie in (0, 1], got %r' % self.efficiency)


class Detection(AppConfigurable):
    """Detection schemes to evaluate and the number of repetitions."""
    scheme = Unicode('all', help="'all' or a comma separated list of difference, single "
                     "and homodyne.").tag(config=True)
    local_phase = Angle(None, allow_none=True, help='Local-oscillator phase for homodyne '
                        'detection; unset means theta_alpha.').tag(config=True)
    shots = Int(1, help='Number of independent repetitions; bounds scale as '
                '1/sqrt(shots).').tag(config=True)

    def names(self):
        if self.scheme.strip().lower() == 'all':
            return list(SCHEME_ORDER)
        return [name.strip().lower() for name in self.scheme.split(',') if name.strip()]

    def schemes(self):
        return [scheme_from_name(name, self.local_phase) for name in self.names()]

    def validate(self):
        try:
            if not self.schemes():
                self.fail('no detection scheme selected')
        except ValueError as e:
            self.fail(str(e))
        if self.shots < 1:
            self.fail('shots must be >= 1, got %r' % self.shots)


class Sweep(AppConfigurable):
    """One-dimensional scan of the working point, an amplitude or the
    detector efficiency."""
    axis = Enum(['phi', 'alpha', 'beta', 'eta'], 'phi', help='Quantity to scan.').tag(
        config=True)
    start = Angle(0.0, help='First value of the scan.').tag(config=True)
    stop = Angle(TWO_PI, help='Last value of the scan.').tag(config=True)
    steps = Int(101, help='Number of scan points, at least 2.').tag(config=True)
    optimal = Bool(False, help='Report each scheme at its own sweet spot instead of at the '
                   'configured phase.').tag(config=True)
    output = Unicode('-', help="CSV destination, '-' for standard output.").tag(config=True)
    workers = Int(1, help='Worker processes for the rows.').tag(config=True)

    def values(self):
        return np.linspace(self.start, self.stop, self.steps)

    def validate(self):
        if self.steps < 2:
            self.fail('steps must be >= 2, got %r' % self.steps)
        if self.start == self.stop:
            self.fail('start and stop are both %r, the scan is degenerate' % self.start)
        if self.workers < 1:
            self.fail('workers must be >= 1, got %r' % self.workers)
        if self.axis in ('alpha', 'beta') and min(self.start, self.stop) < 0:
            self.fail('amplitudes must be >= 0')
        if self.axis == 'eta' and not (0 < min(self.start, self.stop) and
                                       max(self.start, self.stop) <= 1):
            self.fail('efficiencies must lie in (0, 1]')


class Regimes(AppConfigurable):
    """Grid of (|alpha|, |beta|) over which the best PMC set is mapped."""
    alpha_max = Float(6.0, help='Largest |alpha| of the grid.').tag(config=True)
    beta_max = Float(6.0, help='Largest |beta| of the grid.').tag(config=True)
    steps = Int(61, help='Grid points per axis, at least 2.').tag(config=True)
    output = Unicode('-', help="CSV destination, '-' for standard output.").tag(config=True)

    def validate(self):
        if self.alpha_max < 0 or self.beta_max < 0:
            self.fail('alpha_max and beta_max must be >= 0')
        if self.steps < 2:
            self.fail('steps must be >= 2, got %r' % self.steps)


class Heisenberg(AppConfigurable):
    """Power-fraction simplex evaluated in the large photon number limit."""
    n_tot = Float(1e4, help='Total mean photon number used for the exact QFI.').tag(
        config=True)
    steps = Int(20, help='Every fraction is a multiple of 1/steps.').tag(config=True)
    output = Unicode('-', help="CSV destination, '-' for standard output.").tag(config=True)

    def validate(self):
        if not self.n_tot > 0:
            self.fail('n_tot must be > 0, got %r' % self.n_tot)
        if self.steps < 1:
            self.fail('steps must be >= 1, got %r' % self.steps)


class Verify(AppConfigurable):
    """Random-scenario comparison of the closed forms with the Fock-space
    simulation."""
    alpha_max = Float(1.2, help='Largest |alpha| drawn.').tag(config=True)
    beta_max = Float(1.2, help='Largest |beta| drawn.').tag(config=True)
    r_max = Float(0.6, help='Largest squeezing factor r drawn.').tag(config=True)
    z_max = Float(0.6, help='Largest squeezing factor z drawn.').tag(config=True)
    cases = Int(200, help='Number of random scenarios.').tag(config=True)
    phases = Int(5, help='Working points checked per scenario.').tag(config=True)
    seed = Int(42, help='Seed of the random draws.').tag(config=True)
    n_max = Int(60, help='Photon number cutoff per mode.').tag(config=True)
    step = Float(1e-4, help='Finite-difference step of the Fisher matrix.').tag(config=True)
    output = Unicode('-', help="Per-check CSV destination, '-' for standard output.").tag(
        config=True)

    def validate(self):
        for name in ('alpha_max', 'beta_max', 'r_max', 'z_max'):
            if getattr(self, name) < 0:
                self.fail('%s must be >= 0' % name)
        if self.cases < 0 or self.phases < 1:
            self.fail('cases must be >= 0 and phases >= 1')
        if self.n_max < 1:
            self.fail('n_max must be >= 1, got %r' % self.n_max)
        if not 1e-5 <= self.step <= 1e-3:
            self.fail('step must lie in [1e-5, 1e-3], got %r' % self.step)


ALL_SECTIONS = (Port1, Port0, Interferometer, Detection, Sweep, Regimes, Heisenberg, Verify)

#-----------------------------------------------------------------------------
# Row evaluation
#-----------------------------------------------------------------------------


def _sweep_row(scenario, schemes, optimal, shots):
    """Sensitivities and bound of one sweep point; runs in worker processes."""
    root = math.sqrt(shots)
    row = []
    for scheme in schemes:
        if optimal:
            try:
                point = lossy_optimal_working_point(scheme, scenario)
            except FlatObjective:
                point = SensitivityPoint(math.nan, math.inf)
            row.extend([point.phase, point.delta_phi / root])
        else:
            row.append(lossy_sensitivity(scheme, scenario).delta_phi / root)

    information = qfi(fisher_matrix(scenario))
    try:
        bound = qcrb(information, shots)
    except NonPositiveInformation:
        bound = math.inf
    row.extend([information, bound])
    return row


def _curve_value(curve, alpha):
    """A boundary curve at |alpha|, nan outside its domain."""
    try:
        return curve(float(alpha))
    except UndefinedBoundary:
        return math.nan


def _describe(manifolds):
    """Render optimum manifolds, e.g. 'f_r=0.5, f_alpha+f_z=0.5'.

    Examples
    --------
    >>> manifold = ((('f_alpha',), 0.5), (('f_r', 'f_z'), 0.5))
    >>> _describe((manifold,))
    'f_alpha=0.5, f_r+f_z=0.5'
    """
    return ' or '.join(', '.join('%s=%g' % ('+'.join(fields), total)
                                 for fields, total in manifold)
                       for manifold in manifolds)


@dataclass(frozen=True)
class Check(object):
    """One closed-form versus oracle comparison."""
    case: int
    convention: str
    phi: float
    name: str
    expected: float
    observed: float
    tolerance: float
    scale: float = 1.0

    @property
    def passed(self):
        bound = self.tolerance * max(1.0, self.scale, abs(self.expected))
        return bool(abs(self.observed - self.expected) <= bound)

    def as_row(self):
        return [self.case, self.convention, self.phi, self.name, self.expected,
                self.observed, self.tolerance, self.passed]

#-----------------------------------------------------------------------------
# Applications
#-----------------------------------------------------------------------------


class CommandApp(MziApplication):
    """Shared plumbing of the gaussmzi subcommands."""
    classes = []
    known_sections = ALL_SECTIONS

    def write_csv(self, output, columns, rows, comments=()):
        reporter = CsvReporter(output, columns, config=self.effective_config())
        for line in comments:
            reporter.comment(line)
        for row in rows:
            reporter.report(row)
        reporter.write()
        if output != '-':
            self.log.info('wrote %d rows to %s', len(rows), output)


class ScenarioApp(CommandApp):
    """Commands that evaluate one configured interferometer scenario."""
    classes = []

    port1 = Instance(Port1, allow_none=True)
    port0 = Instance(Port0, allow_none=True)
    interferometer = Instance(Interferometer, allow_none=True)
    detection = Instance(Detection, allow_none=True)

    def validate(self):
        super(ScenarioApp, self).validate()
        pmc = self.interferometer.pmc
        if pmc != 'none' and PmcSet(pmc).needs_vacuum_port0 and self.port0.beta_magnitude:
            self.error('%s assumes a squeezed vacuum in port 0, but beta_magnitude=%r'
                       % (pmc, self.port0.beta_magnitude))

    def build_scenario(self, alpha=None, beta=None):
        """The configured MziScenario, optionally with other magnitudes."""
        p1, p0, itf = self.port1, self.port0, self.interferometer
        alpha = p1.alpha_magnitude if alpha is None else alpha
        beta = p0.beta_magnitude if beta is None else beta
        if itf.pmc != 'none':
            port1, port0 = apply_pmc(PmcSet(itf.pmc), p1.alpha_phase, alpha, beta,
                                     p0.xi_factor, p1.zeta_factor, itf.convention)
        else:
            port1 = GaussianPort.from_polar(alpha, p1.alpha_phase, p1.zeta_factor, p1.zeta_phase)
            port0 = GaussianPort.from_polar(beta, p0.beta_phase, p0.xi_factor, p0.xi_phase)
        return MziScenario(port1=port1, port0=port0, convention=itf.convention,
                           phase=itf.phase, efficiency=itf.efficiency)


class QfiApp(ScenarioApp):
    name = 'gaussmzi-qfi'
    description = ('Print the Fisher matrix, the QFI, the quantum Cramer-Rao bound and '
                   'the sensitivity and sweet spot of each detection scheme for one '
                   'scenario. The report goes to standard error.')
    classes = [Port1, Port0, Interferometer, Detection]
    aliases = dict(MziApplication.aliases, phase='Interferometer.phase',
                   convention='Interferometer.convention', pmc='Interferometer.pmc',
                   efficiency='Interferometer.efficiency', scheme='Detection.scheme',
                   shots='Detection.shots')

    def report_lines(self):
        scenario = self.build_scenario()
        shots = self.detection.shots
        fm = fisher_matrix(scenario)
        information = qfi(fm)
        lines = ['F_ss = %.12g' % fm.f_ss,
                 'F_dd = %.12g' % fm.f_dd,
                 'F_sd = %.12g' % fm.f_sd,
                 'F    = %.12g' % information]
        try:
            lines.append('QCRB = %.12g (shots=%d)' % (qcrb(information, shots), shots))
        except NonPositiveInformation:
            self.log.warning('F = 0, this input carries no phase information')
            lines.append('QCRB = inf (shots=%d)' % shots)

        root = math.sqrt(shots)
        for scheme in self.detection.schemes():
            here = lossy_sensitivity(scheme, scenario)
            try:
                best = lossy_optimal_working_point(scheme, scenario)
                sweet = 'sweet spot phi = %.12g, dphi = %.12g' % (best.phase,
                                                                  best.delta_phi / root)
            except FlatObjective:
                sweet = 'no sweet spot'
            lines.append('%-10s dphi(phi=%.6g) = %.12g; %s' % (
                scheme.name, scenario.phase, here.delta_phi / root, sweet))

        r, z = self.port0.xi_factor, self.port1.zeta_factor
        alpha, beta = self.port1.alpha_magnitude, self.port0.beta_magnitude
        lines.append('best PMC at |alpha|=%g, |beta|=%g: %s'
                     % (alpha, beta, classify(alpha, beta, r, z).value))
        lines.append('regime boundaries at r=%g, z=%g:' % (r, z))
        for key, value in sorted(boundaries(r, z).as_dict().items()):
            if key not in ('r', 'z'):
                lines.append('  %-17s = %.6g' % (key, value))
        return lines

    def start(self):
        for line in self.report_lines():
            print(line, file=sys.stderr)


class SweepApp(ScenarioApp):
    name = 'gaussmzi-sweep'
    description = ('Scan phi, |alpha|, |beta| or eta and write one CSV row per point with '
                   'the sensitivity of each detection scheme, the QFI and the QCRB.')
    classes = [Port1, Port0, Interferometer, Detection, Sweep]
    aliases = dict(QfiApp.aliases, axis='Sweep.axis', start='Sweep.start', stop='Sweep.stop',
                   steps='Sweep.steps', output='Sweep.output', workers='Sweep.workers')
    flags = {'optimal': ({'Sweep': {'optimal': True}},
                         'Report every scheme at its own sweet spot.')}

    sweep = Instance(Sweep, allow_none=True)

    def validate(self):
        super(SweepApp, self).validate()
        pmc = self.interferometer.pmc
        if self.sweep.axis == 'beta' and pmc != 'none' and PmcSet(pmc).needs_vacuum_port0:
            self.error('cannot sweep beta under %s, which needs beta = 0' % pmc)

    def scenarios(self):
        axis = self.sweep.axis
        for value in self.sweep.values():
            value = float(value)
            if axis == 'phi':
                yield value, self.build_scenario().with_phase(value)
            elif axis == 'alpha':
                yield value, self.build_scenario(alpha=value)
            elif axis == 'beta':
                yield value, self.build_scenario(beta=value)
            else:
                yield value, self.build_scenario().with_efficiency(value)

    def columns(self, schemes):
        columns = [self.sweep.axis]
        for scheme in schemes:
            if self.sweep.optimal:
                columns.append('phi_opt_%s' % scheme.name)
            columns.append('dphi_%s' % scheme.name)
        return columns + ['qfi', 'dphi_qcrb']

    def start(self):
        schemes = self.detection.schemes()
        values, scenarios = zip(*self.scenarios())
        evaluate = functools.partial(_sweep_row, schemes=schemes, optimal=self.sweep.optimal,
                                     shots=self.detection.shots)
        progress = ProgressReporter(self.log, len(scenarios), 'rows',
                                    report_interval=max(1, len(scenarios) // 10))
        progress.start()

        rows = []
        if self.sweep.workers > 1:
            with ProcessPoolExecutor(max_workers=self.sweep.workers) as pool:
                # map keeps the axis order whatever the completion order
                for done, row in enumerate(pool.map(evaluate, scenarios), 1):
                    rows.append(row)
                    progress.report(done)
        else:
            for done, scenario in enumerate(scenarios, 1):
                rows.append(evaluate(scenario))
                progress.report(done)

        self.write_csv(self.sweep.output, self.columns(schemes),
                       [[value] + row for value, row in zip(values, rows)])


class RegimesApp(CommandApp):
    name = 'gaussmzi-regimes'
    description = ('Map the best phase-matching condition over a grid of coherent '
                   'amplitudes at the configured squeezing factors (Port0.xi_factor, '
                   'Port1.zeta_factor). The regime boundaries go in the CSV comments.')
    classes = [Port1, Port0, Regimes]
    aliases = dict(MziApplication.aliases, xi_factor='Port0.xi_factor',
                   zeta_factor='Port1.zeta_factor',
                   steps='Regimes.steps', output='Regimes.output')

    port1 = Instance(Port1, allow_none=True)
    port0 = Instance(Port0, allow_none=True)
    regimes = Instance(Regimes, allow_none=True)

    def start(self):
        r, z = self.port0.xi_factor, self.port1.zeta_factor
        bounds = boundaries(r, z)
        comments = ['%s = %.12g' % (key, value) for key, value in sorted(bounds.as_dict().items())]

        grid = self.regimes
        alphas = np.linspace(0.0, grid.alpha_max, grid.steps)
        betas = np.linspace(0.0, grid.beta_max, grid.steps)
        comments.append('beta_13 and beta_23 are curves over |alpha|, listed at the grid '
                        '|alpha|; nan where a curve is undefined')
        for alpha in alphas:
            for name in ('beta_13', 'beta_23'):
                comments.append('%s(alpha=%.6g) = %.12g'
                                % (name, alpha, _curve_value(getattr(bounds, name), alpha)))
        progress = ProgressReporter(self.log, grid.steps, 'grid lines',
                                    report_interval=max(1, grid.steps // 10))
        progress.start()

        rows = []
        for done, alpha in enumerate(alphas, 1):
            for beta in betas:
                alpha, beta = float(alpha), float(beta)
                values = [qfi_closed_form(alpha, beta, r, z, pmc) for pmc in PmcSet.GENERAL]
                rows.append([alpha, beta, classify(alpha, beta, r, z).value] + values)
            progress.report(done)

        self.write_csv(grid.output, ['alpha', 'beta', 'pmc', 'qfi_pmc1', 'qfi_pmc2', 'qfi_pmc3'],
                       rows, comments)


class HeisenbergApp(CommandApp):
    name = 'gaussmzi-heisenberg'
    description = ('Evaluate the asymptotic and the exact QFI, both divided by N^2, over '
                   'the power-fraction simplex for the configured PMC set, or for every '
                   'set when Interferometer.pmc is none.')
    classes = [Interferometer, Heisenberg]
    aliases = dict(MziApplication.aliases, pmc='Interferometer.pmc', steps='Heisenberg.steps',
                   output='Heisenberg.output')

    interferometer = Instance(Interferometer, allow_none=True)
    heisenberg = Instance(Heisenberg, allow_none=True)

    def families(self):
        if self.interferometer.pmc == 'none':
            return list(PmcSet)
        return [PmcSet(self.interferometer.pmc)]

    def start(self):
        n_tot = self.heisenberg.n_tot
        rows, comments = [], []
        for pmc in self.families():
            optimum = heisenberg_optima(pmc)
            best = replace(optimum.representative, n_tot=n_tot)
            exact = qfi_closed_form(*fractions_to_parameters(best), pmc=pmc)
            comments.append('%s optimum %s: exact F/N^2 = %.6g at %s'
                            % (pmc.value, _describe(optimum.manifolds), exact / n_tot**2,
                               best.as_tuple()))
            for f in simplex_grid(self.heisenberg.steps, n_tot, pmc.needs_vacuum_port0):
                asym = asymptotic_qfi(pmc, f) / n_tot**2
                alpha, beta, r, z = fractions_to_parameters(f)
                value = qfi_closed_form(alpha, beta, r, z, pmc) / n_tot**2
                rows.append([pmc.value] + list(f.as_tuple()) + [asym, value, optimum.contains(f)])

        self.write_csv(self.heisenberg.output,
                       ['pmc', 'f_alpha', 'f_beta', 'f_r', 'f_z', 'f_asym_norm',
                        'f_exact_norm', 'optimal'], rows, comments)


class VerifyApp(CommandApp):
    name = 'gaussmzi-verify'
    description = ('Compare the closed-form means, variances and Fisher matrix with a '
                   'truncated Fock-space simulation on random scenarios. Exit status 3 '
                   'if a comparison fails, 4 if a scenario does not fit the cutoff.')
    classes = [Verify]
    aliases = dict(MziApplication.aliases, seed='Verify.seed', cases='Verify.cases',
                   output='Verify.output')

    verify = Instance(Verify, allow_none=True)

    def draw_scenario(self, rng):
        box = self.verify
        alpha, beta = rng.uniform(0, box.alpha_max), rng.uniform(0, box.beta_max)
        r, z = rng.uniform(0, box.r_max), rng.uniform(0, box.z_max)
        theta_alpha, phi_zeta, theta_beta, theta = rng.uniform(0, TWO_PI, size=4)
        convention = list(BsConvention)[int(rng.integers(2))]
        return MziScenario(port1=GaussianPort.from_polar(alpha, theta_alpha, z, phi_zeta),
                           port0=GaussianPort.from_polar(beta, theta_beta, r, theta),
                           convention=convention)

    def case_checks(self, case, scenario, rng):
        box = self.verify
        convention = scenario.convention
        state = oracle.prepare(scenario, box.n_max)
        checks = []

        def add(phi, name, expected, observed, tolerance, scale=1.0):
            checks.append(Check(case, convention.value, phi, name, float(expected),
                                float(observed), tolerance, scale))

        fm = fisher_matrix(scenario)
        numeric = oracle.numerical_fisher(scenario, box.n_max, box.step)
        scale = max(fm.f_ss, fm.f_dd)
        for element in ('f_ss', 'f_dd', 'f_sd'):
            add(math.nan, element, getattr(fm, element), getattr(numeric, element),
                FISHER_RTOL, scale)

        for phi in rng.uniform(0, TWO_PI, size=box.phases):
            phi = float(phi)
            out = oracle.evolve(state, phi, convention)
            here = scenario.with_phase(phi)

            def measured(observable, local_phase=0.0):
                return oracle.measure_stats(out, observable, local_phase)

            single = observable_stats(SingleModeIntensity(), here)
            n4 = measured('n4')
            add(phi, 'n4_mean', single.mean, n4, MEAN_RTOL)
            add(phi, 'n4_var', single.variance, measured('n4_sq') - n4**2, VARIANCE_RTOL)

            diff = observable_stats(DifferenceIntensity(), here)
            nd = measured('nd')
            add(phi, 'nd_mean', diff.mean, nd, MEAN_RTOL)
            add(phi, 'nd_var', diff.variance, measured('nd_sq') - nd**2, VARIANCE_RTOL)

            local = float(rng.uniform(0, TWO_PI))
            hom = observable_stats(Homodyne(local), here)
            x = measured('x', local)
            add(phi, 'x_mean', hom.mean, x, MEAN_RTOL)
            add(phi, 'x_var', hom.variance, measured('x_sq', local) - x**2, VARIANCE_RTOL)

            eta = float(rng.uniform(0.5, 1.0))
            counts = oracle.detected_distribution(out, 0, eta)
            k = np.arange(counts.size)
            mean = float(np.dot(k, counts))
            variance = float(np.dot(k**2, counts)) - mean**2
            lossy, _, _ = lossy_variance(SingleModeIntensity(), here.with_efficiency(eta))
            add(phi, 'detected_mean', single.mean, mean / eta, MEAN_RTOL)
            add(phi, 'detected_var', lossy, variance / eta**2, VARIANCE_RTOL)
        return checks

    def two_squeezer_checks(self, rng):
        """Opposite squeezers are an eigenstate of the first beam splitter;
        equal squeezers make <N_d> independent of the phase."""
        box = self.verify
        factor = float(rng.uniform(0.5, 1.0)) * box.r_max
        phase = float(rng.uniform(0, TWO_PI))
        vacuum_port0 = GaussianPort.from_polar(0.0, 0.0, factor, phase)
        checks = []

        opposite = MziScenario(port1=GaussianPort.from_polar(0.0, 0.0, factor, phase + math.pi),
                               port0=vacuum_port0)
        state = oracle.prepare(opposite, box.n_max)
        arms = oracle.split(state, BsConvention.SYMMETRIC)
        checks.append(Check(-1, 'symmetric', math.nan, 'eigenstate_fidelity', 1.0,
                            oracle.fidelity(arms, state), FIDELITY_TOL))

        equal = MziScenario(port1=GaussianPort.from_polar(0.0, 0.0, factor, phase),
                            port0=vacuum_port0)
        state = oracle.prepare(equal, box.n_max)
        for phi in rng.uniform(0, TWO_PI, size=box.phases):
            phi = float(phi)
            above = oracle.measure_stats(oracle.evolve(state, phi + FLATNESS_STEP), 'nd')
            below = oracle.measure_stats(oracle.evolve(state, phi - FLATNESS_STEP), 'nd')
            checks.append(Check(-1, 'symmetric', phi, 'nd_slope', 0.0,
                                (above - below) / (2 * FLATNESS_STEP), FLATNESS_TOL))
        return checks

    def start(self):
        box = self.verify
        if box.cases == 0:
            self.log.warning('empty box, nothing to verify')
            return

        rng = np.random.default_rng(box.seed)
        checks, worst, truncated = [], None, 0
        progress = ProgressReporter(self.log, box.cases, 'cases',
                                    report_interval=max(1, box.cases // 10))
        progress.start()
        for case in range(box.cases):
            scenario = self.draw_scenario(rng)
            try:
                checks.extend(self.case_checks(case, scenario, rng))
            except TruncationError as e:
                self.log.error('case %d: %s', case, e)
                truncated += 1
                if worst is None or e.tail > worst.tail:
                    worst = e
            except MziError as e:
                self.log.error('case %d: %s', case, e)
                checks.append(Check(case, scenario.convention.value, math.nan,
                                    type(e).__name__, 0.0, math.inf, 0.0))
            progress.report(case + 1)
        if box.r_max > 0:
            try:
                checks.extend(self.two_squeezer_checks(rng))
            except TruncationError as e:
                self.log.error('two-squeezer checks: %s', e)
                truncated += 1
                if worst is None or e.tail > worst.tail:
                    worst = e

        self.write_csv(box.output, ['case', 'convention', 'phi', 'check', 'expected',
                                    'observed', 'tolerance', 'passed'],
                       [c.as_row() for c in checks])

        failed = [c for c in checks if not c.passed]
        for c in failed:
            self.log.warning('case %d %s at phi=%.6g: expected %.12g, got %.12g',
                             c.case, c.name, c.phi, c.expected, c.observed)
        print('verify: %d cases, %d checks, %d failed, %d truncated'
              % (box.cases, len(checks), len(failed), truncated), file=sys.stderr)
        if worst is not None:
            raise worst
        if failed:
            raise VerificationFailure('%d of %d checks failed' % (len(failed), len(checks)))


class GaussMziApp(MziApplication):
    name = 'gaussmzi'
    description = ('Phase sensitivity of a Mach-Zehnder interferometer fed with two '
                   'squeezed coherent states: Fisher information, detection schemes, '
                   'phase-matching regimes and a Fock-space cross-check.')
    classes = []
    subcommands = dict(
        qfi=(QfiApp, QfiApp.description.split('. ')[0] + '.'),
        sweep=(SweepApp, SweepApp.description.split('. ')[0] + '.'),
        regimes=(RegimesApp, RegimesApp.description.split('. ')[0] + '.'),
        heisenberg=(HeisenbergApp, HeisenbergApp.description.split('. ')[0] + '.'),
        verify=(VerifyApp, VerifyApp.description.split('. ')[0] + '.'),
    )

    def start(self):
        if self.subapp is None:
            self.print_help()
            self.error('no command given, choose one of %s' % ', '.join(sorted(self.subcommands)))
        return self.subapp.start()

#-----------------------------------------------------------------------------
# Functions
#-----------------------------------------------------------------------------


def main(argv=None):
    """Run gaussmzi and return its exit status."""
    app = GaussMziApp.instance()
    app.initialize(argv)
    try:
        app.start()
    except TruncationError as e:
        app.log.error('%s', e)
        return 4
    except VerificationFailure as e:
        app.log.error('verification failed: %s', e)
        return 3
    except MziError as e:
        app.error(e)
    return 0
