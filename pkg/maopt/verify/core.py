# coding=utf-8
# Copyright (C) the maopt developers (2024)
#
# This file is part of maopt.
#
# maopt is free software: you can redistribute it and/or modify
# it under the terms of the GNU General Public License as published by
# the Free Software Foundation, either version 3 of the License, or
# (at your option) any later version.
#
# maopt is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU General Public License for more details.
#
# You should have received a copy of the GNU General Public License
# along with maopt.  If not, see <http://www.gnu.org/licenses/>.

"""Numerical property suites

Every suite draws its own random instances from a seeded generator and
checks one property of the optimiser, returning a `SuiteResult` that
counts how many instances failed and records the worst error seen.

=================  ============================================================
``surrogate``      quadratic and isotropic bounds hold and are tight, and the
                   BS and user surrogates majorize their objectives
``gradient``       analytic gradients of the linear forms match central
                   finite differences
``equivalence``    the WMMSE objective at optimal receive scalars and
                   weights equals the rate-based objective
``power``          beamformers meet the power budget, with equality when
                   the dual variable is positive
``monotonicity``   the WMMSE objective never increases across block updates
                   and the weighted sum rate never decreases
``feasibility``    every run keeps the antennas inside their regions and
                   apart by the minimum distance
``qp``             the active-set QP solver matches exhaustive enumeration
``grid``           a single movable antenna started from the best point of
                   a fine grid ends at least as good as that point
``baselines``      moving both ends beats moving one, which beats moving
                   neither, and the planar mode is fast and close
=================  ============================================================
"""

import logging
from collections import OrderedDict

import numpy

from .. import (beamforming, channel, const, qp, utils)
from ..bcd import (BaselineKind, run_bcd, run_monte_carlo)
from ..position import (bs, core, user)
from ..scenario import (Scenario, ScenarioConfig)

__author__ = 'The maopt developers'

LOGGER = logging.getLogger(__name__)

# tolerances
BOUND_TOL = 1e-9
GRADIENT_TOL = 1e-5
EQUIVALENCE_TOL = 1e-8
POWER_TOL = 1e-8
POWER_RTOL = 1e-6
OBJECTIVE_RTOL = 1e-9
WSR_RTOL = 1e-8
QP_TOL = 1e-8
GRID_TOL = 1e-3
PLANAR_WSR_RATIO = .9


# -- results ------------------------------------------------------------------

class SuiteResult(object):
    """Outcome of one property suite

    Parameters
    ----------
    name : `str`
        the suite name

    total : `int`
        number of checks made

    failures : `int`
        number of checks that failed

    worst : `float`
        largest error seen, relative to the check's own tolerance scale
    """
    def __init__(self, name, total=0, failures=0, worst=0.):
        self.name = name
        self.total = total
        self.failures = failures
        self.worst = worst

    @property
    def passed(self):
        return self.failures == 0

    def record(self, ok, error=0.):
        """Count one check
        """
        self.total += 1
        self.failures += not ok
        if numpy.isfinite(error):
            self.worst = max(self.worst, float(error))
        else:
            self.worst = numpy.inf

    def __str__(self):
        return '{0}: {1}/{2} passed (worst error {3:.3g})'.format(
            self.name, self.total - self.failures, self.total, self.worst)

    def __repr__(self):
        return '<SuiteResult({0!r}, total={1}, failures={2})>'.format(
            self.name, self.total, self.failures)


# -- random instances ---------------------------------------------------------

def _complex_normal(rng, *shape):
    return (rng.standard_normal(shape) +
            1j * rng.standard_normal(shape)) / numpy.sqrt(2)


def _directions(rng, count):
    return channel.direction_vector(rng.uniform(0, numpy.pi, count),
                                    rng.uniform(0, numpy.pi, count))


def small_config(rng, mode='general', **params):
    """A four-antenna, two-user configuration with a random seed
    """
    params.setdefault('num_antennas', 4)
    params.setdefault('num_users', 2)
    params.setdefault('tx_paths', 3)
    params.setdefault('rx_paths', 3)
    return ScenarioConfig(mode=mode, seed=int(rng.integers(2 ** 31)),
                          **params)


def random_state(rng, scenario):
    """A random beamformer state at full power, with optimal receive
    scalars and weights, for a scenario
    """
    config = scenario.config
    H = channel.channel_matrix(scenario.positions, scenario.paths,
                               config.wavelength)
    W = _complex_normal(rng, config.num_antennas, config.num_users)
    W *= numpy.sqrt(config.p_max) / numpy.linalg.norm(W)
    return H, beamforming.refresh(H, beamforming.BeamformerState(W),
                                  config.sigma2)


def random_positions(rng, scenario):
    """Perturb the starting positions of a scenario, keeping every
    antenna inside its region
    """
    config = scenario.config
    positions = scenario.positions.copy()
    positions.r = numpy.array([region.sample(rng)
                               for region in config.rx_regions])
    if config.mode == 'planar':
        positions.t = numpy.array([cell.sample(rng)
                                   for cell in config.planar_cells])
    return positions


# -- suites -------------------------------------------------------------------

def check_surrogate(samples, rng):
    """Check the majorization bounds on random instances
    """
    result = SuiteResult('surrogate')
    for _ in range(samples):
        # quadratic bound
        size = int(rng.integers(1, 6))
        root = _complex_normal(rng, size, size)
        L = root @ root.conj().T
        M = numpy.trace(L).real * numpy.eye(size)
        x, x0 = _complex_normal(rng, size), _complex_normal(rng, size)
        exact = float(numpy.real(x.conj() @ L @ x))
        scale = max(1., abs(exact), numpy.trace(L).real)
        gap = core.quadratic_bound(L, M, x, x0) - exact
        tight = abs(core.quadratic_bound(L, M, x0, x0) -
                    numpy.real(x0.conj() @ L @ x0))
        result.record(gap >= -BOUND_TOL * scale and
                      tight <= BOUND_TOL * scale,
                      max(-gap, tight) / scale)

        # isotropic sandwich
        wavelength = rng.uniform(.5, 2)
        linear = _complex_normal(rng, size)
        directions = _directions(rng, size)
        point0 = rng.uniform(-2, 2, 2)
        point = point0 + rng.normal(0, wavelength / 4, 2)
        lower, upper = core.isotropic_bounds(
            linear, directions, point, point0, wavelength)
        value = core.linear_form(linear, directions, point, wavelength)
        scale = max(1., numpy.abs(linear).sum())
        error = max(lower - value, value - upper, 0.) / scale
        result.record(error <= BOUND_TOL, error)

        # BS and user surrogates on a random scenario
        scenario = Scenario.generate(small_config(
            rng, mode=const.MODES[int(rng.integers(2))]))
        config = scenario.config
        positions = random_positions(rng, scenario)
        scenario = Scenario(config, scenario.paths, positions)
        _, state = random_state(rng, scenario)
        tight = bool(rng.integers(2))
        m = int(rng.integers(config.num_antennas))
        k = int(rng.integers(config.num_users))
        path = scenario.paths[k]
        t_m0 = positions.t[m]
        point = t_m0 + rng.normal(0, config.wavelength / 4, 2)
        A, b = bs.build_coefficients(k, m, scenario.paths, positions, state,
                                     config.alpha, config.wavelength)
        surrogate = bs.build_surrogate(A, b, t_m0, path, config.wavelength,
                                       tight=tight)
        result.record(*_majorizes(
            surrogate, lambda p: core.quadratic_form(
                A, b, channel.field_response_tx(p, path, config.wavelength)),
            point))

        r_k0 = positions.r[k]
        point = r_k0 + rng.normal(0, config.wavelength / 4, 2)
        C, d = user.build_user_coefficients(k, scenario.paths, positions,
                                            state, config.wavelength)
        surrogate = user.build_user_surrogate(C, d, r_k0, path,
                                              config.wavelength, tight=tight)
        result.record(*_majorizes(
            surrogate, lambda p: core.quadratic_form(
                C, d, channel.field_response_rx(p, path, config.wavelength)),
            point))
    return result


def _majorizes(surrogate, objective, point):
    """Whether ``surrogate`` bounds ``objective`` at ``point`` and is
    tight at its expansion point, with the relative error
    """
    scale = max(1., abs(surrogate.value0),
                numpy.abs(surrogate.linear_hat).sum())
    gap = surrogate.value(point) - objective(point)
    tight = abs(surrogate.value(surrogate.expansion_point) -
                objective(surrogate.expansion_point))
    error = max(-gap, tight, 0.) / scale
    return error <= BOUND_TOL, error


def _central_difference(func, point, step):
    grad = numpy.zeros(2)
    for i in range(2):
        shift = numpy.zeros(2)
        shift[i] = step
        grad[i] = (func(point + shift) - func(point - shift)) / (2 * step)
    return grad


def check_gradient(samples, rng):
    """Compare the BS and user linear-form gradients with central
    differences at a step of ``1e-6`` wavelengths
    """
    result = SuiteResult('gradient')
    for _ in range(samples):
        scenario = Scenario.generate(small_config(rng))
        config = scenario.config
        _, state = random_state(rng, scenario)
        wavelength = config.wavelength
        step = 1e-6 * wavelength
        k = int(rng.integers(config.num_users))
        m = int(rng.integers(config.num_antennas))
        path = scenario.paths[k]
        positions = scenario.positions
        A, b = bs.build_coefficients(k, m, scenario.paths, positions, state,
                                     config.alpha, wavelength)
        C, d = user.build_user_coefficients(k, scenario.paths, positions,
                                            state, wavelength)
        errors = []
        for linear, directions, point in (
                (bs.build_surrogate(A, b, positions.t[m], path,
                                    wavelength).linear_hat,
                 path.n_t, positions.t[m] + rng.uniform(-.5, .5, 2)),
                (user.build_user_surrogate(C, d, positions.r[k], path,
                                           wavelength).linear_hat,
                 path.n_r, positions.r[k] + rng.uniform(-.5, .5, 2))):
            analytic = core.linear_form_gradient(linear, directions, point,
                                                 wavelength)
            numeric = _central_difference(
                lambda p: core.linear_form(linear, directions, p, wavelength),
                point, step)
            errors.append(numpy.linalg.norm(analytic - numeric) /
                          max(1., numpy.linalg.norm(analytic)))
        result.record(max(errors) <= GRADIENT_TOL, max(errors))
    return result


def check_equivalence(samples, rng):
    """Check that the WMMSE objective equals ``sum alpha (1 - log(1 +
    gamma))`` once the receive scalars and weights are optimal
    """
    result = SuiteResult('equivalence')
    for _ in range(samples):
        M, K = (int(n) for n in rng.integers(1, 7, 2))
        H = _complex_normal(rng, M, K)
        W = _complex_normal(rng, M, K)
        alpha = rng.uniform(0, 2, K)
        sigma2 = 10 ** rng.uniform(-2, 1)
        u = beamforming.update_u(H, W, sigma2)
        v = beamforming.update_v(H, W, u)
        e = beamforming.mse(H, W, u, sigma2)
        gamma = beamforming.sinr(H, W, sigma2)
        reference = float(numpy.dot(alpha, 1 - numpy.log1p(gamma)))
        error = abs(beamforming.wmmse_objective(e, alpha, v) -
                    reference) / max(1., abs(reference))
        result.record(error <= EQUIVALENCE_TOL, error)
    return result


def check_power(samples, rng):
    """Check the power budget of :func:`~maopt.beamforming.update_w`
    """
    result = SuiteResult('power')
    for _ in range(samples):
        M, K = (int(n) for n in rng.integers(1, 7, 2))
        H = _complex_normal(rng, M, K)
        u = _complex_normal(rng, K)
        v = rng.uniform(1, 10, K)
        alpha = rng.uniform(.1, 2, K)
        p_max = 10 ** rng.uniform(-2, 2)
        mu, W = beamforming.PowerDual(H, u, v, alpha).solve(p_max)
        power = beamforming.transmit_power(W)
        excess = (power - p_max) / max(1., p_max)
        ok = excess <= POWER_TOL
        error = max(excess, 0.)
        if mu > 0:
            gap = abs(power - p_max) / p_max
            ok &= gap <= POWER_RTOL
            error = max(error, gap)
        result.record(ok, error)
    return result


def _runs(samples, rng):
    """Full runs alternating between the movement modes
    """
    for i in range(samples):
        config = small_config(rng, mode=const.MODES[i % 2], max_iters=50)
        scenario = Scenario.generate(config)
        yield scenario, run_bcd(scenario, BaselineKind.TMA_RMA)


def check_monotonicity(samples, rng):
    """Check every block update and every outer iteration of full runs
    """
    result = SuiteResult('monotonicity')
    for _, report in _runs(samples, rng):
        objective = numpy.array([obj for _, _, obj in
                                 report.block_objectives])
        rises = numpy.diff(objective) / numpy.maximum(
            1., numpy.abs(objective[:-1]))
        wsr = report.wsr
        drops = -numpy.diff(wsr) / numpy.maximum(1., numpy.abs(wsr[:-1]))
        worst = max(rises.max(initial=0.) / OBJECTIVE_RTOL,
                    drops.max(initial=0.) / WSR_RTOL)
        result.record(worst <= 1., worst)
    return result


def check_feasibility(samples, rng):
    """Check the constraints after every iteration of full runs
    """
    result = SuiteResult('feasibility')
    for scenario, report in _runs(samples, rng):
        config = scenario.config
        worst = max(max(r.distance_residual, r.region_residual,
                        r.power_residual / max(1., config.p_max))
                    for r in report.records)
        positions = report.positions
        if config.mode == 'general':
            worst = max(worst, config.min_distance -
                        utils.min_distance(positions.t))
            inside = config.tx_region.contains(positions.t,
                                               tol=const.FEASIBILITY_TOL)
        else:
            inside = all(cell.contains(t, tol=const.FEASIBILITY_TOL)
                         for t, cell in zip(positions.t,
                                            config.planar_cells))
        inside &= all(region.contains(r, tol=const.FEASIBILITY_TOL)
                      for r, region in zip(positions.r, config.rx_regions))
        result.record(bool(numpy.all(inside)) and
                      worst <= const.FEASIBILITY_TOL, max(worst, 0.))
    return result


def random_qp(rng, max_constraints=15):
    """A random feasible QP and a feasible starting point for it
    """
    center = rng.uniform(-3, 3, 2)
    box = utils.Rectangle.centered(rng.uniform(.5, 5), rng.uniform(.5, 5),
                                   center=center)
    start = box.sample(rng)
    count = int(rng.integers(0, max_constraints + 1))
    angles = rng.uniform(0, 2 * numpy.pi, count)
    normals = numpy.column_stack((numpy.cos(angles), numpy.sin(angles)))
    offsets = normals @ start - rng.exponential(.5, count)
    problem = qp.QpProblem(10 ** rng.uniform(-1, 1),
                           rng.normal(0, 10, 2), normals, offsets, box)
    return problem, start


def check_qp(samples, rng):
    """Compare :func:`~maopt.qp.solve` against
    :func:`~maopt.qp.solve_exhaustive`
    """
    result = SuiteResult('qp')
    for _ in range(samples):
        problem, start = random_qp(rng)
        solved = qp.solve(problem, start)
        oracle = qp.solve_exhaustive(problem)
        error = abs(solved.objective - oracle.objective) / max(
            1., abs(oracle.objective))
        result.record(error <= QP_TOL and problem.is_feasible(solved.x),
                      error)
    return result


def check_grid(samples, rng, points=201):
    """Start a single-antenna run from the best point of a grid over
    the transmit region and check it ends no worse
    """
    result = SuiteResult('grid')
    for _ in range(samples):
        config = ScenarioConfig(num_antennas=1, num_users=1, tx_paths=2,
                                rx_paths=2, seed=int(rng.integers(2 ** 31)),
                                max_iters=100)
        scenario = Scenario.generate(config)
        region = config.tx_region
        xs, ys = numpy.meshgrid(
            numpy.linspace(region.xmin, region.xmax, points),
            numpy.linspace(region.ymin, region.ymax, points))
        grid = numpy.column_stack((xs.ravel(), ys.ravel()))
        r = scenario.positions.r
        gains = numpy.abs(channel.assemble_channel(
            grid, r[0], scenario.paths[0], config.wavelength)) ** 2
        best = int(gains.argmax())
        grid_wsr = float(config.alpha[0] * numpy.log1p(
            config.p_max * gains[best] / config.sigma2))
        start = Scenario(config, scenario.paths,
                         channel.PositionState(grid[best:best + 1], r))
        report = run_bcd(start, BaselineKind.TMA_RFPA)
        shortfall = (grid_wsr - report.wsr[-1]) / max(1., grid_wsr)
        result.record(shortfall <= GRID_TOL, max(shortfall, 0.))
    return result


def check_baselines(samples, rng, nproc=1):
    """Compare the baselines and movement modes over seeded trials

    Four checks are made on the trial means: the full scheme beats both
    single-ended schemes, both beat fixed antennas, the planar BS block
    is faster than the general one, and the planar rate is within
    ``PLANAR_WSR_RATIO`` of the general rate.
    """
    result = SuiteResult('baselines')
    config = ScenarioConfig(num_antennas=8, num_users=3,
                            seed=int(rng.integers(2 ** 31)))
    report = run_monte_carlo(config, baselines=list(BaselineKind),
                             trials=samples, modes=const.MODES, nproc=nproc)
    summary = report.summary().set_index(['mode', 'baseline'])
    general = summary.loc['general']
    wsr = general['wsr_mean']
    middle = max(wsr['TFPA_RMA'], wsr['TMA_RFPA'])
    for better, worse in ((wsr['TMA_RMA'], middle),
                          (min(wsr['TFPA_RMA'], wsr['TMA_RFPA']),
                           wsr['FPA'])):
        result.record(better >= worse,
                      max(worse - better, 0.) / max(1., abs(worse)))
    planar = summary.loc[('planar', 'TMA_RMA')]
    full = general.loc['TMA_RMA']
    ratio = planar['elapsed_ms_bs_mean'] / full['elapsed_ms_bs_mean']
    result.record(ratio < 1., max(ratio - 1., 0.))
    closeness = planar['wsr_mean'] / full['wsr_mean']
    result.record(closeness >= PLANAR_WSR_RATIO,
                  max(PLANAR_WSR_RATIO - closeness, 0.))
    LOGGER.info("planar/general: BS block time ratio {0:.3f}, total time "
                "ratio {1:.3f}, rate ratio {2:.4f}".format(
                    ratio, planar['elapsed_ms_mean'] / full['elapsed_ms_mean'],
                    closeness))
    return result


# -- registry -----------------------------------------------------------------

SUITES = OrderedDict([
    ('surrogate', (check_surrogate, 1000)),
    ('gradient', (check_gradient, 100)),
    ('equivalence', (check_equivalence, 1000)),
    ('power', (check_power, 500)),
    ('monotonicity', (check_monotonicity, 20)),
    ('feasibility', (check_feasibility, 20)),
    ('qp', (check_qp, 500)),
    ('grid', (check_grid, 20)),
    ('baselines', (check_baselines, 50)),
])


def run_suites(name='all', samples=None, seed=0):
    """Run one suite, or every suite with ``name='all'``

    Parameters
    ----------
    name : `str`, optional
        a key of `SUITES` or ``'all'``

    samples : `int`, optional
        number of instances per suite, default: each suite's own

    seed : `int`, optional
        seed for the random instances, default: ``0``

    Returns
    -------
    results : `list` of `SuiteResult`

    Raises
    ------
    ValueError
        if ``name`` is not a known suite
    """
    if name == 'all':
        names = list(SUITES)
    elif name in SUITES:
        names = [name]
    else:
        raise ValueError("unknown suite {0!r}, valid suites are: {1}".format(
            name, ', '.join(['all'] + list(SUITES))))
    results = []
    for suite in names:
        func, default = SUITES[suite]
        rng = numpy.random.default_rng(seed)
        count = default if samples is None else samples
        LOGGER.debug("running {0} suite with {1} samples".format(
            suite, count))
        results.append(func(count, rng))
    return results
