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

"""Block-coordinate descent over beamformers and antenna positions

Each outer iteration runs three blocks in turn:

1. a fixed number of WMMSE passes over the beamformers,
2. one majorization-minimization sweep over the BS antenna positions
   (general or planar movement mode),
3. one majorization-minimization step for every user antenna,

then refreshes the receive scalars and weights and records the
weighted sum rate.  Every block can only lower the WMMSE objective, so
the recorded rate never decreases.
"""

import enum
import logging
import multiprocessing
import time

import numpy
import pandas

from .. import (beamforming, channel, const, utils)
from ..position import (sweep_bs_positions, sweep_user_positions)
from ..scenario import Scenario

__author__ = 'The maopt developers'

LOGGER = logging.getLogger(__name__)

BLOCKS = ('beamforming', 'bs', 'users')


# -- baselines ----------------------------------------------------------------

class BaselineKind(enum.Enum):
    """Which antenna positions are optimised

    ``TMA_RMA`` moves both ends, ``TFPA_RMA`` fixes the BS antennas,
    ``TMA_RFPA`` fixes the user antennas and ``FPA`` fixes both.
    """
    TMA_RMA = 'TMA_RMA'
    TFPA_RMA = 'TFPA_RMA'
    TMA_RFPA = 'TMA_RFPA'
    FPA = 'FPA'

    @classmethod
    def parse(cls, name):
        """Look up a baseline by name, ignoring case and ``-``/``_``
        """
        if isinstance(name, cls):
            return name
        const.baseline_flags(name)
        return cls(str(name).upper().replace('-', '_'))

    @property
    def move_bs(self):
        return const.BASELINES[self.value][0]

    @property
    def move_users(self):
        return const.BASELINES[self.value][1]

    @property
    def label(self):
        return self.value.replace('_', '-')


# -- reports ------------------------------------------------------------------

class IterationRecord(object):
    """Measurements taken at the end of one outer iteration

    Iteration 0 describes the starting point.  Elapsed times are wall
    clock seconds per block.
    """
    __slots__ = ('iteration', 'objective', 'wsr', 'elapsed',
                 'distance_residual', 'region_residual', 'power_residual',
                 'qp_solves')

    def __init__(self, iteration, objective, wsr, elapsed=(0., 0., 0.),
                 distance_residual=0., region_residual=0.,
                 power_residual=0., qp_solves=0):
        self.iteration = iteration
        self.objective = objective
        self.wsr = wsr
        self.elapsed = tuple(elapsed)
        self.distance_residual = distance_residual
        self.region_residual = region_residual
        self.power_residual = power_residual
        self.qp_solves = qp_solves

    @property
    def warmup(self):
        return self.iteration <= 1

    def to_dict(self):
        out = {key: getattr(self, key) for key in self.__slots__
               if key != 'elapsed'}
        for block, seconds in zip(BLOCKS, self.elapsed):
            out['elapsed_ms_{}'.format(block)] = 1e3 * seconds
        out['warmup'] = self.warmup
        return out


class RunReport(object):
    """Outcome of one :func:`run_bcd` call

    Attributes
    ----------
    baseline : `BaselineKind`
        the baseline that was run

    mode : `str`
        the BS movement mode

    records : `list` of `IterationRecord`
        one record per outer iteration, starting from iteration 0

    block_objectives : `list` of `tuple`
        ``(iteration, block, objective)`` after every block update

    positions : `~maopt.channel.PositionState`
        final antenna positions

    state : `~maopt.beamforming.BeamformerState`
        final beamformers, receive scalars and weights

    converged : `bool`
        whether the stopping rule fired before the iteration cap

    elapsed : `float`
        total wall-clock time in seconds
    """
    def __init__(self, baseline, mode):
        self.baseline = baseline
        self.mode = mode
        self.records = []
        self.block_objectives = []
        self.positions = None
        self.state = None
        self.converged = False
        self.elapsed = 0.

    @property
    def wsr(self):
        """Weighted sum rate after every iteration, in nats
        """
        return numpy.array([r.wsr for r in self.records])

    @property
    def objective(self):
        return numpy.array([r.objective for r in self.records])

    @property
    def iterations(self):
        return self.records[-1].iteration if self.records else 0

    @property
    def qp_solves(self):
        return sum(r.qp_solves for r in self.records)

    def block_time(self, block, warmup=False):
        """Mean per-iteration wall time of one block, in seconds

        Warm-up iterations are excluded unless ``warmup=True``, falling
        back to all iterations when nothing else is left.
        """
        index = BLOCKS.index(block)
        records = [r for r in self.records[1:] if warmup or not r.warmup]
        records = records or self.records[1:]
        if not records:
            return 0.
        return float(numpy.mean([r.elapsed[index] for r in records]))

    def to_frame(self):
        """Per-iteration records as a `pandas.DataFrame`
        """
        frame = pandas.DataFrame([r.to_dict() for r in self.records])
        frame['wsr_bits'] = frame['wsr'] / numpy.log(2)
        return frame

    def __repr__(self):
        return '<RunReport({0}, {1}, iterations={2}, wsr={3:.6g})>'.format(
            self.baseline.value, self.mode, self.iterations,
            self.records[-1].wsr if self.records else numpy.nan)


# -- feasibility --------------------------------------------------------------

def residuals(positions, state, config):
    """Constraint violations of the current state

    Returns
    -------
    distance : `float`
        shortfall of the smallest BS antenna spacing below
        ``min_distance`` (general mode only)

    region : `float`
        largest distance of any antenna outside its region or cell

    power : `float`
        excess transmit power over ``p_max``
    """
    distance = 0.
    if config.mode == 'general':
        distance = max(config.min_distance -
                       utils.min_distance(positions.t), 0.)
        regions = [config.tx_region] * positions.num_antennas
    else:
        regions = config.planar_cells
    regions = list(regions) + list(config.rx_regions)
    points = numpy.vstack((positions.t, positions.r))
    region = max(float(numpy.linalg.norm(p - cell.project(p)))
                 for p, cell in zip(points, regions))
    power = max(state.power - config.p_max, 0.)
    return distance, region, power


def check_feasible(positions, config, tol=const.FEASIBILITY_TOL):
    """Raise `ValueError` if the positions break any constraint
    """
    if (positions.num_antennas != config.num_antennas or
            positions.num_users != config.num_users):
        raise ValueError("positions {0!r} do not match {1!r}".format(
            positions, config))
    empty = beamforming.BeamformerState(
        numpy.zeros((config.num_antennas, config.num_users)))
    distance, region, _ = residuals(positions, empty, config)
    if distance > tol:
        raise ValueError("infeasible initial positions: BS antennas are "
                         "{:.3g} closer than min_distance".format(distance))
    if region > tol:
        raise ValueError("infeasible initial positions: an antenna lies "
                         "{:.3g} outside its region".format(region))


# -- block-coordinate descent -------------------------------------------------

def run_bcd(scenario, baseline=BaselineKind.TMA_RMA, config=None):
    """Maximise the weighted sum rate of a scenario

    Parameters
    ----------
    scenario : `~maopt.scenario.Scenario`
        the channel geometry and starting positions

    baseline : `BaselineKind` or `str`, optional
        which antenna positions to optimise, default: ``TMA_RMA``

    config : `~maopt.scenario.ScenarioConfig`, optional
        parameters to run with, default: ``scenario.config``

    Returns
    -------
    report : `RunReport`

    Raises
    ------
    ValueError
        if the starting positions are infeasible

    FloatingPointError
        if the objective becomes non-finite
    """
    config = scenario.config if config is None else config
    baseline = BaselineKind.parse(baseline)
    paths = scenario.paths
    positions = scenario.positions.copy()
    check_feasible(positions, config)
    alpha, sigma2, p_max = config.alpha, config.sigma2, config.p_max
    report = RunReport(baseline, config.mode)
    start = time.perf_counter()

    H = channel.channel_matrix(positions, paths, config.wavelength)
    state = beamforming.refresh(
        H, beamforming.BeamformerState(
            beamforming.initial_beamformers(H, p_max)), sigma2)
    metrics = beamforming.link_metrics(H, state, alpha, sigma2)
    report.records.append(IterationRecord(
        0, metrics.obj, metrics.wsr, (0., 0., 0.),
        *residuals(positions, state, config)))
    report.block_objectives.append((0, 'refresh', metrics.obj))

    stalled = 0
    for iteration in range(1, config.max_iters + 1):
        elapsed = []
        solves = 0

        tic = time.perf_counter()
        for _ in range(config.inner_iters):
            state = beamforming.wmmse_iteration(H, state, alpha, sigma2,
                                                p_max)
        elapsed.append(time.perf_counter() - tic)
        report.block_objectives.append((iteration, 'beamforming',
                                        _objective(H, state, config)))

        tic = time.perf_counter()
        if baseline.move_bs:
            positions, solves = sweep_bs_positions(paths, positions, state,
                                                   config)
            H = channel.channel_matrix(positions, paths, config.wavelength)
            report.block_objectives.append((iteration, 'bs',
                                            _objective(H, state, config)))
        elapsed.append(time.perf_counter() - tic)

        tic = time.perf_counter()
        if baseline.move_users:
            positions = sweep_user_positions(paths, positions, state, config)
            H = channel.channel_matrix(positions, paths, config.wavelength)
            report.block_objectives.append((iteration, 'users',
                                            _objective(H, state, config)))
        elapsed.append(time.perf_counter() - tic)

        state = beamforming.refresh(H, state, sigma2)
        previous = metrics.wsr
        metrics = beamforming.link_metrics(H, state, alpha, sigma2)
        if not (numpy.isfinite(metrics.obj) and numpy.isfinite(metrics.wsr)):
            raise FloatingPointError(
                "non-finite objective at iteration {}".format(iteration))
        report.block_objectives.append((iteration, 'refresh', metrics.obj))
        report.records.append(IterationRecord(
            iteration, metrics.obj, metrics.wsr, elapsed,
            *residuals(positions, state, config), qp_solves=solves))
        LOGGER.debug("iteration {0}: wsr={1:.12g} objective={2:.12g}".format(
            iteration, metrics.wsr, metrics.obj))

        if abs(metrics.wsr - previous) <= config.tol_rel * abs(metrics.wsr):
            stalled += 1
        else:
            stalled = 0
        if stalled >= config.patience:
            report.converged = True
            break

    if not report.converged:
        LOGGER.warning("{0} run stopped at the iteration cap ({1}) before "
                       "converging".format(baseline.value, config.max_iters))
    report.positions = positions
    report.state = state
    report.elapsed = time.perf_counter() - start
    return report


def _objective(H, state, config):
    return beamforming.link_metrics(H, state, config.alpha,
                                    config.sigma2).obj


# -- Monte Carlo --------------------------------------------------------------

class TrialRun(object):
    """One run of one baseline on one trial's scenario
    """
    def __init__(self, trial, scenario, report):
        self.trial = trial
        self.scenario = scenario
        self.report = report

    @property
    def key(self):
        return (self.trial, const.MODES.index(self.report.mode),
                list(BaselineKind).index(self.report.baseline))

    def summary(self):
        report = self.report
        return {
            'trial': self.trial,
            'seed': self.scenario.config.seed,
            'mode': report.mode,
            'baseline': report.baseline.value,
            'wsr': report.wsr[-1],
            'wsr_bits': report.wsr[-1] / numpy.log(2),
            'iterations': report.iterations,
            'converged': report.converged,
            'qp_solves': report.qp_solves,
            'elapsed_ms': 1e3 * report.elapsed,
            'elapsed_ms_beamforming': 1e3 * report.block_time('beamforming'),
            'elapsed_ms_bs': 1e3 * report.block_time('bs'),
            'elapsed_ms_users': 1e3 * report.block_time('users'),
        }


class MonteCarloReport(object):
    """Runs gathered over seeded trials

    Attributes
    ----------
    runs : `list` of `TrialRun`
        every run, sorted by trial, mode and baseline
    """
    def __init__(self, runs):
        self.runs = sorted(runs, key=lambda run: run.key)

    @property
    def scenarios(self):
        """The distinct scenarios, one per trial and mode
        """
        seen = {}
        for run in self.runs:
            seen.setdefault((run.trial, run.report.mode), run.scenario)
        return list(seen.values())

    def to_frame(self):
        """Final results of every run as a `pandas.DataFrame`
        """
        return pandas.DataFrame([run.summary() for run in self.runs])

    def summary(self):
        """Mean and (population) standard deviation per mode and baseline

        Returns
        -------
        summary : `pandas.DataFrame`
            one row per ``(mode, baseline)`` pair
        """
        frame = self.to_frame()
        columns = ['wsr', 'wsr_bits', 'iterations', 'elapsed_ms',
                   'elapsed_ms_beamforming', 'elapsed_ms_bs',
                   'elapsed_ms_users']
        grouped = frame.groupby(['mode', 'baseline'], sort=True)
        mean = grouped[columns].mean().add_suffix('_mean')
        std = grouped[columns].std(ddof=0).add_suffix('_std')
        out = pandas.concat((mean, std), axis=1)
        out['trials'] = grouped.size()
        out['converged_fraction'] = grouped['converged'].mean()
        return out.reset_index()


def _run_trial(task):
    """Run every mode and baseline of one trial on a shared scenario
    """
    config, trial, baselines, modes = task
    runs = []
    for mode in modes:
        trial_config = config if config.mode == mode else config.replace(
            mode=mode)
        scenario = Scenario.generate(trial_config,
                                     metadata={'trial': trial})
        for baseline in baselines:
            runs.append(TrialRun(trial, scenario,
                                 run_bcd(scenario, baseline)))
    return runs


def run_monte_carlo(config, baselines=('TMA_RMA',), trials=1, modes=None,
                    nproc=1):
    """Run baselines over independent seeded trials

    Trial ``i`` uses seed ``config.seed + i``.  Within a trial every
    baseline and mode runs on the same scenario.

    Parameters
    ----------
    config : `~maopt.scenario.ScenarioConfig`
        the base configuration

    baselines : `list`, optional
        baseline names or `BaselineKind` members, default: ``TMA_RMA``

    trials : `int`, optional
        number of trials, default: ``1``

    modes : `list` of `str`, optional
        BS movement modes, default: ``[config.mode]``

    nproc : `int`, optional
        number of worker processes, default: ``1``

    Returns
    -------
    report : `MonteCarloReport`
    """
    if trials < 1:
        raise ValueError("trials must be >= 1, got {}".format(trials))
    baselines = [BaselineKind.parse(b) for b in baselines]
    modes = list(modes or [config.mode])
    tasks = [(config.replace(seed=config.seed + i), i, baselines, modes)
             for i in range(trials)]
    LOGGER.debug("running {0} trials on {1} process(es)".format(
        trials, nproc))
    if nproc > 1:
        with multiprocessing.Pool(nproc) as pool:
            results = pool.map(_run_trial, tasks)
    else:
        results = list(map(_run_trial, tasks))
    return MonteCarloReport([run for runs in results for run in runs])
