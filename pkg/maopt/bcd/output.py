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

"""Tabular output of driver runs

Three files are written for every invocation of ``maopt-run``:

``trace.csv``
    one row per outer iteration per run, holding only deterministic
    quantities, so repeated runs produce identical files; columns are
    listed in `TRACE_COLUMNS`
``timing.csv``
    the matching wall-clock times per block, see `TIMING_COLUMNS`
``summary.json``
    means and standard deviations over trials, one row per sweep value,
    mode and baseline

Numbers are written with 17 significant digits, enough to round-trip
any double exactly.
"""

import json
import os

import numpy
import pandas

__author__ = 'The maopt developers'

TRACE_COLUMNS = [
    'run_id', 'sweep_value', 'trial', 'seed', 'baseline', 'mode',
    'iteration', 'wmmse_objective', 'wsr_nats', 'wsr_bits',
    'distance_residual', 'region_residual', 'power_residual', 'qp_solves',
]

TIMING_COLUMNS = [
    'run_id', 'iteration', 'elapsed_ms_beamforming', 'elapsed_ms_bs',
    'elapsed_ms_users', 'elapsed_ms_cumulative', 'warmup',
]

FLOAT_FORMAT = '%.17g'


def _runs(results):
    run_id = 0
    for value, report in results:
        for run in report.runs:
            yield run_id, value, run
            run_id += 1


def trace_frames(results):
    """Build the trace and timing tables

    Parameters
    ----------
    results : `list` of `tuple`
        ``(sweep_value, MonteCarloReport)`` pairs in sweep order

    Returns
    -------
    trace : `pandas.DataFrame`
        columns `TRACE_COLUMNS`, ordered by run and iteration

    timing : `pandas.DataFrame`
        columns `TIMING_COLUMNS`, in the same order
    """
    frames = []
    for run_id, value, run in _runs(results):
        frame = run.report.to_frame()
        frame.insert(0, 'run_id', run_id)
        frame['sweep_value'] = value
        frame['trial'] = run.trial
        frame['seed'] = run.scenario.config.seed
        frame['baseline'] = run.report.baseline.value
        frame['mode'] = run.report.mode
        frame['elapsed_ms_cumulative'] = frame[[
            'elapsed_ms_beamforming', 'elapsed_ms_bs',
            'elapsed_ms_users']].sum(axis=1).cumsum()
        frames.append(frame)
    data = pandas.concat(frames, ignore_index=True).rename(columns={
        'objective': 'wmmse_objective',
        'wsr': 'wsr_nats',
    })
    return data[TRACE_COLUMNS], data[TIMING_COLUMNS]


def _ratio(numerator, denominator):
    return float(numerator / denominator) if denominator else None


def _mode_comparison(rows):
    """Planar against general mode, for every sweep value and baseline
    run in both
    """
    index = {(row['sweep_value'], row['baseline'], row['mode']): row
             for row in rows}
    out = []
    for (value, baseline, mode), general in index.items():
        planar = index.get((value, baseline, 'planar'))
        if mode != 'general' or planar is None:
            continue
        out.append({
            'sweep_value': value,
            'baseline': baseline,
            'wsr_ratio': _ratio(planar['wsr_mean'], general['wsr_mean']),
            'wsr_gap': general['wsr_mean'] - planar['wsr_mean'],
            'bs_time_ratio': _ratio(planar['elapsed_ms_bs_mean'],
                                    general['elapsed_ms_bs_mean']),
            'total_time_ratio': _ratio(planar['elapsed_ms_mean'],
                                       general['elapsed_ms_mean']),
        })
    return out


def summary_dict(results, preset=None, sweep=None):
    """Aggregate results into a JSON-compatible `dict`
    """
    rows = []
    for value, report in results:
        for row in report.summary().to_dict('records'):
            row['sweep_value'] = value
            rows.append(row)
    return {
        'preset': preset,
        'sweep': sweep,
        'rows': rows,
        'mode_comparison': _mode_comparison(rows),
    }


def _json_default(obj):
    if isinstance(obj, numpy.generic):
        return obj.item()
    raise TypeError("cannot serialise {!r}".format(obj))


def write_outputs(results, outdir, preset=None, sweep=None):
    """Write ``trace.csv``, ``timing.csv`` and ``summary.json``

    Returns
    -------
    paths : `dict`
        the path of every file written, keyed by file name
    """
    trace, timing = trace_frames(results)
    paths = {name: os.path.join(outdir, name) for name in (
        'trace.csv', 'timing.csv', 'summary.json')}
    trace.to_csv(paths['trace.csv'], index=False, float_format=FLOAT_FORMAT)
    timing.to_csv(paths['timing.csv'], index=False,
                  float_format=FLOAT_FORMAT)
    with open(paths['summary.json'], 'w') as fobj:
        json.dump(summary_dict(results, preset=preset, sweep=sweep), fobj,
                  indent=2, default=_json_default)
        fobj.write(os.linesep)
    return paths
