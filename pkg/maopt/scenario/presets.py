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

"""Standard experiments
"""

from collections import OrderedDict

import numpy

from .. import const

__author__ = 'The maopt developers'

SWEEPS = ('num_antennas', 'min_distance', 'pmax_dbm')


class ExperimentPreset(object):
    """A named experiment: base overrides, an optional sweep, the
    baselines and modes to compare, and the number of trials

    Parameters
    ----------
    name : `str`
        the preset name, as given on the command line

    description : `str`
        one line describing the experiment

    overrides : `dict`, optional
        configuration keys to change before sweeping

    sweep : `str`, optional
        the swept configuration key, one of `SWEEPS`

    values : `list`, optional
        strictly increasing values of the swept key

    baselines : `list` of `str`, optional
        baseline names, default: ``['TMA_RMA']``

    modes : `list` of `str`, optional
        BS movement modes, default: ``['general']``

    trials : `int`, optional
        number of random scenarios per sweep value, default: ``20``
    """
    def __init__(self, name, description, overrides=None, sweep=None,
                 values=(), baselines=('TMA_RMA',), modes=('general',),
                 trials=20):
        if sweep is not None and sweep not in SWEEPS:
            raise ValueError("cannot sweep {0!r}, choose one of "
                             "{1}".format(sweep, ', '.join(SWEEPS)))
        if sweep is not None and (not len(values) or
                                  (numpy.diff(values) <= 0).any()):
            raise ValueError("sweep values for {0!r} must be strictly "
                             "increasing, got {1}".format(sweep, values))
        for baseline in baselines:
            const.baseline_flags(baseline)
        for mode in modes:
            if mode not in const.MODES:
                raise ValueError("unknown mode {!r}".format(mode))
        self.name = name
        self.description = description
        self.overrides = dict(overrides or {})
        self.sweep = sweep
        self.values = list(values)
        self.baselines = list(baselines)
        self.modes = list(modes)
        self.trials = trials

    def configs(self, base):
        """Yield ``(value, config)`` for every point of the sweep

        ``value`` is `None` when this preset has no sweep.
        """
        base = base.replace(**self.overrides) if self.overrides else base
        if self.sweep is None:
            yield None, base
            return
        for value in self.values:
            yield value, base.replace(**{self.sweep: value})

    def __repr__(self):
        return '<ExperimentPreset({!r})>'.format(self.name)


PRESETS = OrderedDict((p.name, p) for p in (
    ExperimentPreset(
        'convergence',
        'weighted sum rate against iteration for both movement modes',
        modes=const.MODES,
    ),
    ExperimentPreset(
        'm-sweep',
        'weighted sum rate against the number of BS antennas',
        sweep='num_antennas',
        values=(4, 8, 12, 16),
        baselines=tuple(const.BASELINES),
    ),
    ExperimentPreset(
        'd-sweep',
        'weighted sum rate against the minimum inter-antenna distance',
        sweep='min_distance',
        values=(.25, .5, .75, 1.),
        baselines=('TMA_RMA', 'TMA_RFPA'),
    ),
    ExperimentPreset(
        'power-sweep',
        'weighted sum rate against the maximum transmit power',
        sweep='pmax_dbm',
        values=(20., 25., 30., 35., 40.),
        baselines=tuple(const.BASELINES),
    ),
))


def preset_figures():
    """The standard experiments, in order

    Returns
    -------
    presets : `list` of `ExperimentPreset`
    """
    return list(PRESETS.values())


def get_preset(name):
    """Look up a preset by name

    Raises
    ------
    ValueError
        if no preset has that name
    """
    try:
        return PRESETS[name]
    except KeyError:
        raise ValueError("unknown preset {0!r}, valid presets are: "
                         "{1}".format(name, ', '.join(PRESETS)))
