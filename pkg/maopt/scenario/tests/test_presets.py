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

"""Tests for `maopt.scenario.presets`
"""

import pytest

from ... import const
from .. import presets
from ..config import ScenarioConfig

__author__ = 'The maopt developers'


def test_presets():
    assert list(presets.PRESETS) == [
        'convergence', 'm-sweep', 'd-sweep', 'power-sweep']
    assert presets.preset_figures() == list(presets.PRESETS.values())
    convergence = presets.get_preset('convergence')
    assert convergence.sweep is None
    assert convergence.modes == list(const.MODES)


@pytest.mark.parametrize('name, key, values', [
    ('m-sweep', 'num_antennas', [4, 8, 12, 16]),
    ('d-sweep', 'min_distance', [.25, .5, .75, 1.]),
    ('power-sweep', 'pmax_dbm', [20., 25., 30., 35., 40.]),
])
def test_preset_configs(name, key, values):
    preset = presets.get_preset(name)
    configs = list(preset.configs(ScenarioConfig()))
    assert [value for value, _ in configs] == values
    for value, cfg in configs:
        assert getattr(cfg, key) == value


def test_m_sweep_rows():
    preset = presets.get_preset('m-sweep')
    assert preset.baselines == list(const.BASELINES)
    assert preset.modes == ['general']


def test_configs_without_sweep():
    preset = presets.ExperimentPreset('custom', 'test',
                                      overrides={'num_users': 2})
    (value, cfg), = list(preset.configs(ScenarioConfig()))
    assert value is None
    assert cfg.num_users == 2


def test_get_preset_valueerror():
    with pytest.raises(ValueError) as exc:
        presets.get_preset('fig5')
    assert 'm-sweep' in str(exc.value)


@pytest.mark.parametrize('kwargs', [
    {'sweep': 'seed', 'values': [1, 2]},
    {'sweep': 'num_antennas', 'values': []},
    {'sweep': 'num_antennas', 'values': [4, 4]},
    {'baselines': ['TMA']},
    {'modes': ['curved']},
])
def test_preset_valueerror(kwargs):
    with pytest.raises(ValueError):
        presets.ExperimentPreset('bad', 'test', **kwargs)
