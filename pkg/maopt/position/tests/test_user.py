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

"""Tests for `maopt.position.user`
"""

import numpy
import pytest
from numpy import testing as nptest

from ... import (beamforming, channel, utils)
from .. import (core, user)
from .test_bs import (_objective, _state)

__author__ = 'The maopt developers'


def test_build_user_coefficients_zero_u(small_scenario):
    state = _state(small_scenario)
    state.u[:] = 0
    C, d = user.build_user_coefficients(
        1, small_scenario.paths, small_scenario.positions, state,
        small_scenario.config.wavelength)
    nptest.assert_array_equal(C, 0)
    nptest.assert_array_equal(d, 0)


def test_build_user_coefficients_scalar():
    path = channel.PathSet([0.], [0.], [0.], [0.], [[2 - 1j]])
    positions = channel.PositionState([[0., 0.]], [[0., 0.]])
    u, w = .3 + .2j, 1 + 1j
    state = beamforming.BeamformerState([[w]], u=[u], v=[1.])
    C, d = user.build_user_coefficients(0, [path], positions, state, 1.)
    nptest.assert_allclose(C, [[abs(u) ** 2 * 5 * 2]])
    nptest.assert_allclose(d, [-2 * numpy.conj(u) * (2 + 1j) * w])


def test_user_objective_reconstructs_mse(small_scenario):
    state = _state(small_scenario)
    config = small_scenario.config
    paths = small_scenario.paths
    positions = small_scenario.positions
    rng = numpy.random.default_rng(8)
    k = 1
    for point in rng.uniform(-1, 1, (20, 2)):
        moved = positions.copy()
        moved.r[k] = point
        H = channel.channel_matrix(moved, paths, config.wavelength)
        e = beamforming.mse(H, state.W, state.u, config.sigma2)[k]
        value = user.user_objective(k, point, paths, positions, state,
                                    config.wavelength)
        nptest.assert_allclose(
            value + 1 + abs(state.u[k]) ** 2 * config.sigma2, e,
            rtol=1e-10)


@pytest.mark.parametrize('tight', (False, True))
def test_build_user_surrogate_majorizes(small_scenario, tight):
    state = _state(small_scenario)
    config = small_scenario.config
    paths = small_scenario.paths
    positions = small_scenario.positions
    rng = numpy.random.default_rng(9)
    for k, path in enumerate(paths):
        C, d = user.build_user_coefficients(k, paths, positions, state,
                                            config.wavelength)
        surrogate = user.build_user_surrogate(C, d, positions.r[k], path,
                                              config.wavelength, tight=tight)
        assert isinstance(surrogate, user.UserSurrogate)
        nptest.assert_array_equal(surrogate.d, d)
        nptest.assert_allclose(surrogate.value(positions.r[k]),
                               user.user_objective(k, positions.r[k], paths,
                                                   positions, state,
                                                   config.wavelength))
        for point in positions.r[k] + rng.normal(0, .5, (100, 2)):
            value = core.quadratic_form(C, d, channel.field_response_rx(
                point, path, config.wavelength))
            assert surrogate.value(point) >= value - 1e-9 * max(1, abs(value))


def test_build_user_surrogate_single_path(rng):
    path = channel.random_paths(3, 1, rng)
    C = numpy.array([[.7]])
    d = numpy.array([.2 - .5j])
    surrogate = user.build_user_surrogate(C, d, [.1, .2], path, 1.)
    nptest.assert_allclose(surrogate.d_hat, d)


def test_update_user_position(rng):
    path = channel.random_paths(2, 2, rng)
    region = utils.Rectangle(0, 2, 0, 2)
    r_k0 = numpy.array([1., 1.])
    zero = numpy.zeros((2, 2))
    nptest.assert_array_equal(user.update_user_position(
        0, zero, numpy.zeros(2), r_k0, region, path, 1.), r_k0)
    for _ in range(20):
        C = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
        C = C @ C.conj().T
        d = 10 * (rng.standard_normal(2) + 1j * rng.standard_normal(2))
        point = user.update_user_position(0, C, d, r_k0, region, path, 1.)
        surrogate = user.build_user_surrogate(C, d, r_k0, path, 1.)
        step = r_k0 - surrogate.grad / (2 * surrogate.curvature)
        nptest.assert_allclose(point, numpy.clip(step, 0, 2))
        assert region.contains(point)


def test_sweep_user_positions(small_scenario):
    state = _state(small_scenario)
    config = small_scenario.config
    positions = small_scenario.positions
    before = _objective(small_scenario, positions, state)
    updated = user.sweep_user_positions(small_scenario.paths, positions,
                                        state, config)
    after = _objective(small_scenario, updated, state)
    assert after <= before + 1e-9 * abs(before)
    nptest.assert_array_equal(updated.t, positions.t)
    for r_k, region in zip(updated.r, config.rx_regions):
        assert region.contains(r_k)


def test_sweep_user_positions_independent(small_scenario):
    state = _state(small_scenario)
    config = small_scenario.config
    paths = small_scenario.paths
    positions = small_scenario.positions
    H = channel.channel_matrix(positions, paths, config.wavelength)
    before = beamforming.mse(H, state.W, state.u, config.sigma2)
    for k, path in enumerate(paths):
        C, d = user.build_user_coefficients(k, paths, positions, state,
                                            config.wavelength)
        moved = positions.copy()
        moved.r[k] = user.update_user_position(
            k, C, d, positions.r[k], config.rx_regions[k], path,
            config.wavelength)
        H = channel.channel_matrix(moved, paths, config.wavelength)
        after = beamforming.mse(H, state.W, state.u, config.sigma2)
        others = numpy.arange(config.num_users) != k
        nptest.assert_array_equal(after[others], before[others])
        assert after[k] <= before[k] + 1e-9 * abs(before[k])
