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

"""Tests for `maopt.position.bs`
"""

import logging

import numpy
import pytest
from numpy import testing as nptest

from ... import (beamforming, channel, utils)
from .. import (bs, core)

__author__ = 'The maopt developers'

REGION = utils.Rectangle.centered(5)


def _state(scenario, seed=1):
    """Random full-power beamformers with matching ``u`` and ``v``
    """
    rng = numpy.random.default_rng(seed)
    config = scenario.config
    H = channel.channel_matrix(scenario.positions, scenario.paths,
                               config.wavelength)
    shape = (config.num_antennas, config.num_users)
    W = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
    W *= numpy.sqrt(config.p_max) / numpy.linalg.norm(W)
    return beamforming.refresh(H, beamforming.BeamformerState(W),
                               config.sigma2)


def _objective(scenario, positions, state):
    config = scenario.config
    H = channel.channel_matrix(positions, scenario.paths, config.wavelength)
    return beamforming.link_metrics(H, state, config.alpha,
                                    config.sigma2).obj


def _surrogate(grad, curvature, point0):
    return bs.PositionSurrogate(None, None, None, numpy.asarray(grad, float),
                                curvature, numpy.asarray(point0, float), 0.)


# -- coefficients -------------------------------------------------------------

def test_build_coefficients_zero_row(small_scenario):
    state = _state(small_scenario)
    state.W[1] = 0
    config = small_scenario.config
    A, b = bs.build_coefficients(0, 1, small_scenario.paths,
                                 small_scenario.positions, state,
                                 config.alpha, config.wavelength)
    nptest.assert_array_equal(A, 0)
    nptest.assert_array_equal(b, 0)


def test_build_coefficients_single_antenna(rng):
    path = channel.random_paths(2, 2, rng)
    positions = channel.PositionState([[.1, .2]], [[.3, -.1]])
    state = beamforming.BeamformerState([[1 - 2j]], u=[.4 + .1j], v=[1.5])
    alpha = numpy.array([2.])
    A, b = bs.build_coefficients(0, 0, [path], positions, state, alpha, 1.)
    a = path.sigma @ channel.field_response_rx(positions.r[0], path, 1.)
    nptest.assert_allclose(
        b, -2 * alpha[0] * 1.5 * (.4 + .1j) * numpy.conj(1 - 2j) * a)
    nptest.assert_allclose(
        A, alpha[0] * 1.5 * abs(.4 + .1j) ** 2 * 5 * numpy.outer(a, a.conj()))


def test_build_coefficients_reconstructs_objective(small_scenario):
    """The antenna quadratic forms reproduce the WMMSE objective up to
    a constant
    """
    state = _state(small_scenario)
    config = small_scenario.config
    paths = small_scenario.paths
    positions = small_scenario.positions.copy()
    m = 2
    coefficients = [bs.build_coefficients(k, m, paths, positions, state,
                                          config.alpha, config.wavelength)
                    for k in range(config.num_users)]
    rng = numpy.random.default_rng(4)
    offsets = []
    for point in positions.t[m] + rng.uniform(-1, 1, (20, 2)):
        moved = positions.copy()
        moved.t[m] = point
        forms = sum(core.quadratic_form(A, b, channel.field_response_tx(
            point, path, config.wavelength))
            for (A, b), path in zip(coefficients, paths))
        offsets.append(_objective(small_scenario, moved, state) - forms)
        nptest.assert_allclose(
            bs.antenna_objective(m, point, paths, positions, state,
                                 config.alpha, config.wavelength), forms)
    nptest.assert_allclose(offsets, offsets[0], rtol=1e-9, atol=1e-9)


def test_build_coefficients_valueerror(small_scenario):
    state = beamforming.BeamformerState(numpy.ones((2, 2)))
    config = small_scenario.config
    with pytest.raises(ValueError):
        bs.build_coefficients(0, 0, small_scenario.paths,
                              small_scenario.positions, state, config.alpha,
                              config.wavelength)


@pytest.mark.parametrize('tight', (False, True))
def test_build_surrogate_majorizes(small_scenario, tight):
    state = _state(small_scenario)
    config = small_scenario.config
    paths = small_scenario.paths
    positions = small_scenario.positions
    rng = numpy.random.default_rng(5)
    for k in range(config.num_users):
        A, b = bs.build_coefficients(k, 0, paths, positions, state,
                                     config.alpha, config.wavelength)
        surrogate = bs.build_surrogate(A, b, positions.t[0], paths[k],
                                       config.wavelength, tight=tight)
        assert isinstance(surrogate, bs.PositionSurrogate)
        assert surrogate.A is A
        for point in positions.t[0] + rng.normal(0, .5, (100, 2)):
            value = core.quadratic_form(A, b, channel.field_response_tx(
                point, paths[k], config.wavelength))
            assert surrogate.value(point) >= value - 1e-9 * max(1, abs(value))


# -- distance constraints -----------------------------------------------------

def test_minorize_distance(rng):
    t_m0, t_j = numpy.array([1., 1.]), numpy.array([0., 0.])
    nptest.assert_allclose(bs.minorize_distance(t_m0, t_j, t_m0),
                           numpy.sqrt(2))
    # further along the ray the bound is exact
    nptest.assert_allclose(bs.minorize_distance(3 * t_m0, t_j, t_m0),
                           3 * numpy.sqrt(2))
    for _ in range(100):
        t_m, t_j, t_m0 = rng.uniform(-2, 2, (3, 2))
        assert (bs.minorize_distance(t_m, t_j, t_m0) <=
                numpy.linalg.norm(t_m - t_j) + 1e-12)
    with pytest.raises(ValueError):
        bs.minorize_distance(t_m0, t_j, t_j)


def test_distance_constraints():
    t = numpy.array([[0., 0.], [1., 0.], [0., .3]])
    normals, offsets = bs.distance_constraints(0, t, .5, t[0])
    nptest.assert_allclose(normals, [[-1, 0], [0, -1]])
    # capped at the current distance for the close neighbour
    nptest.assert_allclose(offsets, [.5 - 1, .3 - .3])
    assert (normals @ t[0] >= offsets - 1e-12).all()
    normals, offsets = bs.distance_constraints(0, t, 0., t[0])
    assert normals.shape == (0, 2)
    assert offsets.shape == (0,)
    with pytest.raises(ValueError):
        bs.distance_constraints(0, numpy.zeros((2, 2)), .5, t[0])


# -- position updates ---------------------------------------------------------

def test_update_position_general_fixed_point():
    t = numpy.array([[0., 0.], [1., 0.]])
    point, result = bs.update_position_general(
        0, [_surrogate((0, 0), 1., t[0])], t, .5, REGION)
    nptest.assert_allclose(point, t[0], atol=1e-12)
    assert result.converged


def test_update_position_general_flat():
    t = numpy.array([[0., 0.], [1., 0.]])
    point, result = bs.update_position_general(
        0, [_surrogate((1, 0), 0., t[0])], t, .5, REGION)
    nptest.assert_array_equal(point, t[0])
    assert result is None


@pytest.mark.parametrize('grad', [(-2., 3.), (40., -1.), (0., -100.)])
def test_update_position_general_single_antenna(grad):
    t_m0 = numpy.array([.5, -.25])
    surrogates = [_surrogate(grad, .5, t_m0), _surrogate((0, 0), .5, t_m0)]
    point, _ = bs.update_position_general(0, surrogates, t_m0[None], .5,
                                          REGION)
    nptest.assert_allclose(point, bs.update_position_planar(
        0, surrogates, t_m0, REGION), atol=1e-10)


def test_update_position_general_halfspace():
    t = numpy.array([[0., 0.], [1., 0.]])
    point, result = bs.update_position_general(
        0, [_surrogate((-2., -1.), 1., t[0])], t, 1., REGION)
    # unconstrained minimiser (1, .5) projected onto x <= 0
    nptest.assert_allclose(point, [0, .5], atol=1e-12)
    assert result.converged


def test_update_position_general_coincident(caplog):
    caplog.set_level(logging.WARNING, logger='maopt.position.bs')
    t = numpy.zeros((2, 2))
    point, _ = bs.update_position_general(
        0, [_surrogate((0., 0.), 1., t[0])], t, .5, REGION)
    assert 'coincides with another antenna' in caplog.text
    assert point[0] >= 1e-6 - 1e-15


def test_update_position_planar():
    cell = utils.Rectangle(0, 5, 0, 5)
    t_m0 = numpy.array([1., 1.])
    nptest.assert_array_equal(bs.update_position_planar(
        0, [_surrogate((0, 0), 1., t_m0)], t_m0, cell), t_m0)
    nptest.assert_allclose(bs.update_position_planar(
        0, [_surrogate((-2, -1), 1., t_m0)], t_m0, cell), [2, 1.5])
    nptest.assert_allclose(bs.update_position_planar(
        0, [_surrogate((-10, 4), 1., t_m0)], t_m0, cell), [5, 0])


# -- sweeps -------------------------------------------------------------------

def test_sweep_bs_positions(small_scenario):
    state = _state(small_scenario)
    config = small_scenario.config
    positions = small_scenario.positions
    before = _objective(small_scenario, positions, state)
    updated, solves = bs.sweep_bs_positions(small_scenario.paths, positions,
                                            state, config)
    after = _objective(small_scenario, updated, state)
    assert after <= before + 1e-9 * abs(before)
    nptest.assert_array_equal(updated.r, positions.r)
    assert updated is not positions
    if config.mode == 'planar':
        assert solves == 0
        for t_m, cell in zip(updated.t, config.planar_cells):
            assert cell.contains(t_m, tol=1e-12)
    else:
        assert solves == config.num_antennas
        assert utils.min_distance(updated.t) >= config.min_distance - 1e-9
        assert config.tx_region.contains(updated.t, tol=1e-12).all()


def test_update_position_descent(small_scenario):
    """Every single-antenna update lowers that antenna's true objective
    """
    state = _state(small_scenario)
    config = small_scenario.config
    paths = small_scenario.paths
    positions = small_scenario.positions.copy()
    for m in range(config.num_antennas):
        point0 = positions.t[m].copy()
        surrogates = [bs.build_surrogate(
            *bs.build_coefficients(k, m, paths, positions, state,
                                   config.alpha, config.wavelength),
            point0, path, config.wavelength)
            for k, path in enumerate(paths)]
        if config.mode == 'planar':
            point = bs.update_position_planar(m, surrogates, point0,
                                              config.planar_cells[m])
        else:
            point, _ = bs.update_position_general(
                m, surrogates, positions.t, config.min_distance,
                config.tx_region)
        before, after = (bs.antenna_objective(
            m, p, paths, positions, state, config.alpha, config.wavelength)
            for p in (point0, point))
        assert after <= before + 1e-9 * max(1., abs(before))
        positions.t[m] = point
