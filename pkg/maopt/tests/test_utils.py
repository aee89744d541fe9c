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

"""Tests for :mod:`maopt.utils`
"""

import pytest

import numpy
from numpy import testing as nptest

from .. import utils

REGION = utils.Rectangle.centered(5)


# -- power conversion ---------------------------------------------------------

@pytest.mark.parametrize('dbm, watts', [
    (30, 1.),
    (0, 1e-3),
    (15, 10 ** -1.5),
])
def test_dbm_to_watts(dbm, watts):
    nptest.assert_allclose(utils.dbm_to_watts(dbm), watts)
    nptest.assert_allclose(utils.watts_to_dbm(watts), dbm)


# -- rectangles ---------------------------------------------------------------

def test_rectangle():
    rect = utils.Rectangle(-1, 3, 0, 2)
    assert rect.width == 4
    assert rect.height == 2
    nptest.assert_array_equal(rect.center, [1, 1])
    assert rect.to_list() == [[-1, 3], [0, 2]]
    assert utils.Rectangle.from_list(rect.to_list()) == rect
    assert rect.contains([0, 1])
    assert not rect.contains([4, 1])
    assert rect.contains([3 + 1e-12, 1], tol=1e-9)
    nptest.assert_array_equal(
        rect.contains([[0, 1], [0, 3]]), [True, False])
    nptest.assert_array_equal(rect.project([5, -1]), [3, 0])
    nptest.assert_array_equal(rect.project([[0, 1], [-2, 9]]),
                              [[0, 1], [-1, 2]])


@pytest.mark.parametrize('bounds', [
    (1, 0, 0, 1),
    (0, 1, 0, numpy.inf),
])
def test_rectangle_valueerror(bounds):
    with pytest.raises(ValueError):
        utils.Rectangle(*bounds)


def test_rectangle_from_list_valueerror():
    with pytest.raises(ValueError) as exc:
        utils.Rectangle.from_list([0, 1, 2])
    assert '[[xmin, xmax], [ymin, ymax]]' in str(exc.value)


def test_rectangle_halfspaces():
    rect = utils.Rectangle(-1, 3, 0, 2)
    normals, offsets = rect.halfspaces()
    for point, inside in (([0, 1], True), ([-2, 1], False),
                          ([0, 2.5], False)):
        assert bool((normals @ point >= offsets).all()) is inside


def test_rectangle_distance():
    left = utils.Rectangle(0, 1, 0, 1)
    assert left.distance(utils.Rectangle(1.5, 2, 0, 1)) == .5
    nptest.assert_allclose(left.distance(utils.Rectangle(4, 5, 5, 6)), 5.)
    assert left.distance(utils.Rectangle(.5, 2, .5, 2)) == 0
    assert left.inside(REGION)
    assert not REGION.inside(left)


def test_rectangle_sample():
    rng = numpy.random.default_rng(1)
    points = REGION.sample(rng, size=100)
    assert points.shape == (100, 2)
    assert REGION.contains(points).all()


# -- layouts ------------------------------------------------------------------

def test_min_distance():
    assert utils.min_distance([[0, 0]]) == numpy.inf
    assert utils.min_distance([[0, 0], [3, 4], [0, 1]]) == 1.


@pytest.mark.parametrize('count, shape', [
    (1, (1, 1)),
    (4, (2, 2)),
    (5, (2, 3)),
    (16, (4, 4)),
])
def test_grid_shape(count, shape):
    assert utils.grid_shape(count) == shape


def test_grid_positions():
    points = utils.grid_positions(REGION, 16, .5)
    assert points.shape == (16, 2)
    nptest.assert_allclose(points[0], [-1.875, -1.875])
    nptest.assert_allclose(utils.min_distance(points), 1.25)
    assert REGION.contains(points).all()
    nptest.assert_array_equal(utils.grid_positions(REGION, 1, .5), [[0, 0]])


def test_grid_positions_edges():
    points = utils.grid_positions(utils.Rectangle.centered(1), 4, .6)
    nptest.assert_allclose(points, [[-.5, -.5], [.5, -.5],
                                    [-.5, .5], [.5, .5]])


def test_grid_positions_valueerror():
    with pytest.raises(ValueError):
        utils.grid_positions(utils.Rectangle.centered(1), 16, .5)


def test_random_positions():
    rng = numpy.random.default_rng(3)
    points = utils.random_positions(REGION, 8, .5, rng)
    assert points.shape == (8, 2)
    assert utils.min_distance(points) >= .5
    assert REGION.contains(points).all()
    with pytest.raises(ValueError):
        utils.random_positions(utils.Rectangle.centered(.1), 3, 1., rng,
                               maxtries=50)


def test_partition_cells():
    cells = utils.partition_cells(REGION, 16, .5)
    assert len(cells) == 16
    for cell in cells:
        nptest.assert_allclose([cell.width, cell.height], [.875, .875])
        assert cell.inside(REGION, tol=1e-12)
    nptest.assert_allclose(cells[0].distance(cells[1]), .5)
    nptest.assert_allclose(cells[0].distance(cells[4]), .5)
    nptest.assert_allclose(cells[-1].upper, REGION.upper)


def test_partition_cells_valueerror():
    with pytest.raises(ValueError):
        utils.partition_cells(utils.Rectangle.centered(1), 16, .5)


# -- serialisation ------------------------------------------------------------

def test_complex_encoding():
    array = numpy.array([[1 + 2j, -3j], [.5, 0]])
    encoded = utils.encode_complex(array)
    assert encoded[0][0] == [1., 2.]
    nptest.assert_array_equal(utils.decode_complex(encoded), array)
    with pytest.raises(ValueError):
        utils.decode_complex([[1., 2., 3.]])
