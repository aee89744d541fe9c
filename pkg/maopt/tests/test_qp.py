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

"""Tests for `maopt.qp`
"""

import logging

import numpy
import pytest
from numpy import testing as nptest

from .. import (qp, utils)

__author__ = 'The maopt developers'

UNIT_BOX = utils.Rectangle(0, 1, 0, 1)
BIG_BOX = utils.Rectangle.centered(10)


def test_qpproblem():
    problem = qp.QpProblem(2., [4., -8.], box=BIG_BOX)
    nptest.assert_array_equal(problem.minimizer, [-1, 2])
    assert problem.objective([-1, 2]) == -10
    normals, offsets = problem.halfspaces()
    assert normals.shape == (4, 2)
    assert problem.is_feasible([0, 0])
    assert problem.violation([6, 0]) == 1


@pytest.mark.parametrize('kwargs', [
    {'curvature': 0., 'linear': [0, 0], 'box': UNIT_BOX},
    {'curvature': 1., 'linear': [0, 0]},
    {'curvature': 1., 'linear': [0, 0], 'normals': [[1, 0]],
     'offsets': [0, 1], 'box': UNIT_BOX},
])
def test_qpproblem_valueerror(kwargs):
    with pytest.raises(ValueError):
        qp.QpProblem(**kwargs)


def test_solve_interior():
    problem = qp.QpProblem(1., [-1., -1.], box=UNIT_BOX)
    result = qp.solve(problem, [0, 0])
    nptest.assert_allclose(result.x, [.5, .5])
    assert result.converged
    assert result.method == 'active-set'


def test_solve_box():
    problem = qp.QpProblem(1., [-4., 0.], box=UNIT_BOX)
    result = qp.solve(problem, [.5, .5])
    nptest.assert_allclose(result.x, [1, 0], atol=1e-12)
    assert result.converged


def test_solve_halfspace():
    # x + y >= 2, target at the origin: project onto the line
    normal = numpy.array([[1., 1.]]) / numpy.sqrt(2)
    problem = qp.QpProblem(1., [0., 0.], normal, [numpy.sqrt(2)],
                           BIG_BOX)
    result = qp.solve(problem, [3, 3])
    nptest.assert_allclose(result.x, [1, 1])
    # the multiplier 2 c (x - target) = lambda a is nonnegative
    assert qp.kkt_residual(problem, result.x) < 1e-12


def test_solve_vertex():
    normals = numpy.array([[1., 0.], [0., 1.]])
    problem = qp.QpProblem(1., [0., 0.], normals, [1., 2.], BIG_BOX)
    result = qp.solve(problem, [4, 4])
    nptest.assert_allclose(result.x, [1, 2])
    assert result.converged


def test_solve_order_invariant(rng):
    center = numpy.zeros(2)
    angles = rng.uniform(0, 2 * numpy.pi, 8)
    normals = numpy.column_stack((numpy.cos(angles), numpy.sin(angles)))
    offsets = normals @ center - rng.uniform(.1, 1, 8)
    linear = numpy.array([30., -20.])
    first = qp.solve(qp.QpProblem(1., linear, normals, offsets, BIG_BOX),
                     center)
    order = rng.permutation(8)
    second = qp.solve(qp.QpProblem(1., linear, normals[order],
                                   offsets[order], BIG_BOX), center)
    nptest.assert_allclose(first.x, second.x, atol=1e-10)


def test_solve_matches_exhaustive(rng):
    for _ in range(200):
        box = utils.Rectangle.centered(rng.uniform(.5, 4),
                                       center=rng.uniform(-2, 2, 2))
        start = box.sample(rng)
        count = int(rng.integers(0, 16))
        angles = rng.uniform(0, 2 * numpy.pi, count)
        normals = numpy.column_stack((numpy.cos(angles), numpy.sin(angles)))
        offsets = normals @ start - rng.exponential(.5, count)
        problem = qp.QpProblem(rng.uniform(.1, 10), rng.normal(0, 10, 2),
                               normals, offsets, box)
        result = qp.solve(problem, start)
        oracle = qp.solve_exhaustive(problem)
        assert problem.is_feasible(result.x)
        nptest.assert_allclose(result.objective, oracle.objective,
                               rtol=1e-8, atol=1e-8)
        before = problem.objective(start)
        assert result.objective <= before + 1e-9 * max(1., abs(before))


def test_solve_infeasible_start(caplog):
    caplog.set_level(logging.DEBUG, logger='maopt.qp')
    problem = qp.QpProblem(1., [-4., 0.], box=UNIT_BOX)
    result = qp.solve(problem, [5, 5])
    assert result.method == 'enumeration'
    nptest.assert_allclose(result.x, [1, 0])
    assert 'infeasible QP start' in caplog.text


def test_solve_exhaustive_valueerror():
    # x >= 2 cannot hold inside the unit box
    problem = qp.QpProblem(1., [0, 0], [[1, 0]], [2], UNIT_BOX)
    with pytest.raises(ValueError):
        qp.solve_exhaustive(problem)


def test_candidates():
    problem = qp.QpProblem(1., [-4., 0.], box=UNIT_BOX)
    points = qp.candidates(problem)
    # target, four projections and four corners
    assert points.shape == (9, 2)
    nptest.assert_array_equal(points[0], [2, 0])


def test_kkt_residual():
    problem = qp.QpProblem(1., [-4., 0.], box=UNIT_BOX)
    assert qp.kkt_residual(problem, [1, 0]) < 1e-12
    assert qp.kkt_residual(problem, [.5, .5]) > 1e-3
