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

"""Two-dimensional convex quadratic programs with an isotropic Hessian

The problems solved here have the form

.. math::

   \\min_{x \\in \\mathbb{R}^2} c \\|x\\|^2 + g^T x
   \\quad \\mathrm{s.t.} \\quad a_j^T x \\ge \\beta_j, \\; x \\in B

for ``c > 0`` and an axis-aligned box ``B``.  Because the Hessian is a
multiple of the identity, the solution is the Euclidean projection of
the unconstrained minimiser ``-g / (2 c)`` onto the feasible polygon.
:func:`solve` runs a primal active-set method from a feasible start;
:func:`solve_exhaustive` enumerates every candidate active set and is
used both as a fallback and as a reference solution.
"""

import itertools
import logging

import numpy
from scipy.optimize import nnls

from . import const

__author__ = 'The maopt developers'

LOGGER = logging.getLogger(__name__)


# -- problem and result objects -----------------------------------------------

class QpProblem(object):
    """A 2-D QP ``min c ||x||^2 + g^T x`` over halfspaces and a box

    Parameters
    ----------
    curvature : `float`
        the positive scalar ``c``

    linear : `numpy.ndarray`
        the vector ``g``, shape ``(2,)``

    normals : `numpy.ndarray`, optional
        constraint normals ``a_j``, shape ``(n, 2)``

    offsets : `numpy.ndarray`, optional
        constraint offsets ``beta_j``, shape ``(n,)``

    box : `~maopt.utils.Rectangle`
        bounding box, required

    Raises
    ------
    ValueError
        if ``curvature`` is not positive or the shapes are inconsistent
    """
    def __init__(self, curvature, linear, normals=None, offsets=None,
                 box=None):
        if not curvature > 0:
            raise ValueError("QP curvature must be positive, got "
                             "{}".format(curvature))
        if box is None:
            raise ValueError("QP requires a bounding box")
        self.curvature = float(curvature)
        self.linear = numpy.asarray(linear, dtype=float).reshape(2)
        self.normals = numpy.asarray(
            numpy.empty((0, 2)) if normals is None else normals,
            dtype=float).reshape(-1, 2)
        self.offsets = numpy.asarray(
            numpy.empty(0) if offsets is None else offsets,
            dtype=float).reshape(-1)
        if self.normals.shape[0] != self.offsets.size:
            raise ValueError("got {0} constraint normals but {1} "
                             "offsets".format(self.normals.shape[0],
                                              self.offsets.size))
        self.box = box

    @property
    def minimizer(self):
        """The unconstrained minimiser ``-g / (2 c)``
        """
        return -self.linear / (2 * self.curvature)

    def objective(self, x):
        x = numpy.asarray(x, dtype=float)
        return float(self.curvature * (x @ x) + self.linear @ x)

    def halfspaces(self):
        """All constraints, box included, as ``(normals, offsets)``
        """
        normals, offsets = self.box.halfspaces()
        return (numpy.vstack((self.normals, normals)),
                numpy.concatenate((self.offsets, offsets)))

    def violation(self, x):
        """Largest constraint violation at ``x`` (zero when feasible)
        """
        normals, offsets = self.halfspaces()
        return float(max((offsets - normals @ numpy.asarray(x)).max(), 0.))

    def is_feasible(self, x, tol=const.FEASIBILITY_TOL):
        return self.violation(x) <= tol


class QpResult(object):
    """Outcome of a QP solve

    Attributes
    ----------
    x : `numpy.ndarray`
        the solution

    objective : `float`
        objective value at ``x``

    converged : `bool`
        whether ``x`` satisfies the KKT conditions to tolerance

    iterations : `int`
        number of active-set iterations taken

    method : `str`
        ``'active-set'`` or ``'enumeration'``
    """
    def __init__(self, x, objective, converged, iterations, method):
        self.x = x
        self.objective = objective
        self.converged = converged
        self.iterations = iterations
        self.method = method

    def __repr__(self):
        return ('<QpResult(x={0}, objective={1:.12g}, converged={2}, '
                'method={3!r})>'.format(self.x.tolist(), self.objective,
                                        self.converged, self.method))


# -- optimality ---------------------------------------------------------------

def kkt_residual(problem, x, tol=const.FEASIBILITY_TOL):
    """Relative stationarity residual at ``x`` with nonnegative
    multipliers on the active constraints

    The residual is ``min ||grad - A_act^T lambda||`` over
    ``lambda >= 0``, divided by ``max(1, ||g||, 2 c ||x||)``.
    """
    x = numpy.asarray(x, dtype=float)
    normals, offsets = problem.halfspaces()
    grad = 2 * problem.curvature * x + problem.linear
    scale = max(1., numpy.linalg.norm(problem.linear),
                2 * problem.curvature * numpy.linalg.norm(x))
    active = normals @ x - offsets <= tol * (1 + numpy.abs(offsets))
    if not active.any():
        return float(numpy.linalg.norm(grad) / scale)
    _, residual = nnls(normals[active].T, grad)
    return float(residual / scale)


# -- solvers ------------------------------------------------------------------

def _null_step(direction, normals):
    """Project ``direction`` onto the null space of the working normals
    """
    if normals.shape[0] == 0:
        return direction
    if normals.shape[0] == 1:
        a = normals[0]
        return direction - (a @ direction) / (a @ a) * a
    return numpy.zeros(2)


def solve(problem, start, maxiter=const.QP_MAXITER,
          tol=const.FEASIBILITY_TOL):
    """Solve a `QpProblem` with a primal active-set method

    Parameters
    ----------
    problem : `QpProblem`
        the problem to solve

    start : `numpy.ndarray`
        a feasible starting point

    maxiter : `int`, optional
        the iteration cap, default: ``200``

    tol : `float`, optional
        the constraint tolerance, default: ``1e-9``

    Returns
    -------
    result : `QpResult`
        the solution, never worse than ``start``

    Notes
    -----
    With an isotropic Hessian the minimiser over the current working
    set is the projection of ``-g / (2 c)`` onto the intersection of
    its lines, and no more than two independent constraints are ever
    in the working set.  If the iteration cap is reached, the KKT test
    fails, or ``start`` is infeasible, the candidates from
    :func:`solve_exhaustive` are used as well and the best feasible
    point is returned.
    """
    x = numpy.array(start, dtype=float).reshape(2)
    if not problem.is_feasible(x, tol):
        LOGGER.debug("infeasible QP start {}, enumerating active "
                     "sets".format(x.tolist()))
        return solve_exhaustive(problem, tol=tol)
    normals, offsets = problem.halfspaces()
    target = problem.minimizer
    scale = max(1., numpy.linalg.norm(target), numpy.linalg.norm(x))
    working = []
    finished = False
    iteration = 0
    while iteration < maxiter and not finished:
        iteration += 1
        step = _null_step(target - x, normals[working])
        if numpy.linalg.norm(step) <= 1e-15 * scale:
            if not working:
                finished = True
                continue
            grad = 2 * problem.curvature * (x - target)
            multipliers = numpy.linalg.lstsq(
                normals[working].T, grad, rcond=None)[0]
            if multipliers.min() >= -const.KKT_TOL * scale:
                finished = True
            else:
                working.pop(int(multipliers.argmin()))
            continue
        slopes = normals @ step
        slack = normals @ x - offsets
        length, blocking = 1., None
        for i in numpy.flatnonzero(slopes < -1e-15 * numpy.linalg.norm(step)):
            if i in working:
                continue
            ratio = max(slack[i], 0.) / -slopes[i]
            if ratio < length:
                length, blocking = ratio, int(i)
        x = x + length * step
        if blocking is not None:
            working.append(blocking)
    result = QpResult(x, problem.objective(x), finished, iteration,
                      'active-set')
    if finished and kkt_residual(problem, x, tol=tol) <= const.KKT_TOL:
        return result
    LOGGER.warning("active-set QP stopped after {0} iterations without "
                   "meeting the KKT conditions, enumerating active "
                   "sets".format(iteration))
    fallback = solve_exhaustive(problem, tol=tol)
    best = min((result, fallback), key=lambda r: r.objective)
    best.iterations = iteration
    best.converged = kkt_residual(problem, best.x,
                                  tol=tol) <= const.KKT_TOL
    return best


def candidates(problem):
    """Every candidate solution of a 2-D projection QP

    These are the unconstrained minimiser, its projection onto each
    constraint line, and the intersection of every pair of
    non-parallel constraint lines.

    Returns
    -------
    points : `numpy.ndarray`
        array of shape ``(N, 2)``
    """
    normals, offsets = problem.halfspaces()
    target = problem.minimizer
    points = [target]
    lengths = numpy.einsum('ij,ij->i', normals, normals)
    shifts = (offsets - normals @ target) / lengths
    points.extend(target + shifts[:, None] * normals)
    for i, j in itertools.combinations(range(offsets.size), 2):
        pair = normals[[i, j]]
        det = numpy.linalg.det(pair)
        if abs(det) > 1e-12 * numpy.sqrt(lengths[i] * lengths[j]):
            points.append(numpy.linalg.solve(pair, offsets[[i, j]]))
    return numpy.array(points)


def solve_exhaustive(problem, tol=const.FEASIBILITY_TOL):
    """Solve a `QpProblem` by enumerating every candidate active set

    Raises
    ------
    ValueError
        if no candidate is feasible, meaning the problem is infeasible
    """
    normals, offsets = problem.halfspaces()
    points = candidates(problem)
    slack = points @ normals.T - offsets
    feasible = (slack >= -tol * (1 + numpy.abs(offsets))).all(axis=1)
    if not feasible.any():
        raise ValueError("QP has no feasible point")
    points = points[feasible]
    values = (problem.curvature * numpy.einsum('ij,ij->i', points, points) +
              points @ problem.linear)
    best = int(values.argmin())
    x = points[best]
    return QpResult(x, float(values[best]),
                    kkt_residual(problem, x, tol=tol) <= const.KKT_TOL,
                    0, 'enumeration')
