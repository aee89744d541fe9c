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

"""Majorization-minimization updates of the BS antenna positions

With the beamformers, the user positions and every other BS antenna
held fixed, the WMMSE objective as a function of the position ``t_m``
of BS antenna ``m`` is, up to a constant,

.. math::

   \\sum_k f_k(t_m)^H A_{k,m} f_k(t_m) + \\mathrm{Re}(b_{k,m}^H f_k(t_m))

Each term is majorized with :func:`maopt.position.core.majorize`.  In
the general movement mode the summed surrogate is minimised over the
transmit region subject to linearised minimum-distance constraints, a
two-dimensional QP.  In the planar movement mode each antenna owns a
cell and the minimiser is a clamped gradient step.
"""

import logging

import numpy

from .. import (channel, const, qp)
from .core import (Surrogate, combine, majorize, quadratic_form)

__author__ = 'The maopt developers'

LOGGER = logging.getLogger(__name__)


class PositionSurrogate(Surrogate):
    """`Surrogate` of the BS antenna objective for one user
    """
    @property
    def A(self):
        return self.quad

    @property
    def b(self):
        return self.linear

    @property
    def b_hat(self):
        return self.linear_hat


# -- coefficients -------------------------------------------------------------

def build_coefficients(k, m, paths, positions, state, alpha, wavelength,
                       responses=None):
    """Quadratic-form coefficients of user ``k``'s term for antenna ``m``

    Parameters
    ----------
    k : `int`
        user index

    m : `int`
        BS antenna index

    paths : `list` of `~maopt.channel.PathSet`
        per-user path geometry

    positions : `~maopt.channel.PositionState`
        current antenna positions (``t_m`` itself is not used)

    state : `~maopt.beamforming.BeamformerState`
        current beamformers, receive scalars and weights

    alpha : `numpy.ndarray`
        user weights

    wavelength : `float`
        the carrier wavelength

    responses : `numpy.ndarray`, optional
        user ``k``'s transmit field responses at every BS antenna, shape
        ``(M, L_t)``, computed when not given

    Returns
    -------
    A : `numpy.ndarray`
        Hermitian PSD matrix of shape ``(L_t, L_t)``

    b : `numpy.ndarray`
        complex vector of length ``L_t``
    """
    path = paths[k]
    W = state.W
    if W.shape[0] != positions.num_antennas:
        raise ValueError("beamformers have {0} rows but there are {1} BS "
                         "antennas".format(W.shape[0], positions.num_antennas))
    a = path.sigma @ channel.field_response_rx(positions.r[k], path,
                                               wavelength)
    if responses is None:
        responses = channel.field_response(positions.t, path.n_t, wavelength)
    # gains[n] = a^H f(t_n)
    gains = responses @ a.conj()
    cross = W.T @ gains - W[m] * gains[m]
    u, v = state.u[k], state.v[k]
    row = W[m]
    weight = alpha[k] * v
    A = (weight * abs(u) ** 2 * float(numpy.sum(numpy.abs(row) ** 2)) *
         numpy.outer(a, a.conj()))
    b = 2 * weight * (abs(u) ** 2 * (row.conj() @ cross) -
                      u * numpy.conj(row[k])) * a
    return A, b


def build_surrogate(A, b, t_m0, path, wavelength, tight=False):
    """Majorize one user's term of the antenna objective around ``t_m0``

    Returns
    -------
    surrogate : `PositionSurrogate`
    """
    return majorize(A, b, t_m0, path.n_t, wavelength, tight=tight,
                    cls=PositionSurrogate)


def antenna_objective(m, point, paths, positions, state, alpha, wavelength):
    """True objective of antenna ``m`` placed at ``point``, without the
    constant terms
    """
    total = 0.
    for k, path in enumerate(paths):
        A, b = build_coefficients(k, m, paths, positions, state, alpha,
                                  wavelength)
        total += quadratic_form(A, b, channel.field_response_tx(
            point, path, wavelength))
    return total


# -- distance constraints -----------------------------------------------------

def minorize_distance(t_m, t_j, t_m0):
    """Linear lower bound on ``||t_m - t_j||`` that is tight at ``t_m0``

    Raises
    ------
    ValueError
        if ``t_m0`` coincides with ``t_j``
    """
    t_m, t_j, t_m0 = (numpy.asarray(x, dtype=float) for x in (t_m, t_j, t_m0))
    offset = t_m0 - t_j
    norm = numpy.linalg.norm(offset)
    if norm == 0:
        raise ValueError("expansion point {} coincides with the other "
                         "antenna".format(t_m0.tolist()))
    return float(offset @ (t_m - t_j) / norm)


def distance_constraints(m, t, min_distance, point0):
    """Linearised minimum-distance constraints on antenna ``m``

    Each constraint ``a_j^T x >= beta_j`` comes from
    :func:`minorize_distance` with ``a_j`` the unit vector from ``t_j``
    to ``point0``.  The bound is capped at the current distance, so
    ``point0`` always satisfies it.

    Returns
    -------
    normals : `numpy.ndarray`
        array of shape ``(M - 1, 2)``, empty when ``min_distance`` is zero

    offsets : `numpy.ndarray`
        array of shape ``(M - 1,)``
    """
    others = numpy.delete(numpy.asarray(t, dtype=float), m, axis=0)
    if min_distance <= 0 or not others.size:
        return numpy.empty((0, 2)), numpy.empty(0)
    offsets = point0 - others
    norms = numpy.linalg.norm(offsets, axis=1)
    if (norms == 0).any():
        raise ValueError("BS antenna {} coincides with another "
                         "antenna".format(m))
    normals = offsets / norms[:, None]
    bounds = numpy.minimum(min_distance, norms)
    return normals, bounds + numpy.einsum('ij,ij->i', normals, others)


def _nudge(point, region, wavelength):
    """Move ``point`` by a tiny deterministic step towards the region centre
    """
    direction = region.center - point
    norm = numpy.linalg.norm(direction)
    direction = direction / norm if norm else numpy.array([1., 0.])
    return point + const.PERTURBATION * wavelength * direction


# -- position updates ---------------------------------------------------------

def update_position_general(m, surrogates, t, min_distance, region,
                            wavelength=const.WAVELENGTH):
    """Move antenna ``m`` to the minimiser of its summed surrogate

    Parameters
    ----------
    m : `int`
        BS antenna index

    surrogates : `list` of `PositionSurrogate`
        one surrogate per user, all expanded at ``t[m]``

    t : `numpy.ndarray`
        current BS antenna positions, shape ``(M, 2)``

    min_distance : `float`
        minimum inter-antenna distance

    region : `~maopt.utils.Rectangle`
        the transmit region

    wavelength : `float`, optional
        the carrier wavelength, sets the size of the perturbation used
        when ``t[m]`` coincides with another antenna

    Returns
    -------
    point : `numpy.ndarray`
        the new position of antenna ``m``

    result : `~maopt.qp.QpResult` or `None`
        the QP solution, or `None` if the surrogate was flat and no QP
        was solved
    """
    t = numpy.asarray(t, dtype=float)
    point0 = t[m].copy()
    grad, curvature = combine(surrogates)
    if curvature <= 0:
        return point0, None
    start = point0
    try:
        normals, offsets = distance_constraints(m, t, min_distance, start)
    except ValueError:
        LOGGER.warning("BS antenna {} coincides with another antenna, "
                       "perturbing the expansion point".format(m))
        start = _nudge(point0, region, wavelength)
        normals, offsets = distance_constraints(m, t, min_distance, start)
    problem = qp.QpProblem(curvature, grad - 2 * curvature * point0,
                           normals, offsets, region)
    result = qp.solve(problem, start)
    return result.x, result


def update_position_planar(m, surrogates, t_m0, cell):
    """Clamped gradient step for antenna ``m`` inside its own cell

    Parameters
    ----------
    m : `int`
        BS antenna index, used only for logging

    surrogates : `list` of `PositionSurrogate`
        one surrogate per user, all expanded at ``t_m0``

    t_m0 : `numpy.ndarray`
        current position of antenna ``m``

    cell : `~maopt.utils.Rectangle`
        the cell assigned to antenna ``m``

    Returns
    -------
    point : `numpy.ndarray`
        ``t_m0`` moved against the summed gradient by half the inverse
        summed curvature, then clamped into ``cell``
    """
    t_m0 = numpy.array(t_m0, dtype=float)
    grad, curvature = combine(surrogates)
    if curvature <= 0:
        LOGGER.debug("flat surrogate for BS antenna {}".format(m))
        return t_m0
    return cell.project(t_m0 - grad / (2 * curvature))


def sweep_bs_positions(paths, positions, state, config):
    """Update every BS antenna once, in order, for ``config.bs_sweeps``
    passes

    Parameters
    ----------
    paths : `list` of `~maopt.channel.PathSet`
        per-user path geometry

    positions : `~maopt.channel.PositionState`
        current antenna positions, not modified

    state : `~maopt.beamforming.BeamformerState`
        current beamformers, receive scalars and weights

    config : `~maopt.scenario.ScenarioConfig`
        supplies the weights, wavelength, geometry and movement mode

    Returns
    -------
    positions : `~maopt.channel.PositionState`
        the updated positions

    solves : `int`
        the number of QPs solved
    """
    positions = positions.copy()
    wavelength = config.wavelength
    planar = config.mode == 'planar'
    responses = [channel.field_response(positions.t, p.n_t, wavelength)
                 for p in paths]
    solves = 0
    for _ in range(config.bs_sweeps):
        for m in range(positions.num_antennas):
            point0 = positions.t[m].copy()
            surrogates = []
            for k, path in enumerate(paths):
                A, b = build_coefficients(
                    k, m, paths, positions, state, config.alpha, wavelength,
                    responses=responses[k])
                surrogates.append(build_surrogate(
                    A, b, point0, path, wavelength,
                    tight=config.tight_majorizer))
            if planar:
                point = update_position_planar(
                    m, surrogates, point0, config.planar_cells[m])
            else:
                point, result = update_position_general(
                    m, surrogates, positions.t, config.min_distance,
                    config.tx_region, wavelength=wavelength)
                solves += result is not None
            positions.t[m] = point
            for k, path in enumerate(paths):
                responses[k][m] = channel.field_response_tx(
                    point, path, wavelength)
    return positions, solves
