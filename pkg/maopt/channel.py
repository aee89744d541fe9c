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

"""Field-response and channel synthesis for movable antennas

The channel between the base station and user ``k`` is assembled from
``L_t`` transmit paths and ``L_r`` receive paths.  A path leaving at
elevation ``theta`` and azimuth ``phi`` adds a propagation phase of
``2 pi / lambda * p^T n`` at an antenna placed at ``p``, where
``n = (sin(theta) cos(phi), cos(theta))``, so that

.. math::

   h_k(t, r_k) = F_k(t)^H \\Sigma_k g_k(r_k)

with ``F_k(t)`` the ``L_t x M`` matrix whose column ``m`` is the
transmit field response at ``t_m`` and ``g_k(r_k)`` the receive field
response at ``r_k``.
"""

import numpy

from . import utils

__author__ = 'The maopt developers'


# -- path geometry ------------------------------------------------------------

def direction_vector(theta, phi):
    """Projected propagation direction ``(sin(theta) cos(phi), cos(theta))``

    Parameters
    ----------
    theta : `float`, `numpy.ndarray`
        elevation angle(s) in radians

    phi : `float`, `numpy.ndarray`
        azimuth angle(s) in radians, broadcastable against ``theta``

    Returns
    -------
    n : `numpy.ndarray`
        array with a trailing axis of length 2

    Examples
    --------
    >>> from numpy import pi
    >>> from maopt.channel import direction_vector
    >>> direction_vector(pi / 2, 0)
    array([1.000000e+00, 6.123234e-17])
    """
    theta, phi = numpy.broadcast_arrays(numpy.asarray(theta, dtype=float),
                                        numpy.asarray(phi, dtype=float))
    return numpy.stack((numpy.sin(theta) * numpy.cos(phi),
                        numpy.cos(theta)), axis=-1)


class PathSet(object):
    """Multi-path geometry between the base station and one user

    Parameters
    ----------
    theta_t, phi_t : `numpy.ndarray`
        elevation and azimuth angles (radians) of the ``L_t`` transmit paths

    theta_r, phi_r : `numpy.ndarray`
        elevation and azimuth angles (radians) of the ``L_r`` receive paths

    sigma : `numpy.ndarray`
        complex path-response matrix of shape ``(L_t, L_r)``

    Raises
    ------
    ValueError
        if the angle arrays or ``sigma`` have inconsistent shapes
    """
    def __init__(self, theta_t, phi_t, theta_r, phi_r, sigma):
        self.theta_t = numpy.atleast_1d(numpy.asarray(theta_t, dtype=float))
        self.phi_t = numpy.atleast_1d(numpy.asarray(phi_t, dtype=float))
        self.theta_r = numpy.atleast_1d(numpy.asarray(theta_r, dtype=float))
        self.phi_r = numpy.atleast_1d(numpy.asarray(phi_r, dtype=float))
        self.sigma = numpy.atleast_2d(numpy.asarray(sigma, dtype=complex))
        for side in ('t', 'r'):
            theta = getattr(self, 'theta_' + side)
            phi = getattr(self, 'phi_' + side)
            if theta.ndim != 1 or theta.shape != phi.shape:
                raise ValueError(
                    "theta_{0} and phi_{0} must be 1-D arrays of equal "
                    "length, got shapes {1} and {2}".format(
                        side, theta.shape, phi.shape))
        expected = (self.theta_t.size, self.theta_r.size)
        if self.sigma.shape != expected:
            raise ValueError(
                "sigma must have shape (L_t, L_r) = {0}, got {1}".format(
                    expected, self.sigma.shape))
        self.n_t = direction_vector(self.theta_t, self.phi_t)
        self.n_r = direction_vector(self.theta_r, self.phi_r)

    @property
    def num_tx_paths(self):
        return self.theta_t.size

    @property
    def num_rx_paths(self):
        return self.theta_r.size

    def to_dict(self):
        """Serialise to a JSON-compatible `dict`
        """
        return {
            'theta_t': self.theta_t.tolist(),
            'phi_t': self.phi_t.tolist(),
            'theta_r': self.theta_r.tolist(),
            'phi_r': self.phi_r.tolist(),
            'sigma': utils.encode_complex(self.sigma),
        }

    @classmethod
    def from_dict(cls, data):
        """Restore a `PathSet` written by :meth:`to_dict`
        """
        return cls(data['theta_t'], data['phi_t'], data['theta_r'],
                   data['phi_r'], utils.decode_complex(data['sigma']))

    def __repr__(self):
        return '<PathSet(L_t={0}, L_r={1})>'.format(
            self.num_tx_paths, self.num_rx_paths)


def random_paths(num_tx, num_rx, rng, angle_range=(0., numpy.pi),
                 variance=None):
    """Draw a random `PathSet`

    Angles are drawn uniformly from ``angle_range`` and every entry of
    the path-response matrix is circularly-symmetric complex Gaussian.

    Parameters
    ----------
    num_tx, num_rx : `int`
        number of transmit and receive paths

    rng : `numpy.random.Generator`
        the random number generator to draw from

    angle_range : `tuple` of `float`, optional
        bounds of the uniform angle distribution, default: ``(0, pi)``

    variance : `float`, optional
        variance of each path-response entry, default: ``1 / num_tx``

    Returns
    -------
    paths : `PathSet`
    """
    low, high = angle_range
    variance = 1. / num_tx if variance is None else variance
    theta_t = rng.uniform(low, high, num_tx)
    phi_t = rng.uniform(low, high, num_tx)
    theta_r = rng.uniform(low, high, num_rx)
    phi_r = rng.uniform(low, high, num_rx)
    scale = numpy.sqrt(variance / 2.)
    sigma = scale * (rng.standard_normal((num_tx, num_rx)) +
                     1j * rng.standard_normal((num_tx, num_rx)))
    return PathSet(theta_t, phi_t, theta_r, phi_r, sigma)


# -- field responses ----------------------------------------------------------

def field_response(points, directions, wavelength):
    """Field-response vector(s) of the given paths at the given point(s)

    Parameters
    ----------
    points : `numpy.ndarray`
        one point of shape ``(2,)`` or an array of shape ``(N, 2)``

    directions : `numpy.ndarray`
        direction vectors of shape ``(L, 2)``

    wavelength : `float`
        the carrier wavelength, in the same units as ``points``

    Returns
    -------
    response : `numpy.ndarray`
        complex array of shape ``(L,)`` or ``(N, L)`` with entries
        ``exp(j 2 pi / wavelength p^T n_l)``
    """
    if wavelength <= 0:
        raise ValueError("wavelength must be positive, got {}".format(
            wavelength))
    phase = numpy.asarray(points, dtype=float) @ numpy.asarray(
        directions, dtype=float).T
    return numpy.exp(2j * numpy.pi / wavelength * phase)


def field_response_tx(t_m, paths, wavelength):
    """Transmit field response of ``paths`` at BS antenna position ``t_m``
    """
    return field_response(t_m, paths.n_t, wavelength)


def field_response_rx(r_k, paths, wavelength):
    """Receive field response of ``paths`` at user antenna position ``r_k``
    """
    return field_response(r_k, paths.n_r, wavelength)


def field_response_gradient(point, directions, wavelength):
    """Gradient of each field-response entry with respect to position

    Returns
    -------
    gradient : `numpy.ndarray`
        complex array of shape ``(L, 2)`` whose row ``l`` is
        ``j 2 pi / wavelength f_l(point) n_l``
    """
    response = field_response(point, directions, wavelength)
    return (2j * numpy.pi / wavelength) * response[:, None] * numpy.asarray(
        directions, dtype=float)


# -- channels -----------------------------------------------------------------

def assemble_channel(t, r_k, paths, wavelength):
    """Channel vector between the base station and one user

    Parameters
    ----------
    t : `numpy.ndarray`
        BS antenna positions, shape ``(M, 2)``

    r_k : `numpy.ndarray`
        the user's antenna position, shape ``(2,)``

    paths : `PathSet`
        the user's path geometry

    wavelength : `float`
        the carrier wavelength

    Returns
    -------
    h : `numpy.ndarray`
        complex array of shape ``(M,)``
    """
    t = numpy.atleast_2d(numpy.asarray(t, dtype=float))
    if t.shape[-1] != 2:
        raise ValueError("antenna positions must have shape (M, 2), "
                         "got {}".format(t.shape))
    # rows of `tx` are f(t_m)^T, so F^H = tx.conj()
    tx = field_response(t, paths.n_t, wavelength)
    rx = field_response_rx(r_k, paths, wavelength)
    return tx.conj() @ (paths.sigma @ rx)


def channel_matrix(positions, paths, wavelength):
    """Stack every user's channel into the ``(M, K)`` matrix ``H``

    Parameters
    ----------
    positions : `PositionState`
        current antenna positions

    paths : `list` of `PathSet`
        per-user path geometry, in user order

    wavelength : `float`
        the carrier wavelength
    """
    if len(paths) != positions.num_users:
        raise ValueError("got path sets for {0} users but positions for "
                         "{1}".format(len(paths), positions.num_users))
    return numpy.column_stack([
        assemble_channel(positions.t, positions.r[k], p, wavelength)
        for k, p in enumerate(paths)])


# -- antenna positions --------------------------------------------------------

class PositionState(object):
    """Antenna positions at the base station and at every user

    Parameters
    ----------
    t : `numpy.ndarray`
        BS antenna positions, shape ``(M, 2)``

    r : `numpy.ndarray`
        user antenna positions, shape ``(K, 2)``
    """
    def __init__(self, t, r):
        self.t = numpy.array(t, dtype=float, ndmin=2)
        self.r = numpy.array(r, dtype=float, ndmin=2)
        for name in ('t', 'r'):
            if getattr(self, name).shape[-1] != 2:
                raise ValueError("{0} must have shape (N, 2), got "
                                 "{1}".format(name, getattr(self, name).shape))

    @property
    def num_antennas(self):
        return self.t.shape[0]

    @property
    def num_users(self):
        return self.r.shape[0]

    def copy(self):
        return type(self)(self.t.copy(), self.r.copy())

    def to_dict(self):
        return {'t': self.t.tolist(), 'r': self.r.tolist()}

    @classmethod
    def from_dict(cls, data):
        return cls(data['t'], data['r'])

    def __repr__(self):
        return '<PositionState(M={0}, K={1})>'.format(
            self.num_antennas, self.num_users)


def initial_positions(config, rng=None):
    """Starting antenna positions for a scenario

    With ``config.init == 'grid'`` the BS antennas sit on a near-square
    grid inside the transmit region (general mode) or at the centres of
    their cells (planar mode).  With ``config.init == 'random'`` they
    are drawn uniformly from the same sets, keeping the minimum
    spacing.  Users always start at the centres of their regions.

    Parameters
    ----------
    config : `~maopt.scenario.ScenarioConfig`
        the scenario configuration

    rng : `numpy.random.Generator`, optional
        generator for random placement, required when
        ``config.init == 'random'``

    Returns
    -------
    positions : `PositionState`

    Raises
    ------
    ValueError
        if the antennas cannot be placed with the required spacing
    """
    random = config.init == 'random'
    if random and rng is None:
        raise ValueError("random initial positions require an rng")
    if config.mode == 'planar':
        cells = config.planar_cells
        if random:
            t = numpy.array([cell.sample(rng) for cell in cells])
        else:
            t = numpy.array([cell.center for cell in cells])
    elif random:
        t = utils.random_positions(config.tx_region, config.num_antennas,
                                   config.min_distance, rng)
    else:
        t = utils.grid_positions(config.tx_region, config.num_antennas,
                                 config.min_distance)
    r = numpy.array([region.center for region in config.rx_regions])
    return PositionState(t, r)


def generate_scenario(config):
    """Draw a random scenario from a configuration

    Path geometry is drawn first, user by user, followed by the initial
    positions, all from one generator seeded with ``config.seed``, so
    the same configuration always produces the same scenario.

    Parameters
    ----------
    config : `~maopt.scenario.ScenarioConfig`
        a validated scenario configuration

    Returns
    -------
    paths : `list` of `PathSet`
        per-user path geometry

    positions : `PositionState`
        initial antenna positions
    """
    rng = numpy.random.default_rng(config.seed)
    paths = []
    for num_tx, num_rx in zip(config.tx_paths, config.rx_paths):
        variance = 1. / num_tx if config.sigma_normalization == 'paths' else 1.
        paths.append(random_paths(num_tx, num_rx, rng,
                                  angle_range=config.angle_range,
                                  variance=variance))
    return paths, initial_positions(config, rng=rng)
