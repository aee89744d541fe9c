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

"""Majorization-minimization updates of the user antenna positions

User ``k``'s antenna only enters its own channel, so each user position
is updated on its own by minimising the user's mean-square error

.. math::

   g_k(r_k)^H C_k g_k(r_k) + \\mathrm{Re}(d_k^H g_k(r_k))

over its receive region, where ``g_k`` is the receive field response.
"""

import numpy

from .. import channel
from .core import (Surrogate, majorize, quadratic_form)

__author__ = 'The maopt developers'


class UserSurrogate(Surrogate):
    """`Surrogate` of one user's mean-square error
    """
    @property
    def C(self):
        return self.quad

    @property
    def d(self):
        return self.linear

    @property
    def d_hat(self):
        return self.linear_hat


def build_user_coefficients(k, paths, positions, state, wavelength):
    """Quadratic-form coefficients of user ``k``'s mean-square error

    Parameters
    ----------
    k : `int`
        user index

    paths : `list` of `~maopt.channel.PathSet`
        per-user path geometry

    positions : `~maopt.channel.PositionState`
        current antenna positions (``r_k`` itself is not used)

    state : `~maopt.beamforming.BeamformerState`
        current beamformers and receive scalars

    wavelength : `float`
        the carrier wavelength

    Returns
    -------
    C : `numpy.ndarray`
        Hermitian PSD matrix of shape ``(L_r, L_r)``

    d : `numpy.ndarray`
        complex vector of length ``L_r``
    """
    path = paths[k]
    responses = channel.field_response(positions.t, path.n_t, wavelength)
    # column j is Sigma^H F w_j
    effective = path.sigma.conj().T @ (responses.T @ state.W)
    u = state.u[k]
    C = abs(u) ** 2 * (effective @ effective.conj().T)
    d = -2 * numpy.conj(u) * effective[:, k]
    return C, d


def user_objective(k, point, paths, positions, state, wavelength):
    """User ``k``'s mean-square error with its antenna at ``point``,
    less the constant ``1 + |u_k|^2 sigma^2``
    """
    C, d = build_user_coefficients(k, paths, positions, state, wavelength)
    return quadratic_form(C, d, channel.field_response_rx(
        point, paths[k], wavelength))


def build_user_surrogate(C, d, r_k0, path, wavelength, tight=False):
    """Majorize user ``k``'s objective around ``r_k0``

    Returns
    -------
    surrogate : `UserSurrogate`
    """
    return majorize(C, d, r_k0, path.n_r, wavelength, tight=tight,
                    cls=UserSurrogate)


def update_user_position(k, C, d, r_k0, region, path, wavelength,
                         tight=False):
    """Clamped gradient step for user ``k``'s antenna

    Returns
    -------
    point : `numpy.ndarray`
        ``r_k0`` moved against the surrogate gradient by half its inverse
        curvature, then clamped into ``region``; ``r_k0`` itself when the
        surrogate is flat
    """
    surrogate = build_user_surrogate(C, d, r_k0, path, wavelength,
                                     tight=tight)
    if surrogate.curvature <= 0:
        return surrogate.expansion_point
    return region.project(surrogate.expansion_point -
                          surrogate.grad / (2 * surrogate.curvature))


def sweep_user_positions(paths, positions, state, config):
    """Update every user's antenna position once

    Returns
    -------
    positions : `~maopt.channel.PositionState`
        a copy of ``positions`` with the user positions updated
    """
    updated = positions.copy()
    for k, path in enumerate(paths):
        C, d = build_user_coefficients(k, paths, positions, state,
                                       config.wavelength)
        updated.r[k] = update_user_position(
            k, C, d, positions.r[k], config.rx_regions[k], path,
            config.wavelength, tight=config.tight_majorizer)
    return updated
