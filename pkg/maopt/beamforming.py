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

"""Weighted minimum mean-square error (WMMSE) beamforming

For fixed antenna positions, the weighted sum rate
``sum_k alpha_k log(1 + gamma_k)`` is maximised through the equivalent
problem

.. math::

   \\min_{W, u, v} \\sum_k \\alpha_k (v_k e_k - \\log v_k)
   \\quad \\mathrm{s.t.} \\quad \\|W\\|_F^2 \\le P_{max}

which is solved block by block: the receive scalars ``u``, then the
weights ``v``, then the transmit beamformers ``W``.  Throughout this
module ``H`` is the ``(M, K)`` channel matrix whose column ``k`` is
``h_k`` and ``W`` is the ``(M, K)`` matrix whose column ``k`` is
``w_k``.  Rates are in nats.
"""

import logging

import numpy
from scipy import linalg

from . import const

__author__ = 'The maopt developers'

LOGGER = logging.getLogger(__name__)


# -- state objects ------------------------------------------------------------

class BeamformerState(object):
    """Transmit beamformers with the matching receive scalars and weights

    Parameters
    ----------
    W : `numpy.ndarray`
        complex beamformers, shape ``(M, K)``

    u : `numpy.ndarray`, optional
        complex receive scalars, shape ``(K,)``, default: zeros

    v : `numpy.ndarray`, optional
        positive auxiliary weights, shape ``(K,)``, default: ones
    """
    def __init__(self, W, u=None, v=None):
        self.W = numpy.array(W, dtype=complex, ndmin=2)
        num_users = self.W.shape[1]
        self.u = (numpy.zeros(num_users, dtype=complex) if u is None else
                  numpy.array(u, dtype=complex, ndmin=1))
        self.v = (numpy.ones(num_users) if v is None else
                  numpy.array(v, dtype=float, ndmin=1))
        if self.u.shape != (num_users,) or self.v.shape != (num_users,):
            raise ValueError(
                "u and v must have shape ({0},), got {1} and {2}".format(
                    num_users, self.u.shape, self.v.shape))

    @property
    def power(self):
        """Total transmit power ``||W||_F^2``
        """
        return transmit_power(self.W)

    def copy(self):
        return type(self)(self.W.copy(), self.u.copy(), self.v.copy())


class LinkMetrics(object):
    """Per-user link quality for one set of channels and beamformers

    Attributes
    ----------
    gamma : `numpy.ndarray`
        SINR of each user

    e : `numpy.ndarray`
        mean-square error of each user

    wsr : `float`
        weighted sum rate, in nats

    obj : `float`
        WMMSE objective
    """
    def __init__(self, gamma, e, wsr, obj):
        self.gamma = gamma
        self.e = e
        self.wsr = wsr
        self.obj = obj

    def __repr__(self):
        return '<LinkMetrics(wsr={0:.6g}, obj={1:.6g})>'.format(
            self.wsr, self.obj)


# -- link evaluation ----------------------------------------------------------

def transmit_power(W):
    return float(numpy.sum(numpy.abs(W) ** 2))


def received_gains(H, W):
    """Matrix ``G`` with ``G[k, j] = h_k^H w_j``
    """
    return numpy.asarray(H).conj().T @ numpy.asarray(W)


def sinr(H, W, sigma2):
    """Signal-to-interference-plus-noise ratio of each user

    Parameters
    ----------
    H : `numpy.ndarray`
        channel matrix, shape ``(M, K)``

    W : `numpy.ndarray`
        beamformers, shape ``(M, K)``

    sigma2 : `float`
        noise power, linear scale

    Returns
    -------
    gamma : `numpy.ndarray`
        array of shape ``(K,)``
    """
    power = numpy.abs(received_gains(H, W)) ** 2
    signal = numpy.diag(power)
    interference = power.sum(axis=1) - signal
    return signal / (interference + sigma2)


def wsr(gamma, alpha):
    """Weighted sum rate ``sum_k alpha_k log(1 + gamma_k)``, in nats
    """
    return float(numpy.dot(alpha, numpy.log1p(gamma)))


def mse(H, W, u, sigma2):
    """Mean-square error of each user for linear receivers ``u``

    .. math::

       e_k = 1 + |u_k|^2 (\\sigma^2 + \\sum_j |h_k^H w_j|^2)
           - 2 \\mathrm{Re}(u_k^* h_k^H w_k)
    """
    gains = received_gains(H, W)
    u = numpy.asarray(u)
    total = (numpy.abs(gains) ** 2).sum(axis=1) + sigma2
    return (1 + numpy.abs(u) ** 2 * total -
            2 * numpy.real(u.conj() * numpy.diag(gains)))


def wmmse_objective(e, alpha, v):
    """WMMSE objective ``sum_k alpha_k (v_k e_k - log v_k)``
    """
    v = numpy.asarray(v, dtype=float)
    return float(numpy.dot(alpha, v * numpy.asarray(e) - numpy.log(v)))


def link_metrics(H, state, alpha, sigma2):
    """Evaluate `LinkMetrics` for the given channels and beamformer state
    """
    gamma = sinr(H, state.W, sigma2)
    e = mse(H, state.W, state.u, sigma2)
    return LinkMetrics(gamma, e, wsr(gamma, alpha),
                       wmmse_objective(e, alpha, state.v))


# -- block updates ------------------------------------------------------------

def update_u(H, W, sigma2):
    """MMSE receive scalars for fixed beamformers
    """
    gains = received_gains(H, W)
    total = (numpy.abs(gains) ** 2).sum(axis=1) + sigma2
    return numpy.diag(gains) / total


def update_v(H, W, u):
    """Optimal auxiliary weights ``1 / (1 - u_k^* h_k^H w_k)``

    Raises
    ------
    FloatingPointError
        if any denominator is not real and positive, to within
        `const.WEIGHT_IMAG_TOL`, which cannot happen when ``u`` comes
        from :func:`update_u`
    """
    gains = numpy.diag(received_gains(H, W))
    denom = 1 - numpy.asarray(u).conj() * gains
    real = numpy.real(denom)
    tol = const.WEIGHT_IMAG_TOL * numpy.maximum(1., numpy.abs(real))
    if not ((real > 0).all() and (numpy.abs(numpy.imag(denom)) <= tol).all()):
        raise FloatingPointError(
            "weight denominators {} are not real and positive; receive "
            "scalars are not MMSE for these beamformers".format(
                numpy.atleast_1d(denom).tolist()))
    return 1. / real


class PowerDual(object):
    """Regularised transmit beamformers as a function of the power dual

    For receive scalars ``u`` and weights ``v`` the optimal beamformers
    are

    .. math::

       w_k(\\mu) = \\alpha_k u_k v_k (\\mu I + \\Phi)^{-1} h_k,
       \\quad \\Phi = \\sum_i \\alpha_i |u_i|^2 v_i h_i h_i^H

    One eigendecomposition of ``Phi`` gives ``w_k(mu)`` and the total
    power ``P(mu)`` for every ``mu`` without further linear solves.

    Parameters
    ----------
    H : `numpy.ndarray`
        channel matrix, shape ``(M, K)``

    u : `numpy.ndarray`
        receive scalars, shape ``(K,)``

    v : `numpy.ndarray`
        auxiliary weights, shape ``(K,)``

    alpha : `numpy.ndarray`
        user weights, shape ``(K,)``

    Notes
    -----
    Eigenvalues below ``1e-12`` times the largest are treated as zero.
    The right-hand sides lie in the range of ``Phi``, so at ``mu = 0``
    the pseudo-inverse solution is used whenever ``Phi`` is singular.
    """
    def __init__(self, H, u, v, alpha):
        H = numpy.asarray(H, dtype=complex)
        u = numpy.asarray(u, dtype=complex)
        scale = numpy.asarray(alpha) * numpy.asarray(v)
        phi = (H * (scale * numpy.abs(u) ** 2)) @ H.conj().T
        phi = (phi + phi.conj().T) / 2.
        self.eigenvalues, self.eigenvectors = linalg.eigh(phi)
        self.eigenvalues = numpy.clip(self.eigenvalues, 0, None)
        self.coefficients = self.eigenvectors.conj().T @ (H * (scale * u))
        top = self.eigenvalues.max(initial=0.)
        self.null = self.eigenvalues <= 1e-12 * top
        self.coefficients[self.null] = 0.

    def _denominator(self, mu):
        denom = self.eigenvalues + mu
        if mu == 0:
            denom = numpy.where(self.null, numpy.inf, denom)
        return denom

    def power(self, mu):
        """Total transmit power ``P(mu)``
        """
        weights = 1. / self._denominator(mu) ** 2
        return float(weights @ (numpy.abs(self.coefficients) ** 2).sum(axis=1))

    def beamformers(self, mu):
        """Beamformer matrix ``W(mu)``
        """
        return self.eigenvectors @ (
            self.coefficients / self._denominator(mu)[:, None])

    def solve(self, p_max, rtol=const.BISECTION_RTOL,
              maxiter=const.BISECTION_MAXITER):
        """Find the smallest ``mu >= 0`` meeting the power budget

        Parameters
        ----------
        p_max : `float`
            maximum transmit power

        rtol : `float`, optional
            relative power error at which bisection stops

        maxiter : `int`, optional
            maximum number of bisection steps

        Returns
        -------
        mu : `float`
            the power dual variable

        W : `numpy.ndarray`
            beamformers ``W(mu)``, always within the power budget
        """
        if self.power(0.) <= p_max:
            return 0., self.beamformers(0.)
        low, high = 0., 1.
        while self.power(high) > p_max:
            low, high = high, 2 * high
        for _ in range(maxiter):
            if abs(self.power(high) - p_max) <= rtol * p_max:
                break
            mid = (low + high) / 2.
            if not low < mid < high:
                break
            if self.power(mid) > p_max:
                low = mid
            else:
                high = mid
        LOGGER.debug("power dual bisection settled at mu={0:.12g} "
                     "(bracket width {1:.3g})".format(high, high - low))
        return high, self.beamformers(high)


def update_w(H, u, v, alpha, p_max, rtol=const.BISECTION_RTOL,
             maxiter=const.BISECTION_MAXITER):
    """Optimal transmit beamformers for fixed ``u`` and ``v``

    If every receive scalar is zero the beamformers are all zero.

    See Also
    --------
    PowerDual
        for the closed form and the dual bisection
    """
    return PowerDual(H, u, v, alpha).solve(p_max, rtol=rtol,
                                           maxiter=maxiter)[1]


def initial_beamformers(H, p_max):
    """Maximum-ratio transmission scaled to the full power budget
    """
    H = numpy.asarray(H, dtype=complex)
    norm = numpy.linalg.norm(H)
    if norm == 0:
        return numpy.zeros_like(H)
    return H * (numpy.sqrt(p_max) / norm)


def wmmse_iteration(H, state, alpha, sigma2, p_max):
    """Run one ``u``, ``v``, ``W`` pass and return the new state
    """
    u = update_u(H, state.W, sigma2)
    v = update_v(H, state.W, u)
    W = update_w(H, u, v, alpha, p_max)
    return BeamformerState(W, u, v)


def refresh(H, state, sigma2):
    """Return a copy of ``state`` with ``u`` and ``v`` optimal for its
    beamformers
    """
    u = update_u(H, state.W, sigma2)
    return BeamformerState(state.W.copy(), u, update_v(H, state.W, u))
