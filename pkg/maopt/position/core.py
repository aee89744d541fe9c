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

"""Majorization of position subproblems

Both the BS and the user position subproblems share one shape: for a
single antenna at ``p`` with field response ``f(p)``, minimise

.. math::

   q(p) = f(p)^H Q f(p) + \\mathrm{Re}(c^H f(p))

for a Hermitian positive semidefinite ``Q``.  The quadratic part is
majorized with a scaled identity ``kappa I`` (``kappa`` at least the
largest eigenvalue of ``Q``), which leaves the linear form
``z(p) = Re(c_hat^H f(p))`` with
``c_hat = 2 (Q - kappa I) f(p0) + c``.  That linear form is in turn
bounded by an isotropic quadratic in ``p`` whose curvature is
``(2 pi / lambda)^2 ||c_hat||_1``.
"""

import numpy

from .. import channel

__author__ = 'The maopt developers'


# -- quadratic forms ----------------------------------------------------------

def quadratic_form(quad, linear, response):
    """Evaluate ``f^H Q f + Re(c^H f)`` for a response vector ``f``
    """
    response = numpy.asarray(response)
    return float(numpy.real(response.conj() @ quad @ response) +
                 numpy.real(numpy.vdot(linear, response)))


def quadratic_bound(L, M, x, x0):
    """Quadratic upper bound on ``x^H L x`` built around ``x0``

    Parameters
    ----------
    L : `numpy.ndarray`
        Hermitian matrix

    M : `numpy.ndarray`
        Hermitian matrix with ``M - L`` positive semidefinite

    x : `numpy.ndarray`
        point at which to evaluate the bound

    x0 : `numpy.ndarray`
        expansion point, where the bound is tight

    Returns
    -------
    bound : `float`
        ``x^H M x + 2 Re(x^H (L - M) x0) + x0^H (M - L) x0``
    """
    x = numpy.asarray(x)
    x0 = numpy.asarray(x0)
    diff = numpy.asarray(L) - numpy.asarray(M)
    return float(numpy.real(
        x.conj() @ M @ x + 2 * (x.conj() @ diff @ x0) - x0.conj() @ diff @ x0))


def linear_form(linear, directions, point, wavelength):
    """Evaluate ``z(p) = Re(c^H f(p))``
    """
    response = channel.field_response(point, directions, wavelength)
    return float(numpy.real(numpy.vdot(linear, response)))


def linear_form_gradient(linear, directions, point, wavelength):
    """Gradient of ``z(p) = Re(c^H f(p))`` with respect to ``p``

    Returns
    -------
    grad : `numpy.ndarray`
        real array of shape ``(2,)``
    """
    gradient = channel.field_response_gradient(point, directions, wavelength)
    return numpy.real(numpy.asarray(linear).conj() @ gradient)


def curvature_bound(linear, wavelength):
    """Curvature ``(2 pi / lambda)^2 ||c||_1`` of the isotropic bound on
    ``z``
    """
    return float((2 * numpy.pi / wavelength) ** 2 *
                 numpy.abs(linear).sum())


def isotropic_bounds(linear, directions, point, point0, wavelength):
    """Isotropic quadratic bounds on ``z(p) = Re(c^H f(p))``

    Parameters
    ----------
    linear : `numpy.ndarray`
        complex coefficient vector ``c``

    directions : `numpy.ndarray`
        path direction vectors, shape ``(L, 2)``

    point : `numpy.ndarray`
        position ``p`` at which to bound ``z``

    point0 : `numpy.ndarray`
        expansion point ``p0``

    wavelength : `float`
        the carrier wavelength

    Returns
    -------
    lower, upper : `float`
        ``z(p0) + grad^T d -/+ delta ||d||^2`` with ``d = p - p0`` and
        ``delta`` the curvature from :func:`curvature_bound`; both are
        tight at ``p0``
    """
    step = numpy.asarray(point, dtype=float) - numpy.asarray(point0,
                                                             dtype=float)
    value = linear_form(linear, directions, point0, wavelength)
    grad = linear_form_gradient(linear, directions, point0, wavelength)
    linearised = value + float(grad @ step)
    spread = curvature_bound(linear, wavelength) * float(step @ step)
    return linearised - spread, linearised + spread


# -- surrogates ---------------------------------------------------------------

class Surrogate(object):
    """Isotropic quadratic majorizer of a single-antenna position objective

    The surrogate value at ``p`` is

    .. math::

       s(p) = q(p_0) + g^T (p - p_0) + \\delta \\|p - p_0\\|^2

    which is at least the true objective ``q(p)`` everywhere and equal
    to it at the expansion point ``p0``.

    Attributes
    ----------
    quad : `numpy.ndarray`
        Hermitian PSD coefficient matrix ``Q``

    linear : `numpy.ndarray`
        linear coefficient vector ``c``

    linear_hat : `numpy.ndarray`
        effective linear coefficients after majorizing the quadratic part

    grad : `numpy.ndarray`
        gradient of the linear form at the expansion point

    curvature : `float`
        isotropic curvature ``delta``

    expansion_point : `numpy.ndarray`
        the point ``p0``

    value0 : `float`
        the true objective ``q(p0)``
    """
    def __init__(self, quad, linear, linear_hat, grad, curvature,
                 expansion_point, value0):
        self.quad = quad
        self.linear = linear
        self.linear_hat = linear_hat
        self.grad = grad
        self.curvature = curvature
        self.expansion_point = expansion_point
        self.value0 = value0

    def value(self, point):
        """Evaluate the surrogate at ``point``
        """
        step = numpy.asarray(point, dtype=float) - self.expansion_point
        return float(self.value0 + self.grad @ step +
                     self.curvature * (step @ step))

    def __repr__(self):
        return '<{0}(curvature={1:.6g}, at={2})>'.format(
            type(self).__name__, self.curvature,
            self.expansion_point.tolist())


def majorize(quad, linear, point0, directions, wavelength, tight=False,
             cls=Surrogate):
    """Build the isotropic surrogate of ``f^H Q f + Re(c^H f)`` at ``p0``

    Parameters
    ----------
    quad : `numpy.ndarray`
        Hermitian PSD matrix ``Q``

    linear : `numpy.ndarray`
        complex vector ``c``

    point0 : `numpy.ndarray`
        the expansion point

    directions : `numpy.ndarray`
        path direction vectors, shape ``(L, 2)``

    wavelength : `float`
        the carrier wavelength

    tight : `bool`, optional
        majorize ``Q`` with its largest eigenvalue instead of its trace,
        default: `False`

    cls : `type`, optional
        the `Surrogate` subclass to return

    Returns
    -------
    surrogate : `Surrogate`

    Notes
    -----
    When ``Q`` has rank one, as it does for the BS subproblem, its trace
    is its largest eigenvalue and the two choices coincide.
    """
    quad = numpy.asarray(quad, dtype=complex)
    linear = numpy.asarray(linear, dtype=complex)
    point0 = numpy.array(point0, dtype=float)
    if tight:
        kappa = float(numpy.linalg.eigvalsh(quad).max(initial=0.))
    else:
        kappa = float(numpy.real(numpy.trace(quad)))
    response0 = channel.field_response(point0, directions, wavelength)
    linear_hat = 2 * (quad @ response0 - kappa * response0) + linear
    return cls(
        quad, linear, linear_hat,
        linear_form_gradient(linear_hat, directions, point0, wavelength),
        curvature_bound(linear_hat, wavelength),
        point0,
        quadratic_form(quad, linear, response0),
    )


def combine(surrogates):
    """Sum several surrogates sharing one expansion point

    Returns
    -------
    grad : `numpy.ndarray`
        summed gradient

    curvature : `float`
        summed curvature
    """
    grad = numpy.sum([s.grad for s in surrogates], axis=0)
    curvature = float(sum(s.curvature for s in surrogates))
    return grad, curvature
