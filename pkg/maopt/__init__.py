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

"""The movable-antenna optimisation package (`maopt`) maximises the
weighted sum rate of a multiuser downlink in which the base station and
every user carry antennas whose positions can be moved.

Beamformers are designed with the weighted minimum mean-square error
(WMMSE) iteration, and antenna positions with majorization-minimization,
all tied together by block-coordinate descent.
"""

try:
    from ._version import version as __version__
except ModuleNotFoundError:
    try:
        import setuptools_scm
        __version__ = setuptools_scm.get_version(fallback_version='?.?.?')
    except (ModuleNotFoundError, TypeError, LookupError):
        __version__ = '?.?.?'

__author__ = 'The maopt developers'
