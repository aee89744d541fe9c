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

"""Constants for `maopt`
"""

import os
from collections import OrderedDict

import numpy

__author__ = 'The maopt developers'

NPROC = int(os.getenv('MAOPT_NPROC', 1))

# -- physical defaults --------------------------------------------------------

NUM_ANTENNAS = 16
NUM_USERS = 4
NUM_PATHS = 4
WAVELENGTH = 1.
TX_REGION_SIDE = 5.  # in wavelengths
RX_REGION_SIDE = 2.  # in wavelengths
NOISE_DBM = 15.
PMAX_DBM = 30.
ANGLE_RANGE = (0., numpy.pi)

# -- algorithm defaults -------------------------------------------------------

MAX_ITERS = 200
INNER_ITERS = 10
TOL_REL = 1e-5
PATIENCE = 3
BS_SWEEPS = 1

# -- tolerances ---------------------------------------------------------------

FEASIBILITY_TOL = 1e-9
KKT_TOL = 1e-7
WEIGHT_IMAG_TOL = 1e-9  # relative to the real part
QP_MAXITER = 200
BISECTION_RTOL = 1e-12
BISECTION_MAXITER = 100
PERTURBATION = 1e-6  # in wavelengths

# -- movement modes and baselines ---------------------------------------------

MODES = ('general', 'planar')

# name -> (move BS antennas, move user antennas)
BASELINES = OrderedDict([
    ('TMA_RMA', (True, True)),
    ('TFPA_RMA', (False, True)),
    ('TMA_RFPA', (True, False)),
    ('FPA', (False, False)),
])

# -- exit codes ---------------------------------------------------------------

EXIT_SUCCESS = 0
EXIT_USAGE = 1
EXIT_RUNTIME = 2
EXIT_VERIFY = 3


def baseline_flags(name):
    """Returns the movement flags of the named baseline

    Parameters
    ----------
    name : `str`
        the baseline name, one of the keys of `BASELINES`, matched
        case-insensitively and with ``-`` treated as ``_``

    Returns
    -------
    flags : `tuple` of `bool`
        ``(move_bs, move_users)``

    Raises
    ------
    ValueError
        if ``name`` doesn't match any known baseline

    Examples
    --------
    >>> from maopt.const import baseline_flags
    >>> baseline_flags('TFPA-RMA')
    (False, True)
    """
    key = str(name).upper().replace('-', '_')
    try:
        return BASELINES[key]
    except KeyError:
        raise ValueError("unknown baseline {0!r}, valid baselines are: "
                         "{1}".format(name, ', '.join(BASELINES)))
