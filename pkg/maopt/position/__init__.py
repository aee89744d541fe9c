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

"""Majorization-minimization updates of antenna positions
"""

from .core import (Surrogate, isotropic_bounds, linear_form,
                   linear_form_gradient, majorize, quadratic_bound,
                   quadratic_form)
from .bs import (PositionSurrogate, build_coefficients, build_surrogate,
                 minorize_distance, sweep_bs_positions,
                 update_position_general, update_position_planar)
from .user import (UserSurrogate, build_user_coefficients,
                   sweep_user_positions, update_user_position)

__author__ = 'The maopt developers'
