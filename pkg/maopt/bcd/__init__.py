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

"""Block-coordinate descent driver
"""

from .core import (BaselineKind, IterationRecord, MonteCarloReport,
                   RunReport, run_bcd, run_monte_carlo)

__author__ = 'The maopt developers'
