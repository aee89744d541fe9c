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

"""Pytest configuration for maopt
"""

import os

import numpy
import pytest

from .scenario import (Scenario, ScenarioConfig)


# -- shared scenarios ---------------------------------------------------------

@pytest.fixture
def rng():
    """A freshly seeded random number generator
    """
    return numpy.random.default_rng(20240101)


@pytest.fixture(params=('general', 'planar'))
def small_scenario(request):
    """A four-antenna, two-user scenario in each movement mode
    """
    config = ScenarioConfig(num_antennas=4, num_users=2, tx_paths=3,
                            rx_paths=3, mode=request.param, seed=7,
                            max_iters=30)
    return Scenario.generate(config)


# -- pytest fixture overrides -------------------------------------------------
# these new fixtures overload the pytest builtin `tmpdir` and `tmp_path`
# to ensure that the session is returned to the starting directory once
# the test has finished (regardless of state)

@pytest.fixture
def tmpdir(tmpdir):
    """Overload pytest's `tmpdir` to preserve the CWD from the test start
    """
    start = os.getcwd()
    try:
        yield tmpdir
    finally:
        os.chdir(start)


@pytest.fixture
def tmp_path(tmp_path):
    """Overload pytest's `tmp_path` to preserve the CWD from the test start
    """
    start = os.getcwd()
    try:
        yield tmp_path
    finally:
        os.chdir(start)
