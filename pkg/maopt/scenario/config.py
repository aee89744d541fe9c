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

"""
###############################
How to write a scenario file
###############################

:mod:`maopt.scenario` reads scenarios from JSON files holding a single
object.  Every key is optional; anything left out takes the default
shown below, and unknown keys are rejected.  Lengths are in metres and
angles in radians.

Keywords
--------

=========================  ====================================================
``num_antennas``           Number of movable antennas at the base station
                           (default: 16)
``num_users``              Number of single-antenna users (default: 4)
``tx_paths``               Transmit paths per user, one integer for every
                           user or a list of ``num_users`` integers
                           (default: 4)
``rx_paths``               Receive paths per user, as for ``tx_paths``
                           (default: 4)
``wavelength``             Carrier wavelength (default: 1)
``min_distance``           Minimum distance between BS antennas
                           (default: half a wavelength)
``tx_region``              BS movement region as
                           ``[[xmin, xmax], [ymin, ymax]]`` (default: a
                           square of side 5 wavelengths centred on the
                           origin)
``rx_regions``             One movement region per user (default: squares
                           of side 2 wavelengths centred on the origin)
``noise_dbm``              Noise power in dBm (default: 15)
``pmax_dbm``               Maximum transmit power in dBm (default: 30)
``alpha``                  Nonnegative user weights (default: all ones)
``mode``                   BS movement mode, ``general`` or ``planar``
                           (default: ``general``)
``planar_cells``           One cell per BS antenna for the planar mode
                           (default: a near-square grid of equal cells
                           filling ``tx_region`` with gaps of exactly
                           ``min_distance``)
``seed``                   Seed for scenario generation (default: 0)
``sigma_normalization``    ``paths`` draws path responses with variance
                           ``1 / L_t``, ``unit`` with variance 1
                           (default: ``paths``)
``angle_range``            Bounds of the uniform path-angle distribution
                           (default: ``[0, pi]``)
``init``                   Initial BS positions, ``grid`` or ``random``
                           (default: ``grid``)
``tight_majorizer``        Majorize with the exact largest eigenvalue rather
                           than the trace (default: ``false``)
``max_iters``              Maximum number of outer iterations (default: 200)
``inner_iters``            WMMSE passes per beamforming block (default: 10)
``tol_rel``                Relative change in weighted sum rate counted as
                           stalled (default: 1e-5)
``patience``               Consecutive stalled iterations before stopping
                           (default: 3)
``bs_sweeps``              Passes over the BS antennas per position block
                           (default: 1)
=========================  ====================================================

A three-user planar-mode scenario with a heavier first user would look
like this:

.. code-block:: json

   {
       "num_antennas": 9,
       "num_users": 3,
       "tx_paths": 3,
       "rx_paths": [2, 3, 3],
       "mode": "planar",
       "alpha": [2.0, 1.0, 1.0],
       "pmax_dbm": 35,
       "seed": 42
   }

.. note::

   Derived geometry is written out in full when a configuration is
   saved, so a saved file records the exact cells and regions that were
   used.
"""

import numbers
from collections import OrderedDict

import numpy

from .. import (const, utils)

__author__ = 'The maopt developers'

DEFAULTS = OrderedDict([
    ('num_antennas', const.NUM_ANTENNAS),
    ('num_users', const.NUM_USERS),
    ('tx_paths', const.NUM_PATHS),
    ('rx_paths', const.NUM_PATHS),
    ('wavelength', const.WAVELENGTH),
    ('min_distance', None),
    ('tx_region', None),
    ('rx_regions', None),
    ('noise_dbm', const.NOISE_DBM),
    ('pmax_dbm', const.PMAX_DBM),
    ('alpha', None),
    ('mode', 'general'),
    ('planar_cells', None),
    ('seed', 0),
    ('sigma_normalization', 'paths'),
    ('angle_range', list(const.ANGLE_RANGE)),
    ('init', 'grid'),
    ('tight_majorizer', False),
    ('max_iters', const.MAX_ITERS),
    ('inner_iters', const.INNER_ITERS),
    ('tol_rel', const.TOL_REL),
    ('patience', const.PATIENCE),
    ('bs_sweeps', const.BS_SWEEPS),
])

# changing any of these invalidates the default planar cells
CELL_KEYS = ('num_antennas', 'min_distance', 'tx_region', 'mode',
             'wavelength')

# per-user lists, resized when `num_users` changes
USER_KEYS = ('tx_paths', 'rx_paths', 'rx_regions', 'alpha')


# -- field checks -------------------------------------------------------------

def _fail(key, message, value):
    return ValueError("invalid {0!r}: {1}, got {2!r}".format(
        key, message, value))


def _integer(key, value, minimum):
    if (isinstance(value, bool) or not isinstance(value, numbers.Integral) or
            value < minimum):
        raise _fail(key, "must be an integer >= {}".format(minimum), value)
    return int(value)


def _real(key, value, minimum=None, strict=False):
    if isinstance(value, bool) or not isinstance(value, numbers.Real):
        raise _fail(key, "must be a number", value)
    value = float(value)
    if not numpy.isfinite(value):
        raise _fail(key, "must be finite", value)
    if minimum is not None and (value <= minimum if strict else
                                value < minimum):
        raise _fail(key, "must be {0} {1}".format(
            '>' if strict else '>=', minimum), value)
    return value


def _choice(key, value, choices):
    if value not in choices:
        raise _fail(key, "must be one of {}".format(', '.join(choices)),
                    value)
    return value


def _per_user(key, value, count, convert):
    if isinstance(value, (list, tuple)):
        if len(value) != count:
            raise _fail(key, "must have one entry per user ({})".format(
                count), value)
        return [convert(v) for v in value]
    return [convert(value)] * count


def _is_bounds(value):
    """Whether ``value`` looks like one ``[[xmin, xmax], [ymin, ymax]]``
    """
    try:
        return numpy.shape(value) == (2, 2)
    except ValueError:  # ragged nesting
        return False


def _rectangle(key, value):
    if isinstance(value, utils.Rectangle):
        return value
    try:
        return utils.Rectangle.from_list(value)
    except ValueError as exc:
        raise ValueError("invalid {0!r}: {1}".format(key, exc))


# -- configuration object -----------------------------------------------------

class ScenarioConfig(object):
    """Physical and algorithmic parameters of one scenario

    Keyword arguments match the keys documented in
    :mod:`maopt.scenario.config`; omitted keys take their defaults and
    derived geometry is filled in on construction.

    Raises
    ------
    ValueError
        if any key is unknown or any value is invalid, naming the
        offending key
    """
    def __init__(self, **params):
        unknown = sorted(set(params) - set(DEFAULTS))
        if unknown:
            raise ValueError("unknown configuration key(s): {}".format(
                ', '.join(unknown)))
        for key, default in DEFAULTS.items():
            setattr(self, key, params.get(key, default))
        self._resolve()
        self.validate()

    def _resolve(self):
        self.num_antennas = _integer('num_antennas', self.num_antennas, 1)
        self.num_users = _integer('num_users', self.num_users, 1)
        count = self.num_users
        self.tx_paths = _per_user('tx_paths', self.tx_paths, count,
                                  lambda v: _integer('tx_paths', v, 1))
        self.rx_paths = _per_user('rx_paths', self.rx_paths, count,
                                  lambda v: _integer('rx_paths', v, 1))
        self.wavelength = _real('wavelength', self.wavelength, 0, strict=True)
        if self.min_distance is None:
            self.min_distance = self.wavelength / 2.
        self.min_distance = _real('min_distance', self.min_distance, 0)
        if self.tx_region is None:
            self.tx_region = utils.Rectangle.centered(
                const.TX_REGION_SIDE * self.wavelength)
        self.tx_region = _rectangle('tx_region', self.tx_region)
        regions = self.rx_regions
        if regions is None:
            regions = utils.Rectangle.centered(
                const.RX_REGION_SIDE * self.wavelength)
        if isinstance(regions, utils.Rectangle) or _is_bounds(regions):
            regions = [regions] * count
        if not isinstance(regions, (list, tuple)) or len(regions) != count:
            raise _fail('rx_regions', "must list one region per user "
                        "({})".format(count), self.rx_regions)
        self.rx_regions = [_rectangle('rx_regions', r) for r in regions]
        self.noise_dbm = _real('noise_dbm', self.noise_dbm)
        self.pmax_dbm = _real('pmax_dbm', self.pmax_dbm)
        self.alpha = numpy.array(_per_user(
            'alpha', 1. if self.alpha is None else self.alpha, count,
            lambda v: _real('alpha', v, 0)))
        self.mode = _choice('mode', self.mode, const.MODES)
        if self.planar_cells is None and self.mode == 'planar':
            try:
                self.planar_cells = utils.partition_cells(
                    self.tx_region, self.num_antennas, self.min_distance)
            except ValueError as exc:
                raise ValueError("invalid 'min_distance': {}".format(exc))
        if self.planar_cells is not None:
            if (not isinstance(self.planar_cells, (list, tuple)) or
                    len(self.planar_cells) != self.num_antennas):
                raise _fail('planar_cells', "must list one cell per BS "
                            "antenna ({})".format(self.num_antennas),
                            self.planar_cells)
            self.planar_cells = [_rectangle('planar_cells', cell)
                                 for cell in self.planar_cells]
        self.seed = _integer('seed', self.seed, 0)
        self.sigma_normalization = _choice(
            'sigma_normalization', self.sigma_normalization,
            ('paths', 'unit'))
        try:
            low, high = self.angle_range
        except (TypeError, ValueError):
            raise _fail('angle_range', "must be a pair [low, high]",
                        self.angle_range)
        low, high = (_real('angle_range', low), _real('angle_range', high))
        if not low < high:
            raise _fail('angle_range', "must be increasing",
                        self.angle_range)
        self.angle_range = (low, high)
        self.init = _choice('init', self.init, ('grid', 'random'))
        if not isinstance(self.tight_majorizer, bool):
            raise _fail('tight_majorizer', "must be true or false",
                        self.tight_majorizer)
        self.max_iters = _integer('max_iters', self.max_iters, 1)
        self.inner_iters = _integer('inner_iters', self.inner_iters, 1)
        self.tol_rel = _real('tol_rel', self.tol_rel, 0, strict=True)
        self.patience = _integer('patience', self.patience, 1)
        self.bs_sweeps = _integer('bs_sweeps', self.bs_sweeps, 1)

    def validate(self):
        """Check that the antenna geometry is feasible

        Raises
        ------
        ValueError
            if the BS antennas cannot be placed with the minimum spacing,
            or a planar cell lies outside the transmit region or too
            close to another cell
        """
        try:
            utils.grid_positions(self.tx_region, self.num_antennas,
                                 self.min_distance)
        except ValueError as exc:
            raise ValueError("invalid 'min_distance': {}".format(exc))
        if self.mode != 'planar':
            return
        for m, cell in enumerate(self.planar_cells):
            if not cell.inside(self.tx_region, tol=const.FEASIBILITY_TOL):
                raise _fail('planar_cells', "cell {} lies outside "
                            "tx_region".format(m), cell.to_list())
            for j in range(m):
                gap = cell.distance(self.planar_cells[j])
                if gap < self.min_distance - const.FEASIBILITY_TOL:
                    raise _fail('planar_cells', "cells {0} and {1} are "
                                "closer than min_distance".format(j, m), gap)

    @property
    def sigma2(self):
        """Noise power, linear scale (watts)
        """
        return float(utils.dbm_to_watts(self.noise_dbm))

    @property
    def p_max(self):
        """Maximum transmit power, linear scale (watts)
        """
        return float(utils.dbm_to_watts(self.pmax_dbm))

    def to_dict(self):
        """Serialise to a JSON-compatible `dict`, defaults filled in
        """
        data = OrderedDict()
        for key in DEFAULTS:
            value = getattr(self, key)
            if isinstance(value, utils.Rectangle):
                value = value.to_list()
            elif key in ('rx_regions', 'planar_cells') and value is not None:
                value = [cell.to_list() for cell in value]
            elif isinstance(value, numpy.ndarray):
                value = value.tolist()
            elif isinstance(value, tuple):
                value = list(value)
            data[key] = value
        return data

    @classmethod
    def from_dict(cls, data):
        """Construct from a `dict`, as read from a JSON file
        """
        if not isinstance(data, dict):
            raise ValueError("configuration must be a JSON object, got "
                             "{}".format(type(data).__name__))
        return cls(**data)

    def replace(self, **changes):
        """Return a validated copy with some keys changed

        Planar cells are recomputed when any key they derive from
        changes, unless given explicitly, and per-user lists holding a
        single repeated value follow a change of ``num_users``.
        """
        data = self.to_dict()
        if 'planar_cells' not in changes and set(CELL_KEYS) & set(changes):
            data['planar_cells'] = None
        if changes.get('num_users', self.num_users) != self.num_users:
            for key in USER_KEYS:
                values = data[key]
                if key not in changes and all(v == values[0] for v in values):
                    data[key] = values[0]
        data.update(changes)
        return type(self).from_dict(data)

    def __eq__(self, other):
        if not isinstance(other, ScenarioConfig):
            return NotImplemented
        return self.to_dict() == other.to_dict()

    def __repr__(self):
        return '<ScenarioConfig(M={0}, K={1}, mode={2!r}, seed={3})>'.format(
            self.num_antennas, self.num_users, self.mode, self.seed)
