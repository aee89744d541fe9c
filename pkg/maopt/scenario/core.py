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

"""Reading, writing and generating scenarios
"""

import json
import os

from .. import (channel, __version__)
from .config import ScenarioConfig

__author__ = 'The maopt developers'


# -- configuration files ------------------------------------------------------

def load_config(path=None):
    """Read a `ScenarioConfig` from a JSON file

    Parameters
    ----------
    path : `str`, optional
        path of the JSON file; an empty file, or no path at all, gives
        the default configuration

    Returns
    -------
    config : `ScenarioConfig`
        the validated configuration with defaults filled in

    Raises
    ------
    OSError
        if the file cannot be read

    ValueError
        if the file is not valid JSON or fails validation
    """
    if path is None:
        return ScenarioConfig()
    with open(path, 'r') as fobj:
        text = fobj.read()
    if not text.strip():
        return ScenarioConfig()
    try:
        data = json.loads(text)
    except ValueError as exc:
        raise ValueError("cannot parse {0}: {1}".format(path, exc))
    return ScenarioConfig.from_dict(data)


def save_config(config, path):
    """Write a `ScenarioConfig` to a JSON file
    """
    with open(path, 'w') as fobj:
        json.dump(config.to_dict(), fobj, indent=2)
        fobj.write(os.linesep)


# -- scenarios ----------------------------------------------------------------

class Scenario(object):
    """A configuration together with its drawn paths and starting positions

    Parameters
    ----------
    config : `ScenarioConfig`
        the configuration the scenario was drawn from

    paths : `list` of `~maopt.channel.PathSet`
        per-user path geometry

    positions : `~maopt.channel.PositionState`
        initial antenna positions

    metadata : `dict`, optional
        free-form labels stored with the scenario in an archive
    """
    def __init__(self, config, paths, positions, metadata=None):
        if len(paths) != config.num_users:
            raise ValueError("scenario has {0} path sets for {1} "
                             "users".format(len(paths), config.num_users))
        if positions.num_antennas != config.num_antennas or (
                positions.num_users != config.num_users):
            raise ValueError("scenario positions do not match the "
                             "configuration: {0!r} vs {1!r}".format(
                                 positions, config))
        self.config = config
        self.paths = paths
        self.positions = positions
        self.metadata = dict(metadata or {})

    @classmethod
    def generate(cls, config, metadata=None):
        """Draw a new scenario with :func:`maopt.channel.generate_scenario`
        """
        paths, positions = channel.generate_scenario(config)
        return cls(config, paths, positions, metadata=metadata)

    def to_dict(self):
        return {
            'metadata': self.metadata,
            'config': self.config.to_dict(),
            'paths': [p.to_dict() for p in self.paths],
            'positions': self.positions.to_dict(),
        }

    @classmethod
    def from_dict(cls, data):
        try:
            return cls(
                ScenarioConfig.from_dict(data['config']),
                [channel.PathSet.from_dict(p) for p in data['paths']],
                channel.PositionState.from_dict(data['positions']),
                metadata=data.get('metadata'),
            )
        except KeyError as exc:
            raise ValueError("scenario record is missing {}".format(exc))

    def __repr__(self):
        return '<Scenario({0!r})>'.format(self.config)


def save_archive(scenarios, path):
    """Write scenarios to a JSON archive that replays them exactly

    Complex path responses are stored as ``[re, im]`` pairs.
    """
    with open(path, 'w') as fobj:
        json.dump({
            'version': __version__,
            'scenarios': [s.to_dict() for s in scenarios],
        }, fobj)
        fobj.write(os.linesep)


def load_archive(path):
    """Read the scenarios stored by :func:`save_archive`

    Returns
    -------
    scenarios : `list` of `Scenario`
    """
    with open(path, 'r') as fobj:
        try:
            data = json.load(fobj)
        except ValueError as exc:
            raise ValueError("cannot parse {0}: {1}".format(path, exc))
    try:
        records = data['scenarios']
    except (KeyError, TypeError):
        raise ValueError("{} is not a scenario archive".format(path))
    return [Scenario.from_dict(record) for record in records]
