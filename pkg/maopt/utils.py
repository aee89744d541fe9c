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

"""Utility methods
"""

import math

import numpy
from scipy.spatial.distance import pdist

__author__ = 'The maopt developers'


# -- power units --------------------------------------------------------------

def dbm_to_watts(dbm):
    """Convert a power in dBm to linear scale (watts)

    Examples
    --------
    >>> from maopt.utils import dbm_to_watts
    >>> dbm_to_watts(30)
    1.0
    """
    return 10 ** ((numpy.asarray(dbm, dtype=float) - 30) / 10.)


def watts_to_dbm(watts):
    """Convert a linear power (watts) to dBm
    """
    return 10 * numpy.log10(numpy.asarray(watts, dtype=float)) + 30


# -- rectangles ---------------------------------------------------------------

class Rectangle(object):
    """An axis-aligned rectangle in the antenna plane

    Parameters
    ----------
    xmin, xmax : `float`
        horizontal bounds, with ``xmin <= xmax``

    ymin, ymax : `float`
        vertical bounds, with ``ymin <= ymax``

    Raises
    ------
    ValueError
        if either pair of bounds is inverted or not finite
    """
    def __init__(self, xmin, xmax, ymin, ymax):
        bounds = numpy.array([xmin, xmax, ymin, ymax], dtype=float)
        if not numpy.isfinite(bounds).all():
            raise ValueError("rectangle bounds must be finite, "
                             "got {}".format(bounds.tolist()))
        if bounds[0] > bounds[1] or bounds[2] > bounds[3]:
            raise ValueError("rectangle bounds must be ordered as "
                             "[[xmin, xmax], [ymin, ymax]], got "
                             "{}".format(bounds.reshape(2, 2).tolist()))
        self.xmin, self.xmax, self.ymin, self.ymax = bounds.tolist()

    @classmethod
    def centered(cls, width, height=None, center=(0., 0.)):
        """Construct a rectangle of the given size about ``center``
        """
        height = width if height is None else height
        x0, y0 = center
        return cls(x0 - width / 2., x0 + width / 2.,
                   y0 - height / 2., y0 + height / 2.)

    @classmethod
    def from_list(cls, bounds):
        """Construct from ``[[xmin, xmax], [ymin, ymax]]``
        """
        try:
            (xmin, xmax), (ymin, ymax) = bounds
        except (TypeError, ValueError):
            raise ValueError("rectangle must be given as "
                             "[[xmin, xmax], [ymin, ymax]], got "
                             "{!r}".format(bounds))
        return cls(xmin, xmax, ymin, ymax)

    def to_list(self):
        return [[self.xmin, self.xmax], [self.ymin, self.ymax]]

    @property
    def width(self):
        return self.xmax - self.xmin

    @property
    def height(self):
        return self.ymax - self.ymin

    @property
    def center(self):
        return numpy.array([(self.xmin + self.xmax) / 2.,
                            (self.ymin + self.ymax) / 2.])

    @property
    def diagonal(self):
        return math.hypot(self.width, self.height)

    @property
    def lower(self):
        return numpy.array([self.xmin, self.ymin])

    @property
    def upper(self):
        return numpy.array([self.xmax, self.ymax])

    def contains(self, points, tol=0.):
        """Test whether each point lies inside this rectangle

        Parameters
        ----------
        points : `numpy.ndarray`
            a single point of shape ``(2,)`` or an array of shape ``(N, 2)``

        tol : `float`, optional
            slack allowed outside each edge, default: ``0``

        Returns
        -------
        inside : `bool` or `numpy.ndarray` of `bool`
        """
        points = numpy.asarray(points, dtype=float)
        inside = ((points >= self.lower - tol) &
                  (points <= self.upper + tol)).all(axis=-1)
        return inside if inside.ndim else bool(inside)

    def project(self, points):
        """Nearest point(s) inside this rectangle, by per-coordinate clamping
        """
        return numpy.clip(numpy.asarray(points, dtype=float),
                          self.lower, self.upper)

    def halfspaces(self):
        """Express this rectangle as four halfspaces ``a^T x >= beta``

        Returns
        -------
        normals : `numpy.ndarray`
            array of shape ``(4, 2)``

        offsets : `numpy.ndarray`
            array of shape ``(4,)``
        """
        normals = numpy.array([[1., 0.], [-1., 0.], [0., 1.], [0., -1.]])
        offsets = numpy.array([self.xmin, -self.xmax, self.ymin, -self.ymax])
        return normals, offsets

    def distance(self, other):
        """Euclidean distance between the closest points of two rectangles
        """
        dx = max(other.xmin - self.xmax, self.xmin - other.xmax, 0.)
        dy = max(other.ymin - self.ymax, self.ymin - other.ymax, 0.)
        return math.hypot(dx, dy)

    def inside(self, other, tol=0.):
        """Test whether this rectangle lies entirely within ``other``
        """
        return (self.xmin >= other.xmin - tol and
                self.xmax <= other.xmax + tol and
                self.ymin >= other.ymin - tol and
                self.ymax <= other.ymax + tol)

    def sample(self, rng, size=None):
        """Draw points uniformly from this rectangle
        """
        shape = (2,) if size is None else (size, 2)
        return rng.uniform(self.lower, self.upper, size=shape)

    def __eq__(self, other):
        if not isinstance(other, Rectangle):
            return NotImplemented
        return self.to_list() == other.to_list()

    def __repr__(self):
        return '{0}({1}, {2}, {3}, {4})'.format(
            type(self).__name__, self.xmin, self.xmax, self.ymin, self.ymax)


# -- antenna layouts ----------------------------------------------------------

def min_distance(points):
    """Smallest pairwise Euclidean distance between points

    Returns `numpy.inf` when fewer than two points are given.
    """
    points = numpy.asarray(points, dtype=float).reshape(-1, 2)
    if points.shape[0] < 2:
        return numpy.inf
    return float(pdist(points).min())


def grid_shape(count):
    """Near-square ``(rows, columns)`` holding at least ``count`` cells
    """
    if count < 1:
        raise ValueError("cannot lay out {} points".format(count))
    cols = int(math.ceil(math.sqrt(count)))
    rows = int(math.ceil(count / cols))
    return rows, cols


def _axis_points(lower, upper, num, spacing):
    """Points along one axis, cell-centred when the spacing allows,
    otherwise spread to the end points
    """
    length = upper - lower
    if num == 1:
        return numpy.array([(lower + upper) / 2.])
    if length / num >= spacing:
        return lower + (numpy.arange(num) + .5) * length / num
    return numpy.linspace(lower, upper, num)


def grid_positions(region, count, spacing):
    """Place points on a near-square grid inside a rectangle

    Points are placed at the centres of a ``rows x columns`` partition
    of ``region`` where that keeps neighbours at least ``spacing``
    apart, and are otherwise pushed out to the region edges.

    Parameters
    ----------
    region : `Rectangle`
        the region to fill

    count : `int`
        the number of points

    spacing : `float`
        the minimum allowed distance between any two points

    Returns
    -------
    points : `numpy.ndarray`
        array of shape ``(count, 2)``, filled row by row

    Raises
    ------
    ValueError
        if ``count`` points cannot be placed with the required spacing
    """
    rows, cols = grid_shape(count)
    xs = _axis_points(region.xmin, region.xmax, cols, spacing)
    ys = _axis_points(region.ymin, region.ymax, rows, spacing)
    xx, yy = numpy.meshgrid(xs, ys)
    points = numpy.column_stack((xx.ravel(), yy.ravel()))[:count]
    if min_distance(points) < spacing - 1e-12:
        raise ValueError(
            "cannot place {0} antennas at least {1} apart inside "
            "{2!r}".format(count, spacing, region))
    return points


def random_positions(region, count, spacing, rng, maxtries=10000):
    """Draw points uniformly inside a rectangle, rejecting any drawn
    closer than ``spacing`` to one already accepted

    Raises
    ------
    ValueError
        if fewer than ``count`` points were accepted after ``maxtries``
        draws
    """
    points = []
    for _ in range(maxtries):
        candidate = region.sample(rng)
        if all(numpy.linalg.norm(candidate - p) >= spacing for p in points):
            points.append(candidate)
        if len(points) == count:
            return numpy.array(points)
    raise ValueError(
        "failed to draw {0} antennas at least {1} apart inside {2!r} "
        "after {3} attempts".format(count, spacing, region, maxtries))


def partition_cells(region, count, gap):
    """Partition a rectangle into a near-square grid of equal cells
    separated by exactly ``gap``

    Parameters
    ----------
    region : `Rectangle`
        the region to partition

    count : `int`
        the number of cells, filled row by row

    gap : `float`
        the spacing between neighbouring cells

    Returns
    -------
    cells : `list` of `Rectangle`

    Raises
    ------
    ValueError
        if the gaps leave no room for the cells

    Examples
    --------
    A 5x5 region with 16 cells and half-unit gaps gives cells of side
    ``(5 - 3 * 0.5) / 4 = 0.875``:

    >>> from maopt.utils import Rectangle, partition_cells
    >>> cells = partition_cells(Rectangle.centered(5), 16, .5)
    >>> cells[0].width
    0.875
    """
    rows, cols = grid_shape(count)
    width = (region.width - (cols - 1) * gap) / cols
    height = (region.height - (rows - 1) * gap) / rows
    if width <= 0 or height <= 0:
        raise ValueError(
            "cannot partition {0!r} into {1} cells separated by "
            "{2}".format(region, count, gap))
    cells = []
    for i in range(count):
        row, col = divmod(i, cols)
        x0 = region.xmin + col * (width + gap)
        y0 = region.ymin + row * (height + gap)
        cells.append(Rectangle(x0, x0 + width, y0, y0 + height))
    return cells


# -- serialisation ------------------------------------------------------------

def encode_complex(array):
    """Encode a complex array as nested ``[re, im]`` lists for JSON

    Examples
    --------
    >>> from maopt.utils import encode_complex
    >>> encode_complex([1 + 2j])
    [[1.0, 2.0]]
    """
    array = numpy.asarray(array, dtype=complex)
    return numpy.stack((array.real, array.imag), axis=-1).tolist()


def decode_complex(data):
    """Decode nested ``[re, im]`` lists into a complex array
    """
    array = numpy.asarray(data, dtype=float)
    if array.shape[-1:] != (2,):
        raise ValueError("complex values must be encoded as [re, im] "
                         "pairs, got array of shape {}".format(array.shape))
    return array[..., 0] + 1j * array[..., 1]
