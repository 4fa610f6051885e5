# Copyright (C) 2025 quadflat contributors
#
# This file is part of the quadflat module.
#
# quadflat is free software: you can redistribute it and/or modify
# it under the terms of the GNU Lesser General Public License as published by
# the Free Software Foundation, either version 3 of the License, or
# (at your option) any later version.
#
# quadflat is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU Lesser General Public License for more details.
#
# You should have received a copy of the GNU Lesser General Public License
# along with quadflat.  If not, see <http://www.gnu.org/licenses/>.

"""
Pairings with directional foliations and with the Liouville current.

The foliation in direction θ meets a straight segment of length l and
direction φ with total transverse measure l * |sin(θ - φ)|. Integrating
over all directions with weight 1/2 gives the Liouville current, whose
pairing with a curve is its flat length.
"""

import logging
import math

import numpy as np

from quadflat.curves import FlatGeodesic, tighten
from quadflat.surface_model import area

log = logging.getLogger(__name__)


class FoliationSlice(object):
    """The foliation of a surface by straight lines in one direction.

    :ivar surface: The surface.
    :ivar float theta: Leaf direction in [0, π).
    """
    def __init__(self, surface, theta):
        self.surface = surface
        self.theta = math.fmod(theta, math.pi)
        if self.theta < 0:
            self.theta += math.pi

    def pairing(self, geodesic):
        return foliation_curve_pairing(self.surface, self.theta, geodesic)

    def __str__(self):
        return "foliation of {} at angle {:.12g}".format(self.surface.name, self.theta)


class LiouvilleQuadrature(object):
    """Midpoint rule for half the integral over [0, π).

    :ivar int samples: Number of directions N.
    :ivar thetas: Sample directions (j + 1/2) π / N.
    :ivar weights: π / (2N) each, summing to π/2.
    """
    def __init__(self, samples):
        if samples < 1:
            raise ValueError("need at least one sample direction, got {}".format(samples))
        self.samples = samples
        self.thetas = (np.arange(samples) + 0.5) * math.pi / samples
        self.weights = np.full(samples, math.pi / (2 * samples))

    @property
    def total_weight(self):
        return float(np.sum(self.weights))

    def __str__(self):
        return "midpoint rule with {} directions".format(self.samples)


def _segments(surface, geodesic):
    if not isinstance(geodesic, FlatGeodesic):
        geodesic = tighten(surface, geodesic)
    lengths = np.array([segment.length for segment in geodesic.segments])
    angles = np.array([math.atan2(segment.vector[1], segment.vector[0])
                       for segment in geodesic.segments])
    return lengths, angles


def foliation_curve_pairing(surface, theta, geodesic):
    """Transverse measure of a closed geodesic for the foliation at angle
    theta.

    :param geodesic: :class:`~quadflat.curves.FlatGeodesic` or a word.
    :rtype: float
    """
    lengths, angles = _segments(surface, geodesic)
    return float(np.sum(lengths * np.abs(np.sin(theta - angles))))


def liouville_curve_pairing(surface, geodesic, samples):
    """Riemann sum approximation of the Liouville pairing, which tends to the
    flat length of the curve.

    :rtype: float
    """
    lengths, angles = _segments(surface, geodesic)
    quadrature = LiouvilleQuadrature(samples)
    table = np.abs(np.sin(quadrature.thetas[:, None] - angles[None, :])) @ lengths
    return float(np.sum(quadrature.weights * table))


def liouville_self_intersection(surface, samples):
    """Riemann sum approximation of i(L, L) = (π/2) * area.

    Two directional foliations of one flat structure pair to
    |sin(θ - θ')| times the area.

    :rtype: float
    """
    quadrature = LiouvilleQuadrature(samples)
    total = np.sum(np.abs(np.sin(quadrature.thetas[:, None] - quadrature.thetas[None, :])))
    value = (math.pi / (2 * samples)) ** 2 * float(area(surface)) * float(total)
    log.info("self intersection of the Liouville current of %s with %d samples: %r",
             surface.name, samples, value)
    return value
