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
Saddle connections: straight segments between cone points.

The search starts a wedge of directions in every triangle corner and pushes
it through the developed triangulation. A wedge is split at every vertex
that shows up strictly inside it, and dropped as soon as the side it would
cross lies farther away than the length bound.
"""

import collections
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from quadflat import geometry
from quadflat.errors import CapTooLarge
from quadflat.flat_geometry import Direction, triangulation

log = logging.getLogger(__name__)

#: Maximum number of developed triangles for one enumeration.
DEFAULT_WORK_BUDGET = 10**7


class SaddleConnection(object):
    """A straight segment joining two cone points.

    :ivar source: Outgoing position at the start.
    :vartype source: quadflat.flat_geometry.ConePosition
    :ivar target: Position at the end, pointing back along the segment.
    :vartype target: quadflat.flat_geometry.ConePosition
    :ivar holonomy: Exact displacement vector in polygon coordinates.
    :ivar length2: Exact squared length, scale factor included.
    :vartype length2: Fraction
    :ivar direction: Canonical direction of the holonomy.
    :ivar corner: Triangle corner the segment leaves from.
    :ivar crossings: Triangle sides crossed, as (triangle, side).
    """
    def __init__(self, source, target, holonomy, length2, corner, crossings):
        self.source = source
        self.target = target
        self.holonomy = holonomy
        self.length2 = length2
        self.direction = Direction(holonomy).canonical()
        self.corner = corner
        self.crossings = crossings

    @property
    def length(self):
        return math.sqrt(self.length2)

    @property
    def src(self):
        return self.source.vertex

    @property
    def dst(self):
        return self.target.vertex

    def sort_key(self):
        return (self.length2, self.holonomy)

    def __eq__(self, other):
        return isinstance(other, SaddleConnection) and \
            {self.source, self.target} == {other.source, other.target} and \
            self.length2 == other.length2

    def __hash__(self):
        return hash((frozenset((self.source, self.target)), self.length2))

    def __str__(self):
        return "saddle connection {} -> {} holonomy ({}, {}) length {:.12g}".format(
            self.src, self.dst, *(geometry.rational_str(c) for c in self.holonomy),
            self.length)

    @staticmethod
    def _pretty_properties():
        return [
            (geometry.rational_str, 'length2'),
        ]


def _canonical(v):
    return v[1] > 0 or (v[1] == 0 and v[0] > 0)


class _Wedge(object):
    __slots__ = ('right', 'left', 'crossing', 'frame', 'path')

    def __init__(self, right, left, crossing, frame, path):
        self.right = right
        self.left = left
        self.crossing = crossing
        self.frame = frame
        self.path = path


def _search_corner(tri, corner, bound2, budget):
    """All saddle connections of squared polygon length at most ``bound2``
    leaving a triangle corner, found with canonical holonomy."""
    t, j = corner
    triangle = tri.triangles[t]
    origin = triangle.point(j)
    found = []

    def report(v, frame, end_corner, path):
        if not _canonical(v) or geometry.norm2(v) > bound2:
            return
        source = tri.position(corner, v)
        target = tri.position(end_corner, frame.inverse().linear(geometry.neg(v)))
        found.append(SaddleConnection(source, target, v, tri.surface.scale2 * geometry.norm2(v),
                                      corner, list(path)))

    side = triangle.side_vector(j)
    report(side, geometry.Isometry(), (t, (j + 1) % 3), [])
    queue = collections.deque([_Wedge(side, tri.corner_end(corner), (t, (j + 1) % 3),
                                      geometry.Isometry(), [])])
    developed = 0
    while queue:
        wedge = queue.popleft()
        t, k = wedge.crossing
        here = tri.triangles[t]
        a, b = wedge.frame(here.point(k)), wedge.frame(here.point(k + 1))
        closest = geometry.segment_distance2(origin, a, b)
        if closest > bound2:
            continue
        developed += 1
        if developed > budget:
            raise CapTooLarge("saddle connection search exceeded {} triangles".format(budget))
        other_t, other_k, iso = tri.neighbors[t][k]
        frame = wedge.frame.compose(iso.inverse())
        path = wedge.path + [(t, k)]
        far = tri.triangles[other_t]
        opposite = frame(far.point(other_k + 2))
        v = geometry.sub(opposite, origin)
        right_of_left = geometry.cross(v, wedge.left) > 0
        left_of_right = geometry.cross(wedge.right, v) > 0
        if right_of_left and left_of_right:
            report(v, frame, (other_t, (other_k + 2) % 3), path)
            queue.append(_Wedge(wedge.right, v, (other_t, (other_k + 1) % 3), frame, path))
            queue.append(_Wedge(v, wedge.left, (other_t, (other_k + 2) % 3), frame, path))
        elif not right_of_left:
            queue.append(_Wedge(wedge.right, wedge.left, (other_t, (other_k + 1) % 3),
                                frame, path))
        else:
            queue.append(_Wedge(wedge.right, wedge.left, (other_t, (other_k + 2) % 3),
                                frame, path))
    return found, developed


def saddle_connections(surface, bound, budget=DEFAULT_WORK_BUDGET, threads=1):
    """Enumerate the saddle connections of length at most ``bound``.

    Every unoriented connection is reported once, oriented so that its
    holonomy is the canonical representative of its direction.

    :param surface: A valid closed surface.
    :param bound: Length bound L.
    :param budget: Maximum number of developed triangles.
    :param threads: Number of worker threads.
    :returns: Connections sorted by squared length, then holonomy.
    :rtype: list(SaddleConnection)
    :raises InvalidSurface: If the surface does not validate.
    :raises CapTooLarge: If the work budget is exceeded.

    Example::

        >>> [str(sc.direction) for sc in saddle_connections(corpus('torus'), 1.5)]
        ['(0, 1)', '(1, 0)', '(-1, 1)', '(1, 1)']
    """
    tri = triangulation(surface)
    if bound <= 0:
        return []
    bound2 = Fraction(bound) ** 2 / surface.scale2
    corners = [(t, j) for t in range(len(tri.triangles)) for j in range(3)]
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as executor:
            results = list(executor.map(
                lambda corner: _search_corner(tri, corner, bound2, budget), corners))
    else:
        results = [_search_corner(tri, corner, bound2, budget) for corner in corners]
    developed = sum(count for _, count in results)
    if developed > budget:
        raise CapTooLarge("saddle connection search exceeded {} triangles".format(budget))
    unique = {}
    for found, _ in results:
        for connection in found:
            key = (connection.source, connection.target)
            if key not in unique:
                unique[key] = connection
    connections = sorted(unique.values(), key=SaddleConnection.sort_key)
    log.info("%d saddle connections up to length %s on %s, %d triangles developed",
             len(connections), bound, surface.name, developed)
    return connections
