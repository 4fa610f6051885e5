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
Developing map primitives.

Internally every polygon of a surface is cut into triangles by exact ear
clipping; a :class:`Triangulation` keeps the triangles, how their sides are
glued, and the cyclic order of triangle corners around each point of the
surface. On top of that this module provides

* :class:`Direction`, a direction modulo π,
* :func:`trace_ray`, which follows a straight line across gluings,
* :func:`develop`, which lays out the polygons met by a curve word in the
  plane,
* :func:`funnel`, the shortest path through a chain of portals.

All decisions about which edge a ray crosses are made in exact rational
arithmetic. Floating point is only used for reported lengths and angles.
"""

import logging
import math
from fractions import Fraction

import networkx as nx

from quadflat import geometry
from quadflat.errors import (
    AmbiguousStart, CapTooLarge, IncoherentWord, InvalidSurface,
)
from quadflat.surface_model import require_valid, vertex_classes

log = logging.getLogger(__name__)

#: Rays reaching a marked point (cone angle 2π) continue straight through it.
MARKED_POINT_CONTINUE = True
#: Maximum number of triangles a single trace may visit.
TRACE_STEP_LIMIT = 10**6


class Direction(object):
    """A direction in the plane, identified with its opposite.

    :ivar vector: The vector as given, orientation kept for rays.
    :vartype vector: tuple(Fraction, Fraction)

    The canonical representative has dy > 0, or dy = 0 and dx > 0.
    """
    def __init__(self, dx, dy=None):
        if dy is None:
            dx, dy = dx
        self.vector = (Fraction(dx), Fraction(dy))
        if self.vector == (0, 0):
            raise ValueError("direction needs a nonzero vector")

    def canonical(self):
        """
        :returns: Canonical primitive representative.
        :rtype: Direction
        """
        dx, dy = self.vector
        if dy < 0 or (dy == 0 and dx < 0):
            dx, dy = -dx, -dy
        if dx.denominator == 1 and dy.denominator == 1:
            g = math.gcd(dx.numerator, dy.numerator)
            dx, dy = dx / g, dy / g
        return Direction(dx, dy)

    @property
    def theta(self):
        """Angle of the canonical representative, in [0, π)."""
        dx, dy = self.canonical().vector
        return math.atan2(dy, dx)

    def _key(self):
        dx, dy = self.canonical().vector
        # scale free identity for rational vectors
        if dx != 0:
            return (Fraction(1), dy / dx)
        return (Fraction(0), Fraction(1))

    def __eq__(self, other):
        return isinstance(other, Direction) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __lt__(self, other):
        return self.canonical().vector < other.canonical().vector

    def __repr__(self):
        return "Direction({}, {})".format(*(geometry.rational_str(c) for c in self.vector))

    def __str__(self):
        return "({}, {})".format(*(geometry.rational_str(c) for c in self.canonical().vector))


class Triangle(object):
    """One triangle of a triangulated polygon, in the polygon's frame.

    :ivar int index: Triangle number.
    :ivar int polygon: Polygon this triangle belongs to.
    :ivar corners: Polygon vertex indices, counterclockwise.
    :ivar points: Coordinates of the corners.
    """
    def __init__(self, index, polygon, corners, points):
        self.index = index
        self.polygon = polygon
        self.corners = tuple(corners)
        self.points = tuple(points)

    def point(self, j):
        return self.points[j % 3]

    def side_vector(self, k):
        return geometry.sub(self.point(k + 1), self.point(k))

    def __repr__(self):
        return "Triangle({}, polygon {}, corners {})".format(
            self.index, self.polygon, self.corners)


def _ear_clip(points):
    """Triangulate a simple counterclockwise polygon.

    :returns: Triples of vertex indices, counterclockwise.
    """
    remaining = list(range(len(points)))
    triangles = []
    while len(remaining) > 3:
        n = len(remaining)
        for i in range(n):
            prev, here, nxt = remaining[i - 1], remaining[i], remaining[(i + 1) % n]
            a, b, c = points[prev], points[here], points[nxt]
            if geometry.orientation(a, b, c) <= 0:
                continue
            blocked = False
            for other in remaining:
                if other in (prev, here, nxt):
                    continue
                p = points[other]
                if geometry.orientation(a, b, p) >= 0 and geometry.orientation(b, c, p) >= 0 \
                        and geometry.orientation(c, a, p) >= 0:
                    blocked = True
                    break
            if not blocked:
                triangles.append((prev, here, nxt))
                remaining.pop(i)
                break
        else:
            raise Exception("BUG: no ear found in simple polygon")
    triangles.append(tuple(remaining))
    return triangles


class ConePosition(object):
    """A direction leaving a point of the surface.

    :ivar int vertex: Vertex class.
    :ivar int index: Position of the triangle corner in the counterclockwise
        corner cycle of the vertex.
    :ivar vector: Direction in the frame of that corner's triangle.

    Positions are normalized so that a direction along a triangle side
    belongs to the corner for which that side is the starting boundary.
    """
    __slots__ = ('vertex', 'index', 'vector', 'key')

    def __init__(self, vertex, index, vector, key):
        self.vertex = vertex
        self.index = index
        self.vector = vector
        self.key = key

    def __eq__(self, other):
        return isinstance(other, ConePosition) and self.vertex == other.vertex and \
            self.key == other.key

    def __hash__(self):
        return hash((self.vertex, self.key))

    def __repr__(self):
        return "ConePosition(vertex {}, corner {}, ({}, {}))".format(
            self.vertex, self.index, *(geometry.rational_str(c) for c in self.vector))


class ConePoint(object):
    """A point of the surface seen through the triangulation.

    :ivar int vertex: Vertex class.
    :ivar int multiple: Cone angle divided by π.
    :ivar corners: Triangle corners around the point, counterclockwise.
    """
    def __init__(self, vertex, multiple, corners):
        self.vertex = vertex
        self.multiple = multiple
        self.corners = corners

    @property
    def angle(self):
        return self.multiple * math.pi

    @property
    def singular(self):
        return self.multiple != 2

    def __str__(self):
        return "cone point {} of angle {}pi, {} corners".format(
            self.vertex, self.multiple, len(self.corners))


class Triangulation(object):
    """Triangles of all polygons of a surface and their gluings.

    :ivar surface: The surface.
    :ivar triangles: All triangles.
    :vartype triangles: list(Triangle)
    :ivar neighbors: For triangle t and side k, the triple (t', k', isometry)
        of the glued side and the map from t's frame into t''s frame.
    :ivar cycles: For each vertex class the counterclockwise list of
        (triangle, corner) pairs around it.
    :ivar multiples: Cone angle of each vertex class divided by π.
    """
    def __init__(self, surface):
        report = require_valid(surface)
        self.surface = surface
        self.triangles = []
        self._by_polygon = []
        self.edge_side = {}
        side_of = {}
        for p, polygon in enumerate(surface.polygons):
            indices = []
            for corners in _ear_clip(polygon):
                t = len(self.triangles)
                self.triangles.append(Triangle(t, p, corners, [polygon[i] for i in corners]))
                indices.append(t)
                for k in range(3):
                    side_of[(p, corners[k], corners[(k + 1) % 3])] = (t, k)
            self._by_polygon.append(indices)
        self.neighbors = [[None] * 3 for _ in self.triangles]
        self.dual_trees = [nx.Graph() for _ in surface.polygons]
        self._diagonal = {}
        for (p, i, j), (t, k) in side_of.items():
            self.dual_trees[p].add_node(t)
            n = len(surface.polygons[p])
            if j == (i + 1) % n:
                self.edge_side[(p, i)] = (t, k)
            else:
                other = side_of[(p, j, i)]
                self.neighbors[t][k] = (other[0], other[1], geometry.Isometry())
                self.dual_trees[p].add_edge(t, other[0])
                self._diagonal[(t, other[0])] = k
        for (p, e), (t, k) in self.edge_side.items():
            other_p, other_e = surface.partner((p, e))
            other_t, other_k = self.edge_side[(other_p, other_e)]
            self.neighbors[t][k] = (other_t, other_k, surface.gluing_map((p, e)))

        self.multiples = {}
        self.corner_vertex = {}
        polygon_vertex = {}
        for cone_point in report.cone_points:
            self.multiples[cone_point.index] = cone_point.multiple
        for index, corners in enumerate(vertex_classes(surface)):
            for corner in corners:
                polygon_vertex[corner] = index
        for triangle in self.triangles:
            for j in range(3):
                self.corner_vertex[(triangle.index, j)] = \
                    polygon_vertex[(triangle.polygon, triangle.corners[j])]

        self.cycles = {}
        self.corner_index = {}
        seen = set()
        for triangle in self.triangles:
            for j in range(3):
                corner = (triangle.index, j)
                if corner in seen:
                    continue
                cycle = [corner]
                seen.add(corner)
                while True:
                    corner = self.next_ccw(corner)
                    if corner == cycle[0]:
                        break
                    cycle.append(corner)
                    seen.add(corner)
                vertex = self.corner_vertex[cycle[0]]
                self.cycles[vertex] = cycle
                for position, c in enumerate(cycle):
                    self.corner_index[c] = position
        log.debug("triangulated %s into %d triangles", surface.name, len(self.triangles))

    def next_ccw(self, corner):
        """Next corner counterclockwise, across side j - 1 of the triangle."""
        t, j = corner
        other_t, other_k, _ = self.neighbors[t][(j + 2) % 3]
        return (other_t, other_k)

    def prev_ccw(self, corner):
        """Next corner clockwise, across side j of the triangle."""
        t, j = corner
        other_t, other_k, _ = self.neighbors[t][j]
        return (other_t, (other_k + 1) % 3)

    def corner_start(self, corner):
        t, j = corner
        triangle = self.triangles[t]
        return geometry.sub(triangle.point(j + 1), triangle.point(j))

    def corner_end(self, corner):
        t, j = corner
        triangle = self.triangles[t]
        return geometry.sub(triangle.point(j + 2), triangle.point(j))

    def corner_angle(self, corner):
        return geometry.ccw_angle(self.corner_start(corner), self.corner_end(corner))

    def cone_point(self, vertex):
        """
        :rtype: ConePoint
        """
        return ConePoint(vertex, self.multiples[vertex], self.cycles[vertex])

    def cone_angle(self, vertex):
        return self.multiples[vertex] * math.pi

    def is_marked(self, vertex):
        return self.multiples[vertex] == 2

    def enter(self, t, x, d):
        """Move a point on a side of t into the neighbor when the direction
        points out of t.

        :returns: (triangle, point, direction) in the frame of the triangle
            the ray runs into.
        """
        triangle = self.triangles[t]
        for k in range(3):
            if geometry.on_segment(x, triangle.point(k), triangle.point(k + 1)) and \
                    geometry.cross(triangle.side_vector(k), d) < 0:
                other_t, _, iso = self.neighbors[t][k]
                return other_t, iso(x), iso.linear(d)
        return t, x, d

    def triangles_of_polygon(self, polygon):
        return self._by_polygon[polygon]

    def position(self, corner, vector):
        """Normalized :class:`ConePosition` of a direction leaving a corner.

        ``vector`` must point into the closed corner.
        """
        end = self.corner_end(corner)
        if geometry.cross(vector, end) == 0 and geometry.dot(vector, end) > 0:
            t, j = corner
            _, _, iso = self.neighbors[t][(j + 2) % 3]
            vector = iso.linear(vector)
            corner = self.next_ccw(corner)
        vertex = self.corner_vertex[corner]
        index = self.corner_index[corner]
        key = (index, geometry.pseudo_angle(self.corner_start(corner), vector))
        return ConePosition(vertex, index, vector, key)

    def in_ccw_arc(self, position, start, end):
        """True if position lies strictly inside the counterclockwise arc
        from start to end."""
        a, b, p = start.key, end.key, position.key
        if p == a or p == b:
            return False
        if a < b:
            return a < p < b
        return p > a or p < b

    def corner_containing(self, corner, vector):
        """Walk counterclockwise from ``corner`` until a corner contains the
        direction with the half open rule.

        :returns: ((t, j), vector in t's frame, True if the vector lies on
            the starting boundary of the corner)
        """
        vertex = self.corner_vertex[corner]
        for _ in range(len(self.cycles[vertex])):
            start = self.corner_start(corner)
            if geometry.in_sector(vector, start, self.corner_end(corner)):
                on_boundary = geometry.cross(start, vector) == 0
                return corner, vector, on_boundary
            t, j = corner
            _, _, iso = self.neighbors[t][(j + 2) % 3]
            vector = iso.linear(vector)
            corner = self.next_ccw(corner)
        return None

    def locate(self, polygon, point):
        """Triangles of a polygon whose closed region contains a point.

        :returns: List of (triangle, kind, index) with kind 'interior',
            'side' or 'corner'.
        """
        found = []
        for t in self._by_polygon[polygon]:
            triangle = self.triangles[t]
            signs = [geometry.orientation(triangle.point(k), triangle.point(k + 1), point)
                     for k in range(3)]
            if any(s < 0 for s in signs):
                continue
            zeros = [k for k in range(3) if signs[k] == 0]
            if len(zeros) == 0:
                found.append((t, 'interior', None))
            elif len(zeros) == 1:
                found.append((t, 'side', zeros[0]))
            else:
                corner = [j for j in range(3) if triangle.point(j) == point][0]
                found.append((t, 'corner', corner))
        return found

    def triangle_word(self, crossings):
        """Translate polygon edge crossings into triangle side crossings.

        :param crossings: Sequence of (gluing id, sign).
        :returns: List of (t, k): leave triangle t through side k.
        :raises IncoherentWord: If consecutive crossings are not on a common
            polygon.
        """
        surface = self.surface
        sides = []
        for gluing_id, sign in crossings:
            if not 0 <= gluing_id < len(surface.gluings):
                raise IncoherentWord("unknown edge id {}".format(gluing_id))
            gluing = surface.gluings[gluing_id]
            leave = gluing.source if sign > 0 else gluing.target
            sides.append((leave, gluing.other(leave)))
        result = []
        n = len(sides)
        for i in range(n):
            leave, _ = sides[i]
            _, enter_prev = sides[i - 1]
            if enter_prev[0] != leave[0]:
                raise IncoherentWord("crossing {} leaves polygon {} but the curve is in "
                                     "polygon {}".format(i, leave[0], enter_prev[0]))
            t_in, _ = self.edge_side[enter_prev]
            t_out, k_out = self.edge_side[leave]
            path = nx.shortest_path(self.dual_trees[leave[0]], t_in, t_out)
            for a, b in zip(path, path[1:]):
                result.append((a, self._diagonal[(a, b)]))
            result.append((t_out, k_out))
        return result

    def _is_polygon_side(self, t, k):
        triangle = self.triangles[t]
        n = len(self.surface.polygons[triangle.polygon])
        return triangle.corners[(k + 1) % 3] == (triangle.corners[k] + 1) % n

    def polygon_crossing(self, t, k):
        """The (gluing id, sign) of a triangle side on a polygon edge, or
        None for a diagonal."""
        if not self._is_polygon_side(t, k):
            return None
        triangle = self.triangles[t]
        edge = (triangle.polygon, triangle.corners[k])
        return self.surface.gluing_of(edge)

    def crossing_of(self, t, k):
        """The crossing that undoes crossing (t, k)."""
        other_t, other_k, _ = self.neighbors[t][k]
        return (other_t, other_k)


def triangulation(surface):
    """Cached :class:`Triangulation` of a closed valid surface.

    :raises InvalidSurface: If the surface does not validate or has boundary.
    """
    cached = getattr(surface, '_triangulation', None)
    if cached is None:
        cached = Triangulation(surface)
        surface._triangulation = cached
    return cached


class SurfacePoint(object):
    """A point given in the coordinates of one polygon.

    :ivar int polygon: Polygon index.
    :ivar point: Coordinates in the polygon's frame.
    """
    def __init__(self, polygon, x, y=None):
        if y is None:
            x, y = x
        self.polygon = polygon
        self.point = (Fraction(x), Fraction(y))

    def __repr__(self):
        return "SurfacePoint({}, ({}, {}))".format(
            self.polygon, *(geometry.rational_str(c) for c in self.point))


class CornerStart(object):
    """Start a ray at a polygon vertex, leaving into the interior angle of
    that polygon at the vertex.

    :ivar int polygon: Polygon index.
    :ivar int vertex: Vertex index inside the polygon.
    """
    def __init__(self, polygon, vertex):
        self.polygon = polygon
        self.vertex = vertex

    def __repr__(self):
        return "CornerStart({}, {})".format(self.polygon, self.vertex)


class ConePointHit(object):
    """The ray ended in a singular point.

    :ivar int vertex: Vertex class reached.
    :ivar ConePosition position: Arrival position, pointing back along the ray.
    :ivar float length: Length travelled.
    """
    def __init__(self, vertex, position, length):
        self.vertex = vertex
        self.position = position
        self.length = length

    def __str__(self):
        return "cone point {} after {:.12g}".format(self.vertex, self.length)


class LengthCap(object):
    """The ray was cut at the length cap."""
    def __init__(self, length):
        self.length = length

    def __str__(self):
        return "length cap {:.12g}".format(self.length)


class Periodic(object):
    """The ray returned to its start with its start direction."""
    def __init__(self, length):
        self.length = length

    def __str__(self):
        return "periodic, length {:.12g}".format(self.length)


class Stopped(object):
    """A caller supplied stop test fired."""
    def __init__(self, length, point):
        self.length = length
        self.point = point

    def __str__(self):
        return "stopped after {:.12g}".format(self.length)


class Passage(object):
    """The ray went straight through a marked point.

    :ivar int piece: Index of the first piece after the passage.
    :ivar int vertex: Vertex class.
    :ivar ConePosition arrival: Direction back along the incoming ray.
    :ivar ConePosition departure: Direction of the outgoing ray.
    :ivar bool left_resolved: The outgoing ray runs along a triangle side
        and the side to its left was chosen.
    """
    def __init__(self, piece, vertex, arrival, departure, left_resolved):
        self.piece = piece
        self.vertex = vertex
        self.arrival = arrival
        self.departure = departure
        self.left_resolved = left_resolved


class TraceSegment(object):
    """Part of a trace inside one polygon.

    :ivar int polygon: Polygon index.
    :ivar entry: Entry point in the polygon frame.
    :ivar exit: Exit point in the polygon frame.
    """
    def __init__(self, polygon, entry, exit):
        self.polygon = polygon
        self.entry = entry
        self.exit = exit

    def __repr__(self):
        return "TraceSegment({}, ({}, {}) -> ({}, {}))".format(
            self.polygon, *(geometry.rational_str(c) for c in self.entry + self.exit))


class Trace(object):
    """Result of following a straight ray.

    :ivar pieces: (triangle, start, end) for every triangle visited.
    :ivar crossings: (triangle, side) for every side crossed.
    :ivar exits: For every piece but the last, the side it leaves through,
        or None when it ends in a marked point.
    :ivar passages: Marked points the ray went through.
    :vartype passages: list(Passage)
    :ivar event: What ended the trace, one of :class:`ConePointHit`,
        :class:`LengthCap`, :class:`Periodic` or :class:`Stopped`.
    """
    def __init__(self, triangulation, start, direction, corner):
        self.triangulation = triangulation
        self.start = (start[0], start[1], direction, corner)
        self.pieces = []
        self.crossings = []
        self.exits = []
        self.passages = []
        self.event = None

    @property
    def length(self):
        return self.event.length

    @property
    def direction(self):
        return self.start[2]

    @property
    def segments(self):
        """Pieces merged per polygon.

        :rtype: list(TraceSegment)
        """
        tri = self.triangulation
        segments = []
        joined = False
        for number, (t, start, end) in enumerate(self.pieces):
            polygon = tri.triangles[t].polygon
            if joined and segments and segments[-1].polygon == polygon:
                segments[-1].exit = end
            else:
                segments.append(TraceSegment(polygon, start, end))
            joined = number < len(self.exits) and self.exits[number] is not None and \
                tri.polygon_crossing(t, self.exits[number]) is None
        return segments

    @property
    def word(self):
        """Polygon edge crossings as (gluing id, sign)."""
        tri = self.triangulation
        word = []
        for t, k in self.crossings:
            crossing = tri.polygon_crossing(t, k)
            if crossing is not None:
                word.append(crossing)
        return word

    def end_point(self):
        t, start, end = self.pieces[-1]
        return t, end

    def __str__(self):
        return "trace of {} pieces, {}".format(len(self.pieces), self.event)


def walk(tri, t, x, d, corner=None, cap=float('inf'), stop=None,
         continue_marked=MARKED_POINT_CONTINUE):
    """Follow a ray through the triangulation.

    :param t: Start triangle.
    :param x: Start point in t's frame, in the interior of t, on a side of t
        with ``d`` pointing into t, or the vertex ``corner`` of t.
    :param d: Direction vector in t's frame.
    :param corner: Corner index when starting at a vertex. ``d`` must then
        lie in the half open sector of that corner.
    :param cap: Maximum length.
    :param stop: Optional callable ``stop(t, x, d, limit)`` returning a ray
        parameter in (0, limit] where the ray must stop, or None.
    :param continue_marked: Go straight through marked points.
    :rtype: Trace
    :raises CapTooLarge: If more than :data:`TRACE_STEP_LIMIT` triangles are
        visited.
    """
    trace = Trace(tri, (t, x), d, corner)
    unit = math.sqrt(tri.surface.scale2) * geometry.length(d)
    first = (t, x, d, corner)
    travelled = 0.0
    for step in range(TRACE_STEP_LIMIT):
        if step > 0 and (t, x, d, corner) == first:
            trace.event = Periodic(travelled)
            return trace
        triangle = tri.triangles[t]
        hit = None
        if corner is not None:
            if geometry.cross(triangle.side_vector(corner), d) == 0:
                hit = (corner + 1) % 3
            else:
                side = (corner + 1) % 3
        else:
            signs = [geometry.cross(d, geometry.sub(triangle.point(i), x)) for i in range(3)]
            for i in range(3):
                if signs[i] == 0 and geometry.dot(geometry.sub(triangle.point(i), x), d) > 0:
                    hit = i
            if hit is None:
                sides = [i for i in range(3) if signs[i] < 0 and signs[(i + 1) % 3] > 0]
                if len(sides) != 1:
                    raise Exception("BUG: ray leaves triangle {} through {} sides".format(
                        t, len(sides)))
                side = sides[0]
        if hit is not None:
            limit = geometry.dot(geometry.sub(triangle.point(hit), x), d) / geometry.norm2(d)
        else:
            limit = geometry.line_parameters(x, d, triangle.point(side),
                                             triangle.side_vector(side))[0]

        if step > 0 or corner is None:
            offset = geometry.sub(first[1], x)
            if t == first[0] and d == first[2] and geometry.cross(d, offset) == 0:
                back = geometry.dot(offset, d) / geometry.norm2(d)
                if 0 < back <= limit:
                    trace.pieces.append((t, x, first[1]))
                    trace.event = Periodic(travelled + float(back) * unit)
                    return trace
        if stop is not None:
            halt = stop(t, x, d, limit)
            if halt is not None:
                end = geometry.add(x, geometry.scale(d, halt))
                trace.pieces.append((t, x, end))
                trace.event = Stopped(travelled + float(halt) * unit, (t, end))
                return trace
        if travelled + float(limit) * unit > cap:
            part = Fraction((cap - travelled) / unit)
            trace.pieces.append((t, x, geometry.add(x, geometry.scale(d, part))))
            trace.event = LengthCap(cap)
            return trace
        end = geometry.add(x, geometry.scale(d, limit))
        trace.pieces.append((t, x, end))
        travelled += float(limit) * unit

        if hit is not None:
            vertex = tri.corner_vertex[(t, hit)]
            arrival = tri.position((t, hit), geometry.neg(d))
            if not (continue_marked and tri.is_marked(vertex)):
                trace.event = ConePointHit(vertex, arrival, travelled)
                return trace
            found = tri.corner_containing((t, hit), d)
            if found is None:
                raise Exception("BUG: no straight continuation at marked point {}".format(vertex))
            trace.exits.append(None)
            (t, corner), d, on_boundary = found
            departure = tri.position((t, corner), d)
            trace.passages.append(Passage(len(trace.pieces), vertex, arrival, departure,
                                          on_boundary))
            x = tri.triangles[t].point(corner)
            continue
        other_t, other_k, iso = tri.neighbors[t][side]
        trace.crossings.append((t, side))
        trace.exits.append(side)
        t, x, d, corner = other_t, iso(end), iso.linear(d), None
    raise CapTooLarge("ray visited more than {} triangles".format(TRACE_STEP_LIMIT))


def _start_state(tri, start, d):
    if isinstance(start, CornerStart):
        for t in tri.triangles_of_polygon(start.polygon):
            triangle = tri.triangles[t]
            for j in range(3):
                if triangle.corners[j] != start.vertex:
                    continue
                if geometry.in_sector(d, tri.corner_start((t, j)), tri.corner_end((t, j))):
                    return t, triangle.point(j), d, j
        raise AmbiguousStart("direction does not leave polygon {} at vertex {}".format(
            start.polygon, start.vertex))
    if not 0 <= start.polygon < len(tri.surface.polygons):
        raise AmbiguousStart("no polygon {}".format(start.polygon))
    found = tri.locate(start.polygon, start.point)
    if not found:
        raise AmbiguousStart("{} is outside its polygon".format(start))
    for t, kind, index in found:
        if kind == 'corner':
            raise AmbiguousStart("{} is a vertex, give a corner sector".format(start))
        if kind == 'interior':
            return t, start.point, d, None
    for t, kind, k in found:
        along = geometry.cross(tri.triangles[t].side_vector(k), d)
        if along == 0:
            raise AmbiguousStart("ray from {} runs along an edge".format(start))
        if along > 0:
            return t, start.point, d, None
    t, _, k = found[0]
    other_t, _, iso = tri.neighbors[t][k]
    return other_t, iso(start.point), iso.linear(d), None


def trace_ray(surface, start, direction, length_cap, continue_marked=MARKED_POINT_CONTINUE):
    """Follow a straight ray from a point of the surface.

    :param start: :class:`SurfacePoint` or :class:`CornerStart`.
    :param direction: :class:`Direction` or vector, orientation is used as
        given.
    :param length_cap: Maximum length of the ray.
    :returns: The trace; ``trace.segments`` lists the polygon pieces and
        ``trace.event`` tells why it ended.
    :rtype: Trace
    :raises AmbiguousStart: If the start is a vertex without a sector, or
        the ray runs along an edge.

    Example::

        >>> trace = trace_ray(torus, SurfacePoint(0, (0, '1/2')), Direction(1, 0), 10)
        >>> print(trace.event)
        periodic, length 1
    """
    if not isinstance(direction, Direction):
        direction = Direction(direction)
    tri = triangulation(surface)
    t, x, d, corner = _start_state(tri, start, direction.vector)
    trace = walk(tri, t, x, d, corner, length_cap, continue_marked=continue_marked)
    log.debug("traced %s from %r: %s", direction, start, trace.event)
    return trace


class Sleeve(object):
    """Copies of polygons laid out in the plane along a curve word.

    :ivar placed: (polygon index, isometry) for each copy, the isometry maps
        polygon coordinates into the plane. The first copy is placed by the
        identity.
    :ivar holonomy: Isometry from the first copy to the copy reached after
        the whole word.
    :vartype holonomy: quadflat.geometry.Isometry
    """
    def __init__(self, placed, holonomy):
        self.placed = placed
        self.holonomy = holonomy

    def __str__(self):
        return "sleeve of {} copies, holonomy {}".format(len(self.placed), self.holonomy)


def develop(surface, crossings):
    """Lay out the polygons a closed edge word passes through.

    :param crossings: Sequence of (gluing id, sign). Sign 1 means leaving
        through the gluing's source edge, -1 through its target edge.
    :rtype: Sleeve
    :raises IncoherentWord: If a crossing leaves a polygon the curve is not
        in, or the word does not close up.

    Example::

        >>> develop(torus, [(1, 1)]).holonomy
        Isometry(1, (1, 0))
    """
    crossings = list(getattr(crossings, 'crossings', crossings))
    if not crossings:
        raise IncoherentWord("empty word")
    require_valid(surface)
    placed = []
    frame = geometry.Isometry()
    current = None
    for number, (gluing_id, sign) in enumerate(crossings):
        if not 0 <= gluing_id < len(surface.gluings):
            raise IncoherentWord("unknown edge id {}".format(gluing_id))
        gluing = surface.gluings[gluing_id]
        leave = gluing.source if sign > 0 else gluing.target
        if current is None:
            current = leave[0]
            placed.append((current, frame))
        elif leave[0] != current:
            raise IncoherentWord("crossing {} leaves polygon {} but the curve is in "
                                 "polygon {}".format(number, leave[0], current))
        frame = frame.compose(surface.gluing_map(leave).inverse())
        current = gluing.other(leave)[0]
        placed.append((current, frame))
    if current != placed[0][0]:
        raise IncoherentWord("word ends in polygon {} but starts in polygon {}".format(
            current, placed[0][0]))
    return Sleeve(placed, frame)


class Portal(object):
    """A triangle side crossed by a developed curve.

    :ivar int index: Position in the developed sequence.
    :ivar crossing: (triangle, side) crossed.
    :ivar left: Plane position of the side endpoint on the left of the curve.
    :ivar right: Plane position of the endpoint on the right.
    :ivar frame: Isometry placing the triangle being left.
    """
    def __init__(self, index, crossing, left, right, frame):
        self.index = index
        self.crossing = crossing
        self.left = left
        self.right = right
        self.frame = frame

    def left_corner(self):
        t, k = self.crossing
        return (t, (k + 1) % 3)

    def right_corner(self):
        return self.crossing


def unfold(tri, crossings, repeat=1):
    """Develop a triangle word, repeated, into a chain of portals.

    :param crossings: Sequence of (triangle, side).
    :returns: (portals, holonomy of one period)
    """
    crossings = list(crossings)
    portals = []
    frame = geometry.Isometry()
    holonomy = None
    for number in range(len(crossings) * repeat):
        t, k = crossings[number % len(crossings)]
        if number == len(crossings):
            holonomy = frame
        triangle = tri.triangles[t]
        portals.append(Portal(number, (t, k), frame(triangle.point(k + 1)),
                              frame(triangle.point(k)), frame))
        frame = frame.compose(tri.neighbors[t][k][2].inverse())
    if holonomy is None:
        holonomy = frame
    return portals, holonomy


def funnel(portals, start, end):
    """Shortest path from start to end through a chain of portals.

    :param portals: Sequence of (left, right) plane points, left and right
        as seen walking from start to end.
    :returns: Path vertices as (point, portal number, side) where side is
        'L' or 'R' for a bend at a portal endpoint and None at start or end.
    :rtype: list(tuple)
    """
    chain = [(start, start)] + [tuple(portal) for portal in portals] + [(end, end)]
    path = [(start, None, None)]
    apex = left = right = start
    apex_index = left_index = right_index = 0
    apex_side = None
    i = 1
    while i < len(chain):
        new_left, new_right = chain[i]
        # portals fanning around the bend vertex do not move the apex
        if left == right == apex and \
                ((apex_side == 'L' and new_left == apex) or (apex_side == 'R' and new_right == apex)):
            left = right = apex
            left_index = right_index = i
            i += 1
            continue
        if geometry.cross(geometry.sub(right, apex), geometry.sub(new_right, apex)) >= 0:
            if apex == right or \
                    geometry.cross(geometry.sub(left, apex), geometry.sub(new_right, apex)) < 0:
                right, right_index = new_right, i
            elif left_index == len(chain) - 1:
                break
            else:
                apex, apex_index, apex_side = left, left_index, 'L'
                if path[-1][0] != apex:
                    path.append((apex, apex_index - 1, 'L'))
                left = right = apex
                left_index = right_index = apex_index
                i = apex_index + 1
                continue
        if geometry.cross(geometry.sub(left, apex), geometry.sub(new_left, apex)) <= 0:
            if apex == left or \
                    geometry.cross(geometry.sub(right, apex), geometry.sub(new_left, apex)) > 0:
                left, left_index = new_left, i
            elif right_index == len(chain) - 1:
                break
            else:
                apex, apex_index, apex_side = right, right_index, 'R'
                if path[-1][0] != apex:
                    path.append((apex, apex_index - 1, 'R'))
                left = right = apex
                left_index = right_index = apex_index
                i = apex_index + 1
                continue
        i += 1
    path.append((end, None, None))
    return path
