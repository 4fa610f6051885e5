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
Closed curves on a half-translation surface.

A curve is given combinatorially as a :class:`CurveWord`, the cyclic list of
polygon edges it crosses. :func:`tighten` pulls it straight into a flat
geodesic: a closed straight line, or a chain of saddle connections meeting
at cone points with an angle of at least π on both sides. Intersection
numbers and Dehn twists are computed on these geodesic representatives.

The text form of a word is a comma separated list of signed edge ids, for
example ``+1,-0``. Edge id k is the k-th gluing of the surface. A plus sign
means the curve crosses from the polygon of the gluing's source edge, which
is listed first, into the polygon of its target edge.
"""

import logging
import math
import re
from fractions import Fraction

from quadflat import geometry
from quadflat.errors import (
    ContractibleCurve, DegenerateConfiguration, DisjointCurves, IncoherentWord, NotFound,
    NotSimple,
)
from quadflat.flat_geometry import (
    ConePointHit, Direction, Periodic, develop, funnel, triangulation, unfold, walk,
)
from quadflat.surface_model import ANGLE_TOLERANCE

log = logging.getLogger(__name__)

#: Number of periods developed for the first shortest path attempt.
DEFAULT_PERIODS = 3
#: Give up doubling the number of developed periods beyond this.
MAX_PERIODS = 96
#: Maximum number of times a path is moved across a cone point.
MAX_REROUTES = 500

_TOKEN = re.compile(r'^([+-])(\d+)$')


class CurveWord(object):
    """Cyclic word of polygon edge crossings.

    :ivar crossings: (gluing id, sign) pairs. Sign 1 leaves through the
        gluing's source edge, -1 through its target edge.
    :vartype crossings: tuple(tuple(int, int))
    :ivar bool oriented: Whether comparisons keep the orientation.

    Example::

        >>> w = CurveWord.parse('+1,-0')
        >>> w.inverse().format()
        '+0,-1'
    """
    def __init__(self, crossings=(), oriented=False):
        self.crossings = tuple((int(g), 1 if s > 0 else -1) for g, s in crossings)
        self.oriented = oriented

    @staticmethod
    def parse(text):
        """Read a word like ``+3,-7,+2``.

        :raises ValueError: On a malformed token.
        """
        crossings = []
        for token in text.split(','):
            token = token.strip()
            if token == '':
                continue
            match = _TOKEN.match(token)
            if match is None:
                raise ValueError("invalid crossing {!r} in word {!r}, expected +k or -k".format(
                    token, text))
            sign, gluing_id = match.groups()
            crossings.append((int(gluing_id), 1 if sign == '+' else -1))
        return CurveWord(crossings)

    def format(self):
        return ','.join("{}{}".format('+' if s > 0 else '-', g) for g, s in self.crossings)

    def inverse(self):
        return CurveWord([(g, -s) for g, s in reversed(self.crossings)], self.oriented)

    def reduced(self):
        """Remove crossings immediately undone by the next one, cyclically."""
        stack = []
        for crossing in self.crossings:
            if stack and stack[-1] == (crossing[0], -crossing[1]):
                stack.pop()
            else:
                stack.append(crossing)
        start, end = 0, len(stack)
        while end - start >= 2 and stack[start] == (stack[end - 1][0], -stack[end - 1][1]):
            start += 1
            end -= 1
        return CurveWord(stack[start:end], self.oriented)

    def canonical(self):
        """Smallest rotation of the reduced word, and of its inverse unless
        the word is oriented."""
        word = self.reduced()
        candidates = [word.crossings]
        if not self.oriented:
            candidates.append(word.inverse().crossings)
        best = None
        for crossings in candidates:
            for i in range(max(1, len(crossings))):
                rotation = crossings[i:] + crossings[:i]
                if best is None or rotation < best:
                    best = rotation
        return CurveWord(best, self.oriented)

    def __mul__(self, other):
        return CurveWord(self.crossings + tuple(other.crossings), self.oriented)

    def __pow__(self, n):
        base = self if n >= 0 else self.inverse()
        return CurveWord(base.crossings * abs(n), self.oriented)

    def __len__(self):
        return len(self.crossings)

    def __iter__(self):
        return iter(self.crossings)

    def __eq__(self, other):
        return isinstance(other, CurveWord) and self.crossings == other.crossings

    def __hash__(self):
        return hash(self.crossings)

    def __repr__(self):
        return "CurveWord({!r})".format(self.format())

    def __str__(self):
        return self.format()


def as_word(word):
    if isinstance(word, CurveWord):
        return word
    if isinstance(word, str):
        return CurveWord.parse(word)
    return CurveWord(word)


def reduce_triangle_word(tri, crossings):
    """Cyclic free reduction of a list of (triangle, side) crossings."""
    stack = []
    for crossing in crossings:
        if stack and tri.crossing_of(*stack[-1]) == crossing:
            stack.pop()
        else:
            stack.append(crossing)
    start, end = 0, len(stack)
    while end - start >= 2 and tri.crossing_of(*stack[end - 1]) == stack[start]:
        start += 1
        end -= 1
    return stack[start:end]


def invert_triangle_word(tri, crossings):
    return [tri.crossing_of(*crossing) for crossing in reversed(crossings)]


def rotation_word(tri, start, end):
    """Crossings met turning counterclockwise from corner start to corner
    end around their common vertex."""
    crossings = []
    corner = start
    for _ in range(len(tri.cycles[tri.corner_vertex[start]]) + 1):
        if corner == end:
            return crossings
        t, j = corner
        crossings.append((t, (j + 2) % 3))
        corner = tri.next_ccw(corner)
    raise Exception("BUG: corners {} and {} are not around one vertex".format(start, end))


def polygon_word(tri, crossings):
    """Polygon edge word of a triangle word."""
    word = []
    for t, k in crossings:
        crossing = tri.polygon_crossing(t, k)
        if crossing is not None:
            word.append(crossing)
    return CurveWord(word).reduced()


def _leaving_corner(tri, polygon, vertex, vector):
    for t in tri.triangles_of_polygon(polygon):
        triangle = tri.triangles[t]
        for j in range(3):
            if triangle.corners[j] != vertex:
                continue
            start, end = tri.corner_start((t, j)), tri.corner_end((t, j))
            on_end = geometry.cross(vector, end) == 0 and geometry.dot(vector, end) > 0
            if on_end or geometry.in_sector(vector, start, end):
                corner, vector, _ = tri.corner_containing((t, j), vector)
                return corner, vector
    raise DegenerateConfiguration("{} does not leave vertex {} of polygon {}".format(
        vector, vertex, polygon))


def saddle_chain_word(surface, links):
    """Word of a closed chain of saddle connections.

    Between two links the chain turns counterclockwise around the cone
    point they share.

    :param links: For every saddle connection, (polygon, vertex, vector):
        it leaves that polygon vertex along vector, which points into the
        closed polygon corner.
    :rtype: CurveWord
    :raises DegenerateConfiguration: If a link does not leave its vertex or
        does not end in a cone point.
    """
    tri = triangulation(surface)
    result = []
    first = arrival = None
    for polygon, vertex, vector in links:
        corner, d = _leaving_corner(tri, polygon, vertex, vector)
        if arrival is None:
            first = corner
        else:
            result.extend(rotation_word(tri, arrival, corner))
        t, j = corner
        trace = walk(tri, t, tri.triangles[t].point(j), d, corner=j, continue_marked=False)
        if not isinstance(trace.event, ConePointHit):
            raise DegenerateConfiguration("link from vertex {} of polygon {} ends in {}".format(
                vertex, polygon, trace.event))
        result.extend(trace.crossings)
        t, end = trace.end_point()
        triangle = tri.triangles[t]
        arrival = (t, [k for k in range(3) if triangle.point(k) == end][0])
    result.extend(rotation_word(tri, arrival, first))
    return polygon_word(tri, reduce_triangle_word(tri, result))


class Visit(object):
    """A geodesic passing through a cone point.

    :ivar int vertex: Vertex class.
    :ivar arrival: Position pointing back along the incoming segment.
    :ivar departure: Position of the outgoing segment.
    :ivar float left_angle: Angle on the left of the geodesic.
    :ivar float right_angle: Angle on the right of the geodesic.
    :ivar arrival_corner: Triangle corner the incoming segment ends in.
    :ivar departure_corner: Triangle corner the outgoing segment starts in.
    """
    def __init__(self, vertex, arrival, departure, left_angle, right_angle,
                 arrival_corner=None, departure_corner=None):
        self.vertex = vertex
        self.arrival = arrival
        self.departure = departure
        self.left_angle = left_angle
        self.right_angle = right_angle
        self.arrival_corner = arrival_corner
        self.departure_corner = departure_corner
        self.outgoing = None

    def __str__(self):
        return "vertex {} left {:.12g} right {:.12g}".format(
            self.vertex, self.left_angle, self.right_angle)


class GeodesicSegment(object):
    """A straight part of a flat geodesic.

    :ivar vector: Holonomy in the frame of the first triangle.
    :ivar length2: Exact squared length.
    :ivar pieces: (triangle, start, end) pieces.
    :ivar exits: Side crossed after each piece, None after the last piece
        of a saddle connection.
    """
    def __init__(self, vector, length2, pieces, exits):
        self.vector = vector
        self.length2 = length2
        self.pieces = pieces
        self.exits = exits

    @property
    def length(self):
        return math.sqrt(self.length2)


class FlatGeodesic(object):
    """Geodesic representative of a free homotopy class.

    :ivar segments: Straight segments. For a closed straight line there is
        one segment and no visits.
    :vartype segments: list(GeodesicSegment)
    :ivar visits: Cone point passages, visit i is at the start of segment i.
    :vartype visits: list(Visit)
    :ivar word: Reduced edge word of the representative.
    :vartype word: CurveWord
    :ivar bool cylinder_core: No cone point, or only cone points with an
        angle of exactly π on one side.
    """
    def __init__(self, triangulation, segments, visits, word):
        self.triangulation = triangulation
        self.segments = segments
        self.visits = visits
        self.word = word
        self.cylinder_core = all(
            min(v.left_angle, v.right_angle) <= math.pi + ANGLE_TOLERANCE for v in visits)

    @property
    def singular(self):
        return not self.cylinder_core

    @property
    def length(self):
        return math.fsum(segment.length for segment in self.segments)

    def steps(self):
        """The geodesic as a cyclic list of ('turn', visit) and
        ('piece', segment, piece) steps."""
        steps = []
        for i, segment in enumerate(self.segments):
            if self.visits:
                steps.append(('turn', i, None))
            for j in range(len(segment.pieces)):
                steps.append(('piece', i, j))
        return steps

    def step_crossings(self, step):
        kind, i, j = step
        if kind == 'turn':
            visit = self.visits[i]
            return rotation_word(self.triangulation, visit.arrival_corner,
                                 visit.departure_corner)
        exit = self.segments[i].exits[j]
        if exit is None:
            return []
        return [(self.segments[i].pieces[j][0], exit)]

    def triangle_word(self):
        crossings = []
        for step in self.steps():
            crossings.extend(self.step_crossings(step))
        return crossings

    def __str__(self):
        kind = 'cylinder core' if self.cylinder_core else 'singular'
        return "{} geodesic of length {:.12g} through {} cone points".format(
            kind, self.length, len(self.visits))

    @staticmethod
    def _pretty_properties():
        return [
            (str, 'word'),
        ]


class _Bend(object):
    """A bend of the developed shortest path with its fan of portals."""
    def __init__(self, number, point, side, first, last):
        self.number = number
        self.point = point
        self.side = side
        self.first = first
        self.last = last


def _with_collinear(portals, path):
    """Turn a funnel path into (point, portal, side) bends with global portal
    numbers, adding the portal endpoints lying on its straight parts."""
    marked = [(path[0][0], 0, None)] + [(p, i + 1, s) for p, i, s in path[1:-1]] + \
        [(path[-1][0], len(portals), None)]
    result = [marked[0]]
    for (a, first, _), (b, last, side) in zip(marked, marked[1:]):
        extra = {}
        for q in range(first, min(last + 1, len(portals))):
            for point, end in ((portals[q].left, 'L'), (portals[q].right, 'R')):
                if point != a and point != b and point not in extra and \
                        geometry.on_segment(point, a, b):
                    extra[point] = (q, end)
        for point in sorted(extra, key=lambda p: geometry.norm2(geometry.sub(p, a))):
            result.append((point,) + extra[point])
        result.append((b, last, side))
    return result


def _periodic_bends(path, holonomy):
    """Find one period of bends in a developed shortest path.

    :returns: (i, k) with bends i + 1 .. k forming one period, or None.
    """
    bends = path[1:-1]
    for i in range(len(bends)):
        image = holonomy(bends[i][0])
        for k in range(i + 1, len(bends) - 1):
            if bends[k][0] == image and bends[k][2] == bends[i][2] and \
                    holonomy(bends[i + 1][0]) == bends[k + 1][0]:
                return i, k
    return None


def _fan(portals, point, number, side):
    """First and last portal sharing the bend point on its side."""
    def end(q):
        return portals[q].left if side == 'L' else portals[q].right
    first = last = number
    while first > 0 and end(first - 1) == point:
        first -= 1
    while last < len(portals) - 1 and end(last + 1) == point:
        last += 1
    if first == 0 or last == len(portals) - 1:
        return None
    return first, last


def _visit(tri, portals, bend, previous, following):
    """Angles and positions of the path at a bend.

    :returns: (Visit, fan corners)
    """
    V = bend.point
    first = portals[bend.first]
    t, k = first.crossing
    corner = (t, (k + 1) % 3) if bend.side == 'L' else (t, k)
    v_in = first.frame.inverse().linear(geometry.sub(previous, V))
    corners = [corner]
    for _ in range(bend.last - bend.first + 1):
        corner = tri.next_ccw(corner) if bend.side == 'L' else tri.prev_ccw(corner)
        corners.append(corner)
    after = portals[bend.last + 1]
    if after.crossing[0] != corners[-1][0]:
        raise Exception("BUG: fan around vertex {} does not end in triangle {}".format(
            tri.corner_vertex[corners[0]], after.crossing[0]))
    v_out = after.frame.inverse().linear(geometry.sub(following, V))
    middle = math.fsum(tri.corner_angle(c) for c in corners[1:-1])
    if bend.side == 'L':
        fan = geometry.ccw_angle(v_in, tri.corner_end(corners[0])) + middle + \
            geometry.ccw_angle(tri.corner_start(corners[-1]), v_out)
    else:
        fan = geometry.ccw_angle(tri.corner_start(corners[0]), v_in) + middle + \
            geometry.ccw_angle(v_out, tri.corner_end(corners[-1]))
    vertex = tri.corner_vertex[corners[0]]
    other = tri.cone_angle(vertex) - fan
    departure_corner, v_out, _ = tri.corner_containing(corners[-1], v_out)
    left, right = (other, fan) if bend.side == 'L' else (fan, other)
    visit = Visit(vertex, tri.position(corners[0], v_in), tri.position(departure_corner, v_out),
                  left, right, corners[0], departure_corner)
    visit.outgoing = v_out
    return visit, corners


def _reroute(tri, crossings, bend, corners):
    """Move the path to the other side of a bend's cone point."""
    n = len(crossings)
    m = bend.last - bend.first + 1
    if m >= n:
        raise ContractibleCurve("curve only winds around vertex {}".format(
            tri.corner_vertex[corners[0]]))
    rest = [crossings[(bend.last + 1 + i) % n] for i in range(n - m)]
    cycle = len(tri.cycles[tri.corner_vertex[corners[0]]])
    route = []
    corner = corners[0]
    for _ in range((-m) % cycle):
        t, j = corner
        if bend.side == 'L':
            route.append((t, j))
            corner = tri.prev_ccw(corner)
        else:
            route.append((t, (j + 2) % 3))
            corner = tri.next_ccw(corner)
    if corner != corners[-1]:
        raise Exception("BUG: rerouting around vertex {} missed corner {}".format(
            tri.corner_vertex[corner], corners[-1]))
    return reduce_triangle_word(tri, rest + route)


def _starts(portals, holonomy):
    """Points on the first portal to develop the shortest path from.

    Usually just the midpoint. When the straight line through it in the
    direction of a translation holonomy runs into a portal endpoint, the
    middles of the gaps on either side come before it.
    """
    first = portals[0]
    middle = geometry.midpoint(first.left, first.right)
    h = holonomy.shift
    across = geometry.cross(geometry.sub(first.left, first.right), h)
    if holonomy.sign != 1 or across == 0:
        return [middle]
    cuts = {Fraction(0), Fraction(1)}
    for portal in portals:
        for q in (portal.left, portal.right):
            s = Fraction(geometry.cross(geometry.sub(q, first.right), h)) / across
            if 0 < s < 1:
                cuts.add(s)
    half = Fraction(1, 2)
    if half not in cuts:
        return [middle]
    cuts = sorted(cuts)
    i = cuts.index(half)
    w = geometry.sub(first.left, first.right)
    return [geometry.add(first.right, geometry.scale(w, (cuts[i - 1] + half) / 2)),
            geometry.add(first.right, geometry.scale(w, (half + cuts[i + 1]) / 2)),
            middle]


def _straight(tri, portals, start, holonomy, crossings):
    """Closed straight geodesic through a point of the first portal."""
    t, k = portals[0].crossing
    h = holonomy.shift
    cap = math.sqrt(tri.surface.scale2 * geometry.norm2(h)) * (1 + 1e-9) + 1e-9
    t, x, d = tri.enter(t, start, h)
    trace = walk(tri, t, x, d, None, cap, continue_marked=False)
    if not isinstance(trace.event, Periodic):
        raise Exception("BUG: straight path did not close up: {}".format(trace.event))
    segment = GeodesicSegment(h, tri.surface.scale2 * geometry.norm2(h), trace.pieces,
                              trace.exits)
    return FlatGeodesic(tri, [segment], [], polygon_word(tri, trace.crossings))


def _chain(tri, visits):
    """Saddle connections between consecutive visits."""
    segments = []
    for i, visit in enumerate(visits):
        following = visits[(i + 1) % len(visits)]
        t, j = visit.departure_corner
        v = visit.outgoing
        length2 = tri.surface.scale2 * geometry.norm2(v)
        cap = math.sqrt(length2) * (1 + 1e-9) + 1e-9
        trace = walk(tri, t, tri.triangles[t].point(j), v, j, cap, continue_marked=False)
        event = trace.event
        if not isinstance(event, ConePointHit) or event.vertex != following.vertex or \
                abs(event.length - math.sqrt(length2)) > 1e-9 * max(1.0, event.length):
            raise Exception("BUG: segment to vertex {} ended with {}".format(
                following.vertex, event))
        end_t, end = trace.end_point()
        end_j = [c for c in range(3) if tri.triangles[end_t].point(c) == end][0]
        following.arrival_corner = (end_t, end_j)
        exits = list(trace.exits) + [None]
        segments.append(GeodesicSegment(v, length2, trace.pieces, exits))
    return segments


def tighten(surface, word, periods=DEFAULT_PERIODS, tolerance=ANGLE_TOLERANCE):
    """Pull a closed curve tight.

    The word is developed along a few periods, the shortest path between a
    point and its image under the holonomy is found with :func:`funnel`,
    and every cone point where the path has less than π on the far side
    makes the path move across that cone point, until none is left.

    :param word: :class:`CurveWord` or its text form.
    :rtype: FlatGeodesic
    :raises ContractibleCurve: If the word is null homotopic.
    :raises IncoherentWord: If the word is not a closed curve.

    Example::

        >>> tighten(torus, '+1,-0').length
        1.4142135623730951
    """
    word = as_word(word)
    develop(surface, word.crossings)
    tri = triangulation(surface)
    crossings = reduce_triangle_word(tri, tri.triangle_word(word.crossings))
    n_periods = periods
    for rounds in range(MAX_REROUTES):
        if not crossings:
            raise ContractibleCurve("word {} is null homotopic".format(word))
        portals, holonomy = unfold(tri, crossings, n_periods)
        for start in _starts(portals, holonomy):
            end = holonomy.power(n_periods)(start)
            path = _with_collinear(portals, funnel(
                [(p.left, p.right) for p in portals[1:]], start, end))
            if len(path) == 2:
                break
        if len(path) == 2:
            if holonomy.sign == 1:
                if holonomy.is_identity():
                    raise ContractibleCurve("word {} is null homotopic".format(word))
                geodesic = _straight(tri, portals, start, holonomy, crossings)
                log.debug("tightened %s to a straight geodesic in %d rounds", word, rounds + 1)
                return geodesic
            found = None
        else:
            found = _periodic_bends(path, holonomy)
        bends = None
        if found is not None:
            i, k = found
            bends = []
            for number in range(i + 1, k + 2):
                point, index, side = path[number + 1]
                fan = _fan(portals, point, index, side)
                if fan is None:
                    bends = None
                    break
                bends.append(_Bend(number, point, side, *fan))
        if bends is None:
            if n_periods >= MAX_PERIODS:
                raise Exception("BUG: no periodic shortest path for {} in {} periods".format(
                    word, n_periods))
            n_periods *= 2
            continue
        visits = []
        rerouted = False
        for position in range(len(bends) - 1):
            bend = bends[position]
            previous = path[bend.number][0]
            following = path[bend.number + 2][0]
            visit, corners = _visit(tri, portals, bend, previous, following)
            fan = visit.right_angle if bend.side == 'L' else visit.left_angle
            if fan < math.pi - tolerance:
                raise Exception("BUG: funnel bend with angle {!r} below pi".format(fan))
            if min(visit.left_angle, visit.right_angle) < math.pi - tolerance:
                crossings = _reroute(tri, crossings, bend, corners)
                n_periods = periods
                rerouted = True
                break
            visits.append(visit)
        if rerouted:
            continue
        segments = _chain(tri, visits)
        geodesic = FlatGeodesic(tri, segments, visits, polygon_word(tri, crossings))
        _certify(geodesic, tolerance)
        log.debug("tightened %s through %d cone points in %d rounds",
                  word, len(visits), rounds + 1)
        return geodesic
    raise Exception("BUG: tightening {} did not settle in {} rounds".format(word, MAX_REROUTES))


def _certify(geodesic, tolerance):
    for visit in geodesic.visits:
        if min(visit.left_angle, visit.right_angle) < math.pi - tolerance:
            raise Exception("BUG: geodesic fails the angle test at {}".format(visit))


def length(surface, word):
    """Flat length of the geodesic representative of a closed curve.

    :rtype: float
    """
    return tighten(surface, word).length


class Crossing(object):
    """A transverse meeting of beta with alpha.

    :ivar str kind: 'interior', 'cone' or 'chain'.
    :ivar alpha_at: Step of alpha where the crossing is placed.
    :ivar beta_at: Step of beta where the crossing is placed.
    :ivar param: Position along beta's piece, for interior crossings.
    :ivar bool left_to_right: Beta passes from alpha's left to its right.
    """
    def __init__(self, kind, alpha_at, beta_at, param, left_to_right):
        self.kind = kind
        self.alpha_at = alpha_at
        self.beta_at = beta_at
        self.param = param
        self.left_to_right = left_to_right


def _location(tri, t, x):
    """Canonical (triangle, point) for a point, comparing both sides of a
    triangle side."""
    triangle = tri.triangles[t]
    best = (t, x)
    for k in range(3):
        if geometry.on_segment(x, triangle.point(k), triangle.point(k + 1)):
            other_t, _, iso = tri.neighbors[t][k]
            best = min(best, (other_t, iso(x)))
    return best


def _pieces_by_triangle(geodesic):
    found = {}
    for number, step in enumerate(geodesic.steps()):
        kind, i, j = step
        if kind != 'piece':
            continue
        t, a, b = geodesic.segments[i].pieces[j]
        if a != b:
            found.setdefault(t, []).append((a, b, i, number))
    return found


def _interior_crossings(tri, alpha, beta, same):
    crossings = {}
    beta_pieces = _pieces_by_triangle(beta)
    for t, alpha_pieces in _pieces_by_triangle(alpha).items():
        corners = tri.triangles[t].points
        for a0, a1, ai, astep in alpha_pieces:
            u = geometry.sub(a1, a0)
            for b0, b1, bi, bstep in beta_pieces.get(t, []):
                if same and astep == bstep:
                    continue
                w = geometry.sub(b1, b0)
                solution = geometry.line_parameters(a0, u, b0, w)
                if solution is None:
                    continue
                s, r = solution
                if not (0 <= s <= 1 and 0 <= r <= 1):
                    continue
                x = geometry.add(a0, geometry.scale(u, s))
                if x in corners:
                    continue
                key = (ai, bi, _location(tri, t, x), Direction(u))
                if key not in crossings:
                    crossings[key] = Crossing('interior', astep, bstep, r,
                                              geometry.cross(u, w) < 0)
    return list(crossings.values())


def _turn_steps(geodesic):
    return [number for number, step in enumerate(geodesic.steps()) if step[0] == 'turn']


def _chain_crossing(tri, alpha, beta, ia, ib, step):
    """Follow saddle connections shared by alpha and beta from visit ia of
    alpha and ib of beta.

    :returns: None if beta leaves the shared part on the side it came from,
        otherwise whether beta crosses from alpha's left to its right.
    """
    na, nb = len(alpha.visits), len(beta.visits)

    def beta_ends(ib):
        visit = beta.visits[ib % nb]
        if step == 1:
            return visit.arrival, visit.departure
        return visit.departure, visit.arrival

    visit = alpha.visits[ia]
    came_from, _ = beta_ends(ib)
    start_left = tri.in_ccw_arc(came_from, visit.departure, visit.arrival)
    for count in range(1, na * nb + 1):
        visit = alpha.visits[(ia + count) % na]
        b_in, b_out = beta_ends(ib + step * count)
        if visit.arrival != b_in:
            raise DegenerateConfiguration(
                "shared saddle connections part at vertex {}".format(visit.vertex))
        if visit.departure == b_out:
            continue
        end_left = tri.in_ccw_arc(b_out, visit.departure, visit.arrival)
        if end_left == start_left:
            return None
        return start_left if step == 1 else end_left
    return None


def _cone_crossings(tri, alpha, beta, same):
    found = []
    alpha_turns, beta_turns = _turn_steps(alpha), _turn_steps(beta)
    for ia, va in enumerate(alpha.visits):
        for ib, vb in enumerate(beta.visits):
            if va.vertex != vb.vertex or (same and ia == ib):
                continue
            shared = (va.arrival, va.departure)
            if vb.arrival not in shared and vb.departure not in shared:
                left_in = tri.in_ccw_arc(vb.arrival, va.departure, va.arrival)
                left_out = tri.in_ccw_arc(vb.departure, va.departure, va.arrival)
                if left_in != left_out:
                    found.append(Crossing('cone', alpha_turns[ia], beta_turns[ib], None,
                                          left_in))
                continue
            if va.departure == vb.departure and va.arrival != vb.arrival:
                step = 1
            elif va.departure == vb.arrival and va.arrival != vb.departure:
                step = -1
            else:
                continue
            left_to_right = _chain_crossing(tri, alpha, beta, ia, ib, step)
            if left_to_right is not None:
                found.append(Crossing('chain', alpha_turns[ia], beta_turns[ib], None,
                                      left_to_right))
    return found


def crossings(alpha, beta, same=False):
    """Transverse crossings of two tightened curves.

    Where the curves run together along saddle connections, one crossing
    is counted if beta leaves on the other side of alpha than it came from.

    :type alpha: FlatGeodesic
    :type beta: FlatGeodesic
    :param same: Both are the same curve, skip a part meeting itself.
    :rtype: list(Crossing)
    """
    tri = alpha.triangulation
    return _interior_crossings(tri, alpha, beta, same) + _cone_crossings(tri, alpha, beta, same)


def intersection_number(surface, w1, w2):
    """Geometric intersection number of two closed curves.

    Transverse crossings of the geodesic representatives are counted once
    each. Where the two geodesics share a run of saddle connections, the run
    counts as one crossing if the second curve leaves it on the other side
    of the first curve than it came from, and as none otherwise. This is
    the smallest count over pushing the second curve off the shared run.

    :rtype: int
    :raises ContractibleCurve: If one of the words is null homotopic.
    :raises DegenerateConfiguration: If shared saddle connections can not
        be resolved.

    Example::

        >>> intersection_number(torus, '+1', '-0')
        1
    """
    return len(crossings(tighten(surface, w1), tighten(surface, w2)))


def self_intersection_number(surface, word):
    """Number of transverse self crossings of the geodesic representative."""
    geodesic = tighten(surface, word)
    return len(crossings(geodesic, geodesic, same=True)) // 2


def is_simple(surface, word):
    return self_intersection_number(surface, word) == 0


def _rotate(words, start, skip=False):
    """Concatenate per step crossings cyclically from step ``start``."""
    n = len(words)
    result = []
    for i in range(1 if skip else 0, n):
        result.extend(words[(start + i) % n])
    return result


def dehn_twist(surface, beta, alpha, power=1):
    """Twist beta around alpha.

    At every crossing the result turns onto alpha, runs once around it and
    continues along beta. For a positive power it turns to the left, so on
    the square torus twisting (1, 0) around (0, 1) gives (1, 1).

    :returns: Reduced word of the twisted curve.
    :rtype: CurveWord
    :raises NotSimple: If alpha crosses itself.
    :raises DisjointCurves: If alpha and beta do not cross.
    """
    alpha_geodesic = tighten(surface, alpha)
    beta_geodesic = tighten(surface, beta)
    tri = alpha_geodesic.triangulation
    if crossings(alpha_geodesic, alpha_geodesic, same=True):
        raise NotSimple("twisting curve {} is not simple".format(as_word(alpha)))
    found = crossings(alpha_geodesic, beta_geodesic)
    if not found:
        raise DisjointCurves("curves {} and {} do not cross".format(
            as_word(alpha), as_word(beta)))
    if power == 0:
        return beta_geodesic.word
    alpha_steps = alpha_geodesic.steps()
    alpha_words = [alpha_geodesic.step_crossings(step) for step in alpha_steps]
    at_step = {}
    for crossing in found:
        at_step.setdefault(crossing.beta_at, []).append(crossing)

    result = []
    for number, step in enumerate(beta_geodesic.steps()):
        here = sorted(at_step.get(number, []), key=lambda c: c.param or 0)
        if step[0] == 'piece':
            for crossing in here:
                loop = _rotate(alpha_words, crossing.alpha_at)
                if crossing.left_to_right != (power > 0):
                    loop = invert_triangle_word(tri, loop)
                result.extend(loop * abs(power))
            result.extend(beta_geodesic.step_crossings(step))
            continue
        visit = beta_geodesic.visits[step[1]]
        corner = visit.arrival_corner
        for crossing in here:
            around = alpha_geodesic.visits[alpha_steps[crossing.alpha_at][1]]
            loop = _rotate(alpha_words, crossing.alpha_at, skip=True)
            enter, leave = around.departure_corner, around.arrival_corner
            if crossing.left_to_right != (power > 0):
                loop = invert_triangle_word(tri, loop)
                enter, leave = leave, enter
            for _ in range(abs(power)):
                result.extend(rotation_word(tri, corner, enter))
                result.extend(loop)
                corner = leave
        result.extend(rotation_word(tri, corner, visit.departure_corner))

    twisted = polygon_word(tri, reduce_triangle_word(tri, result))
    if len(twisted) == 0:
        raise ContractibleCurve("twisted curve is null homotopic")
    log.debug("twist of %s around %s to the power %d: %s", as_word(beta), as_word(alpha),
              power, twisted)
    return twisted


def twist_length_gap(surface, alpha, beta, power=1):
    """How far the twisted length stays below the naive bound.

    :returns: i(alpha, beta) * l(alpha) - (l(T(beta)) - l(beta)) for the
        twist of beta around alpha.
    :rtype: float
    :raises DisjointCurves: If the curves do not cross.
    """
    alpha_geodesic = tighten(surface, alpha)
    beta_geodesic = tighten(surface, beta)
    count = len(crossings(alpha_geodesic, beta_geodesic))
    if count == 0:
        raise DisjointCurves("curves {} and {} do not cross".format(
            as_word(alpha), as_word(beta)))
    twisted = dehn_twist(surface, beta, alpha, power)
    twisted_length = tighten(surface, twisted).length
    return abs(power) * count * alpha_geodesic.length - (twisted_length - beta_geodesic.length)


class EqualityCase(object):
    """Curves for which twisting adds exactly i(alpha, beta) * l(alpha).

    :ivar alpha: Simple singular twisting curve.
    :ivar beta: Curve crossing it.
    :ivar int intersection: i(alpha, beta).
    :ivar float gap: Result of :func:`twist_length_gap`.
    """
    def __init__(self, alpha, beta, intersection, gap):
        self.alpha = alpha
        self.beta = beta
        self.intersection = intersection
        self.gap = gap

    def __str__(self):
        return "alpha {} beta {} i={} gap {:.12g}".format(
            self.alpha, self.beta, self.intersection, self.gap)


def find_equality_case(surface, bound=2, max_power=4, tolerance=1e-6):
    """Search for a singular simple alpha and a beta with vanishing twist gap.

    Alpha runs over products of two cylinder curves whose geodesic is
    simple and singular. Beta runs over the twists T_alpha^n(gamma) of the
    cylinder curves gamma crossing alpha.

    :rtype: EqualityCase
    :raises NotFound: If no pair within the search has a gap below
        ``tolerance``.
    """
    from quadflat.cylinders import cylinder_curves_up_to

    curves = [word for word, _ in cylinder_curves_up_to(surface, bound)]
    for first in curves:
        for second in curves:
            for alpha in (first * second, first * second.inverse()):
                try:
                    geodesic = tighten(surface, alpha)
                except (IncoherentWord, ContractibleCurve):
                    continue
                if not geodesic.singular or crossings(geodesic, geodesic, same=True):
                    continue
                for gamma in curves:
                    try:
                        count = len(crossings(geodesic, tighten(surface, gamma)))
                    except DegenerateConfiguration as e:
                        log.debug("skipping %s against %s: %s", gamma, alpha, e)
                        continue
                    if count == 0:
                        continue
                    for n in range(1, max_power + 1):
                        beta = dehn_twist(surface, gamma, alpha, n)
                        try:
                            gap = twist_length_gap(surface, alpha, beta)
                        except DegenerateConfiguration as e:
                            log.debug("skipping %s against %s: %s", beta, alpha, e)
                            continue
                        log.debug("alpha %s beta %s gap %r", alpha, beta, gap)
                        if gap <= tolerance:
                            return EqualityCase(geodesic.word, beta,
                                                intersection_number(surface, alpha, beta), gap)
    raise NotFound("no equality case among cylinder curves up to length {}".format(bound),
                   budget=bound)
