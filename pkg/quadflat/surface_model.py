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
Half-translation surfaces given as polygon gluings.

A :class:`HalfTranslationSurface` is a list of counterclockwise simple
polygons with exact rational vertices, together with a list of edge
:class:`Gluing` objects. Edge ``e`` of polygon ``p`` runs from vertex ``e`` to
vertex ``e + 1`` of that polygon. Two glued edges are identified by either a
translation or a rotation by π.

Example::

    >>> import quadflat
    >>> torus = quadflat.corpus.corpus('torus')
    >>> report = quadflat.surface_model.validate(torus)
    >>> report.ok, report.genus
    (True, 1)
    >>> quadflat.surface_model.area(torus)
    Fraction(1, 1)

Lengths on a surface are computed from the polygon coordinates and an exact
squared scale factor ``scale2``: a vector v has length ``sqrt(scale2) * |v|``.
This keeps coordinates and squared lengths rational when the area is
normalized to one, which needs a factor of ``1/sqrt(area)``.
"""

import json
import logging
import math
from fractions import Fraction

import networkx as nx
import numpy as np

from quadflat import geometry
from quadflat.errors import ConstraintFailure, InvalidSurface, ParseError

log = logging.getLogger(__name__)

#: Gluing map tag for edges identified by a translation.
TRANSLATION = 'translation'
#: Gluing map tag for edges identified by a rotation by π.
ROTATION_PI = 'rotation_pi'

_map_tags = (TRANSLATION, ROTATION_PI)

#: Tolerance on cone angles, measured in radians.
ANGLE_TOLERANCE = 1e-9
#: Tolerance used when comparing real lengths and areas.
LENGTH_TOLERANCE = 1e-9
#: Tolerance on the determinant of floating point deformations.
DETERMINANT_TOLERANCE = 1e-9


class Gluing(object):
    """Identification of two polygon edges.

    :ivar source: (polygon index, edge index) of the first edge.
    :vartype source: tuple(int, int)
    :ivar target: (polygon index, edge index) of the second edge.
    :vartype target: tuple(int, int)
    :ivar str map: :data:`TRANSLATION` or :data:`ROTATION_PI`.

    Gluings are stored with ``source < target``. Crossing a gluing in the
    positive sense means leaving the source polygon through the source edge.
    """
    __slots__ = ('source', 'target', 'map')

    def __init__(self, source, target, map=TRANSLATION):
        source = (int(source[0]), int(source[1]))
        target = (int(target[0]), int(target[1]))
        if target < source:
            source, target = target, source
        self.source = source
        self.target = target
        self.map = map

    def other(self, edge):
        return self.target if edge == self.source else self.source

    def _key(self):
        return (self.source, self.target, self.map)

    def __eq__(self, other):
        return isinstance(other, Gluing) and self._key() == other._key()

    def __lt__(self, other):
        return self._key() < other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return "Gluing({}, {}, {!r})".format(self.source, self.target, self.map)

    def __str__(self):
        return "{}:{} <-> {}:{} {}".format(
            self.source[0], self.source[1], self.target[0], self.target[1], self.map)


class HalfTranslationSurface(object):
    """A closed surface built from polygons glued along their edges.

    :ivar str name: Identifier.
    :ivar polygons: Counterclockwise vertex lists with exact coordinates.
    :vartype polygons: tuple(tuple(tuple(Fraction, Fraction)))
    :ivar gluings: Edge identifications, sorted. The position of a gluing in
        this tuple is the edge id used by curve words.
    :vartype gluings: tuple(Gluing)
    :ivar boundary: Edges explicitly flagged as unglued boundary.
    :vartype boundary: tuple(tuple(int, int))
    :ivar Fraction scale2: Squared length of one coordinate unit.

    Surfaces are immutable after construction; operations return new ones.
    """
    def __init__(self, polygons, gluings, name='surface', boundary=(), scale2=1):
        self.name = name
        self.polygons = tuple(
            tuple((Fraction(x), Fraction(y)) for x, y in polygon) for polygon in polygons)
        self.gluings = tuple(sorted(gluings))
        self.boundary = tuple(sorted((int(p), int(e)) for p, e in boundary))
        self.scale2 = Fraction(scale2)
        self._edge_gluing = {}
        for index, gluing in enumerate(self.gluings):
            self._edge_gluing.setdefault(gluing.source, []).append((index, 1))
            self._edge_gluing.setdefault(gluing.target, []).append((index, -1))
        self._report = None

    def vertex(self, polygon, index):
        points = self.polygons[polygon]
        return points[index % len(points)]

    def edge_vector(self, polygon, edge):
        return geometry.sub(self.vertex(polygon, edge + 1), self.vertex(polygon, edge))

    def edges(self):
        for p, polygon in enumerate(self.polygons):
            for e in range(len(polygon)):
                yield p, e

    def gluing_of(self, edge):
        """
        :param edge: (polygon index, edge index)
        :returns: (gluing id, side) where side is 1 if the edge is the
            source of the gluing and -1 if it is the target.
        :raises InvalidSurface: If the edge is not glued exactly once.
        """
        found = self._edge_gluing.get(edge, [])
        if len(found) != 1:
            raise InvalidSurface("edge {}:{} is glued {} times".format(
                edge[0], edge[1], len(found)))
        return found[0]

    def partner(self, edge):
        gluing_id, _ = self.gluing_of(edge)
        return self.gluings[gluing_id].other(edge)

    def gluing_map(self, edge):
        """The isometry from the frame of the polygon of ``edge`` into the
        frame of the polygon on the other side.

        The start of the edge is identified with the end of its partner.
        """
        gluing_id, _ = self.gluing_of(edge)
        gluing = self.gluings[gluing_id]
        other = gluing.other(edge)
        start = self.vertex(*edge)
        other_end = self.vertex(other[0], other[1] + 1)
        if gluing.map == TRANSLATION:
            return geometry.Isometry.translation(geometry.sub(other_end, start))
        return geometry.Isometry(-1, geometry.add(start, other_end))

    def with_polygons(self, polygons, name=None):
        return HalfTranslationSurface(
            polygons, self.gluings, name=self.name if name is None else name,
            boundary=self.boundary, scale2=self.scale2)

    def with_scale2(self, scale2, name=None):
        return HalfTranslationSurface(
            self.polygons, self.gluings, name=self.name if name is None else name,
            boundary=self.boundary, scale2=scale2)

    def real_length(self, v):
        """Length of an exact vector in this surface's metric."""
        return math.sqrt(self.scale2 * geometry.norm2(v))

    def __eq__(self, other):
        return isinstance(other, HalfTranslationSurface) and \
            self.name == other.name and self.polygons == other.polygons and \
            self.gluings == other.gluings and self.boundary == other.boundary and \
            self.scale2 == other.scale2

    def __hash__(self):
        return hash((self.polygons, self.gluings, self.scale2))

    def __repr__(self):
        return "HalfTranslationSurface(name={!r}, polygons={}, gluings={})".format(
            self.name, len(self.polygons), len(self.gluings))

    def __str__(self):
        return "surface {self.name} polygons {n_polygons} gluings {n_gluings}".format(
            self=self, n_polygons=len(self.polygons), n_gluings=len(self.gluings))

    @staticmethod
    def _pretty_properties():
        return [
            (geometry.rational_str, 'scale2'),
        ]


class ConePointInfo(object):
    """Summary of one vertex class.

    :ivar int index: Vertex class number.
    :ivar int multiple: The cone angle divided by π.
    :ivar corners: (polygon, vertex) corners in counterclockwise order.
    :vartype corners: list(tuple(int, int))
    :ivar float angle: Total angle in radians.
    """
    def __init__(self, index, multiple, corners, angle):
        self.index = index
        self.multiple = multiple
        self.corners = corners
        self.angle = angle

    @property
    def singular(self):
        return self.multiple != 2

    def __str__(self):
        return "cone point {self.index} angle {self.multiple}pi corners {n}".format(
            self=self, n=len(self.corners))


class ValidationReport(object):
    """Outcome of :func:`validate`.

    :ivar bool ok: True if all surface invariants hold.
    :ivar int genus: Genus from the Euler characteristic, or None.
    :ivar cone_points: Vertex classes with their angles.
    :vartype cone_points: list(ConePointInfo)
    :ivar Fraction area: Area, or None.
    :ivar diagnostics: Human readable failure descriptions.
    :vartype diagnostics: list(str)
    :ivar warnings: Remarks that do not make the surface invalid, like
        marked points of angle 2π.
    :vartype warnings: list(str)
    :ivar bool closed: True if no edge is flagged as boundary.
    """
    def __init__(self):
        self.ok = False
        self.genus = None
        self.cone_points = []
        self.area = None
        self.diagnostics = []
        self.warnings = []
        self.closed = True

    def _fail(self, message):
        self.diagnostics.append(message)

    def angle_multiples(self):
        return sorted(cone_point.multiple for cone_point in self.cone_points)

    def __str__(self):
        return "validation ok {self.ok} genus {self.genus} cone points {n}".format(
            self=self, n=len(self.cone_points))

    @staticmethod
    def _pretty_properties():
        return [
            (lambda area: 'None' if area is None else geometry.rational_str(area), 'area'),
        ]


def _field(path, *parts):
    return path + ''.join('[{}]'.format(part) for part in parts)


def _parse_point(point, path):
    if not isinstance(point, (list, tuple)) or len(point) != 2:
        raise ParseError("expected a pair of rationals", field=path)
    try:
        return tuple(geometry.parse_rational(c) for c in point)
    except ValueError as e:
        raise ParseError(str(e), field=path) from None


def _parse_edge_ref(ref, path):
    if not isinstance(ref, (list, tuple)) or len(ref) != 2 or \
            not all(isinstance(i, int) and not isinstance(i, bool) for i in ref):
        raise ParseError("expected [poly_index, edge_index]", field=path)
    return tuple(ref)


def load_surface(document):
    """Read a surface description document.

    Only the syntax is checked; use :func:`validate` for the geometry.

    :param str document: JSON text with fields ``name``, ``polygons`` and
        ``gluings``, and optional ``boundary`` and ``scale2``.
    :returns: The surface, with all rationals parsed exactly.
    :rtype: HalfTranslationSurface
    :raises ParseError: With line or field location of the problem.
    """
    try:
        data = json.loads(document)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, line=e.lineno) from None
    if not isinstance(data, dict):
        raise ParseError("top level must be an object")
    for required in ('polygons', 'gluings'):
        if required not in data:
            raise ParseError("missing field", field=required)
    name = data.get('name', 'surface')
    if not isinstance(name, str):
        raise ParseError("name must be a string", field='name')
    polygons = []
    if not isinstance(data['polygons'], list):
        raise ParseError("expected a list of polygons", field='polygons')
    for p, polygon in enumerate(data['polygons']):
        if not isinstance(polygon, list):
            raise ParseError("expected a list of points", field=_field('polygons', p))
        polygons.append([_parse_point(point, _field('polygons', p, i))
                         for i, point in enumerate(polygon)])
    gluings = []
    if not isinstance(data['gluings'], list):
        raise ParseError("expected a list of gluings", field='gluings')
    for g, gluing in enumerate(data['gluings']):
        path = _field('gluings', g)
        if not isinstance(gluing, dict):
            raise ParseError("expected an object", field=path)
        for key in ('from', 'to'):
            if key not in gluing:
                raise ParseError("missing field", field=path + '.' + key)
        map_tag = gluing.get('map', TRANSLATION)
        if map_tag not in _map_tags:
            raise ParseError("unknown map {!r}".format(map_tag), field=path + '.map')
        gluings.append(Gluing(_parse_edge_ref(gluing['from'], path + '.from'),
                              _parse_edge_ref(gluing['to'], path + '.to'),
                              map_tag))
    boundary = [_parse_edge_ref(ref, _field('boundary', i))
                for i, ref in enumerate(data.get('boundary', []))]
    try:
        scale2 = geometry.parse_rational(data.get('scale2', '1'))
    except ValueError as e:
        raise ParseError(str(e), field='scale2') from None
    if scale2 <= 0:
        raise ParseError("scale2 must be positive", field='scale2')
    return HalfTranslationSurface(polygons, gluings, name=name, boundary=boundary,
                                  scale2=scale2)


def serialize(surface):
    """Write the canonical document for a surface.

    Gluings are sorted, fractions reduced, and the output is stable so that
    ``load_surface(serialize(s)) == s``.

    :rtype: str
    """
    data = {
        'name': surface.name,
        'polygons': [[[geometry.rational_str(x), geometry.rational_str(y)]
                      for x, y in polygon] for polygon in surface.polygons],
        'gluings': [{'from': list(g.source), 'to': list(g.target), 'map': g.map}
                    for g in surface.gluings],
    }
    if surface.boundary:
        data['boundary'] = [list(edge) for edge in surface.boundary]
    if surface.scale2 != 1:
        data['scale2'] = geometry.rational_str(surface.scale2)
    return json.dumps(data, indent=2) + '\n'


def _polygon_is_simple(points):
    n = len(points)
    for i in range(n):
        a, b = points[i], points[(i + 1) % n]
        if a == b:
            return False
        for j in range(i + 1, n):
            c, d = points[j], points[(j + 1) % n]
            if j == i + 1:
                # adjacent edges only share their common vertex
                if geometry.on_segment(d, a, b) or geometry.on_segment(a, c, d):
                    return False
            elif i == 0 and j == n - 1:
                if geometry.on_segment(c, a, b) or geometry.on_segment(b, c, d):
                    return False
            elif geometry.segments_cross(a, b, c, d):
                return False
    return True


def corner_angle(surface, polygon, index):
    """Interior angle in radians at a polygon vertex."""
    here = surface.vertex(polygon, index)
    outgoing = geometry.sub(surface.vertex(polygon, index + 1), here)
    incoming = geometry.sub(surface.vertex(polygon, index - 1), here)
    return geometry.ccw_angle(outgoing, incoming)


def next_corner(surface, corner):
    """The corner following ``corner`` counterclockwise around its vertex.

    Rotating counterclockwise inside corner (p, i) we leave the polygon
    through edge i - 1; the next corner is at the start of its partner edge.
    """
    polygon, index = corner
    n = len(surface.polygons[polygon])
    return surface.partner((polygon, (index - 1) % n))


def vertex_classes(surface):
    """Group polygon corners into points of the surface.

    :returns: Lists of corners, each in counterclockwise order when the
        vertex is interior.
    :rtype: list(list(tuple(int, int)))
    """
    graph = nx.Graph()
    boundary = set(surface.boundary)
    for p, polygon in enumerate(surface.polygons):
        for i in range(len(polygon)):
            graph.add_node((p, i))
    for p, polygon in enumerate(surface.polygons):
        n = len(polygon)
        for i in range(n):
            edge = (p, (i - 1) % n)
            if edge in boundary or edge not in surface._edge_gluing:
                continue
            graph.add_edge((p, i), surface.partner(edge))
    classes = []
    for component in nx.connected_components(graph):
        start = min(component)
        ordered = [start]
        corner = start
        while True:
            edge = (corner[0], (corner[1] - 1) % len(surface.polygons[corner[0]]))
            if edge in boundary or edge not in surface._edge_gluing:
                ordered = sorted(component)
                break
            corner = next_corner(surface, corner)
            if corner == start:
                break
            ordered.append(corner)
        classes.append(ordered)
    classes.sort()
    return classes


def validate(surface):
    """Check all invariants of a half-translation surface.

    Failures are reported, never raised.

    :rtype: ValidationReport
    """
    report = ValidationReport()
    if len(surface.polygons) == 0:
        report._fail("no polygons")
        return report
    for p, polygon in enumerate(surface.polygons):
        if len(polygon) < 3:
            report._fail("polygon {} has fewer than 3 vertices".format(p))
            continue
        if geometry.signed_area2(polygon) <= 0:
            report._fail("polygon {} is not counterclockwise".format(p))
        elif not _polygon_is_simple(polygon):
            report._fail("polygon {} is not simple".format(p))
    if report.diagnostics:
        return report

    all_edges = set(surface.edges())
    boundary = set(surface.boundary)
    for edge in boundary - all_edges:
        report._fail("boundary edge {}:{} does not exist".format(*edge))
    for gluing in surface.gluings:
        for edge in (gluing.source, gluing.target):
            if edge not in all_edges:
                report._fail("gluing {} refers to missing edge {}:{}".format(gluing, *edge))
    if report.diagnostics:
        return report
    for edge in sorted(all_edges):
        count = len(surface._edge_gluing.get(edge, []))
        if edge in boundary:
            count += 1
        if count != 1:
            report._fail("edge {}:{} appears {} times in gluings".format(edge[0], edge[1], count))
    for gluing in surface.gluings:
        v = surface.edge_vector(*gluing.source)
        w = geometry.neg(surface.edge_vector(*gluing.target))
        expected = v if gluing.map == TRANSLATION else geometry.neg(v)
        if w != expected:
            report._fail("holonomy mismatch on gluing {}: ({}, {}) versus ({}, {})".format(
                gluing, geometry.rational_str(v[0]), geometry.rational_str(v[1]),
                geometry.rational_str(w[0]), geometry.rational_str(w[1])))
    if report.diagnostics:
        return report

    report.closed = len(boundary) == 0
    classes = vertex_classes(surface)
    excess = 0
    for index, corners in enumerate(classes):
        if any(((p, (i - 1) % len(surface.polygons[p])) in boundary or (p, i) in boundary)
               for p, i in corners):
            continue
        angle = math.fsum(corner_angle(surface, p, i) for p, i in corners)
        multiple = int(round(angle / math.pi))
        if abs(angle / math.pi - multiple) >= ANGLE_TOLERANCE:
            report._fail("cone angle {} at vertex class {} is no multiple of pi".format(
                angle, index))
            continue
        report.cone_points.append(ConePointInfo(index, multiple, corners, angle))
        excess += multiple - 2
        if multiple == 2:
            report.warnings.append("vertex class {} is a marked point".format(index))
        elif multiple == 1:
            report.warnings.append("vertex class {} has cone angle pi".format(index))
    n_edges = len(surface.gluings) + len(boundary)
    euler = len(classes) - n_edges + len(surface.polygons)
    if report.closed:
        if euler % 2 != 0:
            report._fail("odd Euler characteristic {}".format(euler))
        else:
            report.genus = (2 - euler) // 2
            if not report.diagnostics and excess != 4 * report.genus - 4:
                report._fail("angle excess {}pi does not match genus {}".format(
                    excess, report.genus))
    report.area = surface.scale2 * sum(
        geometry.signed_area2(polygon) for polygon in surface.polygons) / 2
    report.ok = len(report.diagnostics) == 0
    return report


def require_valid(surface, closed=True):
    """Validate once and raise if the surface cannot be used.

    :raises InvalidSurface: If validation fails, or if ``closed`` is
        requested and the surface has boundary.
    :rtype: ValidationReport
    """
    if surface._report is None:
        surface._report = validate(surface)
    report = surface._report
    if not report.ok:
        raise InvalidSurface("invalid surface {}: {}".format(
            surface.name, '; '.join(report.diagnostics)), report)
    if closed and not report.closed:
        raise InvalidSurface("surface {} has boundary".format(surface.name), report)
    return report


def area(surface):
    """Total area by the shoelace formula.

    :returns: Exact area when the scale factor is rational.
    :rtype: Fraction
    :raises InvalidSurface: If the surface does not validate.
    """
    return require_valid(surface, closed=False).area


class LinearDeformation(object):
    """A 2x2 matrix of determinant one acting on surfaces.

    Entries are stored exactly. Floating point input is converted to the
    exact binary value it holds and the determinant is then only required to
    be one within :data:`DETERMINANT_TOLERANCE`.

    :ivar matrix: ((a, b), (c, d))
    :vartype matrix: tuple(tuple(Fraction))
    :ivar bool exact: True if all entries were given as rationals.
    """
    def __init__(self, a, b, c, d):
        entries = (a, b, c, d)
        self.exact = not any(isinstance(x, float) for x in entries)
        a, b, c, d = (Fraction(x) for x in entries)
        self.matrix = ((a, b), (c, d))
        det = a * d - b * c
        if self.exact:
            if det != 1:
                raise ConstraintFailure("determinant {} is not 1".format(
                    geometry.rational_str(det)))
        elif abs(float(det) - 1) > DETERMINANT_TOLERANCE:
            raise ConstraintFailure("determinant {} is not 1".format(float(det)))

    @staticmethod
    def diagonal(lam):
        """diag(lam, 1/lam)"""
        lam = Fraction(lam) if not isinstance(lam, float) else lam
        return LinearDeformation(lam, 0, 0, 1 / lam)

    @staticmethod
    def rotation(cos, sin):
        return LinearDeformation(cos, -sin, sin, cos)

    @staticmethod
    def identity():
        return LinearDeformation(1, 0, 0, 1)

    def determinant(self):
        (a, b), (c, d) = self.matrix
        return a * d - b * c

    def inverse(self):
        (a, b), (c, d) = self.matrix
        det = self.determinant()
        inverse = LinearDeformation.__new__(LinearDeformation)
        inverse.exact = self.exact
        inverse.matrix = ((d / det, -b / det), (-c / det, a / det))
        return inverse

    def apply(self, v):
        (a, b), (c, d) = self.matrix
        return (a * v[0] + b * v[1], c * v[0] + d * v[1])

    def as_array(self):
        return np.array([[float(x) for x in row] for row in self.matrix])

    def singular_values(self):
        """
        :returns: (sigma_max, sigma_min), with product one.
        :rtype: tuple(float, float)
        """
        values = np.linalg.svd(self.as_array(), compute_uv=False)
        return float(values[0]), float(values[1])

    def __eq__(self, other):
        return isinstance(other, LinearDeformation) and self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)

    def __repr__(self):
        return "LinearDeformation({})".format(
            ', '.join(geometry.rational_str(x) for row in self.matrix for x in row))

    def __str__(self):
        sigma_max, _ = self.singular_values()
        return "deformation {} sigma_max {:.12g}".format(
            [[geometry.rational_str(x) for x in row] for row in self.matrix], sigma_max)


def apply_linear(surface, deformation):
    """Map every vertex of the surface by a determinant one matrix.

    The gluing combinatorics stay the same; since rotation by π commutes with
    linear maps, all gluings remain valid. Area is preserved.

    :rtype: HalfTranslationSurface
    :raises InvalidSurface: If the surface does not validate.
    """
    require_valid(surface, closed=False)
    polygons = [[deformation.apply(point) for point in polygon]
                for polygon in surface.polygons]
    return surface.with_polygons(polygons)


def normalize_area(surface):
    """Rescale to unit area.

    The coordinates stay the same and the squared scale factor is divided by
    the area, so squared lengths stay exact rationals.

    :rtype: HalfTranslationSurface
    :raises InvalidSurface: If the surface does not validate or has no area.
    """
    current = area(surface)
    if current <= 0:
        raise InvalidSurface("surface {} has no area".format(surface.name))
    if current == 1:
        return surface
    return surface.with_scale2(surface.scale2 / current)


def saddle_length_after(length, theta, lam):
    """Length of a segment after applying diag(lam, 1/lam).

    :param float length: Length before.
    :param float theta: Direction angle of the segment.
    :param float lam: Stretch factor.
    :rtype: float
    """
    return math.hypot(lam * length * math.cos(theta), length * math.sin(theta) / lam)


def same_combinatorics(first, second):
    """True if two surfaces share polygon sizes and gluings."""
    return [len(p) for p in first.polygons] == [len(p) for p in second.polygons] and \
        first.gluings == second.gluings and first.boundary == second.boundary
