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
Cylinder decompositions in a fixed direction.

In a direction where every separatrix ends in a cone point the surface
falls apart into parallel cylinders. Their boundaries are the saddle
connections in that direction; the height of a cylinder is the distance
across it, measured perpendicular from one boundary to the other.
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor

from quadflat import geometry
from quadflat.curves import CurveWord
from quadflat.errors import NotPeriodic
from quadflat.flat_geometry import (
    ConePointHit, Direction, LengthCap, Periodic, triangulation, walk,
)
from quadflat.saddle_enum import saddle_connections
from quadflat.surface_model import LENGTH_TOLERANCE, area

log = logging.getLogger(__name__)

#: Default trace cap as a multiple of the diameter estimate.
CAP_DIAMETERS = 100


class Cylinder(object):
    """A maximal cylinder of parallel closed geodesics.

    :ivar direction: Direction of the core curve.
    :vartype direction: quadflat.flat_geometry.Direction
    :ivar circumference2: Exact squared circumference.
    :vartype circumference2: Fraction
    :ivar float height: Width across the cylinder.
    :ivar core: Edge word of the closed geodesic at mid height.
    :vartype core: quadflat.curves.CurveWord
    :ivar boundary_left: Saddle connection traces having the cylinder on
        their left when followed along the direction vector.
    :ivar boundary_right: Saddle connection traces having the cylinder on
        their right when followed along the direction vector.
    """
    def __init__(self, direction, circumference2, height, core):
        self.direction = direction
        self.circumference2 = circumference2
        self.height = height
        self.core = core
        self.boundary_left = []
        self.boundary_right = []

    @property
    def circumference(self):
        return math.sqrt(self.circumference2)

    @property
    def area(self):
        return self.circumference * self.height

    @property
    def modulus(self):
        return self.height / self.circumference

    def __str__(self):
        return "cylinder in direction {}: circumference {:.12g} height {:.12g} core {}".format(
            self.direction, self.circumference, self.height, self.core)

    @staticmethod
    def _pretty_properties():
        return [
            (str, 'direction'),
            (str, 'core'),
        ]


def diameter_estimate(surface):
    """Sum of the polygon diameters, an upper bound for the surface diameter."""
    total = 0.0
    for polygon in surface.polygons:
        total += max(geometry.length(geometry.sub(a, b)) for a in polygon for b in polygon)
    return math.sqrt(surface.scale2) * total


def _separatrix(tri, corner, way, cap):
    t, j = corner
    trace = walk(tri, t, tri.triangles[t].point(j), way, j, cap, continue_marked=False)
    if isinstance(trace.event, LengthCap):
        raise NotPeriodic("separatrix from vertex {} in direction {} is longer "
                          "than {:.12g}".format(tri.corner_vertex[corner], Direction(way), cap),
                          direction=Direction(way), cap=cap)
    if not isinstance(trace.event, ConePointHit):
        raise Exception("BUG: separatrix ended with {}".format(trace.event))
    return frozenset((tri.position(corner, way), trace.event.position)), trace


def _separatrices(tri, d, cap, threads=1):
    """Trace every separatrix in direction +-d into the cone point it ends in.

    :raises NotPeriodic: If one of them runs into the cap.
    """
    starts = [((t, j), way) for t in range(len(tri.triangles)) for j in range(3)
              for way in (d, geometry.neg(d))
              if geometry.in_sector(way, tri.corner_start((t, j)), tri.corner_end((t, j)))]
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as executor:
            traced = list(executor.map(lambda start: _separatrix(tri, start[0], start[1], cap),
                                       starts))
    else:
        traced = [_separatrix(tri, corner, way, cap) for corner, way in starts]
    found = {}
    for key, trace in traced:
        found.setdefault(key, trace)
    return list(found.values())


def _boundary_index(tri, traces):
    """Boundary pieces of all separatrices per triangle, pieces on a triangle
    side registered on both sides."""
    index = {}
    for trace in traces:
        for t, start, end in trace.pieces:
            index.setdefault(t, []).append((start, end))
            triangle = tri.triangles[t]
            for k in range(3):
                a, b = triangle.point(k), triangle.point(k + 1)
                if geometry.on_segment(start, a, b) and geometry.on_segment(end, a, b):
                    other_t, _, iso = tri.neighbors[t][k]
                    index.setdefault(other_t, []).append((iso(start), iso(end)))
    return index


def _across(tri, index, t, x, n, cap):
    """Trace perpendicular to the boundary until the next boundary piece."""
    def stop(t, x, d, limit):
        best = None
        for start, end in index.get(t, []):
            solution = geometry.line_parameters(x, d, start, geometry.sub(end, start))
            if solution is None:
                continue
            lam, mu = solution
            if 0 < lam <= limit and 0 <= mu <= 1 and (best is None or lam < best):
                best = lam
        return best

    t, x, n = tri.enter(t, x, n)
    trace = walk(tri, t, x, n, None, cap, stop=stop, continue_marked=False)
    if isinstance(trace.event, LengthCap):
        raise NotPeriodic("no opposite boundary within {:.12g}".format(cap), cap=cap)
    return trace


def _halfway(trace, n):
    """Point halfway along a trace of a ray in direction +-n.

    :returns: (triangle, point, ray vector in that triangle)
    """
    params = [abs(geometry.dot(geometry.sub(end, start), n)) / geometry.norm2(n)
              for _, start, end in trace.pieces]
    target = sum(params) / 2
    for (t, start, end), param in zip(trace.pieces, params):
        if target <= param:
            w = geometry.sub(end, start)
            return t, geometry.add(start, geometry.scale(w, target / param)), w
        target -= param
    raise Exception("BUG: point beyond the end of a trace")


def cylinder_decomposition(surface, direction, cap=None, threads=1):
    """Cut the surface into maximal cylinders in a direction.

    :param direction: :class:`~quadflat.flat_geometry.Direction` or vector.
    :param cap: Maximum separatrix length, defaults to
        :data:`CAP_DIAMETERS` times :func:`diameter_estimate`.
    :returns: Cylinders sorted by circumference, then height.
    :rtype: list(Cylinder)
    :raises NotPeriodic: If some separatrix does not reach a cone point
        within the cap.
    :raises InvalidSurface: If the surface does not validate.
    """
    tri = triangulation(surface)
    if not isinstance(direction, Direction):
        direction = Direction(direction)
    direction = direction.canonical()
    if cap is None:
        cap = CAP_DIAMETERS * diameter_estimate(surface)
    d = direction.vector
    traces = _separatrices(tri, d, cap, threads)
    index = _boundary_index(tri, traces)

    cylinders = {}
    for trace in traces:
        t, start, end = trace.pieces[0]
        u = geometry.sub(end, start)
        middle = geometry.midpoint(start, end)
        # sides are named with the trace followed along +d
        if geometry.dot(u, d) < 0:
            sides = (('right', (-u[1], u[0])), ('left', (u[1], -u[0])))
        else:
            sides = (('left', (-u[1], u[0])), ('right', (u[1], -u[0])))
        for side, normal in sides:
            across = _across(tri, index, t, middle, normal, cap)
            p_t, p, w = _halfway(across, normal)
            along = (w[1], -w[0])
            p_t, p, along = tri.enter(p_t, p, along)
            core = walk(tri, p_t, p, along, None, cap)
            if not isinstance(core.event, Periodic):
                raise NotPeriodic("core curve in direction {} did not close within "
                                  "{:.12g}".format(direction, cap), direction=direction, cap=cap)
            word = CurveWord(core.word)
            key = word.canonical()
            if key not in cylinders:
                params = sum(abs(geometry.dot(geometry.sub(b, a), along))
                             for _, a, b in core.pieces) / geometry.norm2(along)
                circumference2 = params ** 2 * geometry.norm2(along) * surface.scale2
                cylinders[key] = Cylinder(direction, circumference2, across.length, word)
            getattr(cylinders[key], 'boundary_' + side).append(trace)

    result = sorted(cylinders.values(), key=lambda c: (c.circumference2, c.height))
    total = math.fsum(c.area for c in result)
    if abs(total - float(area(surface))) > LENGTH_TOLERANCE * max(1.0, float(area(surface))):
        raise Exception("BUG: cylinders in direction {} cover area {!r} of {!r}".format(
            direction, total, float(area(surface))))
    log.info("direction %s: %d cylinders from %d saddle connections",
             direction, len(result), len(traces))
    return result


def cylinder_curves_up_to(surface, bound, cap=None, threads=1, budget=None):
    """Core curves of length at most ``bound`` of all cylinders whose
    direction is the direction of a saddle connection of length at most
    ``bound``.

    Directions that do not decompose within the cap are skipped.

    :returns: (core word, length) pairs, one per free homotopy class,
        sorted by length and direction.
    :rtype: list(tuple(quadflat.curves.CurveWord, float))
    """
    kwargs = {} if budget is None else {'budget': budget}
    directions = sorted({sc.direction for sc in saddle_connections(
        surface, bound, threads=threads, **kwargs)})

    def decompose(direction):
        try:
            return cylinder_decomposition(surface, direction, cap)
        except NotPeriodic as e:
            log.info("skipping direction %s: %s", direction, e)
            return []

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as executor:
            decompositions = list(executor.map(decompose, directions))
    else:
        decompositions = [decompose(direction) for direction in directions]
    found = {}
    for cylinders in decompositions:
        for cylinder in cylinders:
            if cylinder.circumference > bound + LENGTH_TOLERANCE:
                continue
            key = cylinder.core.canonical()
            if key not in found:
                found[key] = (cylinder.core, cylinder.circumference, cylinder.direction)
    curves = sorted(found.values(), key=lambda item: (item[1], item[2].vector))
    log.info("%d cylinder curves up to length %s on %s", len(curves), bound, surface.name)
    return [(word, length) for word, length, _ in curves]
