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
Exceptions raised by the quadflat library.

All domain errors derive from :class:`SurfaceError`, so a caller that wants to
catch anything the library reports about its input can catch that single
class. Problems in the library itself are raised as plain :class:`Exception`
with a message starting with ``BUG:``.
"""


class SurfaceError(Exception):
    """Base class for all errors about surfaces, curves and pairs."""
    pass


class ParseError(SurfaceError, ValueError):
    """A surface document or curve word cannot be parsed.

    :ivar int line: Line number in the document, or None.
    :ivar str field: Name or path of the offending field, or None.
    """
    def __init__(self, message, line=None, field=None):
        location = []
        if line is not None:
            location.append("line {}".format(line))
        if field is not None:
            location.append("field {}".format(field))
        if location:
            message = "{}: {}".format(', '.join(location), message)
        super().__init__(message)
        self.line = line
        self.field = field


class InvalidSurface(SurfaceError):
    """The surface does not satisfy the invariants an operation needs.

    :ivar report: The :class:`~quadflat.surface_model.ValidationReport` that
        failed, when available.
    """
    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class AmbiguousStart(SurfaceError):
    """A ray starts exactly along an edge, or at a vertex without a sector."""
    pass


class IncoherentWord(SurfaceError):
    """Consecutive crossings of a curve word are not on a common polygon."""
    pass


class ContractibleCurve(SurfaceError):
    """The curve word shrinks to a point."""
    pass


class DegenerateConfiguration(SurfaceError):
    """Intersection data cannot be decided at the configured tolerance."""
    pass


class NotSimple(SurfaceError):
    """A curve required to be simple has self-intersections."""
    pass


class DisjointCurves(SurfaceError):
    """Two curves that need to intersect do not."""
    pass


class MarkingMismatch(SurfaceError):
    """Two surfaces of a pair do not share polygon and gluing combinatorics."""
    pass


class EmptyCandidates(SurfaceError):
    """No candidate curve is available for a length ratio search."""
    pass


class CapTooLarge(SurfaceError):
    """The configured work budget was exceeded."""
    pass


class NotPeriodic(SurfaceError):
    """A direction could not be decided periodic within the length cap.

    :ivar direction: The :class:`~quadflat.flat_geometry.Direction` tried.
    :ivar float cap: The length cap that was exceeded.
    """
    def __init__(self, message, direction=None, cap=None):
        super().__init__(message)
        self.direction = direction
        self.cap = cap


class UnknownCorpusEntry(SurfaceError):
    """The name does not refer to a built-in surface."""
    pass


class ConstraintFailure(SurfaceError):
    """Corpus parameters are out of range, or a built surface fails its
    certification checks."""
    pass


class NotFound(SurfaceError):
    """No curve with the requested property was found within the budget.

    This is a statement about the search budget only, never a claim that no
    such curve exists.

    :ivar float budget: Length bound that was searched.
    :ivar bool identical: True when both metrics of the pair are equal.
    """
    def __init__(self, message, budget=None, identical=False):
        super().__init__(message)
        self.budget = budget
        self.identical = identical
