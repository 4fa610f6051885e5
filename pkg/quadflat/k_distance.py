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
Asymmetric length ratio distance between two marked surfaces.

For two unit area surfaces q1 and q2 with the same marking, the distance is
K(q1, q2) = log sup l_q2(g) / l_q1(g) over simple closed curves g. The sup
is approached from below by evaluating a finite pool of candidate curves:
the cylinder core curves of both surfaces up to a length bound together
with caller supplied words. Curves are transported between the two
surfaces as edge words, which is why both surfaces of a pair must share
their polygon and gluing combinatorics.

Reports always carry both the raw ratio r and K = log r.
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from quadflat import corpus
from quadflat.curves import as_word, is_simple, length
from quadflat.cylinders import cylinder_curves_up_to
from quadflat.errors import EmptyCandidates, MarkingMismatch, NotFound, NotSimple
from quadflat.surface_model import (
    LENGTH_TOLERANCE, apply_linear, normalize_area, require_valid, same_combinatorics,
)

log = logging.getLogger(__name__)

LOWER_BOUND = 'lower-bound'
EXACT = 'exact'

#: Length bound for the witness scan of :func:`k_exact_linear`.
DEFAULT_LENGTH_BOUND = 2
#: A curve counts as longer when it gains more than this.
LONGER_MARGIN = 1e-9


class MarkedPair(object):
    """Two surfaces with the same polygons and gluings, rescaled to area one.

    :ivar first: q1
    :ivar second: q2
    :ivar deformation: The matrix A with q2 = A q1, if known.
    :ivar family: (a, b) for a pair of ``genus2`` corpus members.
    :ivar extra: Candidate words that always take part in a ratio search.
    """
    def __init__(self, first, second, deformation=None):
        if not same_combinatorics(first, second):
            raise MarkingMismatch("{} and {} do not share polygons and gluings".format(
                first.name, second.name))
        self.first = normalize_area(first)
        self.second = normalize_area(second)
        self.deformation = deformation
        self.family = None
        self.extra = []

    @staticmethod
    def linear(surface, deformation):
        """The pair (q, A q)."""
        return MarkedPair(surface, apply_linear(surface, deformation), deformation)

    @staticmethod
    def genus2(a, b):
        """The pair of ``genus2`` corpus members for parameters a and b."""
        a, b = Fraction(a), Fraction(b)
        first = corpus.corpus("genus2:a={}".format(a))
        second = corpus.corpus("genus2:a={}".format(b))
        pair = MarkedPair(first, second)
        pair.family = (a, b)
        pair.extra = list(corpus.genus2_classes(pair.first))
        return pair

    @property
    def identical(self):
        return self.first.polygons == self.second.polygons and \
            self.first.scale2 == self.second.scale2

    @property
    def upper_bound(self):
        if self.family is None:
            return None
        return lipschitz_upper_bound(*self.family)

    def swapped(self):
        """The pair (q2, q1)."""
        pair = MarkedPair.__new__(MarkedPair)
        pair.first, pair.second = self.second, self.first
        pair.deformation = None if self.deformation is None else self.deformation.inverse()
        pair.family = None if self.family is None else tuple(reversed(self.family))
        pair.extra = self.extra
        return pair

    def __str__(self):
        return "pair {} -> {}".format(self.first.name, self.second.name)


class CandidateLength(object):
    """One row of a ratio table.

    :ivar word: Candidate curve.
    :ivar float first: Length in q1.
    :ivar float second: Length in q2.
    """
    def __init__(self, word, first, second):
        self.word = word
        self.first = first
        self.second = second

    @property
    def ratio(self):
        return self.second / self.first

    def __str__(self):
        return "{} {:.12g} {:.12g} ratio {:.12g}".format(
            self.word, self.first, self.second, self.ratio)


class DistanceReport(object):
    """Outcome of a length ratio search.

    :ivar float ratio: Largest ratio l_q2 / l_q1 found, or the analytic
        value for an exact report.
    :ivar witness: Curve attaining the largest ratio in the table.
    :vartype witness: quadflat.curves.CurveWord
    :ivar int candidates: Number of curves evaluated.
    :ivar str status: ``lower-bound`` or ``exact``.
    :ivar table: Rows sorted by decreasing ratio, then by word.
    :vartype table: list(CandidateLength)
    :ivar upper_bound: Known upper bound for the ratio, or None.
    """
    def __init__(self, ratio, table, status=LOWER_BOUND, upper_bound=None):
        self.ratio = ratio
        self.table = table
        self.status = status
        self.upper_bound = upper_bound
        self.witness = table[0].word if table else None

    @property
    def K(self):
        return math.log(self.ratio)

    @property
    def candidates(self):
        return len(self.table)

    @property
    def found_ratio(self):
        """Best ratio in the table."""
        return self.table[0].ratio if self.table else None

    @property
    def certified(self):
        """True if the ratio is exact or meets its upper bound."""
        if self.status == EXACT:
            return True
        return self.upper_bound is not None and \
            self.ratio >= self.upper_bound - LENGTH_TOLERANCE

    def __str__(self):
        return "{} ratio {:.12g} K {:.12g} witness {} over {} curves".format(
            self.status, self.ratio, self.K, self.witness, self.candidates)

    @staticmethod
    def _pretty_properties():
        return [
            (lambda ratio: "{:.12g}".format(ratio), 'ratio'),
            (lambda K: "{:.12g}".format(K), 'K'),
        ]


def candidate_pool(pair, bound, extra=(), threads=1):
    """Candidate words for a ratio search, without repeated free homotopy
    classes.

    :returns: Words in enumeration order: extra words first, then the
        cylinder curves of q1 and q2 by length.
    :rtype: list(quadflat.curves.CurveWord)
    :raises NotSimple: If an extra word is not a simple curve.
    """
    pool = []
    seen = set()

    def add(word):
        key = word.canonical()
        if key not in seen:
            seen.add(key)
            pool.append(word)

    for word in list(pair.extra) + list(extra):
        word = as_word(word)
        if not is_simple(pair.first, word):
            raise NotSimple("candidate {} is not a simple curve".format(word))
        add(word)
    for surface in (pair.first, pair.second):
        for word, _ in cylinder_curves_up_to(surface, bound, threads=threads):
            add(word)
    log.debug("%d candidate curves for %s up to length %s", len(pool), pair, bound)
    return pool


def _lengths(surfaces, pool, threads):
    def evaluate(word):
        return [length(surface, word) for surface in surfaces]

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as executor:
            return list(executor.map(evaluate, pool))
    return [evaluate(word) for word in pool]


def _table(rows):
    return sorted(rows, key=lambda row: (-row.ratio, row.word.format()))


def _report(pair, pool, lengths):
    if not pool:
        raise EmptyCandidates("no candidate curves for {}".format(pair))
    table = _table(CandidateLength(word, first, second)
                   for word, (first, second) in zip(pool, lengths))
    return DistanceReport(table[0].ratio, table, upper_bound=pair.upper_bound)


def ratio_lower_bound(pair, bound, extra=(), threads=1):
    """Lower bound for exp K(q1, q2) from a finite pool of curves.

    :param MarkedPair pair: The surfaces.
    :param bound: Length bound for the cylinder curves of both surfaces.
    :param extra: Additional words, must be simple.
    :rtype: DistanceReport
    :raises EmptyCandidates: If the pool is empty.
    :raises NotSimple: If an extra word is not simple.
    """
    pool = candidate_pool(pair, bound, extra, threads)
    report = _report(pair, pool, _lengths((pair.first, pair.second), pool, threads))
    log.info("%s: %s", pair, report)
    return report


def asymmetry_report(pair, bound, extra=(), threads=1):
    """Ratio searches in both directions over one candidate pool.

    :returns: (report for (q1, q2), report for (q2, q1))
    :rtype: tuple(DistanceReport, DistanceReport)
    """
    pool = candidate_pool(pair, bound, extra, threads)
    lengths = _lengths((pair.first, pair.second), pool, threads)
    forward = _report(pair, pool, lengths)
    backward = _report(pair.swapped(), pool, [(second, first) for first, second in lengths])
    log.info("%s: forward %s, backward %s", pair, forward, backward)
    return forward, backward


def k_exact_linear(surface, deformation, bound=DEFAULT_LENGTH_BOUND, threads=1):
    """Distance from q to A q, which is log of the largest singular value
    of A.

    The table lists the cylinder curves of q up to ``bound``; the best
    curve among them is the witness, its ratio is ``found_ratio``.

    Example::

        >>> from quadflat.corpus import corpus
        >>> from quadflat.surface_model import LinearDeformation
        >>> report = k_exact_linear(corpus('torus'), LinearDeformation.diagonal(2))
        >>> round(report.K, 6), report.status
        (0.693147, 'exact')

    :rtype: DistanceReport
    :raises InvalidSurface: If the surface does not validate.
    """
    require_valid(surface)
    pair = MarkedPair.linear(surface, deformation)
    sigma_max, _ = deformation.singular_values()
    pool = [word for word, _ in cylinder_curves_up_to(pair.first, bound, threads=threads)]
    lengths = _lengths((pair.first, pair.second), pool, threads)
    table = _table(CandidateLength(word, first, second)
                   for word, (first, second) in zip(pool, lengths))
    report = DistanceReport(sigma_max, table, status=EXACT)
    log.info("%s: %s, best found %s", pair, report, report.found_ratio)
    return report


def find_longer_curve(pair, bound, extra=(), threads=1):
    """First candidate that is longer in q2 than in q1.

    :rtype: quadflat.curves.CurveWord
    :raises NotFound: If no candidate up to ``bound`` is longer. This is a
        statement about the search only.
    """
    for word in candidate_pool(pair, bound, extra, threads):
        first, second = length(pair.first, word), length(pair.second, word)
        if second > first + LONGER_MARGIN:
            log.info("%s: %s has length %.12g then %.12g", pair, word, first, second)
            return word
    raise NotFound("no candidate up to length {} is longer on {} than on {}".format(
        bound, pair.second.name, pair.first.name), budget=bound, identical=pair.identical)


def lipschitz_upper_bound(a, b):
    """Upper bound for exp K(q_a, q_b) on the ``genus2`` family.

    The map from q_a to q_b stretching II and IV by b/a and I and III by
    (1/sqrt(2) - b)/(1/sqrt(2) - a) is Lipschitz with the larger of the two
    factors.

    :rtype: float
    """
    corpus.split_point(a)
    corpus.split_point(b)
    side = 1 / math.sqrt(2)
    a, b = float(a), float(b)
    return max(b / a, (side - b) / (side - a))


def ball_asymmetry(members, bound, threads=1):
    """Ratio table for all ordered pairs of ``genus2`` family members.

    All pairs share one pool: the II*IV^-1 and I*III^-1 classes and the
    cylinder curves of every member up to ``bound``. Row a of the result
    describes the forward ball around q_a, column a the backward ball.

    :param members: Family parameters.
    :returns: {(a, b): ratio of l_qb / l_qa} for a != b.
    :rtype: dict
    """
    members = [Fraction(a) for a in members]
    surfaces = [corpus.corpus("genus2:a={}".format(a)) for a in members]
    pool = []
    seen = set()
    for word in corpus.genus2_classes(surfaces[0]):
        seen.add(word.canonical())
        pool.append(word)
    for surface in surfaces:
        for word, _ in cylinder_curves_up_to(surface, bound, threads=threads):
            if word.canonical() not in seen:
                seen.add(word.canonical())
                pool.append(word)
    lengths = _lengths(surfaces, pool, threads)
    table = {}
    for i, a in enumerate(members):
        for j, b in enumerate(members):
            if i != j:
                table[(a, b)] = max(row[j] / row[i] for row in lengths)
    return table
