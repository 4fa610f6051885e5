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
Command line front end.

Every subcommand is a thin adapter around one library call. Surfaces are
given with ``--surface`` as a path to a surface description document or as
the name of a built-in surface (see :mod:`quadflat.corpus`). Output goes to
stdout as an aligned table, CSV or JSON; floating point values are printed
with 12 significant digits and exact rationals as ``p/q``.

Exit codes: 0 on success, 1 for domain errors, 2 for usage errors and 3
when a search found nothing within its budget.
"""

import argparse
import csv
import json
import logging
import math
import os
import sys
from fractions import Fraction

from quadflat import corpus, curves, cylinders, foliation_pairing, geometry, k_distance, utils
from quadflat.errors import NotFound, SurfaceError
from quadflat.saddle_enum import saddle_connections
from quadflat.surface_model import LinearDeformation, area, load_surface, validate
from quadflat.version import __version__

log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_USAGE = 2
EXIT_NOT_FOUND = 3

#: Default number of quadrature angles for ``pair``.
DEFAULT_THETA_SAMPLES = 1000
#: Length bound used by ``kdist`` and ``cyl`` when none is given.
DEFAULT_LENGTH_BOUND = 2


class Table(object):
    """Rows of output values under named columns."""
    def __init__(self, columns, rows=()):
        self.columns = columns
        self.rows = list(rows)

    def append(self, *values):
        self.rows.append(values)


def _text(value):
    if value is None:
        return ''
    if isinstance(value, bool):
        return 'true' if value else 'false'
    if isinstance(value, (Fraction, float, int)):
        return utils.format_real(value)
    return str(value)


def _json_value(value):
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, Fraction):
        return geometry.rational_str(value)
    if isinstance(value, float):
        return float(utils.format_real(value))
    if isinstance(value, (int, str)):
        return value
    return str(value)


def emit(table, fmt, out):
    """Write a table in one of the output formats."""
    if fmt == 'csv':
        writer = csv.writer(out, lineterminator='\n')
        writer.writerow(table.columns)
        for row in table.rows:
            writer.writerow([_text(value) for value in row])
    elif fmt == 'json':
        document = [dict(zip(table.columns, (_json_value(value) for value in row)))
                    for row in table.rows]
        out.write(json.dumps(document, indent=2))
        out.write('\n')
    else:
        cells = [list(table.columns)] + [[_text(value) for value in row] for row in table.rows]
        widths = [max(len(row[i]) for row in cells) for i in range(len(table.columns))]
        for row in cells:
            out.write('  '.join(cell.ljust(width) for cell, width in zip(row, widths)).rstrip())
            out.write('\n')


def parse_vector(text):
    """Read ``dx,dy`` with rational components.

    :raises ValueError: If the text is no pair of rationals.
    """
    parts = text.split(',')
    if len(parts) != 2:
        raise ValueError("expected dx,dy, got {!r}".format(text))
    return tuple(geometry.parse_rational(part.strip()) for part in parts)


def open_surface(text):
    """A surface from a document path or a built-in name."""
    if os.path.exists(text):
        with open(text) as fp:
            surface = load_surface(fp.read())
        log.info("read %s from %s", surface.name, text)
        return surface
    return corpus.corpus(text)


def _validate(args, out):
    surface = open_surface(args.surface)
    report = validate(surface)
    if args.format == 'table':
        for line in utils.pretty_lines(report):
            out.write(line + '\n')
    else:
        table = Table(('ok', 'genus', 'area', 'closed', 'cone_angles', 'diagnostics'))
        table.append(report.ok, report.genus, report.area, report.closed,
                     ' '.join("{}pi".format(m) for m in report.angle_multiples()),
                     '; '.join(report.diagnostics))
        emit(table, args.format, out)
    return EXIT_OK if report.ok else EXIT_DOMAIN


def _area(args, out):
    table = Table(('area',))
    table.append(area(open_surface(args.surface)))
    emit(table, args.format, out)
    return EXIT_OK


def _sc(args, out):
    surface = open_surface(args.surface)
    found = saddle_connections(surface, args.length_bound, threads=args.threads)
    table = Table(('len2_num', 'len2_den', 'dx', 'dy', 'src', 'dst'))
    for sc in found:
        table.append(sc.length2.numerator, sc.length2.denominator,
                     sc.holonomy[0], sc.holonomy[1], sc.src, sc.dst)
    emit(table, args.format, out)
    return EXIT_OK


def _cyl(args, out):
    surface = open_surface(args.surface)
    if args.direction is None:
        table = Table(('word', 'length'))
        bound = args.length_bound or DEFAULT_LENGTH_BOUND
        for word, length in cylinders.cylinder_curves_up_to(surface, bound, cap=args.cap,
                                                            threads=args.threads):
            table.append(word.format(), length)
    else:
        table = Table(('dirx', 'diry', 'circumference', 'height', 'word'))
        for cylinder in cylinders.cylinder_decomposition(surface, parse_vector(args.direction),
                                                         cap=args.cap, threads=args.threads):
            dx, dy = cylinder.direction.vector
            table.append(dx, dy, cylinder.circumference, cylinder.height,
                         cylinder.core.format())
    emit(table, args.format, out)
    return EXIT_OK


def _len(args, out):
    surface = open_surface(args.surface)
    table = Table(('word', 'length', 'singular', 'geodesic'))
    for text in args.word:
        geodesic = curves.tighten(surface, text)
        table.append(text, geodesic.length, geodesic.singular, geodesic.word.format())
    emit(table, args.format, out)
    return EXIT_OK


def _twist(args, out):
    surface = open_surface(args.surface)
    twisted = curves.dehn_twist(surface, args.beta, args.alpha, args.power)
    table = Table(('twisted', 'intersection', 'gap'))
    table.append(twisted.format(), curves.intersection_number(surface, args.alpha, args.beta),
                 curves.twist_length_gap(surface, args.alpha, args.beta, args.power))
    emit(table, args.format, out)
    return EXIT_OK


def _pair(args, out):
    surface = open_surface(args.surface)
    if args.self_intersection:
        table = Table(('samples', 'self_intersection', 'expected'))
        table.append(args.theta_samples,
                     foliation_pairing.liouville_self_intersection(surface, args.theta_samples),
                     math.pi / 2 * float(area(surface)))
    elif args.word is None:
        raise ValueError("pair needs --word or --self")
    elif args.theta is not None:
        table = Table(('word', 'theta', 'pairing'))
        geodesic = curves.tighten(surface, args.word)
        table.append(args.word, args.theta,
                     foliation_pairing.foliation_curve_pairing(surface, args.theta, geodesic))
    else:
        table = Table(('word', 'samples', 'pairing', 'length'))
        geodesic = curves.tighten(surface, args.word)
        table.append(args.word, args.theta_samples,
                     foliation_pairing.liouville_curve_pairing(surface, geodesic,
                                                               args.theta_samples),
                     geodesic.length)
    emit(table, args.format, out)
    return EXIT_OK


def _marked_pair(args):
    if len(args.pair) == 1:
        a, b = corpus.family_pair(args.pair[0])
        return k_distance.MarkedPair.genus2(a, b)
    return k_distance.MarkedPair(open_surface(args.pair[0]), open_surface(args.pair[1]))


def _report_rows(table, name, report):
    witness = report.witness.format() if report.witness is not None else None
    table.append(name, report.ratio, report.K, witness, report.candidates,
                 report.status, report.upper_bound, report.certified)


def _kdist(args, out):
    bound = args.length_bound or DEFAULT_LENGTH_BOUND
    if args.deformation is not None:
        if args.surface is None:
            raise ValueError("--deformation needs --surface")
        matrix = LinearDeformation(*(geometry.parse_rational(x) for x in args.deformation))
        reports = [('exact', k_distance.k_exact_linear(open_surface(args.surface), matrix,
                                                       bound, threads=args.threads))]
    elif args.pair is None:
        raise ValueError("kdist needs --pair or --surface with --deformation")
    else:
        pair = _marked_pair(args)
        extra = [curves.CurveWord.parse(text) for text in args.extra]
        if args.find_longer:
            word = k_distance.find_longer_curve(pair, bound, extra, threads=args.threads)
            table = Table(('word', 'length_first', 'length_second'))
            table.append(word.format(), curves.length(pair.first, word),
                         curves.length(pair.second, word))
            emit(table, args.format, out)
            return EXIT_OK
        forward, backward = k_distance.asymmetry_report(pair, bound, extra,
                                                        threads=args.threads)
        reports = [('forward', forward), ('backward', backward)]
    if args.curves:
        table = Table(('report', 'word', 'length_first', 'length_second', 'ratio'))
        for name, report in reports:
            for row in report.table:
                table.append(name, row.word.format(), row.first, row.second, row.ratio)
    else:
        table = Table(('report', 'ratio', 'K', 'witness', 'candidates', 'status',
                       'upper_bound', 'certified'))
        for name, report in reports:
            _report_rows(table, name, report)
    emit(table, args.format, out)
    return EXIT_OK


def _demo_checks():
    torus = corpus.corpus('torus')
    lshape = corpus.corpus('lshape')
    sqrt2 = math.sqrt(2)

    def close(value, expected, tolerance=1e-9):
        return abs(value - expected) <= tolerance, "{} expected {}".format(
            utils.format_real(value), utils.format_real(expected))

    def count(found, expected):
        return found == expected, "{} expected {}".format(found, expected)

    def genus2_asymmetry():
        pair = k_distance.MarkedPair.genus2(Fraction(1, 4), Fraction(1, 3))
        forward, backward = k_distance.asymmetry_report(pair, 2)
        expected = (1 / sqrt2 - 1 / 4) / (1 / sqrt2 - 1 / 3)
        ok = abs(forward.ratio - 4 / 3) <= 1e-9 and abs(backward.ratio - expected) <= 1e-9
        return ok, "forward {} backward {}".format(
            utils.format_real(forward.ratio), utils.format_real(backward.ratio))

    def lshape_cone_points():
        report = validate(lshape)
        return count((report.genus, report.angle_multiples()), (2, [6]))

    return [
        ("torus saddle connections up to 1.5", lambda: count(
            len(saddle_connections(torus, 1.5)), 4)),
        ("L-shape genus and cone angle", lshape_cone_points),
        ("L-shape saddle connections up to 1", lambda: count(
            len(saddle_connections(lshape, 1)), 6)),
        ("torus length of (1, 1)", lambda: close(curves.length(torus, '+1,-0'), sqrt2)),
        ("torus length of (2, 1)", lambda: close(curves.length(torus, '+1,+1,-0'),
                                                 math.sqrt(5))),
        ("torus i((1, 0), (0, 1))", lambda: count(
            curves.intersection_number(torus, '+1', '-0'), 1)),
        ("torus twist gap", lambda: close(curves.twist_length_gap(torus, '-0', '+1'),
                                          2 - sqrt2)),
        ("torus Liouville self intersection", lambda: close(
            foliation_pairing.liouville_self_intersection(torus, 2000), math.pi / 2, 1e-3)),
        ("torus K under diag(2, 1/2)", lambda: close(k_distance.k_exact_linear(
            torus, LinearDeformation.diagonal(2)).K, math.log(2))),
        ("genus 2 asymmetry", genus2_asymmetry),
    ]


def _demo(args, out):
    table = Table(('check', 'result', 'detail'))
    failed = 0
    for name, check in _demo_checks():
        try:
            ok, detail = check()
        except SurfaceError as e:
            ok, detail = False, "{}: {}".format(e.__class__.__name__, e)
        except Exception as e:
            log.debug("demo check %s failed", name, exc_info=True)
            ok, detail = False, "internal error: {}".format(e)
        failed += 0 if ok else 1
        table.append(name, 'PASS' if ok else 'FAIL', detail)
    emit(table, args.format, out)
    return EXIT_OK if failed == 0 else EXIT_DOMAIN


def positive_int(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("{} is not a positive integer".format(text))
    return value


def positive_real(text):
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError("{} is not positive".format(text))
    return value


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--format', choices=('table', 'csv', 'json'), default='table',
                        help="output format (default: table)")
    common.add_argument('--threads', type=positive_int, default=None,
                        help="worker threads (default: ${} or 1)".format(utils.THREADS_ENV))
    common.add_argument('-v', '--verbose', action='count', default=0,
                        help="log progress, twice for debug output")

    parser = argparse.ArgumentParser(
        prog='quadflat', description="Flat geometry of half-translation surfaces.")
    parser.add_argument('--version', action='version', version='%(prog)s ' + __version__)
    commands = parser.add_subparsers(dest='command', metavar='command')
    commands.required = True

    def command(name, func, help, aliases=()):
        sub = commands.add_parser(name, parents=[common], help=help, aliases=list(aliases))
        sub.set_defaults(func=func)
        return sub

    sub = command('validate', _validate, "check a surface and report genus and cone points")
    sub.add_argument('--surface', required=True)
    sub = command('area', _area, "exact area of a surface")
    sub.add_argument('--surface', required=True)
    sub = command('sc', _sc, "saddle connections up to a length")
    sub.add_argument('--surface', required=True)
    sub.add_argument('--length-bound', type=positive_real, required=True)
    sub = command('cyl', _cyl, "cylinder decomposition or cylinder curves")
    sub.add_argument('--surface', required=True)
    sub.add_argument('--direction', help="dx,dy; without it list cylinder curves")
    sub.add_argument('--length-bound', type=positive_real)
    sub.add_argument('--cap', type=positive_real, help="separatrix length cap")
    sub = command('len', _len, "flat length of closed curves")
    sub.add_argument('--surface', required=True)
    sub.add_argument('--word', required=True, action='append', help="edge word like +1,-0")
    sub = command('twist', _twist, "Dehn twist of beta around alpha and its length gap")
    sub.add_argument('--surface', required=True)
    sub.add_argument('--alpha', required=True)
    sub.add_argument('--beta', required=True)
    sub.add_argument('--power', type=int, default=1)
    sub = command('pair', _pair, "foliation and Liouville pairings", aliases=('liouville',))
    sub.add_argument('--surface', required=True)
    sub.add_argument('--word')
    sub.add_argument('--self', dest='self_intersection', action='store_true',
                     help="self intersection of the Liouville current")
    sub.add_argument('--theta', type=float, help="pair with the foliation at this angle")
    sub.add_argument('--theta-samples', type=positive_int, default=DEFAULT_THETA_SAMPLES)
    sub = command('kdist', _kdist, "length ratio distance between two marked surfaces")
    sub.add_argument('--pair', nargs='+', metavar='SURFACE',
                     help="two surfaces, or genus2:a=<s>,b=<t>")
    sub.add_argument('--surface', help="with --deformation: the surface q of (q, A q)")
    sub.add_argument('--deformation', nargs=4, metavar=('A', 'B', 'C', 'D'))
    sub.add_argument('--length-bound', type=positive_real)
    sub.add_argument('--extra', action='append', default=[], help="extra candidate word")
    sub.add_argument('--curves', action='store_true', help="print the per curve table")
    sub.add_argument('--find-longer', action='store_true',
                     help="only look for a curve that is longer in the second surface")
    command('demo', _demo, "reproduce the worked examples")
    return parser


def run(argv, out=None):
    """Run one command.

    :returns: Exit code.
    :rtype: int
    """
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code
    level = [logging.WARNING, logging.INFO, logging.DEBUG][min(args.verbose, 2)]
    logging.basicConfig(level=level, stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        if args.threads is None:
            args.threads = utils.default_threads()
        if getattr(args, 'pair', None) is not None and len(args.pair) > 2:
            raise ValueError("--pair takes one family or two surfaces")
        return args.func(args, out)
    except NotFound as e:
        print("quadflat: {}".format(e), file=sys.stderr)
        return EXIT_NOT_FOUND
    except SurfaceError as e:
        print("quadflat: {}".format(e), file=sys.stderr)
        return EXIT_DOMAIN
    except ValueError as e:
        print("quadflat: {}".format(e), file=sys.stderr)
        return EXIT_USAGE
    except Exception as e:
        log.debug("command %s failed", args.command, exc_info=True)
        print("quadflat: internal error: {}".format(e), file=sys.stderr)
        return EXIT_DOMAIN


def main():
    sys.exit(run(sys.argv[1:]))
