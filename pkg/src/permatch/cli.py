"""
The ``permatch`` command.

Exit codes: 0 on success (including checks that hold), 1 when a proved statement
fails on the input, 2 for usage errors and inputs beyond a size cap, 3 when an input
file cannot be read or parsed.
"""
import argparse
import json
import logging
import sys

from permatch.checkers.matrix import BlowupParams
from permatch.counting import (
    Permutation,
    count_derangements,
    count_perfect_matchings,
    count_perfect_matchings_general,
    count_permutations,
    decimal_string,
    dp_ratio,
    format_ratio,
    permutations_by_fixed_points,
)
from permatch.default import DefaultTheoremVerifier
from permatch.exc import (
    BadParamsException,
    CounterexampleException,
    NotInImageException,
    PermatchException,
    VerificationException,
)
from permatch.graphs.base import BipartiteGraph, UndirectedGraph
from permatch.graphs.constructions import construct
from permatch.graphs.io import read_graph, serialize_graph, write_graph
from permatch.injection import apply_injection, invert_injection
from permatch.parallel import THREADS_ENV, default_workers
from permatch.random_models import ModelSpec, expected_counts_dgnm, inclusion_probability_f, mc_dp_ratio
from permatch.scan import FAMILIES, scan

logger = logging.getLogger('permatch')

EXIT_OK = 0
EXIT_COUNTEREXAMPLE = 1
EXIT_USAGE = 2
EXIT_INPUT = 3

THEOREMS = ['1', '2', '3', '6', 'injection', 'blowup', 'subpermanent', 'corollary', 'bounds']
COUNT_TARGETS = ['derangements', 'permutations', 'matchings', 'ratio', 'fixed-points']
CONSTRUCTION_KINDS = ['cycle', 'complete', 'complete-bipartite', 'blowup', 'thm2h']


class InputError(PermatchException):
    """
    An input file that could not be read or parsed.
    """
    pass


def _load(path):
    try:
        return read_graph(path)
    except OSError as exc:
        raise InputError("cannot read {}: {}".format(path, exc.strerror or exc))
    except PermatchException as exc:
        raise InputError("{}: {}".format(path, exc))


def _ratio_json(ratio):
    return {'exact': '{}/{}'.format(ratio.numerator, ratio.denominator), 'decimal': decimal_string(ratio)}


def _count(args):
    graph = _load(args.input)
    workers = args.threads
    if args.what == 'derangements':
        value = count_derangements(graph, workers)
    elif args.what == 'permutations':
        value = count_permutations(graph, workers)
    elif args.what == 'matchings':
        if isinstance(graph, BipartiteGraph):
            value = count_perfect_matchings(graph, workers)
        elif isinstance(graph, UndirectedGraph):
            value = count_perfect_matchings_general(graph)
        else:
            raise BadParamsException("matchings need an undirected or bipartite graph")
    elif args.what == 'ratio':
        ratio = dp_ratio(graph, workers)
        data = dict(what='ratio', value=format_ratio(ratio), **_ratio_json(ratio))
        return data, format_ratio(ratio), EXIT_OK
    else:
        value = permutations_by_fixed_points(graph)
        return {'what': args.what, 'value': value}, ','.join(map(str, value)), EXIT_OK
    return {'what': args.what, 'value': value}, str(value), EXIT_OK


def _construct(args):
    if args.kind == 'blowup':
        if args.k is None or args.l is None:
            raise BadParamsException("blowup needs --k and --l")
        graph = construct(args.kind, k=args.k, l=args.l)
    else:
        if args.n is None:
            raise BadParamsException("{} needs --n".format(args.kind))
        graph = construct(args.kind, n=args.n)
    text = serialize_graph(graph, args.format)
    if args.out:
        try:
            write_graph(graph, args.out, args.format)
        except OSError as exc:
            raise InputError("cannot write {}: {}".format(args.out, exc.strerror or exc))
    data = {'kind': args.kind, 'type': graph.kind, 'n': graph.n, 'out': args.out}
    return data, None if args.out else text.rstrip('\n'), EXIT_OK


def _inject(args):
    graph = _load(args.input)
    permutation = Permutation.parse(args.perm)
    data = {'vertex': args.vertex, 'perm': str(permutation), 'invert': args.invert}
    if args.invert:
        try:
            result = invert_injection(graph, permutation, args.vertex)
        except NotInImageException:
            data.update(in_image=False, result=None)
            return data, 'not in image', EXIT_OK
    else:
        result = apply_injection(graph, permutation, args.vertex)
    data.update(in_image=True, result=str(result))
    return data, str(result), EXIT_OK


def _verify(args):
    verifier = DefaultTheoremVerifier(workers=args.threads)
    if args.theorem == 'blowup':
        if args.k is None or args.l is None:
            raise BadParamsException("the blowup check needs --k and --l")
        instance = BlowupParams(args.k, args.l)
    else:
        if not args.input:
            raise BadParamsException("theorem {} needs --input".format(args.theorem))
        instance = _load(args.input)
    reports = verifier.verify_theorem(args.theorem, instance)
    holds = all(report.holds for report in reports)
    lines = ['{} {}: {}'.format(report.theorem, report.status, report.instance) for report in reports]
    if not reports:
        lines = ['nothing to check (no perfect matchings)']
    data = {'theorem': args.theorem, 'holds': holds, 'reports': [report.to_json() for report in reports]}
    return data, '\n'.join(lines), EXIT_OK if holds else EXIT_COUNTEREXAMPLE


def _scan(args):
    summary = scan(args.family, args.n, samples=args.samples, seed=args.seed, out=args.out,
                   workers=args.threads, fmt=args.format, degree=args.degree, progress=args.progress)
    data = summary.to_json()
    if args.summary:
        try:
            with open(args.summary, 'w', encoding='utf8') as summary_file:
                summary_file.write(json.dumps(data, sort_keys=True, indent=2) + '\n')
        except OSError as exc:
            raise InputError("cannot write {}: {}".format(args.summary, exc.strerror or exc))
    lines = [
        'graphs: {}'.format(summary.graphs),
        'max ratio: {}'.format('-' if summary.max_ratio is None else format_ratio(summary.max_ratio)),
        'attained by: {} ({} graphs)'.format(summary.argmax, summary.argmax_count),
        'counterexamples: {}'.format(summary.counterexamples),
        'equality cases: {}'.format(summary.equalities),
    ]
    if summary.reference_ratio is not None:
        lines.append('findings above {}: {}'.format(format_ratio(summary.reference_ratio), summary.findings))
    if summary.worst_intersecting_fraction is not None:
        lines.append('worst intersecting fraction: {}'.format(format_ratio(summary.worst_intersecting_fraction)))
    return data, '\n'.join(lines), EXIT_COUNTEREXAMPLE if summary.counterexamples else EXIT_OK


def _mc(args):
    kind = args.model.replace('-', '_')
    if kind == 'digraph_fixed_arcs':
        model = ModelSpec(kind, args.n, m=args.m)
    else:
        model = ModelSpec(kind, args.n, q=args.q)
    summary = mc_dp_ratio(model, args.samples, seed=args.seed, workers=args.threads, progress=args.progress)
    data = summary.to_json()
    text = 'mean {} stddev {:.6g} target {:.6g} over {} samples'.format(
        decimal_string(summary.mean), summary.stddev, summary.target, summary.samples)
    return data, text, EXIT_OK


def _expect(args):
    f_n = inclusion_probability_f(args.n, args.m, args.n)
    derangements, permutations = expected_counts_dgnm(args.n, args.m)
    data = {
        'n': args.n,
        'm': args.m,
        'f': _ratio_json(f_n),
        'ex_derangements': _ratio_json(derangements),
        'ex_permutations': _ratio_json(permutations),
    }
    text = '\n'.join([
        'f(n) = {}'.format(format_ratio(f_n)),
        'E[X] = {}'.format(format_ratio(derangements)),
        'E[Y] = {}'.format(format_ratio(permutations)),
    ])
    return data, text, EXIT_OK


def _threads(value):
    try:
        threads = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError("expected a positive integer, got {!r}".format(value))
    if threads < 1:
        raise argparse.ArgumentTypeError("expected a positive integer, got {!r}".format(value))
    return threads


def build_parser(default_threads=1):
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--json', action='store_true', help="print JSON instead of text")
    common.add_argument('--threads', type=_threads, default=default_threads,
                        help="worker processes (default: ${} or 1)".format(THREADS_ENV))
    common.add_argument('-v', '--verbose', action='count', default=0, help="-v for progress, -vv for detail")

    parser = argparse.ArgumentParser(prog='permatch', description="Exact counts of derangements, permutations "
                                     "and perfect matchings on graphs, and checks of the bounds relating them.")
    commands = parser.add_subparsers(dest='command', metavar='command')
    commands.required = True

    count = commands.add_parser('count', parents=[common], help="count derangements, permutations, matchings")
    count.add_argument('--input', required=True)
    count.add_argument('--what', required=True, choices=COUNT_TARGETS)
    count.set_defaults(handler=_count)

    build = commands.add_parser('construct', parents=[common], help="write a named graph")
    build.add_argument('--kind', required=True, choices=CONSTRUCTION_KINDS)
    build.add_argument('--n', type=int)
    build.add_argument('--k', type=int)
    build.add_argument('--l', type=int)
    build.add_argument('--out')
    build.add_argument('--format', choices=['text', 'json'], default='text')
    build.set_defaults(handler=_construct)

    inject = commands.add_parser('inject', parents=[common], help="map a derangement (or invert the map)")
    inject.add_argument('--input', required=True)
    inject.add_argument('--vertex', type=int, required=True)
    inject.add_argument('--perm', required=True)
    inject.add_argument('--invert', action='store_true')
    inject.set_defaults(handler=_inject)

    verify = commands.add_parser('verify', parents=[common], help="check a statement on a graph")
    verify.add_argument('--theorem', required=True, choices=THEOREMS)
    verify.add_argument('--input')
    verify.add_argument('--k', type=int)
    verify.add_argument('--l', type=int)
    verify.set_defaults(handler=_verify)

    survey = commands.add_parser('scan', parents=[common], help="scan a graph family")
    survey.add_argument('--family', required=True, choices=FAMILIES)
    survey.add_argument('--n', type=int, required=True)
    survey.add_argument('--samples', type=int)
    survey.add_argument('--seed', type=int, default=0)
    survey.add_argument('--out')
    survey.add_argument('--format', choices=['csv', 'jsonl'], default='csv')
    survey.add_argument('--degree', type=int)
    survey.add_argument('--summary', help="also write the summary JSON here")
    survey.add_argument('--progress', action='store_true')
    survey.set_defaults(handler=_scan)

    mc = commands.add_parser('mc', parents=[common], help="Monte Carlo mean of d/p")
    mc.add_argument('--model', required=True, choices=['graph', 'digraph', 'digraph-fixed-arcs'])
    mc.add_argument('--n', type=int, required=True)
    mc.add_argument('--q', default=None)
    mc.add_argument('--m', type=int)
    mc.add_argument('--samples', type=int, required=True)
    mc.add_argument('--seed', type=int, default=0)
    mc.add_argument('--progress', action='store_true')
    mc.set_defaults(handler=_mc)

    expect = commands.add_parser('expect', parents=[common], help="exact expectations for m-arc digraphs")
    expect.add_argument('--n', type=int, required=True)
    expect.add_argument('--m', type=int, required=True)
    expect.set_defaults(handler=_expect)
    return parser


def _configure_logging(verbosity):
    level = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity > 1:
        level = logging.DEBUG
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter('%(levelname)s %(name)s: %(message)s'))
    logger.handlers[:] = [handler]
    logger.setLevel(level)


def _fail(message, code):
    sys.stderr.write('permatch: error: {}\n'.format(message))
    return code


def main(argv=None):
    """
    Runs the command line and returns the exit code.

    :param argv: the arguments (``sys.argv[1:]`` by default)
    """
    try:
        default_threads = default_workers()
    except BadParamsException as exc:
        return _fail(exc, EXIT_USAGE)
    parser = build_parser(default_threads)
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code
    _configure_logging(args.verbose)

    try:
        data, text, code = args.handler(args)
    except VerificationException as exc:
        cause = exc.__cause__
        if isinstance(cause, CounterexampleException):
            return _fail(cause, EXIT_COUNTEREXAMPLE)
        return _fail(cause or exc, EXIT_USAGE)
    except CounterexampleException as exc:
        return _fail(exc, EXIT_COUNTEREXAMPLE)
    except InputError as exc:
        return _fail(exc, EXIT_INPUT)
    except PermatchException as exc:
        return _fail(exc, EXIT_USAGE)

    if args.json:
        sys.stdout.write(json.dumps(data, sort_keys=True) + '\n')
    elif text is not None:
        sys.stdout.write(text + '\n')
    return code


def run():
    sys.exit(main())


if __name__ == '__main__':
    run()
