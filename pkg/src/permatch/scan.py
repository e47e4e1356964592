"""
Scans over graph families: every labelled digraph on a few vertices, every balanced
bipartite graph with small parts, or seeded random samples. Each graph becomes a
:class:`SurveyRecord` and is run through the checkers that apply to its family.

Two kinds of outcome are kept apart. A failed report is a counterexample to a proved
statement. A graph whose ``(d/p)`` beats the extremal reference (``K_{n/2,n/2}`` for
even ``n``, ``K_n`` for odd ``n``) is only a *finding*, because that bound is open.

Indices are processed in fixed chunks merged in index order, so the output does not
depend on the number of workers.
"""
from collections import namedtuple
import csv
from fractions import Fraction
from io import open
import json
import logging
from math import factorial

from permatch.checkers.bipartite import check_theorem1, check_theorem6
from permatch.checkers.directed import check_injection, check_theorem3
from permatch.checkers.general import check_theorem2, intersecting_fraction
from permatch.counting import (
    complete_bipartite_ratio_bound,
    count_derangements,
    count_permutations,
    decimal_string,
)
from permatch.exc import BadParamsException, TooLargeException
from permatch.graphs.base import BipartiteGraph, Digraph
from permatch.graphs.utils import full_mask, hex_rows, popcount
from permatch.parallel import ordered_map
from permatch.random_models import ModelSpec, derangement_number, sample

logger = logging.getLogger(__name__)

FAMILIES = ('digraphs', 'bipartite', 'sampled-undirected', 'sampled-digraphs')
EXHAUSTIVE_MAX_N = {'digraphs': 4, 'bipartite': 4}
SAMPLED_MAX_N = 24
THEOREM2_SCAN_MAX_VERTICES = 12
INJECTION_SCAN_MAX_N = 5
CHUNK_SIZE = 256
KEPT_WITNESSES = 10
CSV_COLUMNS = ['n', 'arcs', 'adjacency_hex', 'derangements', 'permutations', 'ratio_exact', 'ratio_float']


class SurveyRecord(namedtuple('SurveyRecord', CSV_COLUMNS)):
    """
    One scanned graph. ``n`` and ``arcs`` count vertices and arcs of the digraph the
    ratio is computed on; ``adjacency_hex`` encodes the graph's own rows (biadjacency
    rows for bipartite graphs).
    """

    @classmethod
    def from_counts(cls, n, arcs, adjacency_hex, derangements, permutations):
        ratio = Fraction(derangements, permutations)
        return cls(n, arcs, adjacency_hex, derangements, permutations,
                   '{}/{}'.format(ratio.numerator, ratio.denominator), decimal_string(ratio))

    @property
    def ratio(self):
        return Fraction(self.ratio_exact)

    def to_json(self):
        return self._asdict()


class ScanSummary(namedtuple('ScanSummary', [
        'family', 'n', 'graphs', 'max_ratio', 'argmax', 'argmax_count', 'counterexamples', 'witnesses',
        'equalities', 'reference_ratio', 'findings', 'finding_examples', 'worst_intersecting_fraction'])):
    """
    Totals of a scan: the largest ratio and the graphs attaining it, failed reports
    (with the first few as witnesses), tight reports, conjecture findings against
    ``reference_ratio``, and the smallest share of perfect matchings meeting a fixed
    one (sampled undirected scans).
    """

    def to_json(self):
        data = self._asdict()
        for key in ('max_ratio', 'reference_ratio', 'worst_intersecting_fraction'):
            data[key] = None if data[key] is None else str(data[key])
        return data


ChunkResult = namedtuple('ChunkResult', ['records', 'failed', 'equalities', 'findings', 'worst_fraction'])


def reference_ratio(n):
    """
    The conjectured maximum of ``(d/p)`` over undirected graphs on ``n`` vertices.
    """
    if n % 2 == 0:
        return complete_bipartite_ratio_bound(n // 2)
    return Fraction(derangement_number(n), factorial(n))


def _graph_at(family, n, index, seed):
    if family == 'digraphs':
        slots = [(u, v) for u in range(n) for v in range(n) if u != v]
        rows = [0] * n
        for slot, (u, v) in enumerate(slots):
            if index >> slot & 1:
                rows[u] |= 1 << v
        return Digraph(n, rows)
    if family == 'bipartite':
        mask = full_mask(n)
        return BipartiteGraph(n, n, [index >> (row * n) & mask for row in range(n)])
    if family == 'sampled-undirected':
        return sample(ModelSpec.graph(n, Fraction(1, 2)), seed, index)
    return sample(ModelSpec.digraph(n, Fraction(1, 2)), seed, index)


def _matches_degree(graph, degree):
    if degree is None:
        return True
    if isinstance(graph, BipartiteGraph):
        columns = [sum(row >> right & 1 for row in graph.rows) for right in range(graph.n_right)]
        return all(popcount(row) == degree for row in graph.rows) and all(c == degree for c in columns)
    digraph = getattr(graph, 'digraph', graph)
    return all(popcount(line) == degree for line in digraph.rows + digraph.in_rows())


def _reports_for(family, graph):
    if family == 'bipartite':
        return check_theorem1(graph) + [check_theorem6(graph)]
    reports = [check_theorem3(graph)]
    if family == 'digraphs' or (family == 'sampled-digraphs' and graph.n <= INJECTION_SCAN_MAX_N):
        reports.append(check_injection(graph))
    if family == 'sampled-undirected' and graph.n % 2 == 0 and graph.n <= THEOREM2_SCAN_MAX_VERTICES:
        reports.extend(check_theorem2(graph))
    return reports


def _survey_chunk(args):
    family, n, start, stop, seed, degree, reference = args
    records = []
    failed = []
    equalities = 0
    findings = []
    worst = None
    for index in range(start, stop):
        graph = _graph_at(family, n, index, seed)
        if not _matches_degree(graph, degree):
            continue
        if isinstance(graph, BipartiteGraph):
            vertices, arcs, encoded = 2 * n, 2 * graph.edge_count, hex_rows(graph.rows, n)
        else:
            vertices, arcs, encoded = n, sum(popcount(row) for row in graph.rows), hex_rows(graph.rows, n)
        record = SurveyRecord.from_counts(vertices, arcs, encoded, count_derangements(graph),
                                          count_permutations(graph))
        records.append(record)
        reports = _reports_for(family, graph)
        for report in reports:
            if not report.holds:
                failed.append(report.to_json())
            elif report.equality:
                equalities += 1
        share = intersecting_fraction(reports)
        if share is not None:
            worst = share if worst is None else min(worst, share)
        if reference is not None and record.ratio > reference:
            findings.append(encoded)
    return ChunkResult(records, failed, equalities, findings, worst)


def _index_space(family, n, samples):
    if family in EXHAUSTIVE_MAX_N:
        if n > EXHAUSTIVE_MAX_N[family]:
            raise TooLargeException("exhaustive {} scans are capped at n = {}".format(
                family, EXHAUSTIVE_MAX_N[family]), EXHAUSTIVE_MAX_N[family])
        bits = n * (n - 1) if family == 'digraphs' else n * n
        return 1 << bits
    if n > SAMPLED_MAX_N:
        raise TooLargeException("sampled scans are capped at n = {}".format(SAMPLED_MAX_N), SAMPLED_MAX_N)
    if not samples or samples < 1:
        raise BadParamsException("sampled scans need a positive sample count")
    return samples


def scan(family, n, samples=None, seed=0, out=None, workers=1, fmt='csv', degree=None, progress=False):
    """
    Runs a scan and optionally streams its records to ``out``.

    :param family: one of ``digraphs``, ``bipartite`` (``n`` is the part size),
        ``sampled-undirected`` or ``sampled-digraphs``
    :param n: vertex count (part size for ``bipartite``)
    :param samples: sample count for the sampled families
    :param seed: the sampling seed
    :param out: path of the record file, or ``None``
    :param fmt: ``csv`` or ``jsonl``
    :param degree: keep only graphs whose in- and out-degrees all equal ``degree``
    :return: a :class:`ScanSummary`
    :raises TooLargeException: beyond the family's size cap
    """
    if family not in FAMILIES:
        raise BadParamsException("unknown family {!r}; expected one of {}".format(family, ', '.join(FAMILIES)))
    if fmt not in ('csv', 'jsonl'):
        raise BadParamsException("unknown record format {!r}".format(fmt))
    if n < 1:
        raise BadParamsException("n must be positive, got {}".format(n))
    total = _index_space(family, n, samples)
    reference = reference_ratio(n) if family == 'sampled-undirected' else None
    items = [(family, n, start, min(start + CHUNK_SIZE, total), seed, degree, reference)
             for start in range(0, total, CHUNK_SIZE)]
    logger.info("scanning %d %s (n=%d) in %d chunks", total, family, n, len(items))

    graphs = counterexamples = equalities = findings = argmax_count = 0
    witnesses = []
    finding_examples = []
    max_ratio = argmax = worst = None
    writer = None
    handle = open(out, 'w', encoding='utf8', newline='') if out else None
    try:
        if handle is not None and fmt == 'csv':
            writer = csv.writer(handle, lineterminator='\n')
            writer.writerow(CSV_COLUMNS)
        for chunk in ordered_map(_survey_chunk, items, workers, progress=progress, desc=family):
            for record in chunk.records:
                graphs += 1
                if max_ratio is None or record.ratio > max_ratio:
                    max_ratio, argmax, argmax_count = record.ratio, record.adjacency_hex, 1
                elif record.ratio == max_ratio:
                    argmax_count += 1
                if writer is not None:
                    writer.writerow(list(record))
                elif handle is not None:
                    handle.write(json.dumps(record.to_json()) + '\n')
            counterexamples += len(chunk.failed)
            witnesses.extend(chunk.failed[:KEPT_WITNESSES - len(witnesses)])
            equalities += chunk.equalities
            findings += len(chunk.findings)
            finding_examples.extend(chunk.findings[:KEPT_WITNESSES - len(finding_examples)])
            if chunk.worst_fraction is not None:
                worst = chunk.worst_fraction if worst is None else min(worst, chunk.worst_fraction)
    finally:
        if handle is not None:
            handle.close()

    if counterexamples:
        logger.warning("%d counterexamples in %s scan (n=%d)", counterexamples, family, n)
    if findings:
        logger.warning("%d graphs beat the reference ratio %s", findings, reference)
    logger.info("scanned %d graphs, max ratio %s", graphs, max_ratio)
    return ScanSummary(family, n, graphs, max_ratio, argmax, argmax_count, counterexamples, witnesses,
                       equalities, reference, findings, finding_examples, worst)
