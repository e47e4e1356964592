import csv
from fractions import Fraction
from io import open
import json

import pytest

from permatch.exc import BadParamsException, TooLargeException
from permatch.scan import CSV_COLUMNS, SurveyRecord, reference_ratio, scan


def test_all_digraphs_on_three_vertices():
    summary = scan('digraphs', 3)
    assert summary.graphs == 64
    assert summary.max_ratio == Fraction(1, 2)
    assert summary.argmax == '2-4-1'
    assert summary.argmax_count == 2
    assert summary.counterexamples == 0
    assert summary.witnesses == []
    assert summary.equalities >= 2
    assert summary.reference_ratio is None


def test_all_bipartite_graphs_with_parts_of_two():
    summary = scan('bipartite', 2)
    assert summary.graphs == 16
    assert summary.max_ratio == Fraction(4, 9)
    assert summary.argmax == '3-3'
    assert summary.argmax_count == 1
    assert summary.counterexamples == 0


def test_degree_filter():
    summary = scan('digraphs', 3, degree=1)
    assert summary.graphs == 2
    assert summary.max_ratio == Fraction(1, 2)


def test_sampled_undirected():
    summary = scan('sampled-undirected', 4, samples=30, seed=1)
    assert summary.graphs == 30
    assert summary.reference_ratio == Fraction(4, 9)
    assert summary.findings == 0
    assert summary.max_ratio <= Fraction(4, 9)
    assert summary.counterexamples == 0


def test_sampled_scans_are_reproducible():
    first = scan('sampled-digraphs', 5, samples=300, seed=4, workers=1)
    second = scan('sampled-digraphs', 5, samples=300, seed=4, workers=2)
    assert first.to_json() == second.to_json()


@pytest.mark.parametrize('n,expected', [
    (2, Fraction(1, 2)),
    (3, Fraction(1, 3)),
    (4, Fraction(4, 9)),
    (5, Fraction(11, 30)),
])
def test_reference_ratio(n, expected):
    assert reference_ratio(n) == expected


def test_survey_record():
    record = SurveyRecord.from_counts(4, 8, '3-3', 4, 9)
    assert record.ratio_exact == '4/9'
    assert record.ratio_float == '0.444444444444'
    assert record.ratio == Fraction(4, 9)
    assert list(record.to_json()) == CSV_COLUMNS


def test_csv_output(tmpdir):
    path = str(tmpdir.join('digraphs.csv'))
    summary = scan('digraphs', 2, out=path)
    with open(path, 'r', encoding='utf8') as records_file:
        rows = list(csv.reader(records_file))
    assert rows[0] == CSV_COLUMNS
    assert len(rows) == summary.graphs + 1 == 5
    assert rows[-1] == ['2', '2', '2-1', '1', '2', '1/2', '0.500000000000']


def test_jsonl_output(tmpdir):
    path = str(tmpdir.join('bipartite.jsonl'))
    scan('bipartite', 1, out=path, fmt='jsonl')
    with open(path, 'r', encoding='utf8') as records_file:
        records = [json.loads(line) for line in records_file]
    assert [record['ratio_exact'] for record in records] == ['0/1', '1/2']
    assert records[1]['n'] == 2
    assert records[1]['arcs'] == 2


def test_summary_json():
    data = scan('digraphs', 3).to_json()
    assert data['max_ratio'] == '1/2'
    assert data['worst_intersecting_fraction'] is None
    json.dumps(data)


@pytest.mark.parametrize('args,kwargs,error', [
    (('digraphs', 5), {}, TooLargeException),
    (('bipartite', 5), {}, TooLargeException),
    (('sampled-digraphs', 25), {'samples': 1}, TooLargeException),
    (('sampled-digraphs', 4), {}, BadParamsException),
    (('trees', 4), {}, BadParamsException),
    (('digraphs', 3), {'fmt': 'xml'}, BadParamsException),
    (('digraphs', 0), {}, BadParamsException),
])
def test_errors(args, kwargs, error):
    with pytest.raises(error):
        scan(*args, **kwargs)


@pytest.mark.slow
def test_all_digraphs_on_four_vertices():
    summary = scan('digraphs', 4, workers=2)
    assert summary.graphs == 4096
    assert summary.max_ratio == Fraction(1, 2)
    assert summary.argmax_count == 6
    assert summary.counterexamples == 0


def test_all_bipartite_graphs_with_parts_of_three():
    summary = scan('bipartite', 3)
    assert summary.graphs == 512
    assert summary.max_ratio == Fraction(18, 41)
    assert summary.argmax_count == 1
    assert summary.counterexamples == 0


@pytest.mark.slow
def test_sampled_undirected_on_ten_vertices():
    summary = scan('sampled-undirected', 10, samples=200, seed=0, workers=2)
    assert summary.counterexamples == 0
    assert summary.worst_intersecting_fraction is not None


@pytest.mark.slow
def test_all_bipartite_graphs_with_parts_of_four():
    summary = scan('bipartite', 4, workers=4)
    assert summary.graphs == 65536
    assert summary.counterexamples == 0
    assert summary.witnesses == []
