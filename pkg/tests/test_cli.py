from io import open
import json

from jsonschema import validate
import pytest

from permatch.checkers import directed
from permatch.cli import EXIT_COUNTEREXAMPLE, EXIT_INPUT, EXIT_OK, EXIT_USAGE, main
from permatch.parallel import THREADS_ENV


def run_json(capsys, get_schema, schema, argv):
    code = main(argv + ['--json'])
    data = json.loads(capsys.readouterr().out)
    validate(data, get_schema(schema))
    return code, data


@pytest.mark.parametrize('file_name,what,expected', [
    ('cycle5.txt', 'ratio', '1/2 (0.500000000000)'),
    ('cycle5.txt', 'derangements', '1'),
    ('k22.txt', 'permutations', '9'),
    ('k22.txt', 'matchings', '2'),
    ('c4.txt', 'matchings', '2'),
    ('k22.txt', 'fixed-points', '4,0,4,0,1'),
    ('k4.json', 'derangements', '9'),
])
def test_count(file_name, what, expected, fixture_path, capsys):
    assert main(['count', '--input', fixture_path(file_name), '--what', what]) == EXIT_OK
    assert capsys.readouterr().out == expected + '\n'


@pytest.mark.parametrize('what', ['derangements', 'ratio', 'fixed-points'])
def test_count_json(what, fixture_path, capsys, get_schema):
    code, data = run_json(capsys, get_schema, 'count', ['count', '--input', fixture_path('k22.txt'), '--what', what])
    assert code == EXIT_OK
    assert data['what'] == what
    if what == 'ratio':
        assert data['exact'] == '4/9'
        assert data['decimal'] == '0.444444444444'


def test_count_matchings_of_a_digraph(fixture_path, capsys):
    assert main(['count', '--input', fixture_path('cycle5.txt'), '--what', 'matchings']) == EXIT_USAGE
    assert 'permatch: error:' in capsys.readouterr().err


@pytest.mark.parametrize('file_name', ['broken.txt', 'missing.txt'])
def test_unreadable_input(file_name, fixture_path, capsys):
    assert main(['count', '--input', fixture_path(file_name), '--what', 'ratio']) == EXIT_INPUT
    assert capsys.readouterr().err.startswith('permatch: error: ')


@pytest.mark.parametrize('header', ['digraph 0', 'digraph 65', 'bipartite 0 2'])
def test_bad_header(header, tmpdir, capsys):
    path = str(tmpdir.join('bad.txt'))
    with open(path, 'w', encoding='utf8') as graph_file:
        graph_file.write(header + '\n')
    assert main(['count', '--input', path, '--what', 'ratio']) == EXIT_INPUT
    assert capsys.readouterr().err.startswith('permatch: error: ')


def test_construct_then_count(tmpdir, capsys):
    path = str(tmpdir.join('d25.txt'))
    assert main(['construct', '--kind', 'blowup', '--k', '2', '--l', '5', '--out', path]) == EXIT_OK
    assert capsys.readouterr().out == ''
    assert main(['count', '--input', path, '--what', 'derangements']) == EXIT_OK
    assert capsys.readouterr().out == '32\n'
    assert main(['count', '--input', path, '--what', 'permutations']) == EXIT_OK
    assert capsys.readouterr().out == '65\n'


def test_construct_prints(capsys):
    assert main(['construct', '--kind', 'cycle', '--n', '3']) == EXIT_OK
    assert capsys.readouterr().out == 'digraph 3\n0 1\n1 2\n2 0\n'


def test_construct_json(tmpdir, capsys, get_schema):
    path = str(tmpdir.join('h.json'))
    code, data = run_json(capsys, get_schema, 'construct',
                          ['construct', '--kind', 'thm2h', '--n', '2', '--out', path, '--format', 'json'])
    assert code == EXIT_OK
    assert data == {'kind': 'thm2h', 'type': 'graph', 'n': 8, 'out': path}
    with open(path, 'r', encoding='utf8') as graph_file:
        assert json.load(graph_file)['type'] == 'graph'


@pytest.mark.parametrize('argv', [
    ['construct', '--kind', 'blowup', '--k', '2'],
    ['construct', '--kind', 'cycle'],
    ['construct', '--kind', 'cycle', '--n', '1'],
])
def test_construct_errors(argv, capsys):
    assert main(argv) == EXIT_USAGE


def test_inject(fixture_path, capsys):
    figure2 = fixture_path('figure2.txt')
    assert main(['inject', '--input', figure2, '--vertex', '0', '--perm', '1,2,3,4,5,6,7,0']) == EXIT_OK
    assert capsys.readouterr().out == '1,4,2,3,5,6,7,0\n'
    assert main(['inject', '--input', figure2, '--vertex', '0', '--perm', '1,4,2,3,5,6,7,0', '--invert']) == EXIT_OK
    assert capsys.readouterr().out == '1,2,3,4,5,6,7,0\n'


def test_not_in_image(fixture_path, capsys, get_schema):
    argv = ['inject', '--input', fixture_path('figure2.txt'), '--vertex', '0', '--perm', '0,1,2,3,4,5,6,7', '--invert']
    assert main(argv) == EXIT_OK
    assert capsys.readouterr().out == 'not in image\n'
    code, data = run_json(capsys, get_schema, 'inject', argv)
    assert code == EXIT_OK
    assert data['in_image'] is False
    assert data['result'] is None


def test_inject_needs_a_derangement(fixture_path, capsys):
    argv = ['inject', '--input', fixture_path('cycle5.txt'), '--vertex', '0', '--perm', '0,1,2,3,4']
    assert main(argv) == EXIT_USAGE


@pytest.mark.parametrize('vertex', ['7', '-1'])
@pytest.mark.parametrize('invert', [[], ['--invert']])
def test_inject_vertex_out_of_range(vertex, invert, fixture_path, capsys):
    argv = ['inject', '--input', fixture_path('cycle5.txt'), '--vertex', vertex, '--perm']
    argv += ['1,2,3,4,0'] if not invert else ['0,2,3,4,1']
    assert main(argv + invert) == EXIT_USAGE
    assert 'outside [0, 5)' in capsys.readouterr().err


def test_verify(fixture_path, capsys):
    assert main(['verify', '--theorem', '3', '--input', fixture_path('cycle5.txt')]) == EXIT_OK
    assert capsys.readouterr().out == 'theorem3 holds (equality): digraph n=5 02-04-08-10-01\n'


@pytest.mark.parametrize('argv', [
    ['verify', '--theorem', '1'],
    ['verify', '--theorem', '6'],
    ['verify', '--theorem', 'subpermanent'],
    ['verify', '--theorem', 'bounds'],
])
def test_verify_json(argv, fixture_path, capsys, get_schema):
    code, data = run_json(capsys, get_schema, 'verify', argv + ['--input', fixture_path('k22.txt')])
    assert code == EXIT_OK
    assert data['holds']
    assert data['reports']


def test_verify_blowup(capsys):
    assert main(['verify', '--theorem', 'blowup', '--k', '2', '--l', '5']) == EXIT_OK
    assert capsys.readouterr().out == 'blowup holds (strict): blowup k=2 l=5\n'


def test_verify_nothing_to_check(tmpdir, capsys):
    path = str(tmpdir.join('path.txt'))
    with open(path, 'w', encoding='utf8') as graph_file:
        graph_file.write('graph 3\n0 1\n1 2\n')
    assert main(['verify', '--theorem', '2', '--input', path]) == EXIT_OK
    assert capsys.readouterr().out == 'nothing to check (no perfect matchings)\n'


@pytest.mark.parametrize('argv', [
    ['verify', '--theorem', '1', '--input', 'c4.txt'],
    ['verify', '--theorem', 'injection', '--input', 'figure2.txt'],
    ['verify', '--theorem', '3'],
    ['verify', '--theorem', 'blowup', '--k', '2'],
])
def test_verify_errors(argv, fixture_path, capsys):
    argv = [fixture_path(arg) if arg.endswith('.txt') else arg for arg in argv]
    assert main(argv) == EXIT_USAGE


def test_scan(capsys, get_schema, tmpdir):
    summary_path = str(tmpdir.join('summary.json'))
    code, data = run_json(capsys, get_schema, 'scan',
                          ['scan', '--family', 'digraphs', '--n', '3', '--summary', summary_path])
    assert code == EXIT_OK
    assert data['max_ratio'] == '1/2'
    assert data['argmax_count'] == 2
    with open(summary_path, 'r', encoding='utf8') as summary_file:
        assert json.load(summary_file) == data


def test_scan_text(capsys, tmpdir):
    path = str(tmpdir.join('records.csv'))
    assert main(['scan', '--family', 'bipartite', '--n', '2', '--out', path]) == EXIT_OK
    out = capsys.readouterr().out
    assert 'graphs: 16\n' in out
    assert 'max ratio: 4/9 (0.444444444444)\n' in out
    assert 'counterexamples: 0\n' in out


def test_scan_too_large(capsys):
    assert main(['scan', '--family', 'digraphs', '--n', '6']) == EXIT_USAGE


@pytest.mark.parametrize('argv', [
    ['mc', '--model', 'digraph', '--n', '5', '--q', '0.5', '--samples', '4'],
    ['mc', '--model', 'graph', '--n', '6', '--q', '1/3', '--samples', '3', '--seed', '2'],
    ['mc', '--model', 'digraph-fixed-arcs', '--n', '5', '--m', '10', '--samples', '4'],
])
def test_mc(argv, capsys, get_schema):
    code, data = run_json(capsys, get_schema, 'mc', argv)
    assert code == EXIT_OK
    assert data['samples'] == int(argv[argv.index('--samples') + 1])


def test_mc_needs_q(capsys):
    assert main(['mc', '--model', 'digraph', '--n', '5', '--samples', '4']) == EXIT_USAGE


def test_expect(capsys, get_schema):
    assert main(['expect', '--n', '4', '--m', '6']) == EXIT_OK
    assert capsys.readouterr().out == (
        'f(n) = 1/33 (0.0303030303030)\n'
        'E[X] = 3/11 (0.272727272727)\n'
        'E[Y] = 37/11 (3.36363636364)\n'
    )
    code, data = run_json(capsys, get_schema, 'expect', ['expect', '--n', '4', '--m', '6'])
    assert code == EXIT_OK
    assert data['f'] == {'exact': '1/33', 'decimal': '0.0303030303030'}


def test_expect_bad_m(capsys):
    assert main(['expect', '--n', '4', '--m', '13']) == EXIT_USAGE


@pytest.mark.parametrize('argv', [
    [],
    ['frobnicate'],
    ['count', '--what', 'ratio'],
    ['expect', '--n', '4', '--m', '6', '--threads', '0'],
])
def test_usage(argv, capsys):
    assert main(argv) == EXIT_USAGE


def test_help(capsys):
    assert main(['--help']) == EXIT_OK
    assert 'permatch' in capsys.readouterr().out


def test_threads_env(monkeypatch, capsys):
    monkeypatch.setenv(THREADS_ENV, 'many')
    assert main(['expect', '--n', '4', '--m', '6']) == EXIT_USAGE
    monkeypatch.setenv(THREADS_ENV, '2')
    assert main(['expect', '--n', '4', '--m', '6']) == EXIT_OK


def test_counterexample_exit_code(monkeypatch, fixture_path, capsys):
    def broken(graph, workers=1):
        return directed.new_report('theorem3', 'forced', False, details={'ratio': '1'})

    monkeypatch.setattr(directed, 'check_theorem3', broken)
    assert main(['verify', '--theorem', '3', '--input', fixture_path('cycle5.txt')]) == EXIT_COUNTEREXAMPLE
