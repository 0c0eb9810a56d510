import pytest
from typer.testing import CliRunner

from pyintertwine.cli import app, run_command
from pyintertwine.constructions import contract
from pyintertwine.document import read_document, write_document, parse_report, serialize
from pyintertwine.fixtures import uniform, mk4, fixture

runner = CliRunner()


@pytest.fixture
def pair_files(tmp_path, u_pair):
    m1, m2 = u_pair
    first, second = str(tmp_path / 'm1.txt'), str(tmp_path / 'm2.txt')
    write_document(m1, first)
    write_document(m2, second)
    return first, second


def test_construct_and_verify(tmp_path, pair_files, flagship):
    first, second = pair_files
    construction = str(tmp_path / 'construction.txt')
    result = runner.invoke(app, ['construct', first, second, '--k', '5', '-o', construction])
    assert result.exit_code == 0
    assert 'k_bound' in result.output
    assert read_document(construction) == flagship

    report_path = str(tmp_path / 'report.txt')
    result = runner.invoke(app, ['verify', construction, first, second, '--labelled', '-o', report_path])
    assert result.exit_code == 0
    with open(report_path) as f:
        report = parse_report(f.read())
    assert report.verdict
    assert set(report.witnesses) == {'m1', 'm2'}

    result = runner.invoke(app, ['verify', construction, first, second, '--replay', report_path])
    assert result.exit_code == 0
    replayed = parse_report(result.output)
    assert replayed.details == {'m1': 'ok', 'm2': 'ok'}


def test_construct_errors(pair_files):
    first, second = pair_files
    result = runner.invoke(app, ['construct', first, second, '--k', '4'])
    assert result.exit_code == 2
    assert 'error:' in result.output
    result = runner.invoke(app, ['construct', first, first, '--k', '8'])
    assert result.exit_code == 2
    result = runner.invoke(app, ['verify', 'mk4', first, second, '--labelled'])
    assert result.exit_code == 2
    assert 'labelled intertwine check' in result.output


def test_verify_false_verdict():
    result = runner.invoke(app, ['verify', 'mk4', 'uniform(2,3)', 'uniform(1,2)'])
    assert result.exit_code == 1
    report = parse_report(result.output)
    assert not report.verdict
    assert report.details['counterexample'] == 'delete ab'


def test_checks(tmp_path):
    result = runner.invoke(app, ['check', 'transversal', 'mk4'])
    assert result.exit_code == 1
    assert 'detail.deficit: -1' in result.output

    result = runner.invoke(app, ['check', 'connectivity', 'uniform(2,4)'])
    assert result.exit_code == 0
    assert 'detail.lambda: none' in result.output

    result = runner.invoke(app, ['check', 'circuit-hyperplanes', 'whirl3'])
    assert result.exit_code == 0
    assert 'counter.circuit_hyperplanes: 3' in result.output

    bad = tmp_path / 'bad.txt'
    bad.write_text('ground: a b c d\nflat: 0 |\nflat: 1 | a b\nflat: 1 | c d\nend\n')
    result = runner.invoke(app, ['check', 'axioms', str(bad)])
    assert result.exit_code == 1
    assert 'detail.axiom: Z0' in result.output

    result = runner.invoke(app, ['check', 'axioms', '-'], input=serialize(mk4()))
    assert result.exit_code == 0

    result = runner.invoke(app, ['check', 'axioms', 'nosuch'])
    assert result.exit_code == 2
    assert 'neither a document file' in result.output


def test_operations(tmp_path):
    output = str(tmp_path / 'out.txt')
    result = runner.invoke(app, ['op', 'dual', 'uniform(1,3)', '-o', output])
    assert result.exit_code == 0
    assert read_document(output) == uniform(2, 3)

    result = runner.invoke(app, ['op', 'minor', 'mk4', '--contract', 'ab', '-o', output])
    assert result.exit_code == 0
    assert read_document(output) == contract(mk4(), ['ab'])

    result = runner.invoke(app, ['op', 'truncate', 'uniform(3,6)', '--i', '1', '-o', output])
    assert result.exit_code == 0
    assert read_document(output) == uniform(2, 6)

    assert runner.invoke(app, ['op', 'sum', 'mk4']).exit_code == 2
    result = runner.invoke(app, ['op', 'extend', 'uniform(2,3)', '--labels', 'e1'])
    assert result.exit_code == 2
    assert 'collision' in result.output


def test_iso_catalog_and_closure():
    assert runner.invoke(app, ['iso', 'mk4', 'whirl3']).exit_code == 1
    result = runner.invoke(app, ['iso', 'uniform(2,4)', 'uniform(2,4)'])
    assert result.exit_code == 0
    assert 'detail.map:' in result.output

    result = runner.invoke(app, ['catalog', '--id', 'mk4'])
    assert result.exit_code == 0
    assert result.output == serialize(fixture('mk4'))

    result = runner.invoke(app, ['closure', 'uniform(1,2)', '--cap', '3'])
    assert result.exit_code == 0
    assert parse_report(result.output).counters['classes'] > 1
    assert runner.invoke(app, ['closure', 'uniform(1,2)', '--cap', '3', '--target', 'uniform(2,3)']).exit_code == 0
    assert runner.invoke(app, ['closure', 'uniform(1,2)', '--cap', '13']).exit_code == 2


def test_summary():
    result = runner.invoke(app, ['summary', 'whirl3'])
    assert result.exit_code == 0
    assert 'Number of cyclic flats' in result.output


def test_run_command_exit_codes():
    assert run_command(['iso', 'mk4', 'mk4']) == 0
    assert run_command(['iso', 'mk4', 'whirl3']) == 1
    assert run_command(['op', 'sum', 'mk4']) == 2
    assert run_command(['check', 'axioms', 'nosuch']) == 2
    assert run_command(['nosuchcommand']) == 2
