import io
import json

import pytest

import config
from cli_handler import OutputEnvelope, parse_range, run


def _run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def _json(*argv):
    code, out, _ = _run(*argv, '--format', 'json')
    return code, json.loads(out)


def _rows(data, *keys):
    return [tuple(row[k] for k in keys) for row in data['payload']['rows']]


def test_pell_rows():
    code, data = _json('pell', '2', '--count', '3')
    assert code == 0
    assert _rows(data, 'u', 'v') == [(3, 2), (17, 12), (99, 70)]
    assert data['payload']['continued_fraction'] == {'a0': 1, 'period': [2], 'period_length': 1,
                                                  'convergents': [[1, 1], [3, 2]]}
    assert data['command'] == {'name': 'pell', 'parameters': {'count': 3, 'd': 2},
                               'version': config.VERSION}


def test_pell_last_convergent_is_fundamental():
    _, data = _json('pell', '61', '--count', '1')
    cf = data['payload']['continued_fraction']
    assert len(cf['convergents']) == 22
    assert cf['convergents'][-1] == [1766319049, 226153980]
    assert data['payload']['fundamental'] == {'u': 1766319049, 'v': 226153980}


def test_pell_single_row():
    _, data = _json('pell', '6', '--count', '1')
    assert _rows(data, 'u', 'v') == [(5, 2)]


def test_pell_square_is_domain_error():
    code, out, err = _run('pell', '4', '--format', 'json')
    assert code == 1
    data = json.loads(out)
    assert 'carré parfait' in data['error']
    assert data['payload'] == {'d': 4, 'root': 2}
    assert data['command']['parameters']['d'] == 4
    assert err


def test_family_rows():
    code, data = _json('family', '--a', '1', '--k', '1', '--count', '2')
    assert code == 0
    assert _rows(data, 'x', 'y') == [(7, 5), (41, 29)]
    assert all(row['holds'] for row in data['payload']['rows'])


def test_family_square_reports_certificate():
    code, data = _json('family', '--a', '1', '--k', '3')
    assert code == 1
    assert data['payload']['certificate'] == {'a': 1, 'b': 1, 'c': 1, 't': 2, 'ell': 3, 'k': 3,
                                              'root': 2}


def test_family_verifies_five_two():
    _, data = _json('family', '--a', '5', '--k', '2', '--count', '1')
    ((x, y),) = _rows(data, 'x', 'y')
    assert 5 * x * x + 2 == 7 * y * y


def test_squares():
    _, data = _json('squares', '--k', '9')
    assert _rows(data, 'a', 'b', 'c', 't') == [(3, 1, 3, 2), (16, 4, 1, 5)]
    _, data = _json('squares', '--k', '1')
    assert data['payload']['rows'] == []
    _, data = _json('squares', '--k', '3', '--oracle', '1000000')
    assert data['payload']['oracle_match'] is True
    assert data['payload']['oracle_values'] == [1]


def test_syndetic_all_integers():
    code, data = _json('syndetic', '--gen', 'all', '--horizon', '200', '--k', '1')
    assert code == 0
    first = data['payload']['rows'][0]
    assert first['a'] == 1 and first['status'] == 'Found'
    assert first['witness']['branch'] == 'Direct'
    assert first['witness']['product'] == 49


def test_syndetic_avoid_residue():
    code, data = _json('syndetic', '--gen', 'avoid-residue', '0', '3', '--horizon', '200', '--k', '1')
    assert code == 0
    assert data['payload']['hitting'] is True
    assert data['payload']['summary']['Found'] > 0
    assert data['payload']['summary']['HypothesisViolation'] == 0


def test_syndetic_file_with_gap_violation(tmp_path):
    path = tmp_path / 'sparse.txt'
    path.write_text('1\n4\n5\n', encoding='utf-8')
    code, data = _json('syndetic', '--file', str(path), '--k', '1')
    assert code == 1
    assert [v['kind'] for v in data['payload']['violations']] == ['gap']


def test_syndetic_file_not_utf8_is_domain_error(tmp_path):
    path = tmp_path / 'binaire.txt'
    path.write_bytes(b'1\n2\n\xff\xfe3\n')
    code, out, err = _run('syndetic', '--file', str(path), '--k', '1', '--format', 'json')
    assert code == 1
    data = json.loads(out)
    assert 'UTF-8' in data['error']
    assert data['payload']['path'] == str(path)
    assert err


def test_syndetic_file_ok(tmp_path):
    path = tmp_path / 'set.txt'
    path.write_text('\n'.join(str(n) for n in range(1, 61, 2)) + '\n', encoding='utf-8')
    code, data = _json('syndetic', '--file', str(path), '--k', '2')
    assert code == 0
    assert data['payload']['sample']['horizon'] == 59


def test_syndetic_bad_generator_is_usage_error():
    code, _, err = _run('syndetic', '--gen', 'primes', '--k', '1')
    assert code == 2
    assert 'primes' in err


def test_search_and_oracle():
    code, data = _json('search', '--a', '1', '--k', '1', '--ell', '1', '--m', '2', '--n', '2',
                       '--bound', '100', '--oracle')
    assert code == 0
    assert (7, 5) in _rows(data, 'x', 'y') and (41, 29) in _rows(data, 'x', 'y')
    assert data['payload']['oracle_match'] is True
    assert data['command']['parameters']['min_xy'] == 1
    assert any('x, y ≥ 1' in w for w in data['warnings'])


def test_search_obstructed():
    code, data = _json('search', '--a', '2', '--k', '3', '--ell', '4', '--m', '2', '--n', '2')
    assert code == 0
    assert data['payload']['obstructed'] is True
    assert data['payload']['rows'] == []


def test_survey_rows():
    code, data = _json('survey', '--a', '1..2', '--k', '1..2', '--ell', '1..2',
                       '--m', '2', '--n', '2', '--bound', '200')
    assert code == 0
    assert len(data['payload']['rows']) == 8


def test_verify():
    _, data = _json('verify', '--a', '3', '--k', '1', '--x', '15', '--y', '13')
    assert data['payload'] == {'lhs': 676, 'rhs': 676, 'holds': True}


@pytest.mark.parametrize("argv", [
    ['pell', '2', '--count', '4'],
    ['syndetic', '--gen', 'random', '--horizon', '400', '--k', '2', '--seed', '5'],
    ['search', '--a', '2', '--k', '7', '--ell', '7', '--bound', '400'],
    ['survey', '--a', '1..2', '--k', '1..3', '--ell', '2', '--bound', '150'],
])
@pytest.mark.parametrize("fmt", ['json', 'text'])
def test_output_is_byte_stable_across_worker_counts(argv, fmt):
    outputs = set()
    for workers in ('1', '2', '1'):
        extra = ['--workers', workers] if argv[0] in ('syndetic', 'search', 'survey') else []
        _, out, _ = _run(*argv, *extra, '--format', fmt)
        outputs.add(out)
    assert len(outputs) == 1


def test_envelope_json_round_trip():
    _, out, _ = _run('syndetic', '--gen', 'odd', '--horizon', '100', '--k', '2', '--format', 'json')
    env = OutputEnvelope.parse(out)
    assert env.render_json() + '\n' == out
    assert OutputEnvelope.from_dict(env.to_dict()) == env


def test_text_output_has_header_and_table():
    code, out, _ = _run('family', '--a', '2', '--k', '1', '--count', '2')
    assert code == 0
    assert out.startswith('🧬 FAMILY')
    assert '11\t9' in out


@pytest.mark.parametrize("argv", [
    ['pell'], ['pell', '0'], ['survey', '--a', '3..1', '--k', '1', '--ell', '1'],
    ['search', '--a', '1', '--k', '1', '--ell', '1', '--min-xy', '3'], ['bogus'],
])
def test_usage_errors_exit_2(argv):
    code, _, _ = _run(*argv)
    assert code == 2


def test_parse_range():
    assert parse_range('1..3') == [1, 2, 3]
    assert parse_range('4') == [4]
    assert parse_range('2,5,9') == [2, 5, 9]


def test_pdf_report(tmp_path):
    path = tmp_path / 'rapport.pdf'
    code, _, _ = _run('squares', '--k', '9', '--pdf', str(path))
    assert code == 0
    assert path.read_bytes().startswith(b'%PDF')


def test_save_writes_envelope(tmp_path, monkeypatch):
    monkeypatch.setattr(config, 'DATA_DIR', str(tmp_path))
    _, out, _ = _run('verify', '--a', '1', '--k', '1', '--x', '7', '--y', '5', '--format', 'json',
                     '--save')
    (saved,) = tmp_path.glob('verify_*.json')
    assert json.loads(saved.read_text(encoding='utf-8')) == json.loads(out)


def test_unwritable_pdf_path_exits_1(tmp_path):
    path = tmp_path / 'absent' / 'rapport.pdf'
    code, _, err = _run('squares', '--k', '9', '--pdf', str(path))
    assert code == 1
    assert 'Écriture impossible' in err
    assert not path.exists()
