from itertools import combinations

import pytest

from pyintertwine.document import (parse_documents, parse_document, serialize, read_document, write_document,
                                   serialize_report, parse_report)
from pyintertwine.fixtures import uniform, mk4, catalog
from pyintertwine.verification import verify_intertwine

U24_DOCUMENT = """# the uniform matroid of rank 2 on 4 elements
name: U(2,4)
ground: e0 e1 e2 e3
kind: cyclic_flats
flat: 0 |
flat: 2 | e0 e1 e2 e3
end
"""


def test_parse_document():
    matroid = parse_document(U24_DOCUMENT)
    assert matroid == uniform(2, 4)
    assert matroid.name == 'U(2,4)'
    assert serialize(matroid) == U24_DOCUMENT.split('\n', 1)[1]


def test_serialize_catalog():
    text = ''.join(serialize(m) for m in catalog().values())
    documents = parse_documents(text)
    assert documents == list(catalog().values())
    assert [d.name for d in documents] == list(catalog())


def test_bases_document():
    labels = mk4().labels
    triangles = [{'ab', 'ac', 'bc'}, {'ab', 'ad', 'bd'}, {'ac', 'ad', 'cd'}, {'bc', 'bd', 'cd'}]
    trees = [c for c in combinations(labels, 3) if set(c) not in triangles]
    assert len(trees) == 16
    lines = ['name: K4', f'ground: {" ".join(labels)}', 'kind: bases'] + [f'basis: {" ".join(t)}' for t in trees]
    matroid = parse_document('\n'.join(lines + ['end']))
    assert matroid == mk4()
    assert matroid.name == 'K4'


@pytest.mark.parametrize('text, message', [
    ('ground: a b\nkind: bases\nbasis: a\nbasis: a b\nend', 'same size'),
    ('ground: a b c d\nkind: bases\nbasis: a b\nbasis: c d\nend', 'submodularity'),
    ('ground: a b\nflat: 0 |\nflat: 1 | a b\n', 'not closed'),
    ('ground: a b\nflat: 1 | a z\nend', 'not in the ground set'),
    ('ground: a a\nend', 'duplicate labels'),
    ('name: x\nend', 'no ground line'),
    ('ground: a b\nflat: one | a b\nend', 'flat: <rank>'),
    ('ground: a b\nrank: 1\nend', 'unknown key'),
    ('ground: a b\nkind: graphic\nend', 'unknown kind'),
    ('ground: a b\nflat 0\nend', 'key: value'),
    ('ground: a b c d\nflat: 0 |\nflat: 1 | a b\nflat: 1 | c d\nend', 'Z0'),
])
def test_bad_documents(text, message):
    with pytest.raises(ValueError, match=message):
        parse_documents(text)


def test_unvalidated_document():
    text = 'ground: a b\nflat: 1 | a b\nflat: 0 |\nflat: 1 | a\nend'
    with pytest.raises(ValueError):
        parse_document(text)
    matroid = parse_document(text, validate=False)
    assert matroid.nb_flats == 3


def test_files(tmp_path):
    filepath = str(tmp_path / 'mk4.txt')
    write_document(mk4(), filepath)
    assert read_document(filepath) == mk4()
    with pytest.raises(ValueError, match='does not exist'):
        read_document(str(tmp_path / 'missing.txt'))


def test_report_envelope():
    report = verify_intertwine(mk4(), uniform(2, 3), uniform(1, 2))
    text = serialize_report(report)
    assert text.startswith('report: intertwine\nverdict: false\n')
    parsed = parse_report(serialize(mk4()) + text)
    assert parsed.verdict == report.verdict
    assert parsed.details == report.details
    assert parsed.counters == report.counters
    assert parsed.notes == report.notes
    assert set(parsed.witnesses) == set(report.witnesses)
    for target, witness in report.witnesses.items():
        assert parsed.witnesses[target].deleted == witness.deleted
        assert parsed.witnesses[target].mapping == witness.mapping

    with pytest.raises(ValueError, match='no report'):
        parse_report(serialize(mk4()))
    with pytest.raises(ValueError, match='true or false'):
        parse_report('report: intertwine\nverdict: maybe\nend\n')
