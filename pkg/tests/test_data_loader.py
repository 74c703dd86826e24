import json

import pytest

from combinatorics import PairPartition
from data_loader import load_kostka_table, parse_composition, parse_kostka_table, parse_pair, parse_partition
from errors import KostkaTableError


def test_parse_composition():
    assert parse_composition('4,3,2') == (4, 3, 2)
    assert parse_composition('') == ()
    assert parse_composition(None) == ()
    assert parse_composition('１,３') == (1, 3)
    assert parse_composition(' 2, 1 ') == (2, 1)
    with pytest.raises(ValueError):
        parse_composition('a,1')
    with pytest.raises(ValueError):
        parse_composition('2,0')


def test_parse_partition():
    assert parse_partition('3,2,1,1') == (3, 2, 1, 1)
    assert parse_partition('∅') == ()
    with pytest.raises(ValueError):
        parse_partition('1,2')


def test_parse_pair():
    assert parse_pair('5,1,1,1|3,3', 3) == PairPartition((5, 1, 1, 1), (3, 3), 3)
    assert parse_pair('|3,3', 3) == PairPartition((), (3, 3), 3)
    assert parse_pair('5|', 3) == PairPartition((5,), (), 3)
    assert parse_pair('２｜３', 3) == PairPartition((2,), (3,), 3)
    with pytest.raises(ValueError):
        parse_pair('5', 3)
    with pytest.raises(ValueError):
        parse_pair('1|4', 3)


def _table_data(*entries, p=3):
    return {'p': p, 'entries': [{'base': b, 'summand': s, 'mult': k} for b, s, k in entries]}


def test_load_kostka_table(tmp_path):
    path = tmp_path / 'table.json'
    path.write_text(json.dumps(_table_data(
        ('5,1,1,1|3,3', '5,1,1,1|3,3', 1),
        ('5,1,1,1|3,3', '5,2,1|3,3', 1),
    )), encoding='utf-8')
    table = load_kostka_table(path)
    assert table.prime == 3
    assert len(table) == 2
    assert table.get(PairPartition((5, 1, 1, 1), (3, 3), 3), PairPartition((5, 2, 1), (3, 3), 3)) == 1


def test_kostka_table_rejects_duplicates():
    data = _table_data(('2|', '2|', 1), ('2|', '2|', 1))
    with pytest.raises(KostkaTableError, match='#1'):
        parse_kostka_table(data)


def test_kostka_table_names_bad_entry():
    with pytest.raises(KostkaTableError, match='1,2'):
        parse_kostka_table(_table_data(('1,2|', '2,1|', 0)))


def test_kostka_table_invariant_violations():
    with pytest.raises(KostkaTableError):
        parse_kostka_table(_table_data(('2|', '2|', 2)))
    with pytest.raises(KostkaTableError):
        parse_kostka_table(_table_data(('2|', '1,1|', 1)))
    with pytest.raises(KostkaTableError):
        parse_kostka_table(_table_data(('2|', '2|', 1), p=4))


def test_kostka_table_schema_errors(tmp_path):
    with pytest.raises(KostkaTableError):
        parse_kostka_table({'p': 3, 'entries': [{'base': '2|', 'summand': '2|'}]})
    with pytest.raises(KostkaTableError):
        parse_kostka_table({'p': 3, 'entries': [], 'extra': 1})
    path = tmp_path / 'broken.json'
    path.write_text('{not json', encoding='utf-8')
    with pytest.raises(KostkaTableError):
        load_kostka_table(path)
