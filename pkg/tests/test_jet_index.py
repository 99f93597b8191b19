from itertools import permutations

import pytest

from homvar.jet_index import (
    EMPTY_INDEX,
    JetCoord,
    MultiIndex,
    code_count,
    code_insert,
    code_of,
    code_order,
    code_remove,
    coord_code,
    decode,
    enumerate_indices,
    index_multisets,
)


def test_multiplicity_examples():
    assert EMPTY_INDEX.multiplicity() == 1
    assert MultiIndex.of(1, 2).multiplicity() == 2
    assert MultiIndex.of(1, 1, 2).multiplicity() == 3


def test_multiplicity_brute_force():
    # count distinct orderings explicitly
    for entries in [(1,), (2, 2), (1, 2, 2), (1, 1, 2, 2), (1, 1, 1, 2)]:
        idx = MultiIndex.of(*entries)
        assert idx.multiplicity() == len(set(permutations(entries)))


def test_insert_examples():
    assert MultiIndex.of(1, 2).insert(1) == MultiIndex.of(1, 1, 2)
    assert EMPTY_INDEX.insert(2) == MultiIndex.of(2)
    assert MultiIndex.of(2, 2).insert(1) == MultiIndex.of(1, 2, 2)


def test_remove_examples():
    assert MultiIndex.of(1, 1, 2).remove(1) == MultiIndex.of(1, 2)
    assert MultiIndex.of(2).remove(1) is None
    assert MultiIndex.of(1).remove(1) == EMPTY_INDEX


def test_insert_remove_roundtrip():
    for idx in enumerate_indices(4):
        for i in (1, 2):
            if idx.count(i):
                assert idx.remove(i).insert(i) == idx
            assert idx.insert(i).remove(i) == idx


def test_multiplicity_insert_relation():
    for idx in enumerate_indices(5):
        for i in (1, 2):
            lhs = idx.insert(i).multiplicity() * (idx.count(i) + 1)
            rhs = idx.multiplicity() * (idx.size + 1)
            assert lhs == rhs


def test_enumerate():
    assert enumerate_indices(0) == [EMPTY_INDEX]
    assert enumerate_indices(1) == [EMPTY_INDEX, MultiIndex.of(1), MultiIndex.of(2)]
    two = enumerate_indices(2)
    assert len(two) == 6
    assert two == sorted(two)
    # closed under remove
    for idx in two:
        for i in (1, 2):
            rem = idx.remove(i)
            assert rem is None or rem in two


def test_enumerate_count_formula():
    for k in range(8):
        assert len(enumerate_indices(k)) == (k + 1) * (k + 2) // 2


def test_entries_sorted_and_equality():
    assert MultiIndex.of(2, 1).entries == (1, 2)
    assert MultiIndex.of(2, 1) == MultiIndex.of(1, 2)
    with pytest.raises(ValueError):
        MultiIndex.of(3)


def test_jet_coord_order_and_name():
    a = JetCoord.of(1, 1)
    b = JetCoord.of(1, 2)
    c = JetCoord.of(1, 1, 1)
    d = JetCoord.of(2)
    assert a < b < c < d
    assert JetCoord.of(3, 1, 1, 2).name() == "u3_112"
    assert JetCoord.of(3).name() == "u3"


def test_code_round_trip_and_order():
    coords = [JetCoord.of(1), JetCoord.of(1, 1), JetCoord.of(1, 2),
              JetCoord.of(1, 1, 2), JetCoord.of(2, 1), JetCoord.of(11, 2, 2)]
    codes = [coord_code(c) for c in coords]
    assert [decode(x) for x in codes] == coords
    assert sorted(codes) == [coord_code(c) for c in sorted(coords)]


def test_code_helpers():
    code = code_of(2, 2, 1)  # u2_12
    assert code_order(code) == 2
    assert code_count(code, 1) == 1
    assert code_count(code, 2) == 1
    assert decode(code_insert(code, 1)).name() == "u2_112"
    assert code_remove(code, 2) == code_of(2, 1, 0)
    assert code_remove(code_of(1, 1, 0), 2) is None


def test_index_multisets():
    assert index_multisets(0) == [()]
    assert index_multisets(2) == [(1, 1), (1, 2), (2, 2)]
    assert index_multisets(3) == [(1, 1, 1), (1, 1, 2), (1, 2, 2), (2, 2, 2)]
