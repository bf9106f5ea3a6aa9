from __future__ import annotations

import itertools
import json
import logging

import numpy as np
import pytest

from burnside_tori import subgroups as sg
from burnside_tori.gset import coset_space, fixed_count
from burnside_tori.permgroup import group_closure, symmetric_group, trivial_group
from burnside_tori.subgroups import (
    GroupTooLargeError,
    SubgroupTable,
    are_conjugate,
    enumerate_subgroup_classes,
    subgroup_table,
    symmetric_table,
)

from conftest import all_subgroups, brute_conjugacy_classes, perm


@pytest.mark.parametrize("n,count", [(1, 1), (2, 2), (3, 4), (4, 11), (5, 19), (6, 56)])
def test_class_counts(n, count):
    assert len(symmetric_table(n)) == count


def test_trivial_group_table():
    assert len(subgroup_table(trivial_group(3))) == 1


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_class_counts_against_exhaustive_closure(n):
    G = symmetric_group(n)
    assert len(brute_conjugacy_classes(G)) == len(symmetric_table(n))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_every_subgroup_lands_in_a_class_with_same_order(n):
    table = symmetric_table(n)
    G = table.ambient
    hits = set()
    for H in all_subgroups(G):
        c = table.class_of(H)
        assert table.classes[c].order == H.order
        assert are_conjugate(G, H, table.representative(c))[0]
        hits.add(c)
    assert hits == set(range(len(table)))


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
def test_marks_structure(n):
    table = symmetric_table(n)
    M = table.marks_array
    assert not np.triu(M, 1).any()
    for r, c in enumerate(table.classes):
        assert M[r, r] == c.normalizer_order // c.order > 0
        assert M[r, 0] == table.ambient.order // c.order
    assert table.classes[table.top].order == table.ambient.order


@pytest.mark.parametrize("n", [2, 3, 4])
def test_marks_against_fixed_point_counts(n):
    table = symmetric_table(n)
    G = table.ambient
    for r in range(len(table)):
        X = coset_space(G, table.representative(r))
        for c in range(len(table)):
            assert table.marks[r][c] == fixed_count(X, table.representative(c))


def test_marks_sigma2():
    assert symmetric_table(2).marks_array.tolist() == [[2, 0], [1, 1]]


def test_canonical_sort_strictly_increasing():
    table = symmetric_table(5)
    keys = [c.canonical_key for c in table.classes]
    assert keys == sorted(keys) and len(set(keys)) == len(keys)


def test_enumeration_deterministic():
    a = enumerate_subgroup_classes(symmetric_group(4))
    b = enumerate_subgroup_classes(symmetric_group(4))
    assert a.to_json() == b.to_json()


def test_labels():
    table = symmetric_table(3)
    assert [table.label(c) for c in range(4)] == ["o1_c0", "o2_c1", "o3_c2", "o6_c3"]


def test_are_conjugate_examples():
    S3, S4 = symmetric_group(3), symmetric_group(4)
    A = group_closure(3, [perm(1, 0, 2)])
    B = group_closure(3, [perm(0, 2, 1)])
    ok, g = are_conjugate(S3, A, B)
    assert ok
    assert {tuple((g * h * g.inverse()).images) for h in A} == {h.images for h in B}
    C = group_closure(4, [perm(1, 0, 2, 3)])
    D = group_closure(4, [perm(1, 0, 3, 2)])
    assert not are_conjugate(S4, C, D)[0]
    ok, g = are_conjugate(S4, C, C)
    assert ok and g.is_identity()


def test_are_conjugate_rejects_non_subgroup():
    with pytest.raises(ValueError):
        are_conjugate(group_closure(3, [perm(1, 0, 2)]), symmetric_group(3), trivial_group(3))


def test_conjugacy_is_equivalence_on_sigma4():
    G = symmetric_group(4)
    subs = all_subgroups(G)
    assert len(subs) == 30
    rel = {(i, j): are_conjugate(G, a, b)[0] for i, a in enumerate(subs) for j, b in enumerate(subs)}
    n = len(subs)
    assert all(rel[i, i] for i in range(n))
    assert all(rel[i, j] == rel[j, i] for i in range(n) for j in range(n))
    for i, j, k in itertools.product(range(n), repeat=3):
        if rel[i, j] and rel[j, k]:
            assert rel[i, k]


def test_group_too_large():
    with pytest.raises(GroupTooLargeError):
        enumerate_subgroup_classes(symmetric_group(5), cap=100)


def test_json_round_trip():
    table = symmetric_table(4)
    payload = json.loads(json.dumps(table.to_json()))
    assert payload["format_version"] == sg.CACHE_FORMAT_VERSION
    again = SubgroupTable.from_json(table.ambient, payload)
    assert again.marks == table.marks
    assert [c.canonical_key for c in again.classes] == [c.canonical_key for c in table.classes]


def test_from_json_rejects_tampered_marks():
    table = symmetric_table(3)
    payload = table.to_json()
    payload["marks"][1][0] += 1
    with pytest.raises(ValueError):
        SubgroupTable.from_json(table.ambient, payload)


@pytest.fixture
def fresh_cache(tmp_path, monkeypatch):
    monkeypatch.setattr(sg, "_TABLES", {})
    sg.set_cache_dir(tmp_path)
    yield tmp_path
    sg.set_cache_dir(None)


def test_cache_write_then_load(fresh_cache):
    t1 = symmetric_table(4)
    assert sg.last_table_source[4] == "computed"
    path = sg.cache_path(4)
    assert path.exists() and path.name == "sym4_v1.json"
    sg._TABLES.clear()
    t2 = symmetric_table(4)
    assert sg.last_table_source[4] == "disk"
    assert t2.marks == t1.marks


def test_corrupt_cache_recomputes(fresh_cache, caplog):
    sg.cache_path(3).write_text("{not json")
    with caplog.at_level(logging.WARNING):
        table = symmetric_table(3)
    assert len(table) == 4
    assert sg.last_table_source[3] == "computed"
    assert "corrupt" in caplog.text
    assert json.loads(sg.cache_path(3).read_text())["degree"] == 3


def test_cache_dir_from_environment(tmp_path, monkeypatch):
    monkeypatch.setenv("BURNSIDE_CACHE_DIR", str(tmp_path))
    sg.set_cache_dir(None)
    assert sg.cache_dir() == tmp_path
