from __future__ import annotations

import itertools

import pytest

from burnside_tori.burnside import BurnsideElement
from burnside_tori.permgroup import Permutation, group_closure, symmetric_group
from burnside_tori.subgroups import subgroup_table


def perm(*images: int) -> Permutation:
    return Permutation(images)


def cls(G, *gens: Permutation) -> BurnsideElement:
    """Basis element ``[G/H]`` for ``H`` generated by ``gens``."""
    table = subgroup_table(G)
    H = group_closure(G.degree, gens)
    return BurnsideElement.basis(table, table.class_of(H))


def all_subgroups(G):
    """Every subgroup of ``G`` by closing all pairs of elements (enough for Σ_n, n <= 4)."""
    seen = {}
    for a, b in itertools.combinations_with_replacement(list(G), 2):
        H = group_closure(G.degree, [a, b])
        seen.setdefault(H.key, H)
    return list(seen.values())


def brute_conjugacy_classes(G):
    subs = all_subgroups(G)
    classes = []
    for H in subs:
        conj = {frozenset((g * h * g.inverse()).images for h in H) for g in G}
        if not any(c[0] in conj for c in classes):
            classes.append((H.key, H))
    return [H for _, H in classes]


@pytest.fixture(scope="session")
def S3():
    return symmetric_group(3)


@pytest.fixture(scope="session")
def S4():
    return symmetric_group(4)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
