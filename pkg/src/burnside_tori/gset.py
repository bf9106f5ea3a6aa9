"""Finite G-sets with explicit action tables.

A :class:`GSet` stores ``action[k, x]``, the image of point ``x`` under
``group.elements[k]``.  Constructions compute the action of the group's
generators only and extend along the breadth-first words recorded by the
group, so building a table costs one array gather per element.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Hashable, Sequence

import numpy as np

from .permgroup import (
    Permutation,
    PermutationGroup,
    direct_product,
    split_product_element,
    symmetric_group,
)
from .subgroups import SubgroupTable, subgroup_table

__all__ = [
    "GSet",
    "Orbit",
    "GSetTooLargeError",
    "natural",
    "trivial_gset",
    "regular",
    "coset_space",
    "orbit_decompose",
    "induce_gset",
    "restrict",
    "product",
    "disjoint_union",
    "power",
    "subsets",
    "invariant_subset",
    "fixed_count",
]

MAX_POINTS = 20_000


class GSetTooLargeError(ValueError):
    pass


def _check_size(size: int) -> None:
    if size > MAX_POINTS:
        raise GSetTooLargeError(f"G-set with {size} points exceeds the cap {MAX_POINTS}")


def _extend(group: PermutationGroup, gen_tables: Sequence[np.ndarray], size: int) -> np.ndarray:
    if not group.generators:
        return np.arange(size, dtype=np.int64).reshape(1, size)
    if size == 0:
        return np.zeros((group.order, 0), dtype=np.int64)
    return group.permutation_table([np.asarray(t, dtype=np.int64) for t in gen_tables])


class GSet:
    """A finite set of ``size`` points with an action of ``group``."""

    def __init__(self, group: PermutationGroup, action: np.ndarray, points: Sequence[Hashable] | None = None):
        action = np.asarray(action, dtype=np.int64)
        size = action.shape[1] if action.ndim == 2 else 0
        if action.shape != (group.order, size):
            raise ValueError(f"action table has shape {action.shape}, expected ({group.order}, {size})")
        self.group = group
        self.action = action
        self.action.setflags(write=False)
        self.points = tuple(points) if points is not None else tuple(range(size))
        if len(self.points) != size:
            raise ValueError("one label per point required")
        self._point_index = None

    @classmethod
    def from_function(cls, group: PermutationGroup, points: Sequence[Hashable],
                      act: Callable[[Permutation, Hashable], Hashable]) -> "GSet":
        """Build from ``act(g, point) -> point``, evaluated on generators only."""
        points = list(points)
        _check_size(len(points))
        index = {p: i for i, p in enumerate(points)}
        tables = [np.array([index[act(g, p)] for p in points], dtype=np.int64) for g in group.generators]
        return cls(group, _extend(group, tables, len(points)), points)

    @property
    def size(self) -> int:
        return self.action.shape[1]

    def __len__(self):
        return self.size

    def __repr__(self):
        return f"GSet(group order={self.group.order}, size={self.size})"

    def index(self, point: Hashable) -> int:
        if self._point_index is None:
            self._point_index = {p: i for i, p in enumerate(self.points)}
        return self._point_index[point]

    def element_row(self, g: Permutation) -> np.ndarray:
        return self.action[self.group.index(g)]

    def check(self) -> None:
        """Exhaustively verify the identity row and ``action[g∘h] = action[g] ∘ action[h]``."""
        if not np.array_equal(self.action[0], np.arange(self.size)):
            raise ValueError("identity does not act trivially")
        for row in self.action:
            if not np.array_equal(np.sort(row), np.arange(self.size)):
                raise ValueError("an element does not act bijectively")
        mult = self.group.data.mult
        for g in range(self.group.order):
            lhs = self.action[mult[g].astype(np.int64)]
            rhs = self.action[g][self.action]
            if not np.array_equal(lhs, rhs):
                raise ValueError("action table is not a homomorphism")

    def orbits(self) -> list[np.ndarray]:
        seen = np.zeros(self.size, dtype=bool)
        out = []
        for x in range(self.size):
            if not seen[x]:
                orb = np.unique(self.action[:, x])
                seen[orb] = True
                out.append(orb)
        return out

    def stabilizer_mask(self, x: int) -> np.ndarray:
        return self.action[:, x] == x

    def stabilizer(self, x: int) -> PermutationGroup:
        return self.group.data.subgroup(self.stabilizer_mask(x))


@dataclass(frozen=True)
class Orbit:
    points: tuple[int, ...]
    stabilizer: PermutationGroup
    class_index: int


def _stabilizer_classes(S: GSet, table: SubgroupTable) -> list[tuple[np.ndarray, int]]:
    """(orbit, class index of the least point's stabilizer) for every orbit."""
    memo: dict[bytes, int] = {}
    out = []
    for orb in S.orbits():
        mask = S.stabilizer_mask(int(orb[0]))
        key = mask.tobytes()
        c = memo.get(key)
        if c is None:
            c = table.class_of(S.group.data.subgroup(mask))
            memo[key] = c
        out.append((orb, c))
    return out


def orbit_decompose(S: GSet, table: SubgroupTable | None = None) -> list[Orbit]:
    table = table if table is not None else subgroup_table(S.group)
    if table.ambient != S.group:
        raise ValueError("subgroup table belongs to a different group")
    out = []
    for orb, c in _stabilizer_classes(S, table):
        out.append(Orbit(tuple(int(x) for x in orb), S.stabilizer(int(orb[0])), c))
    return out


# basic G-sets -----------------------------------------------------------


def natural(G: PermutationGroup) -> GSet:
    """``{0, ..., degree-1}`` with the defining action."""
    return GSet(G, G.array.copy(), list(range(G.degree)))


def trivial_gset(G: PermutationGroup, size: int = 1) -> GSet:
    return GSet(G, np.tile(np.arange(size, dtype=np.int64), (G.order, 1)))


def regular(G: PermutationGroup) -> GSet:
    """``G`` acting on itself by left multiplication."""
    return GSet(G, G.data.mult.astype(np.int64), [g.images for g in G.elements])


def _left_cosets(G: PermutationGroup, H: PermutationGroup) -> tuple[np.ndarray, np.ndarray]:
    """Coset id of every element of ``G`` and the representative index of every coset.

    Representatives are the lexicographically smallest members; cosets are
    numbered in increasing representative order.
    """
    if not H.is_subgroup_of(G):
        raise ValueError(f"{H!r} is not a subgroup of {G!r}")
    data = G.data
    h_idx = np.array([G.index(h) for h in H.elements], dtype=np.int64)
    members = data.mult[:, h_idx].astype(np.int64)
    rep_of = members[np.arange(G.order), np.argmin(data.codes[members], axis=1)]
    reps = np.unique(rep_of)
    reps = reps[np.argsort(data.codes[reps])]
    lookup = np.full(G.order, -1, dtype=np.int64)
    lookup[reps] = np.arange(reps.size)
    return lookup[rep_of], reps


def induce_gset(H: PermutationGroup, G: PermutationGroup, S: GSet) -> GSet:
    """``G ×_H S``: points ``(c, s)`` for left cosets ``c = r_c H``, ``g·(r_c, s) = (r_c', h·s)``."""
    if S.group != H:
        raise ValueError("S must be a G-set over H")
    coset_id, reps = _left_cosets(G, H)
    if reps.size * S.size:
        _check_size(int(reps.size * S.size))
    data = G.data
    m = S.size
    tables = []
    for gen in G.generators:
        s = G.index(gen)
        table = np.empty(reps.size * m, dtype=np.int64)
        for c, r in enumerate(reps):
            sr = int(data.mult[s, r])
            c2 = int(coset_id[sr])
            h = int(data.mult[data.inverse[reps[c2]], sr])
            row = S.action[H.index(G.elements[h])]
            table[c * m:(c + 1) * m] = c2 * m + row
        tables.append(table)
    points = [(c, p) for c in range(reps.size) for p in S.points]
    return GSet(G, _extend(G, tables, reps.size * m), points)


def coset_space(G: PermutationGroup, H: PermutationGroup) -> GSet:
    """``G/H`` with cosets in increasing order of their smallest member."""
    out = induce_gset(H, G, trivial_gset(H, 1))
    return GSet(G, out.action, [c for c, _ in out.points])


def restrict(S: GSet, H: PermutationGroup) -> GSet:
    if not H.is_subgroup_of(S.group):
        raise ValueError(f"{H!r} is not a subgroup of the acting group")
    rows = [S.group.index(h) for h in H.elements]
    return GSet(H, S.action[rows], S.points)


def product(S: GSet, T: GSet) -> GSet:
    if S.group != T.group:
        raise ValueError("product needs G-sets over the same group")
    _check_size(S.size * T.size)
    act = S.action[:, :, None] * T.size + T.action[:, None, :]
    points = [(a, b) for a in S.points for b in T.points]
    return GSet(S.group, act.reshape(S.group.order, S.size * T.size), points)


def disjoint_union(S: GSet, T: GSet) -> GSet:
    if S.group != T.group:
        raise ValueError("disjoint union needs G-sets over the same group")
    _check_size(S.size + T.size)
    act = np.hstack([S.action, T.action + S.size])
    points = [(0, p) for p in S.points] + [(1, p) for p in T.points]
    return GSet(S.group, act, points)


def invariant_subset(S: GSet, points: Sequence[int]) -> GSet:
    """The sub-G-set on the given point indices (must be a union of orbits)."""
    points = sorted(set(int(p) for p in points))
    lookup = np.full(S.size, -1, dtype=np.int64)
    lookup[points] = np.arange(len(points))
    act = lookup[S.action[:, points]]
    if (act < 0).any():
        raise ValueError("subset is not invariant under the group")
    return GSet(S.group, act, [S.points[p] for p in points])


def power(S: GSet, i: int) -> GSet:
    """Functions ``[i] -> S`` as tuples, with ``(g, σ)·t = (g t[σ^-1(0)], ..., g t[σ^-1(i-1)])``.

    The acting group is ``Σ_i`` when ``S.group`` is trivial and the direct
    product ``S.group × Σ_i`` (on ``degree + i`` points) otherwise.
    """
    if i < 0:
        raise ValueError("power index must be non-negative")
    m = S.size
    _check_size(m**i)
    sym = symmetric_group(i)
    tuples = list(itertools.product(range(m), repeat=i))
    index = {t: k for k, t in enumerate(tuples)}

    def permute(sigma: Permutation, t: tuple) -> tuple:
        out = [0] * i
        for x in range(i):
            out[sigma.images[x]] = t[x]
        return tuple(out)

    if S.group.is_trivial():
        group = sym
        tables = [np.array([index[permute(s, t)] for t in tuples], dtype=np.int64) for s in group.generators]
    else:
        G = S.group
        group = direct_product(G, sym)
        tables = []
        for gen in group.generators:
            g, sigma = split_product_element(gen, G.degree)
            row = S.element_row(g)
            tables.append(np.array([index[permute(sigma, tuple(int(row[x]) for x in t))] for t in tuples],
                                   dtype=np.int64))
    labels = [tuple(S.points[x] for x in t) for t in tuples]
    return GSet(group, _extend(group, tables, len(tuples)), labels)


def subsets(S: GSet, i: int) -> GSet:
    """``i``-element subsets (as sorted index tuples, lexicographic)."""
    combos = list(itertools.combinations(range(S.size), i))
    _check_size(len(combos))
    index = {c: k for k, c in enumerate(combos)}
    tables = []
    for gen in S.group.generators:
        row = S.element_row(gen)
        tables.append(np.array([index[tuple(sorted(int(row[x]) for x in c))] for c in combos], dtype=np.int64))
    labels = [tuple(S.points[x] for x in c) for c in combos]
    return GSet(S.group, _extend(S.group, tables, len(combos)), labels)


def fixed_count(S: GSet, H: PermutationGroup) -> int:
    """Number of points fixed by every element of ``H``."""
    if not H.is_subgroup_of(S.group):
        raise ValueError(f"{H!r} is not a subgroup of the acting group")
    fixed = np.ones(S.size, dtype=bool)
    for h in H.generators:
        fixed &= S.element_row(h) == np.arange(S.size)
    return int(fixed.sum())
