"""Permutations and finite permutation groups on ``{0, ..., n-1}``.

Composition is right-to-left: ``(p * q)(x) == p(q(x))``.  Every group keeps
its full element list; index-space data (multiplication table, inverses,
cycle-type ids) is built lazily and used by the subgroup enumeration in
:mod:`burnside_tori.subgroups`.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "Permutation",
    "PermutationGroup",
    "CycleType",
    "compose",
    "inverse",
    "identity",
    "group_closure",
    "symmetric_group",
    "young_embedding",
    "cyclic_from_cycle_type",
    "trivial_group",
]


class Permutation:
    """A bijection of ``{0, ..., degree-1}`` given by its image list."""

    __slots__ = ("images", "_hash")

    def __init__(self, images: Iterable[int]):
        images = tuple(int(x) for x in images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"{images!r} is not a permutation of 0..{len(images) - 1}")
        self.images = images
        self._hash = hash(images)

    @classmethod
    def _trusted(cls, images: tuple) -> "Permutation":
        p = cls.__new__(cls)
        p.images = images
        p._hash = hash(images)
        return p

    @classmethod
    def from_cycles(cls, degree: int, cycles: Iterable[Sequence[int]]) -> "Permutation":
        images = list(range(degree))
        for cyc in cycles:
            for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
                images[a] = b
        return cls(images)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x]

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def inverse(self) -> "Permutation":
        return inverse(self)

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        seen = [False] * self.degree
        out = []
        for start in range(self.degree):
            if seen[start]:
                continue
            cyc = [start]
            seen[start] = True
            x = self.images[start]
            while x != start:
                cyc.append(x)
                seen[x] = True
                x = self.images[x]
            out.append(tuple(cyc))
        return out

    def cycle_type(self) -> "CycleType":
        return CycleType(tuple(sorted((len(c) for c in self.cycles()), reverse=True)))

    def order(self) -> int:
        return functools.reduce(math.lcm, (len(c) for c in self.cycles()), 1)

    def code(self) -> int:
        """Integer whose numeric order matches the lexicographic order of images."""
        n = self.degree
        c = 0
        for x in self.images:
            c = c * n + x
        return c

    def __eq__(self, other):
        if not isinstance(other, Permutation):
            return NotImplemented
        return self.images == other.images

    def __lt__(self, other: "Permutation") -> bool:
        return self.images < other.images

    def __hash__(self):
        return self._hash

    def __repr__(self):
        cyc = [c for c in self.cycles() if len(c) > 1]
        if not cyc:
            return f"Permutation(id_{self.degree})"
        return "Permutation(" + "".join("(" + " ".join(map(str, c)) + ")" for c in cyc) + f", n={self.degree})"


def compose(p: Permutation, q: Permutation) -> Permutation:
    """``p ∘ q``, i.e. apply ``q`` first."""
    if p.degree != q.degree:
        raise ValueError(f"degree mismatch: {p.degree} vs {q.degree}")
    pi = p.images
    return Permutation._trusted(tuple(pi[x] for x in q.images))


def inverse(p: Permutation) -> Permutation:
    inv = [0] * p.degree
    for i, x in enumerate(p.images):
        inv[x] = i
    return Permutation._trusted(tuple(inv))


def identity(degree: int) -> Permutation:
    return Permutation._trusted(tuple(range(degree)))


@dataclass(frozen=True)
class CycleType:
    """A partition of ``n``, weakly decreasing."""

    partition: tuple[int, ...]

    def __post_init__(self):
        part = tuple(int(x) for x in self.partition)
        if any(x < 1 for x in part):
            raise ValueError(f"cycle lengths must be positive: {part}")
        if list(part) != sorted(part, reverse=True):
            raise ValueError(f"cycle type must be weakly decreasing: {part}")
        object.__setattr__(self, "partition", part)

    @classmethod
    def parse(cls, text: str) -> "CycleType":
        parts = [int(t) for t in text.replace(" ", "").split(",") if t]
        return cls(tuple(sorted(parts, reverse=True)))

    @property
    def n(self) -> int:
        return sum(self.partition)

    def __str__(self):
        return ",".join(map(str, self.partition))


def partitions(n: int, largest: int | None = None) -> list[CycleType]:
    """All partitions of ``n`` in reverse-lexicographic order."""
    largest = n if largest is None else largest

    def rec(rest, cap):
        if rest == 0:
            yield ()
            return
        for k in range(min(rest, cap), 0, -1):
            for tail in rec(rest - k, k):
                yield (k,) + tail

    return [CycleType(p) for p in rec(n, largest)]


class PermutationGroup:
    """A finite group of permutations with an explicit element list.

    ``elements[0]`` is the identity; the rest follow breadth-first word length
    over ``generators``, lexicographic by image list within each length.
    Groups compare equal when their element sets agree.
    """

    def __init__(self, degree: int, generators: Sequence[Permutation], elements: Sequence[Permutation],
                 parents: Sequence[tuple[int, int]]):
        self.degree = degree
        self.generators = tuple(generators)
        self.elements = tuple(elements)
        # parents[k] = (p, s): elements[k] = generators[s] ∘ elements[p]; (-1, -1) for the identity
        self.parents = tuple(parents)
        self._index = {g.images: k for k, g in enumerate(self.elements)}
        self._key = frozenset(self._index)
        self._data = None

    @classmethod
    def from_elements(cls, degree: int, elements: Iterable[Permutation]) -> "PermutationGroup":
        """Build a group from a (closed) element set, choosing generators greedily."""
        elems = sorted(set(elements))
        gens: list[Permutation] = []
        span = {identity(degree).images}
        for g in elems:
            if g.images not in span:
                gens.append(g)
                span = set(group_closure(degree, gens)._index)
        group = group_closure(degree, gens)
        if len(group) != len(elems):
            raise ValueError("element set is not closed under composition")
        return group

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, p: Permutation) -> bool:
        return p.images in self._index

    def index(self, p: Permutation | tuple) -> int:
        images = p.images if isinstance(p, Permutation) else tuple(p)
        return self._index[images]

    @property
    def key(self) -> frozenset:
        return self._key

    def is_subgroup_of(self, other: "PermutationGroup") -> bool:
        return self.degree == other.degree and self._key <= other._key

    def is_trivial(self) -> bool:
        return self.order == 1

    def __eq__(self, other):
        if not isinstance(other, PermutationGroup):
            return NotImplemented
        return self.degree == other.degree and self._key == other._key

    def __hash__(self):
        return hash((self.degree, self._key))

    def __repr__(self):
        return f"PermutationGroup(degree={self.degree}, order={self.order}, gens={list(self.generators)})"

    @property
    def array(self) -> np.ndarray:
        """Element images as an ``(order, degree)`` integer array."""
        return self.data.array

    @property
    def data(self) -> "GroupData":
        if self._data is None:
            self._data = GroupData(self)
        return self._data

    def permutation_table(self, gen_tables: Sequence[np.ndarray]) -> np.ndarray:
        """Extend a homomorphism given on generators to all elements.

        ``gen_tables[s]`` is the image-array of generator ``s`` acting on some
        set of ``m`` points; the result has one row per element.
        """
        if len(gen_tables) != len(self.generators):
            raise ValueError("need one table per generator")
        m = len(gen_tables[0]) if gen_tables else None
        if m is None:
            raise ValueError("trivial group: size unknown, use identity_table")
        out = np.empty((self.order, m), dtype=np.int64)
        out[0] = np.arange(m)
        for k in range(1, self.order):
            p, s = self.parents[k]
            out[k] = gen_tables[s][out[p]]
        return out


class GroupData:
    """Index-space view of a group: element ``k`` is represented by ``k``."""

    def __init__(self, group: PermutationGroup):
        self.group = group
        n = group.degree
        order = group.order
        self.array = np.array([g.images for g in group.elements], dtype=np.int64).reshape(order, n)
        self.weights = n ** np.arange(n - 1, -1, -1, dtype=np.int64) if n else np.zeros(0, dtype=np.int64)
        self.codes = self.array @ self.weights
        self._code_to_index = {int(c): k for k, c in enumerate(self.codes)}
        inv = np.argsort(self.array, axis=1) if n else self.array
        self.inverse = self.indices_of(inv)
        ctypes = [g.cycle_type().partition for g in group.elements]
        self.ctype_names = sorted(set(ctypes))
        lookup = {c: i for i, c in enumerate(self.ctype_names)}
        self.ctype_id = np.array([lookup[c] for c in ctypes], dtype=np.int64)
        self._mult = None

    def indices_of(self, arr: np.ndarray) -> np.ndarray:
        """Element indices for rows of image arrays (last axis = images)."""
        codes = arr @ self.weights if self.group.degree else np.zeros(arr.shape[:-1], dtype=np.int64)
        flat = codes.ravel()
        lookup = self._code_to_index
        return np.fromiter((lookup[int(c)] for c in flat), dtype=np.int64, count=flat.size).reshape(codes.shape)

    @property
    def mult(self) -> np.ndarray:
        """``mult[a, b]`` is the index of ``elements[a] ∘ elements[b]``."""
        if self._mult is None:
            order = self.group.order
            n = self.group.degree
            dtype = np.int16 if order < 2**15 else np.int32
            table = np.empty((order, order), dtype=dtype)
            if n == 0:
                table[:] = 0
            else:
                # dense code -> index map over the n**n code space
                dense = np.full(n**n, -1, dtype=np.int64)
                dense[self.codes] = np.arange(order)
                for a in range(order):
                    composed = self.array[a][self.array]
                    table[a] = dense[composed @ self.weights]
            self._mult = table
        return self._mult

    def conjugates(self, elems: np.ndarray, by: np.ndarray | None = None) -> np.ndarray:
        """``out[i, j]`` = index of ``g_i ∘ h_j ∘ g_i^{-1}`` for ``g`` in ``by`` (default: all)."""
        mult = self.mult
        g = np.arange(self.group.order) if by is None else np.asarray(by)
        left = mult[g[:, None], np.asarray(elems)[None, :]]
        return mult[left, self.inverse[g][:, None]].astype(np.int64)

    def generating_subset(self, mask: np.ndarray) -> list[int]:
        """Greedy generating set (element indices) of the subgroup ``mask``."""
        gens: list[int] = []
        span = np.zeros_like(mask)
        span[0] = True
        for k in np.flatnonzero(mask):
            if not span[k]:
                gens.append(int(k))
                span = self.closure(gens)
        return gens

    def subgroup(self, mask: np.ndarray) -> PermutationGroup:
        gens = [self.group.elements[k] for k in self.generating_subset(mask)]
        return group_closure(self.group.degree, gens)

    def closure(self, gens: Sequence[int], start: np.ndarray | None = None) -> np.ndarray:
        """Boolean mask of the subgroup generated by ``gens`` (and ``start``)."""
        mult = self.mult
        order = self.group.order
        mask = np.zeros(order, dtype=bool)
        mask[0] = True
        frontier = np.array([0], dtype=np.int64)
        if start is not None:
            mask |= start
            frontier = np.flatnonzero(mask)
        gens = np.asarray(list(gens), dtype=np.int64)
        if gens.size == 0:
            return mask
        while frontier.size:
            prod = mult[frontier[:, None], gens[None, :]].ravel().astype(np.int64)
            new = np.unique(prod[~mask[prod]])
            mask[new] = True
            frontier = new
        return mask


def group_closure(degree: int, generators: Iterable[Permutation]) -> PermutationGroup:
    """Smallest group containing ``generators``."""
    gens = []
    for g in generators:
        if g.degree != degree:
            raise ValueError(f"generator {g!r} has degree {g.degree}, expected {degree}")
        if not g.is_identity() and g not in gens:
            gens.append(g)
    gens.sort()
    e = identity(degree)
    elements = [e]
    parents = [(-1, -1)]
    seen = {e.images: 0}
    layer = [0]
    while layer:
        found: dict[tuple, tuple[int, int]] = {}
        for p in layer:
            pim = elements[p].images
            for s, g in enumerate(gens):
                gim = g.images
                img = tuple(gim[x] for x in pim)
                if img not in seen and img not in found:
                    found[img] = (p, s)
        layer = []
        for img in sorted(found):
            seen[img] = len(elements)
            layer.append(len(elements))
            elements.append(Permutation._trusted(img))
            parents.append(found[img])
    return PermutationGroup(degree, gens, elements, parents)


def trivial_group(degree: int) -> PermutationGroup:
    return group_closure(degree, [])


def shifted(p: Permutation, offset: int, degree: int) -> Permutation:
    """``p`` acting on ``offset .. offset+p.degree-1`` inside a larger degree."""
    images = list(range(degree))
    for x, y in enumerate(p.images):
        images[offset + x] = offset + y
    return Permutation._trusted(tuple(images))


def direct_product(G: PermutationGroup, K: PermutationGroup) -> PermutationGroup:
    """``G × K`` acting on ``G.degree + K.degree`` points, ``G`` on the first block."""
    n = G.degree + K.degree
    gens = [shifted(g, 0, n) for g in G.generators] + [shifted(k, G.degree, n) for k in K.generators]
    return group_closure(n, gens)


def split_product_element(p: Permutation, first: int) -> tuple[Permutation, Permutation]:
    """Inverse of :func:`direct_product` on elements: the two block components."""
    a = tuple(p.images[:first])
    b = tuple(x - first for x in p.images[first:])
    if sorted(a) != list(range(first)):
        raise ValueError(f"{p!r} does not preserve the first {first} points")
    return Permutation(a), Permutation(b)


@functools.lru_cache(maxsize=None)
def symmetric_group(n: int) -> PermutationGroup:
    if n < 0:
        raise ValueError("degree must be non-negative")
    gens = []
    if n >= 2:
        gens.append(Permutation.from_cycles(n, [(0, 1)]))
        gens.append(Permutation.from_cycles(n, [tuple(range(n))]))
    return group_closure(n, gens)


@functools.lru_cache(maxsize=None)
def young_embedding(i: int, j: int) -> PermutationGroup:
    """Σ_i × Σ_j inside Σ_{i+j}, stabilizing ``{0..i-1}`` and ``{i..i+j-1}``."""
    if i < 0 or j < 0:
        raise ValueError("block sizes must be non-negative")
    n = i + j
    gens = []
    for start, size in ((0, i), (i, j)):
        if size >= 2:
            gens.append(Permutation.from_cycles(n, [(start, start + 1)]))
            gens.append(Permutation.from_cycles(n, [tuple(range(start, start + size))]))
    return group_closure(n, gens)


def canonical_permutation(t: CycleType) -> Permutation:
    """Consecutive cycles ``(0 1 .. d1-1)(d1 .. d1+d2-1)...``."""
    cycles = []
    start = 0
    for d in t.partition:
        cycles.append(tuple(range(start, start + d)))
        start += d
    return Permutation.from_cycles(t.n, cycles)


def cyclic_from_cycle_type(t: CycleType) -> PermutationGroup:
    return group_closure(t.n, [canonical_permutation(t)])
