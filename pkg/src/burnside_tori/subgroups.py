"""Conjugacy classes of subgroups and tables of marks.

Classes are found bottom-up: cyclic subgroups first, then every known class
representative ``H`` is extended by one element ``g`` outside it and closed.
Extensions ``<H, g>`` and ``<H, n h g n^-1>`` (``h`` in ``H``, ``n`` in the
normalizer) are conjugate, so only one of them is closed.

The canonical order of classes is by (order, sorted cycle types of the
elements, smallest sorted element-code list over all conjugates).  The class
representative is the conjugate realising that smallest list.
"""

from __future__ import annotations

import json
import logging
import os
from collections import defaultdict
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .permgroup import GroupData, Permutation, PermutationGroup, group_closure, symmetric_group

logger = logging.getLogger(__name__)

__all__ = [
    "SubgroupClass",
    "SubgroupTable",
    "GroupTooLargeError",
    "enumerate_subgroup_classes",
    "subgroup_table",
    "symmetric_table",
    "are_conjugate",
    "CACHE_FORMAT_VERSION",
    "set_cache_dir",
]

MAX_GROUP_ORDER = 5040
CACHE_FORMAT_VERSION = 1


class GroupTooLargeError(ValueError):
    pass


@dataclass(frozen=True)
class SubgroupClass:
    representative: PermutationGroup
    order: int
    normalizer_order: int
    canonical_key: tuple


def _mask_of(data: GroupData, H: PermutationGroup) -> np.ndarray:
    mask = np.zeros(data.group.order, dtype=bool)
    try:
        mask[[data.group.index(h) for h in H.elements]] = True
    except KeyError:
        raise ValueError(f"{H!r} is not contained in {data.group!r}") from None
    return mask


def _invariant(data: GroupData, mask: np.ndarray) -> tuple:
    counts = np.bincount(data.ctype_id[mask], minlength=len(data.ctype_names))
    return (int(mask.sum()), tuple(int(c) for c in counts))


def _gens_conjugate_into(data: GroupData, gens: Sequence[int], target: np.ndarray) -> np.ndarray:
    """Indices ``g`` with ``g x g^-1`` in ``target`` for every ``x`` in ``gens``."""
    if len(gens) == 0:
        return np.arange(data.group.order)
    conj = data.conjugates(np.asarray(gens, dtype=np.int64))
    return np.flatnonzero(target[conj].all(axis=1))


def _canonical_min(data: GroupData, mask: np.ndarray) -> tuple[tuple[int, ...], int]:
    """Smallest sorted code list among conjugates of ``mask``, and a conjugator realising it."""
    elems = np.flatnonzero(mask)
    order = data.group.order
    best = None
    best_g = 0
    chunk = max(1, 2_000_000 // max(1, elems.size))
    for lo in range(0, order, chunk):
        g = np.arange(lo, min(order, lo + chunk))
        codes = np.sort(data.codes[data.conjugates(elems, by=g)], axis=1)
        # lexicographic minimum row: lexsort sorts by last key first
        idx = np.lexsort(codes.T[::-1]) if codes.shape[1] else np.array([0])
        row = tuple(int(c) for c in codes[idx[0]])
        if best is None or row < best:
            best = row
            best_g = int(g[idx[0]])
    return best, best_g


class SubgroupTable:
    """Subgroup classes of ``ambient`` in canonical order, with the table of marks.

    ``marks[r][c]`` is the number of points of ``ambient/classes[r]`` fixed by
    ``classes[c]``.  Column 0 is the trivial subgroup, the last class is the
    whole group.
    """

    def __init__(self, ambient: PermutationGroup, classes: Sequence[SubgroupClass], marks: Sequence[Sequence[int]]):
        self.ambient = ambient
        self.classes = tuple(classes)
        self.marks = tuple(tuple(int(v) for v in row) for row in marks)
        self._marks_arr = np.array(self.marks, dtype=np.int64).reshape(len(self.classes), len(self.classes))
        self._lookup: dict[frozenset, int] = {}
        self._by_invariant: dict[tuple, list[int]] | None = None
        self._masks: list[np.ndarray] | None = None
        for c, cls in enumerate(self.classes):
            self._lookup[cls.representative.key] = c

    def __len__(self):
        return len(self.classes)

    def __repr__(self):
        return f"SubgroupTable(order={self.ambient.order}, degree={self.ambient.degree}, classes={len(self)})"

    @property
    def marks_array(self) -> np.ndarray:
        return self._marks_arr

    @property
    def top(self) -> int:
        """Index of the class of the whole group (the unit of the Burnside ring)."""
        return len(self.classes) - 1

    def label(self, c: int) -> str:
        return f"o{self.classes[c].order}_c{c}"

    def representative(self, c: int) -> PermutationGroup:
        return self.classes[c].representative

    def _prepare(self):
        if self._by_invariant is None:
            data = self.ambient.data
            self._masks = [_mask_of(data, cls.representative) for cls in self.classes]
            by_inv = defaultdict(list)
            for c, m in enumerate(self._masks):
                by_inv[_invariant(data, m)].append(c)
            self._by_invariant = dict(by_inv)

    def class_of(self, H: PermutationGroup) -> int:
        """Index of the conjugacy class containing the subgroup ``H``."""
        hit = self._lookup.get(H.key)
        if hit is not None:
            return hit
        if H.degree != self.ambient.degree or not H.key <= self.ambient.key:
            raise ValueError(f"{H!r} is not a subgroup of the ambient group")
        self._prepare()
        data = self.ambient.data
        mask = _mask_of(data, H)
        cands = self._by_invariant.get(_invariant(data, mask), [])
        found = None
        if len(cands) == 1:
            found = cands[0]
        else:
            gens = [data.group.index(g) for g in H.generators]
            for c in cands:
                if _gens_conjugate_into(data, gens, self._masks[c]).size:
                    found = c
                    break
        if found is None:
            raise ValueError(f"{H!r} matches no subgroup class (is it closed?)")
        self._lookup[H.key] = found
        return found

    def class_of_elements(self, elements: Sequence[Permutation]) -> int:
        key = frozenset(g.images for g in elements)
        hit = self._lookup.get(key)
        if hit is not None:
            return hit
        return self.class_of(PermutationGroup.from_elements(self.ambient.degree, elements))

    def subconjugate(self, c: int, r: int) -> bool:
        """Whether ``classes[c]`` is conjugate to a subgroup of ``classes[r]``."""
        return self._marks_arr[r, c] != 0

    # cache file -----------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "format_version": CACHE_FORMAT_VERSION,
            "degree": self.ambient.degree,
            "classes": [
                {
                    "order": cls.order,
                    "normalizer_order": cls.normalizer_order,
                    "generators": [list(g.images) for g in cls.representative.generators],
                }
                for cls in self.classes
            ],
            "marks": [list(row) for row in self.marks],
        }

    @classmethod
    def from_json(cls, ambient: PermutationGroup, payload: dict) -> "SubgroupTable":
        if payload.get("format_version") != CACHE_FORMAT_VERSION:
            raise ValueError("unsupported cache format version")
        if payload.get("degree") != ambient.degree:
            raise ValueError("cache degree does not match")
        data = ambient.data
        classes = []
        for entry in payload["classes"]:
            rep = group_closure(ambient.degree, [Permutation(g) for g in entry["generators"]])
            if rep.order != entry["order"] or not rep.is_subgroup_of(ambient):
                raise ValueError("cached representative does not match its recorded order")
            mask = _mask_of(data, rep)
            key = _full_key(data, mask)
            classes.append(SubgroupClass(rep, rep.order, int(entry["normalizer_order"]), key))
        keys = [c.canonical_key for c in classes]
        if keys != sorted(keys) or len(set(keys)) != len(keys):
            raise ValueError("cached classes are not in canonical order")
        marks = payload["marks"]
        if len(marks) != len(classes) or any(len(r) != len(classes) for r in marks):
            raise ValueError("cached marks matrix has the wrong shape")
        for r, c in enumerate(classes):
            if any(marks[r][r + 1:]) or marks[r][r] * c.order != c.normalizer_order \
                    or marks[r][0] * c.order != ambient.order:
                raise ValueError(f"cached marks row {r} is inconsistent")
        return cls(ambient, classes, marks)


def _full_key(data: GroupData, mask: np.ndarray) -> tuple:
    ctypes = tuple(sorted(data.ctype_names[i] for i in data.ctype_id[mask]))
    min_codes, _ = _canonical_min(data, mask)
    return (int(mask.sum()), ctypes, min_codes)


def enumerate_subgroup_classes(G: PermutationGroup, cap: int = MAX_GROUP_ORDER) -> SubgroupTable:
    """Compute the subgroup classes and table of marks of ``G`` from scratch."""
    if G.order > cap:
        raise GroupTooLargeError(f"group of order {G.order} exceeds the cap {cap}")
    data = G.data
    order = G.order

    reps: list[tuple[np.ndarray, list[int]]] = []
    seen: dict[bytes, int] = {}
    by_inv: dict[tuple, list[int]] = defaultdict(list)

    def register(mask: np.ndarray, gens: list[int]) -> None:
        key = mask.tobytes()
        if key in seen:
            return
        inv = _invariant(data, mask)
        for c in by_inv[inv]:
            if _gens_conjugate_into(data, gens, reps[c][0]).size:
                seen[key] = c
                return
        seen[key] = len(reps)
        by_inv[inv].append(len(reps))
        reps.append((mask, gens))

    register(data.closure([]), [])
    for g in range(1, order):
        register(data.closure([g]), [g])

    c = 0
    while c < len(reps):
        mask, gens = reps[c]
        normalizer = _gens_conjugate_into(data, gens, mask)
        h_elems = np.flatnonzero(mask)
        covered = mask.copy()
        for g in range(order):
            if covered[g]:
                continue
            new_gens = gens + [g]
            register(data.closure(new_gens, start=mask), new_gens)
            coset = data.mult[h_elems, g].astype(np.int64)
            covered[data.conjugates(coset, by=normalizer).ravel()] = True
        c += 1

    entries = []
    for mask, gens in reps:
        ctypes = tuple(sorted(data.ctype_names[i] for i in data.ctype_id[mask]))
        min_codes, g = _canonical_min(data, mask)
        conj_gens = data.conjugates(np.asarray(gens, dtype=np.int64), by=np.array([g]))[0] if gens else []
        rep = group_closure(G.degree, [G.elements[int(k)] for k in conj_gens])
        rep_mask = _mask_of(data, rep)
        assert tuple(sorted(int(x) for x in data.codes[rep_mask])) == min_codes
        normalizer_order = int(_gens_conjugate_into(data, [G.index(x) for x in rep.generators], rep_mask).size)
        key = (int(mask.sum()), ctypes, min_codes)
        entries.append((key, rep, rep_mask, normalizer_order))
    entries.sort(key=lambda e: e[0])

    classes = [SubgroupClass(rep, rep.order, no, key) for key, rep, _, no in entries]
    marks = _marks(data, [e[1] for e in entries], [e[2] for e in entries])
    return SubgroupTable(G, classes, marks)


def _marks(data: GroupData, reps: Sequence[PermutationGroup], masks: Sequence[np.ndarray]) -> list[list[int]]:
    k = len(reps)
    marks = [[0] * k for _ in range(k)]
    for c, K in enumerate(reps):
        gens = np.asarray([data.group.index(x) for x in K.generators], dtype=np.int64)
        conj = data.conjugates(gens) if gens.size else np.zeros((data.group.order, 0), dtype=np.int64)
        for r in range(k):
            hits = int(masks[r][conj].all(axis=1).sum())
            marks[r][c] = hits // reps[r].order
    return marks


def are_conjugate(G: PermutationGroup, H1: PermutationGroup, H2: PermutationGroup) -> tuple[bool, Permutation | None]:
    """Whether ``g H1 g^-1 = H2`` for some ``g`` in ``G``; returns the first such ``g``."""
    for H in (H1, H2):
        if not H.is_subgroup_of(G):
            raise ValueError(f"{H!r} is not a subgroup of {G!r}")
    if H1.order != H2.order:
        return False, None
    data = G.data
    target = _mask_of(data, H2)
    gens = [G.index(x) for x in H1.generators]
    hits = _gens_conjugate_into(data, gens, target)
    if hits.size == 0:
        return False, None
    return True, G.elements[int(hits[0])]


# caching ------------------------------------------------------------------

_TABLES: dict[tuple[int, frozenset], SubgroupTable] = {}
_cache_dir: Path | None = None
_cache_dir_set = False


def set_cache_dir(path: str | os.PathLike | None) -> None:
    """Directory for symmetric-group table files; ``None`` falls back to ``BURNSIDE_CACHE_DIR``."""
    global _cache_dir, _cache_dir_set
    _cache_dir = Path(path) if path is not None else None
    _cache_dir_set = path is not None


def cache_dir() -> Path | None:
    if _cache_dir_set:
        return _cache_dir
    env = os.environ.get("BURNSIDE_CACHE_DIR")
    return Path(env) if env else None


def cache_path(degree: int, directory: Path | None = None) -> Path | None:
    directory = directory if directory is not None else cache_dir()
    if directory is None:
        return None
    return Path(directory) / f"sym{degree}_v{CACHE_FORMAT_VERSION}.json"


def subgroup_table(G: PermutationGroup) -> SubgroupTable:
    """Memoised :func:`enumerate_subgroup_classes`."""
    key = (G.degree, G.key)
    table = _TABLES.get(key)
    if table is None:
        if G.order == symmetric_group(G.degree).order:
            return symmetric_table(G.degree)
        table = enumerate_subgroup_classes(G)
        _TABLES[key] = table
    return table


# last symmetric-table lookup: "memory", "disk" or "computed"
last_table_source: dict[int, str] = {}


def symmetric_table(n: int) -> SubgroupTable:
    """Table for Σ_n, read from / written to the cache directory when one is configured."""
    G = symmetric_group(n)
    key = (G.degree, G.key)
    if key in _TABLES:
        last_table_source[n] = "memory"
        return _TABLES[key]
    path = cache_path(n)
    if path is not None and path.exists():
        try:
            table = SubgroupTable.from_json(G, json.loads(path.read_text()))
            _TABLES[key] = table
            last_table_source[n] = "disk"
            return table
        except (ValueError, KeyError, TypeError, json.JSONDecodeError) as exc:
            logger.warning("ignoring corrupt subgroup cache %s: %s", path, exc)
    table = enumerate_subgroup_classes(G)
    _TABLES[key] = table
    last_table_source[n] = "computed"
    if path is not None:
        path.parent.mkdir(parents=True, exist_ok=True)
        tmp = path.with_suffix(".tmp")
        tmp.write_text(json.dumps(table.to_json()))
        tmp.replace(path)
    return table
