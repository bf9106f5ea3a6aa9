"""Burnside rings in the basis of transitive G-sets.

An element is an integer vector over the subgroup classes of a
:class:`~burnside_tori.subgroups.SubgroupTable`; coordinate ``c`` is the
coefficient of ``[G/H_c]``.  Products of basis elements come from the orbit
decomposition of ``G/H × G/K``; :func:`double_coset_product` recomputes them
independently through double cosets.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from ._ints import checked
from .gset import GSet, _stabilizer_classes, coset_space, restrict
from .permgroup import PermutationGroup, direct_product, group_closure, shifted, symmetric_group, young_embedding
from .subgroups import SubgroupTable, subgroup_table, symmetric_table

__all__ = [
    "BurnsideElement",
    "from_gset",
    "from_marks",
    "mark_at",
    "augmentation",
    "induce_b",
    "restrict_b",
    "outer_product",
    "outer_young",
    "double_coset_product",
]


class BurnsideElement:
    """A virtual G-set ``sum coeffs[c] [G/H_c]``."""

    __slots__ = ("table", "coeffs")

    def __init__(self, table: SubgroupTable, coeffs: Iterable[int]):
        coeffs = tuple(checked(c, "Burnside coefficient") for c in coeffs)
        if len(coeffs) != len(table):
            raise ValueError(f"expected {len(table)} coefficients, got {len(coeffs)}")
        self.table = table
        self.coeffs = coeffs

    @classmethod
    def zero(cls, table: SubgroupTable) -> "BurnsideElement":
        return cls(table, [0] * len(table))

    @classmethod
    def one(cls, table: SubgroupTable) -> "BurnsideElement":
        return cls.basis(table, table.top)

    @classmethod
    def integer(cls, table: SubgroupTable, k: int) -> "BurnsideElement":
        coeffs = [0] * len(table)
        coeffs[table.top] = k
        return cls(table, coeffs)

    @classmethod
    def basis(cls, table: SubgroupTable, c: int) -> "BurnsideElement":
        coeffs = [0] * len(table)
        coeffs[c] = 1
        return cls(table, coeffs)

    @property
    def group(self) -> PermutationGroup:
        return self.table.ambient

    def _same(self, other: "BurnsideElement") -> None:
        if self.table is not other.table:
            raise ValueError("Burnside elements over different subgroup tables")

    def _coerce(self, other) -> "BurnsideElement":
        if isinstance(other, (int, np.integer)):
            return BurnsideElement.integer(self.table, int(other))
        if isinstance(other, BurnsideElement):
            self._same(other)
            return other
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return BurnsideElement(self.table, (a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return BurnsideElement(self.table, (-a for a in self.coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, np.integer)):
            return BurnsideElement(self.table, (int(other) * a for a in self.coeffs))
        if not isinstance(other, BurnsideElement):
            return NotImplemented
        self._same(other)
        structure = _structure(self.table)
        out = [0] * len(self.table)
        for r, a in enumerate(self.coeffs):
            if not a:
                continue
            for s, b in enumerate(other.coeffs):
                if not b:
                    continue
                for c, k in structure.product(r, s):
                    out[c] += a * b * k
        return BurnsideElement(self.table, out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, (int, np.integer)):
            other = BurnsideElement.integer(self.table, int(other))
        if not isinstance(other, BurnsideElement):
            return NotImplemented
        return self.table is other.table and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((id(self.table), self.coeffs))

    def __bool__(self):
        return any(self.coeffs)

    def is_effective(self) -> bool:
        return all(c >= 0 for c in self.coeffs)

    def marks(self) -> tuple[int, ...]:
        """Ghost vector: the mark at every subgroup class."""
        v = np.array(self.coeffs, dtype=object) @ self.table.marks_array.astype(object)
        return tuple(checked(x, "mark") for x in v)

    def augmentation(self) -> int:
        return self.marks()[0]

    def mark_at(self, H: PermutationGroup) -> int:
        return mark_at(self, H)

    def to_json(self) -> list[dict]:
        return [{"class_label": self.table.label(c), "coeff": k} for c, k in enumerate(self.coeffs) if k]

    @classmethod
    def from_json(cls, table: SubgroupTable, payload: Sequence[dict]) -> "BurnsideElement":
        labels = {table.label(c): c for c in range(len(table))}
        coeffs = [0] * len(table)
        for entry in payload:
            coeffs[labels[entry["class_label"]]] += int(entry["coeff"])
        return cls(table, coeffs)

    def render(self) -> str:
        """Human-readable form; the class of the whole group is written as an integer."""
        terms = []
        for c, k in enumerate(self.coeffs):
            if not k:
                continue
            if c == self.table.top:
                body = str(abs(k))
            else:
                body = ("" if abs(k) == 1 else str(abs(k))) + f"[{self.table.label(c)}]"
            terms.append(("-" if k < 0 else "+", body))
        if not terms:
            return "0"
        text = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        for sign, body in terms[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self):
        return f"BurnsideElement({self.render()})"


class _Structure:
    """Lazily computed structure constants ``[G/H_r]·[G/H_s] = sum k [G/H_c]``."""

    def __init__(self, table: SubgroupTable):
        self.table = table
        self._cosets: dict[int, GSet] = {}
        self._products: dict[tuple[int, int], tuple[tuple[int, int], ...]] = {}

    def coset(self, c: int) -> GSet:
        S = self._cosets.get(c)
        if S is None:
            S = coset_space(self.table.ambient, self.table.representative(c))
            self._cosets[c] = S
        return S

    def product(self, r: int, s: int) -> tuple[tuple[int, int], ...]:
        key = (min(r, s), max(r, s))
        hit = self._products.get(key)
        if hit is None:
            from .gset import product

            vec = from_gset(product(self.coset(key[0]), self.coset(key[1])), self.table)
            hit = tuple((c, k) for c, k in enumerate(vec.coeffs) if k)
            self._products[key] = hit
        return hit


def _structure(table: SubgroupTable) -> _Structure:
    st = getattr(table, "_structure", None)
    if st is None:
        st = _Structure(table)
        table._structure = st
    return st


def from_gset(S: GSet, table: SubgroupTable | None = None) -> BurnsideElement:
    """Class of ``S``: number of orbits per stabilizer class."""
    table = table if table is not None else subgroup_table(S.group)
    if table.ambient != S.group:
        raise ValueError("subgroup table belongs to a different group")
    coeffs = [0] * len(table)
    for _, c in _stabilizer_classes(S, table):
        coeffs[c] += 1
    return BurnsideElement(table, coeffs)


def from_marks(table: SubgroupTable, marks: Sequence[int]) -> BurnsideElement:
    """Invert the ghost map by back-substitution in the triangular table of marks.

    Raises ``ValueError`` if the marks are not those of an integral element.
    """
    M = table.marks
    k = len(table)
    if len(marks) != k:
        raise ValueError(f"expected {k} marks")
    coeffs = [0] * k
    for j in range(k - 1, -1, -1):
        rest = int(marks[j]) - sum(coeffs[c] * M[c][j] for c in range(j + 1, k) if coeffs[c])
        q, rem = divmod(rest, M[j][j])
        if rem:
            raise ValueError("marks vector is not in the image of the Burnside ring")
        coeffs[j] = q
    return BurnsideElement(table, coeffs)


def mark_at(x: BurnsideElement, H: PermutationGroup) -> int:
    """Number of ``H``-fixed points of ``x`` (extended linearly)."""
    c = x.table.class_of(H)
    col = x.table.marks_array[:, c]
    return checked(sum(int(a) * int(m) for a, m in zip(x.coeffs, col) if a), "mark")


def augmentation(x: BurnsideElement) -> int:
    return x.augmentation()


def _induction_map(H_table: SubgroupTable, G_table: SubgroupTable) -> tuple[int, ...]:
    cache = G_table.__dict__.setdefault("_induction_maps", {})
    key = id(H_table)
    hit = cache.get(key)
    if hit is None:
        hit = tuple(G_table.class_of(H_table.representative(c)) for c in range(len(H_table)))
        cache[key] = (H_table, hit)
        return hit
    return hit[1]


def induce_b(H: PermutationGroup, G: PermutationGroup, x: BurnsideElement) -> BurnsideElement:
    """``Ind_H^G``: ``[H/K] -> [G/K]``."""
    if x.group != H:
        raise ValueError("x must live over H")
    if not H.is_subgroup_of(G):
        raise ValueError(f"{H!r} is not a subgroup of {G!r}")
    G_table = subgroup_table(G)
    images = _induction_map(x.table, G_table)
    out = [0] * len(G_table)
    for c, k in enumerate(x.coeffs):
        if k:
            out[images[c]] += k
    return BurnsideElement(G_table, out)


def _restriction_map(G_table: SubgroupTable, H_table: SubgroupTable) -> tuple[tuple[int, ...], ...]:
    cache = G_table.__dict__.setdefault("_restriction_maps", {})
    hit = cache.get(id(H_table))
    if hit is None:
        H = H_table.ambient
        st = _structure(G_table)
        rows = tuple(from_gset(restrict(st.coset(c), H), H_table).coeffs for c in range(len(G_table)))
        cache[id(H_table)] = (H_table, rows)
        return rows
    return hit[1]


def restrict_b(G: PermutationGroup, H: PermutationGroup, x: BurnsideElement) -> BurnsideElement:
    """``Res^G_H``: each ``G/K`` decomposed as an ``H``-set."""
    if x.group != G:
        raise ValueError("x must live over G")
    if not H.is_subgroup_of(G):
        raise ValueError(f"{H!r} is not a subgroup of {G!r}")
    H_table = subgroup_table(H)
    rows = _restriction_map(x.table, H_table)
    out = [0] * len(H_table)
    for c, k in enumerate(x.coeffs):
        if k:
            for d, v in enumerate(rows[c]):
                out[d] += k * v
    return BurnsideElement(H_table, out)


def _product_subgroup(A: PermutationGroup, B: PermutationGroup) -> PermutationGroup:
    n = A.degree + B.degree
    gens = [shifted(a, 0, n) for a in A.generators] + [shifted(b, A.degree, n) for b in B.generators]
    return group_closure(n, gens)


def outer_product(x: BurnsideElement, y: BurnsideElement) -> BurnsideElement:
    """``[G/A] ⊠ [K/B] = [(G×K)/(A×B)]``, extended bilinearly, over ``direct_product(G, K)``."""
    GK = direct_product(x.group, y.group)
    table = subgroup_table(GK)
    cache = table.__dict__.setdefault("_outer_maps", {})
    key = (id(x.table), id(y.table))
    hit = cache.get(key)
    if hit is None:
        cmap = {}
        for a in range(len(x.table)):
            for b in range(len(y.table)):
                AB = _product_subgroup(x.table.representative(a), y.table.representative(b))
                cmap[a, b] = table.class_of(AB)
        cache[key] = (x.table, y.table, cmap)
    else:
        cmap = hit[2]
    out = [0] * len(table)
    for a, p in enumerate(x.coeffs):
        if p:
            for b, q in enumerate(y.coeffs):
                if q:
                    out[cmap[a, b]] += p * q
    return BurnsideElement(table, out)


def outer_young(x: BurnsideElement, y: BurnsideElement) -> BurnsideElement:
    """Outer product of ``x`` over Σ_i and ``y`` over Σ_j, landing over the Young subgroup Σ_i × Σ_j."""
    i, j = x.group.degree, y.group.degree
    if x.group != symmetric_group(i) or y.group != symmetric_group(j):
        raise ValueError("outer_young expects elements over full symmetric groups")
    out = outer_product(x, y)
    assert out.group == young_embedding(i, j)
    return out


def double_coset_product(G: PermutationGroup, H: PermutationGroup, K: PermutationGroup) -> BurnsideElement:
    """``sum over HgK of [G/(H ∩ gKg^-1)]``; equals ``[G/H]·[G/K]``."""
    for X in (H, K):
        if not X.is_subgroup_of(G):
            raise ValueError(f"{X!r} is not a subgroup of {G!r}")
    table = subgroup_table(G)
    data = G.data
    h_idx = np.array([G.index(h) for h in H.elements], dtype=np.int64)
    k_idx = np.array([G.index(k) for k in K.elements], dtype=np.int64)
    in_h = np.zeros(G.order, dtype=bool)
    in_h[h_idx] = True
    covered = np.zeros(G.order, dtype=bool)
    coeffs = [0] * len(table)
    for g in range(G.order):
        if covered[g]:
            continue
        hg = data.mult[h_idx, g].astype(np.int64)
        covered[data.mult[hg[:, None], k_idx[None, :]].ravel()] = True
        conj = data.conjugates(k_idx, by=np.array([g]))[0]
        inter = np.zeros(G.order, dtype=bool)
        inter[conj[in_h[conj]]] = True
        coeffs[table.class_of(data.subgroup(inter))] += 1
    return BurnsideElement(table, coeffs)


def symmetric_one(n: int) -> BurnsideElement:
    return BurnsideElement.one(symmetric_table(n))
