"""Polynomials in L over Burnside rings and the induction ∗-product.

A :class:`Series` ``sum a_i T^i`` has ``a_i`` in ``B(Σ_i)[L]``.  The product is

    (a ∗ b)_n = sum_{i+j=n} Ind_{Σ_i×Σ_j}^{Σ_n}(a_i ⊠ b_j),

with ``L`` passing through induction and outer products.  Series with
``a_0 = 1`` form a group, and :func:`exp_lpoly` sends an integer polynomial in
``L`` to the series of its symmetric powers.
"""

from __future__ import annotations

import functools
from typing import Iterable, Sequence

from .burnside import BurnsideElement, from_gset, induce_b, outer_young, restrict_b
from .gset import power, trivial_gset
from .permgroup import PermutationGroup, symmetric_group, trivial_group, young_embedding
from .subgroups import SubgroupTable, subgroup_table, symmetric_table

__all__ = [
    "LPolynomial",
    "Series",
    "ind_outer",
    "star_mul",
    "star_inverse",
    "exp_monomial",
    "exp_lpoly",
    "int_power",
    "minus_one_power",
    "DEFAULT_TRUNCATION",
    "MAX_TRUNCATION",
]

DEFAULT_TRUNCATION = 7
MAX_TRUNCATION = 7


class LPolynomial:
    """``sum_k coeffs[k] L^k`` with Burnside-ring coefficients over one table."""

    __slots__ = ("table", "coeffs")

    def __init__(self, table: SubgroupTable, coeffs: Iterable[BurnsideElement | int]):
        out = []
        for c in coeffs:
            if isinstance(c, BurnsideElement):
                if c.table is not table:
                    raise ValueError("coefficient over a different subgroup table")
                out.append(c)
            else:
                out.append(BurnsideElement.integer(table, int(c)))
        while out and not out[-1]:
            out.pop()
        self.table = table
        self.coeffs = tuple(out)

    @classmethod
    def zero(cls, table: SubgroupTable) -> "LPolynomial":
        return cls(table, [])

    @classmethod
    def one(cls, table: SubgroupTable) -> "LPolynomial":
        return cls(table, [1])

    @classmethod
    def monomial(cls, x: BurnsideElement, k: int) -> "LPolynomial":
        return cls(x.table, [0] * k + [x])

    @property
    def group(self) -> PermutationGroup:
        return self.table.ambient

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, k: int) -> BurnsideElement:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return BurnsideElement.zero(self.table)

    def shift(self, k: int) -> "LPolynomial":
        """Multiply by ``L^k``."""
        return LPolynomial(self.table, [0] * k + list(self.coeffs)) if self.coeffs else self

    def _coerce(self, other) -> "LPolynomial":
        if isinstance(other, int):
            return LPolynomial(self.table, [other])
        if isinstance(other, BurnsideElement):
            return LPolynomial(self.table, [other])
        if isinstance(other, LPolynomial):
            if other.table is not self.table:
                raise ValueError("L-polynomials over different subgroup tables")
            return other
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = max(len(self.coeffs), len(other.coeffs))
        return LPolynomial(self.table, [self.coeff(k) + other.coeff(k) for k in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return LPolynomial(self.table, [-c for c in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.coeffs or not other.coeffs:
            return LPolynomial.zero(self.table)
        out = [BurnsideElement.zero(self.table) for _ in range(len(self.coeffs) + len(other.coeffs) - 1)]
        for a, x in enumerate(self.coeffs):
            for b, y in enumerate(other.coeffs):
                if x and y:
                    out[a + b] = out[a + b] + x * y
        return LPolynomial(self.table, out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, (int, BurnsideElement)):
            other = self._coerce(other)
        if not isinstance(other, LPolynomial):
            return NotImplemented
        return self.table is other.table and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((id(self.table), self.coeffs))

    def __bool__(self):
        return bool(self.coeffs)

    def restrict(self, H: PermutationGroup) -> "LPolynomial":
        """Coefficientwise restriction to a subgroup ``H``."""
        H_table = subgroup_table(H)
        return LPolynomial(H_table, [restrict_b(self.group, H, c) for c in self.coeffs])

    def evaluate_marks(self, H: PermutationGroup, q: int) -> int:
        """``sum_k mark_H(coeff_k) q^k``."""
        return sum(c.mark_at(H) * q**k for k, c in enumerate(self.coeffs))

    def integer_coeffs(self) -> list[int]:
        """Coefficients as integers; only valid when every coefficient is a multiple of 1."""
        out = []
        for c in self.coeffs:
            if any(v for k, v in enumerate(c.coeffs) if k != self.table.top):
                raise ValueError("coefficient is not an integer multiple of the unit")
            out.append(c.coeffs[self.table.top])
        return out

    def to_json(self) -> dict:
        return {"L_coeffs": [c.to_json() for c in self.coeffs]}

    @classmethod
    def from_json(cls, table: SubgroupTable, payload: dict) -> "LPolynomial":
        return cls(table, [BurnsideElement.from_json(table, c) for c in payload["L_coeffs"]])

    def render(self) -> str:
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            body = c.render()
            neg = False
            nonzero = [v for v in c.coeffs if v]
            if len(nonzero) == 1:
                neg = nonzero[0] < 0
                if neg:
                    body = body[1:]
                if k and body == "1":
                    body = ""
            elif k or body.startswith("-"):
                body = f"({body})"
            power = "" if k == 0 else ("L" if k == 1 else f"L^{k}")
            term = body + ("*" if body and power else "") + power
            terms.append(("-" if neg else "+", term))
        if not terms:
            return "0"
        text = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        for sign, t in terms[1:]:
            text += f" {sign} {t}"
        return text

    def __repr__(self):
        return f"LPolynomial({self.render()})"


# ∗-product ------------------------------------------------------------------


@functools.lru_cache(maxsize=None)
def _ind_outer_map(i: int, j: int) -> tuple[tuple[int, ...], ...]:
    """``out[a][b]``: class in Σ_{i+j} of ``Ind(e_a ⊠ e_b)`` for basis elements of Σ_i, Σ_j."""
    Ti, Tj = symmetric_table(i), symmetric_table(j)
    Y = young_embedding(i, j)
    Sn = symmetric_group(i + j)
    rows = []
    for a in range(len(Ti)):
        row = []
        for b in range(len(Tj)):
            x = induce_b(Y, Sn, outer_young(BurnsideElement.basis(Ti, a), BurnsideElement.basis(Tj, b)))
            (c,) = [k for k, v in enumerate(x.coeffs) if v]
            assert x.coeffs[c] == 1
            row.append(c)
        rows.append(tuple(row))
    return tuple(rows)


def ind_outer(x: BurnsideElement, y: BurnsideElement) -> BurnsideElement:
    """``Ind_{Σ_i×Σ_j}^{Σ_{i+j}}(x ⊠ y)`` through a cached basis map."""
    i, j = x.group.degree, y.group.degree
    cmap = _ind_outer_map(i, j)
    table = symmetric_table(i + j)
    out = [0] * len(table)
    for a, p in enumerate(x.coeffs):
        if p:
            row = cmap[a]
            for b, q in enumerate(y.coeffs):
                if q:
                    out[row[b]] += p * q
    return BurnsideElement(table, out)


def _ind_outer_poly(x: LPolynomial, y: LPolynomial, n: int) -> LPolynomial:
    table = symmetric_table(n)
    out = [BurnsideElement.zero(table) for _ in range(max(0, len(x.coeffs) + len(y.coeffs) - 1))]
    for a, u in enumerate(x.coeffs):
        for b, v in enumerate(y.coeffs):
            if u and v:
                out[a + b] = out[a + b] + ind_outer(u, v)
    return LPolynomial(table, out)


class Series:
    """Truncated ``sum_{i<=N} a_i T^i`` with ``a_i`` in ``B(Σ_i)[L]``."""

    __slots__ = ("truncation", "coeffs")

    def __init__(self, truncation: int, coeffs: Sequence[LPolynomial | BurnsideElement | int]):
        if not 0 <= truncation <= MAX_TRUNCATION:
            raise ValueError(f"truncation must lie in 0..{MAX_TRUNCATION}")
        out = []
        for i in range(truncation + 1):
            table = symmetric_table(i)
            c = coeffs[i] if i < len(coeffs) else 0
            if isinstance(c, LPolynomial):
                if c.table is not table:
                    raise ValueError(f"coefficient {i} must live over Σ_{i}")
            elif isinstance(c, BurnsideElement):
                c = LPolynomial(table, [c])
            else:
                c = LPolynomial(table, [int(c)])
            out.append(c)
        self.truncation = truncation
        self.coeffs = tuple(out)

    @classmethod
    def one(cls, truncation: int = DEFAULT_TRUNCATION) -> "Series":
        return cls(truncation, [1])

    def __getitem__(self, i: int) -> LPolynomial:
        return self.coeffs[i]

    def __eq__(self, other):
        if not isinstance(other, Series):
            return NotImplemented
        return self.truncation == other.truncation and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other: "Series") -> "Series":
        _check_truncation(self, other)
        return Series(self.truncation, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __mul__(self, other: "Series") -> "Series":
        return star_mul(self, other)

    def to_json(self) -> list[dict]:
        return [{"T_power": i, "L_coeffs": c.to_json()["L_coeffs"]} for i, c in enumerate(self.coeffs)]

    @classmethod
    def from_json(cls, payload: Sequence[dict]) -> "Series":
        n = max(e["T_power"] for e in payload)
        coeffs: list = [0] * (n + 1)
        for e in payload:
            i = e["T_power"]
            coeffs[i] = LPolynomial.from_json(symmetric_table(i), e)
        return cls(n, coeffs)

    def __repr__(self):
        return "Series(" + " + ".join(f"[{c.render()}]T^{i}" for i, c in enumerate(self.coeffs) if c) + ")"


def _check_truncation(a: Series, b: Series) -> None:
    if a.truncation != b.truncation:
        raise ValueError(f"truncation mismatch: {a.truncation} vs {b.truncation}")


def star_mul(a: Series, b: Series) -> Series:
    _check_truncation(a, b)
    out = []
    for n in range(a.truncation + 1):
        acc = LPolynomial.zero(symmetric_table(n))
        for i in range(n + 1):
            if a.coeffs[i] and b.coeffs[n - i]:
                acc = acc + _ind_outer_poly(a.coeffs[i], b.coeffs[n - i], n)
        out.append(acc)
    return Series(a.truncation, out)


def star_inverse(a: Series) -> Series:
    """Inverse of a series with ``a_0 = 1``, solved degree by degree."""
    if a.coeffs[0] != LPolynomial.one(symmetric_table(0)):
        raise ValueError("only series with constant term 1 are invertible")
    b: list[LPolynomial] = [LPolynomial.one(symmetric_table(0))]
    for n in range(1, a.truncation + 1):
        acc = LPolynomial.zero(symmetric_table(n))
        for i in range(1, n + 1):
            if a.coeffs[i] and b[n - i]:
                acc = acc + _ind_outer_poly(a.coeffs[i], b[n - i], n)
        b.append(-acc)
    return Series(a.truncation, b)


@functools.lru_cache(maxsize=None)
def _set_power(m: int, i: int) -> BurnsideElement:
    """``[m^{[i]}]``: Σ_i acting on functions ``[i] -> [m]``."""
    points = trivial_gset(trivial_group(0), m)
    return from_gset(power(points, i), symmetric_table(i))


def exp_monomial(m: int, d: int, truncation: int = DEFAULT_TRUNCATION) -> Series:
    """``exp(m L^d)``: coefficient ``i`` is ``L^{di} [m^{[i]}]``."""
    if m < 0 or d < 0:
        raise ValueError("exp_monomial needs m >= 0 and d >= 0")
    coeffs = [LPolynomial.monomial(_set_power(m, i), d * i) for i in range(truncation + 1)]
    return Series(truncation, coeffs)


def exp_lpoly(poly: Sequence[int], truncation: int = DEFAULT_TRUNCATION) -> Series:
    """``exp(sum_d poly[d] L^d)`` as the ∗-product over monomials.

    Negative coefficients use ``exp(-x) = exp(x)^{-1}``.
    """
    result = Series.one(truncation)
    for d, c in enumerate(poly):
        c = int(c)
        if c > 0:
            result = star_mul(result, exp_monomial(c, d, truncation))
        elif c < 0:
            result = star_mul(result, star_inverse(exp_monomial(-c, d, truncation)))
    return result


def int_power(m: int, i: int) -> BurnsideElement:
    """``m^{[i]}`` in ``B(Σ_i)`` for any integer ``m``."""
    coeff = exp_lpoly([m], i)[i]
    return coeff.coeff(0)


def minus_one_power(i: int) -> BurnsideElement:
    return int_power(-1, i)
