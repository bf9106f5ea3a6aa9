"""G-posets, chain sets and Lefschetz invariants.

Chains are strictly increasing tuples, so ``sd_chains(P, j)`` holds the
``j``-chains ``a_0 < ... < a_j`` (``j + 1`` points) and ``sd_chains(P, 0)`` is
the carrier itself.

Lefschetz invariants are computed either from explicit chain G-sets or from
their marks: the ``H``-fixed ``j``-chains of ``P`` are exactly the ``j``-chains
of the fixed subposet ``P^H``, which can be counted without listing them.
The ``"auto"`` method lists chains when they fit in memory.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from . import gset as _gset
from ._ints import IntegerOverflowError
from .burnside import BurnsideElement, from_gset, from_marks
from .gset import GSet, induce_gset
from .permgroup import PermutationGroup, symmetric_group
from .subgroups import SubgroupTable, subgroup_table

__all__ = [
    "GPoset",
    "omega_leq",
    "omega_flag",
    "adjoin_fixed_point",
    "sd_chains",
    "chain_marks",
    "sd_class",
    "lefschetz",
    "reduced_lefschetz",
    "induce_poset",
    "two_star_n",
    "equivariant_poset_iso",
    "opposite",
    "discrete",
    "cover_relations",
]

# action-table entries allowed when listing chains explicitly
MAX_TABLE_ENTRIES = 4_000_000
PLUS = "+"


class GPoset:
    """A G-set with a strict order preserved by the action.

    ``less[x, y]`` is true iff ``x < y``.
    """

    def __init__(self, carrier: GSet, less: np.ndarray, check: bool = True):
        less = np.asarray(less, dtype=bool)
        if less.shape != (carrier.size, carrier.size):
            raise ValueError("order matrix does not match the carrier")
        self.carrier = carrier
        self.less = less
        self.less.setflags(write=False)
        if check:
            self.check()

    @property
    def group(self) -> PermutationGroup:
        return self.carrier.group

    @property
    def size(self) -> int:
        return self.carrier.size

    @property
    def points(self):
        return self.carrier.points

    def __repr__(self):
        return f"GPoset(group order={self.group.order}, size={self.size}, relations={int(self.less.sum())})"

    def check(self) -> None:
        L = self.less
        if L.diagonal().any():
            raise ValueError("order is not irreflexive")
        if L.size and ((L.astype(np.int64) @ L.astype(np.int64) > 0) & ~L).any():
            raise ValueError("order is not transitive")
        for gen in self.group.generators:
            row = self.carrier.element_row(gen)
            if not np.array_equal(L[np.ix_(row, row)], L):
                raise ValueError("group action does not preserve the order")

    def chain_counts(self, mask: np.ndarray | None = None) -> list[int]:
        """``counts[j]`` = number of ``j``-chains, optionally inside the subposet ``mask``."""
        L = self.less if mask is None else self.less[np.ix_(mask, mask)]
        Lt = L.T.astype(np.int64)
        h = np.ones(L.shape[0], dtype=np.int64)
        counts = []
        while h.size and h.any():
            total = int(h.sum(dtype=np.float64))
            if total >= 2**62:
                raise IntegerOverflowError("chain count exceeds the signed 64-bit range")
            counts.append(int(h.sum()))
            h = Lt @ h
        return counts


def discrete(S: GSet) -> GPoset:
    return GPoset(S, np.zeros((S.size, S.size), dtype=bool))


def opposite(P: GPoset) -> GPoset:
    return GPoset(P.carrier, P.less.T.copy(), check=False)


def cover_relations(P: GPoset) -> list[tuple[int, int]]:
    L = P.less.astype(np.int64)
    covers = P.less & ~((L @ L) > 0)
    return [(int(a), int(b)) for a, b in zip(*np.nonzero(covers))]


def adjoin_fixed_point(S: GSet) -> GSet:
    """``S_+``: one extra point, fixed by the whole group, appended last."""
    act = np.hstack([S.action, np.full((S.group.order, 1), S.size, dtype=np.int64)])
    return GSet(S.group, act, list(S.points) + [PLUS])


def _mask_image(row: np.ndarray, m: int) -> int:
    img = 0
    x = 0
    while m:
        if m & 1:
            img |= 1 << int(row[x])
        m >>= 1
        x += 1
    return img


def _popcount(m: int) -> int:
    return bin(m).count("1")


def _subset_masks(size: int, low: int, high: int) -> list[int]:
    """Bitmasks of subsets with ``low <= |U| <= high``, sorted by (cardinality, mask)."""
    masks = [m for m in range(1, 1 << size) if low <= _popcount(m) <= high]
    masks.sort(key=lambda m: (_popcount(m), m))
    return masks


def _subset_gset(S: GSet, points: list, act) -> GSet:
    _gset._check_size(len(points))
    rows = {g: S.element_row(g) for g in S.group.generators}
    return GSet.from_function(S.group, points, lambda g, p: act(rows[g], p))


def omega_leq(S: GSet, i: int) -> GPoset:
    """Non-empty subsets of ``S`` with at most ``i`` elements, ordered by inclusion.

    Points are bitmasks over the point indices of ``S``, sorted by (cardinality, mask).
    """
    if i < 0:
        raise ValueError("subset bound must be non-negative")
    masks = _subset_masks(S.size, 1, i)
    carrier = _subset_gset(S, masks, _mask_image)
    arr = np.array(masks, dtype=np.int64)
    sub = (arr[:, None] & arr[None, :]) == arr[:, None]
    less = sub & (arr[:, None] != arr[None, :])
    return GPoset(carrier, less, check=False)


def omega_flag(S: GSet, i_low: int, i: int) -> GPoset:
    """Flags ``U ⊆ V`` of non-empty subsets with ``|U| <= i_low`` and ``|V| = i``.

    Ordered level-wise, so ``(U, V) < (U', V')`` forces ``V = V'``.  A negative
    ``i_low`` gives the empty poset.  Points are ``(U, V)`` bitmask pairs
    sorted by ``V`` first.
    """
    if i < 0 or i > S.size or i_low > i:
        raise ValueError(f"need i_low <= i <= |S|, got {i_low}, {i}, {S.size}")
    pairs = [(u, v) for v in _subset_masks(S.size, i, i) for u in _subset_masks(S.size, 1, i_low)
             if (u & v) == u]
    carrier = _subset_gset(S, pairs, lambda row, p: (_mask_image(row, p[0]), _mask_image(row, p[1])))
    u = np.array([p[0] for p in pairs], dtype=np.int64)
    v = np.array([p[1] for p in pairs], dtype=np.int64)
    less = ((u[:, None] & u[None, :]) == u[:, None]) & (v[:, None] == v[None, :]) & (u[:, None] != u[None, :])
    return GPoset(carrier, less, check=False)


def _chains(P: GPoset, j: int) -> list[tuple[int, ...]]:
    succ = [np.flatnonzero(P.less[x]).tolist() for x in range(P.size)]
    out: list[tuple[int, ...]] = []

    def extend(chain):
        if len(chain) == j + 1:
            out.append(tuple(chain))
            return
        for y in succ[chain[-1]]:
            chain.append(y)
            extend(chain)
            chain.pop()

    for x in range(P.size):
        extend([x])
    return out


def sd_chains(P: GPoset, j: int) -> GSet:
    """The G-set of ``j``-chains ``a_0 < ... < a_j``, in lexicographic order."""
    if j < 0:
        raise ValueError("chain length must be non-negative")
    if j == 0:
        return P.carrier
    chains = _chains(P, j)
    _gset._check_size(len(chains))
    index = {c: k for k, c in enumerate(chains)}
    tables = []
    for gen in P.group.generators:
        row = P.carrier.element_row(gen)
        tables.append(np.array([index[tuple(int(row[x]) for x in c)] for c in chains], dtype=np.int64))
    return GSet(P.group, _gset._extend(P.group, tables, len(chains)), chains)


def _fixed_mask(P: GPoset, H: PermutationGroup) -> np.ndarray:
    fixed = np.ones(P.size, dtype=bool)
    for h in H.generators:
        fixed &= P.carrier.element_row(h) == np.arange(P.size)
    return fixed


def chain_marks(P: GPoset, table: SubgroupTable | None = None) -> list[list[int]]:
    """``out[j][c]`` = number of ``j``-chains fixed by subgroup class ``c``."""
    table = table if table is not None else subgroup_table(P.group)
    per_class = [P.chain_counts(_fixed_mask(P, table.representative(c))) for c in range(len(table))]
    height = max((len(v) for v in per_class), default=0)
    return [[v[j] if j < len(v) else 0 for v in per_class] for j in range(height)]


def sd_class(P: GPoset, j: int, method: str = "auto", table: SubgroupTable | None = None) -> BurnsideElement:
    """``[Sd_j P]`` in the Burnside ring."""
    table = table if table is not None else subgroup_table(P.group)
    method = _pick_method(P, method)
    if method == "chains":
        return from_gset(sd_chains(P, j), table)
    marks = chain_marks(P, table)
    return from_marks(table, marks[j] if j < len(marks) else [0] * len(table))


def _pick_method(P: GPoset, method: str) -> str:
    if method not in ("auto", "chains", "marks"):
        raise ValueError(f"unknown method {method!r}")
    if method != "auto":
        return method
    counts = P.chain_counts()
    biggest = max(counts, default=0)
    if biggest <= _gset.MAX_POINTS and biggest * P.group.order <= MAX_TABLE_ENTRIES:
        return "chains"
    return "marks"


def lefschetz(P: GPoset, method: str = "auto", table: SubgroupTable | None = None) -> BurnsideElement:
    """``sum_j (-1)^j [Sd_j P]``; zero for the empty poset."""
    table = table if table is not None else subgroup_table(P.group)
    method = _pick_method(P, method)
    if method == "chains":
        total = BurnsideElement.zero(table)
        j = 0
        while True:
            chains = sd_chains(P, j)
            if chains.size == 0:
                return total
            term = from_gset(chains, table)
            total = total + term if j % 2 == 0 else total - term
            j += 1
    marks = chain_marks(P, table)
    euler = [sum((-1) ** j * marks[j][c] for j in range(len(marks))) for c in range(len(table))]
    return from_marks(table, euler)


def reduced_lefschetz(P: GPoset, method: str = "auto", table: SubgroupTable | None = None) -> BurnsideElement:
    return lefschetz(P, method, table) - 1


def induce_poset(H: PermutationGroup, G: PermutationGroup, P: GPoset) -> GPoset:
    """``G ×_H P``, ordered only inside each coset component."""
    carrier = induce_gset(H, G, P.carrier)
    cosets = np.array([c for c, _ in carrier.points], dtype=np.int64)
    inner = np.array([P.carrier.index(p) for _, p in carrier.points], dtype=np.int64)
    less = (cosets[:, None] == cosets[None, :]) & P.less[np.ix_(inner, inner)]
    return GPoset(carrier, less, check=False)


A, B, INF = 0, 1, 2


def two_star_n(n: int) -> GPoset:
    """Functions ``[n] -> {a, b, ∞}`` other than constant ``∞``, pointwise with ``a, b < ∞``.

    Σ_n acts by ``(σ·φ)(x) = φ(σ^{-1} x)``.  Points are value tuples
    (``a=0, b=1, ∞=2``) in lexicographic order.
    """
    if n < 0 or n > 7:
        raise ValueError("two_star_n supports 0 <= n <= 7")
    import itertools

    G = symmetric_group(n)
    funcs = [t for t in itertools.product((A, B, INF), repeat=n) if any(v != INF for v in t)]
    carrier = GSet.from_function(G, funcs, _permute_positions)
    arr = np.array(funcs, dtype=np.int64).reshape(len(funcs), n)
    # φ <= ψ pointwise iff every coordinate is equal or ψ is ∞ there
    le = ((arr[:, None, :] == arr[None, :, :]) | (arr[None, :, :] == INF)).all(axis=2)
    less = le & ~np.eye(len(funcs), dtype=bool)
    return GPoset(carrier, less, check=False)


def _permute_positions(sigma, t):
    out = [0] * len(t)
    for x, v in enumerate(t):
        out[sigma.images[x]] = v
    return tuple(out)


# maps between posets --------------------------------------------------------


def is_equivariant(P: GPoset, Q: GPoset, f: np.ndarray) -> bool:
    f = np.asarray(f)
    return all(np.array_equal(f[P.carrier.element_row(g)], Q.carrier.element_row(g)[f]) for g in P.group.generators)


def is_order_preserving(P: GPoset, Q: GPoset, f: np.ndarray) -> bool:
    le_P = P.less | np.eye(P.size, dtype=bool)
    le_Q = Q.less | np.eye(Q.size, dtype=bool)
    return bool((~le_P | le_Q[np.ix_(f, f)]).all())


def is_order_reversing(P: GPoset, Q: GPoset, f: np.ndarray) -> bool:
    return is_order_preserving(P, opposite(Q), f)


def comparable_with_identity(P: GPoset, f: np.ndarray) -> bool:
    """``f(x) <= x`` for all ``x`` or ``f(x) >= x`` for all ``x``."""
    le = P.less | np.eye(P.size, dtype=bool)
    idx = np.arange(P.size)
    f = np.asarray(f)
    return bool(le[f, idx].all() or le[idx, f].all())


def equivariant_poset_iso(P: GPoset, Q: GPoset) -> tuple[bool, np.ndarray | None]:
    """Search for an equivariant order isomorphism ``P -> Q``.

    An equivariant bijection is fixed by where it sends one point per orbit,
    and that image must have the same stabilizer; the search backtracks over
    those choices.  Returns the point map when one exists.
    """
    if P.group != Q.group:
        raise ValueError("posets over different groups")
    if P.size != Q.size or int(P.less.sum()) != int(Q.less.sum()):
        return False, None
    if P.size == 0:
        return True, np.zeros(0, dtype=np.int64)

    def signature(R: GPoset):
        return [(int(R.less[:, x].sum()), int(R.less[x].sum())) for x in range(R.size)]

    sig_p, sig_q = signature(P), signature(Q)
    if sorted(sig_p) != sorted(sig_q):
        return False, None
    stab_q: dict[bytes, list[int]] = {}
    for y in range(Q.size):
        stab_q.setdefault(Q.carrier.stabilizer_mask(y).tobytes(), []).append(y)

    orbits = P.carrier.orbits()
    plan = []
    for orb in orbits:
        x = int(orb[0])
        cands = [y for y in stab_q.get(P.carrier.stabilizer_mask(x).tobytes(), []) if sig_q[y] == sig_p[x]]
        if not cands:
            return False, None
        plan.append((x, orb, cands))
    plan.sort(key=lambda e: len(e[2]))

    phi = np.full(P.size, -1, dtype=np.int64)
    used = np.zeros(Q.size, dtype=bool)
    col_p = P.carrier.action
    col_q = Q.carrier.action

    def assign(k: int) -> bool:
        if k == len(plan):
            return True
        x, orb, cands = plan[k]
        for y in cands:
            if used[y]:
                continue
            src = col_p[:, x]
            dst = col_q[:, y]
            phi[src] = dst
            done = phi >= 0
            pts = np.flatnonzero(done)
            if (np.array_equal(P.less[np.ix_(orb, pts)], Q.less[np.ix_(phi[orb], phi[pts])])
                    and np.array_equal(P.less[np.ix_(pts, orb)], Q.less[np.ix_(phi[pts], phi[orb])])):
                used[phi[orb]] = True
                if assign(k + 1):
                    return True
                used[phi[orb]] = False
            phi[orb] = -1
        return False

    if assign(0):
        return True, phi.copy()
    return False, None


def minus_one_maps(n: int) -> tuple[GPoset, GPoset, np.ndarray, np.ndarray]:
    """The order-reversing maps between ``2^{*n}`` and ``Ω_{<=n}([n]_+)``.

    ``f(φ) = φ^{-1}(a)``, plus the extra point when ``b`` is a value of ``φ``;
    ``g(U)`` is ``a`` on ``U``, ``b`` off ``U`` if the extra point is in ``U``,
    ``∞`` otherwise.  Returns ``(F, Ω, f, g)`` with maps as index arrays.
    """
    F = two_star_n(n)
    omega = omega_leq(adjoin_fixed_point(_gset.natural(symmetric_group(n))), n)
    plus_bit = 1 << n
    f = np.empty(F.size, dtype=np.int64)
    for k, phi in enumerate(F.points):
        m = sum(1 << x for x, v in enumerate(phi) if v == A)
        if B in phi:
            m |= plus_bit
        f[k] = omega.carrier.index(m)
    g = np.empty(omega.size, dtype=np.int64)
    for k, m in enumerate(omega.points):
        has_plus = bool(m & plus_bit)
        phi = tuple(A if m >> x & 1 else (B if has_plus else INF) for x in range(n))
        g[k] = F.carrier.index(phi)
    return F, omega, f, g


def random_poset(rng, S: GSet, attempts: int = 6) -> GPoset:
    """A random G-invariant strict order on ``S`` (orbits of pairs added while acyclic)."""
    less = np.zeros((S.size, S.size), dtype=bool)
    if S.size < 2:
        return GPoset(S, less)
    for _ in range(attempts):
        x, y = (int(v) for v in rng.integers(0, S.size, size=2))
        trial = less.copy()
        trial[S.action[:, x], S.action[:, y]] = True
        closed = _transitive_closure(trial)
        if not closed.diagonal().any():
            less = closed
    return GPoset(S, less)


def _transitive_closure(R: np.ndarray) -> np.ndarray:
    R = R.copy()
    for k in range(R.shape[0]):
        R |= R[:, k:k + 1] & R[k:k + 1, :]
    return R

