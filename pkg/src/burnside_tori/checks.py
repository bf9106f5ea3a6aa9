"""Verification suites shared by ``burnside-tori verify`` and the test-suite.

Every check returns a :class:`CheckResult`; randomized checks draw from a
``numpy.random.Generator`` so a seed reproduces them exactly.
"""

from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .burnside import (
    BurnsideElement,
    double_coset_product,
    from_gset,
    induce_b,
    outer_young,
    restrict_b,
)
from .gposet import (
    adjoin_fixed_point,
    comparable_with_identity,
    induce_poset,
    is_equivariant,
    is_order_reversing,
    lefschetz,
    minus_one_maps,
    omega_leq,
    opposite,
    random_poset,
    reduced_lefschetz,
    two_star_n,
)
from .gset import GSet, coset_space, disjoint_union, invariant_subset, natural, power, restrict, trivial_gset
from .permgroup import PermutationGroup, symmetric_group, trivial_group, young_embedding
from .powerseries import Series, exp_lpoly, minus_one_power, star_mul
from .subgroups import subgroup_table, symmetric_table
from .toruslab import effectivity_checks, iso_checks, lambda_op, verify_theorem

__all__ = ["CheckResult", "SUITES", "run_suite"]

SUBGROUP_CLASS_COUNTS = {1: 1, 2: 2, 3: 4, 4: 11, 5: 19, 6: 56}


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""
    seconds: float = 0.0

    def to_json(self) -> dict:
        return {"name": self.name, "pass": self.passed, "detail": self.detail, "seconds": round(self.seconds, 3)}


def _timed(name: str, fn: Callable[[], tuple[bool, str]]) -> CheckResult:
    start = time.perf_counter()
    try:
        ok, detail = fn()
    except Exception as exc:  # a crashing check is a failing check
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    return CheckResult(name, bool(ok), detail, time.perf_counter() - start)


def random_element(rng: np.random.Generator, table, low: int = -2, high: int = 2) -> BurnsideElement:
    return BurnsideElement(table, (int(v) for v in rng.integers(low, high + 1, size=len(table))))


# torus -------------------------------------------------------------------


def torus_identity(n: int) -> tuple[bool, str]:
    report = verify_theorem(n, structural=False)
    bad = [c for c in report.point_count_checks if not c.passed]
    ok = report.equal and not bad and not report.errors
    return ok, f"class = {report.class_binomial.render()}" if ok else f"equal={report.equal} bad counts={len(bad)}"


def point_counts(n: int) -> tuple[bool, str]:
    report = verify_theorem(n, structural=False)
    bad = [c for c in report.point_count_checks if not c.passed]
    return not bad, f"{len(report.point_count_checks)} (cycle type, q) pairs, {len(bad)} mismatches"


def minus_one_three_way(i: int) -> tuple[bool, str]:
    series = minus_one_power(i)
    via_omega = -reduced_lefschetz(omega_leq(adjoin_fixed_point(natural(symmetric_group(i))), i))
    via_two_star = -reduced_lefschetz(two_star_n(i))
    ok = series == via_omega == via_two_star
    return ok, f"(-1)^[{i}] = {series.render()}"


def effectivity(n: int) -> tuple[bool, str]:
    checks = effectivity_checks(n)
    bad = [(c.i, c.j) for c in checks if not c.passed]
    return not bad, f"{len(checks)} chain differences, failing (i, j): {bad}"


def induce_powerset(n: int) -> tuple[bool, str]:
    checks = iso_checks(n)
    bad = [(c.i_low, c.i) for c in checks if not c.passed]
    return not bad, f"{len(checks)} isomorphisms, failing (i', i): {bad}"


# series ------------------------------------------------------------------


def _random_poly(rng: np.random.Generator, degree: int, bound: int) -> list[int]:
    return [int(v) for v in rng.integers(-bound, bound + 1, size=degree + 1)]


def binomial_theorem(rng: np.random.Generator, trials: int = 20, truncation: int = 5,
                     degree: int = 2, bound: int = 3) -> tuple[bool, str]:
    for t in range(trials):
        P = _random_poly(rng, degree, bound)
        Q = _random_poly(rng, degree, bound)
        total = [a + b for a, b in zip(P, Q)]
        if exp_lpoly(total, truncation) != star_mul(exp_lpoly(P, truncation), exp_lpoly(Q, truncation)):
            return False, f"trial {t}: P={P} Q={Q}"
    return True, f"{trials} random pairs at truncation {truncation}"


def _plain_set(size: int) -> GSet:
    return trivial_gset(trivial_group(0), size)


def stratification(max_x: int = 4, max_n: int = 4) -> tuple[bool, str]:
    """``[X^{[n]}] = sum_{i+j=n} Ind(([X∖Z])^{[i]} ⊠ [Z^{[j]}])`` for every ``Z ⊆ X``."""
    cases = 0
    for m in range(max_x + 1):
        X = _plain_set(m)
        for z_size in range(m + 1):
            for Z_pts in itertools.combinations(range(m), z_size):
                Z = invariant_subset(X, Z_pts)
                rest = invariant_subset(X, [p for p in range(m) if p not in Z_pts])
                for n in range(max_n + 1):
                    Sn = symmetric_group(n)
                    lhs = from_gset(power(X, n), symmetric_table(n))
                    rhs = BurnsideElement.zero(symmetric_table(n))
                    for i in range(n + 1):
                        a = from_gset(power(rest, i), symmetric_table(i))
                        b = from_gset(power(Z, n - i), symmetric_table(n - i))
                        rhs = rhs + induce_b(young_embedding(i, n - i), Sn, outer_young(a, b))
                    if lhs != rhs:
                        return False, f"|X|={m} Z={Z_pts} n={n}"
                    cases += 1
    return True, f"{cases} (Z ⊆ X, n) cases"


def star_ring_axioms(rng: np.random.Generator, trials: int = 5, truncation: int = 4) -> tuple[bool, str]:
    def rand_series():
        coeffs = [1]
        for i in range(1, truncation + 1):
            table = symmetric_table(i)
            coeffs.append(random_element(rng, table))
        return Series(truncation, coeffs)

    for t in range(trials):
        a, b, c = rand_series(), rand_series(), rand_series()
        if star_mul(a, b) != star_mul(b, a):
            return False, f"trial {t}: not commutative"
        if star_mul(star_mul(a, b), c) != star_mul(a, star_mul(b, c)):
            return False, f"trial {t}: not associative"
        if star_mul(a, Series.one(truncation)) != a:
            return False, f"trial {t}: 1 is not the identity"
    return True, f"{trials} random triples at truncation {truncation}"


# lemmas ------------------------------------------------------------------


def random_gset(rng: np.random.Generator, H: PermutationGroup, max_points: int) -> GSet:
    """Disjoint union of random coset spaces of ``H``, at most ``max_points`` points."""
    table = subgroup_table(H)
    S = None
    while True:
        c = int(rng.integers(0, len(table)))
        piece = coset_space(H, table.representative(c))
        size = piece.size + (S.size if S is not None else 0)
        if size > max_points:
            if S is not None:
                return S
            continue
        S = piece if S is None else disjoint_union(S, piece)
        if rng.random() < 0.35:
            return S


def random_subgroup_chain(rng: np.random.Generator, degree: int) -> tuple[PermutationGroup, PermutationGroup]:
    top = symmetric_table(degree)
    G = top.representative(int(rng.integers(0, len(top))))
    G_table = subgroup_table(G)
    H = G_table.representative(int(rng.integers(0, len(G_table))))
    return H, G


def induce_lefschetz(rng: np.random.Generator, trials: int = 50, max_points: int = 8,
                     degree: int = 4) -> tuple[bool, str]:
    for t in range(trials):
        H, G = random_subgroup_chain(rng, degree)
        P = random_poset(rng, random_gset(rng, H, max_points))
        lhs = lefschetz(induce_poset(H, G, P), "chains")
        rhs = induce_b(H, G, lefschetz(P, "chains"))
        if lhs != rhs:
            return False, f"trial {t}: |H|={H.order} |G|={G.order} |P|={P.size}"
    return True, f"{trials} random H-posets"


def lefschetz_routes(rng: np.random.Generator, trials: int = 30, degree: int = 4) -> tuple[bool, str]:
    """Chain listing and fixed-point counting give the same Lefschetz invariant."""
    for t in range(trials):
        H, _ = random_subgroup_chain(rng, degree)
        P = random_poset(rng, random_gset(rng, H, 10))
        if lefschetz(P, "chains") != lefschetz(P, "marks"):
            return False, f"trial {t}"
    return True, f"{trials} random posets"


def opposite_invariance(rng: np.random.Generator, trials: int = 20, degree: int = 4) -> tuple[bool, str]:
    for t in range(trials):
        H, _ = random_subgroup_chain(rng, degree)
        P = random_poset(rng, random_gset(rng, H, 8))
        if reduced_lefschetz(P, "chains") != reduced_lefschetz(opposite(P), "chains"):
            return False, f"trial {t}"
    return True, f"{trials} random posets"


def g_reversal_failures(n: int) -> list[tuple[int, int]]:
    """Pairs ``U < U'`` of ``Ω_{<=n}([n]_+)`` whose images under ``g`` are not ``>=``.

    ``g`` sends both points of ``U' ∖ U`` inside ``[n]`` from ``b`` to ``a`` when
    the extra point lies in ``U``, and ``a``, ``b`` are incomparable, so this list
    is non-empty for every ``n >= 2``.
    """
    F, omega, _, g = minus_one_maps(n)
    leq = F.less | np.eye(F.size, dtype=bool)
    us, vs = np.nonzero(omega.less)
    return [(int(u), int(v)) for u, v in zip(us, vs) if not leq[g[v], g[u]]]


def minus_one_homotopy(n: int) -> tuple[bool, str]:
    """The maps ``f``, ``g`` between ``2^{*n}`` and ``Ω_{<=n}([n]_+)`` and the resulting equality.

    ``g`` is checked to fail order-reversal exactly on pairs ``U ⊊ U'`` that
    both contain the extra point; everything else must hold.
    """
    F, omega, f, g = minus_one_maps(n)
    plus = 1 << n
    bad_pairs = g_reversal_failures(n)
    expected = [(u, v) for u, v in zip(*np.nonzero(omega.less)) if omega.points[u] & plus]
    checks = {
        "f equivariant": is_equivariant(F, omega, f),
        "g equivariant": is_equivariant(omega, F, g),
        "f order-reversing": is_order_reversing(F, omega, f),
        "g fails only on pairs containing the extra point": sorted(bad_pairs) == sorted((int(u), int(v)) for u, v in expected),
        "f∘g = id": bool(np.array_equal(f[g], np.arange(omega.size))),
        "g∘f comparable with id": comparable_with_identity(F, g[f]),
        "Lefschetz equal": lefschetz(F) == lefschetz(omega),
    }
    bad = [k for k, v in checks.items() if not v]
    return not bad, (f"g not order-reversing on {len(bad_pairs)} pairs; rest holds" if not bad else f"failed: {bad}")


def plus_point_recursion(max_size: int = 5) -> tuple[bool, str]:
    """``rLef Ω_{<=n}(S_+) = rLef Ω_{<=n}(S) - rLef Ω_{<=n-1}(S)``.

    Every G-set of size ``m`` is the restriction of ``[m]`` along ``G -> Σ_m``
    and both sides commute with that restriction, so running over all
    subgroup classes of Σ_m covers every action up to its kernel.
    """
    cases = 0
    for m in range(max_size + 1):
        nat = natural(symmetric_group(m))
        table = symmetric_table(m)
        for c in range(len(table)):
            H = table.representative(c)
            S = restrict(nat, H)
            for n in range(1, m + 1):
                lhs = reduced_lefschetz(omega_leq(adjoin_fixed_point(S), n))
                rhs = reduced_lefschetz(omega_leq(S, n)) - reduced_lefschetz(omega_leq(S, n - 1))
                if lhs != rhs:
                    return False, f"|S|={m} class {c} n={n}"
                cases += 1
    return True, f"{cases} (S, n) cases"


def lambda_sanity(max_n: int = 6) -> tuple[bool, str]:
    for n in range(max_n + 1):
        S = natural(symmetric_group(n))
        for i in range(n + 3):
            lam = lambda_op(S, i)
            if i > n:
                if lam:
                    return False, f"λ^{i}([{n}]) = {lam.render()} should vanish"
            elif lam.augmentation() != math.comb(n, i):
                return False, f"augmentation of λ^{i}([{n}]) is {lam.augmentation()}"
    return True, f"n <= {max_n}"


# burnside ----------------------------------------------------------------


def subgroup_counts(max_n: int = 6) -> tuple[bool, str]:
    got = {n: len(symmetric_table(n)) for n in range(1, max_n + 1)}
    want = {n: SUBGROUP_CLASS_COUNTS[n] for n in got}
    return got == want, f"classes: {got}"


def marks_structure(max_n: int = 6) -> tuple[bool, str]:
    for n in range(1, max_n + 1):
        T = symmetric_table(n)
        M = T.marks_array
        if np.triu(M, 1).any():
            return False, f"Σ_{n}: marks not lower triangular"
        for r, cls in enumerate(T.classes):
            if M[r, r] != cls.normalizer_order // cls.order or M[r, r] <= 0:
                return False, f"Σ_{n}: bad diagonal at {r}"
            if M[r, 0] != T.ambient.order // cls.order:
                return False, f"Σ_{n}: bad index at {r}"
    return True, f"Σ_1..Σ_{max_n}"


def ghost_multiplicativity(rng: np.random.Generator, trials: int = 30, max_n: int = 5) -> tuple[bool, str]:
    for n in range(1, max_n + 1):
        T = symmetric_table(n)
        for t in range(trials):
            x, y = random_element(rng, T), random_element(rng, T)
            mx, my, mxy, ms = x.marks(), y.marks(), (x * y).marks(), (x + y).marks()
            if any(a * b != c for a, b, c in zip(mx, my, mxy)) or any(a + b != c for a, b, c in zip(mx, my, ms)):
                return False, f"Σ_{n} trial {t}"
    return True, f"{trials} products per Σ_n, n <= {max_n}"


def mackey(max_n: int = 4) -> tuple[bool, str]:
    pairs = 0
    for n in range(1, max_n + 1):
        T = symmetric_table(n)
        for r in range(len(T)):
            for s in range(len(T)):
                ring = BurnsideElement.basis(T, r) * BurnsideElement.basis(T, s)
                dc = double_coset_product(T.ambient, T.representative(r), T.representative(s))
                if ring != dc:
                    return False, f"Σ_{n} classes {r}, {s}"
                pairs += 1
    return True, f"{pairs} basis pairs"


def projection_formula(rng: np.random.Generator, trials: int = 30, degree: int = 4) -> tuple[bool, str]:
    for t in range(trials):
        H, G = random_subgroup_chain(rng, degree)
        x = random_element(rng, subgroup_table(H))
        y = random_element(rng, subgroup_table(G))
        if induce_b(H, G, restrict_b(G, H, y) * x) != y * induce_b(H, G, x):
            return False, f"trial {t}: |H|={H.order} |G|={G.order}"
    return True, f"{trials} random (H <= G, x, y)"


# suites --------------------------------------------------------------------


def _suite_torus(max_n, rng):
    out = []
    for n in range(1, max_n + 1):
        out.append(_timed(f"torus: class identity n={n}", lambda n=n: torus_identity(n)))
        out.append(_timed(f"torus: point counts n={n}", lambda n=n: point_counts(n)))
    for n in range(1, max_n + 1):
        out.append(_timed(f"torus: effectivity n={n}", lambda n=n: effectivity(n)))
        out.append(_timed(f"torus: induced flag posets n={n}", lambda n=n: induce_powerset(n)))
    for i in range(max(max_n, 1) + 1):
        out.append(_timed(f"torus: (-1)^[{i}] three ways", lambda i=i: minus_one_three_way(i)))
    return out


def _suite_series(max_n, rng):
    return [
        _timed("series: binomial theorem", lambda: binomial_theorem(rng, truncation=min(5, max_n))),
        _timed("series: set-level stratification", lambda: stratification(4, min(4, max_n))),
        _timed("series: ∗-ring axioms", lambda: star_ring_axioms(rng, truncation=min(4, max_n))),
    ]


def _suite_lemmas(max_n, rng):
    return [
        _timed("lemmas: induction commutes with Lefschetz", lambda: induce_lefschetz(rng, degree=min(4, max_n))),
        _timed("lemmas: Lefschetz chain vs marks route", lambda: lefschetz_routes(rng, degree=min(4, max_n))),
        _timed("lemmas: opposite order", lambda: opposite_invariance(rng, degree=min(4, max_n))),
        *[_timed(f"lemmas: (-1)^[{n}] comparison maps", lambda n=n: minus_one_homotopy(n))
          for n in range(1, min(4, max_n) + 1)],
        _timed("lemmas: extra fixed point recursion", lambda: plus_point_recursion(min(5, max_n))),
        _timed("lemmas: lambda sanity", lambda: lambda_sanity(min(6, max_n))),
    ]


def _suite_burnside(max_n, rng):
    return [
        _timed("burnside: subgroup class counts", lambda: subgroup_counts(min(6, max_n))),
        _timed("burnside: marks structure", lambda: marks_structure(min(6, max_n))),
        _timed("burnside: ghost multiplicativity", lambda: ghost_multiplicativity(rng, max_n=min(5, max_n))),
        _timed("burnside: Mackey double cosets", lambda: mackey(min(4, max_n))),
        _timed("burnside: projection formula", lambda: projection_formula(rng, degree=min(4, max_n))),
    ]


SUITES = {
    "torus": _suite_torus,
    "series": _suite_series,
    "lemmas": _suite_lemmas,
    "burnside": _suite_burnside,
}


def run_suite(name: str, max_n: int, seed: int = 0) -> list[CheckResult]:
    names = list(SUITES) if name == "all" else [name]
    results = []
    for s in names:
        rng = np.random.default_rng([seed, list(SUITES).index(s)])
        results.extend(SUITES[s](max_n, rng))
    return results
