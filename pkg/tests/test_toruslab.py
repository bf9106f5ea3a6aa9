from __future__ import annotations

import json
import math

import pytest

from burnside_tori.burnside import BurnsideElement, from_gset, restrict_b
from burnside_tori.gposet import adjoin_fixed_point, omega_leq, reduced_lefschetz
from burnside_tori.gset import disjoint_union, natural, regular, restrict, trivial_gset
from burnside_tori.permgroup import (
    CycleType,
    canonical_permutation,
    cyclic_from_cycle_type,
    group_closure,
    identity,
    partitions,
    symmetric_group,
    trivial_group,
)
from burnside_tori.powerseries import LPolynomial
from burnside_tori.subgroups import subgroup_table, symmetric_table
from burnside_tori.toruslab import (
    Q_VALUES,
    effectivity_checks,
    iso_checks,
    lambda_op,
    point_count,
    restrict_class,
    torus_class_binomial,
    torus_class_lambda,
    torus_point_oracle,
    verify_theorem,
)

from conftest import all_subgroups, cls, perm

S2, S3, S4 = (symmetric_group(n) for n in (2, 3, 4))


def poly(table, *coeffs):
    return LPolynomial(table, list(coeffs))


def test_lambda_examples():
    for S in (natural(S3), regular(S2), disjoint_union(natural(S3), trivial_gset(S3, 1))):
        assert lambda_op(S, 1) == from_gset(S)
        assert lambda_op(S, 0) == 1
    assert lambda_op(natural(S2), 2) == cls(S2) - 1
    X = natural(S3)
    C2 = cls(S3, perm(1, 0, 2))
    assert lambda_op(X, 2) == cls(S3) - C2
    assert lambda_op(X, 3) == 1 - 2 * C2 + cls(S3)


def test_lambda_negative_index():
    with pytest.raises(ValueError):
        lambda_op(natural(S3), -1)


@pytest.mark.parametrize("n", range(7))
def test_lambda_vanishing_and_augmentation(n):
    S = natural(symmetric_group(n))
    for i in range(n + 1):
        assert lambda_op(S, i).augmentation() == math.comb(n, i)
    for i in range(n + 1, n + 3):
        assert lambda_op(S, i) == 0


def test_lambda_top_has_augmentation_one_for_any_set():
    for S in (regular(S3), disjoint_union(natural(S3), regular(S3))):
        assert lambda_op(S, S.size).augmentation() == 1
        assert lambda_op(S, S.size + 1) == 0


@pytest.mark.parametrize("n", range(6))
def test_lambda_additive_on_disjoint_unions(n):
    S, T = natural(S3), trivial_gset(S3, 2)
    U = disjoint_union(S, T)
    rhs = BurnsideElement.zero(symmetric_table(3))
    for i in range(n + 1):
        rhs = rhs + lambda_op(S, i) * lambda_op(T, n - i)
    assert lambda_op(U, n) == rhs


@pytest.mark.parametrize("H", all_subgroups(S4)[::3])
def test_lambda_commutes_with_restriction(H):
    X = natural(S4)
    for i in range(5):
        assert lambda_op(restrict(X, H), i) == restrict_b(S4, H, lambda_op(X, i))


@pytest.mark.parametrize("m", range(6))
def test_plus_point_recursion_over_every_subgroup(m):
    table = symmetric_table(m)
    nat = natural(symmetric_group(m))
    for c in range(len(table)):
        S = restrict(nat, table.representative(c))
        for n in range(1, m + 1):
            lhs = reduced_lefschetz(omega_leq(adjoin_fixed_point(S), n))
            assert lhs == reduced_lefschetz(omega_leq(S, n)) - reduced_lefschetz(omega_leq(S, n - 1))


def test_torus_class_examples():
    t0, t1, t2 = (symmetric_table(n) for n in range(3))
    assert torus_class_binomial(0) == poly(t0, 1)
    assert torus_class_binomial(1) == poly(t1, -1, 1)
    x = cls(S2)
    assert torus_class_binomial(2) == poly(t2, x - 1, -x, 1)
    assert torus_class_lambda(natural(symmetric_group(1))) == poly(t1, -1, 1)
    assert torus_class_lambda(natural(S2)) == torus_class_binomial(2)


def test_split_torus():
    split = torus_class_lambda(trivial_gset(S2, 2))
    assert split == poly(subgroup_table(S2), 1, -2, 1)


def test_torus_class_cap():
    with pytest.raises(ValueError):
        torus_class_binomial(8)


@pytest.mark.parametrize("n", range(1, 6))
def test_binomial_equals_lambda(n):
    assert torus_class_binomial(n) == torus_class_lambda(natural(symmetric_group(n)))


def test_restrict_class_examples():
    x = torus_class_binomial(3)
    assert restrict_class(x, S3) == x
    e = trivial_group(3)
    local = restrict_class(x, e)
    assert local.integer_coeffs() == [-1, 3, -3, 1]
    y = torus_class_binomial(2)
    swap = group_closure(2, [perm(1, 0)])
    assert restrict_class(y, swap).coeffs == y.coeffs
    with pytest.raises(ValueError):
        restrict_class(x, S4)


@pytest.mark.parametrize("n", range(1, 7))
def test_restriction_to_trivial_group_is_split_torus(n):
    local = restrict_class(torus_class_binomial(n), trivial_group(n))
    assert local.integer_coeffs() == [(-1) ** (n - k) * math.comb(n, k) for k in range(n + 1)]


def test_point_count_examples():
    x2 = torus_class_binomial(2)
    swap = perm(1, 0)
    for q in Q_VALUES:
        assert point_count(restrict_class(x2, group_closure(2, [swap])), swap, q) == q * q - 1
        assert point_count(restrict_class(x2, trivial_group(2)), identity(2), q) == (q - 1) ** 2
    sigma = perm(1, 0, 2)
    x3 = restrict_class(torus_class_binomial(3), group_closure(3, [sigma]))
    for q in Q_VALUES:
        assert point_count(x3, sigma, q) == q**3 - q**2 - q + 1


def test_point_count_needs_generator():
    x = restrict_class(torus_class_binomial(3), group_closure(3, [perm(1, 2, 0)]))
    with pytest.raises(ValueError):
        point_count(x, perm(1, 0, 2), 3)


def test_oracle_examples():
    assert torus_point_oracle(CycleType((4,)), 3) == 80
    assert torus_point_oracle(CycleType((1, 1, 1)), 5) == 64
    assert torus_point_oracle(CycleType((2, 1)), 3) == 16
    with pytest.raises(ValueError):
        torus_point_oracle(CycleType((2,)), 1)


@pytest.mark.parametrize("n", range(1, 7))
def test_point_counts_match_oracle(n):
    x = torus_class_binomial(n)
    for t in partitions(n):
        sigma = canonical_permutation(t)
        local = restrict_class(x, cyclic_from_cycle_type(t))
        for q in Q_VALUES:
            assert point_count(local, sigma, q) == torus_point_oracle(t, q)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_verify_theorem(n):
    report = verify_theorem(n)
    assert report.passed
    assert len(report.point_count_checks) == len(partitions(n)) * len(Q_VALUES)
    assert len(report.iso_checks) == (n + 1) * (n + 2) // 2
    payload = json.loads(json.dumps(report.to_json()))
    assert payload["passed"] and payload["equal"]
    assert LPolynomial.from_json(symmetric_table(n), payload["class_lambda"]) == report.class_lambda


def test_verify_theorem_n1_class():
    assert verify_theorem(1).class_binomial.render() == "L - 1"


@pytest.mark.parametrize("n", range(1, 6))
def test_effectivity(n):
    for c in effectivity_checks(n):
        assert c.flag_difference == c.omega_difference
        assert c.flag_difference.is_effective()


@pytest.mark.parametrize("n", range(1, 6))
def test_induced_flag_isomorphisms(n):
    assert all(c.passed for c in iso_checks(n))


def test_failed_check_is_reported():
    report = verify_theorem(2, q_values=(3,))
    report.point_count_checks[0].formula_value += 1
    assert not report.passed
    assert report.to_json()["point_count_checks"][0]["pass"] is False
