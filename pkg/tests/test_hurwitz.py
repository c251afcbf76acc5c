from fractions import Fraction
from itertools import product

import pytest

from hurwitz_lab.errors import EmptyProfileList, InsufficientParameters, TruncationError, WeightMismatch
from hurwitz_lab.exact_ring import LaurentPoly, g_var
from hurwitz_lab.hurwitz import (
    Route, applicable_routes, coefficient_sum, coefficient_sum_prediction, count_contingency,
    hurwitz_character, hurwitz_d0_matrix_count, weighted_hurwitz, weighted_hurwitz_cayley,
    weighted_hurwitz_character, weighted_hurwitz_definition, weighted_hurwitz_determinant,
    weighted_hurwitz_matrix_d0,
)
from hurwitz_lab.partitions import partitions_of, z_mu
from hurwitz_lab.permgroup import hurwitz_bruteforce
from hurwitz_lab.weights import WeightFunc
from oracles import CLASSICAL_VALUES, n2_table

G1, G2 = LaurentPoly.var(g_var(1)), LaurentPoly.var(g_var(2))
C_VECTORS = [
    [Fraction(1, 2), Fraction(1, 3), Fraction(2, 7)],
    [Fraction(-1), Fraction(3, 4), Fraction(1, 6)],
    [Fraction(5, 3), Fraction(-2, 9), Fraction(1, 11)],
]


@pytest.mark.parametrize("profiles, value", list(CLASSICAL_VALUES.items()))
def test_classical_hand_values(profiles, value):
    assert hurwitz_character(list(profiles)) == value


def test_classical_errors_and_two_factor_case():
    with pytest.raises(EmptyProfileList):
        hurwitz_character([])
    with pytest.raises(WeightMismatch):
        hurwitz_character([(2,), (1,)])
    for n in range(1, 7):
        for mu, nu in product(partitions_of(n), repeat=2):
            assert hurwitz_character([mu, nu]) == (Fraction(1, z_mu(mu)) if mu == nu else 0)


def test_character_matches_bruteforce_with_four_profiles():
    for profiles in product(partitions_of(4), repeat=4):
        assert hurwitz_character(list(profiles)) == hurwitz_bruteforce(list(profiles))


def test_weighted_character_examples():
    w = WeightFunc.formal(4)
    G = [1] + [w.G(k) for k in range(1, 5)]
    for d in range(5):
        assert weighted_hurwitz_character(w, (2,), (2,), d) == n2_table(G, d)[((2,), (2,))]
    assert weighted_hurwitz_character(w, (1, 1, 1), (3,), 2) == (G1 ** 2 + G2) * Fraction(1, 3)
    assert weighted_hurwitz_character(w, (2,), (1,), 1) == 0
    with pytest.raises(TruncationError):
        weighted_hurwitz_character(w, (2,), (2,), 5)


@pytest.mark.parametrize("c", C_VECTORS)
def test_definition_matches_character(c):
    for n in range(1, 5):
        for d in range(4):
            w = WeightFunc.from_c(c, 3)
            for mu, nu in product(partitions_of(n), repeat=2):
                assert weighted_hurwitz_definition(w, mu, nu, d) == \
                    weighted_hurwitz_character(w, mu, nu, d).constant_value()


def test_definition_spec_examples():
    w = WeightFunc.from_c([Fraction(1, 2), Fraction(1, 3)], 2)
    expected = (Fraction(5, 6) ** 2 + Fraction(1, 6)) / 3
    assert weighted_hurwitz_definition(w, (1, 1, 1), (3,), 2) == expected
    assert weighted_hurwitz_definition(w, (2, 1), (2, 1), 0) == Fraction(1, 2)
    assert weighted_hurwitz_definition(w, (2,), (1,), 1) == 0
    with pytest.raises(InsufficientParameters):
        weighted_hurwitz_definition(WeightFunc.from_c([Fraction(1, 2)], 2), (2, 1), (2, 1), 2)


def test_determinant_matches_character():
    w = WeightFunc.formal(3)
    for n in range(1, 4):
        for d in range(4):
            for mu, nu in product(partitions_of(n), repeat=2):
                assert weighted_hurwitz_determinant(w, mu, nu, d) == \
                    weighted_hurwitz_character(w, mu, nu, d)


def test_cayley_matches_character_formally():
    w = WeightFunc.formal(3)
    for n in range(1, 5):
        for d in range(4):
            for mu, nu in product(partitions_of(n), repeat=2):
                assert weighted_hurwitz_cayley(w, mu, nu, d) == weighted_hurwitz_character(w, mu, nu, d)


def test_symmetry_on_every_route():
    w = WeightFunc.from_c(C_VECTORS[0], 2)
    for n in range(1, 4):
        for d in range(3):
            for route in applicable_routes(w, n, d):
                for mu, nu in product(partitions_of(n), repeat=2):
                    assert weighted_hurwitz(route, w, mu, nu, d).value == \
                        weighted_hurwitz(route, w, nu, mu, d).value


def test_facade_and_result_record():
    w = WeightFunc.from_c([Fraction(1, 2)], 1)
    r = weighted_hurwitz("character", w, (2,), (1, 1), 1)
    assert r.route is Route.CHARACTER and r.value == Fraction(1, 4)
    assert r.to_json() == {"mu": "[2]", "nu": "[1,1]", "d": 1, "route": "character", "value": "1/4"}


def test_matrix_d0_route():
    w = WeightFunc.formal(0)
    for n in range(1, 5):
        for mu, nu in product(partitions_of(n), repeat=2):
            assert weighted_hurwitz_matrix_d0(w, mu, nu, 0) == (Fraction(1, z_mu(mu)) if mu == nu else 0)
    with pytest.raises(ValueError):
        weighted_hurwitz_matrix_d0(WeightFunc.formal(1), (2,), (2,), 1)


def test_contingency_counts():
    assert count_contingency((1,), (1,)) == 1
    assert count_contingency((2, 0), (2, 0)) == 1
    assert count_contingency((1, 1), (1, 1)) == 2
    assert count_contingency((2, 2), (2, 2)) == 3
    assert count_contingency((1, 1, 1), (1, 1, 1)) == 6
    assert count_contingency((1,), (2,)) == 0


def test_d0_matrix_table_examples():
    rows = hurwitz_d0_matrix_count(1)
    assert [(r.a, r.b, r.coefficient, r.matrices) for r in rows] == [((1,), (1,), 1, 1)]
    by_key = {(r.a, r.b): r for r in hurwitz_d0_matrix_count(2)}
    assert by_key[(2, 0), (2, 0)].matrices == 1 and by_key[(2, 0), (2, 0)].ok
    assert by_key[(1, 1), (1, 1)].matrices == 2 and by_key[(1, 1), (1, 1)].coefficient == 2
    assert all(r.ok for r in by_key.values())


def test_coefficient_sum_bound():
    w = WeightFunc.formal(3)
    assert coefficient_sum(w, 3, 2) == coefficient_sum_prediction(w, 3, 2)
    # the shorter product bound n-2 already disagrees at n = 2, d = 1
    assert coefficient_sum(w, 2, 1) == G1
    assert coefficient_sum_prediction(w, 2, 1, upper=0) == 0
