from fractions import Fraction

import pytest

from hurwitz_lab.characters import power_sum_eval, schur_bialternant, schur_via_characters
from hurwitz_lab.errors import RepeatedPoint, Underdetermined
from hurwitz_lab.exact_ring import BetaSeries, LaurentPoly, mu, nu, rho_var
from hurwitz_lab.partitions import Partition, partitions_up_to
from hurwitz_lab.taudet import (
    MiwaContext, TauTruncation, VerificationReport, bar_p, det_matrix, formal_rho_table,
    power_to_monomial_matrix, rhs_tep5, solve_tep5_system, ssyt_monomials, tau_schur,
    term_poly, term_ratio_bialternant, term_ratio_literal, verify_lemma_np, verify_recursion,
)
from hurwitz_lab.weights import WeightFunc, content_product


def R(l):
    return LaurentPoly.var(rho_var(l))


def inverse_vars(kind, N):
    return [LaurentPoly.var(kind(i)) ** -1 for i in range(1, N + 1)]


def schur_inv(lam, kind, N):
    return schur_via_characters(lam, inverse_vars(kind, N))


def test_context_validation():
    with pytest.raises(ValueError):
        MiwaContext(0, 1)
    with pytest.raises(RepeatedPoint):
        MiwaContext(2, 2, nu_points=(1, 1), mu_points=(1, 2))
    with pytest.raises(ValueError):
        MiwaContext(2, 2, nu_points=(1,), mu_points=(1, 2))


def test_det_matrix_entry():
    m = det_matrix(MiwaContext(1, 1), P=1, L=0)
    # l = -1 and l = 0 terms
    assert m[0][0] == R(-1) + R(0) * LaurentPoly.var(nu(1)) ** -1 * LaurentPoly.var(mu(1)) ** -1


def test_n1_term():
    assert str(term_poly(MiwaContext(1, 3), None, 3)) == "mu1^-3*nu1^-3*rho[-1]^-1*rho[2]"


def test_n2_term_matches_displayed_expansion():
    N = 2
    expected = (R(-2) * R(1) * schur_inv((2,), nu, N) * schur_inv((2,), mu, N)
                + R(-1) * R(0) * schur_inv((1, 1), nu, N) * schur_inv((1, 1), mu, N)) \
        * (R(-2) * R(-1)) ** -1
    assert term_poly(MiwaContext(2, 2), None, 2) == expected


def test_n3_term_matches_displayed_expansion():
    N = 3
    expected = (R(0) * R(-3) ** -1 * schur_inv((1, 1, 1), nu, N) * schur_inv((1, 1, 1), mu, N)
                + R(1) * R(-2) ** -1 * schur_inv((2, 1), nu, N) * schur_inv((2, 1), mu, N)
                + R(2) * R(-1) ** -1 * schur_inv((3,), nu, N) * schur_inv((3,), mu, N))
    assert term_poly(MiwaContext(3, 3), None, 3) == expected


@pytest.mark.parametrize("N, n", [(1, 1), (1, 2), (2, 1), (2, 2), (2, 3), (3, 2), (3, 3)])
def test_literal_and_bialternant_ratios_agree(N, n):
    assert term_ratio_literal(N, n) == term_ratio_bialternant(N, n)


def test_ssyt_monomials_are_kostka_numbers():
    assert ssyt_monomials(Partition([2, 1]), 3) == {
        (2, 1, 0): 1, (2, 0, 1): 1, (1, 2, 0): 1, (0, 2, 1): 1, (1, 0, 2): 1, (0, 1, 2): 1,
        (1, 1, 1): 2}
    assert ssyt_monomials(Partition([1, 1, 1]), 2) == {}


def test_power_to_monomial_matrix_small():
    rows, cols, M = power_to_monomial_matrix(2, 2)
    assert rows == cols == ((2,), (1, 1))
    assert M == ((1, 1), (0, 2))


def test_underdetermined():
    w = WeightFunc.formal(1)
    with pytest.raises(Underdetermined):
        solve_tep5_system(MiwaContext(1, 2), w, 2)
    with pytest.raises(Underdetermined):
        rhs_tep5(MiwaContext(1, 2), w)


@pytest.mark.parametrize("n", [2, 3])
def test_restricted_table_reproduces_one_variable_term(n):
    # N < n: the table is restricted from N = n; in one variable it must still
    # reproduce the degree −n term of the one-variable determinant
    table = formal_rho_table(1, n)
    x, y = inverse_vars(nu, 1), inverse_vars(mu, 1)
    total = sum((h * power_sum_eval(om, x) * power_sum_eval(sg, y) for (om, sg), h in table.items()),
                LaurentPoly())
    assert total == term_ratio_literal(1, n)


def test_tau_truncation_evaluates_like_schur_sum():
    w = WeightFunc.from_c([Fraction(1, 2), Fraction(-1, 3)], 2)
    tau = tau_schur(None, w, 3)
    nus = [Fraction(2), Fraction(-3), Fraction(5, 2)]
    mus = [Fraction(7, 3), Fraction(-4), Fraction(3)]
    expected = sum((content_product(w, lam, 0)
                    * (schur_bialternant(lam, [1 / x for x in nus])
                       * schur_bialternant(lam, [1 / x for x in mus]))
                    for lam in partitions_up_to(3)), BetaSeries([], w.D))
    assert tau.evaluate(nus, mus) == expected
    assert isinstance(tau, TauTruncation) and tau == tau_schur(None, w, 3)


def test_rhs_equals_tau_numeric_weight():
    w = WeightFunc.from_c([Fraction(1, 2), Fraction(1, 3)], 2)
    assert rhs_tep5(MiwaContext(2, 2), w) == tau_schur(None, w, 2)


def test_tables_first_difference():
    a = tau_schur(None, WeightFunc.from_c([1], 1), 2)
    b = tau_schur(None, WeightFunc.from_c([2], 1), 2)
    om, sg, d, x, y = a.first_difference(b)
    assert d == 1 and x != y


def test_lemma_report_shape():
    report = verify_lemma_np(2, 2)
    assert isinstance(report, VerificationReport) and report
    assert report.to_json()["pass"] is True and report.to_json()["identity"] == "lemma_np"


def test_bar_p_small_cases():
    pts = [Fraction(2), Fraction(3)]
    # k = 1, m = 2 removes both points: Σ over orderings of x_a^{1} · x_b^{−l−1}/(x_a − x_b)
    l = -1
    expected = Fraction(2, 2 - 3) + Fraction(3, 3 - 2)
    assert bar_p(pts, 2, l, (), 1) == expected
    with pytest.raises(RepeatedPoint):
        bar_p([1, 1], 1, 0, ())


def test_recursion_bad_arguments():
    w = WeightFunc.formal(1)
    with pytest.raises(ValueError):
        verify_recursion(2, w, [1, 2])
    with pytest.raises(RepeatedPoint):
        verify_recursion(1, w, [3, 3])


def test_recursion_k1_numeric():
    w = WeightFunc.from_c([Fraction(2, 3), Fraction(-1, 4)], 2)
    assert verify_recursion(1, w, [Fraction(3), Fraction(-5, 2)], [Fraction(7, 2), Fraction(4)])
