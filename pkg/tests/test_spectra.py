from fractions import Fraction

import pytest

from qes_nbody import (
    EXACT,
    DegenerateSpectrumError,
    ScalarMode,
    SexticRecursion,
    closed_form_energies,
    duality_check,
    dualize,
    generate_P,
    moments,
    norm_P,
    positivity_report,
    qes_energies,
    selfdual_check,
    solve_spectrum,
    weights,
)
from qes_nbody.spectra import moment_functional
from qes_nbody.sextic import monic_chain

from conftest import rational_panel, rel_err

F = Fraction
F128 = ScalarMode.floating(128)


def rec_of(mode, alpha, beta, s, j):
    return SexticRecursion(mode.scalar(alpha), mode.scalar(beta), mode.scalar(s), j)


# -- energies ------------------------------------------------------------------


def test_j1_energy_is_exactly_4_alpha_s():
    rec = rec_of(EXACT, 1, "1/64", 2, 1)
    assert [e.value for e in qes_energies(rec)] == [8]


def test_j2_energies_match_closed_form_to_1e25():
    rec = rec_of(F128, 1, "1/64", 2, 2)
    spec = solve_spectrum(rec)
    closed = closed_form_energies(rec)
    for got, want in zip(spec.energies, closed):
        assert rel_err(got, want) < 1e-25
    assert float(closed[0]) == pytest.approx(12 - 3 * 2**0.5, rel=1e-14)
    assert float(closed[1]) == pytest.approx(12 + 3 * 2**0.5, rel=1e-14)


def test_selfdual_j3_energies():
    rec = rec_of(F128, 0, "1/64", 2, 3)
    spec = solve_spectrum(rec)
    want = [-(10**0.5), 0.0, 10**0.5]
    for got, w in zip(spec.energies, want):
        assert float(got) == pytest.approx(w, abs=1e-30)


def test_selfdual_j3_exact_mode_middle_level_is_exactly_zero():
    rec = rec_of(EXACT, 0, "1/64", 2, 3)
    energies = qes_energies(rec)
    assert energies[1].value == 0
    assert energies[0].value == -energies[2].value


def test_selfdual_j4_quadruple_is_symmetric():
    # The top level must be the negative of the bottom one.
    rec = rec_of(F128, 0, "1/64", 2, 4)
    closed = closed_form_energies(rec)
    assert closed[3] == -closed[0]
    assert closed[2] == -closed[1]
    assert float(closed[3]) > 0
    spec = solve_spectrum(rec)
    for got, want in zip(spec.energies, closed):
        assert rel_err(got, want) < 1e-25


def test_selfdual_j5_closed_form_matches_roots():
    rec = rec_of(F128, 0, "3/32", "7/3", 5)
    spec = solve_spectrum(rec)
    closed = closed_form_energies(rec)
    assert closed[2].is_zero
    for got, want in zip(spec.energies, closed):
        assert rel_err(got, want) < 1e-25


def test_closed_form_none_outside_range():
    assert closed_form_energies(rec_of(F128, 1, "1/64", 2, 3)) is None
    assert closed_form_energies(rec_of(F128, 0, "1/64", 2, 6)) is None


def test_closed_form_exact_mode_with_perfect_square():
    # J = 2, alpha = 0, 4*beta*s = 1/4: levels are exactly -+2
    rec = rec_of(EXACT, 0, "1/64", 4, 2)
    closed = closed_form_energies(rec)
    assert [e.value for e in closed] == [-2, 2]
    for got, want in zip(qes_energies(rec), closed):
        assert abs(float(got - want)) < 1e-40


def test_closed_form_exact_mode_irrational_raises():
    from qes_nbody import ExactnessError

    with pytest.raises(ExactnessError):
        closed_form_energies(rec_of(EXACT, 1, "1/64", 2, 2))


def test_root_count_matches_j_on_panel():
    betas = rational_panel(31, 4, positive=True)
    ss = rational_panel(37, 4, positive=True)
    for j, (beta, s) in enumerate(zip(betas, ss), start=2):
        rec = rec_of(EXACT, 0, beta, s, j)
        assert len(qes_energies(rec)) == j


def test_interlacing_of_consecutive_critical_polynomials():
    rec = rec_of(EXACT, "1/2", "3/16", "5/4", 4)
    spec = solve_spectrum(rec)
    rec3 = rec_of(EXACT, "1/2", "3/16", "5/4", 3)
    # roots of P_3 generated under the J=4 recursion interlace those of P_4
    from qes_nbody.rootfinding import real_roots

    inner, _ = real_roots(generate_P(rec, 3)[3])
    outer = spec.energies
    assert len(inner) == 3
    for k in range(3):
        assert outer[k] < inner[k] < outer[k + 1]


# -- weights ---------------------------------------------------------------------


def test_j2_weights_match_closed_form():
    rec = rec_of(F128, 1, "1/64", 2, 2)
    spec = solve_spectrum(rec)
    rad = (rec.alpha**2 + 4 * rec.beta * rec.s).sqrt()
    w1 = F128.scalar("1/2") + rec.alpha / (2 * rad)
    w2 = F128.scalar("1/2") - rec.alpha / (2 * rad)
    assert rel_err(spec.weights[0], w1) < 1e-25
    assert rel_err(spec.weights[1], w2) < 1e-25
    assert float(w1) == pytest.approx(0.5 + 2**0.5 / 3, rel=1e-14)
    assert sum(float(w) for w in spec.weights) == pytest.approx(1.0, abs=1e-30)


def test_selfdual_j3_weights_from_linear_solve():
    # omega_1 = omega_3 = s/(2(2s+1)), omega_2 = (s+1)/(2s+1)
    for s in (F(2), F(7, 3), F(9, 2)):
        rec = rec_of(F128, 0, "1/64", s, 3)
        spec = solve_spectrum(rec)
        w_edge = F128.scalar(s / (2 * (2 * s + 1)))
        w_mid = F128.scalar((s + 1) / (2 * s + 1))
        assert rel_err(spec.weights[0], w_edge) < 1e-25
        assert rel_err(spec.weights[1], w_mid) < 1e-25
        assert rel_err(spec.weights[2], w_edge) < 1e-25


def test_selfdual_j3_middle_weight_sum_rule_regression():
    # The (s+1)/(2s+2) variant of the middle weight fails the sum rule;
    # the linear solve gives (s+1)/(2s+1), which satisfies it exactly.
    s = F(2)
    w_edge = s / (2 * (2 * s + 1))
    assert 2 * w_edge + F(s + 1, 2 * s + 1) == 1
    assert 2 * w_edge + F(s + 1, 2 * s + 2) != 1


def test_selfdual_j4_weights_closed_form():
    for s in (F(2), F(11, 4)):
        rec = rec_of(F128, 0, "1/64", s, 4)
        spec = solve_spectrum(rec)
        inner = F128.scalar(16 * s * (s + 2) + 25).sqrt()
        w_out = (1 - F128.scalar(2 * s + 5) / inner) / 4
        w_in = (1 + F128.scalar(2 * s + 5) / inner) / 4
        for got, want in zip(spec.weights, (w_out, w_in, w_in, w_out)):
            assert rel_err(got, want) < 1e-25


def test_weights_sum_to_one_exactly_in_exact_mode():
    rec = rec_of(EXACT, "2/3", "5/32", "7/4", 4)
    spec = solve_spectrum(rec)
    total = sum(spec.weights, EXACT.zero)
    assert total.value == 1


def test_weights_need_distinct_energies():
    rec = rec_of(EXACT, 0, "1/64", 2, 2)
    e = EXACT.scalar(1)
    with pytest.raises(DegenerateSpectrumError):
        weights(rec, (e, e))


# -- norms and moments ----------------------------------------------------------------


def test_discrete_norm_equals_product_formula_exactly():
    rec = rec_of(EXACT, "1/3", "5/64", "9/5", 4)
    spec = solve_spectrum(rec)
    for n in range(4):
        assert spec.discrete_norm(n).value == norm_P(rec, n).value
    for n in range(4, 9):
        assert spec.discrete_norm(n).is_zero


def test_discrete_norm_selfdual_example():
    rec = rec_of(EXACT, 0, "1/64", 2, 3)
    spec = solve_spectrum(rec)
    assert spec.discrete_norm(1).value == 4


def test_moment_zero_is_one():
    rec = rec_of(EXACT, "1/2", "1/8", "3/2", 3)
    spec = solve_spectrum(rec)
    assert spec.moment(0).value == 1


def test_selfdual_even_moment_example():
    rec = rec_of(EXACT, 0, "1/64", 2, 3)
    spec = solve_spectrum(rec)
    assert spec.moment(2).value == 4


def test_selfdual_odd_moments_vanish_exactly():
    rec = rec_of(EXACT, 0, "7/64", "5/2", 4)
    spec = solve_spectrum(rec)
    for m in range(4):
        assert spec.moment(2 * m + 1).is_zero
        # the literal weighted sum over symmetric rational nodes also cancels
        assert moments(spec.energies, spec.weights, 2 * m + 1).is_zero


def test_first_moment_is_always_4_alpha_s():
    # E expands as 4*alpha*s*P_0 - P_1, so mu_1 = 4*alpha*s for every J.
    for j in (1, 2, 3, 5):
        rec = rec_of(EXACT, "3/7", "2/11", "13/6", j)
        assert spec_moment(rec, 1) == 4 * F(3, 7) * F(13, 6)


def spec_moment(rec, n):
    from qes_nbody import PolyE

    return moment_functional(rec, PolyE(EXACT, (0,) * n + (1,))).value


def test_moments_free_function_numeric_path():
    rec = rec_of(F128, 1, "1/64", 2, 2)
    spec = solve_spectrum(rec)
    mu1 = moments(spec.energies, spec.weights, 1)
    assert rel_err(mu1, F128.scalar(8)) < 1e-30  # 4*alpha*s = 8


# -- duality -----------------------------------------------------------------------------


def test_dualize_is_an_involution_with_selfdual_fixed_point():
    rec = rec_of(EXACT, 1, "1/64", 2, 2)
    assert dualize(dualize(rec)) == rec
    sd = rec_of(EXACT, 0, "1/64", 2, 3)
    assert dualize(sd) == sd


def test_dual_spectrum_is_negated_reversal():
    rec = rec_of(F128, 1, "1/64", 2, 2)
    dual = solve_spectrum(dualize(rec))
    orig = solve_spectrum(rec)
    # dual spectrum is {-16.24..., -7.75...}
    assert float(dual.energies[0]) == pytest.approx(-(12 + 3 * 2**0.5), rel=1e-14)
    assert float(dual.energies[1]) == pytest.approx(-(12 - 3 * 2**0.5), rel=1e-14)
    for k in range(2):
        assert abs(float(dual.energies[k] + orig.energies[1 - k])) < 1e-35
        assert abs(float(dual.weights[k] - orig.weights[1 - k])) < 1e-35


def test_duality_check_exact_mode_is_exact():
    for alpha, beta, s, j in [("1/2", "1/64", 2, 2), ("5/3", "3/16", "7/5", 4)]:
        rec = rec_of(EXACT, alpha, beta, s, j)
        report = duality_check(rec)
        assert report.passed
        assert report.max_energy_deviation.is_zero
        assert report.max_weight_deviation.is_zero


def test_duality_check_float_mode():
    report = duality_check(rec_of(F128, "4/3", "1/32", "5/2", 3))
    assert report.passed


def test_selfdual_check_requires_alpha_zero():
    with pytest.raises(ValueError):
        selfdual_check(rec_of(EXACT, 1, "1/64", 2, 2))


def test_selfdual_check_exact():
    report = selfdual_check(rec_of(EXACT, 0, "1/64", 2, 3))
    assert report.passed
    assert report.max_odd_moment.is_zero


def test_selfdual_even_j_has_no_zero_level_odd_j_does():
    even = solve_spectrum(rec_of(EXACT, 0, "1/64", 2, 4))
    assert all(not e.is_zero for e in even.energies)
    odd = solve_spectrum(rec_of(EXACT, 0, "1/64", 2, 5))
    assert odd.energies[2].is_zero


# -- positivity ---------------------------------------------------------------------------


def test_positivity_report_passes_for_valid_parameters():
    report = positivity_report(rec_of(EXACT, 1, "1/64", 2, 4))
    assert report.passed
    assert all(report.a_positive)
    assert report.truncation_index == 4
    assert report.implies_positive_weights
    assert report.implies_positive_norms_below_j


def test_positivity_chain_values():
    rec = rec_of(EXACT, 0, "1/64", 2, 3)
    report = positivity_report(rec)
    # a_k = 64*beta*k*(k+1)*(3-k) at beta = 1/64
    assert [v.value for v in report.a_values] == [4, 6, 0]
    assert report.b_values[0].is_zero


def test_monic_chain_negative_beta_is_visible():
    _, a = monic_chain(EXACT.scalar(0), EXACT.scalar("-1/8"), EXACT.scalar(2), 3, 2)
    assert all(v < 0 for v in a)
