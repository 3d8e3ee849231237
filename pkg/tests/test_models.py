from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from qes_nbody import (
    EXACT,
    CalogeroMarchioro,
    CalogeroSutherland,
    ModelValidationError,
    NovelCorrelation,
    ScalarMode,
    a_from_inv_square,
    cm_reduce,
    cs_reduce,
    hyperradius_squared,
    levels_from_quadratic,
    novel_reduce,
    reduced_model,
)

F = Fraction
F128 = ScalarMode.floating(128)


# -- effective angular constants -------------------------------------------------


def test_cm_gamma_golden():
    # N=3, D=3, g=2, G=1: Lambda = 1, gamma = [6 - 2 + 6]/2 = 5
    rm = cm_reduce(
        CalogeroMarchioro(
            n_particles=3, dimension=3, pair_coupling=2, three_body=1, levels=1
        )
    )
    assert rm.gamma.value == 5
    assert rm.mode.is_exact


def test_cm_all_couplings_off():
    rm = cm_reduce(
        CalogeroMarchioro(
            n_particles=2, dimension=2, pair_coupling=0, three_body=0, levels=1
        )
    )
    assert rm.gamma.value == 0
    assert rm.a.value == 0


def test_novel_gamma_golden():
    # N=2, g=1: 2*gamma + 1 = 3 + 4 = 7
    rm = novel_reduce(NovelCorrelation(n_particles=2, correlation_exponent=1, levels=1))
    assert rm.gamma.value == 3


def test_cs_gamma_golden():
    # N=3, g=2: lambda = 3/2, 2*gamma + 1 = 2 + 9 = 11
    rm = cs_reduce(CalogeroSutherland(n_particles=3, pair_coupling=2, levels=1))
    assert rm.gamma.value == 5


def test_cs_half_integer_gamma():
    # N=2, g=0: lambda = 1/2, 2*gamma + 1 = 1 + 1 = 2
    rm = cs_reduce(CalogeroSutherland(n_particles=2, pair_coupling=0, levels=1))
    assert rm.gamma.value == F(1, 2)


def test_novel_derived_couplings():
    p = NovelCorrelation(n_particles=2, correlation_exponent=F(3, 2), levels=1)
    assert p.pair_strength == F(3, 4)    # g(g-1)
    assert p.cross_strength == F(9, 4)   # g^2


# -- a from the inverse-square coefficient ---------------------------------------


def test_a_zero_when_f_zero():
    assert a_from_inv_square(EXACT.scalar(0), EXACT.scalar("7/3")).value == 0


def test_a_unit_when_f_is_two_gamma_plus_one():
    for gamma in (F(1), F(5), F(7, 2)):
        a = a_from_inv_square(EXACT.scalar(2 * gamma + 1), EXACT.scalar(gamma))
        assert a.value == 1


def test_a_quadratic_root_float():
    a = a_from_inv_square(F128.scalar(3), F128.scalar("1/2"))
    assert abs(float(a) - (-0.5 + (0.25 + 3) ** 0.5)) < 1e-15


@given(
    f=st.fractions(min_value=F(0), max_value=F(50), max_denominator=20),
    gamma=st.fractions(min_value=F(1, 10), max_value=F(20), max_denominator=20),
)
def test_a_satisfies_its_quadratic(f, gamma):
    a = a_from_inv_square(F128.scalar(f), F128.scalar(gamma))
    residual = a * a + 2 * a * F128.scalar(gamma) - F128.scalar(f)
    assert abs(float(residual)) < 1e-30 * max(1.0, float(f))
    assert a >= 0


def test_negative_f_rejected():
    with pytest.raises(ModelValidationError):
        a_from_inv_square(EXACT.scalar(-1), EXACT.scalar(1))


def test_zero_gamma_with_positive_f_rejected():
    with pytest.raises(ModelValidationError):
        a_from_inv_square(EXACT.scalar(1), EXACT.scalar(0))


# -- J from the quadratic coefficient ----------------------------------------------


def quadratic_for(alpha, beta, a, gamma, j):
    return 4 * alpha**2 - 8 * beta * (2 * j + a + gamma)


def test_levels_roundtrip_integer():
    alpha, beta = EXACT.scalar(1), EXACT.scalar("1/64")
    a, gamma = EXACT.scalar(0), EXACT.scalar(1)
    b = quadratic_for(alpha, beta, a, gamma, 1)
    j, is_qes, j_int = levels_from_quadratic(b, alpha, beta, a, gamma)
    assert (j.value, is_qes, j_int) == (1, True, 1)


def test_levels_half_integer_not_qes():
    alpha, beta = EXACT.scalar(1), EXACT.scalar("1/64")
    a, gamma = EXACT.scalar(0), EXACT.scalar(1)
    b = 4 * alpha**2 - 8 * beta * (3 + a + gamma)
    j, is_qes, j_int = levels_from_quadratic(b, alpha, beta, a, gamma)
    assert j.value == F(3, 2)
    assert not is_qes and j_int is None


def test_levels_selfdual_inversion():
    alpha, beta = EXACT.scalar(0), EXACT.scalar("2/7")
    a, gamma = EXACT.scalar(0), EXACT.scalar("5/2")
    b = quadratic_for(alpha, beta, a, gamma, 4)
    j, is_qes, j_int = levels_from_quadratic(b, alpha, beta, a, gamma)
    assert j_int == 4 and is_qes


def test_levels_zero_beta_rejected():
    with pytest.raises(ModelValidationError):
        levels_from_quadratic(
            EXACT.scalar(1), EXACT.scalar(0), EXACT.scalar(0),
            EXACT.scalar(0), EXACT.scalar(1),
        )


# -- full reductions ------------------------------------------------------------------


def test_cm_reduce_full_exact_case():
    rm = cm_reduce(
        CalogeroMarchioro(
            n_particles=3, dimension=3, pair_coupling=2, three_body=1,
            inv_square=11, quartic=2, sextic="1/4", levels=2,
        )
    )
    assert rm.mode.is_exact
    assert (rm.a.value, rm.gamma.value) == (1, 5)
    assert (rm.alpha.value, rm.beta.value) == (1, F(1, 8))
    coeffs = rm.potential_coefficients()
    assert coeffs["quadratic"].value == -6
    assert coeffs["quartic"].value == 2
    assert coeffs["sextic"].value == F(1, 4)
    assert coeffs["inv_square"].value == 11
    rec = rm.recursion()
    assert rec.j == 2 and rec.s.value == 7


def test_quadratic_and_levels_are_mutually_exclusive():
    with pytest.raises(ModelValidationError):
        CalogeroMarchioro(n_particles=2, dimension=2, quadratic=1, levels=1)
    with pytest.raises(ModelValidationError):
        CalogeroMarchioro(n_particles=2, dimension=2)


def test_inconsistent_three_body_rejected():
    with pytest.raises(ModelValidationError):
        cm_reduce(
            CalogeroMarchioro(
                n_particles=3, dimension=3, pair_coupling=2, three_body=2, levels=1
            )
        )


def test_three_body_is_optional():
    rm = cm_reduce(
        CalogeroMarchioro(n_particles=3, dimension=3, pair_coupling=2, levels=1)
    )
    assert rm.gamma.value == 5


def test_auto_mode_falls_back_to_float_on_irrational_lambda():
    rm = cm_reduce(
        CalogeroMarchioro(n_particles=3, dimension=3, pair_coupling=1, levels=1)
    )
    assert not rm.mode.is_exact
    assert rm.mode.bits == 128
    lam = 0.5 * ((1 + 4) ** 0.5 - 1)
    assert abs(float(rm.gamma) - 0.5 * (6 - 2 + lam * 6)) < 1e-14


def test_exact_mode_requested_with_irrational_lambda_raises():
    from qes_nbody import ExactnessError

    with pytest.raises(ExactnessError):
        cm_reduce(
            CalogeroMarchioro(n_particles=3, dimension=3, pair_coupling=1, levels=1),
            mode="exact",
        )


def test_selfdual_sector_when_quartic_zero():
    rm = cs_reduce(CalogeroSutherland(n_particles=3, pair_coupling=2, levels=3))
    assert rm.alpha.is_zero


def test_invalid_sextic_coefficient():
    with pytest.raises(ModelValidationError):
        CalogeroMarchioro(n_particles=2, dimension=2, sextic=0, levels=1)


def test_equal_reductions_from_different_models_are_equal():
    rm_direct = reduced_model(1, 5, 1, "1/8", 2)
    rm_cm = cm_reduce(
        CalogeroMarchioro(
            n_particles=3, dimension=3, pair_coupling=2, inv_square=11,
            quartic=2, sextic="1/4", levels=2,
        )
    )
    assert (rm_direct.a, rm_direct.gamma, rm_direct.alpha, rm_direct.beta) == (
        rm_cm.a, rm_cm.gamma, rm_cm.alpha, rm_cm.beta,
    )
    assert rm_direct.j_integer == rm_cm.j_integer


# -- hyperradius -----------------------------------------------------------------------


def test_cm_two_particles_at_distance():
    rho2 = hyperradius_squared("calogero_marchioro", [(0, 0, 0), (3, 4, 0)])
    assert rho2 == F(25, 2)


def test_novel_sum_of_radii():
    assert hyperradius_squared("novel_correlation", [(0, 0), (3, 4)]) == 25


def test_cs_coordinate_squares():
    assert hyperradius_squared("calogero_sutherland", [1, -1]) == 2


def test_dimension_mismatch_rejected():
    with pytest.raises(ModelValidationError):
        hyperradius_squared("novel_correlation", [(1, 2, 3)])
    with pytest.raises(ModelValidationError):
        hyperradius_squared("calogero_marchioro", [(1, 2), (1, 2, 3)])


def test_hyperradius_square_root_paths():
    from qes_nbody import ExactnessError, hyperradius

    assert hyperradius("novel_correlation", [(0, 0), (3, 4)]).value == 5
    with pytest.raises(ExactnessError):
        hyperradius("calogero_sutherland", [1, -1])  # sqrt(2) is irrational
    r = hyperradius("calogero_sutherland", [1, -1], mode=F128)
    assert abs(float(r) - 2**0.5) < 1e-30
