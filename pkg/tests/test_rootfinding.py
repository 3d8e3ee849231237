from fractions import Fraction

import mpmath
import pytest

from qes_nbody import EXACT, DegenerateRootsError, PolyE, RootCountError, ScalarMode
from qes_nbody.rootfinding import real_roots, real_roots_exact

F = Fraction


def poly_from_roots(mode, roots):
    p = PolyE.one(mode)
    for r in roots:
        p = p * PolyE(mode, (-mode.scalar(r), 1))
    return p


def test_linear_root_is_exact():
    roots, encs = real_roots(PolyE(EXACT, (F(-8), 1)))
    assert [r.value for r in roots] == [8]
    assert encs[0].is_exact


def test_known_rational_roots_found_exactly():
    p = poly_from_roots(EXACT, [F(-3), F(0), F(2)])
    roots, encs = real_roots(p)
    # 0 is hit exactly by deflation; the others come back as tight enclosures
    assert [float(r) for r in roots] == pytest.approx([-3.0, 0.0, 2.0], abs=1e-40)
    assert encs[1].is_exact and roots[1].value == 0


def test_enclosure_width_is_respected():
    p = PolyE(EXACT, (F(-2), 0, 1))  # roots +-sqrt(2)
    _, encs = real_roots(p, width=F(1, 2**40))
    for enc in encs:
        if not enc.is_exact:
            assert enc.width <= F(1, 2**40)


def test_mirror_symmetry_of_exact_isolation():
    # The isolation of p(-E) must produce exactly negated midpoints.
    p = PolyE(EXACT, (F(3, 7), F(-5, 3), F(1, 9), 1))
    mirrored = p.reflected()
    roots, _ = real_roots(p)
    roots_m, _ = real_roots(mirrored)
    assert [(-r).value for r in reversed(roots_m)] == [r.value for r in roots]


def test_refinement_survives_a_root_endpoint():
    # Roots {-2, -4/3, 9/8}: the Cauchy bound is exactly 4, the isolation tree
    # hits -2 at a split point, and the sibling enclosure (-2, 0) then has a
    # root as its lower endpoint; sign-based orientation must not read it.
    p = poly_from_roots(EXACT, [F(-2), F(-4, 3), F(9, 8)])
    roots, encs = real_roots(p, expected=3)
    assert [float(r) for r in roots] == pytest.approx(
        [-2.0, -4.0 / 3.0, 1.125], abs=1e-40
    )
    assert encs[0].is_exact and roots[0].value == -2


def test_refinement_with_roots_at_both_endpoints():
    from qes_nbody.rootfinding import RootEnclosure, _refine, _sturm_chain

    p = poly_from_roots(EXACT, [F(1), F(2), F(4)])
    cs = [c.value for c in p.coeffs]
    chain = _sturm_chain(cs)
    enc = _refine(chain, cs, RootEnclosure(F(1), F(4), False), F(1, 2**80))
    assert enc.lo <= 2 <= enc.hi
    assert enc.is_exact or enc.width <= F(1, 2**80)


def test_expected_count_certification():
    p = PolyE(EXACT, (F(1), 0, 1))  # E^2 + 1: no real roots
    with pytest.raises(RootCountError):
        real_roots(p, expected=2)


def test_degenerate_roots_rejected():
    p = poly_from_roots(EXACT, [F(1), F(1)])
    with pytest.raises(DegenerateRootsError):
        real_roots(p)


def test_repeated_zero_root_rejected():
    with pytest.raises(DegenerateRootsError):
        real_roots_exact([F(0), F(0), F(1)])


def test_float_path_matches_known_roots():
    mode = ScalarMode.floating(128)
    targets = [F(-7, 3), F(1, 9), F(5, 2)]
    p = poly_from_roots(mode, targets)
    roots, encs = real_roots(p, expected=3)
    assert encs is None
    with mpmath.workprec(150):
        for got, want in zip(roots, targets):
            err = abs(got.value - mpmath.mpf(want.numerator) / want.denominator)
            assert err < mpmath.mpf(2) ** -100


def test_float_path_agrees_with_exact_isolation():
    coeffs = [F(-11, 5), F(2, 3), F(7, 2), 1]
    exact_roots, _ = real_roots(PolyE(EXACT, coeffs))
    float_roots, _ = real_roots(PolyE(ScalarMode.floating(128), coeffs))
    assert len(exact_roots) == len(float_roots)
    for a, b in zip(exact_roots, float_roots):
        assert abs(float(a) - float(b)) < 1e-30
