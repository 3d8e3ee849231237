"""Solvable-sector spectra: energies, weights, norms, moments, duality.

The J solvable energies are the roots of the critical polynomial P_J.  The
discrete weights omega_k are fixed by sum_k P_n(E_k) omega_k = delta_{n0} for
n = 0..J-1, whose n = 0 row normalizes the measure to total mass one.

In exact mode, moments and discrete norms are evaluated through the moment
functional L rather than through the (generally irrational) roots: any
polynomial f reduces mod P_J to a remainder of degree < J, the remainder is
expanded in the P basis, and L[f] is the P_0 component.  This reproduces the
weighted root sums exactly and keeps identities such as vanishing odd moments
and the product-formula norms exact rational statements.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath
from mpmath import mp

from .polynomials import PolyE
from .rootfinding import (
    DEFAULT_ENCLOSURE_WIDTH,
    DegenerateRootsError,
    RootEnclosure,
    real_roots,
)
from .scalars import Scalar, ScalarMode
from .sextic import SexticRecursion, generate_P, monic_chain

__all__ = [
    "QESSpectrum",
    "DegenerateSpectrumError",
    "qes_energies",
    "closed_form_energies",
    "weights",
    "solve_spectrum",
    "moments",
    "discrete_norm",
    "moment_functional",
    "dualize",
    "duality_check",
    "selfdual_check",
    "positivity_report",
    "DualityReport",
    "SelfDualReport",
    "PositivityReport",
]


class DegenerateSpectrumError(ArithmeticError):
    """Repeated solvable energies; weights are not defined by the linear system."""


def _float_tolerance(mode: ScalarMode, scale: float = 1.0) -> Scalar:
    bits = mode.bits or 53
    with mp.workprec(bits):
        return Scalar(mode, mpmath.mpf(2) ** (-(bits - 24)) * max(1.0, scale))


def qes_energies(
    rec: SexticRecursion, width: Fraction = DEFAULT_ENCLOSURE_WIDTH
) -> tuple[Scalar, ...]:
    """The J real roots of P_J, sorted ascending.

    Exact mode returns exact rationals where the root is rational (always for
    J = 1) and certified enclosure midpoints otherwise; float mode certifies
    the count of distinct real roots and polishes to the mode precision.
    """
    p_j = generate_P(rec, rec.j)[-1]
    try:
        roots, _ = real_roots(p_j, width=width, expected=rec.j)
    except DegenerateRootsError as exc:
        raise DegenerateSpectrumError(str(exc)) from exc
    return tuple(roots)


def closed_form_energies(rec: SexticRecursion) -> tuple[Scalar, ...] | None:
    """Analytic spectra where they exist: any alpha for J <= 2, alpha = 0 for J <= 5.

    Returns None outside that range.  Exact mode raises ExactnessError when a
    required square root is irrational; use a float mode there.
    """
    alpha, beta, s = rec.alpha, rec.beta, rec.s
    if rec.j == 1:
        return (4 * alpha * s,)
    if rec.j == 2:
        base = 4 * alpha * (s + 1)
        rad = 4 * (alpha**2 + 4 * beta * s).sqrt()
        return (base - rad, base + rad)
    if not alpha.is_zero:
        return None
    zero = rec.mode.zero
    if rec.j == 3:
        r = 8 * (2 * beta * (2 * s + 1)).sqrt()
        return (-r, zero, r)
    if rec.j == 4:
        inner = (16 * s * (s + 2) + 25).sqrt()
        hi = (320 * beta * (s + 1) + 64 * beta * inner).sqrt()
        lo = (320 * beta * (s + 1) - 64 * beta * inner).sqrt()
        return (-hi, -lo, lo, hi)
    if rec.j == 5:
        # P_5 = E * (quartic in E^2); deflate and solve the quadratic in E^2.
        p5 = generate_P(rec, 5)[-1]
        c1, c3, c5 = p5.coefficient(1), p5.coefficient(3), p5.coefficient(5)
        disc = (c3 * c3 - 4 * c5 * c1).sqrt()
        x_small = (-c3 - disc) / (2 * c5)
        x_large = (-c3 + disc) / (2 * c5)
        r1 = (x_small if x_small < x_large else x_large).sqrt()
        r2 = (x_large if x_small < x_large else x_small).sqrt()
        return (-r2, -r1, zero, r1, r2)
    return None


# -- weights ----------------------------------------------------------------


def _solve_exact(matrix: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    n = len(matrix)
    aug = [list(row) + [rhs[i]] for i, row in enumerate(matrix)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot is None:
            raise DegenerateSpectrumError("singular weight system (repeated energies)")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [v * inv for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [v - f * w for v, w in zip(aug[r], aug[col])]
    return [aug[i][n] for i in range(n)]


def weights(rec: SexticRecursion, energies: tuple[Scalar, ...]) -> tuple[Scalar, ...]:
    """Solve sum_k P_n(E_k) omega_k = delta_{n0} for n = 0..J-1."""
    j = rec.j
    if len(energies) != j:
        raise ValueError(f"need exactly {j} energies, got {len(energies)}")
    if len({e.value for e in energies}) != j:
        raise DegenerateSpectrumError("energies are not distinct")
    basis = generate_P(rec, j - 1)
    mode = rec.mode
    if mode.is_exact:
        matrix = [[basis[n](e).value for e in energies] for n in range(j)]
        rhs = [Fraction(1 if n == 0 else 0) for n in range(j)]
        return tuple(mode.scalar(v) for v in _solve_exact(matrix, rhs))
    bits = mode.bits or 53
    with mp.workprec(bits):
        mat = mpmath.matrix(j, j)
        for n in range(j):
            for k, e in enumerate(energies):
                mat[n, k] = basis[n](e).value
        rhs_v = mpmath.matrix([1] + [0] * (j - 1))
        sol = mpmath.lu_solve(mat, rhs_v)
    return tuple(Scalar(mode, sol[k]) for k in range(j))


@dataclass(frozen=True)
class QESSpectrum:
    """Energies, weights and the defining recursion of one solvable sector."""

    recursion: SexticRecursion
    energies: tuple[Scalar, ...]
    weights: tuple[Scalar, ...]
    enclosures: tuple[RootEnclosure, ...] | None = None

    @property
    def j(self) -> int:
        return self.recursion.j

    @property
    def mode(self) -> ScalarMode:
        return self.recursion.mode

    def moment(self, n: int) -> Scalar:
        """mu_n of the discrete measure; exact mode goes through the functional."""
        if n < 0:
            raise ValueError("moment order must be >= 0")
        if self.mode.is_exact:
            e_power = PolyE(self.mode, (0,) * n + (1,))
            return moment_functional(self.recursion, e_power)
        return moments(self.energies, self.weights, n)

    def discrete_norm(self, n: int) -> Scalar:
        """sum_k omega_k P_n(E_k)^2; exact mode goes through the functional."""
        if n < 0:
            raise ValueError("norm index must be >= 0")
        p_n = generate_P(self.recursion, n)[-1]
        if self.mode.is_exact:
            return moment_functional(self.recursion, p_n * p_n)
        vals = [p_n(e) for e in self.energies]
        acc = self.mode.zero
        for w, v in zip(self.weights, vals):
            acc = acc + w * v * v
        return acc


def solve_spectrum(
    rec: SexticRecursion, width: Fraction = DEFAULT_ENCLOSURE_WIDTH
) -> QESSpectrum:
    p_j = generate_P(rec, rec.j)[-1]
    try:
        roots, encs = real_roots(p_j, width=width, expected=rec.j)
    except DegenerateRootsError as exc:
        raise DegenerateSpectrumError(str(exc)) from exc
    energies = tuple(roots)
    return QESSpectrum(
        recursion=rec,
        energies=energies,
        weights=weights(rec, energies),
        enclosures=tuple(encs) if encs is not None else None,
    )


# -- moments and norms -------------------------------------------------------


def moments(energies, weights_, n: int) -> Scalar:
    """Literal weighted power sum sum_k omega_k E_k^n."""
    if n < 0:
        raise ValueError("moment order must be >= 0")
    mode = energies[0].mode
    acc = mode.zero
    for e, w in zip(energies, weights_):
        acc = acc + w * e**n
    return acc


def discrete_norm(spectrum: QESSpectrum, n: int) -> Scalar:
    return spectrum.discrete_norm(n)


def moment_functional(rec: SexticRecursion, f: PolyE) -> Scalar:
    """L[f]: reduce f mod P_J, expand in the P basis, take the P_0 component."""
    polys = generate_P(rec, rec.j)
    _, rem = divmod(f, polys[-1])
    for k in range(rec.j - 1, 0, -1):
        ck = rem.coefficient(k) / polys[k].leading_coefficient
        if not ck.is_zero:
            rem = rem - ck * polys[k]
    return rem.coefficient(0)


# -- duality -----------------------------------------------------------------


def dualize(rec: SexticRecursion) -> SexticRecursion:
    """The anti-isospectral partner: alpha -> -alpha.  An involution."""
    return rec.with_alpha(-rec.alpha)


@dataclass(frozen=True)
class DualityReport:
    passed: bool
    max_energy_deviation: Scalar
    max_weight_deviation: Scalar
    tolerance: Scalar


def duality_check(
    rec: SexticRecursion, width: Fraction = DEFAULT_ENCLOSURE_WIDTH
) -> DualityReport:
    """Check E-hat_k = -E_{J+1-k} and omega-hat_k = omega_{J+1-k}."""
    spec = solve_spectrum(rec, width)
    dual = solve_spectrum(dualize(rec), width)
    j = rec.j
    dev_e = max(
        (abs(dual.energies[k] + spec.energies[j - 1 - k]) for k in range(j)),
        key=lambda s: s.value,
    )
    dev_w = max(
        (abs(dual.weights[k] - spec.weights[j - 1 - k]) for k in range(j)),
        key=lambda s: s.value,
    )
    if rec.mode.is_exact:
        tol = rec.mode.zero
        passed = dev_e.is_zero and dev_w.is_zero
    else:
        scale = max(1.0, max(abs(float(e)) for e in spec.energies))
        tol = _float_tolerance(rec.mode, scale)
        passed = dev_e <= tol and dev_w <= tol
    return DualityReport(passed, dev_e, dev_w, tol)


@dataclass(frozen=True)
class SelfDualReport:
    passed: bool
    max_energy_deviation: Scalar
    max_weight_deviation: Scalar
    max_odd_moment: Scalar
    tolerance: Scalar


def selfdual_check(
    rec: SexticRecursion, width: Fraction = DEFAULT_ENCLOSURE_WIDTH
) -> SelfDualReport:
    """For alpha = 0: spectrum symmetric about 0, weights palindromic, odd moments 0."""
    if not rec.alpha.is_zero:
        raise ValueError("selfdual_check requires alpha = 0")
    spec = solve_spectrum(rec, width)
    j = rec.j
    dev_e = max(
        (abs(spec.energies[k] + spec.energies[j - 1 - k]) for k in range(j)),
        key=lambda s: s.value,
    )
    dev_w = max(
        (abs(spec.weights[k] - spec.weights[j - 1 - k]) for k in range(j)),
        key=lambda s: s.value,
    )
    odd = max(
        (abs(spec.moment(2 * m + 1)) for m in range(j)),
        key=lambda s: s.value,
    )
    if rec.mode.is_exact:
        tol = rec.mode.zero
        passed = dev_e.is_zero and dev_w.is_zero and odd.is_zero
    else:
        scale = max(1.0, max(abs(float(e)) for e in spec.energies)) ** (2 * j - 1)
        tol = _float_tolerance(rec.mode, scale)
        passed = dev_e <= tol and dev_w <= tol and odd <= tol
    return SelfDualReport(passed, dev_e, dev_w, odd, tol)


# -- positivity ---------------------------------------------------------------


@dataclass(frozen=True)
class PositivityReport:
    """Conditions under which the weights and the sub-J norms are positive.

    In the monic form p_{k+1} = (E - b_k)p_k - a_k p_{k-1} the family needs
    real b_k and a_k > 0 up to the truncation index, where a_J = 0 cuts the
    chain.  When the report passes, every omega_k > 0 and every norm below J
    is positive.
    """

    b_values: tuple[Scalar, ...]
    a_values: tuple[Scalar, ...]
    b_all_real: bool
    a_positive: tuple[bool, ...]
    truncation_index: int | None
    passed: bool

    @property
    def implies_positive_weights(self) -> bool:
        return self.passed

    @property
    def implies_positive_norms_below_j(self) -> bool:
        return self.passed


def positivity_report(rec: SexticRecursion, k_max: int | None = None) -> PositivityReport:
    k_max = rec.j if k_max is None else k_max
    b, a = monic_chain(rec.alpha, rec.beta, rec.s, rec.j, k_max)
    a_pos = tuple(v > 0 for v in a[: rec.j - 1])
    truncation = rec.j if rec.j <= k_max and a[rec.j - 1].is_zero else None
    passed = all(a_pos) and (rec.j > k_max or truncation == rec.j)
    return PositivityReport(
        b_values=tuple(b),
        a_values=tuple(a),
        b_all_real=True,
        a_positive=a_pos,
        truncation_index=truncation,
        passed=passed,
    )

