"""The oscillator + Coulomb + inverse-square family with one solvable level.

With V(rho) = [B^2 rho^2 - C/rho + F/rho^2]/2 and the substitution
phi = rho^a exp(-B rho^2/2) eta(rho), eta(rho) = sum_m P_m(E) rho^m, the
expansion coefficients obey

    m*(2a + 2*gamma + m)*P_m + C*P_{m-1} + [E - 2B*(m - 1 + a + gamma)]*P_{m-2} = 0

with P_{-1} = 0, P_0 = 1 (the printed B = 1 form generalizes by restoring B
through the substitution; the termination analysis below checks itself against
that form).  The series truncates at degree n exactly when

    E = 2B*(a + gamma + n + 1)        (the rho^{n+2} row kills the P_n term)
    P_{n+1}(E; C) = 0                 (the rho^{n+1} row pins C)

and then every higher coefficient vanishes by induction, so eta is a degree-n
polynomial: one solvable level per constraint branch.  P_{n+1} at the solvable
energy is a polynomial in C of definite parity, so the constraint is really a
polynomial in C^2: linear for n = 1, 2, which gives the closed forms
C^2 = 2(2a + 2*gamma + 1)B and C^2 = 4(4a + 4*gamma + 3)B.

Unlike the sextic sector this family is not an orthogonal-polynomial system:
deg P_n = floor(n/2) rather than n, and E multiplies P_{n-2} instead of
P_{n-1}.  :func:`orthogonality_obstruction` reports the first violated
hypothesis concretely.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .polynomials import PolyE
from .rootfinding import real_roots
from .scalars import Scalar, ScalarMode, ScalarModeError

__all__ = [
    "CoulombModel",
    "TerminationError",
    "TerminationResult",
    "coulomb_polynomials",
    "termination_solve",
    "qes_energy",
    "eta_coefficients",
    "qes_state",
    "CoulombState",
    "orthogonality_obstruction",
    "ObstructionReport",
]


class TerminationError(ArithmeticError):
    """No positive C^2 lets the series truncate at the requested degree."""


@dataclass(frozen=True)
class CoulombModel:
    """Parameter bundle (a, gamma, B, C) of the oscillator + Coulomb family."""

    a: Scalar
    gamma: Scalar
    b_strength: Scalar
    coulomb: Scalar

    def __post_init__(self):
        mode = self.a.mode
        for s in (self.gamma, self.b_strength, self.coulomb):
            if s.mode != mode:
                raise ScalarModeError("model parameters must share one scalar mode")
        if self.a < 0:
            raise ValueError("radial exponent a must be >= 0")
        if not (self.b_strength > 0):
            raise ValueError("oscillator strength B must be > 0")

    @property
    def mode(self) -> ScalarMode:
        return self.a.mode

    @property
    def inv_square(self) -> Scalar:
        """F = a^2 + 2*a*gamma, fixed by regularity at the origin."""
        return self.a**2 + 2 * self.a * self.gamma

    @property
    def a_gamma(self) -> Scalar:
        return self.a + self.gamma


def _check_denominators(a_gamma: Scalar, n_max: int) -> None:
    for m in range(1, n_max + 1):
        if (2 * a_gamma + m).is_zero:
            raise ValueError(f"recursion denominator vanishes at order {m}")


def coulomb_polynomials(model: CoulombModel, n_max: int) -> list[PolyE]:
    """P_0 .. P_{n_max} as polynomials in E; deg P_n = floor(n/2)."""
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    mode = model.mode
    t = model.a_gamma
    _check_denominators(t, n_max)
    polys = [PolyE.one(mode)]
    prev = PolyE.zero(mode)
    two_b = 2 * model.b_strength
    for m in range(1, n_max + 1):
        lin = PolyE.linear(mode, -two_b * (m - 1 + t), 1)   # E - 2B(m-1+a+gamma)
        num = model.coulomb * polys[-1] + lin * prev
        denom = mode.scalar(m) * (2 * t + m)
        prev = polys[-1]
        polys.append(num * (mode.scalar(-1) / denom))
    return polys


def qes_energy(a: Scalar, gamma: Scalar, n: int, b_strength: Scalar) -> Scalar:
    """The one solvable level for truncation degree n: E = 2B(a + gamma + n + 1)."""
    return 2 * b_strength * (a + gamma + n + 1)


def _coefficients_in_coulomb_strength(
    a: Scalar, gamma: Scalar, n: int, b_strength: Scalar
) -> list[PolyE]:
    """R_0 .. R_{n+1} as polynomials in C, at the truncation energy."""
    mode = a.mode
    t = a + gamma
    _check_denominators(t, n + 1)
    energy = qes_energy(a, gamma, n, b_strength)
    polys = [PolyE.one(mode)]
    prev = PolyE.zero(mode)
    for m in range(1, n + 2):
        scalar_part = energy - 2 * b_strength * (m - 1 + t)
        num = polys[-1].shift_up(1) + scalar_part * prev
        denom = mode.scalar(m) * (2 * t + m)
        prev = polys[-1]
        polys.append(num * (mode.scalar(-1) / denom))
    return polys


@dataclass(frozen=True)
class TerminationResult:
    """Solvable level and the C^2 branches that make the series truncate."""

    n: int
    energy: Scalar
    c_squared_values: tuple[Scalar, ...]
    constraint: PolyE   # polynomial in X = C^2 whose positive roots are the branches

    @property
    def c_squared(self) -> Scalar:
        """The smallest positive branch (the only one for n <= 2)."""
        return self.c_squared_values[0]


def termination_solve(
    a: Scalar, gamma: Scalar, n: int, b_strength: Scalar
) -> TerminationResult:
    """Energy and C^2 constraint for truncation at degree n >= 1.

    The constraint polynomial in X = C^2 is linear for n = 1, 2 (exact roots in
    exact mode); higher n are solved by certified real-root isolation, and a
    result is only returned when a positive root exists.
    """
    if n < 1:
        raise ValueError("truncation degree n must be >= 1")
    if not (b_strength > 0):
        raise TerminationError(
            "oscillator strength B must be > 0 (at B = 0 the constraint forces C = 0)"
        )
    mode = a.mode
    r_top = _coefficients_in_coulomb_strength(a, gamma, n, b_strength)[n + 1]
    parity = (n + 1) % 2
    # R_{n+1} has the parity of n+1 in C; fold into X = C^2.
    for i, c in enumerate(r_top.coeffs):
        if i % 2 != parity and not c.is_zero:
            raise AssertionError("truncation constraint lost its parity structure")
    constraint = PolyE(
        mode, [r_top.coefficient(2 * k + parity) for k in range(r_top.degree // 2 + 1)]
    )
    if constraint.degree == 0 or constraint.is_zero:
        raise TerminationError(f"no C^2 constraint at truncation degree {n}")
    roots, _ = real_roots(constraint)
    positive = tuple(r for r in roots if r > 0)
    if not positive:
        raise TerminationError(
            f"no positive C^2 solves the truncation constraint at degree {n}"
        )
    return TerminationResult(
        n=n,
        energy=qes_energy(a, gamma, n, b_strength),
        c_squared_values=positive,
        constraint=constraint,
    )


def eta_coefficients(model: CoulombModel, n: int, energy: Scalar | None = None) -> list[Scalar]:
    """eta(rho) = sum_{m<=n} P_m(E) rho^m at the solvable energy.

    Raises if the series does not actually truncate there (P_{n+1}(E) != 0
    beyond mode tolerance).
    """
    if energy is None:
        energy = qes_energy(model.a, model.gamma, n, model.b_strength)
    polys = coulomb_polynomials(model, n + 1)
    top = polys[n + 1](energy)
    if model.mode.is_exact:
        truncates = top.is_zero
    else:
        bits = model.mode.bits or 53
        scale = max(1.0, max(abs(float(polys[m](energy))) for m in range(n + 1)))
        truncates = abs(float(top)) <= 2.0 ** (-(bits - 24)) * scale
    if not truncates:
        raise TerminationError(
            f"series does not truncate at degree {n}: P_{n + 1}(E) = {top}"
        )
    return [polys[m](energy) for m in range(n + 1)]


@dataclass(frozen=True)
class CoulombState:
    n: int
    energy: Scalar
    eta: tuple[Scalar, ...]
    node_count: int
    label: str   # "excited" for C > 0, "ground" for C < 0


def qes_state(model: CoulombModel, n: int) -> CoulombState:
    """The solvable state with its node count (positive real zeros of eta)."""
    coeffs = eta_coefficients(model, n)
    arr = [float(c) for c in coeffs]
    while arr and arr[-1] == 0.0:
        arr.pop()
    nodes = 0
    if len(arr) > 1:
        roots = np.roots(arr[::-1])
        nodes = sum(
            1
            for r in roots
            if abs(r.imag) < 1e-9 * (1 + abs(r.real)) and r.real > 0
        )
    label = "excited" if model.coulomb > 0 else "ground"
    return CoulombState(
        n=n,
        energy=qes_energy(model.a, model.gamma, n, model.b_strength),
        eta=tuple(coeffs),
        node_count=nodes,
        label=label,
    )


@dataclass(frozen=True)
class ObstructionReport:
    """Why this family cannot satisfy the orthogonality theorem's hypotheses."""

    coulomb_is_zero: bool
    degrees: tuple[int | None, ...]
    expected_degrees: tuple[int, ...]
    first_degree_violation: int | None
    energy_attaches_to_second_predecessor: bool
    orthogonal_form_possible: bool
    note: str


def orthogonality_obstruction(model: CoulombModel, n_max: int) -> ObstructionReport:
    """Check deg P_n = n and the (A_n E + B_n) P_{n-1} + C_n P_{n-2} shape.

    For C != 0 the first hypothesis already fails at n = 1 (P_1 is a nonzero
    constant, degree 0 != 1).  For C = 0 the odd orders vanish and the even
    subsequence satisfies a stepwise linear-in-E recursion, the oscillator
    limit with its own orthogonal structure.
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    polys = coulomb_polynomials(model, n_max)
    degrees = tuple(p.degree for p in polys)
    expected = tuple(range(n_max + 1))
    violation = None
    for idx, (got, want) in enumerate(zip(degrees, expected)):
        if got != want:
            violation = idx
            break
    if model.coulomb.is_zero:
        return ObstructionReport(
            coulomb_is_zero=True,
            degrees=degrees,
            expected_degrees=expected,
            first_degree_violation=violation,
            energy_attaches_to_second_predecessor=True,
            orthogonal_form_possible=True,
            note=(
                "Coulomb term off: odd orders vanish and the even-index "
                "subsequence R_k = P_{2k} follows a two-step recursion linear "
                "in E, the oscillator limit of a genuine three-term family"
            ),
        )
    return ObstructionReport(
        coulomb_is_zero=False,
        degrees=degrees,
        expected_degrees=expected,
        first_degree_violation=violation,
        energy_attaches_to_second_predecessor=True,
        orthogonal_form_possible=False,
        note=(
            f"degree P_{violation} = {degrees[violation]} != {violation}, and the "
            "E-dependent coefficient multiplies P_{n-2}, not P_{n-1}; both break "
            "the three-term orthogonality hypotheses"
        ),
    )
