"""Energy-polynomial families of the sextic quasi-exactly-solvable sector.

The radial reduction of all three many-body models lands on one two-parameter
family of three-term recursions for polynomials P_n(E),

    P_n = [-E + 4*alpha*(2n - 1 + s - 1)] * P_{n-1}
          + 64*beta*(n-1)*(n - 1 + s - 1)*(n - J - 1) * P_{n-2},

with P_{-1} = 0, P_0 = 1 and s = 1 + a + gamma.  For positive integer J the
P_{n-2} coefficient vanishes at n = J + 1, the recursion collapses to two
terms, and every P_{J+m} factors as P_J * Q_m where the quotient family Q_n
obeys the index-shifted recursion implemented by :func:`generate_Q`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .polynomials import PolyE
from .scalars import Scalar, ScalarMode, ScalarModeError

__all__ = [
    "SexticRecursion",
    "generate_P",
    "generate_Q",
    "norm_P",
    "norm_Q",
    "verify_three_term_form",
    "ThreeTermReport",
    "monic_chain",
]


def _common_mode(*scalars: Scalar) -> ScalarMode:
    mode = scalars[0].mode
    for s in scalars[1:]:
        if s.mode != mode:
            raise ScalarModeError("recursion parameters must share one scalar mode")
    return mode


@dataclass(frozen=True)
class SexticRecursion:
    """Parameter bundle (alpha, beta, s, J) of the sextic-sector recursion.

    alpha is the quartic-over-sqrt-sextic combination C/(4*sqrt(H)), beta is
    sqrt(H)/4 (positive, so the exp(-beta*rho^4) falloff normalizes), s is
    1 + a + gamma, and J >= 1 is the number of solvable levels.
    """

    alpha: Scalar
    beta: Scalar
    s: Scalar
    j: int

    def __post_init__(self):
        _common_mode(self.alpha, self.beta, self.s)
        if not (self.beta > 0):
            raise ValueError("beta must be > 0")
        if not (self.s > 0):
            raise ValueError("s must be > 0")
        if not isinstance(self.j, int) or self.j < 1:
            raise ValueError("J must be a positive integer")

    @property
    def mode(self) -> ScalarMode:
        return self.alpha.mode

    @property
    def a_gamma(self) -> Scalar:
        """The combination a + gamma = s - 1 that enters every coefficient."""
        return self.s - 1

    def with_alpha(self, alpha: Scalar) -> "SexticRecursion":
        return SexticRecursion(self.mode.scalar(alpha), self.beta, self.s, self.j)

    # Coefficients of P_n = (A_n*E + B_n)*P_{n-1} + C_n*P_{n-2} written in the
    # homogeneous form P_n + (E + b_n)*P_{n-1} + c_n*P_{n-2} = 0.
    def linear_shift(self, n: int) -> Scalar:
        """-4*alpha*(2n - 1 + a + gamma), the constant next to E."""
        return -4 * self.alpha * (2 * n - 1 + self.a_gamma)

    def two_back_coefficient(self, n: int) -> Scalar:
        """-64*beta*(n-1)*(n-1+a+gamma)*(n-J-1); zero exactly at n = J + 1."""
        return -64 * self.beta * (n - 1) * (n - 1 + self.a_gamma) * (n - self.j - 1)


def generate_P(rec: SexticRecursion, n_max: int) -> list[PolyE]:
    """P_0 .. P_{n_max}; degree(P_n) = n with leading coefficient (-1)^n."""
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    mode = rec.mode
    polys = [PolyE.one(mode)]
    prev = PolyE.zero(mode)
    for n in range(1, n_max + 1):
        lin = PolyE.linear(mode, -rec.linear_shift(n), -1)
        term = lin * polys[-1] - rec.two_back_coefficient(n) * prev
        prev = polys[-1]
        polys.append(term)
    return polys


def generate_Q(rec: SexticRecursion, n_max: int) -> list[PolyE]:
    """Quotient family Q_0 .. Q_{n_max}: Q_n = P_{n+J} / P_J."""
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    mode = rec.mode
    j = rec.j
    polys = [PolyE.one(mode)]
    prev = PolyE.zero(mode)
    for n in range(1, n_max + 1):
        shift = -4 * rec.alpha * (2 * (n + j) - 1 + rec.a_gamma)
        back = -64 * rec.beta * (n + j - 1) * (n + j - 1 + rec.a_gamma) * (n - 1)
        lin = PolyE.linear(mode, -shift, -1)
        term = lin * polys[-1] - back * prev
        prev = polys[-1]
        polys.append(term)
    return polys


def norm_P(rec: SexticRecursion, n: int) -> Scalar:
    """Square norm of P_n: product over k = 1..n of 64*beta*k*(k+a+gamma)*(J-k).

    The (J-k) factor sits inside the product, which is the reading under which
    the norm vanishes for every n >= J and matches the discrete norm computed
    from the J-point spectrum.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    out = rec.mode.one
    for k in range(1, n + 1):
        out = out * (64 * rec.beta * k * (k + rec.a_gamma) * (rec.j - k))
    return out


def norm_Q(rec: SexticRecursion, n: int) -> Scalar:
    """Square norm of Q_n: product over k = 1..n of 64*beta*(k+J)*(k+J+a+gamma)*k."""
    if n < 0:
        raise ValueError("n must be >= 0")
    out = rec.mode.one
    for k in range(1, n + 1):
        out = out * (64 * rec.beta * (k + rec.j) * (k + rec.j + rec.a_gamma) * k)
    return out


@dataclass(frozen=True)
class ThreeTermReport:
    """Hypothesis check of the orthogonality theorem on the concrete recursion.

    Coefficients are reported in the homogeneous convention
    P_n + (A_n*E + B_n)*P_{n-1} + C_n*P_{n-2} = 0, where A_n = 1 identically.
    Orthogonality needs C_1 = 0 and C_n != 0 for n >= 2; the first failing
    index is the two-term collapse and equals J + 1 for the solvable family.
    """

    n_max: int
    a_nonzero: tuple[bool, ...]
    c_values: tuple[Scalar, ...]
    c1_is_zero: bool
    c_nonzero: tuple[bool, ...]
    first_collapse_index: int | None

    @property
    def hypotheses_hold_through(self) -> int:
        """Largest n such that the theorem's conditions hold for all indices <= n."""
        if self.first_collapse_index is None:
            return self.n_max
        return self.first_collapse_index - 1


def verify_three_term_form(rec: SexticRecursion, n_max: int) -> ThreeTermReport:
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    c_values = tuple(-rec.two_back_coefficient(n) for n in range(1, n_max + 1))
    c_nonzero = tuple(not c.is_zero for c in c_values)
    collapse = None
    for n in range(2, n_max + 1):
        if c_values[n - 1].is_zero:
            collapse = n
            break
    return ThreeTermReport(
        n_max=n_max,
        a_nonzero=(True,) * n_max,
        c_values=c_values,
        c1_is_zero=c_values[0].is_zero,
        c_nonzero=c_nonzero,
        first_collapse_index=collapse,
    )


def monic_chain(
    alpha: Scalar, beta: Scalar, s: Scalar, j: int, k_max: int
) -> tuple[Sequence[Scalar], Sequence[Scalar]]:
    """(b_k, a_k) of the monic form p_{k+1} = (E - b_k)p_k - a_k p_{k-1}.

    b_k = 4*alpha*(2k + 1 + a + gamma) for k = 0..k_max, and
    a_k = 64*beta*k*(k + a + gamma)*(J - k) for k = 1..k_max.  Accepts raw
    scalars (no sign guards) so the positivity conditions can be inspected
    for parameter regimes the constructors reject.
    """
    t = s - 1
    b = [4 * alpha * (2 * k + 1 + t) for k in range(k_max + 1)]
    a = [64 * beta * k * (k + t) * (j - k) for k in range(1, k_max + 1)]
    return b, a
