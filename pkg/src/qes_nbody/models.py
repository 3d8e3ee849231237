"""Physical N-body models and their reduction to the common radial problem.

Three families land on the same radial equation

    phi'' + (2*gamma + 1)/rho * phi' + [E - B*rho^2 - C*rho^4 - H*rho^6
                                          - F/rho^2] * phi = 0,

differing only in how the effective angular constant gamma and the
hyperradius rho are built from particle number, dimension and couplings:

* D-dimensional model with pairwise inverse-square and three-body angular
  terms: gamma = [D(N-1) - 2 + Lambda*N(N-1)]/2 with
  Lambda = [sqrt((D-2)^2 + 4g) - (D-2)]/2 and rho^2 the mean squared
  separation.
* 2D model with antisymmetric-correlation eigenfunctions:
  2*gamma + 1 = 2N - 1 + 2g*N(N-1), rho^2 the squared radius sum.
* 1D inverse-square model: 2*gamma + 1 = N - 1 + N(N-1)*lambda with
  lambda = sqrt(1 + 4g)/2, rho^2 the coordinate square sum.

The reduction fixes a through F = a^2 + 2*a*gamma (non-negative root, so
rho^a stays regular at the origin), alpha = C/(4*sqrt(H)), beta = sqrt(H)/4,
and reads the level count J off the quadratic coefficient through
B = 4*alpha^2 - 8*beta*(2J + a + gamma).  The sector is solvable exactly when
J is a positive integer.  Models that reduce to equal (a, gamma, alpha, beta,
J) are indistinguishable downstream.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .scalars import EXACT, ExactnessError, Scalar, ScalarMode
from .sextic import SexticRecursion

__all__ = [
    "ModelValidationError",
    "NotQuasiExactError",
    "CalogeroMarchioro",
    "NovelCorrelation",
    "CalogeroSutherland",
    "ReducedModel",
    "cm_reduce",
    "novel_reduce",
    "cs_reduce",
    "reduced_model",
    "a_from_inv_square",
    "levels_from_quadratic",
    "hyperradius_squared",
    "hyperradius",
    "DEFAULT_QES_TOLERANCE",
]

DEFAULT_QES_TOLERANCE = Fraction(1, 10**9)


class ModelValidationError(ValueError):
    """Inconsistent or out-of-domain physical parameters."""


class NotQuasiExactError(ValueError):
    """The level count J is not a positive integer for these parameters."""

    def __init__(self, j_value):
        self.j_value = j_value
        super().__init__(
            f"J = {j_value} is not a positive integer; the sector is not "
            "quasi-exactly solvable (B must equal "
            "4*alpha^2 - 8*beta*(2J + a + gamma) with integer J >= 1)"
        )


def _frac(value, name: str) -> Fraction:
    try:
        return Fraction(value)
    except (TypeError, ValueError) as exc:
        raise ModelValidationError(f"{name} must be a rational number: {value!r}") from exc


def _opt_frac(value, name: str) -> Fraction | None:
    return None if value is None else _frac(value, name)


# -- parameter bundles --------------------------------------------------------


@dataclass(frozen=True)
class _RadialCoefficients:
    """Shared radial-potential block: give either ``quadratic`` or ``levels``."""

    inv_square: Fraction = Fraction(0)   # F
    quartic: Fraction = Fraction(0)      # C
    sextic: Fraction = Fraction(1)       # H > 0
    quadratic: Fraction | None = None    # B
    levels: int | None = None            # J

    def _normalize_radial(self):
        object.__setattr__(self, "inv_square", _frac(self.inv_square, "F"))
        object.__setattr__(self, "quartic", _frac(self.quartic, "C"))
        object.__setattr__(self, "sextic", _frac(self.sextic, "H"))
        object.__setattr__(self, "quadratic", _opt_frac(self.quadratic, "B"))
        if self.sextic <= 0:
            raise ModelValidationError("sextic coefficient H must be > 0")
        if self.inv_square < 0:
            raise ModelValidationError("inverse-square coefficient F must be >= 0")
        if (self.quadratic is None) == (self.levels is None):
            raise ModelValidationError(
                "give exactly one of quadratic coefficient B or level count J"
            )
        if self.levels is not None and (
            not isinstance(self.levels, int) or self.levels < 1
        ):
            raise ModelValidationError("level count J must be a positive integer")


@dataclass(frozen=True)
class CalogeroMarchioro(_RadialCoefficients):
    """D >= 2 dimensional N-body model with two- and three-body angular terms."""

    n_particles: int = 2
    dimension: int = 2
    pair_coupling: Fraction = Fraction(0)   # g
    three_body: Fraction | None = None      # G; derived as Lambda^2 if omitted

    def __post_init__(self):
        object.__setattr__(self, "pair_coupling", _frac(self.pair_coupling, "g"))
        object.__setattr__(self, "three_body", _opt_frac(self.three_body, "G"))
        if self.n_particles < 2:
            raise ModelValidationError("need at least two particles")
        if self.dimension < 2:
            raise ModelValidationError("dimension must be >= 2")
        if self.pair_coupling < 0:
            raise ModelValidationError("pair coupling g must be >= 0")
        if self.three_body is not None and self.three_body < 0:
            raise ModelValidationError("three-body coupling G must be >= 0")
        self._normalize_radial()


@dataclass(frozen=True)
class NovelCorrelation(_RadialCoefficients):
    """2D N-body model whose states carry x_i*y_j - x_j*y_i correlations."""

    n_particles: int = 2
    correlation_exponent: Fraction = Fraction(1)   # g > 0

    def __post_init__(self):
        object.__setattr__(
            self, "correlation_exponent", _frac(self.correlation_exponent, "g")
        )
        if self.n_particles < 2:
            raise ModelValidationError("need at least two particles")
        if self.correlation_exponent <= 0:
            raise ModelValidationError("correlation exponent g must be > 0")
        self._normalize_radial()

    @property
    def pair_strength(self) -> Fraction:
        """g1 = g(g-1), always derived, never stored."""
        g = self.correlation_exponent
        return g * (g - 1)

    @property
    def cross_strength(self) -> Fraction:
        """g2 = g^2, always derived, never stored."""
        return self.correlation_exponent**2


@dataclass(frozen=True)
class CalogeroSutherland(_RadialCoefficients):
    """1D N-body model with pairwise inverse-square interactions."""

    n_particles: int = 2
    pair_coupling: Fraction = Fraction(0)   # g with 1 + 4g >= 0

    def __post_init__(self):
        object.__setattr__(self, "pair_coupling", _frac(self.pair_coupling, "g"))
        if self.n_particles < 2:
            raise ModelValidationError("need at least two particles")
        if 1 + 4 * self.pair_coupling < 0:
            raise ModelValidationError("need 1 + 4g >= 0")
        self._normalize_radial()


# -- reduced model -------------------------------------------------------------


@dataclass(frozen=True)
class ReducedModel:
    """The (a, gamma, alpha, beta, J) bundle that fully determines the spectra."""

    a: Scalar
    gamma: Scalar
    alpha: Scalar
    beta: Scalar
    j: Scalar
    is_qes: bool
    j_integer: int | None
    provenance: str
    source: object = field(default=None, compare=False)

    @property
    def mode(self) -> ScalarMode:
        return self.alpha.mode

    @property
    def s(self) -> Scalar:
        return 1 + self.a + self.gamma

    def recursion(self) -> SexticRecursion:
        if not self.is_qes or self.j_integer is None:
            raise NotQuasiExactError(self.j)
        return SexticRecursion(self.alpha, self.beta, self.s, self.j_integer)

    def potential_coefficients(self) -> dict[str, Scalar]:
        """The radial coefficients {B, C, H, F} this reduction encodes."""
        t = self.a + self.gamma
        return {
            "quadratic": 4 * self.alpha**2 - 8 * self.beta * (2 * self.j + t),
            "quartic": 16 * self.alpha * self.beta,
            "sextic": 16 * self.beta**2,
            "inv_square": self.a**2 + 2 * self.a * self.gamma,
        }


# -- reduction operations -------------------------------------------------------


def a_from_inv_square(inv_square: Scalar, gamma: Scalar) -> Scalar:
    """Non-negative root a of F = a^2 + 2*a*gamma."""
    if inv_square < 0:
        raise ModelValidationError(
            "inverse-square coefficient F must be >= 0 for a normalizable state"
        )
    if gamma < 0 or (gamma.is_zero and not inv_square.is_zero):
        raise ModelValidationError("need gamma > 0, or gamma >= 0 when F = 0")
    if inv_square.is_zero:
        return inv_square.mode.zero
    return -gamma + (gamma * gamma + inv_square).sqrt()


def levels_from_quadratic(
    quadratic: Scalar,
    alpha: Scalar,
    beta: Scalar,
    a: Scalar,
    gamma: Scalar,
    qes_tolerance: Fraction = DEFAULT_QES_TOLERANCE,
) -> tuple[Scalar, bool, int | None]:
    """Invert B = 4*alpha^2 - 8*beta*(2J + a + gamma) for J; flag integer J >= 1."""
    if beta.is_zero:
        raise ModelValidationError("beta must be nonzero to read off J")
    j = (4 * alpha**2 - quadratic - 8 * beta * (a + gamma)) / (16 * beta)
    if j.mode.is_exact:
        f = j.as_fraction()
        if f.denominator == 1 and f >= 1:
            return j, True, int(f)
        return j, False, None
    nearest = round(float(j))
    if nearest >= 1 and abs(float(j) - nearest) < float(qes_tolerance):
        return j, True, nearest
    return j, False, None


def _resolve_mode(mode, bits: int):
    if mode == "auto":
        return "auto"
    if isinstance(mode, ScalarMode):
        return mode
    if mode == "exact":
        return EXACT
    if mode == "float":
        return ScalarMode.floating(bits)
    raise ModelValidationError(f"unknown scalar mode {mode!r}")


def _reduce(
    gamma_maker: Callable[[ScalarMode], Scalar],
    params: _RadialCoefficients,
    provenance: str,
    mode,
    bits: int,
    qes_tolerance: Fraction,
) -> ReducedModel:
    def build(m: ScalarMode) -> ReducedModel:
        gamma = gamma_maker(m)
        a = a_from_inv_square(m.scalar(params.inv_square), gamma)
        sqrt_h = m.scalar(params.sextic).sqrt()
        alpha = m.scalar(params.quartic) / (4 * sqrt_h)
        beta = sqrt_h / 4
        if params.levels is not None:
            j, is_qes, j_int = m.scalar(params.levels), True, params.levels
        else:
            j, is_qes, j_int = levels_from_quadratic(
                m.scalar(params.quadratic), alpha, beta, a, gamma, qes_tolerance
            )
        return ReducedModel(
            a=a, gamma=gamma, alpha=alpha, beta=beta, j=j,
            is_qes=is_qes, j_integer=j_int, provenance=provenance, source=params,
        )

    resolved = _resolve_mode(mode, bits)
    if resolved == "auto":
        try:
            return build(EXACT)
        except ExactnessError:
            resolved = ScalarMode.floating(bits)
    return build(resolved)


def cm_reduce(
    params: CalogeroMarchioro,
    mode="auto",
    bits: int = 128,
    qes_tolerance: Fraction = DEFAULT_QES_TOLERANCE,
) -> ReducedModel:
    """Reduce the D-dimensional model; validates G against Lambda^2 from (D, g)."""

    def gamma_maker(m: ScalarMode) -> Scalar:
        n, d, g = params.n_particles, params.dimension, params.pair_coupling
        disc = Fraction(d - 2) ** 2 + 4 * g
        lam = (m.scalar(disc).sqrt() - (d - 2)) / 2
        if params.three_body is not None:
            mismatch = abs(lam * lam - m.scalar(params.three_body))
            if m.is_exact:
                bad = not mismatch.is_zero
            else:
                bad = float(mismatch) > 1e-9 * max(1.0, abs(float(params.three_body)))
            if bad:
                raise ModelValidationError(
                    f"three-body coupling G = {params.three_body} is inconsistent "
                    "with Lambda^2 from (D, g)"
                )
        return (d * (n - 1) - 2 + lam * n * (n - 1)) / 2

    return _reduce(gamma_maker, params, "calogero_marchioro", mode, bits, qes_tolerance)


def novel_reduce(
    params: NovelCorrelation,
    mode="auto",
    bits: int = 128,
    qes_tolerance: Fraction = DEFAULT_QES_TOLERANCE,
) -> ReducedModel:
    """Reduce the 2D correlated model: 2*gamma + 1 = 2N - 1 + 2g*N(N-1)."""
    n, g = params.n_particles, params.correlation_exponent
    gamma = Fraction(n - 1) + g * n * (n - 1)
    return _reduce(
        lambda m: m.scalar(gamma), params, "novel_correlation", mode, bits, qes_tolerance
    )


def cs_reduce(
    params: CalogeroSutherland,
    mode="auto",
    bits: int = 128,
    qes_tolerance: Fraction = DEFAULT_QES_TOLERANCE,
) -> ReducedModel:
    """Reduce the 1D model: 2*gamma + 1 = N - 1 + N(N-1)*lambda."""

    def gamma_maker(m: ScalarMode) -> Scalar:
        n, g = params.n_particles, params.pair_coupling
        lam = m.scalar(1 + 4 * g).sqrt() / 2
        return (n - 2 + lam * n * (n - 1)) / 2

    return _reduce(gamma_maker, params, "calogero_sutherland", mode, bits, qes_tolerance)


def reduced_model(
    a,
    gamma,
    alpha,
    beta,
    levels: int,
    mode: ScalarMode | str = "exact",
    bits: int = 128,
) -> ReducedModel:
    """Build a ReducedModel directly from its defining scalars."""
    resolved = _resolve_mode(mode if mode != "auto" else "exact", bits)
    a_s = resolved.scalar(a)
    if a_s < 0:
        raise ModelValidationError("radial exponent a must be >= 0")
    if not isinstance(levels, int) or levels < 1:
        raise NotQuasiExactError(levels)
    return ReducedModel(
        a=a_s,
        gamma=resolved.scalar(gamma),
        alpha=resolved.scalar(alpha),
        beta=resolved.scalar(beta),
        j=resolved.scalar(levels),
        is_qes=True,
        j_integer=levels,
        provenance="reduced",
        source=None,
    )


# -- hyperradius --------------------------------------------------------------


def _as_vectors(positions, dim: int | None, kind: str) -> list[tuple[Fraction, ...]]:
    vecs = []
    for p in positions:
        if isinstance(p, (int, float, Fraction, str)):
            p = (p,)
        vecs.append(tuple(_frac(c, "coordinate") for c in p))
    if not vecs:
        raise ModelValidationError("need at least one position")
    lengths = {len(v) for v in vecs}
    if len(lengths) != 1:
        raise ModelValidationError("positions have inconsistent dimensions")
    (d,) = lengths
    if dim is not None and d != dim:
        raise ModelValidationError(
            f"{kind} positions must be {dim}-dimensional, got {d}-dimensional"
        )
    return vecs


def hyperradius_squared(kind: str, positions: Sequence) -> Fraction:
    """rho^2 by the model's own definition.

    * calogero_marchioro: mean squared pair separation (any dimension >= 1).
    * novel_correlation: sum of squared radii (2D).
    * calogero_sutherland: sum of squared coordinates (1D).
    """
    if kind == "calogero_marchioro":
        vecs = _as_vectors(positions, None, kind)
        n = len(vecs)
        if n < 2:
            raise ModelValidationError("need at least two particles")
        total = Fraction(0)
        for i in range(n):
            for k in range(i + 1, n):
                total += sum((x - y) ** 2 for x, y in zip(vecs[i], vecs[k]))
        return total / n
    if kind == "novel_correlation":
        vecs = _as_vectors(positions, 2, kind)
        return sum(sum(c**2 for c in v) for v in vecs)
    if kind == "calogero_sutherland":
        vecs = _as_vectors(positions, 1, kind)
        return sum(v[0] ** 2 for v in vecs)
    raise ModelValidationError(f"unknown model kind {kind!r}")


def hyperradius(kind: str, positions: Sequence, mode: ScalarMode = EXACT) -> Scalar:
    return mode.scalar(hyperradius_squared(kind, positions)).sqrt()
