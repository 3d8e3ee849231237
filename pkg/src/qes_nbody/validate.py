"""Independent numerical check that claimed (E, phi) pairs solve the radial ODE.

Everything here works on the reduced equation

    phi'' + (2*gamma + 1)/rho * phi' - 2*V(rho)*phi + E*phi = 0

and is float-only: exact arithmetic buys nothing once the operator is
discretized.  Two independent probes are provided.

``residual`` samples a constructed eigenfunction on nested uniform grids,
applies the second-order central stencil, and Richardson-extrapolates the
stencil residual pointwise.  For a true eigenpair the raw residual decays
like h^2 (that slope is reported) and the extrapolated value sits at the
h^4-and-roundoff floor; for a wrong energy E + d the extrapolated value is
|d| times the normalized eigenfunction, which is exactly what linearity in E
predicts.  The max is taken outside a small fixed origin buffer, where the
(2*gamma+1)/rho term would otherwise amplify the first-derivative stencil
error by 1/rho and mask the second-order decay.

``shoot`` finds eigenvalues with no reference to the polynomial machinery at
all: RK4 integration of the regular solution rho^a outward, counting radial
nodes, and bisecting on the node count inside a bracket certified to contain
exactly one eigenvalue.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import mpmath
import numpy as np
from mpmath import mp

from . import kernels
from .coulomb import CoulombModel, eta_coefficients
from .scalars import Scalar
from .sextic import SexticRecursion, generate_P

__all__ = [
    "SexticPotential",
    "CoulombOscPotential",
    "RadialProblem",
    "ResidualReport",
    "ResidualConvergenceError",
    "BracketError",
    "build_sextic_eigenfunction",
    "build_coulomb_eigenfunction",
    "residual",
    "shoot",
    "problem_for_recursion",
    "problem_for_coulomb",
]

TAIL_FLOOR = 1e-12


class ResidualConvergenceError(ArithmeticError):
    """Grid refinement did not stabilize the extrapolated residual."""


class BracketError(ValueError):
    """The energy bracket does not isolate exactly one eigenvalue."""


def _ld(x) -> np.longdouble:
    """Scalar/float -> extended-precision numpy scalar without double rounding."""
    if isinstance(x, Scalar):
        return np.longdouble(x.decimal_str(30))
    return np.longdouble(x)


# -- potentials ----------------------------------------------------------------


@dataclass(frozen=True)
class SexticPotential:
    """V = (B rho^2 + C rho^4 + H rho^6 + F/rho^2)/2."""

    quadratic: np.longdouble
    quartic: np.longdouble
    sextic: np.longdouble
    inv_square: np.longdouble

    def v(self, rho):
        r2 = rho * rho
        out = 0.5 * (self.quadratic * r2 + self.quartic * r2 * r2 + self.sextic * r2 * r2 * r2)
        if self.inv_square != 0:
            out = out + 0.5 * self.inv_square / r2
        return out

    def log_envelope(self, a: float, rho):
        """log of the decaying asymptotic profile rho^a exp(-alpha rho^2 - beta rho^4)."""
        beta = np.sqrt(self.sextic) / 4.0
        alpha = self.quartic / (4.0 * np.sqrt(self.sextic))
        out = -alpha * rho**2 - beta * rho**4
        if a:
            out = out + a * np.log(rho)
        return out


@dataclass(frozen=True)
class CoulombOscPotential:
    """V = (B^2 rho^2 - C/rho + F/rho^2)/2."""

    b_strength: np.longdouble
    coulomb: np.longdouble
    inv_square: np.longdouble

    def v(self, rho):
        out = 0.5 * (self.b_strength * self.b_strength) * rho * rho
        if self.coulomb != 0:
            out = out - 0.5 * self.coulomb / rho
        if self.inv_square != 0:
            out = out + 0.5 * self.inv_square / (rho * rho)
        return out

    def log_envelope(self, a: float, rho):
        out = -0.5 * self.b_strength * rho**2
        if a:
            out = out + a * np.log(rho)
        return out


@dataclass(frozen=True)
class RadialProblem:
    """Reduced radial equation: angular constant, potential, domain and grid."""

    gamma: float
    potential: object
    a_exponent: float = 0.0
    rho_max: float | None = None
    n_points: int = 10_000
    origin_buffer: float = 0.01


# -- eigenfunction builders ------------------------------------------------------


@dataclass(frozen=True)
class _BuiltEigenfunction:
    a: np.longdouble
    decay: Callable        # rho -> exponent array
    series_coeffs: tuple   # coefficients in rho^step
    step: int              # 2 for the sextic series, 1 for the Coulomb series
    energy: float

    def eta(self, rho):
        rho = np.asarray(rho)
        powers = rho**self.step if self.step > 1 else rho
        acc = np.zeros_like(powers) + self.series_coeffs[-1]
        for c in reversed(self.series_coeffs[:-1]):
            acc = acc * powers + c
        return acc

    def __call__(self, rho):
        rho = np.asarray(rho)
        out = self.eta(rho) * np.exp(self.decay(rho))
        if self.a:
            out = out * rho**self.a
        return out

    def node_count(self) -> int:
        """Positive real zeros of the truncated eta."""
        arr = [float(c) for c in self.series_coeffs]
        while arr and arr[-1] == 0.0:
            arr.pop()
        if len(arr) <= 1:
            return 0
        roots = np.roots(arr[::-1])
        real = [
            r.real for r in roots if abs(r.imag) < 1e-9 * (1 + abs(r.real)) and r.real > 0
        ]
        return len(real)


def build_sextic_eigenfunction(
    rec: SexticRecursion, a, gamma, energy
) -> _BuiltEigenfunction:
    """phi = rho^a exp(-alpha rho^2 - beta rho^4) * sum_{n<J} P_n(E) rho^(2n)/(4^n n! G(n+a+gamma+1)).

    The factorial in the denominator is continued through the Gamma function
    since a + gamma is generically non-integer.  energy must be a root of P_J.
    """
    mode = rec.mode
    a_s, gamma_s = mode.scalar(a), mode.scalar(gamma)
    if not (1 + a_s + gamma_s == rec.s):
        mismatch = abs(float(1 + a_s + gamma_s - rec.s))
        if mismatch > 1e-12:
            raise ValueError("a and gamma are inconsistent with the recursion's s")
    e_s = mode.scalar(energy)
    polys = generate_P(rec, rec.j)
    values = [p(e_s) for p in polys]
    scale = max(1.0, max(abs(float(v)) for v in values[:-1]))
    if abs(float(values[-1])) > 1e-10 * scale:
        raise ValueError(
            f"energy {energy} is not a root of the critical polynomial: "
            f"P_{rec.j}(E) = {values[-1]}"
        )
    with mp.workprec(192):
        t = _to_mpf(a_s) + _to_mpf(gamma_s)
        coeffs = []
        for n in range(rec.j):
            denom = mpmath.mpf(4) ** n * mpmath.factorial(n) * mpmath.gamma(n + t + 1)
            coeffs.append(np.longdouble(mpmath.nstr(_to_mpf(values[n]) / denom, 30)))
    alpha_ld, beta_ld = _ld(rec.alpha), _ld(rec.beta)

    def decay(rho):
        r2 = rho * rho
        return -alpha_ld * r2 - beta_ld * r2 * r2

    return _BuiltEigenfunction(
        a=_ld(a_s), decay=decay, series_coeffs=tuple(coeffs), step=2,
        energy=float(e_s),
    )


def build_coulomb_eigenfunction(model: CoulombModel, n: int) -> _BuiltEigenfunction:
    """phi = rho^a exp(-B rho^2/2) * sum_{m<=n} P_m(E) rho^m at the solvable level."""
    coeffs = [
        np.longdouble(c.decimal_str(30)) for c in eta_coefficients(model, n)
    ]
    b_ld = _ld(model.b_strength)

    def decay(rho):
        return -0.5 * b_ld * rho * rho

    from .coulomb import qes_energy

    energy = qes_energy(model.a, model.gamma, n, model.b_strength)
    return _BuiltEigenfunction(
        a=_ld(model.a), decay=decay, series_coeffs=tuple(coeffs), step=1,
        energy=float(energy),
    )


def _to_mpf(s: Scalar) -> mpmath.mpf:
    return s.to_mpf(bits=192)


# -- residual ---------------------------------------------------------------------


@dataclass(frozen=True)
class ResidualReport:
    """Extrapolated stencil residual of one (phi, E) pair."""

    value: float               # Richardson-extrapolated max residual / max |phi|
    value_secondary: float     # same from the next grid pair; agreement = converged
    raw: dict = field(compare=False)   # n_points -> raw stencil residual (normalized)
    slopes: tuple = ()
    slope: float = float("nan")
    converged: bool = False
    n_points: int = 0
    rho_max: float = 0.0


def _resolve_rho_max(problem: RadialProblem, abs_fn) -> float:
    if problem.rho_max is not None:
        grid = np.linspace(1e-3, problem.rho_max, 4001)
        vals = np.abs(abs_fn(grid))
        if vals[-1] < TAIL_FLOOR * vals.max():
            return float(problem.rho_max)
    r = problem.rho_max or 4.0
    for _ in range(60):
        grid = np.linspace(1e-3, r, 4001)
        vals = np.abs(abs_fn(grid))
        above = np.nonzero(vals >= TAIL_FLOOR * vals.max())[0]
        if above[-1] < len(grid) - 1:
            return float(grid[above[-1] + 1])
        r *= 1.5
    raise ResidualConvergenceError("no decaying tail found while extending the domain")


def _stencil(problem, phi_vals, rho, energy_ld, dtype):
    h = rho[1] - rho[0]
    mid = rho[1:-1]
    d2 = (phi_vals[2:] - 2.0 * phi_vals[1:-1] + phi_vals[:-2]) / (h * h)
    d1 = (phi_vals[2:] - phi_vals[:-2]) / (2.0 * h)
    v = problem.potential.v(mid)
    g = dtype(2.0 * problem.gamma + 1.0)
    return d2 + g / mid * d1 + (dtype(energy_ld) - 2.0 * v) * phi_vals[1:-1]


def residual(
    problem: RadialProblem,
    phi,
    energy,
    n_points: int | None = None,
    dtype=np.longdouble,
) -> ResidualReport:
    """Max |LHS| over the interior grid, normalized by max |phi|.

    Runs the stencil on the base grid and two dyadic refinements with a fixed
    first grid point, extrapolates the shared points pairwise, and reports the
    raw-decay slope.  Raises ResidualConvergenceError when the two
    extrapolated estimates disagree.
    """
    n = n_points or problem.n_points
    energy_ld = _ld(energy)
    rho_max = _resolve_rho_max(problem, phi)
    rho0 = rho_max / (10.0 * n)

    raw: dict[int, float] = {}
    lhs_levels = []
    mask_levels = []
    norm = None
    for factor in (1, 2, 4):
        m = factor * n
        rho = np.linspace(dtype(rho0), dtype(rho_max), m + 1)
        vals = phi(rho)
        lhs = _stencil(problem, vals, rho, energy_ld, dtype)
        interior = rho[1:-1] >= problem.origin_buffer * rho_max
        if norm is None:
            norm = float(np.max(np.abs(vals[1:-1][interior])))
        raw[m] = float(np.max(np.abs(lhs[interior]))) / norm
        lhs_levels.append(lhs)
        mask_levels.append(interior)

    def extrapolate(coarse, fine, n_coarse):
        # base interior j = 1..n_coarse-1 sits at index 2j on the fine grid
        idx = np.arange(1, n_coarse)
        combined = (4.0 * fine[2 * idx - 1] - coarse[idx - 1]) / 3.0
        return float(np.max(np.abs(combined[mask_levels[0 if n_coarse == n else 1]]))) / norm

    value = extrapolate(lhs_levels[0], lhs_levels[1], n)
    value_secondary = extrapolate(lhs_levels[1], lhs_levels[2], 2 * n)
    slopes = (
        math.log2(raw[n] / raw[2 * n]) if raw[2 * n] else float("inf"),
        math.log2(raw[2 * n] / raw[4 * n]) if raw[4 * n] else float("inf"),
    )
    # Converged when the two extrapolated estimates agree, or when both sit
    # in the noise floor far below the raw stencil residual they came from.
    worst = max(value, value_secondary)
    converged = (
        abs(value - value_secondary) <= 0.25 * worst or worst <= 1e-3 * raw[n]
    )
    report = ResidualReport(
        value=value,
        value_secondary=value_secondary,
        raw=raw,
        slopes=slopes,
        slope=0.5 * (slopes[0] + slopes[1]),
        converged=converged,
        n_points=n,
        rho_max=rho_max,
    )
    if not converged:
        raise ResidualConvergenceError(
            f"extrapolated residual did not stabilize: {value:.3e} vs "
            f"{value_secondary:.3e} (raw slopes {slopes[0]:.2f}, {slopes[1]:.2f})"
        )
    return report


# -- shooting ---------------------------------------------------------------------


def _integrate_graded(v_end, v_mid, points, two_g, e, u, w):
    """RK4 over a graded grid; resolves the 1/rho term where rho is O(h).

    Runs in pure Python for every backend so kernel choice cannot move an
    eigenvalue.  Returns (nodes, u, w) at the last grid point.
    """
    nodes = 0
    prev_sign = 1 if u > 0.0 else (-1 if u < 0.0 else 0)
    for i in range(len(points) - 1):
        r1 = points[i]
        r2 = points[i + 1]
        rm = 0.5 * (r1 + r2)
        d = r2 - r1
        half = 0.5 * d
        g1 = 2.0 * v_end[i] - e
        gm = 2.0 * v_mid[i] - e
        g2 = 2.0 * v_end[i + 1] - e
        k1u = w
        k1w = g1 * u - two_g / r1 * w
        au = u + half * k1u
        aw = w + half * k1w
        k2u = aw
        k2w = gm * au - two_g / rm * aw
        bu = u + half * k2u
        bw = w + half * k2w
        k3u = bw
        k3w = gm * bu - two_g / rm * bw
        cu = u + d * k3u
        cw = w + d * k3w
        k4u = cw
        k4w = g2 * cu - two_g / r2 * cw
        u = u + (d / 6.0) * (k1u + 2.0 * k2u + 2.0 * k3u + k4u)
        w = w + (d / 6.0) * (k1w + 2.0 * k2w + 2.0 * k3w + k4w)
        sign = 1 if u > 0.0 else (-1 if u < 0.0 else 0)
        if sign != 0:
            if prev_sign != 0 and sign != prev_sign:
                nodes += 1
            prev_sign = sign
    return nodes, u, w


def shoot(
    problem: RadialProblem,
    bracket: tuple[float, float],
    n_steps: int = 4000,
    rtol: float = 1e-9,
) -> float:
    """Eigenvalue inside a bracket containing exactly one level.

    The regular solution rho^a is integrated outward; an eigenvalue is where
    one more radial node enters the domain, so the bracket is certified by a
    node-count difference of one and then bisected on the node count.
    """
    e_lo, e_hi = float(bracket[0]), float(bracket[1])
    if not e_lo < e_hi:
        raise BracketError("bracket must satisfy E_lo < E_hi")
    a = float(problem.a_exponent)
    rho_max = _resolve_rho_max(
        problem, lambda rho: np.exp(problem.potential.log_envelope(a, rho))
    )
    rho0 = rho_max / (10.0 * n_steps)
    h = (rho_max - rho0) / n_steps
    # Graded start: geometric steps from rho0 out to ~50 uniform cells, so the
    # uniform kernel never sees step sizes comparable to rho itself.
    k0 = min(50, n_steps // 4)
    rho_join = rho0 + k0 * h
    pts = [rho0]
    while pts[-1] * 1.005 < rho_join:
        pts.append(pts[-1] * 1.005)
    pts.append(rho_join)
    points = np.asarray(pts, dtype=np.float64)
    v_end = np.asarray(problem.potential.v(points), dtype=np.float64).tolist()
    v_mid = np.asarray(
        problem.potential.v(0.5 * (points[:-1] + points[1:])), dtype=np.float64
    ).tolist()
    points = points.tolist()

    n_tail = n_steps - k0
    rho_half = rho_join + np.arange(2 * n_tail + 1) * (h / 2.0)
    v_half = np.asarray(problem.potential.v(rho_half.astype(np.float64)), dtype=np.float64)
    u0 = rho0**a
    w0 = a * rho0 ** (a - 1.0) if a else 0.0
    two_g = 2.0 * problem.gamma + 1.0

    def nodes(e: float) -> int:
        n1, u, w = _integrate_graded(v_end, v_mid, points, two_g, e, u0, w0)
        n2, _, _ = kernels.integrate(rho_join, h, n_tail, v_half, two_g, e, u, w)
        return n1 + n2

    n_lo, n_hi = nodes(e_lo), nodes(e_hi)
    if n_hi == n_lo:
        raise BracketError(
            f"no eigenvalue in ({e_lo}, {e_hi}): node count {n_lo} at both ends"
        )
    if n_hi - n_lo > 1:
        raise BracketError(
            f"{n_hi - n_lo} eigenvalues in ({e_lo}, {e_hi}); shrink the bracket"
        )
    lo, hi = e_lo, e_hi
    while hi - lo > rtol * max(1.0, abs(0.5 * (lo + hi))):
        mid = 0.5 * (lo + hi)
        if nodes(mid) == n_lo:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def shoot_refine(
    problem: RadialProblem,
    energy_guess: float,
    delta: float | None = None,
    n_steps: int = 4000,
    rtol: float = 1e-9,
) -> float:
    """Shoot around a claimed eigenvalue, shrinking the bracket until it
    isolates exactly one level."""
    energy_guess = float(energy_guess)
    width = delta if delta is not None else max(0.5, 0.05 * abs(energy_guess))
    for _ in range(24):
        try:
            return shoot(
                problem, (energy_guess - width, energy_guess + width), n_steps, rtol
            )
        except BracketError as err:
            if "no eigenvalue" in str(err):
                raise
            width /= 2.0
    raise BracketError(
        f"could not isolate a single eigenvalue near {energy_guess}"
    )


# -- problem builders ----------------------------------------------------------------


def problem_for_recursion(rec: SexticRecursion, a, gamma, **kwargs) -> RadialProblem:
    """RadialProblem with the sextic coefficients this recursion encodes."""
    mode = rec.mode
    a_s, gamma_s = mode.scalar(a), mode.scalar(gamma)
    t = a_s + gamma_s
    quadratic = 4 * rec.alpha**2 - 8 * rec.beta * (2 * rec.j + t)
    return RadialProblem(
        gamma=float(gamma_s),
        potential=SexticPotential(
            quadratic=_ld(quadratic),
            quartic=_ld(16 * rec.alpha * rec.beta),
            sextic=_ld(16 * rec.beta**2),
            inv_square=_ld(a_s**2 + 2 * a_s * gamma_s),
        ),
        a_exponent=float(a_s),
        **kwargs,
    )


def problem_for_coulomb(model: CoulombModel, **kwargs) -> RadialProblem:
    return RadialProblem(
        gamma=float(model.gamma),
        potential=CoulombOscPotential(
            b_strength=_ld(model.b_strength),
            coulomb=_ld(model.coulomb),
            inv_square=_ld(model.inv_square),
        ),
        a_exponent=float(model.a),
        **kwargs,
    )
