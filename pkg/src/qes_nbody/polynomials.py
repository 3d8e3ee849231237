"""Dense univariate polynomials in the energy variable with Scalar coefficients.

Coefficient index n holds the coefficient of E^n.  Trailing zeros are
normalized away, so the zero polynomial has an empty coefficient tuple and
degree ``None``.  All arithmetic respects the coefficient mode; exact mode
gives error-free ring operations and exact Euclidean division.
"""

from __future__ import annotations

from typing import Iterable

from .scalars import Scalar, ScalarMode, ScalarModeError

__all__ = ["PolyE", "poly_divide"]


class PolyE:
    """Immutable dense polynomial over one scalar mode."""

    __slots__ = ("mode", "coeffs")

    def __init__(self, mode: ScalarMode, coeffs: Iterable):
        cs = [mode.scalar(c) for c in coeffs]
        while cs and cs[-1].is_zero:
            cs.pop()
        object.__setattr__(self, "mode", mode)
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, *_):
        raise AttributeError("PolyE is immutable")

    def __getstate__(self):
        return (self.mode, self.coeffs)

    def __setstate__(self, state):
        object.__setattr__(self, "mode", state[0])
        object.__setattr__(self, "coeffs", state[1])

    def __copy__(self):
        return self

    def __deepcopy__(self, _memo):
        return self

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, mode: ScalarMode) -> "PolyE":
        return cls(mode, ())

    @classmethod
    def one(cls, mode: ScalarMode) -> "PolyE":
        return cls(mode, (1,))

    @classmethod
    def linear(cls, mode: ScalarMode, constant, slope) -> "PolyE":
        """The polynomial ``slope*E + constant``."""
        return cls(mode, (constant, slope))

    # -- structure ------------------------------------------------------

    @property
    def degree(self) -> int | None:
        return len(self.coeffs) - 1 if self.coeffs else None

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading_coefficient(self) -> Scalar:
        if self.is_zero:
            raise ValueError("the zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def coefficient(self, n: int) -> Scalar:
        if 0 <= n < len(self.coeffs):
            return self.coeffs[n]
        return self.mode.zero

    def _check(self, other: "PolyE") -> None:
        if self.mode != other.mode:
            raise ScalarModeError(
                f"polynomial mode mismatch: {self.mode!r} vs {other.mode!r}"
            )

    # -- ring operations --------------------------------------------------

    def __add__(self, other: "PolyE") -> "PolyE":
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return PolyE(
            self.mode, (self.coefficient(i) + other.coefficient(i) for i in range(n))
        )

    def __sub__(self, other: "PolyE") -> "PolyE":
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return PolyE(
            self.mode, (self.coefficient(i) - other.coefficient(i) for i in range(n))
        )

    def __neg__(self) -> "PolyE":
        return PolyE(self.mode, (-c for c in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, PolyE):
            self._check(other)
            if self.is_zero or other.is_zero:
                return PolyE.zero(self.mode)
            out = [self.mode.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, a in enumerate(self.coeffs):
                for j, b in enumerate(other.coeffs):
                    out[i + j] = out[i + j] + a * b
            return PolyE(self.mode, out)
        scale = self.mode.scalar(other)
        return PolyE(self.mode, (c * scale for c in self.coeffs))

    __rmul__ = __mul__

    def shift_up(self, k: int = 1) -> "PolyE":
        """Multiply by E^k."""
        if self.is_zero:
            return self
        return PolyE(self.mode, (0,) * k + self.coeffs)

    def __divmod__(self, divisor: "PolyE"):
        self._check(divisor)
        if divisor.is_zero:
            raise ZeroDivisionError("polynomial division by the zero polynomial")
        rem = list(self.coeffs)
        d = len(divisor.coeffs) - 1
        lead = divisor.coeffs[-1]
        quot = [self.mode.zero] * max(0, len(rem) - d)
        for k in range(len(rem) - d - 1, -1, -1):
            factor = rem[k + d] / lead
            if factor.is_zero:
                continue
            quot[k] = factor
            for j, c in enumerate(divisor.coeffs):
                rem[k + j] = rem[k + j] - factor * c
        return PolyE(self.mode, quot), PolyE(self.mode, rem[:d])

    # -- evaluation and transforms --------------------------------------

    def __call__(self, e) -> Scalar:
        """Horner evaluation; exact in exact mode."""
        e = self.mode.scalar(e)
        acc = self.mode.zero
        for c in reversed(self.coeffs):
            acc = acc * e + c
        return acc

    def derivative(self) -> "PolyE":
        return PolyE(self.mode, (i * c for i, c in enumerate(self.coeffs) if i))

    def reflected(self) -> "PolyE":
        """The polynomial E -> P(-E)."""
        return PolyE(
            self.mode, (c if i % 2 == 0 else -c for i, c in enumerate(self.coeffs))
        )

    def parity(self) -> int | None:
        """+1 for even, -1 for odd, None for indefinite parity (0 for zero)."""
        if self.is_zero:
            return 0
        even = all(c.is_zero for i, c in enumerate(self.coeffs) if i % 2 == 1)
        odd = all(c.is_zero for i, c in enumerate(self.coeffs) if i % 2 == 0)
        if even:
            return 1
        if odd:
            return -1
        return None

    # -- comparison and display ------------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, PolyE)
            and self.mode == other.mode
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.mode, self.coeffs))

    def __repr__(self):
        return f"PolyE({self!s})"

    def __str__(self):
        if self.is_zero:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c.is_zero:
                continue
            mag = abs(c)
            if i == 0:
                term = f"{mag}"
            else:
                e = "E" if i == 1 else f"E^{i}"
                term = e if mag == 1 else f"{mag}*{e}"
            if not parts:
                parts.append(term if c.sign() > 0 else f"-{term}")
            else:
                parts.append(f"+ {term}" if c.sign() > 0 else f"- {term}")
        return " ".join(parts)


def poly_divide(numerator: PolyE, divisor: PolyE) -> tuple[PolyE, PolyE]:
    """Euclidean division: numerator = divisor*quotient + remainder.

    The remainder has degree strictly below the divisor's; in exact mode the
    identity holds exactly, which is what the factorization checks rely on.
    """
    return divmod(numerator, divisor)

