"""Two-mode numeric scalars: exact rationals or fixed-precision big floats.

Every number that flows through the recursion generators is a :class:`Scalar`
tagged with a :class:`ScalarMode`.  Exact mode wraps
:class:`fractions.Fraction` and is closed and error-free under field
operations; float mode wraps an ``mpmath.mpf`` and rounds every single
operation at the mode's mantissa width, so precision is uniform inside one
computation.  Mixing modes (or two different float widths) in one expression
raises :class:`ScalarModeError` rather than silently promoting.
"""

from __future__ import annotations

import math
from fractions import Fraction
import mpmath
from mpmath import mp

__all__ = [
    "Scalar",
    "ScalarMode",
    "ScalarModeError",
    "ExactnessError",
    "EXACT",
]


class ScalarModeError(TypeError):
    """Raised when an expression mixes scalars of different modes."""


class ExactnessError(ArithmeticError):
    """Raised when an operation cannot be represented exactly in exact mode."""


class ScalarMode:
    """Arithmetic mode tag: ``exact`` or ``float(bits)``."""

    __slots__ = ("kind", "bits")

    def __init__(self, kind: str, bits: int | None = None):
        if kind == "exact":
            if bits is not None:
                raise ValueError("exact mode carries no precision")
        elif kind == "float":
            if not isinstance(bits, int) or bits < 8:
                raise ValueError("float mode needs a mantissa size of >= 8 bits")
        else:
            raise ValueError(f"unknown scalar mode kind {kind!r}")
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "bits", bits)

    def __setattr__(self, *_):
        raise AttributeError("ScalarMode is immutable")

    def __getstate__(self):
        return (self.kind, self.bits)

    def __setstate__(self, state):
        object.__setattr__(self, "kind", state[0])
        object.__setattr__(self, "bits", state[1])

    def __copy__(self):
        return self

    def __deepcopy__(self, _memo):
        return self

    @classmethod
    def exact(cls) -> "ScalarMode":
        return EXACT

    @classmethod
    def floating(cls, bits: int = 128) -> "ScalarMode":
        return cls("float", bits)

    @property
    def is_exact(self) -> bool:
        return self.kind == "exact"

    def __eq__(self, other):
        return (
            isinstance(other, ScalarMode)
            and self.kind == other.kind
            and self.bits == other.bits
        )

    def __hash__(self):
        return hash((self.kind, self.bits))

    def __repr__(self):
        return "exact" if self.is_exact else f"float{self.bits}"

    # -- construction -------------------------------------------------

    def scalar(self, value) -> "Scalar":
        """Build a Scalar of this mode from ``value``.

        Accepts ints, Fractions, "p/q"-style strings and Scalars of the same
        mode.  Float mode additionally accepts Python floats and mpf values;
        exact mode rejects floats because their rational reading is ambiguous.
        """
        if isinstance(value, Scalar):
            if value.mode != self:
                raise ScalarModeError(
                    f"cannot reinterpret {value.mode!r} scalar as {self!r}"
                )
            return value
        if self.is_exact:
            if isinstance(value, float):
                raise ScalarModeError(
                    "exact mode does not accept floats; pass a Fraction or 'p/q' string"
                )
            return Scalar(self, Fraction(value))
        if isinstance(value, Fraction):
            with mp.workprec(self.bits):
                return Scalar(self, mpmath.fdiv(value.numerator, value.denominator))
        if isinstance(value, str):
            value = Fraction(value)
            with mp.workprec(self.bits):
                return Scalar(self, mpmath.fdiv(value.numerator, value.denominator))
        with mp.workprec(self.bits):
            return Scalar(self, mpmath.mpf(value))

    @property
    def zero(self) -> "Scalar":
        return self.scalar(0)

    @property
    def one(self) -> "Scalar":
        return self.scalar(1)


EXACT = ScalarMode("exact")


def _coerce(mode: ScalarMode, other) -> "Scalar":
    if isinstance(other, Scalar):
        if other.mode != mode:
            raise ScalarModeError(f"mode mismatch: {mode!r} vs {other.mode!r}")
        return other
    if isinstance(other, (int, Fraction)):
        return mode.scalar(other)
    return NotImplemented  # type: ignore[return-value]


class Scalar:
    """An immutable number in one arithmetic mode."""

    __slots__ = ("mode", "value")

    def __init__(self, mode: ScalarMode, value):
        object.__setattr__(self, "mode", mode)
        object.__setattr__(self, "value", value)

    def __setattr__(self, *_):
        raise AttributeError("Scalar is immutable")

    def __getstate__(self):
        return (self.mode, self.value)

    def __setstate__(self, state):
        object.__setattr__(self, "mode", state[0])
        object.__setattr__(self, "value", state[1])

    def __copy__(self):
        return self

    def __deepcopy__(self, _memo):
        return self

    # -- arithmetic ---------------------------------------------------

    def _binary(self, other, op):
        rhs = _coerce(self.mode, other)
        if rhs is NotImplemented:
            return NotImplemented
        if self.mode.is_exact:
            return Scalar(self.mode, op(self.value, rhs.value))
        with mp.workprec(self.mode.bits):
            return Scalar(self.mode, op(self.value, rhs.value))

    def __add__(self, other):
        return self._binary(other, lambda a, b: a + b)

    __radd__ = __add__

    def __sub__(self, other):
        return self._binary(other, lambda a, b: a - b)

    def __rsub__(self, other):
        return self._binary(other, lambda a, b: b - a)

    def __mul__(self, other):
        return self._binary(other, lambda a, b: a * b)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self._binary(other, lambda a, b: a / b)

    def __rtruediv__(self, other):
        return self._binary(other, lambda a, b: b / a)

    def __pow__(self, exponent):
        if not isinstance(exponent, int):
            raise TypeError("Scalar exponent must be an int")
        if self.mode.is_exact:
            return Scalar(self.mode, self.value**exponent)
        with mp.workprec(self.mode.bits):
            return Scalar(self.mode, self.value**exponent)

    def __neg__(self):
        if self.mode.is_exact:
            return Scalar(self.mode, -self.value)
        # mpf unary ops round at the ambient precision, so pin it
        with mp.workprec(self.mode.bits):
            return Scalar(self.mode, -self.value)

    def __abs__(self):
        if self.mode.is_exact:
            return Scalar(self.mode, abs(self.value))
        with mp.workprec(self.mode.bits):
            return Scalar(self.mode, abs(self.value))

    def sqrt(self) -> "Scalar":
        """Square root; exact mode requires a perfect rational square."""
        if self < 0:
            raise ExactnessError("square root of a negative scalar")
        if self.mode.is_exact:
            root = _fraction_sqrt(self.value)
            if root is None:
                raise ExactnessError(
                    f"{self.value} has no rational square root; use a float mode"
                )
            return Scalar(self.mode, root)
        with mp.workprec(self.mode.bits):
            return Scalar(self.mode, mpmath.sqrt(self.value))

    # -- comparisons ----------------------------------------------------

    def _cmp_value(self, other):
        rhs = _coerce(self.mode, other)
        if rhs is NotImplemented:
            return NotImplemented
        return rhs.value

    def __eq__(self, other):
        if isinstance(other, Scalar) and other.mode != self.mode:
            return False
        v = self._cmp_value(other)
        return NotImplemented if v is NotImplemented else self.value == v

    def __lt__(self, other):
        v = self._cmp_value(other)
        return NotImplemented if v is NotImplemented else self.value < v

    def __le__(self, other):
        v = self._cmp_value(other)
        return NotImplemented if v is NotImplemented else self.value <= v

    def __gt__(self, other):
        v = self._cmp_value(other)
        return NotImplemented if v is NotImplemented else self.value > v

    def __ge__(self, other):
        v = self._cmp_value(other)
        return NotImplemented if v is NotImplemented else self.value >= v

    def __hash__(self):
        return hash((self.mode, self.value))

    def __bool__(self):
        return self.value != 0

    @property
    def is_zero(self) -> bool:
        return self.value == 0

    def sign(self) -> int:
        if self.value > 0:
            return 1
        if self.value < 0:
            return -1
        return 0

    # -- conversions ----------------------------------------------------

    def as_fraction(self) -> Fraction:
        if not self.mode.is_exact:
            raise ScalarModeError("as_fraction is only defined in exact mode")
        return self.value

    def __float__(self) -> float:
        return float(self.value)

    def to_mpf(self, bits: int | None = None) -> mpmath.mpf:
        """Render as an mpf at the given precision (default: mode precision)."""
        bits = bits or (self.mode.bits if not self.mode.is_exact else 96)
        with mp.workprec(bits):
            if self.mode.is_exact:
                return mpmath.fdiv(self.value.numerator, self.value.denominator)
            return +self.value

    def decimal_str(self, digits: int = 20) -> str:
        with mp.workprec(max(64, int(digits * 3.5))):
            return mpmath.nstr(
                self.to_mpf(bits=max(64, int(digits * 3.5))), digits, strip_zeros=False
            )

    def __repr__(self):
        return f"Scalar({self.value}, {self.mode!r})"

    def __str__(self):
        if self.mode.is_exact:
            return str(self.value)
        return self.decimal_str()


def _fraction_sqrt(q: Fraction) -> Fraction | None:
    """Exact square root of a non-negative rational, or None."""
    num, den = q.numerator, q.denominator
    rn, rd = math.isqrt(num), math.isqrt(den)
    if rn * rn == num and rd * rd == den:
        return Fraction(rn, rd)
    return None
