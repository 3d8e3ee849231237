"""Real-root extraction for Scalar polynomials.

Exact mode isolates roots with a Sturm chain over rationals, starting from a
symmetric Cauchy bound and always splitting intervals at their midpoint.  The
subdivision tree is therefore mirror-symmetric: running it on P(-E) produces
exactly negated enclosures, which is what makes the anti-isospectral checks
exact.  Exactly representable roots (rational hits at split points, linear
factors, the zero root) are returned as exact scalars; every other root comes
back as the midpoint of a certified enclosure refined below ``width``.

Float mode seeds with companion-matrix eigenvalues (numpy) and polishes each
root by Newton iteration at the mode's precision, then certifies that the
expected number of distinct real roots survived.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath
import numpy as np
from mpmath import mp

from .polynomials import PolyE
from .scalars import Scalar

__all__ = [
    "RootEnclosure",
    "DegenerateRootsError",
    "RootCountError",
    "real_roots",
    "DEFAULT_ENCLOSURE_WIDTH",
]

DEFAULT_ENCLOSURE_WIDTH = Fraction(1, 2**160)


class DegenerateRootsError(ArithmeticError):
    """The polynomial has a repeated root; the spectrum machinery assumes simple roots."""


class RootCountError(ArithmeticError):
    """The root finder could not certify the expected number of real roots."""


@dataclass(frozen=True)
class RootEnclosure:
    lo: Fraction
    hi: Fraction
    is_exact: bool

    @property
    def midpoint(self) -> Fraction:
        return self.lo if self.is_exact else (self.lo + self.hi) / 2

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo


# -- exact path: dense Fraction coefficient lists, low index = constant term --


def _poly_eval(cs: list[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(cs):
        acc = acc * x + c
    return acc


def _poly_rem(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    rem = list(a)
    db, lead = len(b) - 1, b[-1]
    for k in range(len(rem) - db - 1, -1, -1):
        f = rem[k + db] / lead
        if f == 0:
            continue
        for j in range(db + 1):
            rem[k + j] -= f * b[j]
    while rem and rem[-1] == 0:
        rem.pop()
    return rem[:db]


def _poly_gcd_degree(a: list[Fraction], b: list[Fraction]) -> int:
    while b:
        a, b = b, _poly_rem(a, b)
    return len(a) - 1


def _derivative(cs: list[Fraction]) -> list[Fraction]:
    return [i * c for i, c in enumerate(cs) if i]


def _sturm_chain(cs: list[Fraction]) -> list[list[Fraction]]:
    chain = [cs, _derivative(cs)]
    while len(chain[-1]) > 1:
        nxt = [-c for c in _poly_rem(chain[-2], chain[-1])]
        if not nxt:
            break
        chain.append(nxt)
    return chain


def _variations(chain: list[list[Fraction]], x: Fraction) -> int:
    signs = []
    for p in chain:
        v = _poly_eval(p, x)
        if v:
            signs.append(1 if v > 0 else -1)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _count_open(chain, cs, lo: Fraction, hi: Fraction) -> int:
    """Number of distinct roots in the open interval (lo, hi)."""
    n = _variations(chain, lo) - _variations(chain, hi)
    if _poly_eval(cs, hi) == 0:
        n -= 1
    return n


def _isolate(chain, cs, lo, hi, out: list[RootEnclosure]) -> None:
    n = _count_open(chain, cs, lo, hi)
    if n == 0:
        return
    if n == 1:
        out.append(RootEnclosure(lo, hi, False))
        return
    mid = (lo + hi) / 2
    if _poly_eval(cs, mid) == 0:
        _isolate(chain, cs, lo, mid, out)
        out.append(RootEnclosure(mid, mid, True))
        _isolate(chain, cs, mid, hi, out)
        return
    _isolate(chain, cs, lo, mid, out)
    _isolate(chain, cs, mid, hi, out)


def _refine(chain, cs, enc: RootEnclosure, width: Fraction) -> RootEnclosure:
    if enc.is_exact:
        return enc
    lo, hi = enc.lo, enc.hi
    flo, fhi = _poly_eval(cs, lo), _poly_eval(cs, hi)
    if flo != 0:
        slo = 1 if flo > 0 else -1
    elif fhi != 0:
        # lo itself is a root (an exact hit of a sibling interval); the sign
        # left of the enclosed root is opposite to the sign at hi
        slo = -1 if fhi > 0 else 1
    else:
        # both endpoints are roots; orient by Sturm counts instead of signs
        while hi - lo > width:
            mid = (lo + hi) / 2
            if _poly_eval(cs, mid) == 0:
                return RootEnclosure(mid, mid, True)
            if _count_open(chain, cs, lo, mid) == 1:
                hi = mid
            else:
                lo = mid
        return RootEnclosure(lo, hi, False)
    while hi - lo > width:
        mid = (lo + hi) / 2
        v = _poly_eval(cs, mid)
        if v == 0:
            return RootEnclosure(mid, mid, True)
        if (1 if v > 0 else -1) == slo:
            lo = mid
        else:
            hi = mid
    return RootEnclosure(lo, hi, False)


def real_roots_exact(
    coeffs: list[Fraction], width: Fraction = DEFAULT_ENCLOSURE_WIDTH
) -> list[RootEnclosure]:
    """All real roots of a squarefree rational polynomial, sorted ascending."""
    cs = list(coeffs)
    while cs and cs[-1] == 0:
        cs.pop()
    if not cs:
        raise ValueError("the zero polynomial has every number as a root")
    if len(cs) == 1:
        return []

    roots: list[RootEnclosure] = []
    # Zero roots: peel off the E^m factor; m > 1 is a repeated root.
    m = 0
    while cs[m] == 0:
        m += 1
    if m > 1:
        raise DegenerateRootsError("repeated root at E = 0")
    if m == 1:
        cs = cs[1:]
        roots.append(RootEnclosure(Fraction(0), Fraction(0), True))
        if len(cs) == 1:
            return roots

    if _poly_gcd_degree(cs, _derivative(cs)) > 0:
        raise DegenerateRootsError("polynomial has a repeated real or complex root")

    if len(cs) == 2:
        r = -cs[0] / cs[1]
        roots.append(RootEnclosure(r, r, True))
        return sorted(roots, key=lambda e: e.midpoint)

    lead = cs[-1]
    bound = 1 + max(abs(c / lead) for c in cs[:-1])
    chain = _sturm_chain(cs)
    found: list[RootEnclosure] = []
    _isolate(chain, cs, -bound, bound, found)
    roots.extend(_refine(chain, cs, enc, width) for enc in found)
    return sorted(roots, key=lambda e: e.midpoint)


# -- float path ------------------------------------------------------------


def real_roots_float(
    poly: PolyE, expected: int | None = None
) -> list[mpmath.mpf]:
    """Real roots via companion-matrix seeds polished by Newton at mode precision."""
    bits = poly.mode.bits or 53
    coeffs64 = [float(c) for c in poly.coeffs]
    # numpy wants descending order
    seeds = np.roots(coeffs64[::-1])
    deriv = poly.derivative()
    scale = max(1.0, max(abs(s) for s in seeds.real)) if len(seeds) else 1.0

    polished: list[mpmath.mpf] = []
    with mp.workprec(bits + 16):
        tol = mpmath.mpf(2) ** (-(bits + 4))
        for seed in seeds:
            if abs(seed.imag) > 1e-6 * (1.0 + abs(seed.real)):
                continue
            x = mpmath.mpf(float(seed.real))
            for _ in range(200):
                fx = poly(poly.mode.scalar(x)).value
                dfx = deriv(poly.mode.scalar(x)).value
                if dfx == 0:
                    break
                step = fx / dfx
                x = x - step
                if abs(step) <= tol * max(1, abs(x)):
                    break
            polished.append(x)
        polished.sort()
        sep = mpmath.mpf(scale) * mpmath.mpf(2) ** (-(bits // 2))
        distinct: list[mpmath.mpf] = []
        for x in polished:
            if not distinct or abs(x - distinct[-1]) > sep:
                distinct.append(x)

    if expected is not None and len(distinct) != expected:
        raise RootCountError(
            f"certified {len(distinct)} distinct real roots, expected {expected}; "
            "the parameter regime may violate the positivity conditions"
        )
    return distinct


def real_roots(
    poly: PolyE,
    width: Fraction = DEFAULT_ENCLOSURE_WIDTH,
    expected: int | None = None,
) -> tuple[list[Scalar], list[RootEnclosure] | None]:
    """Sorted real roots as Scalars of the polynomial's mode.

    Exact mode also returns the certified enclosures; float mode returns None
    in their place.
    """
    if poly.is_zero or poly.degree == 0:
        raise ValueError("root extraction needs a nonconstant polynomial")
    if poly.mode.is_exact:
        encs = real_roots_exact([c.value for c in poly.coeffs], width)
        if expected is not None and len(encs) != expected:
            raise RootCountError(
                f"isolated {len(encs)} real roots, expected {expected}"
            )
        return [poly.mode.scalar(e.midpoint) for e in encs], encs
    vals = real_roots_float(poly, expected)
    return [Scalar(poly.mode, v) for v in vals], None
