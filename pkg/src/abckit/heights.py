"""Weil and projective heights with places normalized to satisfy the product formula.

Normalization: a finite place attached to a prime element pi contributes
|x|_v = norm(pi)^(-ord_pi(x)); the infinite place contributes |sigma(x)|^dv
with dv = 1 for the real place of Q and dv = 2 for the complex place of an
imaginary quadratic field.  With this choice H_K = H_Q^[K:Q] on rational
points, and for integral coordinates both heights are exact rationals:
|sigma(x)|^2 is the integer norm(x).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from mpmath import mp

from .arith import AlgebraicInt, QuadraticField, RATIONALS, factor_element
from .errors import AllZero, BadParameter, ZeroInput

DEFAULT_PREC = 64


@dataclass(frozen=True)
class PlaceValue:
    """One normalized local absolute value of a nonzero field element.

    Finite: prime, norm and the (possibly negative) valuation exponent.
    Infinite: embedding modulus and the local degree; `sq_modulus` keeps the
    exact rational |sigma(x)|^2 so the product formula can be checked tightly.
    """

    kind: str  # "finite" | "infinite"
    prime: AlgebraicInt | None = None
    norm: int | None = None
    exponent: int | None = None
    modulus: float | None = None
    local_degree: int | None = None
    sq_modulus: Fraction | None = None

    def log_abs(self, prec: int = DEFAULT_PREC) -> float:
        """log |x|_v under the product-formula normalization."""
        with mp.workprec(prec):
            if self.kind == "finite":
                return float(-self.exponent * mp.log(self.norm))
            sq = self.sq_modulus
            return float(
                self.local_degree * (mp.log(sq.numerator) - mp.log(sq.denominator)) / 2
            )


def _as_element(value, field: QuadraticField | None) -> AlgebraicInt:
    if isinstance(value, AlgebraicInt):
        return value
    if isinstance(value, int):
        return AlgebraicInt(field or RATIONALS, value, 0)
    raise BadParameter(f"cannot interpret {value!r} as a field element")


def _merged_ords(num: AlgebraicInt, den: AlgebraicInt) -> dict[AlgebraicInt, tuple[int, int]]:
    """Canonical prime -> (ord of num/den, norm)."""
    ords: dict[AlgebraicInt, tuple[int, int]] = {}
    for entry in factor_element(num):
        ords[entry.prime] = (entry.exponent, entry.norm)
    for entry in factor_element(den):
        old = ords.get(entry.prime, (0, entry.norm))[0]
        ords[entry.prime] = (old - entry.exponent, entry.norm)
    return {p: v for p, v in ords.items() if v[0] != 0}


def places(num, den=None, field: QuadraticField | None = None) -> list[PlaceValue]:
    """All places where num/den has a local value != 1, plus the infinite place."""
    num = _as_element(num, field)
    den = _as_element(den if den is not None else 1, num.field)
    if num.is_zero() or den.is_zero():
        raise ZeroInput("places of 0 are not defined")
    out = [
        PlaceValue(kind="finite", prime=p, norm=norm, exponent=e)
        for p, (e, norm) in sorted(
            _merged_ords(num, den).items(), key=lambda kv: (kv[1][1], kv[0].x, kv[0].y)
        )
    ]
    if num.field.degree == 1:
        sq = Fraction(num.x * num.x, den.x * den.x)
        modulus = float(abs(Fraction(num.x, den.x)))
        out.append(
            PlaceValue(kind="infinite", modulus=modulus, local_degree=1, sq_modulus=sq)
        )
    else:
        # |sigma(x)|^2 is exactly the norm ratio for imaginary quadratic fields
        sq = Fraction(abs(num.norm()), abs(den.norm()))
        modulus = float(mp.sqrt(mp.mpf(sq.numerator) / sq.denominator))
        out.append(
            PlaceValue(kind="infinite", modulus=modulus, local_degree=2, sq_modulus=sq)
        )
    return out


def weil_height(num, den=None, field: QuadraticField | None = None,
                prec: int = DEFAULT_PREC) -> float:
    """Relative logarithmic Weil height of num/den over its ambient field.

    Sum of log+ of the normalized local values; equals degree times the
    absolute height, and vanishes exactly on the roots of unity.
    """
    num = _as_element(num, field)
    den = _as_element(den if den is not None else 1, num.field)
    if num.is_zero() or den.is_zero():
        raise ZeroInput("height of 0 is not defined here")
    with mp.workprec(prec):
        total = mp.mpf(0)
        for prime, (e, norm) in _merged_ords(num, den).items():
            if e < 0:
                total += -e * mp.log(norm)
        # infinite place: log+ |sigma|^dv, exact via integer norms
        n_num, n_den = abs(num.norm()), abs(den.norm())
        if num.field.degree == 1:
            inf = mp.log(abs(num.x)) - mp.log(abs(den.x))
        else:
            inf = mp.log(n_num) - mp.log(n_den)
        if inf > 0:
            total += inf
        return float(total)


def absolute_weil_height(num, den=None, field: QuadraticField | None = None,
                         prec: int = DEFAULT_PREC) -> float:
    """Absolute (degree-normalized) logarithmic height."""
    num = _as_element(num, field)
    return weil_height(num, den, field, prec) / num.field.degree


def projective_height(coords, field: QuadraticField | None = None) -> Fraction:
    """Exact projective height of a coordinate vector (>= 1, scale invariant).

    prod over places of max_i |x_i|_v.  Integral coordinates make every local
    factor rational, so the result is an exact Fraction; over Q with coprime
    integer coordinates it is max |x_i|.  Fraction inputs over Q are cleared
    to a common denominator first (the height does not change).
    """
    if field is None:
        for c in coords:
            if isinstance(c, AlgebraicInt):
                field = c.field
                break
        else:
            field = RATIONALS
    if any(isinstance(c, Fraction) for c in coords):
        if field.degree != 1:
            raise BadParameter("Fraction coordinates are only supported over Q")
        lcm = 1
        for c in coords:
            if isinstance(c, Fraction):
                lcm = lcm * c.denominator // gcd(lcm, c.denominator)
        coords = [int(c * lcm) if isinstance(c, Fraction) else c * lcm for c in coords]
    elements = [_as_element(c, field) for c in coords]
    if any(c.field != field for c in elements):
        raise BadParameter("coordinates must share one ambient field")
    nonzero = [c for c in elements if not c.is_zero()]
    if not nonzero:
        raise AllZero("projective height needs a nonzero coordinate")

    factorizations = [factor_element(c) for c in nonzero]
    universe: dict[AlgebraicInt, int] = {}
    for fac in factorizations:
        for entry in fac:
            universe[entry.prime] = entry.norm
    finite = Fraction(1)
    for prime, norm in universe.items():
        m = min(fac.ord_of(prime) for fac in factorizations)
        if m > 0:
            finite /= Fraction(norm) ** m
    if field.degree == 1:
        infinite = max(abs(c.x) for c in nonzero)
    else:
        infinite = max(abs(c.norm()) for c in nonzero)
    return finite * infinite


def log_projective_height(coords, field: QuadraticField | None = None,
                          prec: int = DEFAULT_PREC) -> float:
    h = projective_height(coords, field)
    with mp.workprec(prec):
        return float(mp.log(h.numerator) - mp.log(h.denominator))


def house(alpha: AlgebraicInt, prec: int = DEFAULT_PREC) -> float:
    """Maximum modulus over the complex embeddings.

    The two embeddings of an imaginary quadratic element are conjugate, so
    the house is sqrt(|norm|); over Q it is |x|.
    """
    if alpha.is_zero():
        raise ZeroInput("house of 0 is not defined")
    with mp.workprec(prec):
        if alpha.field.degree == 1:
            return float(abs(alpha.x))
        return float(mp.sqrt(abs(alpha.norm())))
