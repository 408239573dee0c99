"""Radicals, smoothness, and top-norm prime selectors for coprime sum-zero triples."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .arith import (
    AlgebraicInt,
    IdealFactorization,
    QuadraticField,
    RATIONALS,
    factor_element,
    ideal_coprime,
)
from .errors import (
    AllUnits,
    BadParameter,
    NotCoprime,
    SumNotZero,
    UnsupportedField,
    ZeroCoordinate,
)


@dataclass(frozen=True)
class Selectors:
    """Norm selectors of a triple: largest prime norm dividing each coordinate
    (1 for units), third-largest dividing c, third-largest dividing b*c."""

    n_a: int
    n_b: int
    n_c: int
    n_c_third: int
    n_q: int


@dataclass(frozen=True)
class AbcTriple:
    """Coprime a + b + c = 0 over Q or an admissible imaginary quadratic field."""

    field: QuadraticField
    a: AlgebraicInt
    b: AlgebraicInt
    c: AlgebraicInt
    fac_a: IdealFactorization
    fac_b: IdealFactorization
    fac_c: IdealFactorization
    G: int
    selectors: Selectors

    def coordinates(self) -> tuple[AlgebraicInt, AlgebraicInt, AlgebraicInt]:
        return (self.a, self.b, self.c)

    def factorizations(self) -> tuple[IdealFactorization, ...]:
        return (self.fac_a, self.fac_b, self.fac_c)


def _third_largest_norm(*facs: IdealFactorization) -> int:
    """Norm of the third-largest distinct prime, counting primes once each and
    breaking norm ties by canonical coordinates; 1 when fewer than three."""
    entries = [e for fac in facs for e in fac]
    entries.sort(key=lambda e: (e.norm, e.prime.x, e.prime.y), reverse=True)
    return entries[2].norm if len(entries) >= 3 else 1


def selector_record(fa: IdealFactorization, fb: IdealFactorization,
                    fc: IdealFactorization) -> Selectors:
    return Selectors(
        n_a=fa.max_norm(),
        n_b=fb.max_norm(),
        n_c=fc.max_norm(),
        n_c_third=_third_largest_norm(fc),
        n_q=_third_largest_norm(fb, fc),
    )


def _coerce(value, field: QuadraticField) -> AlgebraicInt:
    if isinstance(value, AlgebraicInt):
        return value
    return AlgebraicInt(field, int(value), 0)


def make_triple(a, b, c, field: QuadraticField | None = None) -> AbcTriple:
    """Validate and populate a triple: nonzero, sum zero, pairwise ideal-coprime."""
    if field is None:
        field = next(
            (v.field for v in (a, b, c) if isinstance(v, AlgebraicInt)), RATIONALS
        )
    a, b, c = (_coerce(v, field) for v in (a, b, c))
    if a.is_zero() or b.is_zero() or c.is_zero():
        raise ZeroCoordinate("all three coordinates must be nonzero")
    if not (a + b + c).is_zero():
        raise SumNotZero(f"{a} + {b} + {c} != 0")
    if not (ideal_coprime(a, b) and ideal_coprime(a, c) and ideal_coprime(b, c)):
        raise NotCoprime("coordinates must be pairwise coprime as ideals")
    fa, fb, fc = factor_element(a), factor_element(b), factor_element(c)
    # coprimality means the three prime sets are disjoint, so the radical is
    # the plain product of every distinct prime norm
    big_g = fa.radical() * fb.radical() * fc.radical()
    return AbcTriple(field, a, b, c, fa, fb, fc, big_g, selector_record(fa, fb, fc))


def radical_G(triple: AbcTriple) -> int:
    """Product of the norms of the distinct primes dividing a*b*c (1 iff all units)."""
    return triple.G


def triple_height(triple: AbcTriple) -> int:
    """Exact projective height of a valid triple.

    Pairwise coprimality means no prime divides two coordinates, so every
    finite local factor is 1 and the height is the infinite part alone:
    max |x_i| over Q, max |norm(x_i)| over an imaginary quadratic field.
    """
    if triple.field.degree == 1:
        return max(abs(v.x) for v in triple.coordinates())
    return max(abs(v.norm()) for v in triple.coordinates())


def smoothness_S(triple: AbcTriple) -> int:
    """Largest rational prime dividing a*b*c; defined over Q only."""
    if triple.field.degree != 1:
        raise UnsupportedField("smoothness is defined over Q")
    top = max(fac.max_norm(default=0) for fac in triple.factorizations())
    if top == 0:
        raise AllUnits("smoothness is undefined when a, b, c are all units")
    return top


def top_primes(triple: AbcTriple) -> Selectors:
    """The stored selector record (N_a, N_b, N_c, N'_c, N_q)."""
    return triple.selectors


def height_ordered_factorizations(
    triple: AbcTriple,
) -> tuple[tuple[AlgebraicInt, IdealFactorization], ...]:
    """Coordinates with factorizations, sorted by |norm| ascending.

    Bound evaluators relabel (a, b, c) this way so the stored triple is never
    mutated; ties in |norm| are broken by coordinates for determinism.
    """
    pairs = list(zip(triple.coordinates(), triple.factorizations()))
    pairs.sort(key=lambda p: (abs(p[0].norm()), p[0].x, p[0].y))
    return tuple(pairs)


def ordered_selectors(triple: AbcTriple) -> Selectors:
    """Selectors after the |norm|-ascending relabeling of (a, b, c)."""
    (_, fa), (_, fb), (_, fc) = height_ordered_factorizations(triple)
    return selector_record(fa, fb, fc)


def enumerate_primitive_triples(H_limit: int) -> list[AbcTriple]:
    """Every primitive triple over Q with height at most H_limit.

    These are (X, Y, -Z) with X + Y = Z <= H_limit, 1 <= X <= Y and
    gcd(X, Z) = 1; the projective height of such a triple is Z.
    """
    if H_limit < 2:
        raise BadParameter("H_limit must be at least 2")
    out = []
    for z in range(2, H_limit + 1):
        for x in range(1, z // 2 + 1):
            if gcd(x, z) == 1:
                out.append(make_triple(x, z - x, -z))
    return out
