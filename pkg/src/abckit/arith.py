"""Exact arithmetic over Z, Q and the nine class-number-one imaginary quadratic rings.

Supported fields are Q and Q(sqrt(d)) for d in {-1, -2, -3, -7, -11, -19,
-43, -67, -163}.  Every ring of integers here is a PID with a finite unit
group, so prime ideals are represented by canonical prime elements and all
factorizations reassemble exactly.
"""

from __future__ import annotations

import random
import re
from bisect import bisect_right
from dataclasses import dataclass
from functools import lru_cache
from math import gcd, isqrt

from .errors import BadParameter, ParseError, UnsupportedField, ZeroInput


class AbckitInternal(AssertionError):
    """Broken internal invariant; indicates a bug, not bad input."""


CLASS_NUMBER_ONE_D = (-1, -2, -3, -7, -11, -19, -43, -67, -163)

_TRIAL_LIMIT = 10**6
_MR_BASES_64 = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


# ---------------------------------------------------------------------------
# Fields and elements


@dataclass(frozen=True)
class QuadraticField:
    """Q (d is None) or the imaginary quadratic field Q(sqrt(d)), class number one.

    The ring of integers is Z[omega] with omega = sqrt(d) when d = 2, 3 mod 4
    and omega = (1 + sqrt(d))/2 when d = 1 mod 4.
    """

    d: int | None = None

    def __post_init__(self):
        if self.d is not None and self.d not in CLASS_NUMBER_ONE_D:
            raise UnsupportedField(
                f"d={self.d}: only Q and the class-number-one imaginary "
                f"quadratic fields {CLASS_NUMBER_ONE_D} are supported"
            )

    @property
    def degree(self) -> int:
        return 1 if self.d is None else 2

    @property
    def is_rational(self) -> bool:
        return self.d is None

    @property
    def disc(self) -> int:
        """Field discriminant: d when d = 1 mod 4, else 4d (1 for Q)."""
        if self.d is None:
            return 1
        return self.d if self.d % 4 == 1 else 4 * self.d

    @property
    def omega_is_half_integral(self) -> bool:
        return self.d is not None and self.d % 4 == 1

    def omega_complex(self) -> complex:
        if self.d is None:
            raise UnsupportedField("Q has no ring generator")
        root = complex(0.0, abs(self.d) ** 0.5)
        return (1 + root) / 2 if self.omega_is_half_integral else root

    def units(self) -> tuple["AlgebraicInt", ...]:
        """Roots of unity in the ring: 2 of them except d=-1 (4) and d=-3 (6)."""
        one = AlgebraicInt(self, 1, 0)
        minus = AlgebraicInt(self, -1, 0)
        if self.d == -1:
            return (one, AlgebraicInt(self, 0, 1), minus, AlgebraicInt(self, 0, -1))
        if self.d == -3:
            return (
                one,
                AlgebraicInt(self, 0, 1),
                AlgebraicInt(self, -1, 1),
                minus,
                AlgebraicInt(self, 0, -1),
                AlgebraicInt(self, 1, -1),
            )
        return (one, minus)

    def element(self, x: int, y: int = 0) -> "AlgebraicInt":
        return AlgebraicInt(self, x, y)

    def label(self) -> str:
        if self.d is None:
            return "Q"
        if self.d == -1:
            return "Q(i)"
        return f"Q(sqrt({self.d}))"

    def __repr__(self) -> str:
        return f"QuadraticField({self.label()})"


RATIONALS = QuadraticField(None)


@dataclass(frozen=True)
class AlgebraicInt:
    """x + y*omega in the ring of integers of `field` (y = 0 over Q)."""

    field: QuadraticField
    x: int
    y: int = 0

    def __post_init__(self):
        if self.field.degree == 1 and self.y != 0:
            raise BadParameter("rational elements must have y = 0")

    # -- ring structure ------------------------------------------------

    def __add__(self, other: "AlgebraicInt") -> "AlgebraicInt":
        self._check_same_field(other)
        return AlgebraicInt(self.field, self.x + other.x, self.y + other.y)

    def __sub__(self, other: "AlgebraicInt") -> "AlgebraicInt":
        self._check_same_field(other)
        return AlgebraicInt(self.field, self.x - other.x, self.y - other.y)

    def __neg__(self) -> "AlgebraicInt":
        return AlgebraicInt(self.field, -self.x, -self.y)

    def __mul__(self, other) -> "AlgebraicInt":
        if isinstance(other, int):
            return AlgebraicInt(self.field, self.x * other, self.y * other)
        self._check_same_field(other)
        d = self.field.d
        if d is None:
            return AlgebraicInt(self.field, self.x * other.x, 0)
        cross = self.x * other.y + self.y * other.x
        if self.field.omega_is_half_integral:
            # omega^2 = omega + (d - 1)/4
            return AlgebraicInt(
                self.field,
                self.x * other.x + self.y * other.y * ((d - 1) // 4),
                cross + self.y * other.y,
            )
        return AlgebraicInt(self.field, self.x * other.x + d * self.y * other.y, cross)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "AlgebraicInt":
        if n < 0:
            raise BadParameter("negative powers leave the ring of integers")
        out = AlgebraicInt(self.field, 1, 0)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def conjugate(self) -> "AlgebraicInt":
        if self.field.degree == 1:
            return self
        if self.field.omega_is_half_integral:
            # conj(omega) = 1 - omega
            return AlgebraicInt(self.field, self.x + self.y, -self.y)
        return AlgebraicInt(self.field, self.x, -self.y)

    def norm(self) -> int:
        """Field norm; equals the element itself over Q."""
        d = self.field.d
        if d is None:
            return self.x
        if self.field.omega_is_half_integral:
            return self.x * self.x + self.x * self.y + self.y * self.y * ((1 - d) // 4)
        return self.x * self.x - d * self.y * self.y

    # -- predicates ----------------------------------------------------

    def is_zero(self) -> bool:
        return self.x == 0 and self.y == 0

    def is_unit(self) -> bool:
        return abs(self.norm()) == 1

    def divides(self, other: "AlgebraicInt") -> bool:
        return self._quotient_coords(other) is not None

    def exact_div(self, other: "AlgebraicInt") -> "AlgebraicInt":
        """self / other, raising BadParameter if the quotient leaves the ring."""
        coords = other._quotient_coords(self)
        if coords is None:
            raise BadParameter(f"{other} does not divide {self}")
        return AlgebraicInt(self.field, *coords)

    def _quotient_coords(self, other: "AlgebraicInt") -> tuple[int, int] | None:
        # other / self, as coordinates, or None when not divisible.
        self._check_same_field(other)
        if self.is_zero():
            raise ZeroInput("division by zero")
        n = self.norm()
        if self.field.degree == 1:
            q, r = divmod(other.x, self.x)
            return (q, 0) if r == 0 else None
        num = other * self.conjugate()
        if num.x % n or num.y % n:
            return None
        return (num.x // n, num.y // n)

    # -- embeddings and formatting --------------------------------------

    def embed(self) -> complex:
        if self.field.degree == 1:
            return complex(self.x, 0)
        return self.x + self.y * self.field.omega_complex()

    def _check_same_field(self, other: "AlgebraicInt") -> None:
        if self.field != other.field:
            raise BadParameter("elements of different fields")

    def __str__(self) -> str:
        if self.y == 0:
            return str(self.x)
        w = "w" if self.y == 1 else ("-w" if self.y == -1 else f"{self.y}*w")
        if self.x == 0:
            return w
        sign = "+" if self.y > 0 else "-"
        mag = "w" if abs(self.y) == 1 else f"{abs(self.y)}*w"
        return f"{self.x}{sign}{mag}"

    def __repr__(self) -> str:
        return f"AlgebraicInt({self.field.label()}, {self})"


# ---------------------------------------------------------------------------
# Factorizations


@dataclass(frozen=True)
class FactorEntry:
    prime: AlgebraicInt
    exponent: int
    norm: int


@dataclass(frozen=True)
class IdealFactorization:
    """unit * prod(prime^exponent), primes canonical and sorted by (norm, coords)."""

    field: QuadraticField
    unit: AlgebraicInt
    entries: tuple[FactorEntry, ...]

    def value(self) -> AlgebraicInt:
        out = self.unit
        for e in self.entries:
            out = out * e.prime**e.exponent
        return out

    def primes(self) -> tuple[AlgebraicInt, ...]:
        return tuple(e.prime for e in self.entries)

    def radical(self) -> int:
        """Product of the norms of the distinct primes (1 for units)."""
        out = 1
        for e in self.entries:
            out *= e.norm
        return out

    def max_norm(self, default: int = 1) -> int:
        return max((e.norm for e in self.entries), default=default)

    def max_exponent(self, default: int = 1) -> int:
        return max((e.exponent for e in self.entries), default=default)

    def ord_of(self, prime: AlgebraicInt) -> int:
        for e in self.entries:
            if e.prime == prime:
                return e.exponent
        return 0

    def __iter__(self):
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)


def _entry_key(e: FactorEntry) -> tuple[int, int, int]:
    return (e.norm, e.prime.x, e.prime.y)


# ---------------------------------------------------------------------------
# Rational primes: sieves, primality, Pollard-Brent rho


_sieve_primes: list[int] = []
_sieve_limit = 0


def primes_upto(n: int) -> list[int]:
    """All rational primes <= n, cached and extended on demand."""
    global _sieve_primes, _sieve_limit
    if n > _sieve_limit:
        limit = max(n, 2 * _sieve_limit, 1 << 10)
        sieve = bytearray([1]) * (limit + 1)
        sieve[0:2] = b"\x00\x00"
        for p in range(2, isqrt(limit) + 1):
            if sieve[p]:
                sieve[p * p :: p] = b"\x00" * len(range(p * p, limit + 1, p))
        _sieve_primes = [i for i, b in enumerate(sieve) if b]
        _sieve_limit = limit
    return _sieve_primes[: bisect_right(_sieve_primes, n)]


def first_primes(k: int) -> list[int]:
    """The first k rational primes (p_k < 2k log k for k >= 3 gives the sieve bound)."""
    if k < 1:
        raise BadParameter("k must be positive")
    from math import log

    bound = 13 if k <= 6 else int(2 * k * log(k)) + 10
    ps = primes_upto(bound)
    while len(ps) < k:
        bound *= 2
        ps = primes_upto(bound)
    return ps[:k]


def is_probable_prime(n: int) -> bool:
    """Miller-Rabin: deterministic below 2^64, 64 pseudorandom rounds above."""
    if n < 2:
        return False
    for p in _MR_BASES_64:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1

    def witness(a: int) -> bool:
        v = pow(a, d, n)
        if v in (1, n - 1):
            return False
        for _ in range(s - 1):
            v = v * v % n
            if v == n - 1:
                return False
        return True

    if n < 1 << 64:
        bases = _MR_BASES_64
    else:
        rng = random.Random(n)
        bases = tuple(rng.randrange(2, n - 1) for _ in range(64))
    return not any(witness(a) for a in bases)


def _brent_rho(n: int, rng: random.Random) -> int:
    """A nontrivial factor of odd composite n (Brent's cycle variant)."""
    while True:
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
        g, r, q = 1, 1, 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = gcd(q, n)
                k += m
            r <<= 1
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = gcd(abs(x - ys), n)
        if g != n:
            return g


@lru_cache(maxsize=1 << 16)
def _factor_nat(n: int) -> tuple[tuple[int, int], ...]:
    """Sorted (prime, exponent) pairs of n >= 1: trial division to 10^6, then rho."""
    out: dict[int, int] = {}
    if n <= 1:
        return ()
    for p in primes_upto(min(isqrt(n), 1000)):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    # no factor below min(sqrt, 1000) survives, so small cofactors are prime
    if n > 1 and n >= 10**6 and not is_probable_prime(n):
        for p in primes_upto(_TRIAL_LIMIT):
            if p * p > n:
                break
            while n % p == 0:
                out[p] = out.get(p, 0) + 1
                n //= p
        stack = [n] if n > 1 else []
        rng = random.Random(n)
        while stack:
            m = stack.pop()
            if is_probable_prime(m):
                out[m] = out.get(m, 0) + 1
                continue
            g = _brent_rho(m, rng)
            stack.extend((g, m // g))
    elif n > 1:
        out[n] = out.get(n, 0) + 1
    return tuple(sorted(out.items()))


@lru_cache(maxsize=1 << 16)
def _int_entries(n: int) -> tuple[FactorEntry, ...]:
    return tuple(
        FactorEntry(AlgebraicInt(RATIONALS, p, 0), e, p) for p, e in _factor_nat(n)
    )


def factor_int(n: int) -> IdealFactorization:
    """Factor a nonzero rational integer; the unit is its sign."""
    if n == 0:
        raise ZeroInput("cannot factor 0")
    unit = AlgebraicInt(RATIONALS, 1 if n > 0 else -1, 0)
    return IdealFactorization(RATIONALS, unit, _int_entries(abs(n)))


# ---------------------------------------------------------------------------
# Quadratic splitting: Tonelli-Shanks, Cornacchia, primes above p


def sqrt_mod(a: int, p: int) -> int | None:
    """A square root of a mod p (odd prime), or None when a is a non-residue."""
    a %= p
    if a == 0:
        return 0
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    # Tonelli-Shanks
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        t2, i = t * t % p, 1
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r


def _cornacchia_4p(D: int, p: int) -> tuple[int, int] | None:
    """(u, v) with u^2 + |D|*v^2 = 4p for a negative discriminant D, or None.

    Modified Cornacchia descent; always succeeds here because the supported
    fields have class number one, so every split or ramified p is a norm.
    """
    if p == 2:
        t = D + 8
        u = isqrt(t) if t >= 0 else -1
        return (u, 1) if u >= 0 and u * u == t else None
    x0 = sqrt_mod(D % p, p)
    if x0 is None:
        return None
    if (x0 - D) % 2:
        x0 = p - x0
    a, b = 2 * p, x0
    limit = isqrt(4 * p)
    while b > limit:
        a, b = b, a % b
    rem = 4 * p - b * b
    if rem % abs(D):
        return None
    v2 = rem // abs(D)
    v = isqrt(v2)
    return (b, v) if v * v == v2 else None


@lru_cache(maxsize=1 << 16)
def splitting_type(field: QuadraticField, p: int) -> str:
    """'ramified' iff p | disc; odd p splits iff disc is a nonzero QR mod p;
    p = 2 follows disc mod 8 (split at 1, inert at 5)."""
    if field.degree != 2:
        raise UnsupportedField("splitting is defined for quadratic fields")
    disc = field.disc
    if disc % p == 0:
        return "ramified"
    if p == 2:
        return "split" if disc % 8 == 1 else "inert"
    return "split" if pow(disc % p, (p - 1) // 2, p) == 1 else "inert"


def _element_of_norm(field: QuadraticField, p: int) -> AlgebraicInt:
    uv = _cornacchia_4p(field.disc, p)
    if uv is None:
        raise AbckitInternal(f"no element of norm {p} in {field.label()}")
    u, v = uv
    if field.omega_is_half_integral:
        # sqrt(d) = 2*omega - 1, so (u + v*sqrt(d))/2 = (u - v)/2 + v*omega
        return AlgebraicInt(field, (u - v) // 2, v)
    # disc = 4d: sqrt(disc) = 2*omega, so (u + v*sqrt(disc))/2 = u/2 + v*omega
    return AlgebraicInt(field, u // 2, v)


@lru_cache(maxsize=1 << 16)
def primes_above(field: QuadraticField, p: int) -> tuple[FactorEntry, ...]:
    """The canonical prime elements over the rational prime p, with norms.

    Split p yields two primes of norm p, ramified one of norm p, inert one
    of norm p^2 (the entry exponents are placeholders set to 1).
    """
    kind = splitting_type(field, p)
    if kind == "inert":
        return (FactorEntry(canonical_associate(AlgebraicInt(field, p, 0)), 1, p * p),)
    pi = canonical_associate(_element_of_norm(field, p))
    if kind == "ramified":
        return (FactorEntry(pi, 1, p),)
    pi_bar = canonical_associate(pi.conjugate())
    first, second = sorted((pi, pi_bar), key=lambda a: (a.x, a.y))
    return (FactorEntry(first, 1, p), FactorEntry(second, 1, p))


def factor_quad(alpha: AlgebraicInt) -> IdealFactorization:
    """Factor a nonzero quadratic integer into canonical primes times a unit.

    Route: factor |norm(alpha)| over Z, lift each rational prime through the
    splitting rule, and divide out; valid because every ideal is principal.
    """
    if alpha.field.degree != 2:
        raise UnsupportedField("factor_quad needs a quadratic field element")
    if alpha.is_zero():
        raise ZeroInput("cannot factor 0")
    remaining = alpha
    entries: list[FactorEntry] = []
    for p, _ in _factor_nat(abs(alpha.norm())):
        for cand in primes_above(alpha.field, p):
            e = 0
            while cand.prime.divides(remaining):
                remaining = remaining.exact_div(cand.prime)
                e += 1
            if e:
                entries.append(FactorEntry(cand.prime, e, cand.norm))
    if not remaining.is_unit():
        raise AbckitInternal(f"non-unit cofactor {remaining} for {alpha}")
    entries.sort(key=_entry_key)
    return IdealFactorization(alpha.field, remaining, tuple(entries))


def factor_element(alpha: AlgebraicInt) -> IdealFactorization:
    """Dispatch to factor_int or factor_quad by field degree."""
    if alpha.field.degree == 1:
        return factor_int(alpha.x)
    return factor_quad(alpha)


def canonical_associate(alpha: AlgebraicInt) -> AlgebraicInt:
    """The unique associate in the canonical region; idempotent.

    Over Q: positive.  In Z[i]: x > 0 and y >= 0.  For d = -3: the
    lexicographically (x, y)-smallest associate in the half-plane
    x > 0 or (x = 0, y > 0).  Elsewhere: that half-plane directly.
    """
    if alpha.is_zero():
        raise ZeroInput("0 has no canonical associate")
    f = alpha.field
    if f.degree == 1:
        return AlgebraicInt(f, abs(alpha.x), 0)
    associates = [u * alpha for u in f.units()]
    if f.d == -1:
        for cand in associates:
            if cand.x > 0 and cand.y >= 0:
                return cand
        raise AbckitInternal(f"no canonical associate for {alpha}")
    half_plane = [a for a in associates if a.x > 0 or (a.x == 0 and a.y > 0)]
    return min(half_plane, key=lambda a: (a.x, a.y))


def ideal_coprime(a: AlgebraicInt, b: AlgebraicInt) -> bool:
    """True iff a and b share no prime (ideal gcd is the unit ideal)."""
    if a.is_zero() or b.is_zero():
        raise ZeroInput("coprimality needs nonzero elements")
    a._check_same_field(b)
    if a.field.degree == 1:
        return gcd(a.x, b.x) == 1
    g = gcd(abs(a.norm()), abs(b.norm()))
    if g == 1:
        return True
    for p, _ in _factor_nat(g):
        for cand in primes_above(a.field, p):
            if cand.prime.divides(a) and cand.prime.divides(b):
                return False
    return True


def prime_ideals_in_norm_order(field: QuadraticField, count: int) -> list[FactorEntry]:
    """The first `count` prime ideals sorted by (norm, canonical coordinates)."""
    if count < 1:
        raise BadParameter("count must be positive")
    if field.degree == 1:
        return [
            FactorEntry(AlgebraicInt(field, p, 0), 1, p) for p in first_primes(count)
        ]
    bound = 16
    while True:
        found: list[FactorEntry] = []
        for p in primes_upto(bound):
            found.extend(primes_above(field, p))
        complete = [e for e in found if e.norm <= bound]
        if len(complete) >= count:
            complete.sort(key=_entry_key)
            return complete[:count]
        bound *= 2


# ---------------------------------------------------------------------------
# Literal parsing: fields as "Q" / "Q(i)" / "Q(sqrt(-7))", elements as "x+y*w"


_FIELD_SQRT_RE = re.compile(r"^Q\(sqrt\((-\d+)\)\)$")
_INT_RE = re.compile(r"^([+-]?\d+)$")
_W_ONLY_RE = re.compile(r"^([+-]?)(?:(\d+)\*)?w$")
_FULL_RE = re.compile(r"^([+-]?\d+)([+-])(?:(\d+)\*)?w$")


def parse_field(text: str) -> QuadraticField:
    s = text.strip()
    if s == "Q":
        return RATIONALS
    if s == "Q(i)":
        return QuadraticField(-1)
    m = _FIELD_SQRT_RE.match(s)
    if not m:
        raise ParseError(f"unrecognized field literal {text!r}")
    return QuadraticField(int(m.group(1)))


def parse_element(text: str, field: QuadraticField) -> AlgebraicInt:
    s = text.replace(" ", "")
    m = _INT_RE.match(s)
    if m:
        return AlgebraicInt(field, int(m.group(1)), 0)
    if field.degree == 1:
        raise ParseError(f"{text!r}: Q has no ring generator w")
    m = _W_ONLY_RE.match(s)
    if m:
        coeff = int(m.group(2)) if m.group(2) else 1
        return AlgebraicInt(field, 0, -coeff if m.group(1) == "-" else coeff)
    m = _FULL_RE.match(s)
    if m:
        coeff = int(m.group(3)) if m.group(3) else 1
        return AlgebraicInt(field, int(m.group(1)), -coeff if m.group(2) == "-" else coeff)
    raise ParseError(f"unrecognized element literal {text!r}")
