"""Zero decision for order-3 integer recurrences with distinct characteristic roots.

Pipeline: characteristic polynomial -> exact roots (rational, or one rational
plus a conjugate pair in an admissible imaginary quadratic field) -> degeneracy
gate -> exact closed-form coefficients -> denominator clearing and common-prime
stripping -> radical-based bound on the last possible zero -> direct integer
enumeration of the sequence up to that bound.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import ceil, floor, gcd, isqrt
from concurrent.futures import ProcessPoolExecutor

from .arith import (
    AlgebraicInt,
    QuadraticField,
    RATIONALS,
    _factor_nat,
    factor_element,
    ideal_coprime,
)
from .bounds import BoundConfig, DEFAULT_CONFIG, exponent_term
from .errors import (
    BadParameter,
    BadRadical,
    DegenerateHeight,
    RepeatedRoots,
    RootsNotCoprime,
    SingularSystem,
    UnsupportedField,
    ZeroInput,
)
from .heights import weil_height

from mpmath import mp

HARD_ENUMERATION_LIMIT = 10**9
DEFAULT_CAP = 10**6


@dataclass(frozen=True)
class RecurrenceSpec:
    """a(n) = c1 a(n-1) + c2 a(n-2) + c3 a(n-3) with integer data; c3 != 0."""

    c1: int
    c2: int
    c3: int
    a0: int
    a1: int
    a2: int

    def __post_init__(self):
        if self.c3 == 0:
            raise BadParameter("c3 = 0: the recurrence does not have order 3")


@dataclass(frozen=True)
class SmlVerdict:
    """Outcome of decide_zeros.

    status is one of ZerosFound / NoZerosUpToBound / Degenerate / Unsupported.
    N is the bound actually enumerated; `bound` keeps the raw real bound and
    `truncated` flags enumeration cut short of it (bound too large or capped).
    """

    status: str
    zeros: tuple[int, ...] = ()
    N: int = 0
    bound: float | None = None
    G: int | None = None
    h_max: float | None = None
    C: float | None = None
    n0: int = 0
    truncated: bool = False
    reason: str = ""

    def machine_line(self) -> str:
        zeros = ";".join(str(n) for n in self.zeros)
        return f"{self.status},{self.N},{self.G if self.G is not None else ''},{zeros}"


def char_poly(spec: RecurrenceSpec) -> tuple[int, int, int, int]:
    """Monic characteristic polynomial x^3 - c1 x^2 - c2 x - c3, as coefficients."""
    return (1, -spec.c1, -spec.c2, -spec.c3)


def _divisors(n: int) -> list[int]:
    out = [1]
    for p, e in _factor_nat(n):
        out = [d * p**k for d in out for k in range(e + 1)]
    return sorted(out)


def _squarefree_split(n: int) -> tuple[int, int]:
    """n = m^2 * f with f squarefree; returns (m, f)."""
    m, f = 1, 1
    for p, e in _factor_nat(n):
        m *= p ** (e // 2)
        if e % 2:
            f *= p
    return m, f


def find_roots(cubic: tuple[int, int, int, int]) -> tuple[tuple[AlgebraicInt, ...], QuadraticField]:
    """Exact roots of a monic integer cubic with nonzero constant term.

    Returns three rational roots over Q, or one rational root plus a conjugate
    pair inside an admissible imaginary quadratic field.  Raises RepeatedRoots
    on a vanishing discriminant and UnsupportedField for irreducible cubics,
    real quadratic splitting fields, and fields off the allow-list.
    """
    lead, b, c, d = cubic
    if lead != 1:
        raise BadParameter("cubic must be monic")
    if d == 0:
        raise BadParameter("constant term must be nonzero (roots must be nonzero)")

    def f(t: int) -> int:
        return ((t + b) * t + c) * t + d

    int_roots = sorted(t for u in _divisors(abs(d)) for t in (u, -u) if f(t) == 0)
    if not int_roots:
        raise UnsupportedField("irreducible cubic: the splitting field is not quadratic")
    r = int_roots[0]
    B, C = b + r, c + r * (b + r)  # quotient x^2 + Bx + C
    disc = B * B - 4 * C
    if disc == 0:
        raise RepeatedRoots(f"double root of {cubic}")
    field = RATIONALS
    if disc > 0:
        m = isqrt(disc)
        if m * m != disc:
            raise UnsupportedField("real quadratic splitting field is not supported")
        t1, t2 = (-B - m) // 2, (-B + m) // 2
        roots = (r, t1, t2)
        if len(set(roots)) < 3:
            raise RepeatedRoots(f"repeated rational root of {cubic}")
        return tuple(AlgebraicInt(field, t, 0) for t in sorted(roots)), field
    m, f0 = _squarefree_split(-disc)
    field = QuadraticField(-f0)  # raises UnsupportedField off the allow-list
    if field.omega_is_half_integral:
        # sqrt(d0) = 2w - 1; B and m share parity because B^2 = m^2 d0 (mod 4)
        assert (B + m) % 2 == 0, (cubic, B, m, f0)
        root = AlgebraicInt(field, (-B - m) // 2, m)
    else:
        # d0 = 2, 3 (mod 4) forces B and m even through the same congruence
        assert B % 2 == 0 and m % 2 == 0, (cubic, B, m, f0)
        root = AlgebraicInt(field, -B // 2, m // 2)
    return (AlgebraicInt(field, r, 0), root, root.conjugate()), field


def degeneracy_check(roots: tuple[AlgebraicInt, ...]) -> bool:
    """True iff some ratio of distinct roots is a root of unity.

    In the supported rings the roots of unity are exactly the units, so the
    test is r_i = u * r_j for a listed unit u.
    """
    units = roots[0].field.units()
    for i in range(len(roots)):
        for j in range(len(roots)):
            if i != j and any(roots[i] == u * roots[j] for u in units):
                return True
    return False


# ---------------------------------------------------------------------------
# Exact rational elements of the field (numerator / positive integer denominator)


@dataclass(frozen=True)
class FieldRatio:
    """num / den with num integral and den a positive rational integer."""

    num: AlgebraicInt
    den: int

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_integral(self) -> bool:
        return self.den == 1

    def __add__(self, other: "FieldRatio") -> "FieldRatio":
        lcm = self.den * other.den // gcd(self.den, other.den)
        num = self.num * (lcm // self.den) + other.num * (lcm // other.den)
        return _ratio(num, lcm)

    def __mul__(self, other) -> "FieldRatio":
        if isinstance(other, FieldRatio):
            return _ratio(self.num * other.num, self.den * other.den)
        return _ratio(self.num * other, self.den)

    def __str__(self) -> str:
        return str(self.num) if self.den == 1 else f"({self.num})/{self.den}"


def _ratio(num: AlgebraicInt, den: int) -> FieldRatio:
    if den == 0:
        raise ZeroInput("zero denominator")
    if den < 0:
        num, den = -num, -den
    g = gcd(gcd(abs(num.x), abs(num.y)), den)
    if g > 1:
        num = AlgebraicInt(num.field, num.x // g, num.y // g)
        den //= g
    return FieldRatio(num, den)


def _det3(m: list[list[AlgebraicInt]]) -> AlgebraicInt:
    return (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )


def solve_coefficients(roots: tuple[AlgebraicInt, ...], a0: int, a1: int,
                       a2: int) -> tuple[FieldRatio, FieldRatio, FieldRatio]:
    """Exact solution k of the Vandermonde system sum_i k_i r_i^n = a_n, n = 0, 1, 2."""
    field = roots[0].field
    one = AlgebraicInt(field, 1, 0)
    rows = [
        [one, one, one],
        list(roots),
        [r * r for r in roots],
    ]
    det = _det3(rows)
    if det.is_zero():
        raise SingularSystem("coincident roots make the Vandermonde matrix singular")
    targets = [AlgebraicInt(field, a, 0) for a in (a0, a1, a2)]
    out = []
    denom = det.norm() if field.degree == 2 else det.x
    conj = det.conjugate() if field.degree == 2 else one
    for col in range(3):
        replaced = [
            [targets[i] if j == col else rows[i][j] for j in range(3)]
            for i in range(3)
        ]
        num = _det3(replaced) * conj if field.degree == 2 else _det3(replaced)
        out.append(_ratio(num, denom))
    return tuple(out)


def closed_form_value(ks, roots, n: int) -> FieldRatio:
    """sum k_i r_i^n, exactly."""
    total = _ratio(AlgebraicInt(roots[0].field, 0, 0), 1)
    for k, r in zip(ks, roots):
        total = total + k * r**n
    return total


# ---------------------------------------------------------------------------
# Common-prime stripping


@dataclass(frozen=True)
class StripEvent:
    prime: AlgebraicInt
    norm: int
    stripped: int          # exponent removed from the terms
    absorbed_index: int | None  # coordinate whose root supplies the missing power
    deficit: int
    n0: int


@dataclass(frozen=True)
class StripCertificate:
    events: tuple[StripEvent, ...]
    n0: int  # from this index on, the stripped terms are pairwise coprime


def strip_common_primes(
    k: tuple[AlgebraicInt, ...], r: tuple[AlgebraicInt, ...]
) -> tuple[tuple[AlgebraicInt, ...], StripCertificate]:
    """Remove every prime dividing all three terms k_i r_i^n (n >= 1) from the k's.

    Roots must be pairwise coprime, so at most one root is divisible by a given
    prime q; the common power is c = min of ord_q(k_i) over the coordinates
    whose root is coprime to q.  A coordinate whose k cannot absorb the whole
    division has the shortfall covered by its root's power once n >= n0, which
    the certificate records (smaller n are checked directly by decide_zeros).
    """
    if any(v.is_zero() for v in k):
        raise BadParameter("closed-form coefficients must be nonzero")
    for i in range(3):
        for j in range(i + 1, 3):
            if not ideal_coprime(r[i], r[j]):
                raise RootsNotCoprime(f"roots {r[i]} and {r[j]} share a prime")
    fk = [factor_element(v) for v in k]
    fr = [factor_element(v) for v in r]
    seen: dict[AlgebraicInt, int] = {}
    for fac in fk:
        for entry in fac:
            seen.setdefault(entry.prime, entry.norm)
    events: list[StripEvent] = []
    strip_amount = [dict(), dict(), dict()]
    for q, norm in sorted(seen.items(), key=lambda kv: (kv[1], kv[0].x, kv[0].y)):
        e = [fk[i].ord_of(q) for i in range(3)]
        o = [fr[i].ord_of(q) for i in range(3)]
        if min(ei + oi for ei, oi in zip(e, o)) < 1:
            continue
        clear = [i for i in range(3) if o[i] == 0]
        c = min(e[i] for i in clear)
        if c < 1:
            continue
        absorbed = next((i for i in range(3) if o[i] > 0), None)
        deficit = 0
        n0 = 0
        for i in range(3):
            amount = c if i != absorbed else min(c, e[i])
            if amount:
                strip_amount[i][q] = amount
            if i == absorbed:
                deficit = c - amount
                n0 = ceil(deficit / o[i]) if deficit else 0
        events.append(StripEvent(q, norm, c, absorbed, deficit, n0))
    stripped = []
    for i, v in enumerate(k):
        for q, amount in strip_amount[i].items():
            for _ in range(amount):
                v = v.exact_div(q)
        stripped.append(v)
    n0 = max((ev.n0 for ev in events), default=0)
    return tuple(stripped), StripCertificate(tuple(events), n0)


# ---------------------------------------------------------------------------
# The zero bound and the decision procedure


def zero_bound(G: int, h_max: float, config: BoundConfig = DEFAULT_CONFIG) -> float:
    """G^(1/3 + exponent term) / h_max: past this index the sequence cannot vanish."""
    if G < 2:
        raise BadRadical(f"radical must be at least 2, got {G}")
    if h_max <= 0:
        raise DegenerateHeight("largest root height must be positive")
    term = exponent_term(G, config.C_main, config)
    with mp.workprec(config.precision_bits):
        return float(mp.mpf(G) ** (mp.mpf(1) / 3 + term) / h_max)


def _state_at(spec: RecurrenceSpec, n: int) -> tuple[int, int, int]:
    """(a_n, a_{n+1}, a_{n+2}) by exact companion-matrix power."""
    def mat_mul(A, B):
        return tuple(
            tuple(sum(A[i][k] * B[k][j] for k in range(3)) for j in range(3))
            for i in range(3)
        )

    M = ((0, 1, 0), (0, 0, 1), (spec.c3, spec.c2, spec.c1))
    P = ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    e = n
    while e:
        if e & 1:
            P = mat_mul(P, M)
        M = mat_mul(M, M)
        e >>= 1
    v = (spec.a0, spec.a1, spec.a2)
    return tuple(sum(P[i][k] * v[k] for k in range(3)) for i in range(3))


def _scan_chunk(args) -> list[int]:
    c1, c2, c3, state, n_start, count = args
    w0, w1, w2 = state
    zeros = []
    for offset in range(count):
        if w0 == 0:
            zeros.append(n_start + offset)
        w0, w1, w2 = w1, w2, c1 * w2 + c2 * w1 + c3 * w0
    return zeros


def _enumerate_zeros(spec: RecurrenceSpec, limit: int, workers: int) -> tuple[int, ...]:
    """All n in [0, limit] with a_n = 0, by exact integer evaluation."""
    total = limit + 1
    if workers <= 1 or total < 64:
        return tuple(_scan_chunk((spec.c1, spec.c2, spec.c3,
                                  (spec.a0, spec.a1, spec.a2), 0, total)))
    size = ceil(total / workers)
    tasks = []
    for start in range(0, total, size):
        count = min(size, total - start)
        tasks.append((spec.c1, spec.c2, spec.c3, _state_at(spec, start), start, count))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        chunks = list(pool.map(_scan_chunk, tasks))
    return tuple(sorted(n for chunk in chunks for n in chunk))


def decide_zeros(spec: RecurrenceSpec, config: BoundConfig = DEFAULT_CONFIG,
                 cap: int | None = None, workers: int = 1) -> SmlVerdict:
    """Decide whether the recurrence has zeros, with an explicit enumeration bound.

    Degenerate and unsupported inputs are reported in the verdict rather than
    raised; root triples that are not pairwise coprime as ideals are rejected
    with RootsNotCoprime.
    """
    try:
        roots, field = find_roots(char_poly(spec))
    except RepeatedRoots as exc:
        return SmlVerdict(status="Unsupported", C=config.C_main, reason=str(exc))
    except UnsupportedField as exc:
        return SmlVerdict(status="Unsupported", C=config.C_main, reason=str(exc))

    heights = sorted(weil_height(r, prec=config.precision_bits) for r in roots)
    if degeneracy_check(roots):
        return SmlVerdict(
            status="Degenerate", C=config.C_main,
            reason="a root ratio is a root of unity; zeros may recur periodically "
                   "(run a periodic-zero analysis)",
        )
    ks = solve_coefficients(roots, spec.a0, spec.a1, spec.a2)
    if all(k.is_zero() for k in ks):
        return SmlVerdict(status="Degenerate", C=config.C_main,
                          reason="identically zero sequence")
    if any(k.is_zero() for k in ks):
        return SmlVerdict(
            status="Unsupported", C=config.C_main,
            reason="a closed-form coefficient vanishes; the three-term bound "
                   "does not apply",
        )
    denominator_lcm = 1
    for k in ks:
        denominator_lcm = denominator_lcm * k.den // gcd(denominator_lcm, k.den)
    cleared = tuple(k.num * (denominator_lcm // k.den) for k in ks)

    stripped, certificate = strip_common_primes(cleared, roots)

    primes: dict[AlgebraicInt, int] = {}
    for value in (*stripped, *roots):
        for entry in factor_element(value):
            primes.setdefault(entry.prime, entry.norm)
    G = 1
    for norm in primes.values():
        G *= norm

    h_max = heights[-1]
    bound = zero_bound(G, h_max, config)
    n_int = floor(bound)
    truncated = False
    limit = n_int
    if n_int > HARD_ENUMERATION_LIMIT:
        limit = cap if cap is not None else DEFAULT_CAP
        truncated = True
    elif cap is not None and cap < n_int:
        limit = cap
        truncated = True
    limit = max(limit, certificate.n0, 2)

    zeros = _enumerate_zeros(spec, limit, workers)
    status = "ZerosFound" if zeros else "NoZerosUpToBound"
    return SmlVerdict(
        status=status, zeros=zeros, N=limit, bound=bound, G=G, h_max=h_max,
        C=config.C_main, n0=certificate.n0, truncated=truncated,
    )
