"""Search harness for smooth primitive solutions of X + Y = Z over the integers.

Enumerates P-smooth primitive triples up to a height limit, checks the
radical-versus-smoothness inequality G <= e^(3S) exhaustively, and applies
the slow-growth smoothness filter with pluggable phi functions.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from math import gcd

from .arith import first_primes, is_probable_prime, primes_upto
from .errors import BadParameter, BadPhi

NESTING_THRESHOLD = math.exp(math.e**math.e)  # four nested logs need H above this


@dataclass(frozen=True)
class SmoothTriple:
    """Primitive X + Y = Z with X <= Y, all three P-smooth for the run's P.

    Cached: S (largest prime of XYZ), G (product of the distinct primes of
    XYZ), H (projective height; coprime positive integers make it Z).
    """

    x: int
    y: int
    z: int
    s: int
    g: int
    h: int

    @property
    def log_h(self) -> float:
        return math.log(self.h)


def smooth_numbers(P: int, limit: int) -> list[int]:
    """Ascending, duplicate-free list of n <= limit with all prime factors <= P."""
    if limit < 1:
        raise BadParameter("limit must be at least 1")
    if not is_probable_prime(P):
        raise BadParameter(f"P must be prime, got {P}")
    values = [1]
    for p in primes_upto(P):
        grown = []
        for v in values:
            while v <= limit:
                grown.append(v)
                v *= p
        grown.sort()
        values = grown
    return values


def _distinct_prime_data(n: int, primes: list[int]) -> tuple[int, int]:
    """(largest prime, product of distinct primes) of a smooth n; (0, 1) for 1."""
    top, rad = 0, 1
    for p in primes:
        if n % p == 0:
            top, rad = p, rad * p
            while n % p == 0:
                n //= p
    if n != 1:
        raise BadParameter("value is not smooth for the given prime list")
    return top, rad


def _make_triple(x: int, z: int, primes: list[int]) -> SmoothTriple:
    y = z - x
    sx, gx = _distinct_prime_data(x, primes)
    sy, gy = _distinct_prime_data(y, primes)
    sz, gz = _distinct_prime_data(z, primes)
    # primitivity makes the three prime sets disjoint
    return SmoothTriple(x, y, z, max(sx, sy, sz), gx * gy * gz, z)


def _scan_chunk(args) -> list[tuple[int, int]]:
    smooth, z_lo, z_hi = args
    members = set(smooth)
    found = []
    for z in smooth[z_lo:z_hi]:
        half = bisect_right(smooth, z // 2)
        for x in smooth[:half]:
            if z - x in members and gcd(x, z) == 1:
                found.append((x, z))
    return found


def enumerate_triples(P: int, H_limit: int, workers: int = 1) -> list[SmoothTriple]:
    """Exactly the primitive P-smooth triples with Z <= H_limit, sorted by (Z, X).

    Hash-membership join: scan pairs (X, Z) with X <= Z/2 and test Z - X
    against the smooth set.  gcd(X, Z) = 1 suffices for primitivity since any
    prime dividing two of X, Y, Z divides the third.
    """
    if H_limit < 2:
        raise BadParameter("H_limit must be at least 2")
    smooth = smooth_numbers(P, H_limit)
    primes = primes_upto(P)
    if workers <= 1 or len(smooth) < 64:
        pairs = _scan_chunk((smooth, 0, len(smooth)))
    else:
        size = math.ceil(len(smooth) / workers)
        tasks = [
            (smooth, lo, min(lo + size, len(smooth)))
            for lo in range(0, len(smooth), size)
        ]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            pairs = [p for chunk in pool.map(_scan_chunk, tasks) for p in chunk]
    pairs.sort(key=lambda xz: (xz[1], xz[0]))
    return [_make_triple(x, z, primes) for x, z in pairs]


def verify_lemma9(triple: SmoothTriple) -> tuple[bool, float]:
    """Check log G <= 3S; returns (holds, slack = 3S - log G)."""
    slack = 3 * triple.s - math.log(triple.g)
    return slack >= 0, slack


# ---------------------------------------------------------------------------
# Smoothness filter with nested-log guard


def _phi1(x: float) -> float | None:
    return math.log(math.log(x)) / 2 if x > math.e else None


def _phi2(x: float) -> float | None:
    return math.sqrt(math.log(math.log(x))) if x > math.e else None


def _phi3(x: float) -> float | None:
    return math.log(math.log(math.log(x))) if x > math.e**math.e else None


PHI_BUILTINS = {1: _phi1, 2: _phi2, 3: _phi3}


def thm4_status(s: int, h: int, phi_id: int = 2) -> str:
    """'pass' / 'fail' for the smoothness-filter predicate

        S <= loglog H * (logloglog H) / (loglogloglog H * phi(loglog H)),

    or 'below-threshold' when H is too small for the four nested logs or for
    the chosen phi's domain.  Custom phi functions can be registered in
    PHI_BUILTINS; they must satisfy phi(x) < loglog x with phi -> infinity.
    """
    phi = PHI_BUILTINS.get(phi_id)
    if phi is None:
        raise BadPhi(f"unknown phi id {phi_id}; built-ins: {sorted(PHI_BUILTINS)}")
    if h <= NESTING_THRESHOLD:
        return "below-threshold"
    ll = math.log(math.log(h))
    lll = math.log(ll)
    llll = math.log(lll)
    if llll <= 0:
        return "below-threshold"
    phi_value = phi(ll)
    if phi_value is None or phi_value <= 0:
        return "below-threshold"
    rhs = ll * lll / (llll * phi_value)
    return "pass" if s <= rhs else "fail"


@dataclass(frozen=True)
class Thm4Result:
    passed: tuple[SmoothTriple, ...]
    failed: tuple[SmoothTriple, ...]
    below_threshold: int


def thm4_filter(triples, phi_id: int = 2) -> Thm4Result:
    """Split triples by the smoothness-filter predicate; guarded-out triples are
    counted separately, never silently dropped."""
    passed, failed, below = [], [], 0
    for t in triples:
        status = thm4_status(t.s, t.h, phi_id)
        if status == "pass":
            passed.append(t)
        elif status == "fail":
            failed.append(t)
        else:
            below += 1
    return Thm4Result(tuple(passed), tuple(failed), below)


# ---------------------------------------------------------------------------
# Prime-growth inequalities used by the radical-versus-smoothness lemma


def rosser_violations(n_max: int) -> tuple[list[int], list[int]]:
    """Indices violating n log n < p_n (n >= 1) and p_n <= 2n log n (n >= 3).

    Float comparisons get a 1e-9 relative slack on the float side only; the
    prime side is exact.
    """
    if n_max < 1:
        raise BadParameter("n_max must be at least 1")
    ps = first_primes(n_max)
    lower_bad, upper_bad = [], []
    for n, p in enumerate(ps, start=1):
        nlogn = n * math.log(n)
        if not nlogn * (1 - 1e-9) < p:
            lower_bad.append(n)
        if n >= 3 and not p <= 2 * nlogn * (1 + 1e-9):
            upper_bad.append(n)
    return lower_bad, upper_bad


def primorial_chain_violations(k_max: int) -> list[int]:
    """k where prod_{i<=k} p_i > 2^k k^k prod_{i=3..k} log i, by direct product
    comparison (exact integer primorial against the float right-hand side)."""
    if k_max < 1:
        raise BadParameter("k_max must be at least 1")
    ps = first_primes(k_max)
    bad = []
    primorial = 1
    log_product = 1.0
    for k, p in enumerate(ps, start=1):
        primorial *= p
        if k >= 3:
            log_product *= math.log(k)
        bound = 2.0**k * float(k) ** k * log_product
        if primorial > bound * (1 + 1e-9):
            bad.append(k)
    return bad
