"""Right-hand-side evaluators for the abc-type bounds and their corollaries.

The effective constants in the underlying inequalities are not numeric, so
every evaluator takes the leading constant from a BoundConfig and reports the
inequality's two sides and margin instead of asserting truth.  The radical
exponent uses only the dominant logloglog/loglog term by default; the dropped
lower-order terms are available via ``full_exponent``.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

from mpmath import mp

from .arith import QuadraticField, prime_ideals_in_norm_order
from .errors import (
    BadAlpha,
    BadParameter,
    BadRadical,
    EmptyDataset,
    HypothesisFails,
    NotApplicable,
)
from .radical import (
    AbcTriple,
    Selectors,
    height_ordered_factorizations,
    selector_record,
    triple_height,
)

E_SQUARED_GUARD = math.e**math.e  # below this the triple-log exponent turns negative


@dataclass(frozen=True)
class BoundConfig:
    """User-supplied effective constants and numeric-guard settings.

    C_main stands in for the leading constant of whichever bound is being
    evaluated; the gyory/lefourn entries parameterize the auxiliary S-unit
    evaluators whose constants live in the cited references.
    """

    C_main: float = 1.0
    G_min: float = E_SQUARED_GUARD
    gyory_C13: float = 1.0
    gyory_C14: float = 1.0
    lefourn_C118: float = 1.0
    lefourn_C119: float = 1.0
    precision_bits: int = 64
    full_exponent: bool = False

    def __post_init__(self):
        # C_main = 0 is allowed: it drops the radical exponent entirely, and
        # the calibrator legitimately returns 0 for datasets that need no help
        if self.C_main < 0:
            raise BadParameter("C_main must be nonnegative")
        for name in ("G_min", "gyory_C13", "gyory_C14",
                     "lefourn_C118", "lefourn_C119"):
            if getattr(self, name) <= 0:
                raise BadParameter(f"{name} must be positive")
        if self.G_min <= math.e:
            raise BadParameter("G_min must exceed e")
        if self.precision_bits < 64:
            raise BadParameter("precision_bits must be at least 64")

    def with_C(self, C: float) -> "BoundConfig":
        return replace(self, C_main=C)


DEFAULT_CONFIG = BoundConfig()


@dataclass(frozen=True)
class BoundReport:
    """Evaluated inequality: holds iff margin = rhs - lhs >= 0."""

    theorem: str
    lhs: float
    rhs: float
    holds: bool
    margin: float
    exponent_used: float
    regime: str  # "normal" | "small-radical"
    weak_rhs: float | None = None
    detail: str = ""


def is_small_radical(G: int, config: BoundConfig = DEFAULT_CONFIG) -> bool:
    return G <= config.G_min


def exponent_term(G: int, C: float, config: BoundConfig = DEFAULT_CONFIG) -> float:
    """C * (logloglog G / loglog G) for G above the small-radical guard, else 0.

    With ``full_exponent`` the dropped lower-order terms 1/loglog G and
    loglog G / log G are added back in.
    """
    if G < 2:
        raise BadRadical(f"radical must be at least 2, got {G}")
    if is_small_radical(G, config):
        return 0.0
    with mp.workprec(config.precision_bits):
        lg = mp.log(G)
        llg = mp.log(lg)
        term = mp.log(llg) / llg
        if config.full_exponent:
            term += 1 / llg + llg / lg
        return float(C * term)


def _regime(G: int, config: BoundConfig) -> str:
    return "small-radical" if is_small_radical(G, config) else "normal"


def _report(theorem: str, lhs: float, rhs: float, exponent: float, regime: str,
            weak_rhs: float | None = None, detail: str = "") -> BoundReport:
    margin = rhs - lhs
    return BoundReport(theorem, lhs, rhs, margin >= 0, margin, exponent, regime,
                       weak_rhs, detail)


def _lhs_and_selectors(triple: AbcTriple, config: BoundConfig) -> tuple[float, Selectors]:
    with mp.workprec(config.precision_bits):
        lhs = float(mp.log(triple_height(triple)))
    (_, fa), (_, fb), (_, fc) = height_ordered_factorizations(triple)
    return lhs, selector_record(fa, fb, fc)


def thm1_rhs(triple: AbcTriple, config: BoundConfig = DEFAULT_CONFIG) -> BoundReport:
    """(N_a N_b N_c^2 max(N_b, N_c))^(1/3) * G^exponent, selectors taken after
    relabeling the coordinates in height order."""
    lhs, sel = _lhs_and_selectors(triple, config)
    term = exponent_term(triple.G, config.C_main, config)
    with mp.workprec(config.precision_bits):
        base = mp.cbrt(sel.n_a * sel.n_b * sel.n_c**2 * max(sel.n_b, sel.n_c))
        rhs = float(base * mp.mpf(triple.G) ** term)
    return _report("thm1", lhs, rhs, term, _regime(triple.G, config))


def thm2_rhs(triple: AbcTriple, config: BoundConfig = DEFAULT_CONFIG) -> BoundReport:
    """N_b^(1/2) * N_c * G^exponent."""
    lhs, sel = _lhs_and_selectors(triple, config)
    term = exponent_term(triple.G, config.C_main, config)
    with mp.workprec(config.precision_bits):
        rhs = float(mp.sqrt(sel.n_b) * sel.n_c * mp.mpf(triple.G) ** term)
    return _report("thm2", lhs, rhs, term, _regime(triple.G, config))


def thm3_rhs(triple: AbcTriple, config: BoundConfig = DEFAULT_CONFIG) -> BoundReport:
    """(N_a N_b N_c N'_c N_q)^(1/3) * G^exponent, plus the weakened all-radical
    form G^(1/3 + exponent) in ``weak_rhs``."""
    lhs, sel = _lhs_and_selectors(triple, config)
    term = exponent_term(triple.G, config.C_main, config)
    with mp.workprec(config.precision_bits):
        g = mp.mpf(triple.G)
        base = mp.cbrt(sel.n_a * sel.n_b * sel.n_c * sel.n_c_third * sel.n_q)
        rhs = float(base * g**term)
        weak = float(g ** (mp.mpf(1) / 3 + term))
    return _report("thm3", lhs, rhs, term, _regime(triple.G, config), weak_rhs=weak)


# ---------------------------------------------------------------------------
# Corollary table


_CLASS_GROUP_IDS = (1, 2, 8)
_VALID_IDS = (1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13)


def _require_alpha(alpha, lo: float, hi: float, *, lo_open=True, hi_open=True) -> float:
    if alpha is None:
        raise BadAlpha("this corollary needs an alpha parameter")
    a = float(alpha)
    ok_lo = a > lo if lo_open else a >= lo
    ok_hi = a < hi if hi_open else a <= hi
    if not (ok_lo and ok_hi):
        lo_b = "(" if lo_open else "["
        hi_b = ")" if hi_open else "]"
        raise BadAlpha(f"alpha must lie in {lo_b}{lo}, {hi}{hi_b}, got {a}")
    return a


def _ord_at_top_prime(fac) -> int:
    """Exponent of the largest-norm prime (canonical order breaks ties); 1 for units."""
    entries = sorted(fac, key=lambda e: (e.norm, e.prime.x, e.prime.y))
    return entries[-1].exponent if entries else 1


def corollary_bound(cid: int, triple: AbcTriple, config: BoundConfig = DEFAULT_CONFIG,
                    alpha: float | None = None, form: int | None = None) -> BoundReport:
    """Evaluate corollary `cid` of the main bounds as G^(theta + exponent term).

    Corollaries 1, 2 and 8 condition on the class group; with class number one
    their hypotheses are vacuous, so they raise NotApplicable.  The others
    check their hypothesis against the triple and raise HypothesisFails when
    violated.  ``form`` picks a branch where a corollary states two bounds
    (default: the stronger branch whose hypothesis holds).
    """
    if cid not in _VALID_IDS:
        raise BadParameter(f"corollary id must be one of {_VALID_IDS}")
    if cid in _CLASS_GROUP_IDS:
        raise NotApplicable(
            f"corollary {cid} conditions on nontrivial class-group structure; "
            "with class number one its hypothesis is vacuous"
        )
    lhs, sel = _lhs_and_selectors(triple, config)
    (_, _), (_, _), (_, fc) = height_ordered_factorizations(triple)
    G = triple.G
    C = config.C_main
    term = exponent_term(G, C, config)
    regime = _regime(G, config)
    n_max = max(sel.n_a, sel.n_b, sel.n_c)
    max_ord_c = fc.max_exponent(default=1)
    ord_top_c = _ord_at_top_prime(fc)

    def power_of_G(theta: float, extra_term: float, detail: str) -> BoundReport:
        with mp.workprec(config.precision_bits):
            rhs = float(mp.mpf(G) ** (theta + extra_term))
        return _report(f"cor{cid}", lhs, rhs, theta + extra_term, regime, detail=detail)

    if cid == 3:
        if not sel.n_b > sel.n_c:
            raise HypothesisFails(3, f"needs N_b > N_c, got {sel.n_b} <= {sel.n_c}")
        return power_of_G(2 / 3, term, "theta=2/3")

    if cid == 4:
        if not (sel.n_a > sel.n_b and sel.n_a > sel.n_c):
            raise HypothesisFails(
                4, f"needs N_a strictly largest, got ({sel.n_a}, {sel.n_b}, {sel.n_c})"
            )
        if sel.n_b > sel.n_c:
            return power_of_G(5 / 9, term, "theta=5/9 (N_b > N_c)")
        return power_of_G(2 / 3, term, "theta=2/3 (N_c >= N_b)")

    if cid == 5:
        a = _require_alpha(alpha, 0, 1, hi_open=False)
        if not max(sel.n_b, sel.n_c) < G**a:
            raise HypothesisFails(5, f"needs max(N_b, N_c) < G^{a}")
        return power_of_G((1 + 2 * a) / 3, term, f"theta=(1+2a)/3, a={a}")

    if cid == 6:
        a = _require_alpha(alpha, 0, 2 / 3)
        if not max(sel.n_b, sel.n_c) < lhs**a:
            raise HypothesisFails(6, f"needs max(N_b, N_c) < (log H)^{a}")
        return power_of_G(1 / (3 - 2 * a), term, f"theta=1/(3-2a), a={a}")

    if cid == 7:
        a = _require_alpha(alpha, 0, 3 / 5)
        if not n_max < lhs**a:
            raise HypothesisFails(7, f"needs N_max < (log H)^{a}")
        scaled = exponent_term(G, C / (3 - 5 * a), config)
        return power_of_G(0.0, scaled, f"sub-exponential, a={a}")

    if cid == 9:
        a = _require_alpha(alpha, 0, 1)
        strong = max(sel.n_b, sel.n_c) < G**a
        if form == 2 or (form is None and strong):
            if not strong:
                raise HypothesisFails(9, f"needs max(N_b, N_c) < G^{a}")
            return power_of_G(3 * a / 2, term, f"theta=3a/2, a={a}")
        if not (sel.n_c < G**a or max_ord_c < G**a):
            raise HypothesisFails(9, f"needs N_c < G^{a} or max ord_c < G^{a}")
        return power_of_G((1 + a) / 2, term, f"theta=(1+a)/2, a={a}")

    if cid == 10:
        a = _require_alpha(alpha, 0, 1)
        strong = a < 2 / 3 and max(sel.n_b, sel.n_c) < lhs**a
        if form == 2 or (form is None and strong):
            if not strong:
                raise HypothesisFails(
                    10, f"needs max(N_b, N_c) < (log H)^{a} with a < 2/3"
                )
            scaled = exponent_term(G, C / (2 - 3 * a), config)
            return power_of_G(0.0, scaled, f"sub-exponential, a={a}")
        if not (sel.n_c < lhs**a or max_ord_c < lhs**a):
            raise HypothesisFails(10, f"needs N_c < (log H)^{a} or max ord_c < (log H)^{a}")
        return power_of_G(1 / (2 - a), term, f"theta=1/(2-a), a={a}")

    if cid == 11:
        if form != 1 and n_max <= G ** (1 / 3):
            return power_of_G(1 / 2, term, "theta=1/2 (N_max <= G^(1/3))")
        a = _require_alpha(alpha, 1 / 3, 1, hi_open=False)
        if not (n_max > G**a and sel.n_a == n_max):
            raise HypothesisFails(11, f"needs N_a = N_max > G^{a}")
        return power_of_G((3 - 3 * a) / 2, term, f"theta=(3-3a)/2, a={a}")

    if cid == 12:
        a = _require_alpha(alpha, 0, 1, hi_open=False)
        if not ord_top_c < G**a:
            raise HypothesisFails(12, f"needs ord at the top prime of c < G^{a}")
        return power_of_G(max(a, 3 / 4), term, f"theta=max(a, 3/4), a={a}")

    if cid == 13:
        a = _require_alpha(alpha, 0, 1)
        if not ord_top_c < lhs**a:
            raise HypothesisFails(13, f"needs ord at the top prime of c < (log H)^{a}")
        with mp.workprec(config.precision_bits):
            g_branch = mp.mpf(G) ** (3 / 4 + term)
            log_branch = C * mp.log(G) ** (1 / (1 - a))
            rhs = float(max(g_branch, log_branch))
        return _report(f"cor{cid}", lhs, rhs, 3 / 4 + term, regime,
                       detail=f"max(G^(3/4+term), C*(log G)^(1/(1-a))), a={a}")

    raise BadParameter(f"unhandled corollary id {cid}")  # pragma: no cover


# ---------------------------------------------------------------------------
# Explicit auxiliary bounds


def yu_ord_bound(n_terms: int, degree: int, e_p: int, norm_p: int,
                 heights: list[float], B: float,
                 prec: int = 64) -> float:
    """Explicit upper bound for the order at a prime ideal of a product of
    powers minus one:

        (16 e d)^(2(n+1)) n^(5/2) log(2nd) log(2d) e_p^n
            * norm_p / (log norm_p)^2 * prod h'_i * log B,

    with h'_i = max(h_i, 1/(16 e^2 d^2)) and B >= 3.
    """
    if n_terms < 1 or degree < 1 or e_p < 1:
        raise BadParameter("n_terms, degree and e_p must be positive")
    if norm_p < 2:
        raise BadParameter("norm_p must be at least 2")
    if B < 3:
        raise BadParameter("B must be at least 3 (it is a max with 3)")
    if len(heights) != n_terms:
        raise BadParameter("need exactly one height per term")
    if any(h < 0 for h in heights):
        raise BadParameter("heights are nonnegative")
    n, d = n_terms, degree
    with mp.workprec(prec):
        floor_h = 1 / (16 * mp.e**2 * d**2)
        out = (16 * mp.e * d) ** (2 * (n + 1))
        out *= mp.mpf(n) ** mp.mpf(2.5)
        out *= mp.log(2 * n * d) * mp.log(2 * d)
        out *= mp.mpf(e_p) ** n
        out *= norm_p / mp.log(norm_p) ** 2
        for h in heights:
            out *= max(mp.mpf(h), floor_h)
        out *= mp.log(B)
        return float(out)


def tidy_bound(x: float, prec: int = 64) -> float:
    """max(e, 2x log x): any a with a / log a < x satisfies a < tidy_bound(x)."""
    if x <= 0:
        raise BadParameter("x must be positive")
    with mp.workprec(prec):
        return float(max(mp.e, 2 * x * mp.log(x)))


def landau_min_constant(field: QuadraticField, R: int, prec: int = 64) -> float:
    """Smallest C with prod_{i<=r} norm(p_i)/log norm(p_i) >= (r/C)^r for r <= R,
    over the field's prime ideals in (norm, canonical) order.

    Returns max_r r / (prod_r)^(1/r); the defining inequality is strict for
    every r except the maximizer, where it holds with equality.
    """
    if R < 1:
        raise BadParameter("R must be at least 1")
    ideals = prime_ideals_in_norm_order(field, R)
    with mp.workprec(prec):
        log_prod = mp.mpf(0)
        best = mp.mpf(0)
        for r, entry in enumerate(ideals, start=1):
            log_prod += mp.log(entry.norm) - mp.log(mp.log(entry.norm))
            best = max(best, mp.exp(mp.log(r) - log_prod / r))
        return float(best)


def regulator(field: QuadraticField) -> float:
    """Regulator of a supported field: 1 by convention, since Q and the
    admissible imaginary quadratic fields all have unit rank zero."""
    if field.degree not in (1, 2):  # pragma: no cover - fields validate themselves
        raise BadParameter("unsupported field")
    return 1.0


def gyory_sunit_bound(h_alpha: float, h_beta: float, t: int = 0, P: float = 1.0,
                      R: float = 1.0, R_S: float = 1.0, class_number: int = 1,
                      config: BoundConfig = DEFAULT_CONFIG) -> float:
    """S-unit height bound shaped like Gyory's Theorem A, with the reference
    constants supplied through the config (they are not derived here).

    t = 0 (no finite places): C13 * max(h_alpha, h_beta, 1).  For t > 0 the
    caller supplies the regulator data; unit-rank-zero fields have R = 1.
    log* means max(log x, 1).
    """
    if t < 0:
        raise BadParameter("t must be nonnegative")
    height_factor = max(h_alpha, h_beta, 1.0)
    if t == 0:
        return config.gyory_C13 * height_factor
    if P < 1 or R <= 0 or R_S <= 0 or class_number < 1:
        raise BadParameter("P >= 1, R > 0, R_S > 0 and class_number >= 1 required")

    def logstar(x: float) -> float:
        return max(math.log(x), 1.0)

    script_r = max(float(class_number), config.gyory_C13 * R)
    return (
        config.gyory_C14
        * class_number
        * R
        * logstar(R)
        * script_r ** (t + 1)
        * logstar(script_r)
        * (P / logstar(P))
        * R_S
        * height_factor
    )


def lefourn_sunit_bound(h_alpha: float, h_beta: float, degree: int, t: int,
                        R_S: float = 1.0, P3: float = 1.0,
                        config: BoundConfig = DEFAULT_CONFIG) -> float:
    """S-unit height bound shaped like the third-largest-norm refinement.

    At most two finite places: C118 * R_S * log+(R_S) * H.  Otherwise
    C119 * P3 * R_S * (1 + log+(R_S)/log+(P3)) * H with P3 the third-largest
    norm among the finite places of S (so P3 >= 2 there).
    """
    if degree < 1 or t < 0 or R_S <= 0:
        raise BadParameter("degree >= 1, t >= 0 and R_S > 0 required")
    height_factor = max(h_alpha, h_beta, 1.0, math.pi / degree)
    log_plus = lambda x: max(math.log(x), 0.0)  # noqa: E731
    if t <= 2:
        return config.lefourn_C118 * R_S * log_plus(R_S) * height_factor
    if P3 < 2:
        raise BadParameter("with three or more finite places P3 is a prime norm >= 2")
    ratio = 1 + log_plus(R_S) / log_plus(P3)
    return config.lefourn_C119 * P3 * R_S * ratio * height_factor


# ---------------------------------------------------------------------------
# Calibration of the leading constant from data


def _theorem_base(sel: Selectors, theorem: int) -> float:
    if theorem == 1:
        return (sel.n_a * sel.n_b * sel.n_c**2 * max(sel.n_b, sel.n_c)) ** (1 / 3)
    if theorem == 2:
        return math.sqrt(sel.n_b) * sel.n_c
    if theorem == 3:
        return (sel.n_a * sel.n_b * sel.n_c * sel.n_c_third * sel.n_q) ** (1 / 3)
    raise BadParameter("theorem must be 1, 2 or 3")


def _min_c_single(lhs: float, base: float, kappa_log_g: float, tol: float) -> float:
    """Smallest C with lhs <= base * exp(C * kappa_log_g), by bisection to tol."""
    if lhs <= base:
        return 0.0
    if kappa_log_g <= 0:
        raise BadParameter(
            "a small-radical triple violates its bound at every C; no finite C exists"
        )
    hi = 1.0
    while base * math.exp(hi * kappa_log_g) < lhs:
        hi *= 2
        if hi > 2**40:  # pragma: no cover - guards absurd data
            raise BadParameter("calibration diverged")
    lo = 0.0
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if base * math.exp(mid * kappa_log_g) >= lhs:
            hi = mid
        else:
            lo = mid
    return hi


def _chunk_calibration_max(args) -> float:
    rows, tol = args
    return max(_min_c_single(lhs, base, klg, tol) for lhs, base, klg in rows)


def empirical_min_C(triples, theorem: int, config: BoundConfig = DEFAULT_CONFIG,
                    workers: int = 1, tol: float = 1e-6) -> float:
    """Smallest C_main making the chosen theorem's inequality hold on every
    triple, found by per-triple bisection to ``tol`` and merged by max.

    The result is independent of how the dataset is partitioned, so any
    worker count returns the same value.
    """
    rows = []
    for triple in triples:
        lhs, sel = _lhs_and_selectors(triple, config)
        kappa = exponent_term(triple.G, 1.0, config)
        rows.append((lhs, _theorem_base(sel, theorem), kappa * math.log(triple.G)))
    if not rows:
        raise EmptyDataset("calibration needs at least one triple")
    if workers <= 1:
        return _chunk_calibration_max((rows, tol))
    chunks = [rows[i::workers] for i in range(workers)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        results = list(pool.map(_chunk_calibration_max,
                                [(chunk, tol) for chunk in chunks if chunk]))
    return max(results)
