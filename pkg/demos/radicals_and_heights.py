"""
Exact arithmetic, radicals and heights
======================================

A tour of the core objects: the nine admissible imaginary quadratic rings,
canonical prime factorization, the radical G with its top-norm selectors,
and the two heights (Weil and projective) under the product-formula
normalization.

Run: python demos/radicals_and_heights.py
"""

from abckit import (
    AlgebraicInt,
    QuadraticField,
    RATIONALS,
    canonical_associate,
    factor_element,
    make_triple,
    projective_height,
    smoothness_S,
    weil_height,
)
from abckit.heights import places

Q = RATIONALS
GAUSS = QuadraticField(-1)

print("=" * 72)
print("Factoring in Z and in Z[i]")
print("=" * 72)

for n in (72, 30030, -1001):
    fac = factor_element(AlgebraicInt(Q, n))
    parts = " * ".join(f"{e.prime}^{e.exponent}" for e in fac)
    print(f"{n:>7} = ({fac.unit}) * {parts}")

# 5 splits into two conjugate Gaussian primes, 2 ramifies, 3 stays inert
for n in (5, 2, 3, 50):
    fac = factor_element(AlgebraicInt(GAUSS, n, 0))
    parts = " * ".join(f"({e.prime})^{e.exponent}" for e in fac)
    print(f"{n:>7} = ({fac.unit}) * {parts}   norms {[e.norm for e in fac]}")

# canonical associates make factorizations deterministic: all four unit
# multiples of 2+i normalize to the same representative
print("\nassociates of 2+i and their canonical form:")
for unit in GAUSS.units():
    v = unit * AlgebraicInt(GAUSS, 2, 1)
    print(f"  {str(v):>6} -> {canonical_associate(v)}")

print()
print("=" * 72)
print("The radical G and the selector norms")
print("=" * 72)

triple = make_triple(1, 8, -9)
sel = triple.selectors
print(f"(1, 8, -9): G = {triple.G}, S = {smoothness_S(triple)}, "
      f"N_a={sel.n_a} N_b={sel.n_b} N_c={sel.n_c}")

triple = make_triple(-106, 1, 105)
print(f"(-106, 1, 105): c = 3*5*7 so the third-largest selector is "
      f"N'_c = {triple.selectors.n_c_third}")

gauss_triple = make_triple(
    AlgebraicInt(GAUSS, 1, 0), AlgebraicInt(GAUSS, 0, 2), AlgebraicInt(GAUSS, -1, -2)
)
print(f"(1, 2w, -1-2w) over Q(i): G = {gauss_triple.G} "
      "(norm 2 from the ramified prime over 2, norm 5 from the prime over 5)")

print()
print("=" * 72)
print("Heights")
print("=" * 72)

print(f"h(3/2) over Q        = {weil_height(3, 2):.6f}  (= log 3)")
print(f"h(3/2) over Q(i)     = "
      f"{weil_height(AlgebraicInt(GAUSS, 3, 0), AlgebraicInt(GAUSS, 2, 0)):.6f}"
      "  (doubles with the degree)")
print(f"H(1, 8, -9)  over Q    = {projective_height([1, 8, -9])}")
print(f"H(2, 16, -18) over Q   = {projective_height([2, 16, -18])}  (scale invariant)")
coords = [AlgebraicInt(GAUSS, v, 0) for v in (1, 8, -9)]
print(f"H(1, 8, -9)  over Q(i) = {projective_height(coords)}  (the square of 9)")

# the normalization satisfies the product formula: local values multiply to 1
x, y = AlgebraicInt(GAUSS, 3, 5), AlgebraicInt(GAUSS, -2, 7)
print(f"\nplaces of (3+5w)/(-2+7w) over Q(i):")
total = 0.0
for place in places(x, y):
    value = place.log_abs()
    total += value
    label = (f"prime {place.prime} (norm {place.norm})"
             if place.kind == "finite" else "infinite place")
    print(f"  {label:<28} log|x|_v = {value:+.6f}")
print(f"  {'sum (product formula)':<28} {total:+.2e}")
