"""
Smooth solutions of X + Y = Z
=============================

Enumerates primitive P-smooth triples up to a height limit, verifies the
radical-versus-smoothness inequality G <= e^(3S) on all of them, and shows
the slow-growth smoothness filter with its nested-log guard.

Run: python demos/smooth_triples.py
"""

import math

from abckit import (
    enumerate_triples,
    primorial_chain_violations,
    rosser_violations,
    smooth_numbers,
    thm4_filter,
    thm4_status,
    verify_lemma9,
)

print("=" * 72)
print("Smooth numbers and primitive smooth triples")
print("=" * 72)
print(f"3-smooth numbers up to 50: {smooth_numbers(3, 50)}")

for p_bound in (3, 5, 7, 13):
    triples = enumerate_triples(p_bound, 10**6)
    largest = triples[-1]
    print(f"P = {p_bound:>2}: {len(triples):>4} primitive triples with Z <= 10^6; "
          f"largest: {largest.x} + {largest.y} = {largest.z}")

print()
print("=" * 72)
print("The inequality log G <= 3S, exhaustively")
print("=" * 72)
triples = enumerate_triples(13, 10**6)
slacks = [verify_lemma9(t)[1] for t in triples]
assert all(s >= 0 for s in slacks)
tightest = triples[slacks.index(min(slacks))]
print(f"all {len(triples)} 13-smooth triples satisfy it; tightest is "
      f"{tightest.x} + {tightest.y} = {tightest.z} "
      f"(G = {tightest.g}, S = {tightest.s}, slack = {min(slacks):.3f})")

# the Rosser-type prime bounds behind the proof, checked directly
lower_bad, upper_bad = rosser_violations(10**4)
print(f"n log n < p_n and p_n <= 2n log n up to n = 10^4: "
      f"{len(lower_bad) + len(upper_bad)} violations")
print(f"primorial chain bound up to k = 50: "
      f"{len(primorial_chain_violations(50))} violations")

print()
print("=" * 72)
print("The smoothness filter and its domain guard")
print("=" * 72)
result = thm4_filter(triples, phi_id=2)
print(f"desk-scale heights sit below e^(e^e) = 3.8e6, so the four nested logs "
      f"are undefined:\n  {result.below_threshold} of {len(triples)} triples "
      f"guarded out, {len(result.passed)} passed, {len(result.failed)} failed")

# beyond the guard the predicate bites: S must crawl for the filter to pass
h = round(math.exp(20))
print(f"\nsynthetic heights with log H = 20 (H = {h}):")
for s in (10, 50, 100, 150):
    print(f"  S = {s:>3}: {thm4_status(s, h, phi_id=2)}")
