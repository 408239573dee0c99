import random
from math import isqrt

import pytest

from abckit import CLASS_NUMBER_ONE_D, AlgebraicInt, QuadraticField, RATIONALS

ALL_FIELDS = [RATIONALS] + [QuadraticField(d) for d in CLASS_NUMBER_ONE_D]
QUADRATIC_FIELDS = ALL_FIELDS[1:]
GAUSSIAN = QuadraticField(-1)


def random_element(rng: random.Random, field: QuadraticField,
                   max_norm: int = 10**9) -> AlgebraicInt:
    """A uniform-ish nonzero element with |norm| <= max_norm."""
    if field.degree == 1:
        while True:
            x = rng.randint(-max_norm, max_norm)
            if x:
                return AlgebraicInt(field, x)
    xb = isqrt(max_norm)
    yb = max(1, isqrt(max_norm // abs(field.d)))
    while True:
        cand = AlgebraicInt(field, rng.randint(-xb, xb), rng.randint(-yb, yb))
        if not cand.is_zero() and abs(cand.norm()) <= max_norm:
            return cand


@pytest.fixture
def rng() -> random.Random:
    return random.Random(0xABC)
