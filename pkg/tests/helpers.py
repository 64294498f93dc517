"""Seeded random generators shared by the test modules."""

from __future__ import annotations

import random
from fractions import Fraction

from oag import (
    INT,
    PLOCAL,
    PSPAN,
    RAT,
    ConvexCut,
    Element,
    GroupSpec,
    Term,
    cong,
)

PRIMES = (2, 3, 5)


def random_spec(rng: random.Random, max_blocks: int = 5) -> GroupSpec:
    n = rng.randint(1, max_blocks)
    blocks = []
    for _ in range(n):
        roll = rng.randrange(4)
        if roll == 0:
            blocks.append(INT)
        elif roll == 1:
            blocks.append(RAT)
        elif roll == 2:
            blocks.append(PLOCAL(rng.choice(PRIMES)))
        else:
            blocks.append(PSPAN(rng.choice(PRIMES)))
    return GroupSpec(tuple(blocks))


def random_local_fraction(rng: random.Random, p: int) -> Fraction:
    num = rng.randint(-24, 24)
    den = rng.choice([d for d in (1, 2, 3, 5, 7, 9) if d % p != 0])
    return Fraction(num, den)


def random_block_value(rng: random.Random, block):
    if block.kind == "Z":
        return rng.randint(-20, 20)
    if block.kind == "Q":
        return Fraction(rng.randint(-24, 24), rng.randint(1, 9))
    if block.kind == "ZLOC":
        return random_local_fraction(rng, block.p)
    pairs = {}
    for _ in range(rng.randint(0, 3)):
        pairs[rng.randrange(4)] = random_local_fraction(rng, block.p)
    return tuple(pairs.items())


def random_element(rng: random.Random, spec: GroupSpec) -> Element:
    return Element(
        spec, tuple(random_block_value(rng, b) for b in spec.blocks)
    )


def random_divisible_element(rng: random.Random, spec: GroupSpec, n: int) -> Element:
    from oag import scale

    return scale(n, random_element(rng, spec))


def random_cong_literal(rng: random.Random, spec: GroupSpec, n_params: int):
    """A positive congruence literal with a random coefficient, modulus and
    cut, whose term draws on the first n_params bank entries."""
    k = rng.choice([1, 2, 3, 5, 6, -1, -3, 4])
    m = rng.choice([1, 2, 3, 4, 6, 8, 9, 12, 18])
    alpha = ConvexCut(rng.randint(0, spec.K))
    coeffs = {}
    for _ in range(rng.randint(1, min(3, n_params))):
        coeffs[rng.randrange(n_params)] = rng.randint(-3, 3) or 1
    return cong(k, m, alpha, Term.of(coeffs))
