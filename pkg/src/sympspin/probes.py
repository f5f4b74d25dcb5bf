"""Deterministic seeded probe generation.

Probes are sparse spinor-valued forms with at most 8 terms, numerators and
denominators bounded by 7, and polynomial degree bounded by 4 (configurable).
Seeding is by explicit strings derived from integers only, so identical
configurations reproduce identical probes on any platform.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .exactnum import GaussianRational
from .forms import SpinorForm


def cell_seed(seed: int, degree: int, sign, index: int) -> str:
    tag = sign if isinstance(sign, str) else ("+" if sign == 0 else "-")
    return f"probe:{seed}:{degree}:{tag}:{index}"


def spinor_probe(l: int, degree: int, parity: int, seed: str,
                 max_terms: int = 8, max_poly_degree: int = 4,
                 coeff_bound: int = 7) -> SpinorForm:
    """One sparse probe at the given form degree and polynomial parity."""
    rng = random.Random(seed)
    for _ in range(64):
        n_terms = rng.randint(1, max_terms)
        flat = {}
        for _ in range(n_terms):
            idx = tuple(sorted(rng.sample(range(1, 2 * l + 1), degree)))
            total_choices = [d for d in range(max_poly_degree + 1) if d % 2 == parity]
            total = rng.choice(total_choices)
            exp = [0] * l
            for _ in range(total):
                exp[rng.randrange(l)] += 1
            c = _coeff(rng, coeff_bound)
            key = (idx, tuple(exp))
            cur = flat.get(key)
            newc = c if cur is None else cur + c
            if newc:
                flat[key] = newc
            elif cur is not None:
                del flat[key]
        if flat:
            return SpinorForm._wrap(l, flat)
    raise RuntimeError("probe generation kept cancelling to zero")


def probe_set(l: int, degree: int, parity: int, count: int, seed: int,
              max_poly_degree: int = 4) -> list:
    return [spinor_probe(l, degree, parity,
                         cell_seed(seed, degree, parity, n),
                         max_poly_degree=max_poly_degree)
            for n in range(count)]


def _coeff(rng, bound) -> GaussianRational:
    while True:
        re = Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
        im = Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
        g = GaussianRational(re, im)
        if g:
            return g
