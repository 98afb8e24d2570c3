"""Seeded random instances for property checks of the transfer operator."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .laurent import LaurentPoly
from .transfer import Filter, check_elemprop, ElempropReport


def random_poly(rng: np.random.Generator, max_len: int = 9, lo_range=(-4, 4)) -> LaurentPoly:
    """Random complex polynomial with at most ``max_len`` coefficients in the unit square."""
    length = int(rng.integers(1, max_len + 1))
    lo = int(rng.integers(lo_range[0], lo_range[1] + 1))
    c = rng.uniform(-1, 1, length) + 1j * rng.uniform(-1, 1, length)
    return LaurentPoly(lo, c)


def random_nonzero_poly(rng: np.random.Generator, **kw) -> LaurentPoly:
    while True:
        f = random_poly(rng, **kw)
        if not f.is_zero():
            return f


@dataclass(frozen=True)
class ElempropInstance:
    m0: Filter
    m0p: LaurentPoly
    f: LaurentPoly
    g: LaurentPoly
    n: int

    def check(self, tol: float = 1e-11) -> ElempropReport:
        return check_elemprop(self.m0, self.m0p, self.f, self.g, self.n, tol)


def random_elemprop_instance(rng: np.random.Generator) -> ElempropInstance:
    N = int(rng.choice([2, 3, 4]))
    m0 = Filter(random_nonzero_poly(rng), N)
    m0p = random_nonzero_poly(rng)
    f = random_poly(rng)
    g = random_poly(rng)
    n = int(rng.integers(1, 4))
    return ElempropInstance(m0, m0p, f, g, n)


def elemprop_suite(seed: int = 0, count: int = 100, tol: float = 1e-11) -> list[tuple[ElempropInstance, ElempropReport]]:
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        inst = random_elemprop_instance(rng)
        out.append((inst, inst.check(tol)))
    return out
