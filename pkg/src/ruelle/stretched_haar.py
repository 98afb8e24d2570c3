"""The stretched Haar family ``m0(z) = (1 + z**p) / sqrt(2)``, ``N = 2``, ``p`` odd.

Its scaling function is ``(1/p) * chi_(0, p)`` and the fixed vector of the
transfer operator coming from it is a scaled Fejer kernel.  Rotating that
kernel by ``p``-th roots of unity and summing over orbits of ``k -> 2k mod p``
gives every continuous fixed point.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .laurent import LaurentPoly, rotate
from .transfer import Filter


def _check_p(p) -> int:
    if isinstance(p, bool) or not isinstance(p, (int, np.integer)):
        raise TypeError(f"p must be an integer, got {p!r}")
    if p < 1 or p % 2 == 0:
        raise ValueError(f"p must be a positive odd integer, got {p}")
    return int(p)


@dataclass(frozen=True)
class CycleDecomposition:
    """Orbits of ``k -> 2k mod p`` on ``{0, ..., p-1}``.

    Orbits are ordered by their smallest element; each orbit lists its
    elements in iteration order starting from the smallest.
    """

    p: int
    cycles: tuple[tuple[int, ...], ...]

    def __len__(self):
        return len(self.cycles)

    def to_json_obj(self) -> dict:
        # elements are listed in increasing order for display
        return {"p": self.p, "cycles": [sorted(c) for c in self.cycles]}


def stretched_haar_filter(p: int) -> Filter:
    p = _check_p(p)
    s = 1 / np.sqrt(2)
    coeffs = np.zeros(p + 1)
    coeffs[0] = coeffs[p] = s
    return Filter(LaurentPoly(0, coeffs), 2)


def fejer_h(p: int) -> LaurentPoly:
    """``sum_{|k| < p} (p - |k|) / p**2 * z**k``.

    On the circle this is ``sin(p t / 2)**2 / (p**2 * sin(t / 2)**2)``.
    """
    p = _check_p(p)
    ks = np.arange(-(p - 1), p)
    return LaurentPoly(-(p - 1), (p - np.abs(ks)) / p**2)


def doubling_cycles(p: int) -> CycleDecomposition:
    p = _check_p(p)
    seen: set[int] = set()
    cycles = []
    for start in range(p):
        if start in seen:
            continue
        orbit = []
        k = start
        while k not in seen:
            seen.add(k)
            orbit.append(k)
            k = 2 * k % p
        cycles.append(tuple(orbit))
    return CycleDecomposition(p, tuple(cycles))


def root_of_unity(p: int, l: int = 1) -> complex:
    """``rho**l`` with ``rho = exp(2j*pi/p)``."""
    return complex(np.exp(2j * np.pi * (l % p) / p))


def cycle_eigenfunction(p: int, cycle: Iterable[int]) -> LaurentPoly:
    """Sum of the rotations ``f(z) -> f(rho**l * z)`` of :func:`fejer_h` over ``cycle``."""
    p = _check_p(p)
    members = sorted({int(l) % p for l in cycle})
    if not members:
        raise ValueError("empty cycle")
    if any(2 * l % p not in members for l in members):
        raise ValueError(f"{members} is not closed under k -> 2k mod {p}")
    h = fejer_h(p)
    out = LaurentPoly.zero()
    for l in members:
        out = out + rotate(h, root_of_unity(p, l))
    return out


def continuous_eigenbasis(p: int) -> list[LaurentPoly]:
    return [cycle_eigenfunction(p, c) for c in doubling_cycles(p).cycles]
