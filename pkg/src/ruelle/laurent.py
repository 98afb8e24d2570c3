"""Finitely supported Laurent polynomials on the unit circle.

A :class:`LaurentPoly` stores the coefficients of ``f(z) = sum_k c_k z^k`` densely
over its support interval.  Points of the circle are parametrised by an angle
``theta`` through ``z = exp(-1j * theta)``; every evaluation in the package uses
this convention.
"""
from __future__ import annotations

import json
from typing import Iterable, Sequence

import numpy as np

#: Coefficients of magnitude at or below this are trimmed from either end.
TRIM_EPS = 1e-14


class LaurentPoly:
    """Immutable Laurent polynomial with complex double coefficients.

    ``coeffs[j]`` is the coefficient of ``z**(min_deg + j)``.  Construction
    trims negligible leading and trailing coefficients; the zero polynomial
    has no coefficients and ``min_deg == 0``.
    """

    __slots__ = ("_min_deg", "_coeffs")

    def __init__(self, min_deg: int, coeffs: Iterable[complex] = ()):
        c = np.array(list(coeffs) if not isinstance(coeffs, np.ndarray) else coeffs,
                     dtype=complex).ravel()
        nz = np.flatnonzero(np.abs(c) > TRIM_EPS)
        if nz.size == 0:
            min_deg, c = 0, np.zeros(0, dtype=complex)
        else:
            min_deg = int(min_deg) + int(nz[0])
            c = c[nz[0]:nz[-1] + 1].copy()
        c.setflags(write=False)
        object.__setattr__(self, "_min_deg", int(min_deg))
        object.__setattr__(self, "_coeffs", c)

    def __setattr__(self, name, value):
        raise AttributeError("LaurentPoly is immutable")

    # -- basic accessors -------------------------------------------------

    @property
    def min_deg(self) -> int:
        return self._min_deg

    @property
    def coeffs(self) -> np.ndarray:
        return self._coeffs

    @property
    def max_deg(self) -> int:
        """Highest stored exponent (``min_deg - 1`` for the zero polynomial)."""
        return self._min_deg + len(self._coeffs) - 1

    @property
    def support(self) -> tuple[int, int]:
        return self.min_deg, self.max_deg

    def is_zero(self) -> bool:
        return len(self._coeffs) == 0

    def coeff(self, k: int) -> complex:
        j = k - self._min_deg
        if 0 <= j < len(self._coeffs):
            return complex(self._coeffs[j])
        return 0j

    def as_dict(self) -> dict[int, complex]:
        return {self._min_deg + j: complex(c) for j, c in enumerate(self._coeffs)}

    def window(self, lo: int, hi: int) -> np.ndarray:
        """Dense coefficient vector on exponents ``lo..hi``.

        Raises ValueError when the support does not fit the window.
        """
        out = np.zeros(hi - lo + 1, dtype=complex)
        if self.is_zero():
            return out
        if self.min_deg < lo or self.max_deg > hi:
            raise ValueError(
                f"support [{self.min_deg}, {self.max_deg}] exceeds window [{lo}, {hi}]")
        out[self.min_deg - lo:self.max_deg - lo + 1] = self._coeffs
        return out

    @classmethod
    def from_window(cls, lo: int, vector: Sequence[complex]) -> "LaurentPoly":
        return cls(lo, vector)

    @classmethod
    def monomial(cls, k: int, c: complex = 1.0) -> "LaurentPoly":
        return cls(k, [c])

    @classmethod
    def constant(cls, c: complex) -> "LaurentPoly":
        return cls(0, [c])

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls(0, [])

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        lo = min(self.min_deg, other.min_deg)
        hi = max(self.max_deg, other.max_deg)
        out = np.zeros(hi - lo + 1, dtype=complex)
        out[self.min_deg - lo:self.max_deg - lo + 1] += self._coeffs
        out[other.min_deg - lo:other.max_deg - lo + 1] += other._coeffs
        return LaurentPoly(lo, out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(self.min_deg, -self._coeffs)

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if self.is_zero() or other.is_zero():
            return LaurentPoly.zero()
        return LaurentPoly(self.min_deg + other.min_deg,
                           np.convolve(self._coeffs, other._coeffs))

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        if isinstance(scalar, LaurentPoly):
            return NotImplemented
        return LaurentPoly(self.min_deg, self._coeffs / scalar)

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not polynomials")
        out = LaurentPoly.constant(1.0)
        for _ in range(n):
            out = out * self
        return out

    # -- comparison ------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return (self.min_deg == other.min_deg
                and np.array_equal(self._coeffs, other._coeffs))

    def __hash__(self):
        return hash((self.min_deg, self._coeffs.tobytes()))

    def allclose(self, other: "LaurentPoly", tol: float = 1e-12) -> bool:
        """Coefficient-wise comparison with absolute tolerance ``tol``."""
        return max_coeff_diff(self, other) <= tol

    def __repr__(self):
        if self.is_zero():
            return "LaurentPoly(0)"
        terms = []
        for k, c in self.as_dict().items():
            if c != 0:
                terms.append(f"({c:.6g})z^{k}")
        return "LaurentPoly(" + " + ".join(terms) + ")"

    # -- circle operations -----------------------------------------------

    def conj(self) -> "LaurentPoly":
        return conj_involution(self)

    def __call__(self, theta):
        return evaluate(self, theta)

    # -- serialization ---------------------------------------------------

    def to_json_obj(self) -> dict:
        return {"min_deg": self.min_deg,
                "coeffs": [[float(c.real), float(c.imag)] for c in self._coeffs]}

    @classmethod
    def from_json_obj(cls, obj: dict) -> "LaurentPoly":
        try:
            min_deg = obj["min_deg"]
            pairs = obj["coeffs"]
            if not isinstance(min_deg, int) or isinstance(min_deg, bool):
                raise TypeError("min_deg must be an integer")
            coeffs = [complex(float(re), float(im)) for re, im in pairs]
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"malformed LaurentPoly JSON: {exc}") from exc
        return cls(min_deg, coeffs)

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())

    @classmethod
    def from_json(cls, text: str) -> "LaurentPoly":
        return cls.from_json_obj(json.loads(text))


def _coerce(x):
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, (int, float, complex, np.number)):
        return LaurentPoly.constant(x)
    return NotImplemented


def make(min_deg: int, coeffs: Iterable[complex]) -> LaurentPoly:
    return LaurentPoly(min_deg, coeffs)


def add(f: LaurentPoly, g: LaurentPoly) -> LaurentPoly:
    return f + g


def mul(f: LaurentPoly, g: LaurentPoly) -> LaurentPoly:
    return f * g


def max_coeff_diff(f: LaurentPoly, g: LaurentPoly) -> float:
    d = f - g
    return float(np.max(np.abs(d.coeffs))) if not d.is_zero() else 0.0


def conj_involution(f: LaurentPoly) -> LaurentPoly:
    """Polynomial whose values on the circle are the conjugates of ``f``'s.

    The coefficient ``c_k`` becomes ``conj(c_k)`` at exponent ``-k``.
    """
    if f.is_zero():
        return f
    return LaurentPoly(-f.max_deg, np.conj(f.coeffs[::-1]))


def upsample(f: LaurentPoly, N: int) -> LaurentPoly:
    """``f(z**N)``."""
    if N <= 0:
        raise ValueError(f"upsampling factor must be positive, got {N}")
    if f.is_zero() or N == 1:
        return f
    out = np.zeros(N * (len(f.coeffs) - 1) + 1, dtype=complex)
    out[::N] = f.coeffs
    return LaurentPoly(N * f.min_deg, out)


def downsample(f: LaurentPoly, N: int) -> LaurentPoly:
    """Keep exponents divisible by ``N`` and divide them by ``N``."""
    if N <= 0:
        raise ValueError(f"downsampling factor must be positive, got {N}")
    if f.is_zero() or N == 1:
        return f
    start = -(-f.min_deg // N)  # ceil
    first = N * start - f.min_deg
    kept = f.coeffs[first::N]
    return LaurentPoly(start, kept)


def evaluate(f: LaurentPoly, theta):
    """Evaluate at ``z = exp(-1j * theta)``; ``theta`` may be an array."""
    theta = np.asarray(theta, dtype=float)
    if f.is_zero():
        return np.zeros_like(theta, dtype=complex) if theta.ndim else 0j
    # only nonzero taps; sparse filters like 1 + z**p are common
    nz = np.flatnonzero(f.coeffs)
    phases = np.exp(-1j * np.multiply.outer(theta, f.min_deg + nz))
    out = phases @ f.coeffs[nz]
    return out if theta.ndim else complex(out)


# ``eval`` shadows a builtin, so the public name is an alias kept for symmetry
# with the other operation names.
eval_at = evaluate


def rotate(f: LaurentPoly, eta: complex, tol: float = 1e-12) -> LaurentPoly:
    """``z -> f(eta * z)`` for ``eta`` on the unit circle.

    With ``eta = exp(1j * alpha)``, ``rotate(f, eta)(theta) == f(theta - alpha)``.
    """
    eta = complex(eta)
    if abs(abs(eta) - 1.0) > tol:
        raise ValueError(f"rotation factor must lie on the unit circle, |eta| = {abs(eta)!r}")
    if f.is_zero():
        return f
    alpha = np.angle(eta)
    ks = np.arange(f.min_deg, f.max_deg + 1)
    return LaurentPoly(f.min_deg, f.coeffs * np.exp(1j * alpha * ks))


def integral(f: LaurentPoly) -> complex:
    """Integral against normalised Haar measure, i.e. the constant coefficient."""
    return f.coeff(0)
