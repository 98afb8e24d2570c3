"""The signed Ruelle transfer operator of a pair of low-pass filters.

For filters ``m0``, ``m0p`` at scale ``N`` the operator acts on circle functions by

    (R f)(z) = 1/N * sum_{w**N == z} conj(m0(w)) * m0p(w) * f(w).

On Laurent polynomials the root average keeps the exponents divisible by ``N``,
so ``R f = downsample(conj(m0) * m0p * f, N)``.  The operator leaves a window
of exponents ``[-d, d]`` invariant, and its matrix on that window is what the
spectral routines work with.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import ceil

import numpy as np
import scipy.linalg

from .laurent import (LaurentPoly, conj_involution, downsample, evaluate,
                      integral, max_coeff_diff, upsample)

#: Coefficients escaping the invariant window above this size are an error.
ESCAPE_TOL = 1e-12


class InvarianceError(RuntimeError):
    """The coefficient window is not mapped into itself by the operator."""


class SpectrumError(RuntimeError):
    """The dense eigensolver failed."""


@dataclass(frozen=True)
class Filter:
    """Low-pass mask ``m0`` together with its integer scale ``N >= 2``."""

    m0: LaurentPoly
    N: int = 2

    def __post_init__(self):
        if not isinstance(self.N, (int, np.integer)) or self.N < 2:
            raise ValueError(f"scale N must be an integer >= 2, got {self.N!r}")
        if not isinstance(self.m0, LaurentPoly):
            raise TypeError("m0 must be a LaurentPoly")
        if self.m0.is_zero():
            raise ValueError("the zero filter is singular")

    def to_json_obj(self) -> dict:
        obj = self.m0.to_json_obj()
        obj["N"] = int(self.N)
        return obj

    @classmethod
    def from_json_obj(cls, obj: dict) -> "Filter":
        if "N" not in obj:
            raise ValueError("filter JSON needs an integer 'N'")
        return cls(LaurentPoly.from_json_obj(obj), obj["N"])


def _pair(m0: Filter, m0p) -> LaurentPoly:
    """Return the dual mask as a polynomial, checking scales agree."""
    if isinstance(m0p, Filter):
        if m0p.N != m0.N:
            raise ValueError(f"filters have different scales {m0.N} and {m0p.N}")
        return m0p.m0
    return m0p


def symbol(m0: Filter, m0p) -> LaurentPoly:
    """``conj(m0) * m0p``, the weight the operator averages against."""
    return conj_involution(m0.m0) * _pair(m0, m0p)


def ruelle_apply(m0: Filter, m0p, f: LaurentPoly) -> LaurentPoly:
    """Apply ``R_{m0, m0p}`` to the polynomial ``f``."""
    return downsample(symbol(m0, m0p) * f, m0.N)


def ruelle_pointwise(m0: Filter, m0p, f, theta):
    """Evaluate ``R f`` at angles ``theta`` by averaging over the N-th roots.

    ``f`` may be a LaurentPoly or any vectorised callable of an angle.  The
    roots of ``w**N = exp(-1j*theta)`` are ``exp(-1j*(theta + 2*pi*l)/N)``.
    """
    N = m0.N
    mp = _pair(m0, m0p)
    fn = (lambda t: evaluate(f, t)) if isinstance(f, LaurentPoly) else f
    theta = np.asarray(theta, dtype=float)
    total = np.zeros(theta.shape, dtype=complex)
    for l in range(N):
        t = (theta + 2 * np.pi * l) / N
        total = total + np.conj(evaluate(m0.m0, t)) * evaluate(mp, t) * fn(t)
    return total / N


def invariant_half_width(m0: Filter, m0p) -> int:
    """Smallest ``d`` meeting the support bound with ``[-d, d]`` invariant."""
    g = symbol(m0, m0p)
    lo, hi = g.support
    N = m0.N
    d = max(ceil(max(-lo, hi, 0) / (N - 1)), 0)
    while not _window_is_invariant(g, N, d):
        # unreachable for the support bound above; kept as a guard
        d += 1
    return d


def _window_is_invariant(g: LaurentPoly, N: int, d: int) -> bool:
    for k in range(-d, d + 1):
        r = downsample(g * LaurentPoly.monomial(k), N)
        if _escape(r, d) > ESCAPE_TOL:
            return False
    return True


def _escape(f: LaurentPoly, d: int) -> float:
    """Largest coefficient magnitude outside ``[-d, d]``."""
    worst = 0.0
    for k, c in f.as_dict().items():
        if abs(k) > d:
            worst = max(worst, abs(c))
    return worst


@dataclass(frozen=True, eq=False)
class LawtonMatrix:
    """Matrix of the transfer operator on exponents ``-d..d``.

    Column ``j`` holds the coefficients of ``R(z**(j - d))``.
    """

    d: int
    N: int
    entries: np.ndarray
    m0: LaurentPoly | None = None
    m0p: LaurentPoly | None = None

    @property
    def size(self) -> int:
        return 2 * self.d + 1

    def apply(self, f: LaurentPoly) -> LaurentPoly:
        return LaurentPoly(-self.d, self.entries @ f.window(-self.d, self.d))

    def to_json_obj(self) -> dict:
        return {"d": int(self.d), "N": int(self.N),
                "entries": [[float(c.real), float(c.imag)] for c in self.entries.ravel()]}

    @classmethod
    def from_json_obj(cls, obj: dict) -> "LawtonMatrix":
        d = int(obj["d"])
        n = 2 * d + 1
        flat = np.array([complex(re, im) for re, im in obj["entries"]], dtype=complex)
        if flat.size != n * n:
            raise ValueError(f"expected {n * n} entries, got {flat.size}")
        return cls(d, int(obj["N"]), flat.reshape(n, n))


def lawton_matrix(m0: Filter, m0p=None) -> LawtonMatrix:
    """Dense matrix of ``R_{m0, m0p}`` on its invariant window.

    ``m0p`` defaults to ``m0`` (the positive operator).
    """
    if m0p is None:
        m0p = m0
    mp = _pair(m0, m0p)
    g = symbol(m0, mp)
    d = invariant_half_width(m0, mp)
    n = 2 * d + 1
    M = np.zeros((n, n), dtype=complex)
    for j in range(n):
        r = downsample(g * LaurentPoly.monomial(j - d), m0.N)
        if _escape(r, d) > ESCAPE_TOL:
            raise InvarianceError(
                f"R(z^{j - d}) leaves the window [-{d}, {d}]")
        for k, c in r.as_dict().items():
            if abs(k) <= d:
                M[k + d, j] = c
    M.setflags(write=False)
    return LawtonMatrix(d, m0.N, M, m0.m0, mp)


def _clean(z: complex, eps: float = 1e-12) -> complex:
    re = 0.0 if abs(z.real) <= eps else z.real
    im = 0.0 if abs(z.imag) <= eps else z.imag
    return complex(re, im)


def spectrum(M: LawtonMatrix) -> list[complex]:
    """All eigenvalues, by descending modulus and then ascending argument."""
    try:
        vals = scipy.linalg.eigvals(M.entries)
    except (np.linalg.LinAlgError, ValueError) as exc:
        raise SpectrumError(str(exc)) from exc
    if not np.all(np.isfinite(vals)):
        raise SpectrumError("eigensolver returned non-finite eigenvalues")
    vals = [_clean(complex(v)) for v in vals]
    return sorted(vals, key=lambda v: (-round(abs(v), 9), round(float(np.angle(v)), 9)))


@dataclass(frozen=True, eq=False)
class EigenspaceResult:
    """Orthonormal basis of an eigenspace of a :class:`LawtonMatrix`."""

    eigenvalue: complex
    tol: float
    d: int
    vectors: np.ndarray  # shape (2d+1, dim), orthonormal columns
    residuals: tuple[float, ...]
    singular_values: tuple[float, ...] = field(default=())

    @property
    def dim(self) -> int:
        return self.vectors.shape[1]

    @property
    def basis(self) -> list[LaurentPoly]:
        return [LaurentPoly(-self.d, self.vectors[:, j]) for j in range(self.dim)]

    def to_json_obj(self) -> dict:
        ev = complex(self.eigenvalue)
        return {"eigenvalue": [ev.real, ev.imag], "tol": self.tol, "dim": self.dim,
                "basis": [b.to_json_obj() for b in self.basis],
                "residuals": [float(r) for r in self.residuals]}


def _fix_phase(v: np.ndarray) -> np.ndarray:
    j = int(np.argmax(np.abs(v) > np.max(np.abs(v)) * (1 - 1e-9)))
    return v * (abs(v[j]) / v[j])


def fixed_space(M: LawtonMatrix, eigenvalue: complex = 1.0, tol: float = 1e-9) -> EigenspaceResult:
    """Numerical null space of ``M - eigenvalue * I``.

    A right singular vector is kept when its singular value is at most
    ``tol`` times the largest one.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    A = M.entries - eigenvalue * np.eye(M.size)
    _, s, vh = scipy.linalg.svd(A)
    smax = s[0] if s.size else 0.0
    keep = s <= tol * smax if smax > 0 else np.ones_like(s, dtype=bool)
    V = vh[keep].conj().T
    if V.shape[1] == 1:
        V = _fix_phase(V[:, 0])[:, None]
    residuals = tuple(float(np.linalg.norm(A @ V[:, j])) for j in range(V.shape[1]))
    V.setflags(write=False)
    return EigenspaceResult(complex(eigenvalue), tol, M.d, V, residuals,
                            tuple(float(x) for x in s))


def filter_cascade_product(m0: Filter, n: int) -> LaurentPoly:
    """``m0(z) m0(z**N) ... m0(z**(N**(n-1)))``."""
    if n <= 0:
        raise ValueError(f"n must be positive, got {n}")
    out = m0.m0
    for i in range(1, n):
        out = out * upsample(m0.m0, m0.N ** i)
    return out


@dataclass(frozen=True)
class ElempropReport:
    """Residuals of the four elementary transfer-operator identities."""

    integral_identity: float
    pairing_identity: float
    module_identity: float
    iterate_identity: float
    tol: float = 1e-11

    @property
    def items(self) -> dict[str, bool]:
        return {"integral": self.integral_identity <= self.tol,
                "pairing": self.pairing_identity <= self.tol,
                "module": self.module_identity <= self.tol,
                "iterate": self.iterate_identity <= self.tol}

    @property
    def failures(self) -> list[str]:
        return [k for k, ok in self.items.items() if not ok]

    @property
    def ok(self) -> bool:
        return not self.failures


def _iterate(m0: Filter, mp: LaurentPoly, f: LaurentPoly, n: int) -> LaurentPoly:
    for _ in range(n):
        f = ruelle_apply(m0, mp, f)
    return f


def check_elemprop(m0: Filter, m0p, f: LaurentPoly, g: LaurentPoly, n: int = 1,
                   tol: float = 1e-11) -> ElempropReport:
    """Check the elementary identities of ``R = R_{m0, m0p}``.

    1. ``int R f = int conj(m0) m0p f``
    2. ``int g R f = int g(z**N) conj(m0) m0p f``
    3. ``R(g(z**N) f) = g R f``, and ``R**n(g(z**(N**n)) f) = g R**n f``
    4. ``int R**n f = int conj(m0^(n)) m0p^(n) f`` with the cascade products.
    """
    if n <= 0:
        raise ValueError(f"n must be positive, got {n}")
    N = m0.N
    mp = _pair(m0, m0p)
    w = symbol(m0, mp)
    Rf = ruelle_apply(m0, mp, f)

    r1 = abs(integral(Rf) - integral(w * f))
    r2 = abs(integral(g * Rf) - integral(upsample(g, N) * w * f))
    r3 = max_coeff_diff(ruelle_apply(m0, mp, upsample(g, N) * f), g * Rf)
    r3n = max_coeff_diff(_iterate(m0, mp, upsample(g, N ** n) * f, n), g * _iterate(m0, mp, f, n))
    mn = filter_cascade_product(m0, n)
    mpn = filter_cascade_product(Filter(mp, N), n)
    r4 = abs(integral(_iterate(m0, mp, f, n)) - integral(conj_involution(mn) * mpn * f))
    return ElempropReport(float(r1), float(r2), float(max(r3, r3n)), float(r4), tol)
