"""Scaling-function approximations: Fourier partial products, periodization
of cross products, and the time-domain cascade iteration.

Angles follow the package convention ``z = exp(-1j*omega)``, which matches the
Fourier transform ``psi_hat(x) = int psi(t) exp(-1j*t*x) dt``.
"""
from __future__ import annotations

import io
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .laurent import evaluate
from .transfer import Filter

DEFAULT_N_TERMS = 20
DEFAULT_K = 1000
DEFAULT_GRID = 256


@dataclass(frozen=True, eq=False)
class GridFunction:
    """Complex samples on ``domain_start + i*step``, ``i = 0..len(values)-1``."""

    domain_start: float
    step: float
    values: np.ndarray

    def __post_init__(self):
        if self.step <= 0:
            raise ValueError("grid step must be positive")
        if len(self.values) == 0:
            raise ValueError("grid function needs at least one sample")

    @property
    def points(self) -> np.ndarray:
        return self.domain_start + self.step * np.arange(len(self.values))

    def __len__(self):
        return len(self.values)

    def l2_distance(self, other) -> float:
        """Riemann-sum L2 distance to another grid function or a callable."""
        ref = other.values if isinstance(other, GridFunction) else other(self.points)
        return float(np.sqrt(self.step * np.sum(np.abs(self.values - ref) ** 2)))

    def to_csv(self, header: str = "omega") -> str:
        buf = io.StringIO()
        buf.write(f"{header},re,im\n")
        for x, v in zip(self.points, self.values):
            v = complex(v)
            buf.write(f"{float(x)!r},{v.real!r},{v.imag!r}\n")
        return buf.getvalue()


def uniform_grid(size: int = DEFAULT_GRID, start: float = 0.0,
                 length: float = 2 * np.pi) -> np.ndarray:
    """Half-open grid ``[start, start + length)`` with left-edge samples."""
    if size < 1:
        raise ValueError("grid size must be positive")
    return start + (length / size) * np.arange(size)


def phihat_partial(m0: Filter, n: int, omega):
    """``prod_{i=1..n} m0(omega / N**i) / sqrt(N)``, vectorised over ``omega``."""
    if n <= 0:
        raise ValueError(f"n must be positive, got {n}")
    omega = np.asarray(omega, dtype=float)
    N = m0.N
    out = np.ones(omega.shape, dtype=complex)
    scale = 1.0
    for _ in range(n):
        scale *= N
        out = out * evaluate(m0.m0, omega / scale)
    out = out / np.sqrt(N) ** n
    return out if omega.ndim else complex(out)


def periodize(f: Callable, K: int, omega):
    """Symmetric truncation ``sum_{|k| <= K} f(omega + 2*pi*k)``.

    ``f`` must accept numpy arrays of angles.
    """
    if K < 0:
        raise ValueError("K must be non-negative")
    omega = np.asarray(omega, dtype=float)
    ks = np.arange(-K, K + 1)
    pts = np.add.outer(omega, 2 * np.pi * ks)
    out = np.sum(f(pts), axis=-1)
    return out if omega.ndim else complex(out)


def h_cross_approx(m0: Filter, m0p: Filter, n: int = DEFAULT_N_TERMS, K: int = DEFAULT_K,
                   size: int = DEFAULT_GRID, start: float = 0.0,
                   length: float = 2 * np.pi) -> GridFunction:
    """Samples of the truncated periodization of ``conj(phi_hat) * phi_hat'``.

    Both scaling-function transforms are replaced by their ``n``-term partial
    products.  For a biorthogonal pair the result approximates the constant 1.
    """
    if m0.N != m0p.N:
        raise ValueError(f"filters have different scales {m0.N} and {m0p.N}")
    if K < 0:
        raise ValueError("K must be non-negative")

    same = m0 == m0p

    def cross(w):
        a = phihat_partial(m0, n, w)
        if same:
            return np.abs(a) ** 2 + 0j
        return np.conj(a) * phihat_partial(m0p, n, w)

    grid = uniform_grid(size, start, length)
    # chunk the grid to bound the (points x 2K+1) work array
    chunk = max(1, 2_000_000 // (2 * K + 1))
    vals = np.concatenate([periodize(cross, K, grid[i:i + chunk])
                           for i in range(0, len(grid), chunk)])
    return GridFunction(float(start), float(length / size), vals)


def _is_power(r: int, N: int) -> bool:
    while r > 1 and r % N == 0:
        r //= N
    return r == 1


def cascade_domain(m0: Filter) -> tuple[int, int]:
    """Integer interval holding every cascade iterate started from ``[0, 1)``."""
    lo, hi = m0.m0.support
    N = m0.N
    return min(0, lo // (N - 1)), max(1, -(-hi // (N - 1)))


def cascade_time(m0: Filter, iters: int, resolution: int,
                 initial: GridFunction | None = None) -> GridFunction:
    """Iterate ``M psi(x) = sqrt(N) * sum_k a_k psi(N x - k)`` on a grid.

    ``resolution`` is the number of samples per unit length and must be a
    power of ``N`` so that ``x -> N x - k`` maps grid points onto grid points.
    The default start is the box ``chi_[0, 1)``; a custom ``initial`` must
    live on the grid returned for ``iters=0``.
    """
    if iters < 0:
        raise ValueError("iters must be non-negative")
    N = m0.N
    if resolution < 1 or not _is_power(resolution, N):
        raise ValueError(f"resolution {resolution} is not a power of N={N}")
    a, b = cascade_domain(m0)
    npts = (b - a) * resolution
    idx = np.arange(npts)
    if initial is None:
        x = a + idx / resolution
        psi = ((x >= 0) & (x < 1)).astype(complex)
    else:
        if len(initial) != npts or initial.domain_start != a or initial.step != 1 / resolution:
            raise ValueError("initial grid does not match the cascade grid")
        psi = np.asarray(initial.values, dtype=complex).copy()

    taps = [(k, complex(c)) for k, c in m0.m0.as_dict().items() if c != 0]
    rootN = np.sqrt(N)
    for _ in range(iters):
        new = np.zeros(npts, dtype=complex)
        # grid index of N*x - k where x = a + i/resolution
        base = N * idx + (N - 1) * a * resolution
        for k, c in taps:
            j = base - k * resolution
            ok = (j >= 0) & (j < npts)
            new[ok] += c * psi[j[ok]]
        psi = rootN * new
    return GridFunction(float(a), 1.0 / resolution, psi)
