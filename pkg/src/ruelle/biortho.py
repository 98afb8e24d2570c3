"""Orthogonality and biorthogonality criteria for scaling filters.

The verdicts combine three finite checks:

* the QMF identity ``R_{m0, m0p} 1 = 1``;
* the zero conditions ``m0(0) = sqrt(N)`` and ``m0(2*pi*k/N) = 0`` for ``k = 1..N-1``;
* one-dimensionality of the eigenvalue-1 space of the transfer matrix,
  spanned by the constant.

Analytic hypotheses about the scaling functions themselves (Riesz bounds,
continuity of their transforms at the origin) cannot be decided from the
filter coefficients; reports list them under ``assumptions``.
"""
from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np
import scipy.linalg

from .laurent import LaurentPoly, evaluate, max_coeff_diff
from .transfer import Filter, fixed_space, lawton_matrix, ruelle_apply

ASSUMPTIONS = (
    "integer translates of both scaling functions form Riesz bases (not verified)",
    "scaling-function transforms are continuous at 0 (not verified)",
    "only trigonometric-polynomial fixed points are examined; "
    "continuous non-polynomial solutions are assumed absent",
)

#: Angle bound between a one-dimensional fixed space and the constants.
CONSTANT_ANGLE_TOL = 1e-7
#: Singular values within this factor of the rank cut make the rank ambiguous.
AMBIGUITY_FACTOR = 10.0


class Verdict(str, enum.Enum):
    ORTHOGONAL = "Orthogonal"
    BIORTHOGONAL = "Biorthogonal"
    INCONCLUSIVE = "Inconclusive"
    FAILS = "Fails"


class Check(NamedTuple):
    holds: bool
    residual: float


class ZeroCheck(NamedTuple):
    holds: bool
    residuals: list[float]


@dataclass(frozen=True)
class Detail:
    name: str
    residual: float
    holds: bool


@dataclass
class CriterionReport:
    qmf_holds: bool
    zero_conditions_hold: bool
    eigenvalue1_dimension: int
    verdict: Verdict
    details: list[Detail] = field(default_factory=list)
    assumptions: list[str] = field(default_factory=lambda: list(ASSUMPTIONS))

    def to_json_obj(self) -> dict:
        return {"verdict": self.verdict.value, "qmf": self.qmf_holds,
                "zero_conditions": self.zero_conditions_hold,
                "dim": self.eigenvalue1_dimension,
                "assumptions": list(self.assumptions),
                "details": [{"name": d.name, "residual": d.residual, "holds": d.holds}
                            for d in self.details]}

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())


def qmf_check(m0: Filter, m0p=None, tol: float = 1e-9) -> Check:
    """Whether ``R_{m0, m0p} 1 = 1`` coefficient-wise within ``tol``."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    if m0p is None:
        m0p = m0
    r1 = ruelle_apply(m0, m0p, LaurentPoly.constant(1.0))
    res = max_coeff_diff(r1, LaurentPoly.constant(1.0))
    return Check(res <= tol, res)


def zero_conditions(m0: Filter, tol: float = 1e-9) -> ZeroCheck:
    """Residuals of ``m0(0) = sqrt(N)`` followed by ``m0(2*pi*k/N) = 0``, ``k = 1..N-1``."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    N = m0.N
    res = [abs(evaluate(m0.m0, 0.0) - np.sqrt(N))]
    res += [abs(evaluate(m0.m0, 2 * np.pi * k / N)) for k in range(1, N)]
    res = [float(r) for r in res]
    return ZeroCheck(all(r <= tol for r in res), res)


def _rank_margin(singular_values, tol: float) -> float:
    """Smallest factor separating a singular value from the rank cut."""
    s = np.asarray(singular_values)
    if s.size == 0 or s[0] == 0:
        return np.inf
    cut = tol * s[0]
    with np.errstate(divide="ignore"):
        ratios = np.maximum(s / cut, cut / s)
    return float(np.min(ratios))


def _constant_angle(vectors: np.ndarray, d: int) -> float:
    const = np.zeros((2 * d + 1, 1), dtype=complex)
    const[d, 0] = 1.0
    return float(np.max(scipy.linalg.subspace_angles(vectors, const)))


def _criterion(m0: Filter, m0p: Filter, tol: float, diagonal: bool) -> CriterionReport:
    details: list[Detail] = []
    qmf = qmf_check(m0, m0p, tol)
    details.append(Detail("qmf", qmf.residual, qmf.holds))

    zeros_ok = True
    for label, f in (("m0", m0),) if diagonal else (("m0", m0), ("m0p", m0p)):
        zc = zero_conditions(f, tol)
        zeros_ok &= zc.holds
        names = ["value_at_0"] + [f"zero_at_2pi*{k}/{f.N}" for k in range(1, f.N)]
        for name, r in zip(names, zc.residuals):
            details.append(Detail(f"{label}.{name}", r, r <= tol))

    M = lawton_matrix(m0, m0p)
    fs = fixed_space(M, 1.0, tol)
    details.append(Detail("fixed_space.max_residual",
                          max(fs.residuals) if fs.residuals else 0.0, True))
    margin = _rank_margin(fs.singular_values, tol)
    ambiguous = margin < AMBIGUITY_FACTOR
    details.append(Detail("fixed_space.rank_margin", margin, not ambiguous))

    spanned_by_constant = False
    if fs.dim == 1:
        angle = _constant_angle(fs.vectors, fs.d)
        spanned_by_constant = angle <= CONSTANT_ANGLE_TOL
        details.append(Detail("fixed_space.angle_to_constant", angle, spanned_by_constant))

    success = Verdict.ORTHOGONAL if diagonal else Verdict.BIORTHOGONAL
    if not qmf.holds:
        verdict = Verdict.FAILS
    elif ambiguous:
        verdict = Verdict.INCONCLUSIVE
    elif zeros_ok and fs.dim == 1 and spanned_by_constant:
        verdict = success
    else:
        verdict = Verdict.FAILS
    return CriterionReport(qmf.holds, zeros_ok, fs.dim, verdict, details)


def orthogonality_verdict(m0: Filter, tol: float = 1e-9) -> CriterionReport:
    """Lawton-type test: orthonormal translates iff the QMF identity holds and
    the constant spans the eigenvalue-1 space of ``R_{m0, m0}``."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    return _criterion(m0, m0, tol, diagonal=True)


def biorthogonality_verdict(m0: Filter, m0p: Filter, tol: float = 1e-9) -> CriterionReport:
    if tol <= 0:
        raise ValueError("tol must be positive")
    if m0.N != m0p.N:
        raise ValueError(f"filters have different scales {m0.N} and {m0p.N}")
    return _criterion(m0, m0p, tol, diagonal=False)


@dataclass(frozen=True)
class BoundReport:
    c_max: float
    violations: int
    checked: int

    def to_json_obj(self) -> dict:
        return {"c_max": self.c_max, "violations": self.violations, "checked": self.checked}


def cross_bound_check(h0: LaurentPoly, h: LaurentPoly, hp: LaurentPoly,
                      grid_size: int = 256, floor_eps: float = 1e-8) -> BoundReport:
    """Test the domination pattern ``|h0|**2 <= c * h * hp`` on a uniform grid.

    ``c_max`` is the largest ratio over grid points where ``h * hp >= floor_eps``.
    A violation is a grid point where ``h * hp`` drops below ``floor_eps`` while
    ``|h0|**2`` does not.
    """
    if grid_size < 16:
        raise ValueError("grid_size must be at least 16")
    if floor_eps <= 0:
        raise ValueError("floor_eps must be positive")
    theta = 2 * np.pi * np.arange(grid_size) / grid_size
    hv = evaluate(h, theta)
    hpv = evaluate(hp, theta)
    for name, v in (("h", hv), ("hp", hpv)):
        if np.max(np.abs(v.imag)) > 1e-10:
            raise ValueError(f"{name} is not real-valued on the circle")
    prod = hv.real * hpv.real
    num = np.abs(evaluate(h0, theta)) ** 2
    dominated = prod >= floor_eps
    c_max = float(np.max(num[dominated] / prod[dominated])) if np.any(dominated) else 0.0
    violations = int(np.sum(~dominated & (num >= floor_eps)))
    return BoundReport(c_max, violations, int(np.sum(dominated)))
