"""Numerical tests for H^2_omega-inner functions.

A unit vector ``f`` is inner when ``<z^m f, f> = 0`` for every ``m >= 1``.
Three equivalent forms are tested independently:

* growth of ``phi_k(lam) = ||f (z^k + lam)||^2 - |lam|^2``, which is affine
  along the ray ``lam = t <z^k f, f>`` with slope ``2 |<z^k f, f>|^2``, so it
  is bounded on one side only for inner f;
* the expansive inequality ``|p(0)| <= ||p f||`` over polynomials p;
* ``M_f^* M_f 1 = 1``, with ``M_f^* M_f 1 = sum_m <f, z^m f> z^m / omega_m``.

Every test is run on a finite set of powers, rays and polynomials, so a
passing verdict is a truncated statement.
"""

from __future__ import annotations

import enum
import math
from dataclasses import asdict, dataclass, field
from typing import NamedTuple, Sequence

import numpy as np

from .errors import ZeroVector
from .kernels import KernelSpec, kernel_coeffs
from .projector import project_complement
from .series import DEFAULT_N, SeriesFn, monomial, norm, shift
from .weights import WeightSequence

DEFAULT_M = 64
DEFAULT_TOL = 1e-8
DEFAULT_K = 8


def lagged_products(f: SeriesFn, M: int) -> np.ndarray:
    """``<z^m f, f>`` for ``m = 0..M``, summed exactly over the stored coefficients."""
    a = f.coeffs
    n = a.size
    w = f.weight.values(n + M + 1)
    out = np.zeros(M + 1, dtype=complex)
    for m in range(min(M, n - 1) + 1):
        out[m] = np.sum(w[m:n] * a[: n - m] * np.conj(a[m:]))
    return out


class DefinitionCheck(NamedTuple):
    norm_dev: float
    ortho_defect: float


def check_definition(f: SeriesFn, M: int = DEFAULT_M) -> DefinitionCheck:
    """``(| ||f|| - 1 |, max_{1<=m<=M} |<z^m f, f>|)``."""
    lp = lagged_products(f, M)
    nrm2 = lp[0].real
    if nrm2 == 0.0:
        raise ZeroVector("inner-ness of the zero function is undefined")
    defect = float(np.max(np.abs(lp[1:]))) if M >= 1 else 0.0
    return DefinitionCheck(abs(math.sqrt(nrm2) - 1.0), defect)


def shifted_norm2(f: SeriesFn, k: int) -> float:
    """``||z^k f||^2`` computed without truncation."""
    a = f.coeffs
    w = f.weight.values(a.size + k)[k:]
    return float(np.sum(w * np.abs(a) ** 2))


def phi_k(f: SeriesFn, k: int, lam: complex) -> float:
    """``||z^k f||^2 + 2 Re(conj(lam) <z^k f, f>)``."""
    if k < 1:
        raise ValueError("k must be >= 1")
    c = lagged_products(f, k)[k]
    return shifted_norm2(f, k) + 2.0 * float(np.real(np.conj(lam) * c))


def phi_k_raw(f: SeriesFn, k: int, lam: complex) -> float:
    """``||f (z^k + lam)||^2 - |lam|^2``; agrees with :func:`phi_k` when ``||f|| = 1``."""
    g = shift(f, k) + lam * f.padded(f.N + k)
    return norm(g) ** 2 - abs(lam) ** 2


def phi_slope(f: SeriesFn, k: int, direction=None, ts: Sequence[float] | None = None) -> float:
    """Fitted linear coefficient of ``t -> phi_k_raw(f, k, t * direction)``.

    ``direction`` defaults to ``<z^k f, f>`` (slope ``2 |<z^k f, f>|^2``);
    pass ``"unit"`` for the unit vector along it (slope ``2 |<z^k f, f>|``).
    A quadratic is fitted so a stray ``(||f||^2 - 1) |lam|^2`` term does not
    leak into the slope.
    """
    c = lagged_products(f, k)[k]
    if direction is None:
        d = c
    elif isinstance(direction, str) and direction == "unit":
        d = c / abs(c) if c != 0 else 1.0
    else:
        d = complex(direction)
    t = np.linspace(-2.0, 2.0, 9) if ts is None else np.asarray(ts, dtype=float)
    y = np.array([phi_k_raw(f, k, ti * d) for ti in t])
    return float(np.polyfit(t, y, 2)[1])


def phi_norm_ratio(f: SeriesFn, k: int, lam: complex) -> float:
    """``||f g_{k,lam}||^2 / |lam|^2``, which tends to ``||f||^2`` as ``|lam| -> oo``."""
    return (phi_k_raw(f, k, lam) + abs(lam) ** 2) / abs(lam) ** 2


def _shifted_rows(f: SeriesFn, degree: int) -> np.ndarray:
    n = f.coeffs.size
    rows = np.zeros((degree + 1, n + degree), dtype=complex)
    for j in range(degree + 1):
        rows[j, j : j + n] = f.coeffs
    return rows


def check_expansive_inequality(
    f: SeriesFn,
    trials: int = 1000,
    degree: int = 8,
    tol: float = 1e-9,
    seed: int = 0,
    probes: bool = True,
) -> int:
    """Count polynomials p with ``|p(0)| > ||p f|| + tol``.

    ``trials`` random complex-Gaussian polynomials of the given degree are
    tried, plus (with ``probes``) for each k the polynomial
    ``1 - conj(<z^k f, f>) z^k / ||z^k f||^2``, which minimises ``||p f||``
    over ``1 + mu z^k`` and is where violations of non-inner f appear.
    """
    rng = np.random.default_rng(seed)
    P = rng.standard_normal((trials, degree + 1)) + 1j * rng.standard_normal((trials, degree + 1))
    if probes:
        lp = lagged_products(f, degree)
        extra = np.zeros((degree, degree + 1), dtype=complex)
        extra[:, 0] = 1.0
        for k in range(1, degree + 1):
            s = shifted_norm2(f, k)
            extra[k - 1, k] = -np.conj(lp[k]) / s if s > 0 else 0.0
        P = np.vstack([P, extra])
    rows = _shifted_rows(f, degree)
    w = f.weight.values(rows.shape[1])
    PF = P @ rows
    pf_norm = np.sqrt(np.sum(w * (PF.real**2 + PF.imag**2), axis=1))
    return int(np.count_nonzero(np.abs(P[:, 0]) > pf_norm + tol))


def mstar_mf_one(f: SeriesFn, M: int = DEFAULT_M) -> SeriesFn:
    """``M_f^* M_f 1`` truncated to ``z^M``: ``sum_m <f, z^m f> z^m / omega_m``."""
    lp = lagged_products(f, M)
    return SeriesFn(np.conj(lp) / f.weight.values(M + 1), f.weight)


def mstar_residual(f: SeriesFn, M: int = DEFAULT_M) -> float:
    """``||M_f^* M_f 1 - 1||``."""
    g = mstar_mf_one(f, M)
    return norm(g - 1.0)


def extremal_value(
    w: WeightSequence, constraints: Sequence, d: int = 0, N: int = DEFAULT_N
) -> float:
    """Optimal value of ``sup Re <g, z^d>`` over unit g orthogonal to ``constraints``.

    Equals ``||P(z^d)||`` with P the projection onto the complement.
    Constraint entries may be :class:`SeriesFn`, :class:`KernelSpec` or an
    int m standing for the monomial ``z^m``.
    """
    fam = []
    for c in constraints:
        if isinstance(c, SeriesFn):
            fam.append(c)
        elif isinstance(c, KernelSpec):
            fam.append(kernel_coeffs(w, c, N))
        else:
            fam.append(monomial(int(c), w))
    return norm(project_complement(monomial(d, w), fam))


class Verdict(enum.Enum):
    INNER = "Inner"
    NOT_INNER = "NotInner"
    INCONCLUSIVE = "Inconclusive"


@dataclass
class InnerReport:
    norm_dev: float
    ortho_defect: float
    phi_k_drift: dict = field(default_factory=dict)
    mstar_residual: float = 0.0
    expansive_violations: int = 0
    verdict: Verdict = Verdict.INCONCLUSIVE
    tol: float = DEFAULT_TOL
    agreement: bool = True

    def to_json(self) -> dict:
        out = asdict(self)
        out["verdict"] = self.verdict.value
        out["phi_k_drift"] = {str(k): v for k, v in self.phi_k_drift.items()}
        return out


def inner_report(
    f: SeriesFn,
    M: int = DEFAULT_M,
    k_max: int = DEFAULT_K,
    tol: float = DEFAULT_TOL,
    trials: int = 1000,
    degree: int = 8,
    seed: int = 0,
) -> InnerReport:
    """Run all characterisations on ``f`` and reduce them to a verdict.

    The verdict follows ``max(norm_dev, ortho_defect)``: below ``tol`` it is
    Inner, in ``[tol, 100 tol)`` Inconclusive, otherwise NotInner.
    ``agreement`` records whether the phi, expansive and M^*M tests point the
    same way.
    """
    dc = check_definition(f, M)
    drift = {k: phi_slope(f, k, "unit") for k in range(1, k_max + 1)}
    viol = check_expansive_inequality(f, trials, degree, seed=seed)
    resid = mstar_residual(f, M)
    r = max(dc.norm_dev, dc.ortho_defect)
    if r < tol:
        verdict = Verdict.INNER
    elif r < 100 * tol:
        verdict = Verdict.INCONCLUSIVE
    else:
        verdict = Verdict.NOT_INNER
    max_drift = max((abs(v) for v in drift.values()), default=0.0)
    if verdict is Verdict.INNER:
        agreement = max_drift < tol and viol == 0 and resid < tol
    elif verdict is Verdict.NOT_INNER:
        # phi and expansive tests presuppose ||f|| = 1; a norm failure alone is caught by M^*M
        orth_fail = dc.ortho_defect < 100 * tol or (max_drift >= tol and viol > 0)
        agreement = resid >= tol and orth_fail
    else:
        agreement = True
    return InnerReport(dc.norm_dev, dc.ortho_defect, drift, resid, viol, verdict, tol, agreement)
