"""Inner functions from the reproducing kernel of H^2_omega(|b|^2).

``H^2_omega(|b|^2)`` is the closure of the polynomials under
``<f, g>_b = <f b, g b>``.  With ``R0`` its kernel at the origin,
``u = b R0 / ||b R0||`` is H^2_omega-inner, and when ``b = phi F`` with phi
inner and ``[b] = [phi]`` it equals phi up to a unimodular constant.

The space is modelled on polynomials of degree ``<= M_poly``: the moment
matrix ``G_ij = <z^i b, z^j b>`` is the Gram matrix of the monomials, and
``R0`` is the kernel of that finite section.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
import scipy.linalg

from .blaschke import (
    BlaschkeSpec,
    canonical_phase,
    classical_blaschke,
    construct_blaschke_analogue,
    default_grid,
)
from .errors import IllConditionedGram, ZeroVector
from .innercheck import _shifted_rows
from .projector import COND_MAX, _equilibrated
from .series import DEFAULT_N, SeriesFn, evaluate, mul, normalize
from .weights import WeightSequence

log = logging.getLogger(__name__)

DEFAULT_M_POLY = 64
EXCLUSION_RADIUS = 0.05


@dataclass
class MomentMatrix:
    entries: np.ndarray
    b: SeriesFn
    M_poly: int


@dataclass
class KernelAtZero:
    R0: SeriesFn
    residuals: np.ndarray
    condition: float


@dataclass
class RecoveredInner:
    u: SeriesFn
    kernel: KernelAtZero
    M_poly: int


def moment_matrix(b: SeriesFn, M_poly: int = DEFAULT_M_POLY) -> MomentMatrix:
    """``G_ij = <z^i b, z^j b>`` for ``0 <= i, j <= M_poly``."""
    if not np.any(b.coeffs):
        raise ZeroVector("b must be nonzero")
    rows = _shifted_rows(b, M_poly)
    w = b.weight.values(rows.shape[1])
    G = (rows * w) @ rows.conj().T
    return MomentMatrix(0.5 * (G + G.conj().T), b, M_poly)


def kernel_at_zero(mm: MomentMatrix, cond_max: float = COND_MAX) -> KernelAtZero:
    """Kernel at 0 of the degree-``M_poly`` section of ``H^2_omega(|b|^2)``.

    With ``R0 = sum_j r_j z^j``, the reproducing identity
    ``<z^i, R0>_b = sum_j G_ij conj(r_j) = delta_i0`` fixes ``conj(r) = G^{-1} e_0``.
    """
    G = mm.entries
    Gs = _equilibrated(G)
    cond = float(np.linalg.cond(Gs))
    if not cond <= cond_max:
        raise IllConditionedGram(cond, float(np.real(np.linalg.det(Gs))))
    d = np.sqrt(np.real(np.diag(G)))
    e0 = np.zeros(G.shape[0], dtype=complex)
    e0[0] = 1.0
    try:
        y = scipy.linalg.cho_solve(scipy.linalg.cho_factor(Gs), e0 / d)
    except np.linalg.LinAlgError as exc:
        raise IllConditionedGram(cond, 0.0) from exc
    rbar = y / d
    residuals = G @ rbar - e0
    return KernelAtZero(SeriesFn(np.conj(rbar), mm.b.weight), residuals, cond)


def inner_from_kernel(
    b: SeriesFn, M_poly: int = DEFAULT_M_POLY, cond_max: float = COND_MAX
) -> RecoveredInner:
    """``u = b R0 / ||b R0||`` with canonical phase.

    ``M_poly`` is halved (with a warning) while the moment matrix is too
    ill-conditioned to solve.
    """
    m = M_poly
    while True:
        try:
            kz = kernel_at_zero(moment_matrix(b, m), cond_max)
            break
        except IllConditionedGram:
            if m <= 1:
                raise
            log.warning("moment matrix ill-conditioned at M_poly=%d; retrying with %d", m, m // 2)
            m //= 2
    u = normalize(mul(b, kz.R0, exact=True))
    return RecoveredInner(u * canonical_phase(u), kz, m)


class HoCheck(NamedTuple):
    deviation: float
    constant: complex
    R0: SeriesFn


def check_ho_analogue(
    w: WeightSequence,
    spec: BlaschkeSpec,
    N: int = DEFAULT_N,
    M_poly: int = DEFAULT_M_POLY,
    grid: np.ndarray | None = None,
) -> HoCheck:
    """Max deviation of ``B/b`` from its best constant multiple of ``R0``.

    ``B`` is the constructed analogue, ``b`` the classical product (both as
    series in the weight-``w`` space) and ``R0`` the kernel at 0 of
    ``H^2_omega(|b|^2)``.  The origin factor ``z^d0`` is divided out of both
    exactly; the quotient is then formed pointwise on ``grid`` minus disks
    of radius ``EXCLUSION_RADIUS`` around the remaining zeros.
    """
    B = construct_blaschke_analogue(w, spec, N).B
    b = classical_blaschke(spec, N, weight=w)
    R0 = kernel_at_zero(moment_matrix(b, M_poly)).R0
    d0 = spec.d0
    Bq = SeriesFn(B.coeffs[d0:], w)
    bq = SeriesFn(b.coeffs[d0:], w)

    pts = default_grid() if grid is None else np.asarray(grid, dtype=complex)
    for z, _ in spec.zeros:
        pts = pts[np.abs(pts - z) >= EXCLUSION_RADIUS]
    q = np.asarray(evaluate(Bq, pts)) / np.asarray(evaluate(bq, pts))
    r = np.asarray(evaluate(R0, pts))
    c = np.sum(np.conj(r) * q) / np.sum(np.abs(r) ** 2)
    return HoCheck(float(np.max(np.abs(q - c * r))), complex(c), R0)
