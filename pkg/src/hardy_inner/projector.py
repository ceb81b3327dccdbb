"""Gram matrices, Gram determinants and projections onto orthogonal complements.

Kernel families are badly conditioned once points cluster or approach the
circle, so conditioning is measured on the diagonally equilibrated Gram
matrix ``G_ij / sqrt(G_ii G_jj)``; its determinant lies in (0, 1] and equals
``det G / prod G_ii``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np
import scipy.linalg

from .errors import IllConditionedGram, SpaceMismatch, UseProjectionPath
from .series import SeriesFn, inner_product

COND_MAX = 1e12
DET_MIN = 1e-14
DETERMINANT_PATH_MAX = 6


@dataclass
class GramSystem:
    """Gram matrix ``G_ij = <v_i, v_j>`` of ``basis``.

    ``rhs`` (``<v, v_i>``) and ``target`` are filled in when the system was
    assembled for a projection.  ``condition`` and ``normalized_det`` refer
    to the equilibrated matrix.
    """

    G: np.ndarray
    basis: list
    det: float
    normalized_det: float
    condition: float
    rank: int
    rhs: np.ndarray | None = None
    target: SeriesFn | None = None

    def check(self, cond_max: float = COND_MAX, det_min: float = DET_MIN) -> None:
        if not (self.condition <= cond_max) or self.normalized_det < det_min:
            raise IllConditionedGram(self.condition, self.normalized_det)


def _stack(vs: Sequence[SeriesFn], length: int | None = None) -> tuple[np.ndarray, np.ndarray]:
    w = vs[0].weight
    for v in vs[1:]:
        if v.weight != w:
            raise SpaceMismatch("Gram family mixes spaces")
    L = length or max(v.coeffs.size for v in vs)
    V = np.zeros((len(vs), L), dtype=complex)
    for i, v in enumerate(vs):
        k = min(L, v.coeffs.size)
        V[i, :k] = v.coeffs[:k]
    return V, w.values(L)


def _equilibrated(G: np.ndarray) -> np.ndarray:
    d = np.sqrt(np.real(np.diag(G)))
    with np.errstate(divide="ignore", invalid="ignore"):
        Gs = G / np.outer(d, d)
    return Gs


def _pivoted_rank(Gs: np.ndarray, tol: float = 1e-12) -> int:
    if not np.all(np.isfinite(Gs)):
        return int(np.count_nonzero(np.isfinite(np.diag(Gs))))
    _, _, rank, _ = scipy.linalg.lapack.zpstrf(np.array(Gs, dtype=complex), tol=tol, lower=0)
    return int(rank)


def gram_matrix(vs: Sequence[SeriesFn]) -> GramSystem:
    """Assemble the Gram matrix of ``vs`` with determinant, rank and condition."""
    if len(vs) == 0:
        raise ValueError("gram_matrix needs at least one vector")
    V, w = _stack(vs)
    G = (V * w) @ V.conj().T
    G = 0.5 * (G + G.conj().T)
    Gs = _equilibrated(G)
    if np.all(np.isfinite(Gs)):
        ndet = float(np.real(np.linalg.det(Gs)))
        cond = float(np.linalg.cond(Gs))
    else:
        ndet, cond = 0.0, np.inf
    det = float(np.real(np.linalg.det(G)))
    return GramSystem(G, list(vs), det, max(ndet, 0.0), cond, _pivoted_rank(Gs))


def projection_coefficients(
    v: SeriesFn, vs: Sequence[SeriesFn], method: str = "normal", cond_max: float = COND_MAX
) -> tuple[np.ndarray, GramSystem]:
    """Coefficients ``c`` with ``P_span(v) = sum_j c_j v_j``.

    ``method="normal"`` solves the normal equations ``conj(G) c = <v, v_i>``
    by Cholesky on the equilibrated matrix (LDL^H if Cholesky fails).
    ``method="qr"`` solves the equivalent weighted least-squares problem
    ``min ||v - sum c_j v_j||`` by QR of the weighted coefficient matrix,
    which squares less of the condition number.
    """
    gs = gram_matrix(vs)
    gs.check(cond_max)
    L = max(v.coeffs.size, max(u.coeffs.size for u in vs))
    V, w = _stack(list(vs), L)
    x = np.zeros(L, dtype=complex)
    x[: v.coeffs.size] = v.coeffs
    gs.rhs = (V.conj() * w) @ x  # <v, v_i>
    gs.target = v
    if method == "normal":
        d = np.sqrt(np.real(np.diag(gs.G)))
        A = np.conj(gs.G) / np.outer(d, d)
        b = gs.rhs / d
        try:
            y = scipy.linalg.cho_solve(scipy.linalg.cho_factor(A), b)
        except np.linalg.LinAlgError:
            y = scipy.linalg.solve(A, b, assume_a="her")
        return y / d, gs
    if method == "qr":
        sw = np.sqrt(w)
        A = (V * sw).T
        scale = np.linalg.norm(A, axis=0)
        Q, R = np.linalg.qr(A / scale)
        y = scipy.linalg.solve_triangular(R, Q.conj().T @ (x * sw))
        return y / scale, gs
    raise ValueError(f"unknown method {method!r}")


def project_complement(
    v: SeriesFn, vs: Sequence[SeriesFn], method: str = "normal", cond_max: float = COND_MAX
) -> SeriesFn:
    """Orthogonal projection of ``v`` onto the complement of ``span(vs)``.

    Raises
    ------
    IllConditionedGram
        Equilibrated Gram condition above ``cond_max`` or numerically
        dependent family.  The error carries both estimates.
    """
    if len(vs) == 0:
        return v
    c, _ = projection_coefficients(v, vs, method, cond_max)
    L = max(v.coeffs.size, max(u.coeffs.size for u in vs))
    out = np.zeros(L, dtype=complex)
    out[: v.coeffs.size] = v.coeffs
    for cj, u in zip(c, vs):
        out[: u.coeffs.size] -= cj * u.coeffs
    return SeriesFn(out, v.weight)


def shapiro_shields_vector(v: SeriesFn, vs: Sequence[SeriesFn]) -> SeriesFn:
    """Formal determinant ``D(v; v_1, ..., v_s)`` with vectors in the first column.

    Expanded along the first column; scalar entries in row 0 are ``<v, v_j>``
    and in row i are ``<v_i, v_j>``.  ``D`` is orthogonal to every ``v_j``
    and equals ``det G(v_1..v_s)`` times the complement projection of ``v``.
    """
    s = len(vs)
    if s > DETERMINANT_PATH_MAX:
        raise UseProjectionPath(f"cofactor expansion limited to s <= {DETERMINANT_PATH_MAX}, got {s}")
    if s == 0:
        return v
    rows = [v, *vs]
    S = np.array([[inner_product(r, u) for u in vs] for r in rows], dtype=complex)
    L = max(r.coeffs.size for r in rows)
    out = np.zeros(L, dtype=complex)
    for i, r in enumerate(rows):
        minor = np.linalg.det(np.delete(S, i, axis=0))
        out[: r.coeffs.size] += (-1) ** i * minor * r.coeffs
    return SeriesFn(out, v.weight)
