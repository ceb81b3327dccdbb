"""Reproducing kernels and their conjugate derivatives.

For ``|lam| < 1`` the kernel ``K_lam`` satisfies ``<h, K_lam> = h(lam)`` and
its derivative ``K^(l)_lam`` (taken in ``conj(lam)``) reproduces ``h^(l)(lam)``.
In coefficients::

    K^(l)_lam(z) = sum_{n>=l} (n)_l conj(lam)^(n-l) z^n / omega_n

with ``(n)_l = n (n-1) ... (n-l+1)``.  Coefficients are generated directly;
nothing here differentiates numerically.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np

from .errors import OutsideDomain
from .series import DEFAULT_N, SeriesFn, eval_deriv
from .weights import WeightSequence

log = logging.getLogger(__name__)

MAX_ORDER = 8


@dataclass(frozen=True)
class KernelSpec:
    """Kernel ``K^(order)_point``."""

    point: complex
    order: int = 0
    max_order: int = MAX_ORDER

    def __post_init__(self):
        object.__setattr__(self, "point", complex(self.point))
        if not abs(self.point) < 1.0:
            raise OutsideDomain(f"kernel point {self.point} not in the open unit disk")
        if not 0 <= self.order <= self.max_order:
            raise ValueError(f"derivative order {self.order} outside [0, {self.max_order}]")


def _falling(n: np.ndarray, order: int) -> np.ndarray:
    out = np.ones(n.shape, dtype=float)
    for j in range(order):
        out *= n - j
    return out


def _conj_powers(lam: complex, order: int, count: int) -> np.ndarray:
    """``conj(lam)^(n-order)`` for n < count, zero for n < order."""
    out = np.zeros(count, dtype=complex)
    if count > order:
        e = np.arange(count - order)
        out[order:] = np.conj(lam) ** e
    return out


def kernel_coeffs(w: WeightSequence, spec: KernelSpec, N: int = DEFAULT_N, tail_tol: float = 1e-12) -> SeriesFn:
    """Truncated series of ``K^(l)_lam`` in the space with weight ``w``.

    The returned series carries an estimate of the discarded tail norm in
    ``.tail``; a warning is logged when it exceeds ``tail_tol``.
    """
    lam, order = spec.point, spec.order
    n = np.arange(N + 1, dtype=float)
    omega = w.values(N + 1)
    c = _falling(n, order) * _conj_powers(lam, order, N + 1) / omega
    tail = _tail_estimate(w, lam, order, N)
    if tail > tail_tol:
        log.warning("kernel at %s (order %d) truncated at N=%d: tail ~ %.2e", lam, order, N, tail)
    return SeriesFn(c, w, tail)


def _tail_estimate(w: WeightSequence, lam: complex, order: int, N: int) -> float:
    # norm^2 of the discarded part: sum_{n>N} (n)_l^2 |lam|^(2(n-l)) / omega_n,
    # bounded by the first omitted term times a geometric factor
    r = abs(lam)
    if r == 0.0:
        return 0.0
    m = np.arange(N + 1, N + 3, dtype=float)
    omega = w.values(N + 3)[N + 1 :]
    with np.errstate(under="ignore"):
        terms = _falling(m, order) ** 2 * r ** (2 * (m - order)) / omega
    if terms[0] == 0.0:
        return 0.0
    q = terms[1] / terms[0]
    if q >= 1.0:
        return math.inf
    return math.sqrt(terms[0] / (1.0 - q))


def kernel_gram_entry(w: WeightSequence, s1: KernelSpec, s2: KernelSpec, N: int = DEFAULT_N) -> complex:
    """``<K^(l1)_lam1, K^(l2)_lam2>`` by direct summation over the series index."""
    n = np.arange(N + 1, dtype=float)
    terms = (
        _falling(n, s1.order)
        * _falling(n, s2.order)
        * _conj_powers(s1.point, s1.order, N + 1)
        * np.conj(_conj_powers(s2.point, s2.order, N + 1))
        / w.values(N + 1)
    )
    return complex(np.sum(terms))


def adjoint_on_kernel(f: SeriesFn, spec: KernelSpec, N: int = DEFAULT_N) -> SeriesFn:
    """Adjoint of multiplication by ``f`` applied to ``K^(l)_lam``.

    Returns ``sum_{j<=l} binom(l, j) conj(f^(j)(lam)) K^(l-j)_lam``.
    """
    w = f.weight
    lam, order = spec.point, spec.order
    total = np.zeros(N + 1, dtype=complex)
    for j in range(order + 1):
        fj = eval_deriv(f, lam, j)
        kern = kernel_coeffs(w, KernelSpec(lam, order - j, spec.max_order), N)
        total += math.comb(order, j) * np.conj(fj) * kern.coeffs
    return SeriesFn(total, w)
