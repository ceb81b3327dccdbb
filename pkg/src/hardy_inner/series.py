"""Truncated power series as elements of H^2_omega.

A :class:`SeriesFn` stores coefficients ``a_0..a_N`` together with the weight
sequence of the space it lives in.  The weighted inner product is

    <f, g> = sum_n omega_n a_n conj(b_n)

and the monomials ``e_n = z^n / sqrt(omega_n)`` form an orthonormal basis.
Everything else in the package is built on the handful of functions here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Iterable

import numpy as np

from .errors import OutsideDomain, SpaceMismatch, ZeroVector
from .weights import HARDY, WeightSequence, make_weight

DEFAULT_N = 2048
BOUNDARY_SLACK = 1e-12


@dataclass(frozen=True)
class TruncationBudget:
    """Series degree ``N`` and the tail mass callers are prepared to drop."""

    N: int = DEFAULT_N
    tail_tol: float = 1e-12

    def __post_init__(self):
        if self.N < 16:
            raise ValueError(f"truncation degree must be >= 16, got {self.N}")
        if not self.tail_tol > 0:
            raise ValueError("tail_tol must be positive")


class SeriesFn:
    """Immutable truncated power series ``sum_{n<=N} a_n z^n`` in a weighted space.

    ``tail`` is an estimate of the norm of the discarded part of the exact
    function (0 for polynomials that fit in the truncation).
    """

    __slots__ = ("coeffs", "weight", "tail")

    def __init__(self, coeffs: Iterable[complex], weight: WeightSequence = HARDY, tail: float = 0.0):
        c = np.array(coeffs, dtype=complex).ravel()
        if c.size == 0:
            c = np.zeros(1, dtype=complex)
        c.flags.writeable = False
        object.__setattr__(self, "coeffs", c)
        object.__setattr__(self, "weight", weight)
        object.__setattr__(self, "tail", float(tail))

    def __setattr__(self, name, value):
        raise AttributeError("SeriesFn is immutable")

    @property
    def N(self) -> int:
        return self.coeffs.size - 1

    def __len__(self) -> int:
        return self.coeffs.size

    def __repr__(self) -> str:
        head = ", ".join(f"{c:.4g}" for c in self.coeffs[:4])
        more = ", ..." if self.coeffs.size > 4 else ""
        return f"SeriesFn([{head}{more}], N={self.N}, weight={self.weight.kind})"

    # arithmetic ------------------------------------------------------------

    def _binary(self, other, op):
        if isinstance(other, SeriesFn):
            _check_space(self, other)
            a, b = _padded(self.coeffs, other.coeffs)
            return SeriesFn(op(a, b), self.weight, self.tail + other.tail)
        # a scalar stands for the constant function
        c = np.array(self.coeffs)
        c[0] = op(c[0], other)
        return SeriesFn(c, self.weight, self.tail)

    def __add__(self, other):
        return self._binary(other, np.add)

    __radd__ = __add__

    def __sub__(self, other):
        return self._binary(other, np.subtract)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return SeriesFn(-self.coeffs, self.weight, self.tail)

    def __mul__(self, other):
        if isinstance(other, SeriesFn):
            return mul(self, other)
        return SeriesFn(self.coeffs * other, self.weight, self.tail * abs(other))

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return SeriesFn(self.coeffs / scalar, self.weight, self.tail / abs(scalar))

    def __call__(self, z):
        return evaluate(self, z)

    # conveniences ----------------------------------------------------------

    def padded(self, N: int) -> SeriesFn:
        """Same function with exactly ``N + 1`` coefficients (zero-padded or cut)."""
        c = np.zeros(N + 1, dtype=complex)
        k = min(N + 1, self.coeffs.size)
        c[:k] = self.coeffs[:k]
        return SeriesFn(c, self.weight, self.tail)

    def with_weight(self, weight: WeightSequence) -> SeriesFn:
        return SeriesFn(self.coeffs, weight, self.tail)

    def to_json(self) -> dict[str, Any]:
        return {
            "weight": self.weight.descriptor(),
            "coeffs": [[float(c.real), float(c.imag)] for c in self.coeffs],
        }

    @classmethod
    def from_json(cls, payload: dict[str, Any]) -> SeriesFn:
        if not isinstance(payload, dict) or "coeffs" not in payload:
            raise ValueError("series JSON needs a 'coeffs' field")
        weight = make_weight(payload.get("weight", "hardy"))
        raw = payload["coeffs"]
        try:
            coeffs = [complex(re, im) for re, im in raw]
        except (TypeError, ValueError) as exc:
            raise ValueError("series 'coeffs' must be a list of [re, im] pairs") from exc
        return cls(coeffs, weight)


def _padded(a: np.ndarray, b: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    if a.size == b.size:
        return a, b
    n = max(a.size, b.size)
    aa = np.zeros(n, dtype=complex)
    bb = np.zeros(n, dtype=complex)
    aa[: a.size] = a
    bb[: b.size] = b
    return aa, bb


def _check_space(f: SeriesFn, g: SeriesFn) -> None:
    if f.weight is not g.weight and f.weight != g.weight:
        raise SpaceMismatch(f"series live in different spaces: {f.weight} vs {g.weight}")


# constructors ---------------------------------------------------------------


def monomial(n: int, weight: WeightSequence = HARDY, coeff: complex = 1.0) -> SeriesFn:
    c = np.zeros(n + 1, dtype=complex)
    c[n] = coeff
    return SeriesFn(c, weight)


def basis_vector(n: int, weight: WeightSequence = HARDY) -> SeriesFn:
    """Orthonormal basis element ``e_n = z^n / sqrt(omega_n)``."""
    return monomial(n, weight, 1.0 / math.sqrt(weight(n)))


def polynomial(coeffs: Iterable[complex], weight: WeightSequence = HARDY) -> SeriesFn:
    return SeriesFn(coeffs, weight)


# inner product space operations ------------------------------------------


def inner_product(f: SeriesFn, g: SeriesFn) -> complex:
    """Weighted inner product ``sum_n omega_n a_n conj(b_n)`` (shorter series zero-padded)."""
    _check_space(f, g)
    n = min(f.coeffs.size, g.coeffs.size)
    w = f.weight.values(n)
    return complex(np.sum(w * f.coeffs[:n] * np.conj(g.coeffs[:n])))


def norm(f: SeriesFn) -> float:
    w = f.weight.values(f.coeffs.size)
    return math.sqrt(float(np.sum(w * (f.coeffs.real**2 + f.coeffs.imag**2))))


def normalize(f: SeriesFn) -> SeriesFn:
    nrm = norm(f)
    if nrm == 0.0:
        raise ZeroVector("cannot normalise the zero function")
    return f / nrm


def mul(f: SeriesFn, g: SeriesFn, exact: bool = False) -> SeriesFn:
    """Cauchy product.

    Truncated to the longer of the two inputs unless ``exact`` is set, in
    which case all ``deg f + deg g + 1`` coefficients are kept.
    """
    _check_space(f, g)
    prod = np.convolve(f.coeffs, g.coeffs)
    if not exact:
        prod = prod[: max(f.coeffs.size, g.coeffs.size)]
    return SeriesFn(prod, f.weight)


def shift(f: SeriesFn, m: int) -> SeriesFn:
    """Exact multiplication by ``z^m`` (the series grows by m coefficients)."""
    if m < 0:
        raise ValueError("shift must be nonnegative")
    return SeriesFn(np.concatenate((np.zeros(m, dtype=complex), f.coeffs)), f.weight, f.tail)


# evaluation -----------------------------------------------------------------


def _horner(c: np.ndarray, z):
    z = np.asarray(z, dtype=complex)
    acc = np.zeros_like(z)
    for a in c[::-1]:
        acc = acc * z + a
    return acc


def _check_domain(z) -> None:
    if np.any(np.abs(z) > 1.0 + BOUNDARY_SLACK):
        raise OutsideDomain("evaluation point outside the closed unit disk")


def _trimmed(c: np.ndarray) -> np.ndarray:
    nz = np.flatnonzero(c)
    return c[: nz[-1] + 1] if nz.size else c[:1]


def evaluate(f: SeriesFn, z):
    """Evaluate the truncated series at ``z`` (scalar or array, ``|z| <= 1``).

    On ``|z| = 1`` the value is that of the truncated polynomial and is only
    as good as the decay of the coefficients.
    """
    _check_domain(z)
    out = _horner(_trimmed(f.coeffs), z)
    return complex(out) if np.ndim(out) == 0 else out


def deriv_coeffs(c: np.ndarray, order: int) -> np.ndarray:
    if order == 0:
        return np.asarray(c)
    n = np.arange(order, c.size, dtype=float)
    fall = np.ones_like(n)
    for j in range(order):
        fall *= n - j
    return c[order:] * fall


def eval_deriv(f: SeriesFn, z, order: int):
    """``order``-th derivative of the truncated series at ``z``."""
    if order < 0:
        raise ValueError("derivative order must be nonnegative")
    _check_domain(z)
    c = deriv_coeffs(_trimmed(f.coeffs), order)
    if c.size == 0:
        return 0j if np.ndim(z) == 0 else np.zeros(np.shape(z), dtype=complex)
    out = _horner(c, z)
    return complex(out) if np.ndim(out) == 0 else out
