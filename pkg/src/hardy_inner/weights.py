"""Weight sequences defining the weighted Hardy spaces H^2_omega.

A weight sequence ``omega = (omega_0, omega_1, ...)`` of positive reals
defines the norm ``||f||^2 = sum_n omega_n |a_n|^2`` on power series
``f = sum_n a_n z^n``.  All sequences are normalised to ``omega_0 = 1``.

Builtin kinds
-------------
hardy
    ``omega_n = 1``.
bergman
    ``omega_n = 1/(n+1)``.
dirichlet
    ``omega_n = n+1``.
power
    Kernel ``(1 - conj(lam) z)^(-gamma)``, i.e. ``omega_n = 1/binom(n+gamma-1, n)``.

plus ``explicit`` (user list, held constant past its end) and ``perturbed``
(a base sequence with finitely many entries overridden).
"""

from __future__ import annotations

import enum
import json
import logging
from dataclasses import dataclass, field
from typing import Any, NamedTuple

import numpy as np

from .errors import InvalidWeight, WeightConditionViolation

log = logging.getLogger(__name__)

RATIO_EPS = 0.5
RATIO_WINDOW = 1024
_BUILTIN = ("hardy", "bergman", "dirichlet", "power")


@dataclass(frozen=True)
class WeightSequence:
    """Immutable weight sequence; call ``w(n)`` or ``w.values(count)``.

    Construct through :func:`make_weight` rather than directly so that
    normalisation and the ratio gate are applied.
    """

    kind: str
    gamma: float | None = None
    omega: tuple[float, ...] = ()
    base: WeightSequence | None = None
    overrides: tuple[tuple[int, float], ...] = ()
    rescaled_by: float = field(default=1.0, compare=False)
    _cache: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    def values(self, count: int) -> np.ndarray:
        """Return ``omega_0, ..., omega_{count-1}`` as a read-only float array."""
        cached = self._cache.get("arr")
        if cached is None or cached.size < count:
            size = max(count, 2 * (cached.size if cached is not None else 0), 64)
            cached = self._compute(size)
            cached.flags.writeable = False
            self._cache["arr"] = cached
        return cached[:count]

    def __call__(self, n: int) -> float:
        if n < 0:
            raise IndexError(n)
        return float(self.values(n + 1)[n])

    def _compute(self, size: int) -> np.ndarray:
        n = np.arange(size, dtype=float)
        if self.kind == "hardy":
            return np.ones(size)
        if self.kind == "bergman":
            return 1.0 / (n + 1.0)
        if self.kind == "dirichlet":
            return n + 1.0
        if self.kind == "power":
            # omega_n = omega_{n-1} * n / (n + gamma - 1); avoids large binomials
            steps = n[1:] / (n[1:] + self.gamma - 1.0)
            return np.concatenate(([1.0], np.cumprod(steps)))
        if self.kind == "explicit":
            src = np.asarray(self.omega, dtype=float)
            out = np.full(size, src[-1])
            k = min(size, src.size)
            out[:k] = src[:k]
            return out
        if self.kind == "perturbed":
            out = np.array(self.base.values(size), dtype=float)
            for idx, val in self.overrides:
                if idx < size:
                    out[idx] = val
            return out
        raise InvalidWeight(f"unknown weight kind {self.kind!r}")

    def descriptor(self) -> dict[str, Any]:
        """JSON-serialisable descriptor accepted by :func:`make_weight`."""
        if self.kind == "power":
            return {"kind": "power", "gamma": self.gamma}
        if self.kind == "explicit":
            return {"kind": "explicit", "omega": list(self.omega)}
        if self.kind == "perturbed":
            return {
                "kind": "perturbed",
                "base": self.base.descriptor(),
                "overrides": {str(i): v for i, v in self.overrides},
            }
        return {"kind": self.kind}

    def __str__(self) -> str:
        return json.dumps(self.descriptor(), sort_keys=True)


HARDY = WeightSequence("hardy")
BERGMAN = WeightSequence("bergman")
DIRICHLET = WeightSequence("dirichlet")


def _check_ratio(w: WeightSequence, eps: float = RATIO_EPS, window: int = RATIO_WINDOW) -> None:
    vals = w.values(window + 2)
    lo = window // 2
    ratios = vals[lo + 1 : window + 2] / vals[lo : window + 1]
    bad = np.flatnonzero(np.abs(ratios - 1.0) > eps)
    if bad.size:
        i = int(bad[0])
        raise WeightConditionViolation(lo + i, float(ratios[i]))


def make_weight(spec: Any) -> WeightSequence:
    """Build a :class:`WeightSequence` from a descriptor.

    Parameters
    ----------
    spec : str, dict or WeightSequence
        A builtin name (``"hardy"``, ``"bergman"``, ``"dirichlet"``), a
        JSON string, or a dict such as ``{"kind": "power", "gamma": 3}``,
        ``{"kind": "explicit", "omega": [...]}`` or
        ``{"kind": "perturbed", "base": "dirichlet", "overrides": {"1": 1.414}}``.

    Raises
    ------
    InvalidWeight
        Malformed descriptor or a nonpositive entry.
    WeightConditionViolation
        Explicit/perturbed tail ratios stray from 1 by more than ``RATIO_EPS``.
    """
    if isinstance(spec, WeightSequence):
        return spec
    if isinstance(spec, str):
        text = spec.strip()
        spec = json.loads(text) if text.startswith("{") else {"kind": text}
    if not isinstance(spec, dict) or "kind" not in spec:
        raise InvalidWeight(f"weight descriptor needs a 'kind' field: {spec!r}")
    kind = str(spec["kind"]).lower()

    if kind in ("hardy", "bergman", "dirichlet"):
        return WeightSequence(kind)
    if kind == "power":
        try:
            gamma = float(spec["gamma"])
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidWeight("power weight needs a numeric 'gamma'") from exc
        if not gamma > 0:
            raise InvalidWeight(f"gamma must be positive, got {gamma}")
        return WeightSequence("power", gamma=gamma)
    if kind == "explicit":
        omega = np.asarray(spec.get("omega", []), dtype=float)
        if omega.ndim != 1 or omega.size == 0:
            raise InvalidWeight("explicit weight needs a nonempty 'omega' list")
        if not np.all(np.isfinite(omega)) or np.any(omega <= 0):
            raise InvalidWeight("explicit weights must be finite and positive")
        scale = 1.0
        if omega[0] != 1.0:
            scale = 1.0 / omega[0]
            log.warning("explicit weight rescaled by %g so that omega_0 = 1", scale)
            omega = omega * scale
        w = WeightSequence("explicit", omega=tuple(float(x) for x in omega), rescaled_by=scale)
        _check_ratio(w)
        return w
    if kind == "perturbed":
        if "base" not in spec:
            raise InvalidWeight("perturbed weight needs a 'base'")
        base = make_weight(spec["base"])
        items = []
        for key, val in dict(spec.get("overrides", {})).items():
            idx, val = int(key), float(val)
            if idx < 0 or not np.isfinite(val) or val <= 0:
                raise InvalidWeight(f"bad override {key!r}: {val!r}")
            if idx == 0 and val != 1.0:
                raise InvalidWeight("omega_0 is fixed to 1")
            items.append((idx, val))
        w = WeightSequence("perturbed", base=base, overrides=tuple(sorted(items)))
        _check_ratio(w)
        return w
    raise InvalidWeight(f"unknown weight kind {kind!r}")


class MultiplierNorm(NamedTuple):
    value: float
    index: int
    possibly_truncated: bool


def monomial_multiplier_norm(w: WeightSequence, m: int, N: int = RATIO_WINDOW) -> MultiplierNorm:
    """Norm of multiplication by ``z^m``: ``sup_{0<=n<=N} sqrt(omega_{n+m}/omega_n)``.

    The supremum is over a finite window.  ``possibly_truncated`` is set when
    it is attained at the window edge ``n = N``, in which case the analytic
    supremum may be larger.
    """
    if m < 1 or N < 1:
        raise ValueError("need m >= 1 and N >= 1")
    vals = w.values(N + m + 1)
    ratios = np.sqrt(vals[m : N + m + 1] / vals[: N + 1])
    idx = int(np.argmax(ratios))
    # ties at the edge count as truncated only if the edge strictly exceeds the interior
    truncated = idx == N or (ratios[N] >= ratios[idx] and ratios[N] > ratios[N - 1])
    return MultiplierNorm(float(ratios[idx]), idx, bool(truncated))


class MonomialInnerClass(enum.Enum):
    CONTRACTIVE = "contractive"
    EXPANSIVE = "expansive"
    BOTH = "both"
    NEITHER = "neither"


class MonomialClassification(NamedTuple):
    kind: MonomialInnerClass
    contractive_witness: int | None
    expansive_witness: int | None


def classify_monomial_inner(
    w: WeightSequence, k: int, N: int = RATIO_WINDOW, rtol: float = 1e-12
) -> MonomialClassification:
    """Classify ``e_k = z^k / sqrt(omega_k)`` as a contractive/expansive multiplier.

    ``e_k`` is contractive iff ``omega_{n+k} <= omega_n omega_k`` and expansive
    iff ``omega_{n+k} >= omega_n omega_k`` for every n; here n runs over
    ``0..N`` only.  Witnesses are the first n violating each inequality.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    vals = w.values(N + k + 1)
    lhs = vals[k : N + k + 1]
    rhs = vals[: N + 1] * vals[k]
    slack = rtol * np.maximum(np.abs(lhs), np.abs(rhs))
    c_bad = np.flatnonzero(lhs > rhs + slack)
    e_bad = np.flatnonzero(lhs < rhs - slack)
    c_wit = int(c_bad[0]) if c_bad.size else None
    e_wit = int(e_bad[0]) if e_bad.size else None
    if c_wit is None and e_wit is None:
        kind = MonomialInnerClass.BOTH
    elif c_wit is None:
        kind = MonomialInnerClass.CONTRACTIVE
    elif e_wit is None:
        kind = MonomialInnerClass.EXPANSIVE
    else:
        kind = MonomialInnerClass.NEITHER
    return MonomialClassification(kind, c_wit, e_wit)
