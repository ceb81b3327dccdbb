"""H^2_omega analogues of finite Blaschke products.

Given zeros ``z_j`` with multiplicities ``d_j`` and an origin multiplicity
``d0``, the analogue is the normalised projection of ``z^d0`` onto the
orthogonal complement of

    {1, z, ..., z^(d0-1)} U {K^(l)_{z_j} : 0 <= l < d_j}

A zero of multiplicity ``d_j`` imposes derivative kernels of order up to
``d_j - 1``, so the result vanishes at ``z_j`` exactly as the classical
factor ``((z - z_j) / (1 - conj(z_j) z))^d_j`` does.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Any, NamedTuple, Sequence

import numpy as np
import scipy.optimize
from numpy.polynomial import polynomial as P

from .errors import ZeroVector
from .kernels import KernelSpec, kernel_coeffs
from .projector import COND_MAX, projection_coefficients
from .series import DEFAULT_N, SeriesFn, evaluate, monomial, norm
from .weights import HARDY, WeightSequence

log = logging.getLogger(__name__)

PHASE_RTOL = 1e-12


@dataclass(frozen=True)
class BlaschkeSpec:
    """Origin multiplicity ``d0`` plus distinct nonzero zeros ``(z_j, d_j)``."""

    d0: int = 0
    zeros: tuple[tuple[complex, int], ...] = ()

    def __post_init__(self):
        zeros = tuple((complex(z), int(m)) for z, m in self.zeros)
        object.__setattr__(self, "zeros", zeros)
        if self.d0 < 0:
            raise ValueError("d0 must be >= 0")
        for z, m in zeros:
            if not 0.0 < abs(z) < 1.0:
                raise ValueError(f"zero {z} must satisfy 0 < |z| < 1")
            if m < 1:
                raise ValueError(f"multiplicity of {z} must be >= 1")
        pts = [z for z, _ in zeros]
        for i in range(len(pts)):
            for j in range(i):
                if abs(pts[i] - pts[j]) < 1e-12:
                    raise ValueError(f"zeros must be distinct, {pts[i]} repeated")
        if self.degree < 1:
            raise ValueError("total degree d0 + sum(d_j) must be >= 1")

    @property
    def degree(self) -> int:
        return self.d0 + sum(m for _, m in self.zeros)

    def to_json(self) -> dict[str, Any]:
        return {
            "d0": self.d0,
            "zeros": [{"z": [z.real, z.imag], "mult": m} for z, m in self.zeros],
        }

    @classmethod
    def from_json(cls, payload: dict[str, Any]) -> BlaschkeSpec:
        if not isinstance(payload, dict):
            raise ValueError("spec must be a JSON object")
        try:
            d0 = int(payload.get("d0", 0))
        except (TypeError, ValueError) as exc:
            raise ValueError("spec field 'd0' must be an integer") from exc
        zeros = []
        for i, item in enumerate(payload.get("zeros", [])):
            if not isinstance(item, dict) or "z" not in item:
                raise ValueError(f"spec field 'zeros[{i}]' needs a 'z' entry")
            raw = item["z"]
            try:
                z = complex(raw[0], raw[1]) if isinstance(raw, (list, tuple)) else complex(raw)
                m = int(item.get("mult", 1))
            except (TypeError, ValueError, IndexError) as exc:
                raise ValueError(f"spec field 'zeros[{i}]' is malformed") from exc
            zeros.append((z, m))
        return cls(d0, tuple(zeros))


@dataclass
class InnerFunctionResult:
    """A constructed inner function and construction diagnostics.

    ``expansion`` holds ``c`` with ``B = scale * (z^d0 - sum_i c_i v_i)``
    over the constraint family ``family``.
    """

    B: SeriesFn
    spec: BlaschkeSpec | None
    gram_condition: float
    constant_vs_oracle: complex | None = None
    family: list = field(default_factory=list)
    expansion: np.ndarray | None = None
    scale: complex = 1.0
    flags: list = field(default_factory=list)


def constraint_family(w: WeightSequence, spec: BlaschkeSpec, N: int = DEFAULT_N) -> list[SeriesFn]:
    fam = [monomial(k, w) for k in range(spec.d0)]
    for z, m in spec.zeros:
        fam.extend(kernel_coeffs(w, KernelSpec(z, order), N) for order in range(m))
    return fam


def canonical_phase(f: SeriesFn, rtol: float = PHASE_RTOL) -> complex:
    """Unimodular factor making the lowest non-negligible coefficient positive."""
    mag = np.abs(f.coeffs)
    big = np.flatnonzero(mag > rtol * mag.max())
    if big.size == 0:
        return 1.0 + 0j
    c = f.coeffs[big[0]]
    return complex(np.conj(c) / abs(c))


def construct_blaschke_analogue(
    w: WeightSequence,
    spec: BlaschkeSpec,
    N: int = DEFAULT_N,
    method: str = "normal",
    cond_max: float = COND_MAX,
) -> InnerFunctionResult:
    """Build the H^2_omega analogue of the Blaschke product named by ``spec``.

    Raises
    ------
    IllConditionedGram
        The constraint family is numerically dependent.
    ZeroVector
        The projection of ``z^d0`` vanishes.
    """
    fam = constraint_family(w, spec, N)
    target = monomial(spec.d0, w).padded(N)
    if fam:
        c, gs = projection_coefficients(target, fam, method, cond_max)
        u = np.array(target.coeffs)
        for cj, v in zip(c, fam):
            u[: v.coeffs.size] -= cj * v.coeffs
        u = SeriesFn(u, w)
        cond = gs.condition
    else:
        c, u, cond = np.zeros(0, dtype=complex), target, 1.0
    nrm = norm(u)
    if nrm <= 1e-14 * math.sqrt(w(spec.d0)):
        raise ZeroVector("projection of z^d0 vanished; constraint family is inconsistent")
    B = u / nrm
    phase = canonical_phase(B)
    B = B * phase
    res = InnerFunctionResult(B, spec, cond, family=fam, expansion=c, scale=phase / nrm)

    # the top derivative kernel at each zero should carry a nonzero coefficient
    pos = spec.d0
    for z, m in spec.zeros:
        top = c[pos + m - 1] if c.size else 0.0
        biggest = np.max(np.abs(c[pos : pos + m])) if c.size else 0.0
        if biggest == 0.0 or abs(top) < 1e-10 * biggest:
            res.flags.append(f"top-order kernel coefficient at {z} vanishes; degree bookkeeping may differ")
        pos += m

    if w.kind == "hardy":
        res.constant_vs_oracle = compare_to_oracle(B, classical_blaschke(spec, N)).fitted_phase
    return res


def blaschke_factor_coeffs(a: complex, N: int) -> np.ndarray:
    """Coefficients of ``(z - a) / (1 - conj(a) z)`` up to ``z^N``."""
    c = np.empty(N + 1, dtype=complex)
    c[0] = -a
    ab = np.conj(a)
    with np.errstate(under="ignore"):
        c[1:] = ab ** np.arange(N) * (1.0 - abs(a) ** 2)
    return c


def classical_blaschke(spec: BlaschkeSpec, N: int = DEFAULT_N, weight: WeightSequence = HARDY) -> SeriesFn:
    """Truncated series of ``z^d0 prod_j ((z - z_j)/(1 - conj(z_j) z))^d_j``."""
    c = np.zeros(N + 1, dtype=complex)
    c[min(spec.d0, N)] = 1.0
    for z, m in spec.zeros:
        f = blaschke_factor_coeffs(z, N)
        for _ in range(m):
            c = np.convolve(c, f)[: N + 1]
    return SeriesFn(c, weight)


def default_grid(radius: float = 0.95, n_radii: int = 12, n_angles: int = 48) -> np.ndarray:
    """Polar grid of points in the closed disk of the given radius."""
    r = np.linspace(0.0, radius, n_radii)
    t = np.linspace(0.0, 2 * np.pi, n_angles, endpoint=False)
    pts = (r[:, None] * np.exp(1j * t[None, :])).ravel()
    return np.unique(np.round(pts, 15))


class OracleComparison(NamedTuple):
    max_deviation: float
    fitted_phase: complex


def compare_to_oracle(B, oracle: SeriesFn, grid: np.ndarray | None = None) -> OracleComparison:
    """Fit one unimodular ``mu`` minimising ``max |B - mu * oracle|`` over ``grid``."""
    if isinstance(B, InnerFunctionResult):
        B = B.B
    pts = default_grid() if grid is None else np.asarray(grid, dtype=complex)
    bv = np.asarray(evaluate(B, pts))
    ov = np.asarray(evaluate(oracle, pts))
    cross = np.sum(np.conj(ov) * bv)
    if abs(cross) == 0.0:
        return OracleComparison(float(np.max(np.abs(bv - ov))), 1.0 + 0j)
    theta0 = float(np.angle(cross))

    def dev(theta):
        return float(np.max(np.abs(bv - np.exp(1j * theta) * ov)))

    opt = scipy.optimize.minimize_scalar(
        dev, bounds=(theta0 - 0.25, theta0 + 0.25), method="bounded", options={"xatol": 1e-13}
    )
    theta = opt.x if opt.fun <= dev(theta0) else theta0
    return OracleComparison(dev(theta), complex(np.exp(1j * theta)))


class ZeroCandidate(NamedTuple):
    z: complex
    multiplicity: int
    kind: str  # "prescribed", "extraneous" or "spurious"


def _tail_ratio(c: np.ndarray, n1: int, z: complex) -> float:
    r = abs(z)
    with np.errstate(under="ignore", over="ignore"):
        powers = r ** np.arange(c.size)
    mags = np.abs(c) * powers
    head = float(np.sum(mags[: n1 + 1]))
    tail = float(np.sum(mags[n1 + 1 :]))
    return tail / head if head > 0 else math.inf


def _cluster(points: Sequence[complex], tol: float) -> list[tuple[complex, int]]:
    groups: list[list[complex]] = []
    for p in points:
        for g in groups:
            if abs(p - np.mean(g)) < tol:
                g.append(p)
                break
        else:
            groups.append([p])
    return [(complex(np.mean(g)), len(g)) for g in groups]


def classify_zeros(
    B: SeriesFn,
    spec: BlaschkeSpec,
    radius: float = 0.999,
    trim: float = 1e-16,
    stable_tol: float = 1e-6,
    cluster_tol: float = 1e-3,
) -> list[ZeroCandidate]:
    """Locate zeros of the truncated series inside ``|z| <= radius``.

    Roots come from companion-matrix eigenvalues of the series cut where
    ``|c_n| radius^n`` drops below ``trim`` (degree n1) and again at degree
    ``min(2 n1, N)``.  A root is genuine when it appears in both cuts and the
    discarded tail is negligible there; otherwise it is ``spurious``.
    Genuine roots near a prescribed zero are ``prescribed``, the rest
    ``extraneous``.  Origin zeros of order ``d0`` are divided out first.
    """
    if not 0.0 < radius <= 1.0:
        raise ValueError("radius must lie in (0, 1]")
    c = np.array(B.coeffs)
    d0 = spec.d0 if spec is not None else 0
    out: list[ZeroCandidate] = []
    if d0:
        c = c[d0:]
        out.append(ZeroCandidate(0j, d0, "prescribed"))
    with np.errstate(under="ignore"):
        scaled = np.abs(c) * radius ** np.arange(c.size)
    keep = np.flatnonzero(scaled > trim * scaled.max())
    n1 = int(keep[-1])
    if n1 == 0:
        return out
    n2 = min(2 * n1, c.size - 1)
    if n2 == n1:
        n1 = max(1, n1 // 2)
    r1 = P.polyroots(c[: n1 + 1])
    r2 = P.polyroots(c[: n2 + 1])
    inside = [z for z in r1 if abs(z) <= radius]

    genuine, spurious = [], []
    for z in inside:
        stable = np.min(np.abs(r2 - z)) < max(stable_tol, cluster_tol * 1e-2)
        if stable and _tail_ratio(c, n1, z) < 1e-10:
            genuine.append(z)
        else:
            spurious.append(z)

    prescribed = [z for z, _ in spec.zeros] if spec is not None else []
    for z, mult in _cluster(genuine, cluster_tol):
        near = any(abs(z - p) < cluster_tol for p in prescribed)
        out.append(ZeroCandidate(z, mult, "prescribed" if near else "extraneous"))
    for z, mult in _cluster(spurious, cluster_tol):
        out.append(ZeroCandidate(z, mult, "spurious"))
    return out


def scan_extraneous_zeros(B, spec: BlaschkeSpec, radius: float = 0.999, **kw) -> list[ZeroCandidate]:
    """Zeros of ``B`` in ``|z| <= radius`` other than the prescribed ones."""
    if isinstance(B, InnerFunctionResult):
        B = B.B
    return [zc for zc in classify_zeros(B, spec, radius, **kw) if zc.kind == "extraneous"]
