"""Random instance generators shared by the test modules."""

import numpy as np

from hardy_inner import BlaschkeSpec, make_weight

WEIGHTS = {
    "hardy": make_weight("hardy"),
    "bergman": make_weight("bergman"),
    "dirichlet": make_weight("dirichlet"),
    "power3": make_weight({"kind": "power", "gamma": 3}),
    "perturbed": make_weight({"kind": "perturbed", "base": "dirichlet", "overrides": {"1": 2**0.5}}),
}


def random_points(rng, count, r_max, sep, r_min=0.05):
    """``count`` points in ``r_min <= |z| <= r_max`` pairwise at least ``sep`` apart."""
    pts: list[complex] = []
    while len(pts) < count:
        r = r_min + (r_max - r_min) * np.sqrt(rng.uniform())
        z = complex(r * np.exp(2j * np.pi * rng.uniform()))
        if all(abs(z - p) >= sep for p in pts):
            pts.append(z)
    return pts


def random_spec(rng, max_degree=6, r_max=0.8, sep=0.2, max_d0=2):
    """Random BlaschkeSpec with total degree in [1, max_degree]."""
    degree = int(rng.integers(1, max_degree + 1))
    d0 = int(rng.integers(0, min(max_d0, degree) + 1))
    rest = degree - d0
    mults: list[int] = []
    while rest > 0:
        m = int(rng.integers(1, min(rest, 3) + 1))
        mults.append(m)
        rest -= m
    pts = random_points(rng, len(mults), r_max, sep)
    return BlaschkeSpec(d0, tuple(zip(pts, mults)))


def random_poly(rng, degree):
    return rng.standard_normal(degree + 1) + 1j * rng.standard_normal(degree + 1)


def outer_poly(rng, degree, r_min=1.8):
    """Coefficients (ascending) of a polynomial with all roots in ``|z| >= r_min``."""
    c = np.array([1.0 + 0j])
    for root in random_points(rng, degree, 3.0, 0.1, r_min=r_min):
        c = np.convolve(c, [-root, 1.0])
    return c * (rng.standard_normal() + 1j * rng.standard_normal())
