import logging

import numpy as np
import pytest
from helpers import WEIGHTS
from hypothesis import given, settings
from hypothesis import strategies as st

from hardy_inner import (
    HARDY,
    KernelSpec,
    OutsideDomain,
    SeriesFn,
    adjoint_on_kernel,
    eval_deriv,
    inner_product,
    kernel_coeffs,
    kernel_gram_entry,
    mul,
)

points = st.complex_numbers(max_magnitude=0.8, allow_nan=False)


def test_kernel_spec_validation():
    with pytest.raises(OutsideDomain):
        KernelSpec(1.0)
    with pytest.raises(ValueError):
        KernelSpec(0.1, order=9)
    with pytest.raises(ValueError):
        KernelSpec(0.1, order=-1)


def test_hardy_kernel_values():
    K = kernel_coeffs(HARDY, KernelSpec(0.5), 512)
    assert inner_product(K, K).real == pytest.approx(4 / 3)
    K1 = kernel_coeffs(HARDY, KernelSpec(0.5, 1), 512)
    # ||K'_a||^2 = (1 + |a|^2) / (1 - |a|^2)^3
    assert inner_product(K1, K1).real == pytest.approx(1.25 / 0.75**3)


def test_power_kernel_closed_form():
    w = WEIGHTS["power3"]
    lam, z = 0.3 + 0.4j, 0.2 - 0.5j
    K = kernel_coeffs(w, KernelSpec(lam), 1024)
    assert K(z) == pytest.approx((1 - np.conj(lam) * z) ** -3)


def test_gram_entry_matches_series_inner_product():
    w = WEIGHTS["dirichlet"]
    s1, s2 = KernelSpec(0.3j, 2), KernelSpec(-0.4, 1)
    direct = kernel_gram_entry(w, s1, s2, 1024)
    via = inner_product(kernel_coeffs(w, s1, 1024), kernel_coeffs(w, s2, 1024))
    assert direct == pytest.approx(via, rel=1e-13)


def test_tail_warning(caplog):
    with caplog.at_level(logging.WARNING):
        K = kernel_coeffs(HARDY, KernelSpec(0.999), 64)
    assert K.tail > 1e-12
    assert "truncated" in caplog.text


@settings(max_examples=40, deadline=None)
@given(
    st.sampled_from(list(WEIGHTS)),
    points,
    st.integers(0, 4),
    st.lists(st.complex_numbers(max_magnitude=3, allow_nan=False), min_size=1, max_size=8),
)
def test_reproducing_property(wname, lam, order, coeffs):
    w = WEIGHTS[wname]
    f = SeriesFn(coeffs, w)
    K = kernel_coeffs(w, KernelSpec(lam, order), 512)
    expected = eval_deriv(f, lam, order)
    assert abs(inner_product(f, K) - expected) <= 1e-9 * (1 + abs(expected))


def test_adjoint_order_zero_is_scaled_kernel():
    f = SeriesFn([1, 2, 3])
    lam = 0.25 + 0.1j
    A = adjoint_on_kernel(f, KernelSpec(lam), 256)
    K = kernel_coeffs(HARDY, KernelSpec(lam), 256)
    assert np.allclose(A.coeffs, np.conj(f(lam)) * K.coeffs)


def test_adjoint_pairing():
    w = WEIGHTS["bergman"]
    f, h = SeriesFn([1, -1j, 0.5], w), SeriesFn([0.2, 1, 0, 2], w)
    spec = KernelSpec(0.4 - 0.3j, 3)
    lhs = inner_product(h.padded(512), adjoint_on_kernel(f, spec, 512))
    rhs = eval_deriv(mul(h, f, exact=True), spec.point, 3)
    assert lhs == pytest.approx(rhs, rel=1e-12)
