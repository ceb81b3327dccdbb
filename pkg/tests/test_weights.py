import json
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hardy_inner import (
    BERGMAN,
    DIRICHLET,
    HARDY,
    InvalidWeight,
    WeightConditionViolation,
    classify_monomial_inner,
    make_weight,
    monomial_multiplier_norm,
)
from hardy_inner.weights import MonomialInnerClass


def test_builtin_values():
    assert np.allclose(HARDY.values(5), 1.0)
    assert np.allclose(BERGMAN.values(4), [1, 1 / 2, 1 / 3, 1 / 4])
    assert np.allclose(DIRICHLET.values(4), [1, 2, 3, 4])
    assert DIRICHLET(10) == 11.0


def test_values_read_only():
    vals = HARDY.values(8)
    with pytest.raises(ValueError):
        vals[0] = 2.0


@pytest.mark.parametrize("gamma", [1.0, 2.0, 3.0, 8.0])
def test_power_weight_matches_binomial_series(gamma):
    # kernel (1 - z)^-gamma has coefficients (gamma)_n / n!, so omega_n is the reciprocal
    w = make_weight({"kind": "power", "gamma": gamma})
    n = np.arange(30)
    coeff = np.array([math.gamma(gamma + k) / (math.gamma(gamma) * math.factorial(k)) for k in n])
    assert np.allclose(w.values(30), 1 / coeff, rtol=1e-12)


def test_power_special_cases():
    assert np.allclose(make_weight({"kind": "power", "gamma": 1}).values(50), HARDY.values(50))
    assert np.allclose(make_weight({"kind": "power", "gamma": 2}).values(50), BERGMAN.values(50))


def test_parsing_forms_agree():
    a = make_weight("bergman")
    b = make_weight('{"kind": "bergman"}')
    c = make_weight({"kind": "BERGMAN"})
    assert a == b == c == BERGMAN
    assert make_weight(a) is a


def test_descriptor_roundtrip():
    for w in [
        HARDY,
        make_weight({"kind": "power", "gamma": 3}),
        make_weight({"kind": "explicit", "omega": [1, 2, 3]}),
        make_weight({"kind": "perturbed", "base": "dirichlet", "overrides": {"1": 1.5}}),
    ]:
        again = make_weight(json.loads(str(w)))
        assert np.array_equal(again.values(40), w.values(40))


def test_explicit_rescaled_and_extended(caplog):
    w = make_weight({"kind": "explicit", "omega": [2.0, 4.0, 6.0]})
    assert "rescaled" in caplog.text
    assert w.rescaled_by == 0.5
    assert np.allclose(w.values(6), [1, 2, 3, 3, 3, 3])


@pytest.mark.parametrize(
    "bad",
    [
        {"kind": "nope"},
        {"gamma": 2},
        {"kind": "power"},
        {"kind": "power", "gamma": -1},
        {"kind": "explicit", "omega": []},
        {"kind": "explicit", "omega": [1, 0, 1]},
        {"kind": "perturbed", "base": "hardy", "overrides": {"0": 2}},
        {"kind": "perturbed", "overrides": {}},
        42,
    ],
)
def test_invalid_descriptors(bad):
    with pytest.raises(InvalidWeight):
        make_weight(bad)


def test_ratio_violation_names_index():
    omega = [1.0] * 600 + [3.0] * 600
    with pytest.raises(WeightConditionViolation) as err:
        make_weight({"kind": "explicit", "omega": omega})
    assert err.value.index == 599
    assert err.value.ratio == pytest.approx(3.0)


def test_multiplier_norms():
    assert monomial_multiplier_norm(HARDY, 3).value == 1.0
    d = monomial_multiplier_norm(DIRICHLET, 1)
    assert d.value == pytest.approx(math.sqrt(2)) and d.index == 0 and not d.possibly_truncated
    b = monomial_multiplier_norm(BERGMAN, 1)
    assert b.possibly_truncated and b.value < 1.0


def test_classification():
    for k in range(1, 9):
        assert classify_monomial_inner(HARDY, k).kind is MonomialInnerClass.BOTH
    b = classify_monomial_inner(BERGMAN, 1)
    assert (b.kind, b.contractive_witness, b.expansive_witness) == (MonomialInnerClass.EXPANSIVE, 1, None)
    d = classify_monomial_inner(DIRICHLET, 1)
    assert (d.kind, d.contractive_witness, d.expansive_witness) == (MonomialInnerClass.CONTRACTIVE, None, 1)


def test_classification_neither():
    w = make_weight({"kind": "perturbed", "base": "hardy", "overrides": {"2": 1.5, "3": 0.8}})
    assert classify_monomial_inner(w, 1).kind is MonomialInnerClass.NEITHER


@given(st.floats(min_value=0.2, max_value=10.0))
def test_power_weights_positive_and_start_at_one(gamma):
    vals = make_weight({"kind": "power", "gamma": gamma}).values(200)
    assert vals[0] == 1.0 and np.all(vals > 0)
