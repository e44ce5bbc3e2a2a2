import math

import pytest

import ldphase


def test_rate_function():
    assert ldphase.rate(0.5, 0.2) == pytest.approx(0.22314355131420976, rel=1e-14)
    assert ldphase.p0(2.0) == pytest.approx(1 / (1 + math.e**2), rel=1e-14)
    with pytest.raises(ValueError):
        ldphase.entropy(1.5)


def test_boundary_matches_closed_form():
    pts = ldphase.boundary_curve(2.0, [0.2, 0.3, 0.7])
    for r, p in pts:
        assert p == pytest.approx(ldphase.d2_boundary_p(r), abs=1e-6)


def test_classification_and_witness():
    assert ldphase.classify_upper_tail(2, 0.1, 0.25) == "Boundary"
    assert ldphase.classify_upper_tail(2, 0.05, 0.5) == "SymmetryBreaking"
    w = ldphase.break_witness("K3", 0.05, 0.5)
    assert w["t_value"] > w["target_t"]
    assert w["hp_value"] < w["target_hp"]
    assert ldphase.hyper_classify(3, 3, 0.1, 0.5) == "SymmetryBreaking"


def test_erg():
    assert ldphase.scalar_maximize(-1.0, 0.0, 3.0)[0] == pytest.approx(ldphase.logistic(-1.0), rel=1e-10)
    out = ldphase.erg_classify("K3", 0.6, -3.0, 2.5)
    assert out["kind"] == "Breaking"
    assert ldphase.critical_beta2(-0.5, 3.0) is None


def test_sampler_is_deterministic():
    a = ldphase.sample_erg(8, 1.0, -1.0, 0.5, 2000, 7)
    b = ldphase.sample_erg(8, 1.0, -1.0, 0.5, 2000, 7)
    assert a == b
    assert all(0.0 <= row[1] <= 1.0 for row in a)
