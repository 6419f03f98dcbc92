"""Python smoke tests for the obliq extension module."""

import math

import numpy as np
import pytest

import obliq


def test_space_and_inner():
    s = obliq.make_space(np.diag([1.0, 4.0]).astype(complex))
    assert s.dim == 2
    e2 = np.array([0.0, 1.0], dtype=complex)
    assert obliq.norm(s, e2) == pytest.approx(2.0)
    e1 = np.array([1.0, 0.0], dtype=complex)
    assert obliq.inner(s, e1, e2) == pytest.approx(0.0)


def test_bad_metric_raises():
    with pytest.raises(obliq.ObliqError):
        obliq.make_space(np.array([[1.0, 2.0], [2.0, 1.0]], dtype=complex))


def test_inclination_45_degrees():
    s = obliq.euclidean(2)
    l = obliq.span(s, np.array([[1.0], [0.0]], dtype=complex))
    m = obliq.span(s, np.array([[1.0], [1.0]], dtype=complex))
    rep = obliq.inclination(l, m)
    assert rep.c == pytest.approx(1 / math.sqrt(2), abs=1e-12)
    assert rep.q_dim == 0
    assert rep.containment == "none"
    assert obliq.inclination_oracle(l, m) == pytest.approx(rep.c, abs=1e-9)


def test_decompose_oblique_plane():
    s = obliq.euclidean(2)
    l = obliq.span(s, np.array([[1.0], [0.0]], dtype=complex))
    m = obliq.span(s, np.array([[1.0], [1.0]], dtype=complex))
    x = np.array([0.0, 1.0], dtype=complex)
    d = obliq.decompose(l, m, x, a1=0.0)
    np.testing.assert_allclose(d.xl, [-1.0, 0.0], atol=1e-12)
    np.testing.assert_allclose(d.xm, [1.0, 1.0], atol=1e-12)
    assert d.A1 == pytest.approx(math.sqrt(2))
    assert d.residual < 1e-12


def test_extension_sharpness():
    s = obliq.euclidean(2)
    l = obliq.span(s, np.array([[1.0], [0.0]], dtype=complex))
    m = obliq.span(s, np.array([[1.0], [1.0]], dtype=complex))
    w = np.array([1.0, 0.0], dtype=complex)
    ext = obliq.extend(s, w, l, m)
    np.testing.assert_allclose(ext.riesz_tilde, [1.0, -1.0], atol=1e-9)
    assert ext.norm_f_tilde == pytest.approx(ext.bound, rel=1e-8)


def test_l2_closed_forms_match_engine():
    thetas = np.array([2.0, 3.0])
    space, l, m = obliq.l2_build(thetas)
    rep = obliq.inclination(l, m)
    assert rep.c == pytest.approx(obliq.l2_analytic_inclination(thetas), abs=1e-10)
    assert rep.c == pytest.approx(1 / math.sqrt(5), abs=1e-10)

    tilde = obliq.l2_analytic_extend(np.array([2.0]), np.array([1.0]))
    np.testing.assert_allclose(tilde, [1.0, -0.5], atol=1e-15)


def test_l2_probe_growth():
    rows = obliq.l2_probe_one_over_n(1, 4)
    assert len(rows) == 4
    for row, n in zip(rows, [1, 2, 4, 8]):
        assert row["bound"] == pytest.approx(math.sqrt(1 + n * n), abs=1e-8)
    attained = [row["attained_norm"] for row in rows]
    assert attained == sorted(attained)


def test_cavity_model():
    model = obliq.build_cavity(2, 2)
    assert model.ambient_dim == 20
    assert 0.0 < model.c < 0.999
    gram = model.space.gram
    np.testing.assert_allclose(
        gram.real, model.rot_gram + model.div_gram + model.mass_gram, atol=1e-12
    )
    korn = model.korn()
    assert korn["kappa"] >= 1.0
    assert korn["kappa"] == pytest.approx(model.rayleigh_kappa(), rel=1e-6)

    # Random vortex member obeys the contraction bound.
    rng = np.random.default_rng(7)
    mix = rng.standard_normal(model.l_hat.dim)
    coords = (model.l_hat.basis @ mix).real
    nsq = obliq.norm(model.space, coords.astype(complex)) ** 2
    assert model.contraction_slack(coords) >= -1e-10 * nsq


def test_verify_bounds_binding():
    s = obliq.euclidean(2)
    l = obliq.span(s, np.array([[1.0], [0.0]], dtype=complex))
    m = obliq.span(s, np.array([[1.0], [1.0]], dtype=complex))
    d = obliq.decompose(l, m, np.array([0.0, 1.0], dtype=complex))
    report = obliq.verify_bounds(d)
    assert report["ok"] is True
    assert report["residual"] < 1e-12
