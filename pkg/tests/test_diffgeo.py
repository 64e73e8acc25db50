import math

import numpy as np
import pytest

from reference import HEMISPHERE_DIRICHLET, HEMISPHERE_MU0_SQ
from varsurf import diffgeo
from varsurf.errors import DomainError, InvalidGeometry
from varsurf.quadrature import QuadratureGrid
from varsurf.surfaces import CornerQuad, make_bilinear, make_hemiellipsoid, make_ruled1, make_ruled2

RNG = np.random.default_rng(7)


def test_ruled1_magnitudes():
    s = make_ruled1(1.0, 1.0)
    u, v = RNG.random(30), RNG.random(30)
    m = diffgeo.fundamental_magnitudes(s, u, v)
    np.testing.assert_allclose(m.E, 1 + (1 - 2 * v) ** 2)
    np.testing.assert_allclose(m.F, (1 - 2 * u) * (1 - 2 * v))
    np.testing.assert_allclose(m.G, 1 + (1 - 2 * u) ** 2)
    np.testing.assert_allclose(m.e, 0.0, atol=1e-15)
    np.testing.assert_allclose(m.f, 2.0)
    np.testing.assert_allclose(m.g, 0.0, atol=1e-15)


def test_magnitude_invariants():
    for s in (make_ruled2(1.3, 0.4), make_hemiellipsoid(1.7, 0.6)):
        d = s.domain
        u = d.u_min + (d.u_max - d.u_min) * RNG.random(200)
        v = d.v_min + (d.v_max - d.v_min) * RNG.random(200)
        m = diffgeo.fundamental_magnitudes(s, u, v)
        assert np.all(m.E >= 0) and np.all(m.G >= 0)
        assert np.all(m.w2 >= -1e-12 * np.maximum(1, m.E * m.G))
        n2 = np.sum(m.n_raw**2, axis=-1)
        assert np.max(np.abs(m.w2 - n2) / np.maximum(n2, 1e-300)) < 1e-10


def test_bilinear_has_no_normal_curvature_along_axes():
    s = make_bilinear(CornerQuad((0, 0, 0), (1, 1, 0.7), (1, 0, -0.3), (0, 1, 0.2)))
    m = diffgeo.fundamental_magnitudes(s, RNG.random(20), RNG.random(20))
    assert np.all(m.e == 0) and np.all(m.g == 0)


def test_hemisphere_magnitudes_at_point():
    m = diffgeo.fundamental_magnitudes(make_hemiellipsoid(1, 1), math.pi / 4, 0.0)
    assert float(m.E) == pytest.approx(1.0)
    assert float(m.F) == pytest.approx(0.0, abs=1e-15)
    assert float(m.G) == pytest.approx(0.5)


def test_domain_error():
    with pytest.raises(DomainError):
        diffgeo.fundamental_magnitudes(make_hemiellipsoid(1, 1), 2.0, 0.0)


# --- curvature ---------------------------------------------------------

def test_ruled1_numerator_closed_form():
    r, d = 1.4, 0.8
    u, v = RNG.random(50), RNG.random(50)
    c = diffgeo.curvature_numerator(make_ruled1(r, d), u, v)
    np.testing.assert_allclose(c.H0, -4 * d**2 * r**3 * (2 * u - 1) * (2 * v - 1), rtol=1e-12, atol=1e-14)
    line = diffgeo.curvature_numerator(make_ruled1(r, d), np.full(5, 0.5), RNG.random(5))
    assert np.all(line.H0 == 0.0)


def test_curvature_relations():
    s = make_ruled2(0.9, 1.1)
    u, v = RNG.random(40), RNG.random(40)
    c = diffgeo.curvature_numerator(s, u, v)
    w2 = diffgeo.fundamental_magnitudes(s, u, v).w2
    assert not np.any(c.singular)
    np.testing.assert_allclose(c.H * w2**1.5, c.H0, rtol=1e-10, atol=1e-15)
    np.testing.assert_allclose(c.H_std, 0.5 * c.H)


def test_closed_form_spot_values():
    assert diffgeo.mean_curvature_closed_form_ruled("ruled1", 1, 1, 0, 0) == pytest.approx(-4 / 3**1.5)
    assert diffgeo.mean_curvature_closed_form_ruled("ruled2", 1, 1, 0, 0) == pytest.approx(4 / 3**1.5)
    assert diffgeo.mean_curvature_closed_form_ruled("ruled1", 1, 1, 0.5, 0.2) == 0.0
    with pytest.raises(InvalidGeometry):
        diffgeo.mean_curvature_closed_form_ruled("ruled1", 1, 0, 0.2, 0.2)


@pytest.mark.parametrize("which,maker", [("ruled1", make_ruled1), ("ruled2", make_ruled2)])
def test_oracle_equality_random(which, maker):
    worst = 0.0
    for _ in range(200):
        r, d = RNG.uniform(0.05, 2.5), RNG.uniform(0.2, 2.5)
        u, v = RNG.random(2)
        c = diffgeo.curvature_numerator(maker(r, d), u, v)
        if float(diffgeo.fundamental_magnitudes(maker(r, d), u, v).w2) <= 1e-6:
            continue
        ref = diffgeo.mean_curvature_closed_form_ruled(which, r, d, u, v)
        worst = max(worst, abs(float(c.H) - ref) / max(abs(ref), 1e-300) if ref != 0 else abs(float(c.H)))
    assert worst < 1e-9


def test_hemiellipsoid_numerator_random():
    for _ in range(200):
        b, c = RNG.uniform(0.1, 2.5, 2)
        u, v = RNG.uniform(0, math.pi / 2), RNG.uniform(0, 2 * math.pi)
        got = float(diffgeo.curvature_numerator(make_hemiellipsoid(b, c), u, v).H0)
        ref = diffgeo.hemiellipsoid_numerator_closed_form(b, c, u, v)
        assert abs(got - ref) <= 1e-9 * max(abs(ref), 1e-12)


def test_unit_sphere_standard_curvature():
    s = make_hemiellipsoid(1.0, 1.0)
    u = RNG.uniform(0.01, math.pi / 2, 300)
    v = RNG.uniform(0, 2 * math.pi, 300)
    c = diffgeo.curvature_numerator(s, u, v)
    np.testing.assert_allclose(c.H0, -2 * np.sin(u) ** 3, rtol=1e-12)
    ok = diffgeo.fundamental_magnitudes(s, u, v).w2 > 1e-6
    assert np.max(np.abs(c.H_std[ok] + 1.0)) < 1e-8


def test_pole_is_flagged_not_infinite():
    c = diffgeo.curvature_numerator(make_hemiellipsoid(1.0, 1.0), 0.0, 0.3)
    assert bool(c.singular) and math.isnan(float(c.H))
    assert float(c.H0) == 0.0


# --- integrals ---------------------------------------------------------

G32 = QuadratureGrid.build(make_ruled1(1, 1).domain, 32)


def test_area_examples():
    assert diffgeo.area(make_ruled1(0.0, 1.0), G32) == pytest.approx(1.0, rel=1e-14)
    a = diffgeo.area(make_ruled1(1.0, 1.0), G32)
    assert 1.0 < a < math.sqrt(3)
    h = make_hemiellipsoid(1, 1)
    assert diffgeo.area(h, QuadratureGrid.build(h.domain, 64)) == pytest.approx(2 * math.pi, rel=1e-12)


@pytest.mark.parametrize("r,d", [(0.5, 1.0), (1.0, 1.0), (2.0, 1.0), (1.3, 0.7)])
def test_mu0_squared_exact(r, d):
    assert diffgeo.mu_squared(make_ruled1(r, d), G32) == pytest.approx(16 * d**4 * r**6 / 9, rel=1e-12)


def test_mu0_squared_planar_and_hemisphere():
    assert diffgeo.mu_squared(make_ruled1(0.0, 1.0), G32) == 0.0
    h = make_hemiellipsoid(1, 1)
    assert diffgeo.mu_squared(h, QuadratureGrid.build(h.domain, 32)) == pytest.approx(HEMISPHERE_MU0_SQ, rel=1e-12)


def test_dirichlet_examples():
    flat = make_ruled1(0.0, 1.0)
    assert diffgeo.dirichlet(flat, G32) == pytest.approx(diffgeo.area(flat, G32), rel=1e-12)
    s = make_ruled1(1.0, 1.0)
    assert diffgeo.dirichlet(s, G32) > diffgeo.area(s, G32) + 1e-3
    h = make_hemiellipsoid(1, 1)
    gh = QuadratureGrid.build(h.domain, 32)
    assert diffgeo.dirichlet(h, gh) == pytest.approx(HEMISPHERE_DIRICHLET, rel=1e-12)
    assert diffgeo.dirichlet(h, gh) >= 2 * math.pi


def test_area_dirichlet_inequality_random():
    for _ in range(25):
        kind = RNG.integers(3)
        if kind == 0:
            s = make_ruled1(*RNG.uniform(0.0, 2.0, 1), RNG.uniform(0.3, 2.0))
        elif kind == 1:
            s = make_ruled2(*RNG.uniform(0.0, 2.0, 1), RNG.uniform(0.3, 2.0))
        else:
            s = make_hemiellipsoid(*RNG.uniform(0.2, 2.0, 2))
        g = QuadratureGrid.build(s.domain, 48)
        A, D = diffgeo.area(s, g), diffgeo.dirichlet(s, g)
        assert A <= D * (1 + 1e-9)


def test_isothermal_equality():
    # a scaled, translated plane is isothermal: E = G, F = 0
    s = make_bilinear(CornerQuad((1, 1, 1), (3, 3, 1), (3, 1, 1), (1, 3, 1)))
    assert diffgeo.area(s, G32) == pytest.approx(diffgeo.dirichlet(s, G32), rel=1e-9)


def test_area_density_clamps_negative():
    assert diffgeo.area_density(np.array(1.0), np.array(1.0 + 1e-15), np.array(1.0)) == 0.0
