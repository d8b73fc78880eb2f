"""Catalog surfaces: published values, samplers, chart agreement."""

import math

import numpy as np
import pytest

from heisgeo import catalog
from heisgeo.core import Point
from heisgeo.surface import DomainError, build_frame, report

RNG = np.random.default_rng(77)


def radius(p):
    return math.sqrt(float(np.dot(p.x, p.x) + np.dot(p.y, p.y)))


def test_expected_values_on_samples():
    for n in (2, 3):
        for entry in catalog.standard_entries(n):
            for p in entry.sample(RNG, 100):
                rep = report(entry.surface, p)
                assert rep.umbilic, entry.name
                for key, val in (("k", rep.k), ("l", rep.l), ("H", rep.H),
                                 ("alpha", rep.alpha)):
                    assert val == pytest.approx(
                        entry.expected[key](p), abs=1e-8
                    ), (entry.name, key)


def test_samples_are_regular_and_on_surface():
    for entry in catalog.standard_entries(2):
        for p in entry.sample(RNG, 50):
            u = entry.surface.value(p.coords)
            _, grad, _ = entry.surface.evaluate(p.coords)
            scale = (1 + np.max(np.abs(grad))) * (1 + np.max(np.abs(p.coords)))
            assert abs(u) <= 1e-9 * scale
            build_frame(entry.surface, p)  # raises if singular


def test_sampler_determinism():
    entry = catalog.pansu(1.0, 2)
    a = entry.sample(123, 5)
    b = entry.sample(123, 5)
    for p, q in zip(a, b):
        assert np.array_equal(p.coords, q.coords)


# ---------------------------------------------------------------------------
# constant-curvature sphere specifics


def test_pansu_pole_height_and_equator():
    e = catalog.pansu(1.0, 2)
    # height closure: profile at r -> 0 tends to (pi/4)^2, vanishes at r = 1
    assert e.profile.f(1.0 - 1e-14) == pytest.approx(0.0, abs=1e-13)
    assert e.profile.f(1e-12) == pytest.approx((math.pi / 4) ** 2, abs=1e-7)
    # chart height at |z| -> 1 vanishes (sphere meets t = 0 at the equator);
    # the approach is a square root, so exact zero only at the rim itself
    up = e.charts["upper"]
    assert up.value(np.array([1.0, 0, 0, 0, 0.0])) == 0.0
    heights = [up.value(np.array([1.0 - d, 0, 0, 0, 0.0])) for d in (1e-4, 1e-6, 1e-8)]
    assert heights[0] > heights[1] > heights[2] > 0
    assert heights[2] <= 2e-4


def test_pansu_chart_agreement():
    # hemisphere graphs and the global squared chart describe the same
    # geometry wherever both are usable
    e = catalog.pansu(1.0, 2)
    for p in e.sample(RNG, 60):
        if abs(p.t) < 1e-3 or radius(p) > 0.95:  # graphs degenerate there
            continue
        chart = e.charts["upper" if p.t > 0 else "lower"]
        r1 = report(e.surface, p)
        r2 = report(chart, p)  # both charts keep the inward orientation
        assert r2.k == pytest.approx(r1.k, abs=1e-7)
        assert r2.l == pytest.approx(r1.l, abs=1e-7)
        assert r2.alpha == pytest.approx(r1.alpha, abs=1e-7)


def test_pansu_domain_error():
    e = catalog.pansu(1.0, 2)
    with pytest.raises(DomainError):
        e.surface.value(np.array([1.5, 0, 0, 0, 0.0]))
    with pytest.raises(DomainError):
        e.charts["upper"].value(np.array([1.5, 0, 0, 0, 0.0]))
    with pytest.raises(ValueError):
        catalog.pansu(-1.0, 2)


def test_pansu_expected_H():
    for n, lam in ((2, 0.5), (2, 2.0), (3, 1.0)):
        e = catalog.pansu(lam, n)
        for p in e.sample(RNG, 20):
            assert report(e.surface, p).H == pytest.approx(2 * n * lam, abs=1e-8)


# ---------------------------------------------------------------------------
# quartic sphere and shifted family


def test_heisenberg_l_equals_3k():
    e = catalog.heisenberg_sphere(1.0, 2)
    for p in e.sample(RNG, 100):
        rep = report(e.surface, p)
        assert rep.l / rep.k == pytest.approx(3.0, rel=1e-8)


def test_heisenberg_equator_values():
    e = catalog.heisenberg_sphere(1.0, 2)
    rep = report(e.surface, Point(np.array([1.0, 0, 0, 0, 0.0])))
    assert rep.k == pytest.approx(1.0, abs=1e-12)
    assert rep.l == pytest.approx(3.0, abs=1e-12)
    assert rep.alpha == pytest.approx(0.0, abs=1e-12)


def test_heisenberg_pole_is_singular_and_tilt_blows_up():
    from heisgeo.surface import SingularPoint, build_frame

    e = catalog.heisenberg_sphere(1.0, 2)
    with pytest.raises(SingularPoint):
        build_frame(e.surface, Point(np.array([0.0, 0, 0, 0, 0.5])))
    # the tilt grows without bound as the sample radius shrinks
    tilts = []
    for z in (1e-1, 1e-2, 1e-3):
        t = 0.5 * math.sqrt(1 - z**4)
        p = Point(np.array([z, 0, 0, 0, t]))
        tilts.append(abs(report(e.surface, p).alpha))
    assert tilts[0] < tilts[1] < tilts[2]
    assert tilts[2] > 100.0


def test_pansu_chart_height_at_axis():
    e = catalog.pansu(1.0, 2)
    # graph height at the axis is a quarter turn of the unit profile
    assert e.charts["upper"].value(np.array([0, 0, 0, 0, 0.0])) == pytest.approx(
        math.pi / 4, rel=1e-15
    )


def test_shifted_sphere_reduces_to_quartic_at_zero_shift():
    a = catalog.shifted_sphere(0.0, 1.0, 2)
    b = catalog.heisenberg_sphere(1.0, 2)
    for p in a.sample(RNG, 30):
        ra, rb = report(a.surface, p), report(b.surface, p)
        assert ra.k == pytest.approx(rb.k, abs=1e-12)
        assert ra.l == pytest.approx(rb.l, abs=1e-12)


def test_shifted_sphere_derived_values():
    # frozen by hand: k = 0.99/1.008, l = 1.97/1.008 at lam=.5, rho0=1.2, |z|=.7
    e = catalog.shifted_sphere(0.5, 1.2, 2)
    t = 0.5 * math.sqrt(1.2**4 - (0.49 + 0.5) ** 2)
    rep = report(e.surface, Point(np.array([0.7, 0, 0, 0, t])))
    assert rep.k == pytest.approx(0.98214285714285714, abs=1e-12)
    assert rep.l == pytest.approx(1.9543650793650794, abs=1e-12)
    assert rep.l < 3 * rep.k


def test_shifted_sphere_gap_formula():
    e = catalog.shifted_sphere(0.5, 1.2, 2)
    for p in e.sample(RNG, 50):
        rep = report(e.surface, p)
        gap = 3 * rep.k - rep.l
        assert gap == pytest.approx(2 * 0.5 / (1.2**2 * radius(p)), abs=1e-8)
        assert gap > 0


def test_shifted_sphere_empty_raises():
    with pytest.raises(DomainError):
        catalog.shifted_sphere(2.0, 1.0, 2)


# ---------------------------------------------------------------------------
# flat examples


def test_cylinder_T_is_tangent():
    e = catalog.cylinder(1.5, 2)
    for p in e.sample(RNG, 30):
        assert build_frame(e.surface, p).alpha == pytest.approx(0.0, abs=1e-14)


def test_hyperplane_validation():
    with pytest.raises(ValueError):
        catalog.hyperplane([0, 0, 0, 0], 2)
    with pytest.raises(ValueError):
        catalog.cylinder(-1.0, 2)


def test_by_name_and_describe():
    e = catalog.by_name("pansu", n=2, lam=2.0)
    assert e.params["lam"] == 2.0
    with pytest.raises(KeyError):
        catalog.by_name("torus")
    d = e.describe()
    assert d["name"] == "pansu" and "k" in d["expected"]
