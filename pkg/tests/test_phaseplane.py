"""Phase-plane field, stationary set, orbits, portrait data."""

import io
import math

import numpy as np
import pytest

from heisgeo import verify
from heisgeo.phaseplane import (
    OnSeparatrix,
    PhaseParams,
    PhasePoint,
    integrate,
    periodic_orbit,
    portrait,
    stationary_points,
    upsilon_beta,
    vector_field,
)
from heisgeo.rk45 import StepControl

PP = PhaseParams(2, 1.0)


def test_field_at_stationary_points():
    p1, p2 = stationary_points(PP)
    assert p1 == PhasePoint(0.0, 1.0)
    assert p2.beta == pytest.approx(-1.0 / 3.0, abs=0)
    assert vector_field(PP, p1) == (0.0, 0.0)
    da, db = vector_field(PP, p2)
    assert db == 0.0
    assert abs(da) <= 4 * np.finfo(float).eps  # defect is not a binary fraction


def test_field_on_axis():
    da, db = vector_field(PP, PhasePoint(0.7, 0.0))
    assert db == 0.0
    assert da == pytest.approx(-(0.7**2) - 1.0 / 16.0, rel=1e-15)
    assert da < 0


def test_field_symmetry():
    rng = np.random.default_rng(11)
    for _ in range(200):
        a, b = rng.normal(size=2) * 2
        da, db = vector_field(PP, PhasePoint(a, b))
        da2, db2 = vector_field(PP, PhasePoint(-a, b))
        assert da2 == da and db2 == -db


def test_upsilon():
    assert upsilon_beta(PP, 1.0) == (0.0,)
    got = upsilon_beta(PP, 2.0)
    assert got[0] == pytest.approx(0.66143782776614764, rel=1e-15)  # sqrt(7)/4
    assert got[1] == -got[0]
    assert upsilon_beta(PP, 0.5) == ()  # between the stationary defects


def test_integrate_stationary_is_constant():
    tr = integrate(PP, PhasePoint(0.0, 1.0), 2.0)
    arr = tr.sample_array()
    assert np.max(np.abs(arr[:, 1] - 0.0)) == 0.0
    assert np.max(np.abs(arr[:, 2] - 1.0)) == 0.0


def test_integrate_enters_positive_tilt():
    # from the axis above the stationary defect the tilt initially grows
    tr = integrate(PP, PhasePoint(0.0, 2.0), 0.5)
    arr = tr.sample_array()
    fwd = arr[arr[:, 0] > 1e-12]
    assert np.all(fwd[:, 1] > 0)


def test_integrate_sample_spacing_and_events():
    ctrl = StepControl(rtol=1e-10, atol=1e-10, max_step=0.05)
    tr = integrate(PP, PhasePoint(0.5, 2.0), 6.0, control=ctrl)
    arr = tr.sample_array()
    assert np.max(np.diff(arr[:, 0])) <= 0.05 + 1e-12
    assert len(tr.events) >= 2
    assert all(abs(b) > 1e-12 for _, b in tr.events)


def test_integrate_crossing_golden():
    """First forward axis crossing from (0.5, 2), frozen after halved-step
    re-integration agreed to 1e-10."""
    gold = verify.golden()["crossing"]["n=2,c=1,alpha0=0.5,beta0=2"]
    tr = integrate(PP, PhasePoint(0.5, 2.0), 6.0)
    s, b = [e for e in tr.events if e[0] > 0][0]
    assert s == pytest.approx(gold["s"], abs=1e-8)
    assert b == pytest.approx(gold["beta"], abs=1e-8)
    assert 0.0 < b < 1.0  # returns to the axis below the stationary defect


def test_derivative_consistency_along_orbit():
    ctrl = StepControl(rtol=1e-10, atol=1e-10, max_step=5e-4)
    tr = integrate(PP, PhasePoint(0.0, 2.0), 2.0, control=ctrl)
    arr = tr.sample_array()
    s, a, b = arr[:, 0], arr[:, 1], arr[:, 2]
    # second-order three-point derivative on the (nonuniform) sample grid;
    # skip stencils with a near-degenerate step (endpoint landing nodes),
    # where dividing by the tiny step only amplifies state rounding
    h0 = s[1:-1] - s[:-2]
    h1 = s[2:] - s[1:-1]
    ok = (h0 > 1e-5) & (h1 > 1e-5)
    db = (
        h0**2 * b[2:] - h1**2 * b[:-2] + (h1**2 - h0**2) * b[1:-1]
    ) / (h0 * h1 * (h0 + h1))
    rhs = -2 * PP.n * b[1:-1] * a[1:-1]
    assert np.max(np.abs((db - rhs)[ok])) <= 1e-6


# ---------------------------------------------------------------------------
# periodic orbits


def test_periodic_orbit_axis_seed():
    tr = periodic_orbit(PP, PhasePoint(0.0, 2.0))
    assert tr.closure_error <= 1e-8
    assert tr.period == pytest.approx(7.102420511707922, abs=1e-8)  # golden
    lo = min(b for _, b in tr.events)
    hi = max(b for _, b in tr.events)
    assert 0 < lo < 1.0 and hi > 0  # crossing below the stationary defect


def test_periodic_orbit_off_axis_and_crossings():
    tr = periodic_orbit(PP, PhasePoint(0.5, 2.0))
    assert tr.closure_error <= 1e-8 * (1 + math.hypot(0.5, 2.0))
    lo = min(b for _, b in tr.events)
    hi = max(b for _, b in tr.events)
    assert 0.0 < lo < 1.0 < hi


def test_periodic_orbit_negative_defect():
    tr = periodic_orbit(PP, PhasePoint(0.0, -0.6))
    assert tr.closure_error <= 1e-8
    arr = tr.sample_array()
    assert np.all(arr[:, 2] < 0)  # stays in the lower half-plane


def test_mirrored_seeds_equal_periods():
    t1 = periodic_orbit(PP, PhasePoint(0.8, 1.7))
    t2 = periodic_orbit(PP, PhasePoint(-0.8, 1.7))
    assert abs(t1.period - t2.period) / t1.period <= 1e-9


def test_orbit_never_crosses_axis():
    for seed in (PhasePoint(0.3, 0.4), PhasePoint(-1.0, 2.5), PhasePoint(0.0, -0.5)):
        tr = periodic_orbit(PP, seed)
        arr = tr.sample_array()
        assert np.all(np.sign(arr[:, 2]) == np.sign(seed.beta))


def test_on_separatrix_raises():
    with pytest.raises(OnSeparatrix):
        periodic_orbit(PP, PhasePoint(0.5, 0.0))
    with pytest.raises(ValueError):
        periodic_orbit(PP, PhasePoint(0.0, 1.0))


def test_closure_convergence_order():
    errs = []
    for hmax in (0.2, 0.1):
        ctrl = StepControl(rtol=1e30, atol=1e30, max_step=hmax, first_step=hmax)
        tr = periodic_orbit(PP, PhasePoint(0.0, 2.0), control=ctrl, orbit_tol=10.0)
        errs.append(tr.closure_error)
    assert errs[0] / errs[1] >= 16.0


def test_grid_closure_small_sample():
    pp = PhaseParams(3, 0.5)
    for q0 in (PhasePoint(0.3, 0.8), PhasePoint(-0.4, -0.2), PhasePoint(0.1, 1.9)):
        tr = periodic_orbit(pp, q0)
        assert tr.closure_error <= 1e-8 * (1 + math.hypot(q0.alpha, q0.beta))


# ---------------------------------------------------------------------------
# portrait


def test_portrait_dataset():
    data = portrait(PP)
    kinds = {row[0] for row in data.rows}
    assert "field" in kinds and "upsilon" in kinds and "stationary" in kinds
    orbit_kinds = {k for k in kinds if k.startswith("orbit:")}
    assert len(orbit_kinds) == 10  # five per half-plane
    st_rows = [r for r in data.rows if r[0] == "stationary"]
    assert (st_rows[0][2], st_rows[0][3]) == (0.0, 1.0)
    assert (st_rows[1][2], st_rows[1][3]) == (0.0, -1.0 / 3.0)
    # zero-tilt-rate rows satisfy their defining equation to rounding
    for _, _, a, b in (r for r in data.rows if r[0] == "upsilon"):
        assert abs(-a * a + (b - 1) * (3 * b + 1) / 16.0) <= 1e-12
    # orbits never touch the axis and are nested per half-plane
    per_orbit = {}
    for kind, s, a, b in data.rows:
        if kind.startswith("orbit:"):
            per_orbit.setdefault(kind, []).append(b)
    uppers = sorted(
        (min(bs), max(bs)) for k, bs in per_orbit.items() if min(bs) > 0
    )
    lowers = [(min(bs), max(bs)) for k, bs in per_orbit.items() if max(bs) < 0]
    assert len(uppers) == 5 and len(lowers) == 5
    # sorted by lower extent: the outermost ring comes first and encloses all
    for (lo1, hi1), (lo2, hi2) in zip(uppers, uppers[1:]):
        assert lo2 > lo1 and hi2 < hi1


def test_portrait_csv_format():
    buf = io.StringIO()
    portrait(PP, grid=5, seeds=[PhasePoint(0.0, 1.5)]).write_csv(buf)
    lines = buf.getvalue().splitlines()
    assert lines[0] == "kind,s,alpha,beta"
    parts = lines[1].split(",")
    assert len(parts) == 4
    float(parts[1]), float(parts[2]), float(parts[3])
