"""Closed-form example surfaces with their published curvature values.

Each entry bundles a defining function, closed-form expectations for the
tilt and the curvature scalars, and a seeded sampler of regular on-surface
points kept away from singular radii by a relative margin of 1e-3.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from . import duals
from .core import Point
from .surface import DomainError, RadialProfile, SurfaceDef

__all__ = [
    "CatalogEntry",
    "pansu",
    "heisenberg_sphere",
    "shifted_sphere",
    "cylinder",
    "hyperplane",
    "standard_entries",
    "by_name",
    "SAMPLER_MARGIN",
]

SAMPLER_MARGIN = 1e-3


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    surface: SurfaceDef
    params: dict
    expected: dict  # scalar name -> callable(Point) -> float
    sampler: Callable
    formulas: dict = field(default_factory=dict)
    profile: Optional[RadialProfile] = None
    charts: dict = field(default_factory=dict)

    def sample(self, rng, count):
        rng = np.random.default_rng(rng) if isinstance(rng, int) else rng
        return self.sampler(rng, count)

    def describe(self):
        return {
            "name": self.name,
            "params": {k: v if np.isscalar(v) else list(v) for k, v in self.params.items()},
            "expected": dict(self.formulas),
        }


def _radius2(coords, n):
    r = coords[0] * coords[0]
    for c in coords[1 : 2 * n]:
        r = r + c * c
    return r


def _unit_direction(rng, m):
    v = rng.normal(size=m)
    return v / np.linalg.norm(v)


def _log_uniform(rng, lo, hi):
    return math.exp(rng.uniform(math.log(lo), math.log(hi)))


# ---------------------------------------------------------------------------
# squared Pansu profile: Psi(s) with s = 1 - lam^2 |z|^2, f(r) = Psi(s)/lam^4

_PSI_SERIES = (0.0, 1.0, -1.0 / 3.0, -1.0 / 45.0, -1.0 / 105.0,
               -8.0 / 1575.0, -32.0 / 10395.0)
_SERIES_CUT = 1e-3


def _psi(s):
    """Squared height of the constant-curvature radial profile.

    Analytic across s = 0 (the equator); a Taylor branch below the cut keeps
    the closed form's 0/0 cancellations out of floating point.
    """
    sv = duals.value(s)
    if sv < -_SERIES_CUT:
        raise DomainError("outside the constant-curvature profile domain")
    if sv < _SERIES_CUT:
        acc = 0.0
        for c in reversed(_PSI_SERIES):
            acc = acc * s + c
        return acc
    a = duals.sqrt(s * (1.0 - s)) + duals.arcsin(duals.sqrt(s))
    return a * a * 0.25


def _psi_d1(sv):
    if sv < _SERIES_CUT:
        cs = [i * c for i, c in enumerate(_PSI_SERIES)][1:]
        acc = 0.0
        for c in reversed(cs):
            acc = acc * sv + c
        return acc
    sv = min(sv, 1.0 - 1e-13)  # the axis s=1 is singular; keep finite there
    a = math.sqrt(sv * (1.0 - sv)) + math.asin(math.sqrt(sv))
    return 0.5 * a * math.sqrt((1.0 - sv) / sv)


def _psi_d2(sv):
    if sv < _SERIES_CUT:
        cs = [i * (i - 1) * c for i, c in enumerate(_PSI_SERIES)][2:]
        acc = 0.0
        for c in reversed(cs):
            acc = acc * sv + c
        return acc
    sv = min(sv, 1.0 - 1e-13)
    a = math.sqrt(sv * (1.0 - sv)) + math.asin(math.sqrt(sv))
    return (1.0 - sv) / (2.0 * sv) - a / (4.0 * math.sqrt(1.0 - sv) * sv**1.5)


def pansu(lam, n) -> CatalogEntry:
    """Rotationally symmetric sphere of constant principal curvature.

    The working defining function is the globally smooth squared form
    ``u = f(|z|^2) - t^2`` (regular through the equator, singular only at
    the poles); the upper/lower hemisphere height graphs are attached as
    separate charts and must agree with it wherever both apply.
    """
    if lam <= 0:
        raise ValueError("curvature parameter must be positive")
    lam = float(lam)
    lam2, lam4 = lam * lam, lam**4

    def func(coords):
        s = 1.0 - lam2 * _radius2(coords, n)
        return _psi(s) / lam4 - coords[2 * n] * coords[2 * n]

    def grad_hess(coords):
        c = np.asarray(coords, dtype=float)
        hor = c[: 2 * n]
        t = c[2 * n]
        s = 1.0 - lam2 * float(hor @ hor)
        if s < -_SERIES_CUT:
            raise DomainError("outside the constant-curvature profile domain")
        p1, p2 = _psi_d1(s), _psi_d2(s)
        grad = np.empty(2 * n + 1)
        grad[: 2 * n] = -2.0 * hor * p1 / lam2
        grad[2 * n] = -2.0 * t
        hess = np.zeros((2 * n + 1, 2 * n + 1))
        hess[: 2 * n, : 2 * n] = 4.0 * np.outer(hor, hor) * p2
        idx = np.arange(2 * n)
        hess[idx, idx] += -2.0 * p1 / lam2
        hess[2 * n, 2 * n] = -2.0
        u = _psi(s) / lam4 - t * t
        return u, grad, hess

    surface = SurfaceDef(
        func=func, n=n, name="pansu", params={"lam": lam}, grad_hess=grad_hess
    )

    def height(coords):  # hemisphere graph height
        r = _radius2(coords, n)
        w = duals.sqrt(r)
        arg = lam * w
        if duals.value(arg) > 1.0:
            raise DomainError("outside the chart domain |z| <= 1/lam")
        return (arg * duals.sqrt(1.0 - arg * arg) + duals.arccos(arg)) / (2.0 * lam2)

    def upper(coords):
        return height(coords) - coords[2 * n]

    def lower(coords):
        return height(coords) + coords[2 * n]

    charts = {
        "upper": SurfaceDef(func=upper, n=n, name="pansu-upper", params={"lam": lam}),
        "lower": SurfaceDef(func=lower, n=n, name="pansu-lower", params={"lam": lam}),
    }

    def exp_alpha(p: Point):
        r = float(np.dot(p.x, p.x) + np.dot(p.y, p.y))
        s = max(1.0 - lam2 * r, 0.0)
        return math.copysign(math.sqrt(s / r), p.t) if p.t != 0.0 else 0.0

    expected = {
        "k": lambda p: lam,
        "l": lambda p: 2.0 * lam,
        "H": lambda p: 2.0 * n * lam,
        "alpha": exp_alpha,
    }

    def sampler(rng, count):
        pts = []
        lo = SAMPLER_MARGIN / lam
        hi = (1.0 - SAMPLER_MARGIN) / lam
        for _ in range(count):
            z = _log_uniform(rng, lo, hi)
            d = _unit_direction(rng, 2 * n)
            f = _psi(1.0 - lam2 * z * z) / lam4
            t = math.sqrt(max(f, 0.0)) * (1.0 if rng.random() < 0.5 else -1.0)
            pts.append(Point(np.concatenate([z * d, [t]])))
        return pts

    profile = RadialProfile(
        f=lambda r: _psi(1.0 - lam2 * r) / lam4,
        df=lambda r: -_psi_d1(1.0 - lam2 * r) / lam2,
        ddf=lambda r: _psi_d2(1.0 - lam2 * r),
        r_max=1.0 / lam2,
    )

    return CatalogEntry(
        name="pansu",
        surface=surface,
        params={"lam": lam, "n": n},
        expected=expected,
        sampler=sampler,
        formulas={
            "k": "lam",
            "l": "2*lam",
            "H": "2*n*lam",
            "alpha": "sign(t)*sqrt(1-lam^2*|z|^2)/|z|",
        },
        profile=profile,
        charts=charts,
    )


def heisenberg_sphere(rho, n) -> CatalogEntry:
    """Quartic sphere ``|z|^4 + 4t^2 = rho^4``; umbilic with l = 3k."""
    if rho <= 0:
        raise ValueError("radius must be positive")
    rho = float(rho)
    rho4 = rho**4

    def func(coords):
        r = _radius2(coords, n)
        t = coords[2 * n]
        return rho4 - r * r - 4.0 * t * t

    surface = SurfaceDef(func=func, n=n, name="heisenberg-sphere", params={"rho": rho})

    def radius(p):
        return math.sqrt(float(np.dot(p.x, p.x) + np.dot(p.y, p.y)))

    expected = {
        "k": lambda p: radius(p) / rho**2,
        "l": lambda p: 3.0 * radius(p) / rho**2,
        "H": lambda p: (2 * n + 1) * radius(p) / rho**2,
        "alpha": lambda p: 2.0 * p.t / (rho**2 * radius(p)),
    }

    def sampler(rng, count):
        pts = []
        lo, hi = SAMPLER_MARGIN * rho, (1.0 - SAMPLER_MARGIN) * rho
        for _ in range(count):
            z = _log_uniform(rng, lo, hi)
            d = _unit_direction(rng, 2 * n)
            t = 0.5 * math.sqrt(rho4 - z**4) * (1.0 if rng.random() < 0.5 else -1.0)
            pts.append(Point(np.concatenate([z * d, [t]])))
        return pts

    profile = RadialProfile(
        f=lambda r: (rho4 - r * r) / 4.0,
        df=lambda r: -r / 2.0,
        ddf=lambda r: -0.5,
        r_max=rho * rho,
    )

    return CatalogEntry(
        name="heisenberg-sphere",
        surface=surface,
        params={"rho": rho, "n": n},
        expected=expected,
        sampler=sampler,
        formulas={
            "k": "|z|/rho^2",
            "l": "3|z|/rho^2",
            "H": "(2n+1)|z|/rho^2",
            "alpha": "2t/(rho^2 |z|)",
        },
        profile=profile,
    )


def shifted_sphere(lam, rho0, n) -> CatalogEntry:
    """Level set ``4t^2 + (|z|^2 + lam)^2 = rho0^4``; umbilic with l <= 3k."""
    if lam < 0:
        raise ValueError("shift parameter must be nonnegative")
    if rho0**2 <= lam:
        raise DomainError("empty surface: need rho0^2 > lam")
    lam, rho0 = float(lam), float(rho0)
    rho4 = rho0**4

    def func(coords):
        r = _radius2(coords, n)
        t = coords[2 * n]
        shifted = r + lam
        return rho4 - 4.0 * t * t - shifted * shifted

    surface = SurfaceDef(
        func=func, n=n, name="shifted-sphere", params={"lam": lam, "rho0": rho0}
    )

    def radius(p):
        return math.sqrt(float(np.dot(p.x, p.x) + np.dot(p.y, p.y)))

    expected = {
        "k": lambda p: (radius(p) ** 2 + lam) / (rho0**2 * radius(p)),
        "l": lambda p: (3.0 * radius(p) ** 2 + lam) / (rho0**2 * radius(p)),
        "alpha": lambda p: 2.0 * p.t / (rho0**2 * radius(p)),
    }
    expected["H"] = lambda p: expected["l"](p) + (2 * n - 2) * expected["k"](p)

    zmax = math.sqrt(rho0**2 - lam)

    def sampler(rng, count):
        pts = []
        lo, hi = SAMPLER_MARGIN * zmax, (1.0 - SAMPLER_MARGIN) * zmax
        for _ in range(count):
            z = _log_uniform(rng, lo, hi)
            d = _unit_direction(rng, 2 * n)
            t = 0.5 * math.sqrt(rho4 - (z * z + lam) ** 2)
            t *= 1.0 if rng.random() < 0.5 else -1.0
            pts.append(Point(np.concatenate([z * d, [t]])))
        return pts

    return CatalogEntry(
        name="shifted-sphere",
        surface=surface,
        params={"lam": lam, "rho0": rho0, "n": n},
        expected=expected,
        sampler=sampler,
        formulas={
            "k": "(|z|^2+lam)/(rho0^2 |z|)",
            "l": "(3|z|^2+lam)/(rho0^2 |z|)",
            "alpha": "2t/(rho0^2 |z|)",
        },
    )


def cylinder(c, n) -> CatalogEntry:
    """Vertical cylinder over a round sphere; umbilic with l = k = 1/c."""
    if c <= 0:
        raise ValueError("radius must be positive")
    c = float(c)

    def func(coords):
        return c * c - _radius2(coords, n)

    surface = SurfaceDef(func=func, n=n, name="cylinder", params={"c": c})
    expected = {
        "k": lambda p: 1.0 / c,
        "l": lambda p: 1.0 / c,
        "H": lambda p: (2 * n - 1) / c,
        "alpha": lambda p: 0.0,
    }

    def sampler(rng, count):
        pts = []
        for _ in range(count):
            d = _unit_direction(rng, 2 * n)
            t = rng.uniform(-2.0 * c, 2.0 * c)
            pts.append(Point(np.concatenate([c * d, [t]])))
        return pts

    return CatalogEntry(
        name="cylinder",
        surface=surface,
        params={"c": c, "n": n},
        expected=expected,
        sampler=sampler,
        formulas={"k": "1/c", "l": "1/c", "H": "(2n-1)/c", "alpha": "0"},
    )


def hyperplane(A, n) -> CatalogEntry:
    """Vertical hyperplane; totally flat with vanishing tilt."""
    A = np.asarray(A, dtype=float)
    if A.size != 2 * n or not np.any(A):
        raise ValueError("need a nonzero coefficient vector of length 2n")

    def func(coords):
        acc = 0.0
        for a, cc in zip(A, coords[: 2 * n]):
            if a != 0.0:
                acc = acc + a * cc
        return acc

    surface = SurfaceDef(
        func=func, n=n, name="hyperplane", params={"A": tuple(A)}
    )
    zero = lambda p: 0.0
    expected = {"k": zero, "l": zero, "H": zero, "alpha": zero}

    unit = A / np.linalg.norm(A)

    def sampler(rng, count):
        pts = []
        for _ in range(count):
            w = rng.normal(size=2 * n)
            w -= (w @ unit) * unit
            t = rng.uniform(-2.0, 2.0)
            pts.append(Point(np.concatenate([w, [t]])))
        return pts

    return CatalogEntry(
        name="hyperplane",
        surface=surface,
        params={"A": tuple(A), "n": n},
        expected=expected,
        sampler=sampler,
        formulas={"k": "0", "l": "0", "H": "0", "alpha": "0"},
    )


def standard_entries(n=2):
    """Default-parameter instances of every catalog family."""
    A = np.zeros(2 * n)
    A[0] = 1.0
    return [
        pansu(1.0, n),
        heisenberg_sphere(1.0, n),
        shifted_sphere(0.5, 1.2, n),
        cylinder(1.0, n),
        hyperplane(A, n),
    ]


def by_name(name, n=2, **params) -> CatalogEntry:
    makers = {
        "pansu": lambda: pansu(params.get("lam", 1.0), n),
        "heisenberg-sphere": lambda: heisenberg_sphere(params.get("rho", 1.0), n),
        "shifted-sphere": lambda: shifted_sphere(
            params.get("lam", 0.5), params.get("rho0", 1.2), n
        ),
        "cylinder": lambda: cylinder(params.get("c", 1.0), n),
        "hyperplane": lambda: hyperplane(
            params.get("A", np.eye(2 * n)[0]), n
        ),
    }
    if name not in makers:
        raise KeyError(f"unknown catalog entry {name!r}")
    return makers[name]()
