"""Curve integration on the group and on-surface derivative checks.

Covers unit-speed horizontal curves of constant curvature (the frame
formulation keeps the velocity equation linear), the radial profile equation
recovering the constant-curvature sphere, and finite-difference directional
derivatives of the curvature scalars along surface vector fields, with
offsets Newton-projected back onto the level set.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
import numpy as np

from . import rk45
from .catalog import _psi  # squared-height profile of the reference sphere
from .core import HorizontalVector, Point, frame_lift
from .rk45 import StepControl
from .surface import (
    DomainError,
    GeometryError,
    SurfaceDef,
    alpha_directional,
    build_frame,
    horizontal_gradient,
    report,
)

__all__ = [
    "CurveState",
    "GeodesicTrace",
    "ProjectionFailure",
    "IdentityResiduals",
    "geodesic_flow",
    "profile_ode",
    "identity_check",
    "leaf_constancy",
    "bracket_span",
    "surface_offset",
]


class ProjectionFailure(GeometryError):
    """Newton correction back to the level set did not converge."""


@dataclass(frozen=True, eq=False)
class CurveState:
    """A point together with a unit horizontal direction (the running
    characteristic direction along a flow)."""

    p: Point
    v: HorizontalVector


@dataclass
class GeodesicTrace:
    lam: float
    ss: np.ndarray
    coords: np.ndarray      # (m, 2n+1)
    velocities: np.ndarray  # (m, 2n)

    def state(self, i) -> CurveState:
        return CurveState(Point(self.coords[i]), HorizontalVector(self.velocities[i]))


def geodesic_flow(start: CurveState, lam, s_max, control=None) -> GeodesicTrace:
    """Integrate a constant-curvature horizontal curve.

    The frame coefficients of the velocity rotate at twice the curvature,
    the horizontal coordinates follow them, and the vertical coordinate
    follows the contact lift.  The velocity norm is preserved by the flow
    and is asserted on, never renormalized.
    """
    n = start.p.n
    v0 = start.v.coeffs
    if abs(np.linalg.norm(v0) - 1.0) > 1e-10:
        raise ValueError("initial direction must be a unit horizontal vector")
    # tight default: norm drift must stay below 1e-9 over long arcs
    control = control or StepControl(rtol=1e-12, atol=1e-12, max_step=0.05)
    lam = float(lam)

    def f(s, y):
        x = y[:n]
        yy = y[n : 2 * n]
        v = y[2 * n + 1 :]
        dv = np.concatenate([-v[n:], v[:n]]) * (2.0 * lam)
        dt = float(yy @ v[:n] - x @ v[n:])
        return np.concatenate([v[:n], v[n:], [dt], dv])

    y0 = np.concatenate([start.p.coords, v0])
    sol = rk45.solve(f, 0.0, y0, float(s_max), control)
    return GeodesicTrace(
        lam=lam,
        ss=sol.ss,
        coords=sol.ys[:, : 2 * n + 1],
        velocities=sol.ys[:, 2 * n + 1 :],
    )


def profile_ode(lam, r_span=None, num=200, eps=1e-6, control=None):
    """Integrate the squared-height radial equation of the umbilic sphere.

    Starts just inside the outer radius with the analytic local expansion of
    the profile as the initial value and integrates inward; returns the
    profile on a grid as ``(r, f)`` arrays.
    """
    lam = float(lam)
    if lam <= 0:
        raise ValueError("curvature parameter must be positive")
    r_out = 1.0 / (lam * lam)
    if r_span is None:
        r_span = (0.01 * r_out, (1.0 - eps) * r_out)
    r_lo, r_hi = r_span
    if not 0.0 < r_lo < r_hi < r_out:
        raise DomainError("profile grid must sit inside (0, 1/lam^2)")
    # keep steps below the grid scale: values come off the interpolant
    control = control or StepControl(
        rtol=1e-10, atol=1e-12, max_step=(r_hi - r_lo) / (4.0 * num)
    )
    lam2 = lam * lam

    def f(r, y):
        fv = max(float(y[0]), 0.0)
        return np.array([-math.sqrt(lam2 * r * fv / (1.0 - lam2 * r))])

    f0 = _psi(1.0 - lam2 * r_hi) / lam**4  # local expansion at the start
    sol = rk45.solve(f, r_hi, np.array([f0]), r_lo, control)
    grid = np.linspace(r_lo, r_hi, num)
    vals = np.array([float(sol(r)[0]) for r in grid])
    vals[-1] = f0
    return grid, vals


# ---------------------------------------------------------------------------
# on-surface flows and directional derivatives


def _newton_project(s: SurfaceDef, coords, maxit=10):
    c = np.asarray(coords, dtype=float).copy()
    for _ in range(maxit):
        u, grad, _ = s.evaluate(c)
        tol = 1e-13 * (1.0 + float(np.max(np.abs(grad)))) * (
            1.0 + float(np.max(np.abs(c)))
        )
        if abs(u) <= tol:
            return c
        g2 = float(grad @ grad)
        if g2 == 0.0:
            break
        c -= (u / g2) * grad
    raise ProjectionFailure(f"|u| stuck at {abs(u):g} after {maxit} iterations")


def surface_offset(s: SurfaceDef, coords, dirfn, h, nsub=4):
    """Flow distance ``h`` along the unit field ``dirfn`` and project back.

    The fields used here annihilate the defining function, so the Newton
    correction only removes integration drift.
    """
    c = np.asarray(coords, dtype=float).copy()
    step = h / nsub
    for _ in range(nsub):
        k1 = dirfn(c)
        k2 = dirfn(c + 0.5 * step * k1)
        k3 = dirfn(c + 0.5 * step * k2)
        k4 = dirfn(c + step * k3)
        c += (step / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    return _newton_project(s, c)


def _en_field(s: SurfaceDef, n):
    def dirfn(c):
        _, grad, _ = s.evaluate(c)
        b = horizontal_gradient(n, c, grad)
        b /= np.linalg.norm(b)
        en = np.concatenate([b[n:], -b[:n]])  # minus the rotation of the normal
        return frame_lift(HorizontalVector(en), Point(c))

    return dirfn


def _e2nhat_field(s: SurfaceDef, n):
    def dirfn(c):
        _, grad, _ = s.evaluate(c)
        b = horizontal_gradient(n, c, grad)
        gnorm = float(np.linalg.norm(b))
        alpha = -grad[2 * n] / gnorm
        w = alpha * frame_lift(HorizontalVector(b / gnorm), Point(c))
        w[2 * n] += 1.0
        return w / math.sqrt(1.0 + alpha * alpha)

    return dirfn


def _xi_field(s: SurfaceDef, pivots, index, n):
    def dirfn(c):
        fr = build_frame(s, Point(c), pivots=pivots)
        return frame_lift(fr.xi_prime[index], Point(c))

    return dirfn


def _en_alpha(s: SurfaceDef, coords, n):
    """Exact derivative of the tilt along the characteristic direction."""
    dirfn = _en_field(s, n)
    return alpha_directional(s, coords, dirfn(coords))


@dataclass
class IdentityResiduals:
    """Finite-difference residuals of the umbilic interior identities."""

    en_k: float
    en_alpha: float
    e2n_k: float
    e2n_alpha: float
    e2n_l: float
    xi_prime: float

    def as_dict(self):
        return {
            "en_k": self.en_k,
            "en_alpha": self.en_alpha,
            "e2n_k": self.e2n_k,
            "e2n_alpha": self.e2n_alpha,
            "e2n_l": self.e2n_l,
            "xi_prime": self.xi_prime,
        }

    def max(self):
        return max(self.as_dict().values())


def identity_check(s: SurfaceDef, p: Point, h_fd=1e-4) -> IdentityResiduals:
    """Residuals of the six interior identities at an umbilic point.

    First derivatives of ``k``, ``l`` and the tilt are central differences
    along projected flows of the characteristic direction, the rescaled
    vertical tangent and the invariant-complement fields; the right-hand
    sides use the base-point scalars, exact tilt rates, and a second
    difference of the exact tilt rate for the one second-order term.
    Every residual is expected to scale quadratically with the step.
    """
    n = p.n
    base = report(s, p)
    if base.spread > 10.0 * s.umbilic_tol:
        raise ValueError("identity residuals are meaningful only at umbilic points")
    pivots = base.frame.pivots
    k0, l0, a0 = base.k, base.l, base.alpha
    coords = p.coords
    phi0 = _en_alpha(s, coords, n)
    root = math.sqrt(1.0 + a0 * a0)

    def scalars(c):
        rep = report(s, Point(c), pivots=pivots)
        return rep.k, rep.l, rep.alpha

    def offsets(dirfn):
        return (
            surface_offset(s, coords, dirfn, +h_fd),
            surface_offset(s, coords, dirfn, -h_fd),
        )

    # characteristic direction
    cp, cm = offsets(_en_field(s, n))
    kp, lp, ap = scalars(cp)
    km, lm, am = scalars(cm)
    r_en_k = abs((kp - km) / (2.0 * h_fd) - (l0 - 2.0 * k0) * a0)
    r_en_a = abs((ap - am) / (2.0 * h_fd) - (k0 * k0 - a0 * a0 - k0 * l0))
    # first difference of the exact tilt rate = the iterated derivative
    en_en_alpha = (_en_alpha(s, cp, n) - _en_alpha(s, cm, n)) / (2.0 * h_fd)

    # rescaled vertical tangent
    cp, cm = offsets(_e2nhat_field(s, n))
    kp, lp, ap = scalars(cp)
    km, lm, am = scalars(cm)
    r_e2n_k = abs(
        (kp - km) / (2.0 * h_fd) - a0 * (k0 * k0 + phi0 + a0 * a0) / root
    )
    r_e2n_a = abs((ap - am) / (2.0 * h_fd) + k0 * phi0 / root)
    r_e2n_l = abs(
        (lp - lm) / (2.0 * h_fd)
        - (en_en_alpha + 6.0 * a0 * phi0 + 4.0 * a0**3 + a0 * l0 * l0) / root
    )

    # invariant complement: every scalar must be constant
    r_xi = 0.0
    for i in range(2 * n - 2):
        cp, cm = offsets(_xi_field(s, pivots, i, n))
        kp, lp, ap = scalars(cp)
        km, lm, am = scalars(cm)
        phip, phim = _en_alpha(s, cp, n), _en_alpha(s, cm, n)
        for gp, gm in ((kp, km), (lp, lm), (ap, am), (phip, phim)):
            r_xi = max(r_xi, abs((gp - gm) / (2.0 * h_fd)))

    return IdentityResiduals(
        en_k=float(r_en_k),
        en_alpha=float(r_en_a),
        e2n_k=float(r_e2n_k),
        e2n_alpha=float(r_e2n_a),
        e2n_l=float(r_e2n_l),
        xi_prime=float(r_xi),
    )


def leaf_constancy(s: SurfaceDef, p: Point, h_fd=1e-4):
    """Largest change of k, l, alpha along the invariant-complement fields."""
    n = p.n
    base = report(s, p)
    pivots = base.frame.pivots
    worst = 0.0
    for i in range(2 * n - 2):
        dirfn = _xi_field(s, pivots, i, n)
        cp = surface_offset(s, p.coords, dirfn, +h_fd)
        cm = surface_offset(s, p.coords, dirfn, -h_fd)
        rp, rm = report(s, Point(cp), pivots=pivots), report(s, Point(cm), pivots=pivots)
        worst = max(
            worst,
            abs(rp.k - rm.k),
            abs(rp.l - rm.l),
            abs(rp.alpha - rm.alpha),
        )
    return worst


def bracket_span(s: SurfaceDef, p: Point, h_fd=1e-5):
    """Span of the invariant-complement fields together with their brackets.

    Returns ``(rank, en_projection)`` where the rank counts dimensions of the
    span (in the frame-plus-vertical representation) and ``en_projection`` is
    the largest component of a unit vector of the span along the
    characteristic direction; the foliation statement needs rank 2n-1 with
    that projection bounded away from one.
    """
    n = p.n
    fr = build_frame(s, p)
    pivots = fr.pivots
    fields = [_xi_coeff_field(s, pivots, i, n) for i in range(2 * n - 2)]
    vals = [f(p.coords) for f in fields]
    rows = [np.concatenate([v, [0.0]]) for v in vals]

    step = h_fd
    for i in range(2 * n - 2):
        for j in range(i + 1, 2 * n - 2):
            Xi, Xj = vals[i], vals[j]
            wi = frame_lift(HorizontalVector(Xi), p)
            wj = frame_lift(HorizontalVector(Xj), p)
            dji = (fields[j](p.coords + step * wi) - fields[j](p.coords - step * wi)) / (
                2.0 * step
            )
            dij = (fields[i](p.coords + step * wj) - fields[i](p.coords - step * wj)) / (
                2.0 * step
            )
            hor = dji - dij
            tau = -2.0 * float(Xi[:n] @ Xj[n:] - Xi[n:] @ Xj[:n])
            rows.append(np.concatenate([hor, [tau]]))
    mat = np.array(rows)
    _, svals, vt = np.linalg.svd(mat)
    rank = int(np.sum(svals > 1e-8 * svals[0]))
    # orthonormal basis of the span, then project the characteristic direction
    en_full = np.concatenate([fr.en.coeffs, [0.0]])
    proj = float(np.linalg.norm(vt[:rank] @ en_full))
    return rank, proj


def _xi_coeff_field(s: SurfaceDef, pivots, index, n):
    def coeffs(c):
        fr = build_frame(s, Point(c), pivots=pivots)
        return fr.xi_prime[index].coeffs

    return coeffs
