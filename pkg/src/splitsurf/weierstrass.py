"""Surface patches in R^3_1 from holomorphic generating data.

A pair (f, g) feeds the general representation with curve derivative
(-f(1+g^2)/2, (J/2) f(1-g^2), f g); a single function g feeds the special
form with f replaced by 1/g'.  The real part of the integral curve is a
minimal timelike surface of negative Gauss curvature, the imaginary part one
of positive curvature.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .algebra import NoSquareRoot, SplitComplex, ZeroDivisor, splitc
from .holofn import (
    PLUS,
    MINUS,
    Const,
    DomainError,
    HoloExpr,
    antiderivative,
    build,
    integrate_real,
)

__all__ = [
    "Part",
    "GeneratingData",
    "SurfacePatch",
    "TimelikeViolation",
    "curve_expressions",
    "curve_derivative",
    "isotropy_defect",
    "conformal_factor",
    "evaluate_surface",
]

_SING_EPS = 1e-12


class TimelikeViolation(RuntimeError):
    """A sample where the induced metric fails to be indefinite."""


class Part(enum.Enum):
    REAL = "real"
    IMAGINARY = "imaginary"


@dataclass(frozen=True)
class GeneratingData:
    """Weierstrass-type generating data plus base point and part selector."""

    g: HoloExpr
    f: HoloExpr | None = None  # None means the special form with f = 1/g'
    base_point: SplitComplex = field(default_factory=lambda: splitc(0.0))
    part: Part = Part.REAL

    @classmethod
    def general(cls, f, g, part=Part.REAL, base_point=None) -> "GeneratingData":
        return cls(g=g, f=f, part=part, base_point=base_point or splitc(0.0))

    @classmethod
    def canonical(cls, g, part=Part.REAL, base_point=None) -> "GeneratingData":
        return cls(g=g, f=None, part=part, base_point=base_point or splitc(0.0))

    @property
    def is_canonical(self) -> bool:
        return self.f is None


def curve_expressions(data: GeneratingData):
    """The three components of the curve derivative as expression trees."""
    g = data.g
    one = Const(splitc(1.0))
    half = Const(splitc(0.5))
    jhalf = Const(splitc(0.0, 0.5))
    g2 = build("pow", g, 2)
    if data.f is not None:
        f = data.f
        psi1 = build("neg", build("mul", half, build("mul", f, build("add", one, g2))))
        psi2 = build("mul", jhalf, build("mul", f, build("sub", one, g2)))
        psi3 = build("mul", f, g)
    else:
        gp = g.derivative()
        two_gp = build("mul", Const(splitc(2.0)), gp)
        psi1 = build("neg", build("div", build("add", one, g2), two_gp))
        psi2 = build("mul", Const(splitc(0.0, 1.0)), build("div", build("sub", one, g2), two_gp))
        psi3 = build("div", g, gp)
    return psi1, psi2, psi3


def curve_derivative(data: GeneratingData, z) -> tuple[SplitComplex, SplitComplex, SplitComplex]:
    """Value of the curve derivative at z; raises ZeroDivisor at singular points."""
    return tuple(e.eval(z) for e in curve_expressions(data))


def isotropy_defect(data: GeneratingData, z) -> SplitComplex:
    """-psi1^2 + psi2^2 + psi3^2; identically zero for valid generating data."""
    p1, p2, p3 = curve_derivative(data, z)
    return -(p1 * p1) + p2 * p2 + p3 * p3


def _part_re_im(values: SplitComplex, part: Part):
    """(tangent-u, tangent-v) component pair of one curve coordinate."""
    if part == Part.REAL:
        return values.re, values.im
    return values.im, values.re


def conformal_factor(psi_vals, part: Part):
    """Analytic E = <x_u, x_u>; the patch metric is E, F=0, G=-E."""
    a1, _ = _part_re_im(psi_vals[0], part)
    a2, _ = _part_re_im(psi_vals[1], part)
    a3, _ = _part_re_im(psi_vals[2], part)
    return -a1 * a1 + a2 * a2 + a3 * a3


@dataclass(frozen=True)
class SurfacePatch:
    """Sampled rectangular patch; invalid samples hold NaN coordinates."""

    us: np.ndarray
    vs: np.ndarray
    points: np.ndarray  # (len(us), len(vs), 3)
    valid: np.ndarray  # bool mask, same leading shape
    provenance: GeneratingData | None = None

    @property
    def h_u(self) -> float:
        return float(self.us[1] - self.us[0]) if len(self.us) > 1 else 0.0

    @property
    def h_v(self) -> float:
        return float(self.vs[1] - self.vs[0]) if len(self.vs) > 1 else 0.0

    @property
    def shape(self):
        return self.points.shape[:2]

    def zgrid(self) -> SplitComplex:
        U, V = np.meshgrid(self.us, self.vs, indexing="ij")
        return SplitComplex(U, V)

    @classmethod
    def from_points(cls, us, vs, points) -> "SurfacePatch":
        points = np.asarray(points, float)
        valid = np.all(np.isfinite(points), axis=-1)
        return cls(np.asarray(us, float), np.asarray(vs, float), points, valid, None)


def _eval_grid(expr: HoloExpr, zg: SplitComplex):
    """Vectorized evaluation with per-node fallback; NaN marks failures."""
    try:
        return expr.eval(zg), np.ones(zg.shape, bool)
    except (ZeroDivisor, NoSquareRoot):
        pass
    re = np.full(zg.shape, np.nan)
    im = np.full(zg.shape, np.nan)
    ok = np.zeros(zg.shape, bool)
    for idx in np.ndindex(zg.shape):
        try:
            v = expr.eval(zg[idx])
            re[idx] = v.re
            im[idx] = v.im
            ok[idx] = True
        except (ZeroDivisor, NoSquareRoot):
            continue
    return SplitComplex(re, im), ok


def _segment_integral(expr: HoloExpr, za: SplitComplex, zb: SplitComplex, tol: float):
    vp = integrate_real(lambda t: expr.eval_null(t, PLUS), float(za.p), float(zb.p), tol)
    vq = integrate_real(lambda t: expr.eval_null(t, MINUS), float(za.q), float(zb.q), tol)
    return SplitComplex.from_null(vp, vq)


def evaluate_surface(
    data: GeneratingData,
    domain: tuple[float, float, float, float],
    grid: tuple[int, int],
    tol: float = 1e-10,
) -> SurfacePatch:
    """Sample the selected part of the integral curve over a rectangle.

    domain is (u_min, u_max, v_min, v_max); grid is (N, M) with N, M >= 3.
    Components with a symbolic antiderivative are evaluated in closed form;
    the rest are integrated by quadrature with per-row continuation from the
    first column.  Samples where the integrand is singular (or the tangent
    plane degenerates) are marked invalid rather than aborting the patch.
    """
    u0, u1, v0, v1 = map(float, domain)
    n, m = grid
    if n < 3 or m < 3:
        raise ValueError("grid must be at least 3x3")
    if not (u0 < u1 and v0 < v1):
        raise ValueError("domain must satisfy min < max per axis")
    us = np.linspace(u0, u1, n)
    vs = np.linspace(v0, v1, m)
    U, V = np.meshgrid(us, vs, indexing="ij")
    zg = SplitComplex(U, V)
    z0 = data.base_point

    exprs = curve_expressions(data)
    psi_vals = []
    valid = np.ones((n, m), bool)
    for e in exprs:
        vals, ok = _eval_grid(e, zg)
        psi_vals.append(vals)
        valid &= ok

    # conformal factor: flags tangent-plane degeneracies without differencing
    e_an = np.where(valid, conformal_factor(psi_vals, data.part), np.nan)
    with np.errstate(invalid="ignore"):
        scale = np.nanmax(np.abs(e_an)) if np.any(valid) else 1.0
        degenerate = valid & (np.abs(e_an) <= _SING_EPS * max(1.0, scale))
    valid &= ~degenerate

    curve = np.full((n, m, 3), np.nan)  # split-complex curve values, re/im below
    curve_im = np.full((n, m, 3), np.nan)

    for k, e in enumerate(exprs):
        anti = antiderivative(e)
        if anti is not None:
            vals, ok = _eval_grid(anti, zg)
            base = anti.eval(z0)
            curve[:, :, k] = vals.re - base.re
            curve_im[:, :, k] = vals.im - base.im
            valid &= ok
            continue
        _integrate_component(e, k, zg, z0, us, vs, tol, curve, curve_im, valid)

    if data.part == Part.REAL:
        points = curve
    else:
        points = curve_im
    valid &= np.all(np.isfinite(points), axis=-1)
    points = np.where(valid[:, :, None], points, np.nan)

    interior = np.zeros((n, m), bool)
    interior[1:-1, 1:-1] = True
    bad = valid & interior & (-(e_an**2) >= 0.0)
    if np.any(bad):
        raise TimelikeViolation(
            "induced metric not indefinite at %d interior samples" % int(np.sum(bad))
        )
    return SurfacePatch(us, vs, points, valid, data)


def _integrate_component(expr, k, zg, z0, us, vs, tol, curve, curve_im, valid):
    """Quadrature fallback: first column from z0, then accumulate along rows."""
    n, m = len(us), len(vs)
    col0 = np.full(m, None, dtype=object)
    for j in range(m):
        target = zg[0, j]
        try:
            prev = col0[j - 1] if j > 0 else None
            if prev is None:
                col0[j] = _segment_integral(expr, z0, target, tol)
            else:
                col0[j] = prev + _segment_integral(expr, zg[0, j - 1], target, tol)
        except (DomainError, ZeroDivisor, NoSquareRoot):
            col0[j] = None
    for j in range(m):
        acc = col0[j]
        if acc is None:
            valid[:, j] = False
            continue
        curve[0, j, k] = acc.re
        curve_im[0, j, k] = acc.im
        for i in range(1, n):
            try:
                acc = acc + _segment_integral(expr, zg[i - 1, j], zg[i, j], tol)
            except (DomainError, ZeroDivisor, NoSquareRoot):
                valid[i:, j] = False
                break
            curve[i, j, k] = acc.re
            curve_im[i, j, k] = acc.im
