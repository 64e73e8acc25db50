"""Variational area reduction along x1(u, v, t) = x0(u, v) + t m(u, v) k.

``m = w * H0`` where ``H0`` is the curvature numerator of the starting
surface and ``w`` is a window vanishing on the fixed part of the boundary.
The mean square of the perturbed numerator, mu1^2(t), is a polynomial in
t; its global minimizer selects the improved surface.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from . import diffgeo
from .errors import DegenerateNormal, InvalidGeometry, QuadratureWarning
from .jets import Jet, TPoly
from .polyalg import (
    RealPolynomial, chebyshev_nodes, fit_from_samples, global_minimum, golden_section,
)
from .quadrature import (
    DEFAULT_ORDER, QuadratureGrid, integrate2d_adaptive, integrate_samples,
)
from .surfaces import Domain, ParametricSurface

N_T_SAMPLES = 11
DEFAULT_AREA_TOL = 1e-10
DEFAULT_MU_TOL = 1e-12


# --- windows ----------------------------------------------------------

def _edge_is_fixed(s: ParametricSurface, axis: int, at_min: bool, n: int = 33) -> bool:
    """An edge is free if it collapses to a point or is glued to the opposite edge."""
    d = s.domain
    t = np.linspace(0.0, 1.0, n)
    if axis == 0:
        other = d.v_min + t * (d.v_max - d.v_min)
        edge = s.position(np.full(n, d.u_min if at_min else d.u_max), other)
        opposite = s.position(np.full(n, d.u_max if at_min else d.u_min), other)
    else:
        other = d.u_min + t * (d.u_max - d.u_min)
        edge = s.position(other, np.full(n, d.v_min if at_min else d.v_max))
        opposite = s.position(other, np.full(n, d.v_max if at_min else d.v_min))
    scale = max(1.0, float(np.max(np.abs(edge))))
    collapsed = float(np.max(np.ptp(edge, axis=0))) <= 1e-12 * scale
    glued = float(np.max(np.abs(edge - opposite))) <= 1e-12 * scale
    return not (collapsed or glued)


def default_window(s: ParametricSurface) -> Callable:
    """Boundary window w(u, v) for the ansatz.

    Families may supply their own window (the hemiellipsoid uses
    ``pi/2 - u``). Otherwise ``w`` is the product of normalized distances
    to every fixed edge; on the unit square that is ``u v (1-u)(1-v)``.
    """
    if s.window is not None:
        return s.window
    d = s.domain
    fixed = [(axis, at_min) for axis in (0, 1) for at_min in (True, False)
             if _edge_is_fixed(s, axis, at_min)]
    lu, lv = d.u_max - d.u_min, d.v_max - d.v_min

    def window(u, v):
        w = 1.0
        for axis, at_min in fixed:
            if axis == 0:
                w = w * ((u - d.u_min) / lu if at_min else (d.u_max - u) / lu)
            else:
                w = w * ((v - d.v_min) / lv if at_min else (d.v_max - v) / lv)
        return w

    return window


def default_direction(s: ParametricSurface, grid: Optional[QuadratureGrid] = None) -> np.ndarray:
    """Signed coordinate axis closest to the grid-averaged raw normal."""
    grid = grid or QuadratureGrid.build(s.domain, 16)
    U, V = grid.mesh()
    m = diffgeo.fundamental_magnitudes(s, U, V)
    avg = np.array([integrate_samples(m.n_raw[..., k], grid) for k in range(3)]) / s.domain.area
    norm = float(np.linalg.norm(avg))
    if norm < 1e-12:
        raise DegenerateNormal("average surface normal vanishes")
    k = int(np.argmax(np.abs(avg)))
    out = np.zeros(3)
    out[k] = math.copysign(1.0, avg[k])
    return out


# --- ansatz -----------------------------------------------------------

@dataclass(frozen=True)
class AnsatzFields:
    """Partials of x0 and m sampled on a point set, as 3-tuples / arrays."""

    x: tuple
    xu: tuple
    xv: tuple
    xuu: tuple
    xuv: tuple
    xvv: tuple
    m: np.ndarray
    mu: np.ndarray
    mv: np.ndarray
    muu: np.ndarray
    muv: np.ndarray
    mvv: np.ndarray
    k: np.ndarray

    def perturbed(self, t: float):
        """Partials of x1 at parameter t: (x, xu, xv, xuu, xuv, xvv)."""
        k = self.k

        def add(base, mm):
            return tuple(base[i] + (t * k[i]) * mm if k[i] != 0.0 else base[i] for i in range(3))

        return (add(self.x, self.m), add(self.xu, self.mu), add(self.xv, self.mv),
                add(self.xuu, self.muu), add(self.xuv, self.muv), add(self.xvv, self.mvv))

    def numerator(self, t: float) -> np.ndarray:
        _, xu, xv, xuu, xuv, xvv = self.perturbed(t)
        return diffgeo.numerator(xu, xv, xuu, xuv, xvv)

    def numerator_poly(self) -> TPoly:
        """H1 as an exact polynomial in t (degree <= 5) with per-point coefficients."""
        k = self.k

        def lift(base, mm):
            return tuple(TPoly([base[i], k[i] * mm]) if k[i] != 0.0 else TPoly([base[i]])
                         for i in range(3))

        parts = [lift(b, mm) for b, mm in ((self.xu, self.mu), (self.xv, self.mv), (self.xuu, self.muu),
                                           (self.xuv, self.muv), (self.xvv, self.mvv))]
        return diffgeo.numerator(*parts)

    def area_density(self, t: float) -> np.ndarray:
        _, xu, xv, *_ = self.perturbed(t)
        E, F, G = (xu[0] * xu[0] + xu[1] * xu[1] + xu[2] * xu[2],
                   xu[0] * xv[0] + xu[1] * xv[1] + xu[2] * xv[2],
                   xv[0] * xv[0] + xv[1] * xv[1] + xv[2] * xv[2])
        return diffgeo.area_density(E, F, G)


def _partials(jet: Jet) -> tuple:
    return tuple(jet.partial(i, j) for i, j in ((0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)))


@dataclass(frozen=True)
class VariationalAnsatz:
    """x1(u, v, t) = x0(u, v) + t w(u, v) H0(u, v) k."""

    base: ParametricSurface
    direction: np.ndarray
    window: Callable

    def __post_init__(self):
        k = np.asarray(self.direction, dtype=float)
        if k.shape != (3,) or abs(float(np.linalg.norm(k)) - 1.0) > 1e-12:
            raise InvalidGeometry(f"direction must be a unit 3-vector, got {self.direction!r}")
        object.__setattr__(self, "direction", k)

    @property
    def domain(self) -> Domain:
        return self.base.domain

    def perturbation_jet(self, u, v, order: int) -> tuple[tuple, Jet]:
        """Jets of x0 and of m = w H0, both truncated to ``order``."""
        x = self.base.jet(u, v, order + 2)
        xu = tuple(c.du() for c in x)
        xv = tuple(c.dv() for c in x)
        xuu = tuple(c.du() for c in xu)
        xuv = tuple(c.dv() for c in xu)
        xvv = tuple(c.dv() for c in xv)
        H0 = diffgeo.numerator(xu, xv, xuu, xuv, xvv)
        ju, jv = Jet.seeds(u, v, order)
        w = self.window(ju, jv)
        m = H0 * w if isinstance(w, Jet) else H0 * float(w)
        return tuple(c.truncate(order) for c in x), m.truncate(order)

    def fields(self, u, v) -> AnsatzFields:
        x, m = self.perturbation_jet(u, v, 2)
        px = [_partials(c) for c in x]
        comp = [tuple(px[i][j] for i in range(3)) for j in range(6)]
        return AnsatzFields(*comp, *_partials(m), k=self.direction)

    def m(self, u, v) -> np.ndarray:
        _, m = self.perturbation_jet(u, v, 0)
        return m.value

    def surface(self, t: float) -> ParametricSurface:
        """x1 at fixed t as a standalone surface (jet-capable)."""
        k = self.direction

        def func(u, v):
            if isinstance(u, Jet):
                x, m = self.perturbation_jet(u.value, v.value, u.order)
            else:
                x, m = self.perturbation_jet(u, v, 0)
                x = tuple(c.value for c in x)
                m = m.value
            return tuple(x[i] + (t * k[i]) * m for i in range(3))

        b = self.base
        return ParametricSurface(func, b.domain, f"{b.name}+t", {**b.params, "t": t},
                                 polynomial=b.polynomial, window=b.window)


def build_ansatz(s: ParametricSurface, direction=None, window=None,
                 grid: Optional[QuadratureGrid] = None) -> VariationalAnsatz:
    k = default_direction(s, grid) if direction is None else np.asarray(direction, float)
    w = default_window(s) if window is None else window
    return VariationalAnsatz(s, k, w)


# --- polynomial extraction and minimization ---------------------------

@dataclass(frozen=True)
class QuadSettings:
    """Quadrature choices: a fixed order (if set) or adaptive tolerances."""

    order: Optional[int] = None
    area_tol: float = DEFAULT_AREA_TOL
    mu_tol: float = DEFAULT_MU_TOL
    mu1: str = "expand"

    def __post_init__(self):
        if self.mu1 not in MU1_METHODS:
            raise ValueError(f"unknown mu1 extraction {self.mu1!r}")


def _integrate(fn, a: VariationalAnsatz, grid: Optional[QuadratureGrid], tol: float):
    """Fixed-grid integral when a grid is given, adaptive otherwise."""
    if grid is not None:
        U, V = grid.mesh()
        return integrate_samples(fn(U, V), grid), True
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", QuadratureWarning)
        res = integrate2d_adaptive(fn, a.domain, tol)
    return res.value, res.converged


def _mu_grid(a: VariationalAnsatz, quad: QuadSettings) -> Optional[QuadratureGrid]:
    if quad.order is not None:
        return QuadratureGrid.build(a.domain, quad.order)
    if a.base.polynomial:
        return QuadratureGrid.build(a.domain, DEFAULT_ORDER)
    return None


def mu1_samples(a: VariationalAnsatz, ts, grid: Optional[QuadratureGrid] = None,
                tol: float = DEFAULT_MU_TOL):
    """Integrated mu1^2 at each t in ``ts`` (one quadrature pass for all)."""
    ts = np.asarray(ts, dtype=float)

    def fn(U, V):
        f = a.fields(U, V)
        return np.stack([f.numerator(t) ** 2 for t in ts])

    return _integrate(fn, a, grid, tol)


def _fit_mu1(a: VariationalAnsatz, grid, tol) -> tuple[RealPolynomial, float, bool]:
    ts = chebyshev_nodes(N_T_SAMPLES)
    vals, ok = mu1_samples(a, np.append(ts, 0.0), grid, tol)
    return fit_from_samples(ts, vals[:-1]), float(vals[-1]), ok


def _expand_mu1(a: VariationalAnsatz, grid, tol) -> tuple[RealPolynomial, float, bool]:
    def fn(U, V):
        h = a.fields(U, V).numerator_poly()
        return (h * h).stack()

    coeffs, ok = _integrate(fn, a, grid, tol)
    coeffs = np.atleast_1d(coeffs)
    return RealPolynomial(coeffs), float(coeffs[0]), ok


MU1_METHODS = {"expand": _expand_mu1, "fit": _fit_mu1}


def mu1_squared_poly(a: VariationalAnsatz, grid: Optional[QuadratureGrid] = None,
                     tol: float = DEFAULT_MU_TOL, how: str = "expand") -> RealPolynomial:
    """mu1^2(t) as a polynomial.

    ``how="expand"`` integrates each t-coefficient of H1^2 directly (H1 is
    expanded exactly in t). ``how="fit"`` integrates H1^2 at 11 Chebyshev
    nodes on [-1, 1] and interpolates; it loses roughly the fit's
    condition number in the smallest coefficients.
    """
    return MU1_METHODS[how](a, grid, tol)[0]


def minimizable(p: RealPolynomial) -> RealPolynomial:
    """Drop a trailing tail that trimming left odd or non-positive.

    Terms just above the trim threshold can survive while the true leading
    term did not, leaving e.g. a tiny odd leading coefficient. Such terms
    are removed only while they stay below ``1e-9`` of the largest
    coefficient; anything larger is a genuine shape and is kept.
    """
    c = p.coeffs
    big = float(np.max(np.abs(c)))
    n = c.size
    while n > 1 and ((n - 1) % 2 == 1 or c[n - 1] <= 0) and abs(c[n - 1]) <= 1e-9 * big:
        n -= 1
    return RealPolynomial(c[:n]) if n < c.size else p


def area_at(a: VariationalAnsatz, t: float, grid: Optional[QuadratureGrid] = None,
            tol: float = DEFAULT_AREA_TOL):
    """Area of x1(., ., t); returns (area, converged)."""
    def fn(U, V):
        return a.fields(U, V).area_density(t)

    return _integrate(fn, a, grid, tol)


def direct_area_minimize(a: VariationalAnsatz, grid: Optional[QuadratureGrid], bracket,
                         tol: float = 1e-8) -> tuple[float, float]:
    """Golden-section search of t -> area(x1(t)) over ``bracket``."""
    lo, hi = float(bracket[0]), float(bracket[1])
    if not (np.isfinite(lo) and np.isfinite(hi)):
        raise ValueError("bracket must be finite")
    lo, hi = min(lo, hi), max(lo, hi)
    grid = grid or QuadratureGrid.build(a.domain, 64)
    U, V = grid.mesh()
    f = a.fields(U, V)

    def area(t):
        return integrate_samples(f.area_density(t), grid)

    return golden_section(area, lo, hi, tol)


@dataclass
class VariationalResult:
    t_min: float
    mu0_sq: float
    mu1_sq_at_tmin: float
    A0: float
    A1: float
    poly: RealPolynomial
    direction: np.ndarray
    method: str = "mu2"
    flags: list = field(default_factory=list)

    @property
    def decrease_fraction(self) -> float:
        return (self.A0 - self.A1) / self.A0 if self.A0 > 0 else 0.0

    @property
    def decrease_percent(self) -> float:
        return 100.0 * self.decrease_fraction

    @property
    def area_increased(self) -> bool:
        return "area_increased" in self.flags

    @property
    def quadrature_warning(self) -> bool:
        return "quadrature_warning" in self.flags

    def to_dict(self) -> dict:
        return {
            "t_min": self.t_min,
            "mu0_sq": self.mu0_sq,
            "mu1_sq_at_tmin": self.mu1_sq_at_tmin,
            "A0": self.A0,
            "A1": self.A1,
            "decrease_fraction": self.decrease_fraction,
            "decrease_percent": self.decrease_percent,
            "mu1_sq_poly": self.poly.coeffs.tolist(),
            "direction": self.direction.tolist(),
            "method": self.method,
            "flags": list(self.flags),
        }


def minimize(a: VariationalAnsatz, quad: QuadSettings = QuadSettings(),
             method: str = "mu2") -> VariationalResult:
    """Run the full reduction: fit mu1^2, minimize it, measure the areas.

    ``method="area"`` instead minimizes the area along the same family by
    golden-section search (bracket ``[0, 2 t_mu]``), for cross-checking.
    If the selected surface has larger area than the start, the
    ``area_increased`` flag is set and the area is minimized directly on
    ``[min(0, t), max(0, t)]``, which cannot do worse than t = 0.
    """
    if method not in ("mu2", "area"):
        raise ValueError(f"unknown method {method!r}")
    flags: list[str] = []
    mu_grid = _mu_grid(a, quad)
    poly, mu0_sq, ok_mu = MU1_METHODS[quad.mu1](a, mu_grid, quad.mu_tol)
    if poly.degree == 0:
        t_min = 0.0
    else:
        t_min, _ = global_minimum(minimizable(poly))

    area_grid = QuadratureGrid.build(a.domain, quad.order) if quad.order else None
    A0, ok0 = area_at(a, 0.0, area_grid, quad.area_tol)
    search_grid = area_grid or QuadratureGrid.build(a.domain, 64)

    if method == "area":
        t_mu = t_min
        bracket = (min(0.0, 2 * t_mu), max(0.0, 2 * t_mu)) if t_mu != 0 else (0.0, 0.0)
        t_min, _ = direct_area_minimize(a, search_grid, bracket)

    A1, ok1 = area_at(a, t_min, area_grid, quad.area_tol)
    if A1 > A0:
        flags.append("area_increased")
        t_min, _ = direct_area_minimize(a, search_grid, (min(0.0, t_min), max(0.0, t_min)))
        A1, ok1 = area_at(a, t_min, area_grid, quad.area_tol)
        if A1 > A0:
            t_min, A1 = 0.0, A0
    if not (ok0 and ok1 and ok_mu):
        flags.append("quadrature_warning")
    mu1 = float(poly(t_min))
    return VariationalResult(t_min, mu0_sq, mu1, A0, A1, poly, a.direction, method, flags)


def analyze_surface(s: ParametricSurface, quad: QuadSettings = QuadSettings(),
                    method: str = "mu2", direction=None) -> VariationalResult:
    return minimize(build_ansatz(s, direction), quad, method)
