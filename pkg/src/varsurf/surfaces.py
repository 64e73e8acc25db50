"""Parametric surfaces spanning fixed boundaries.

Every surface is a map ``(u, v) -> R^3`` on a rectangular :class:`Domain`.
Formulas are written against :mod:`varsurf.jets`, so the same code gives
positions on arrays and exact partial derivatives of any order on jets.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .errors import CornerMismatch, DomainError, InvalidBlending, InvalidGeometry
from .jets import Jet, cos, sin

# A scalar/jet-valued function of one parameter, or of (u, v).
Curve = Callable[[object], tuple]
Field = Callable[[object, object], object]


@dataclass(frozen=True)
class Domain:
    u_min: float
    u_max: float
    v_min: float
    v_max: float

    def __post_init__(self):
        if not (self.u_min < self.u_max and self.v_min < self.v_max):
            raise InvalidGeometry(f"empty parameter domain {self}")

    @property
    def area(self) -> float:
        return (self.u_max - self.u_min) * (self.v_max - self.v_min)

    def contains(self, u, v, tol: float = 1e-12) -> bool:
        u, v = np.asarray(u), np.asarray(v)
        su = tol * max(1.0, abs(self.u_min), abs(self.u_max))
        sv = tol * max(1.0, abs(self.v_min), abs(self.v_max))
        return bool(
            np.all((u >= self.u_min - su) & (u <= self.u_max + su))
            and np.all((v >= self.v_min - sv) & (v <= self.v_max + sv))
        )

    def boundary_points(self, n: int) -> tuple[np.ndarray, np.ndarray]:
        """``n`` points spread evenly over the four edges."""
        s = np.linspace(0.0, 1.0, max(n // 4, 2), endpoint=False)
        du, dv = self.u_max - self.u_min, self.v_max - self.v_min
        us = np.concatenate([
            self.u_min + s * du,
            np.full_like(s, self.u_max),
            self.u_max - s * du,
            np.full_like(s, self.u_min),
        ])
        vs = np.concatenate([
            np.full_like(s, self.v_min),
            self.v_min + s * dv,
            np.full_like(s, self.v_max),
            self.v_max - s * dv,
        ])
        return us, vs


UNIT_SQUARE = Domain(0.0, 1.0, 0.0, 1.0)


@dataclass(frozen=True)
class SurfacePoint:
    """Position and first/second partials; each field has shape (..., 3)."""

    position: np.ndarray
    du: np.ndarray
    dv: np.ndarray
    duu: np.ndarray
    duv: np.ndarray
    dvv: np.ndarray


@dataclass(frozen=True)
class ParametricSurface:
    """A smooth map from a rectangular domain into R^3.

    Parameters
    ----------
    func : callable
        ``func(u, v) -> (x, y, z)``; must accept numpy arrays and
        :class:`~varsurf.jets.Jet` arguments alike.
    domain : Domain
    name : str
    params : dict
        Family parameters, carried for reporting.
    polynomial : bool
        True when the coordinates are polynomial in (u, v), which lets
        fixed-order Gauss rules integrate curvature polynomials exactly.
    window : callable, optional
        Family-specific boundary window for the variational ansatz; when
        absent the window is inferred from the domain.
    """

    func: Callable
    domain: Domain = UNIT_SQUARE
    name: str = "surface"
    params: dict = field(default_factory=dict)
    polynomial: bool = False
    window: Optional[Field] = None

    def jet(self, u, v, order: int) -> tuple[Jet, Jet, Jet]:
        """Coordinate jets of the given order at the points (u, v)."""
        ju, jv = Jet.seeds(u, v, order)
        out = self.func(ju, jv)
        return tuple(_as_jet(c, ju) for c in out)

    def position(self, u, v) -> np.ndarray:
        u, v = np.broadcast_arrays(np.asarray(u, float), np.asarray(v, float))
        x = self.func(u, v)
        return np.stack([np.broadcast_to(np.asarray(c, float), u.shape) for c in x], axis=-1)

    def __call__(self, u, v) -> np.ndarray:
        return self.position(u, v)

    def evaluate(self, u, v) -> SurfacePoint:
        if not self.domain.contains(u, v):
            raise DomainError(f"({u}, {v}) outside {self.domain}")
        x = self.jet(u, v, 2)

        def part(i, j):
            return np.stack([c.partial(i, j) for c in x], axis=-1)

        return SurfacePoint(part(0, 0), part(1, 0), part(0, 1), part(2, 0), part(1, 1), part(0, 2))


def _as_jet(c, like: Jet) -> Jet:
    if isinstance(c, Jet):
        return c
    return Jet.constant(np.broadcast_to(np.asarray(c, float), like.batch_shape), like.order)


def _vec(p) -> np.ndarray:
    a = np.asarray(p, dtype=float)
    if a.shape != (3,) or not np.all(np.isfinite(a)):
        raise InvalidGeometry(f"expected a finite 3-vector, got {p!r}")
    return a


@dataclass(frozen=True)
class CornerQuad:
    """Corners of a four-line boundary.

    ``x(0,0) = r1``, ``x(1,1) = r2``, ``x(1,0) = r3bar``, ``x(0,1) = r4bar``.
    """

    r1: np.ndarray
    r2: np.ndarray
    r3bar: np.ndarray
    r4bar: np.ndarray

    def __post_init__(self):
        for name in ("r1", "r2", "r3bar", "r4bar"):
            object.__setattr__(self, name, _vec(getattr(self, name)))


@dataclass(frozen=True)
class BlendingFunctions:
    """Coons blending functions; validated on construction."""

    f1: Curve
    f2: Curve
    g1: Curve
    g2: Curve

    def __post_init__(self):
        s = np.random.default_rng(0).random(100)
        s = np.concatenate([[0.0, 1.0], s])
        if np.max(np.abs(self.f1(s) + self.f2(s) - 1.0)) > 1e-12:
            raise InvalidBlending("f1 + f2 != 1")
        if np.max(np.abs(self.g1(s) + self.g2(s) - 1.0)) > 1e-12:
            raise InvalidBlending("g1 + g2 != 1")
        ends = [self.f1(0.0) - 1.0, self.g1(0.0) - 1.0, self.f1(1.0), self.g1(1.0)]
        if max(abs(float(e)) for e in ends) > 1e-12:
            raise InvalidBlending("blending functions must satisfy f1(0)=g1(0)=1, f1(1)=g1(1)=0")


def linear_blending() -> BlendingFunctions:
    return BlendingFunctions(
        f1=lambda s: 1.0 - s,
        f2=lambda s: 1.0 * s,
        g1=lambda s: 1.0 - s,
        g2=lambda s: 1.0 * s,
    )


def make_bilinear(corners: CornerQuad) -> ParametricSurface:
    """Bilinear interpolation of four corners (Coons patch with linear data)."""
    r1, r2, r3, r4 = corners.r1, corners.r2, corners.r3bar, corners.r4bar

    def func(u, v):
        a, b, c, d = (1 - u) * (1 - v), u * (1 - v), (1 - u) * v, u * v
        return tuple(a * r1[k] + b * r3[k] + c * r4[k] + d * r2[k] for k in range(3))

    return ParametricSurface(
        func, UNIT_SQUARE, "bilinear",
        {"corners": [p.tolist() for p in (r1, r2, r3, r4)]},
        polynomial=True,
    )


def make_coons(c1: Curve, c2: Curve, d1: Curve, d2: Curve,
               blend: Optional[BlendingFunctions] = None) -> ParametricSurface:
    """Coons patch through boundary curves ``x(u,0)=c1``, ``x(u,1)=c2``,
    ``x(0,v)=d1``, ``x(1,v)=d2``.

    Curves map a parameter in [0, 1] to a 3-tuple and must accept jets if
    derivatives are wanted.
    """
    blend = blend or linear_blending()
    p00, p10 = _vec(c1(0.0)), _vec(c1(1.0))
    p01, p11 = _vec(c2(0.0)), _vec(c2(1.0))
    checks = [(p00, d1(0.0)), (p10, d2(0.0)), (p01, d1(1.0)), (p11, d2(1.0))]
    for a, b in checks:
        if np.max(np.abs(a - _vec(b))) > 1e-9:
            raise CornerMismatch(f"boundary curves disagree at a corner: {a} vs {b}")

    f1, f2, g1, g2 = blend.f1, blend.f2, blend.g1, blend.g2

    def func(u, v):
        F1, F2, G1, G2 = f1(u), f2(u), g1(v), g2(v)
        cu1, cu2, dv1, dv2 = c1(u), c2(u), d1(v), d2(v)
        out = []
        for k in range(3):
            ruled_u = F1 * dv1[k] + F2 * dv2[k]
            ruled_v = G1 * cu1[k] + G2 * cu2[k]
            tensor = F1 * (G1 * p00[k] + G2 * p01[k]) + F2 * (G1 * p10[k] + G2 * p11[k])
            out.append(ruled_u + ruled_v - tensor)
        return tuple(out)

    return ParametricSurface(func, UNIT_SQUARE, "coons")


def line(a, b) -> Curve:
    """Straight segment from ``a`` (s=0) to ``b`` (s=1), jet-compatible."""
    a, b = _vec(a), _vec(b)
    return lambda s: tuple((1 - s) * a[k] + s * b[k] for k in range(3))


def _check_rd(r: float, d: float):
    if not (np.isfinite(r) and np.isfinite(d)):
        raise InvalidGeometry("r and d must be finite")
    if d <= 0:
        raise InvalidGeometry(f"d must be positive, got {d}")
    if r < 0:
        raise InvalidGeometry(f"r must be non-negative, got {r}")


def ruled1_corners(r: float, d: float) -> CornerQuad:
    """Corners that the ruled1 mapping actually interpolates.

    The mapping ``(r(u+v-2uv), v d, u d)`` puts ``(0,d,d)`` at (1,1) and
    ``(r,d,0)`` at (0,1); the corner labelling commonly quoted with it
    swaps those two, so we follow the mapping.
    """
    return CornerQuad(r1=(0, 0, 0), r2=(0, d, d), r3bar=(r, 0, d), r4bar=(r, d, 0))


def ruled2_corners(r: float, d: float) -> CornerQuad:
    return CornerQuad(r1=(0, 0, 0), r2=(r, d, 0), r3bar=(r, 0, d), r4bar=(0, d, d))


def make_ruled1(r: float, d: float = 1.0) -> ParametricSurface:
    """Skew quadrilateral x(u,v) = (r(u+v-2uv), v d, u d)."""
    _check_rd(r, d)

    def func(u, v):
        return (r * (u + v - 2 * u * v), d * v, d * u)

    return ParametricSurface(func, UNIT_SQUARE, "ruled1", {"r": r, "d": d}, polynomial=True)


def make_ruled2(r: float, d: float = 1.0) -> ParametricSurface:
    """Skew quadrilateral x(u,v) = (u r, v d, u d + v d (1-2u))."""
    _check_rd(r, d)

    def func(u, v):
        return (r * u, d * v, d * u + d * v * (1 - 2 * u))

    return ParametricSurface(func, UNIT_SQUARE, "ruled2", {"r": r, "d": d}, polynomial=True)


HEMI_DOMAIN = Domain(0.0, math.pi / 2, 0.0, 2 * math.pi)


def _hemi_window(u, v):
    return math.pi / 2 - u


def make_hemiellipsoid(b: float, c: float) -> ParametricSurface:
    """Upper half of an ellipsoid with semi-axes (1, b, c).

    x(u,v) = (sin u cos v, b sin u sin v, c cos u) on [0, pi/2] x [0, 2 pi];
    the boundary u = pi/2 is the ellipse with semi-axes 1 and b in z = 0.
    """
    if not (b > 0 and c > 0 and np.isfinite(b) and np.isfinite(c)):
        raise InvalidGeometry(f"hemiellipsoid needs b > 0 and c > 0, got b={b}, c={c}")

    def func(u, v):
        su = sin(u)
        return (su * cos(v), b * su * sin(v), c * cos(u))

    return ParametricSurface(
        func, HEMI_DOMAIN, "hemiellipsoid", {"b": b, "c": c},
        polynomial=False, window=_hemi_window,
    )


__all__ = [
    "BlendingFunctions", "CornerQuad", "Domain", "HEMI_DOMAIN", "ParametricSurface",
    "SurfacePoint", "UNIT_SQUARE", "line", "linear_blending", "make_bilinear",
    "make_coons", "make_hemiellipsoid", "make_ruled1", "make_ruled2",
    "ruled1_corners", "ruled2_corners",
]
