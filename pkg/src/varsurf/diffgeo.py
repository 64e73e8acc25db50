"""Fundamental magnitudes, curvature numerator, area and related integrals.

Second-form coefficients are taken against the *unnormalized* normal
``n = x_u x x_v``. With that convention the curvature numerator

    H0 = e G - 2 F f + g E

is a polynomial in the partials (no square roots), and the mean
curvature used throughout is ``H = H0 / (EG - F^2)^(3/2)``. The textbook
mean curvature is half of that and is exposed as ``H_std``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, InvalidGeometry
from .jets import cross, dot
from .quadrature import QuadratureGrid, integrate_samples
from .surfaces import ParametricSurface

SINGULAR_W2 = 1e-12


@dataclass(frozen=True)
class FundamentalMagnitudes:
    E: np.ndarray
    F: np.ndarray
    G: np.ndarray
    e: np.ndarray
    f: np.ndarray
    g: np.ndarray
    n_raw: np.ndarray  # shape (..., 3)
    w2: np.ndarray  # EG - F^2


@dataclass(frozen=True)
class CurvatureSample:
    H0: np.ndarray
    H: np.ndarray  # NaN where singular
    H_std: np.ndarray
    singular: np.ndarray


def magnitudes(xu, xv, xuu, xuv, xvv):
    """(E, F, G, e, f, g, n) from partials given as 3-tuples.

    Works on floats, arrays and jets alike.
    """
    n = cross(xu, xv)
    return (dot(xu, xu), dot(xu, xv), dot(xv, xv),
            dot(n, xuu), dot(n, xuv), dot(n, xvv), n)


def numerator(xu, xv, xuu, xuv, xvv):
    """Curvature numerator eG - 2Ff + gE (unnormalized-normal convention)."""
    E, F, G, e, f, g, _ = magnitudes(xu, xv, xuu, xuv, xvv)
    return e * G - 2.0 * F * f + g * E


def _components(a: np.ndarray) -> tuple:
    return a[..., 0], a[..., 1], a[..., 2]


def _check_domain(s: ParametricSurface, u, v):
    if not s.domain.contains(u, v):
        raise DomainError(f"point outside domain {s.domain}")


def fundamental_magnitudes(s: ParametricSurface, u, v) -> FundamentalMagnitudes:
    _check_domain(s, u, v)
    p = s.evaluate(u, v)
    E, F, G, e, f, g, n = magnitudes(*(_components(a) for a in (p.du, p.dv, p.duu, p.duv, p.dvv)))
    w2 = E * G - F * F
    return FundamentalMagnitudes(E, F, G, e, f, g, np.stack(n, axis=-1), w2)


def curvature_from_magnitudes(m: FundamentalMagnitudes) -> CurvatureSample:
    H0 = np.asarray(m.e * m.G - 2.0 * m.F * m.f + m.g * m.E, dtype=float)
    w2 = np.asarray(m.w2, dtype=float)
    singular = w2 <= SINGULAR_W2
    with np.errstate(divide="ignore", invalid="ignore"):
        H = np.where(singular, np.nan, H0 / np.power(np.where(singular, 1.0, w2), 1.5))
    return CurvatureSample(H0, H, 0.5 * H, singular)


def curvature_numerator(s: ParametricSurface, u, v) -> CurvatureSample:
    """H0, the curvature H0 / w2^(3/2), and the textbook H (half of it).

    Points with ``EG - F^2 <= 1e-12`` are flagged singular and carry NaN
    curvature; ``H0`` itself stays finite there.
    """
    return curvature_from_magnitudes(fundamental_magnitudes(s, u, v))


def mean_curvature_closed_form_ruled(which: str, r, d, u, v):
    """Closed-form mean curvature of the ruled1 / ruled2 patches."""
    if np.any(np.asarray(d) <= 0):
        raise InvalidGeometry("d must be positive")
    if which == "ruled1":
        den = d * (d**2 + 2 * r**2 * (2 * (u - 1) * u + 2 * (v - 1) * v + 1)) ** 1.5
        num = -4 * r**3 * (2 * u - 1) * (2 * v - 1)
    elif which == "ruled2":
        den = (d**2 * (1 - 2 * v) ** 2 + 2 * r**2 * (2 * (u - 1) * u + 1)) ** 1.5
        num = 4 * d * r * (2 * u - 1) * (2 * v - 1)
    else:
        raise ValueError(f"unknown ruled family {which!r}")
    if np.any(np.abs(den) < 1e-300):
        raise InvalidGeometry("closed-form denominator vanishes (singular point)")
    return num / den


def hemiellipsoid_numerator_closed_form(b, c, u, v):
    su, cu, sv, cv = np.sin(u), np.cos(u), np.sin(v), np.cos(v)
    return -b * c * su**3 * (su**2 * (b**2 * cv**2 + c**2 + sv**2) + (b**2 + 1) * cu**2)


def _grid_magnitudes(s: ParametricSurface, grid: QuadratureGrid) -> FundamentalMagnitudes:
    U, V = grid.mesh()
    return fundamental_magnitudes(s, U, V)


def area_density(E, F, G):
    """sqrt(EG - F^2) with roundoff-negative values clamped to zero."""
    return np.sqrt(np.maximum(E * G - F * F, 0.0))


def area(s: ParametricSurface, grid: QuadratureGrid) -> float:
    m = _grid_magnitudes(s, grid)
    return integrate_samples(area_density(m.E, m.F, m.G), grid)


def mu_squared(s: ParametricSurface, grid: QuadratureGrid) -> float:
    """Mean square of the curvature numerator over the parameter domain."""
    m = _grid_magnitudes(s, grid)
    H0 = m.e * m.G - 2.0 * m.F * m.f + m.g * m.E
    return integrate_samples(H0 * H0, grid)


def dirichlet(s: ParametricSurface, grid: QuadratureGrid) -> float:
    m = _grid_magnitudes(s, grid)
    return integrate_samples(0.5 * (m.E + m.G), grid)
