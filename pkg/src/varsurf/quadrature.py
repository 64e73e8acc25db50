"""Tensor-product Gauss-Legendre quadrature on rectangles.

Integrands are callables ``fn(U, V)`` evaluated on the full node mesh at
once; ``U`` and ``V`` have shape ``(n_v, n_u)``. An integrand may return
extra leading axes (``(..., n_v, n_u)``), in which case every component
is integrated and an array is returned.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, NamedTuple

import numpy as np

from .errors import InvalidOrder, NonFiniteSample, QuadratureWarning
from .surfaces import Domain

DEFAULT_ORDER = 32
ADAPTIVE_START = 16
ADAPTIVE_CAP = 256


@lru_cache(maxsize=64)
def _reference_rule(order: int) -> tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration on P_n."""
    n = order
    nodes = np.empty(n)
    weights = np.empty(n)
    for i in range((n + 1) // 2):
        # Tricomi initial guess for the i-th largest root
        x = math.cos(math.pi * (i + 0.75) / (n + 0.5))
        for _ in range(100):
            p0, p1 = 1.0, x
            for k in range(2, n + 1):
                p0, p1 = p1, ((2 * k - 1) * x * p1 - (k - 1) * p0) / k
            dp = n * (x * p1 - p0) / (x * x - 1.0)
            dx = p1 / dp
            x -= dx
            if abs(dx) <= 1e-15:
                break
        p0, p1 = 1.0, x
        for k in range(2, n + 1):
            p0, p1 = p1, ((2 * k - 1) * x * p1 - (k - 1) * p0) / k
        dp = n * (x * p1 - p0) / (x * x - 1.0)
        w = 2.0 / ((1.0 - x * x) * dp * dp)
        nodes[n - 1 - i], nodes[i] = x, -x
        weights[n - 1 - i] = weights[i] = w
    if n % 2 == 1:
        nodes[n // 2] = 0.0
    return nodes, weights


def gauss_legendre(order: int, a: float = -1.0, b: float = 1.0) -> tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes (ascending) and weights mapped to [a, b]."""
    if not isinstance(order, (int, np.integer)) or order < 1:
        raise InvalidOrder(f"quadrature order must be a positive integer, got {order!r}")
    if not a < b:
        raise ValueError(f"need a < b, got [{a}, {b}]")
    x, w = _reference_rule(int(order))
    half = 0.5 * (b - a)
    return a + half * (x + 1.0), half * w


@dataclass(frozen=True)
class QuadratureGrid:
    nodes_u: np.ndarray
    nodes_v: np.ndarray
    weights_u: np.ndarray
    weights_v: np.ndarray
    order_u: int
    order_v: int
    domain: Domain

    @classmethod
    def build(cls, domain: Domain, order_u: int = DEFAULT_ORDER, order_v: int | None = None) -> "QuadratureGrid":
        order_v = order_u if order_v is None else order_v
        nu, wu = gauss_legendre(order_u, domain.u_min, domain.u_max)
        nv, wv = gauss_legendre(order_v, domain.v_min, domain.v_max)
        return cls(nu, nv, wu, wv, order_u, order_v, domain)

    def mesh(self) -> tuple[np.ndarray, np.ndarray]:
        """Node coordinates ``U, V`` of shape (n_v, n_u)."""
        U, V = np.meshgrid(self.nodes_u, self.nodes_v)
        return U, V

    @property
    def weights(self) -> np.ndarray:
        return np.outer(self.weights_v, self.weights_u)


def integrate_samples(values: np.ndarray, grid: QuadratureGrid):
    """Weighted sum of integrand samples already evaluated on ``grid.mesh()``."""
    values = np.asarray(values, dtype=float)
    if not np.all(np.isfinite(values)):
        raise NonFiniteSample("integrand is not finite at some quadrature node")
    # v-major: reduce over u for each v row, then over v; fixed order
    rows = np.sum(values * grid.weights_u, axis=-1)
    total = np.sum(rows * grid.weights_v, axis=-1)
    return float(total) if total.ndim == 0 else total


def integrate2d(fn: Callable, grid: QuadratureGrid):
    U, V = grid.mesh()
    return integrate_samples(fn(U, V), grid)


class AdaptiveResult(NamedTuple):
    value: float | np.ndarray
    order: int
    converged: bool


def _rel_change(new, old) -> float:
    new, old = np.asarray(new), np.asarray(old)
    scale = max(float(np.max(np.abs(new))), 1e-300)
    return float(np.max(np.abs(new - old))) / scale


def integrate2d_adaptive(fn: Callable, domain: Domain, rel_tol: float = 1e-10,
                         start: int = ADAPTIVE_START, cap: int = ADAPTIVE_CAP) -> AdaptiveResult:
    """Double the tensor order until successive estimates agree to ``rel_tol``.

    Vector-valued integrands converge on the largest component change
    relative to the largest component. On hitting ``cap`` the last
    estimate is returned with ``converged=False`` and a
    :class:`QuadratureWarning` is issued.
    """
    if not rel_tol > 0:
        raise ValueError("rel_tol must be positive")
    order = start
    prev = integrate2d(fn, QuadratureGrid.build(domain, order))
    while order < cap:
        order *= 2
        cur = integrate2d(fn, QuadratureGrid.build(domain, order))
        if _rel_change(cur, prev) < rel_tol:
            return AdaptiveResult(cur, order, True)
        prev = cur
    warnings.warn(
        f"adaptive quadrature reached order {cap} without meeting rel_tol={rel_tol:g}",
        QuadratureWarning, stacklevel=2,
    )
    return AdaptiveResult(prev, order, False)
