"""Dense real univariate polynomials and their global minimization."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DuplicateNodes, Unbounded, ZeroPolynomial

TRIM_REL = 1e-12
ROOT_CLUSTER = 1e-8


@dataclass(frozen=True, init=False)
class RealPolynomial:
    """Polynomial with coefficients in ascending degree.

    Trailing coefficients smaller than ``1e-12 * max|c|`` are dropped on
    construction, so ``degree`` reflects the numerically significant part.
    The zero polynomial has ``coeffs == [0.0]`` and degree 0.
    """

    coeffs: np.ndarray

    def __init__(self, coeffs: Sequence[float]):
        c = np.atleast_1d(np.asarray(coeffs, dtype=float)).copy()
        if c.size == 0:
            c = np.zeros(1)
        big = float(np.max(np.abs(c)))
        n = c.size
        while n > 1 and abs(c[n - 1]) <= TRIM_REL * big:
            n -= 1
        c = c[:n]
        if big == 0.0:
            c = np.zeros(1)
        object.__setattr__(self, "coeffs", c)

    @property
    def degree(self) -> int:
        return self.coeffs.size - 1

    @property
    def is_zero(self) -> bool:
        return self.degree == 0 and self.coeffs[0] == 0.0

    def __call__(self, t):
        # Horner
        t = np.asarray(t, dtype=float)
        out = np.full(t.shape, self.coeffs[-1])
        for c in self.coeffs[-2::-1]:
            out = out * t + c
        return float(out) if out.ndim == 0 else out

    def magnitude(self, t) -> float:
        """sum |c_i| |t|^i, the scale against which residuals are judged."""
        a = abs(float(t))
        return float(sum(abs(c) * a**i for i, c in enumerate(self.coeffs)))

    def __repr__(self) -> str:
        return f"RealPolynomial({self.coeffs.tolist()})"


def fit_from_samples(ts: Sequence[float], values: Sequence[float]) -> RealPolynomial:
    """Interpolating polynomial through (ts, values).

    Newton divided differences, then expansion of the Newton form into
    monomial coefficients.
    """
    x = np.asarray(ts, dtype=float)
    y = np.asarray(values, dtype=float)
    if x.shape != y.shape or x.ndim != 1 or x.size == 0:
        raise ValueError("ts and values must be equal-length 1-d sequences")
    span = float(np.max(np.abs(x))) or 1.0
    if x.size > 1 and np.min(np.diff(np.sort(x))) <= 1e-14 * span:
        raise DuplicateNodes("sample abscissae must be pairwise distinct")
    n = x.size
    dd = y.copy()
    for j in range(1, n):
        dd[j:] = (dd[j:] - dd[j - 1:-1]) / (x[j:] - x[:n - j])
    # Horner on the Newton form: p = dd[n-1]; p = p*(t - x_k) + dd[k]
    coeffs = np.zeros(n)
    coeffs[0] = dd[n - 1]
    for k in range(n - 2, -1, -1):
        shifted = np.zeros(n)
        shifted[1:] = coeffs[:-1]
        coeffs = shifted - x[k] * coeffs
        coeffs[0] += dd[k]
    return RealPolynomial(coeffs)


def chebyshev_nodes(n: int, a: float = -1.0, b: float = 1.0) -> np.ndarray:
    k = np.arange(n)
    x = np.cos(np.pi * (2 * k + 1) / (2 * n))[::-1]
    return 0.5 * (a + b) + 0.5 * (b - a) * x


def derivative(p: RealPolynomial) -> RealPolynomial:
    if p.degree == 0:
        return RealPolynomial([0.0])
    c = p.coeffs
    return RealPolynomial(c[1:] * np.arange(1, c.size))


def cauchy_bound(p: RealPolynomial) -> float:
    c = p.coeffs
    return 1.0 + float(np.max(np.abs(c[:-1] / c[-1]))) if p.degree >= 1 else 1.0


def _bisect_newton(p: RealPolynomial, dp: RealPolynomial, a: float, b: float) -> float:
    fa = p(a)
    for _ in range(200):
        m = 0.5 * (a + b)
        fm = p(m)
        if fm == 0.0:
            return m
        if (fm < 0) == (fa < 0):
            a, fa = m, fm
        else:
            b = m
        if b - a <= 1e-15 * max(1.0, abs(m)):
            break
    x = 0.5 * (a + b)
    lo, hi = a, b
    for _ in range(3):
        d = dp(x)
        if d == 0.0:
            break
        nx = x - p(x) / d
        if not lo <= nx <= hi:
            break
        if abs(p(nx)) > abs(p(x)):
            break
        x = nx
    return x


def real_roots(p: RealPolynomial) -> list[float]:
    """All real roots, ascending, clustered at 1e-8.

    Roots of ``p'`` split the Cauchy interval ``[-B, B]`` into pieces on
    which ``p`` is monotone; each piece holds at most one root, found by
    sign-change bisection with a Newton polish. Uniform breakpoints
    (``4 * degree`` pieces) are merged in as well.
    """
    if p.is_zero:
        raise ZeroPolynomial("zero polynomial has no isolated roots")
    if p.degree == 0:
        return []
    c = p.coeffs
    if p.degree == 1:
        return [-c[0] / c[1]]
    dp = derivative(p)
    B = cauchy_bound(p)
    crit = [t for t in real_roots(dp) if -B < t < B]
    uniform = list(np.linspace(-B, B, 4 * p.degree + 1))
    breaks = sorted(set(uniform + crit))
    roots: list[float] = []
    for t in crit:
        # touching (even multiplicity) roots sit on critical points
        if abs(p(t)) <= 1e-9 * max(p.magnitude(t), 1e-300):
            roots.append(t)
    for a, b in zip(breaks[:-1], breaks[1:]):
        fa, fb = p(a), p(b)
        if fa == 0.0:
            roots.append(a)
        elif fa * fb < 0:
            roots.append(_bisect_newton(p, dp, a, b))
    if p(breaks[-1]) == 0.0:
        roots.append(breaks[-1])
    roots.sort()
    out: list[float] = []
    for r in roots:
        if out and abs(r - out[-1]) < ROOT_CLUSTER:
            continue
        out.append(float(r))
    return out


def global_minimum(p: RealPolynomial) -> tuple[float, float]:
    """Global minimizer over all real t and the minimum value.

    Candidates are t = 0 and every real critical point. Ties (within
    1e-12 relative) go to the smallest |t|, then to the positive one.
    """
    if p.degree == 0:
        return 0.0, float(p.coeffs[0])
    if p.degree % 2 == 1 or p.coeffs[-1] <= 0:
        raise Unbounded(f"polynomial of degree {p.degree} with leading coefficient "
                        f"{p.coeffs[-1]:g} has no global minimum")
    cands = [0.0] + real_roots(derivative(p))
    vals = [p(t) for t in cands]
    best = min(vals)
    tol = 1e-12 * max(1.0, abs(best))
    tied = [t for t, val in zip(cands, vals) if val - best <= tol]
    t_min = min(tied, key=lambda t: (abs(t), t < 0))
    return float(t_min), float(p(t_min))


def golden_section(f, a: float, b: float, tol: float = 1e-8) -> tuple[float, float]:
    """Golden-section minimization of a unimodal ``f`` on [a, b].

    Returns ``(x, f(x))``; the bracket ends are compared as well, so the
    result is never worse than either end.
    """
    fa, fb = f(a), f(b)
    if b - a <= tol:
        return (a, fa) if fa <= fb else (b, fb)
    g = (math.sqrt(5.0) - 1.0) / 2.0
    lo, hi = a, b
    c, d = hi - g * (hi - lo), lo + g * (hi - lo)
    fc, fd = f(c), f(d)
    while hi - lo > tol:
        if fc <= fd:
            hi, d, fd = d, c, fc
            c = hi - g * (hi - lo)
            fc = f(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + g * (hi - lo)
            fd = f(d)
    x, fx = (c, fc) if fc <= fd else (d, fd)
    for t, ft in ((a, fa), (b, fb)):
        if ft < fx:
            x, fx = t, ft
    return x, fx
