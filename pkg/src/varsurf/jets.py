"""Truncated bivariate Taylor jets (forward-mode dual numbers in u and v).

A :class:`Jet` of order ``K`` carries the Taylor coefficients

    c[i, j] = (1 / (i! j!)) * d^(i+j) f / du^i dv^j,    i + j <= K

of a scalar field at a batch of base points. Arithmetic on jets is
ordinary truncated power-series arithmetic, so any formula written with
``+ - * /`` and the elementary functions exported here yields all partial
derivatives up to order ``K`` exactly (to rounding), with no step size.

Surfaces are written once against this module and evaluated either on
plain floats / numpy arrays or on jets.
"""

from __future__ import annotations

import math
from typing import Callable, Sequence

import numpy as np


class Jet:
    """Bivariate truncated Taylor series over a batch of base points.

    Parameters
    ----------
    coeffs : ndarray, shape (K+1, K+1, *batch)
        Taylor coefficients; entries with ``i + j > K`` are ignored and
        kept at zero.
    order : int
        Truncation order ``K``.
    """

    __slots__ = ("c", "order")
    __array_ufunc__ = None  # numpy operands defer to the reflected Jet operators

    def __init__(self, coeffs: np.ndarray, order: int):
        self.c = coeffs
        self.order = order

    # construction -----------------------------------------------------
    @classmethod
    def constant(cls, value, order: int) -> "Jet":
        value = np.asarray(value, dtype=float)
        c = np.zeros((order + 1, order + 1) + value.shape)
        c[0, 0] = value
        return cls(c, order)

    @classmethod
    def variable(cls, value, axis: int, order: int) -> "Jet":
        """Seed jet for the coordinate ``u`` (axis 0) or ``v`` (axis 1)."""
        jet = cls.constant(value, order)
        if order >= 1:
            if axis == 0:
                jet.c[1, 0] = 1.0
            else:
                jet.c[0, 1] = 1.0
        return jet

    @classmethod
    def seeds(cls, u, v, order: int) -> tuple["Jet", "Jet"]:
        u, v = np.broadcast_arrays(np.asarray(u, float), np.asarray(v, float))
        return cls.variable(u, 0, order), cls.variable(v, 1, order)

    # access -----------------------------------------------------------
    @property
    def value(self) -> np.ndarray:
        return self.c[0, 0]

    @property
    def batch_shape(self) -> tuple:
        return self.c.shape[2:]

    def partial(self, i: int, j: int) -> np.ndarray:
        """d^(i+j) / du^i dv^j at the base points."""
        if i + j > self.order:
            raise ValueError(f"partial ({i},{j}) exceeds jet order {self.order}")
        return self.c[i, j] * (math.factorial(i) * math.factorial(j))

    def truncate(self, order: int) -> "Jet":
        if order >= self.order:
            return self
        c = self.c[: order + 1, : order + 1].copy()
        return Jet(c, order)

    def d(self, axis: int) -> "Jet":
        """Exact partial derivative, returned as a jet of order K-1."""
        if self.order == 0:
            raise ValueError("cannot differentiate an order-0 jet")
        K = self.order - 1
        c = np.zeros((K + 1, K + 1) + self.batch_shape)
        for i in range(K + 1):
            for j in range(K + 1 - i):
                if axis == 0:
                    c[i, j] = (i + 1) * self.c[i + 1, j]
                else:
                    c[i, j] = (j + 1) * self.c[i, j + 1]
        return Jet(c, K)

    def du(self) -> "Jet":
        return self.d(0)

    def dv(self) -> "Jet":
        return self.d(1)

    # arithmetic -------------------------------------------------------
    def _coerce(self, other) -> "Jet":
        if isinstance(other, Jet):
            return other
        return Jet.constant(other, self.order)

    def __neg__(self) -> "Jet":
        return Jet(-self.c, self.order)

    def __pos__(self) -> "Jet":
        return self

    def __add__(self, other) -> "Jet":
        if not isinstance(other, Jet):
            other = np.asarray(other, dtype=float)
            shape = np.broadcast_shapes(self.batch_shape, other.shape)
            c = np.array(np.broadcast_to(_aligned(self.c, len(shape)), self.c.shape[:2] + shape))
            c[0, 0] += other
            return Jet(c, self.order)
        K = min(self.order, other.order)
        a, b = self.truncate(K).c, other.truncate(K).c
        nd = max(a.ndim, b.ndim) - 2
        return Jet(_aligned(a, nd) + _aligned(b, nd), K)

    __radd__ = __add__

    def __sub__(self, other) -> "Jet":
        return self + (-other)

    def __rsub__(self, other) -> "Jet":
        return (-self) + other

    def __mul__(self, other) -> "Jet":
        if not isinstance(other, Jet):
            other = np.asarray(other, float)
            nd = max(self.c.ndim - 2, other.ndim)
            return Jet(_aligned(self.c, nd) * other, self.order)
        K = min(self.order, other.order)
        nd = max(self.c.ndim, other.c.ndim) - 2
        a, b = _aligned(self.c, nd), _aligned(other.c, nd)
        shape = np.broadcast_shapes(a.shape[2:], b.shape[2:])
        c = np.zeros((K + 1, K + 1) + shape)
        for i in range(K + 1):
            for j in range(K + 1 - i):
                acc = 0.0
                for p in range(i + 1):
                    for q in range(j + 1):
                        acc = acc + a[p, q] * b[i - p, j - q]
                c[i, j] = acc
        return Jet(c, K)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Jet":
        if not isinstance(other, Jet):
            return self * (1.0 / np.asarray(other, float))
        return self * _reciprocal(other)

    def __rtruediv__(self, other) -> "Jet":
        return _reciprocal(self) * other

    def __pow__(self, n: int) -> "Jet":
        if not isinstance(n, int) or n < 0:
            return _compose(self, _power_derivs(float(n)))
        result = Jet.constant(np.ones(self.batch_shape), self.order)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __repr__(self) -> str:
        return f"Jet(order={self.order}, batch={self.batch_shape})"


def _aligned(c: np.ndarray, batch_ndim: int) -> np.ndarray:
    """View of a coefficient array with batch axes padded on the left to ``batch_ndim``."""
    pad = batch_ndim - (c.ndim - 2)
    if pad <= 0:
        return c
    return c.reshape(c.shape[:2] + (1,) * pad + c.shape[2:])


def _compose(x: Jet, derivs: Callable[[np.ndarray, int], list]) -> Jet:
    """f(x) for a jet, given f and its first K derivatives at x.value."""
    K = x.order
    x0 = x.value
    fk = derivs(x0, K)
    h = Jet(x.c.copy(), K)
    h.c[0, 0] = 0.0
    out = Jet.constant(fk[0], K)
    hp = None
    for k in range(1, K + 1):
        hp = h if hp is None else hp * h
        out = out + hp * (fk[k] / math.factorial(k))
    return out


def _sin_derivs(x0, K):
    s, c = np.sin(x0), np.cos(x0)
    cycle = [s, c, -s, -c]
    return [cycle[k % 4] for k in range(K + 1)]


def _cos_derivs(x0, K):
    s, c = np.sin(x0), np.cos(x0)
    cycle = [c, -s, -c, s]
    return [cycle[k % 4] for k in range(K + 1)]


def _exp_derivs(x0, K):
    e = np.exp(x0)
    return [e] * (K + 1)


def _power_derivs(p: float):
    def derivs(x0, K):
        out = []
        coef = 1.0
        for k in range(K + 1):
            out.append(coef * np.power(x0, p - k))
            coef *= p - k
        return out

    return derivs


def _reciprocal(x: Jet) -> Jet:
    return _compose(x, _power_derivs(-1.0))


def sin(x):
    return _compose(x, _sin_derivs) if isinstance(x, Jet) else np.sin(x)


def cos(x):
    return _compose(x, _cos_derivs) if isinstance(x, Jet) else np.cos(x)


def exp(x):
    return _compose(x, _exp_derivs) if isinstance(x, Jet) else np.exp(x)


def sqrt(x):
    return _compose(x, _power_derivs(0.5)) if isinstance(x, Jet) else np.sqrt(x)


class TPoly:
    """Polynomial in t with array-valued coefficients, ``sum_i c[i] t^i``.

    The ansatz is affine in t, so every quantity built from it by ring
    operations is an exact polynomial in t; no truncation is needed.
    """

    __slots__ = ("c",)
    __array_ufunc__ = None

    def __init__(self, coeffs: Sequence):
        self.c = [np.asarray(x, dtype=float) for x in coeffs]

    @property
    def degree(self) -> int:
        return len(self.c) - 1

    def __call__(self, t: float):
        out = self.c[-1]
        for x in self.c[-2::-1]:
            out = out * t + x
        return out

    def _coerce(self, other) -> "TPoly":
        return other if isinstance(other, TPoly) else TPoly([other])

    def __neg__(self) -> "TPoly":
        return TPoly([-x for x in self.c])

    def __add__(self, other) -> "TPoly":
        o = self._coerce(other)
        n = max(len(self.c), len(o.c))
        a = self.c + [0.0] * (n - len(self.c))
        b = o.c + [0.0] * (n - len(o.c))
        return TPoly([x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __sub__(self, other) -> "TPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "TPoly":
        return (-self) + other

    def __mul__(self, other) -> "TPoly":
        if not isinstance(other, TPoly):
            return TPoly([x * other for x in self.c])
        out = [0.0] * (len(self.c) + len(other.c) - 1)
        for i, x in enumerate(self.c):
            for j, y in enumerate(other.c):
                out[i + j] = out[i + j] + x * y
        return TPoly(out)

    __rmul__ = __mul__

    def stack(self) -> np.ndarray:
        """Coefficients as one array of shape (degree + 1, *batch)."""
        return np.stack(np.broadcast_arrays(*self.c))


# 3-vectors are plain 3-tuples of scalars, arrays or jets.
Vec = Sequence


def dot(a: Vec, b: Vec):
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


def cross(a: Vec, b: Vec) -> tuple:
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )
