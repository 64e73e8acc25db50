"""Independent reference values for the hemiellipsoid family.

sympy derivatives of x1 = x0 + t (pi/2 - u) H0 k, numpy leggauss quadrature
at high order, dense scan of the fitted mu1^2(t). Shares no code with the package.
"""

import math
import sys

import numpy as np
import sympy as sp

u, v, t, b, c = sp.symbols("u v t b c", real=True)


def build():
    x0 = sp.Matrix([sp.sin(u) * sp.cos(v), b * sp.sin(u) * sp.sin(v), c * sp.cos(u)])
    H0 = -b * c * sp.sin(u) ** 3 * (sp.sin(u) ** 2 * (b**2 * sp.cos(v) ** 2 + c**2 + sp.sin(v) ** 2)
                                    + (b**2 + 1) * sp.cos(u) ** 2)
    x1 = x0 + t * (sp.pi / 2 - u) * H0 * sp.Matrix([0, 0, 1])
    xu, xv = x1.diff(u), x1.diff(v)
    n = xu.cross(xv)
    E, F, G = xu.dot(xu), xu.dot(xv), xv.dot(xv)
    e, f, g = n.dot(xu.diff(u)), n.dot(xu.diff(v)), n.dot(xv.diff(v))
    H1 = e * G - 2 * F * f + g * E
    h1 = sp.lambdify((u, v, t, b, c), H1, "numpy")
    ar = sp.lambdify((u, v, t, b, c), sp.sqrt(n.dot(n)), "numpy")
    return h1, ar


def grid(n):
    x, w = np.polynomial.legendre.leggauss(n)
    uu = (x + 1) * math.pi / 4
    wu = w * math.pi / 4
    vv = (x + 1) * math.pi
    wv = w * math.pi
    U, V = np.meshgrid(uu, vv)
    return U, V, np.outer(wv, wu)


def analyze(h1, ar, bv, cv, n=96):
    U, V, W = grid(n)
    ts = np.cos(np.pi * (np.arange(11) + 0.5) / 11)
    vals = [float(np.sum(W * h1(U, V, tj, bv, cv) ** 2)) for tj in ts]
    p = np.polynomial.Polynomial.fit(ts, vals, 10).convert()
    scan = np.arange(-4, 4, 1e-4)
    tm = scan[np.argmin(p(scan))]
    A0 = float(np.sum(W * ar(U, V, 0.0, bv, cv)))
    A1 = float(np.sum(W * ar(U, V, tm, bv, cv)))
    return tm, p(0.0), p(tm), A0, A1, p.coef


if __name__ == "__main__":
    h1, ar = build()
    pts = [(1.0, 1.0)] if len(sys.argv) < 2 else [(bb, cc) for bb in np.arange(0.2, 2.01, 0.2) for cc in np.arange(0.2, 2.01, 0.2)]
    best = None
    for bv, cv in pts:
        tm, mu0, mu1, A0, A1, coef = analyze(h1, ar, bv, cv)
        dec = 100 * (A0 - A1) / A0
        print(f"b={bv:.1f} c={cv:.1f} t_min={tm:.5f} mu0={mu0:.6g} mu1={mu1:.6g} A0={A0:.8f} A1={A1:.8f} dec%={dec:.4f} lower={math.pi*bv:.4f}")
        if best is None or dec > best[0]:
            best = (dec, bv, cv)
    print("max", best)
