"""Independent reference values for the ruled1 family (d=1).

Symbolic route: sympy derivatives of the perturbed patch, scipy adaptive
quadrature for areas, dense scan plus golden-section polish for t.
Shares no code with the package. Run manually; results are frozen in tests.
"""

import math

import numpy as np
import sympy as sp
from scipy import integrate

u, v, t, r = sp.symbols("u v t r", real=True)


def mu1_poly_coeffs(rv):
    c = [
        sp.Rational(16, 9) * r**6,
        -sp.Rational(64, 75) * r**6 * (3 * r**2 + 5),
        32 * r**6 * (29 * r**4 + 98 * r**2 + 119) / sp.Integer(1225),
        256 * r**10 * (7 * r**2 + 3) / sp.Integer(3675),
        512 * r**12 * (153 * r**2 + 77) / sp.Integer(444675),
        190464 * r**16 / sp.Integer(25050025),
        2048 * r**18 / sp.Integer(2277275),
    ]
    return [float(ci.subs(r, rv)) for ci in c]


def golden(f, a, b, tol=1e-12):
    g = (math.sqrt(5) - 1) / 2
    c, d = b - g * (b - a), a + g * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - g * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + g * (b - a)
            fd = f(d)
    return 0.5 * (a + b)


def scan_tmin(coeffs):
    p = np.polynomial.Polynomial(coeffs)
    ts = np.arange(-2.0, 2.0 + 5e-5, 1e-4)
    i = int(np.argmin(p(ts)))
    return golden(p, ts[max(i - 1, 0)], ts[min(i + 1, len(ts) - 1)])


def area_fn(rv):
    x0 = sp.Matrix([r * (u + v - 2 * u * v), v, u])
    H0 = -4 * r**3 * (2 * u - 1) * (2 * v - 1)
    m = u * v * (1 - u) * (1 - v) * H0
    x1 = x0 + t * m * sp.Matrix([-1, 0, 0])
    n = x1.diff(u).cross(x1.diff(v))
    integrand = sp.sqrt(n.dot(n)).subs(r, rv)
    f = sp.lambdify((u, v, t), integrand, "math")

    def area(tv):
        val, _ = integrate.dblquad(lambda vv, uu: f(uu, vv, tv), 0, 1, 0, 1,
                                   epsabs=1e-14, epsrel=1e-13)
        return val

    return area


if __name__ == "__main__":
    for rv in [0.05, 0.5, 1.0, 1.5, 2.0]:
        coeffs = mu1_poly_coeffs(rv)
        tm = scan_tmin(coeffs)
        A = area_fn(rv)
        A0, A1 = A(0.0), A(tm)
        lo, hi = min(0.0, 2 * tm), max(0.0, 2 * tm)
        ta = golden(A, lo, hi, tol=1e-9)
        Aa = A(ta)
        print(f"r={rv!r}: t_min={tm!r} mu1min={np.polynomial.Polynomial(coeffs)(tm)!r}")
        print(f"   A0={A0!r} A1={A1!r} dec%={100*(A0-A1)/A0!r}")
        print(f"   t_area={ta!r} A_area={Aa!r} dec%={100*(A0-Aa)/A0!r}")
