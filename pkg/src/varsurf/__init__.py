"""Variational area reduction for surfaces spanning fixed boundaries."""

from .surfaces import (
    BlendingFunctions, CornerQuad, Domain, ParametricSurface, linear_blending,
    make_bilinear, make_coons, make_hemiellipsoid, make_ruled1, make_ruled2,
)
from .varmin import QuadSettings, VariationalResult, analyze_surface, build_ansatz, minimize

__version__ = "0.1.0"

__all__ = [
    "BlendingFunctions", "CornerQuad", "Domain", "ParametricSurface", "QuadSettings",
    "VariationalResult", "analyze_surface", "build_ansatz", "linear_blending", "make_bilinear",
    "make_coons", "make_hemiellipsoid", "make_ruled1", "make_ruled2", "minimize",
]
