"""Exception types raised across the package."""


class VarsurfError(Exception):
    """Base class for all package errors."""


class InvalidGeometry(VarsurfError, ValueError):
    """Surface parameters describe an impossible or degenerate shape."""


class CornerMismatch(InvalidGeometry):
    """Coons boundary curves do not meet at shared corners."""


class InvalidBlending(VarsurfError, ValueError):
    """Blending functions violate partition of unity or endpoint conditions."""


class DomainError(VarsurfError, ValueError):
    """Evaluation point lies outside the parameter domain."""


class DegenerateNormal(InvalidGeometry):
    """Average surface normal vanishes, no perturbation direction can be chosen."""


class InvalidOrder(VarsurfError, ValueError):
    pass


class NonFiniteSample(VarsurfError, ArithmeticError):
    """An integrand produced NaN or infinity at a quadrature node."""


class DuplicateNodes(VarsurfError, ValueError):
    pass


class ZeroPolynomial(VarsurfError, ValueError):
    pass


class Unbounded(VarsurfError, ValueError):
    """Polynomial has no global minimum (odd degree or non-positive leading term)."""


class QuadratureWarning(UserWarning):
    """Adaptive quadrature hit its order cap before meeting the tolerance."""
