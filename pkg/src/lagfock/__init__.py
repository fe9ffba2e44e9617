"""Numerical toolkit for epsilon-weighted Poisson kernels of classical
orthogonal polynomials, the Laguerre Fock (Barut-Girardello) space, truncated
Toeplitz operators with semiclassical expansions, the Laguerre squeeze
operator, Berezin-transform asymptotics and convergence classifiers."""

from .params import QuantParams, PolyFamily, AsymCoeff, asym_coeff
from .errors import DomainError, QuadratureError, SeriesDivergenceError

__version__ = "0.1.0"

__all__ = [
    "QuantParams",
    "PolyFamily",
    "AsymCoeff",
    "asym_coeff",
    "DomainError",
    "QuadratureError",
    "SeriesDivergenceError",
    "__version__",
]
