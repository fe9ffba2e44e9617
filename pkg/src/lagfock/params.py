"""Parameter bundles and orthogonal-family descriptors shared by all modules."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DomainError


@dataclass(frozen=True)
class QuantParams:
    """Semiclassical parameter bundle derived from a single epsilon in (0, 1).

    c = eps/(1-eps), alpha_scale = 2*sqrt(eps)/(1-eps) and hbar = 1-eps are
    the equivalent small/large parameters used throughout: hbar -> 0 and
    alpha_scale -> +inf as eps -> 1.
    """

    epsilon: float
    c: float = field(init=False)
    alpha_scale: float = field(init=False)
    hbar: float = field(init=False)

    def __post_init__(self) -> None:
        eps = float(self.epsilon)
        if not 0.0 < eps < 1.0:
            raise ValueError(f"epsilon must lie in (0, 1), got {eps}")
        object.__setattr__(self, "epsilon", eps)
        object.__setattr__(self, "c", eps / (1.0 - eps))
        object.__setattr__(self, "alpha_scale", 2.0 * math.sqrt(eps) / (1.0 - eps))
        object.__setattr__(self, "hbar", 1.0 - eps)

    @classmethod
    def from_alpha(cls, alpha: float) -> "QuantParams":
        """Parameters with the prescribed value of alpha_scale = 2*sqrt(eps)/(1-eps)."""
        if alpha <= 0.0:
            raise ValueError("alpha_scale must be positive")
        t = (math.sqrt(1.0 + alpha * alpha) - 1.0) / alpha  # sqrt(eps)
        return cls(t * t)


@dataclass(frozen=True)
class PolyFamily:
    """One orthonormal system: Hermite, generalized Laguerre or Legendre.

    ``kind`` is one of ``"hermite"``, ``"laguerre"``, ``"legendre"``;
    ``alpha`` is the Laguerre order (ignored otherwise).  The number operator
    of the system has eigenvalue n on the n-th basis function for the
    Laguerre and Legendre families; we use the same convention for Hermite.
    """

    kind: str
    alpha: float = 0.0

    _KINDS = ("hermite", "laguerre", "legendre")

    def __post_init__(self) -> None:
        if self.kind not in self._KINDS:
            raise ValueError(f"unknown family kind {self.kind!r}")
        if self.kind == "laguerre" and self.alpha <= -1.0:
            raise DomainError(f"Laguerre order must exceed -1, got {self.alpha}")

    @classmethod
    def hermite(cls) -> "PolyFamily":
        return cls("hermite")

    @classmethod
    def laguerre(cls, alpha: float = 0.0) -> "PolyFamily":
        return cls("laguerre", float(alpha))

    @classmethod
    def legendre(cls) -> "PolyFamily":
        return cls("legendre")

    @property
    def domain(self) -> tuple[float, float]:
        if self.kind == "hermite":
            return (-math.inf, math.inf)
        if self.kind == "laguerre":
            return (0.0, math.inf)
        return (-1.0, 1.0)

    @property
    def weight_description(self) -> str:
        if self.kind == "hermite":
            return "exp(-x^2) on (-inf, inf)"
        if self.kind == "laguerre":
            return f"exp(-x) * x^{self.alpha} on (0, inf)"
        return "1 on (-1, 1)"

    @property
    def weight_mass(self) -> float:
        """Total integral of the weight function."""
        if self.kind == "hermite":
            return math.sqrt(math.pi)
        if self.kind == "laguerre":
            return math.gamma(self.alpha + 1.0)
        return 2.0

    def a_eigenvalue(self, n: int) -> float:
        """Eigenvalue of the system's number operator on basis function n."""
        return float(n)

    def norm_squared(self, n: int) -> float:
        """Squared weight-space norm of the degree-n polynomial."""
        if self.kind == "hermite":
            return math.factorial(n) * 2.0**n * math.sqrt(math.pi)
        if self.kind == "laguerre":
            return math.gamma(n + self.alpha + 1.0) / math.factorial(n)
        return 1.0 / (n + 0.5)


@dataclass(frozen=True)
class AsymCoeff:
    """Coefficient c_m of the large-argument expansions of I_0 and K_0.

    c_m = ((1/2)_m)^2 / (m! 2^m); c_0 = 1, c_1 = 1/8, c_2 = 9/128.
    ``exact`` carries the rational value, ``value`` its float image.
    """

    m: int
    exact: Fraction
    value: float


def asym_coeff(m: int) -> AsymCoeff:
    """m-th coefficient of the I_0/K_0 large-argument series, exactly."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    return AsymCoeff(m, asym_coeff_fraction(m), float(asym_coeff_fraction(m)))


def asym_coeff_fraction(m: int) -> Fraction:
    # (1/2)_m = (2m)! / (4^m m!)
    poch = Fraction(math.factorial(2 * m), 4**m * math.factorial(m))
    return poch * poch / (math.factorial(m) * 2**m)
