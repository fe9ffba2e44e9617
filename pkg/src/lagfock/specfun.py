"""Orthogonal-polynomial recurrences, weighted basis functions and modified
Bessel functions.

All evaluators are pure functions; polynomial recurrences accept scalars,
numpy arrays, complex values and exact ``Fraction`` inputs (the recurrence
coefficients are rational, so exact inputs propagate exactly).
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction

import numpy as np

from .errors import DomainError
from .params import PolyFamily, asym_coeff_fraction

# Crossover |x| between the ascending series and the large-argument series of
# I_alpha; validated by overlap agreement of the two methods (see tests).
BESSEL_I_CROSSOVER = 20.0
# K_alpha switches from the hyperbolic-cosine integral representation to the
# large-argument series here.  The ascending log-series is unusable in
# binary64 above x ~ 4 (cancellation grows like exp(2x)), so the integral
# representation covers the middle range instead.
BESSEL_K_CROSSOVER = 18.0

_EXP_OVERFLOW = 705.0


# ---------------------------------------------------------------------------
# polynomial recurrences
# ---------------------------------------------------------------------------

def eval_poly(family: PolyFamily, n: int, x):
    """Value of H_n, L_n^alpha or P_n at x by forward three-term recurrence.

    Exact for Fraction inputs; supports complex scalars and numpy arrays.
    """
    if n < 0:
        raise ValueError("degree must be nonnegative")
    return eval_poly_sequence(family, n, x)[n]


def eval_poly_sequence(family: PolyFamily, nmax: int, x) -> list:
    """All of p_0(x), ..., p_nmax(x) in one forward pass."""
    if nmax < 0:
        raise ValueError("degree must be nonnegative")
    one = _one_like(x)
    out = [one]
    if family.kind == "hermite":
        if nmax >= 1:
            out.append(2 * x)
        for n in range(1, nmax):
            out.append(2 * x * out[n] - 2 * n * out[n - 1])
    elif family.kind == "laguerre":
        # keep the recurrence exact for Fraction inputs and integer orders
        a = family.alpha
        if isinstance(x, Fraction):
            a = Fraction(a)
        elif float(a).is_integer():
            a = int(a)
        if nmax >= 1:
            out.append((1 + a) * one - x)
        for n in range(1, nmax):
            out.append(((2 * n + 1 + a - x) * out[n] - (n + a) * out[n - 1]) / (n + 1))
    else:  # legendre
        if nmax >= 1:
            out.append(x * one)
        for n in range(1, nmax):
            out.append(((2 * n + 1) * x * out[n] - n * out[n - 1]) / (n + 1))
    return out


def eval_weighted_sequence(family: PolyFamily, nmax: int, x: np.ndarray) -> np.ndarray:
    """Orthonormal weighted basis functions b_0..b_nmax evaluated at x.

    Laguerre: b_n = e^{-x/2} x^{a/2} L_n^a(x) / sqrt(Gamma(n+a+1)/n!),
    Hermite:  b_n = e^{-x^2/2} H_n(x) / sqrt(n! 2^n sqrt(pi)),
    Legendre: b_n = sqrt(n + 1/2) P_n(x).

    The exponential (and x^{a/2}) factors are folded into the recurrence seed,
    which keeps every value O(1) and avoids overflow for large n or x.
    Returns an array of shape (nmax+1,) + x.shape.
    """
    x = np.asarray(x, dtype=float)
    out = np.empty((nmax + 1,) + x.shape, dtype=float)
    if family.kind == "laguerre":
        a = family.alpha
        with np.errstate(divide="ignore", invalid="ignore"):
            seed = np.exp(-x / 2.0) * np.where(x > 0, x, 1.0) ** (a / 2.0)
        if a == 0.0:
            seed = np.exp(-x / 2.0)
        seed = seed / math.sqrt(math.gamma(a + 1.0))
        out[0] = seed
        if nmax >= 1:
            out[1] = (1 + a - x) * seed / math.sqrt(a + 1.0)
        for n in range(1, nmax):
            out[n + 1] = ((2 * n + 1 + a - x) * out[n]
                          - math.sqrt(n * (n + a)) * out[n - 1]) / math.sqrt(
                              (n + 1) * (n + 1 + a))
    elif family.kind == "hermite":
        seed = np.exp(-x * x / 2.0) / math.pi ** 0.25
        out[0] = seed
        if nmax >= 1:
            out[1] = math.sqrt(2.0) * x * seed
        for n in range(1, nmax):
            out[n + 1] = (math.sqrt(2.0 / (n + 1)) * x * out[n]
                          - math.sqrt(n / (n + 1.0)) * out[n - 1])
    else:  # legendre
        out[0] = math.sqrt(0.5) * np.ones_like(x)
        if nmax >= 1:
            out[1] = math.sqrt(1.5) * x
        for n in range(1, nmax):
            out[n + 1] = (math.sqrt((2 * n + 1) * (2 * n + 3)) * x * out[n]
                          - n * math.sqrt((2 * n + 3) / (2 * n - 1.0)) * out[n - 1]
                          ) / (n + 1)
    return out


def eval_weighted_laguerre(order: float, n: int, x) -> float:
    """e^{-x/2} x^{order/2} L_n^order(x) / sqrt(Gamma(n+order+1)/n!).

    For order 0 this is the orthonormal function l_n(x) = e^{-x/2} L_n(x).
    """
    if order <= -1.0:
        raise DomainError(f"Laguerre order must exceed -1, got {order}")
    xs = np.asarray(x, dtype=float)
    fam = PolyFamily.laguerre(order)
    vals = eval_weighted_sequence(fam, n, xs)
    res = vals[n]
    if np.ndim(x) == 0:
        return float(res)
    return res


def laguerre_generating(order: float, x, z):
    """(1-z)^{-order-1} exp(x z / (z-1)), the Laguerre generating function.

    Requires |z| < 1; partial sums of sum L_n^order(x) z^n converge to it.
    """
    if abs(z) >= 1.0:
        raise DomainError(f"generating variable must satisfy |z| < 1, got |z|={abs(z)}")
    if order <= -1.0:
        raise DomainError(f"Laguerre order must exceed -1, got {order}")
    zc = complex(z)
    xc = complex(x)
    val = (1.0 - zc) ** (-order - 1.0) * cmath.exp(xc * zc / (zc - 1.0))
    if zc.imag == 0.0 and xc.imag == 0.0:
        return val.real
    return val


def _one_like(x):
    if isinstance(x, np.ndarray):
        return np.ones_like(x)
    return x * 0 + 1


# ---------------------------------------------------------------------------
# modified Bessel functions
# ---------------------------------------------------------------------------

def iota(order: float, u):
    """The entire function iota_a(u) = sum_k u^k / (k! Gamma(k+a+1)).

    Satisfies I_a(2 sqrt(u)) = u^{a/2} iota_a(u); evaluating kernels through
    iota avoids the branch ambiguity of fractional powers for complex
    arguments.  Accepts scalars or numpy arrays (real or complex).
    """
    arr = np.asarray(u)
    scalar = arr.ndim == 0
    uc = np.atleast_1d(arr).astype(complex)
    term = np.full(uc.shape, 1.0 / math.gamma(order + 1.0), dtype=complex)
    total = term.copy()
    for k in range(1, 600):
        term = term * uc / (k * (k + order))
        total += term
        if np.all(np.abs(term) <= 1e-18 * (np.abs(total) + 1e-300)):
            break
    out = total if np.iscomplexobj(arr) else total.real
    if scalar:
        return complex(out[0]) if np.iscomplexobj(arr) else float(out[0])
    return out.reshape(arr.shape)


def _asym_a_coeffs(order: float, kmax: int) -> np.ndarray:
    # a_k(nu) = prod_{j<=k} (4 nu^2 - (2j-1)^2) / (8 j)
    nu2 = 4.0 * order * order
    a = np.empty(kmax + 1)
    a[0] = 1.0
    for k in range(1, kmax + 1):
        a[k] = a[k - 1] * (nu2 - (2 * k - 1) ** 2) / (8.0 * k)
    return a


def _asym_sum(coeffs: np.ndarray, inv_x, signs: int = 1):
    """Optimally truncated sum of coeffs[k] * (signs)^k * inv_x^k."""
    total = coeffs[0] * (1.0 if np.isscalar(inv_x) else np.ones_like(inv_x))
    term_prev = abs(coeffs[0])
    powx = 1.0
    for k in range(1, len(coeffs)):
        powx = powx * inv_x
        term = coeffs[k] * (signs ** k) * powx
        mag = np.max(np.abs(term))
        if mag > term_prev:
            break
        total = total + term
        term_prev = mag
        if mag < 1e-18:
            break
    return total


def bessel_i(order: float, x):
    """Modified Bessel function I_order(x) for real order >= 0.

    Complex arguments are supported; real arguments with |x| > ~705 raise
    OverflowError since e^|x| is no longer representable.  Ascending series
    below |x| = 20, large-argument expansion beyond (with the exponentially
    small reflected term retained for complex arguments).
    """
    if order < 0:
        raise DomainError("order must be nonnegative")
    xc = complex(x)
    if abs(xc.real) > _EXP_OVERFLOW:
        raise OverflowError(f"I_{order}({x}) exceeds binary64 range")
    real_input = xc.imag == 0.0 and not isinstance(x, complex)

    if abs(xc) <= BESSEL_I_CROSSOVER:
        val = (xc / 2.0) ** order * complex(iota(order, xc * xc / 4.0))
    elif xc.real < 0.0:
        s = 1.0 if xc.imag >= 0.0 else -1.0
        val = cmath.exp(s * 1j * math.pi * order) * complex(bessel_i(order, -xc))
    else:
        a = _asym_a_coeffs(order, 60)
        inv = 1.0 / xc
        main = cmath.exp(xc) / cmath.sqrt(2.0 * math.pi * xc) * _asym_sum(a, inv, -1)
        val = main
        if xc.imag != 0.0:
            s = 1.0 if xc.imag >= 0.0 else -1.0
            refl = (cmath.exp(-xc + s * 1j * math.pi * (order + 0.5))
                    / cmath.sqrt(2.0 * math.pi * xc) * _asym_sum(a, inv, 1))
            val = main + refl
    if real_input and float(np.real(x)) >= 0.0:
        return val.real
    if real_input and order == round(order):
        return val.real
    return val


def bessel_k(order: float, x):
    """Modified Bessel function K_order(x) for real order >= 0 and x > 0.

    Behaves like log(1/x) near 0 (order 0) and sqrt(pi/2x) e^{-x} at
    infinity.  Vectorized over numpy arrays.  Uses the large-argument series
    for x >= 18 and the integral representation
    K_a(x) = int_0^inf exp(-x cosh t) cosh(a t) dt otherwise.
    """
    if order < 0:
        raise DomainError("order must be nonnegative")
    arr = np.asarray(x, dtype=float)
    scalar = arr.ndim == 0
    xs = np.atleast_1d(arr).astype(float)
    if np.any(xs <= 0.0):
        raise DomainError("K_order requires x > 0")
    out = np.empty_like(xs)

    large = xs >= BESSEL_K_CROSSOVER
    if np.any(large):
        xl = xs[large]
        a = _asym_a_coeffs(order, 60)
        out[large] = (np.sqrt(math.pi / 2.0 / xl) * np.exp(-xl)
                      * _asym_sum(a, 1.0 / xl, 1))
    if np.any(~large):
        out[~large] = _bessel_k_coshint(order, xs[~large])
    if scalar:
        return float(out[0])
    return out.reshape(arr.shape)


_GL32 = np.polynomial.legendre.leggauss(32)


def _bessel_k_coshint(order: float, xs: np.ndarray) -> np.ndarray:
    # K_a(x) = int_0^inf exp(-x cosh t) cosh(a t) dt, panelized Gauss-Legendre.
    # Arguments are binned by decade so each bin gets a tight upper limit
    # (the limit grows like log(1/x)), and the outer product is chunked to
    # bound memory on large input arrays.
    out = np.empty_like(xs)
    logx = np.floor(np.log10(xs)).astype(int)
    for dec in np.unique(logx):
        sel = logx == dec
        xb = xs[sel]
        xmin = float(np.min(xb))
        # x cosh(T) - order*T >= x + 46 kills the integrand relative to t=0
        target = 46.0 + math.log(1.0 + 1.0 / xmin)
        T = math.acosh(1.0 + target / xmin)
        for _ in range(2):
            T = math.acosh(1.0 + (target + order * T) / xmin)
        n_panels = max(4, int(math.ceil(T / 0.75)))
        edges = np.linspace(0.0, T, n_panels + 1)
        gn, gw = _GL32
        half = np.diff(edges) / 2.0
        mid = (edges[:-1] + edges[1:]) / 2.0
        t = (mid[:, None] + half[:, None] * gn[None, :]).ravel()
        w = ((half[:, None] * gw[None, :]).ravel() * np.cosh(order * t))
        cosh_t = np.cosh(t)
        vals = np.empty_like(xb)
        chunk = max(1, 4_000_000 // t.size)
        for i in range(0, xb.size, chunk):
            expo = -np.outer(xb[i:i + chunk], cosh_t)
            np.clip(expo, -745.0, None, out=expo)
            vals[i:i + chunk] = np.exp(expo) @ w
        out[sel] = vals
    return out


def bessel_i_asymptotic(order: float, x: float, terms: int) -> float:
    """Truncated large-argument approximation e^x/sqrt(2 pi x) * sum_{m<terms} c_m(order)/x^m.

    For order 0 the coefficients are the classical c_m = ((1/2)_m)^2/(m! 2^m).
    """
    a = _asym_a_coeffs(order, terms - 1)
    return math.exp(x) / math.sqrt(2.0 * math.pi * x) * float(_asym_sum(a, 1.0 / x, -1))


def i0_scaled_series_tail(lam: float, terms: int) -> float:
    """Partial sum of the scaled expansion sum_m c_m lam^{-m} with c_m from asym_coeff."""
    total = 0.0
    for m in range(terms):
        total += float(asym_coeff_fraction(m)) / lam**m
    return total
