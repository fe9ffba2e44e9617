"""Gaussian rules for the three weight systems and certified quadrature of
Bessel-K weighted radial and planar integrals.

The radial scheme splits (0, inf) at r0: on (0, r0] the substitution
r = r0 * exp(-s) absorbs the integrable log/algebraic singularity of the
K-weights at the origin, on [r0, R] panelized Gauss-Legendre is used, and the
tail beyond R is bounded by the exponential envelope sqrt(pi/2aR) e^{-aR}.
Error bounds come from node-doubling refinement plus the tail envelope.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
import scipy.special as sps

from .errors import QuadratureError
from .params import PolyFamily
from . import specfun

_GAUSS_CACHE: dict[int, tuple[np.ndarray, np.ndarray]] = {}


def _leggauss(n: int) -> tuple[np.ndarray, np.ndarray]:
    if n not in _GAUSS_CACHE:
        _GAUSS_CACHE[n] = np.polynomial.legendre.leggauss(n)
    return _GAUSS_CACHE[n]


@dataclass(frozen=True)
class QuadRule:
    """Gauss rule for one family weight.

    ``weights`` integrate against the family weight function;
    ``scaled_weights`` integrate weighted basis functions against plain dx
    (they equal weights / weight(x) and stay finite where the raw weights
    underflow).  ``exactness`` is the polynomial exactness degree 2N-1.
    """

    nodes: np.ndarray
    weights: np.ndarray
    scaled_weights: np.ndarray
    family: PolyFamily
    exactness: int


def gauss_rule(family: PolyFamily, n: int) -> QuadRule:
    """N-point Gauss rule for the family's weight; exactness degree 2N-1."""
    if n <= 0:
        raise ValueError("rule size must be positive")
    if family.kind == "legendre":
        x, w = sps.roots_legendre(n)
        scaled = w.copy()
    elif family.kind == "laguerre":
        a = family.alpha
        x, w = sps.roots_genlaguerre(n, a) if a != 0.0 else sps.roots_laguerre(n)
        # scaled weights via the normalized weighted function at degree n+1:
        # w_i e^{x_i} x_i^{-a} = x_i / ((n+1)(n+1+a) bhat_{n+1}(x_i)^2),
        # immune to the e^{-x_i} underflow of the raw weights at large nodes.
        vals = specfun.eval_weighted_sequence(family, n + 1, x)
        scaled = x / ((n + 1.0) * (n + 1.0 + a) * vals[n + 1] ** 2)
        w = scaled * np.exp(-x) * np.where(x > 0, x, 1.0) ** a
    else:  # hermite
        x, w = sps.roots_hermite(n)
        vals = specfun.eval_weighted_sequence(family, max(n - 1, 0), x)
        if n == 1:
            scaled = w * np.exp(x * x)
        else:
            scaled = 1.0 / (n * vals[n - 1] ** 2)
            w = scaled * np.exp(-x * x)
    return QuadRule(x, w, scaled, family, 2 * n - 1)


@dataclass(frozen=True)
class RadialIntegral:
    """Certified integral value: |value - truth| <= error_bound (heuristic
    bound from refinement differences and tail envelopes)."""

    value: complex
    error_bound: float
    nodes_used: int


def _radial_nodes(r0: float, big_r: float, pts: int,
                  n_sing: int = 14, s_max: float = 46.0):
    """Nodes/weights for int_0^R g(r) dr with possible log singularity at 0.

    (0, r0]: r = r0 exp(-s) on s in [0, s_max], panel width 3.5;
    [r0, R]: uniform panels sized so each spans a few e-foldings.
    """
    gn, gw = _leggauss(pts)
    nodes = []
    weights = []
    edges = np.linspace(0.0, s_max, n_sing + 1)
    for lo, hi in zip(edges[:-1], edges[1:]):
        half = (hi - lo) / 2.0
        s = (lo + hi) / 2.0 + half * gn
        r = r0 * np.exp(-s)
        nodes.append(r)
        weights.append(half * gw * r)  # dr = -r ds, orientation absorbed
    n_pan = max(6, int(math.ceil((big_r - r0) / max(r0, (big_r - r0) / 40.0) / 4.0)))
    n_pan = min(n_pan, 60)
    edges = np.linspace(r0, big_r, n_pan + 1)
    for lo, hi in zip(edges[:-1], edges[1:]):
        half = (hi - lo) / 2.0
        nodes.append((lo + hi) / 2.0 + half * gn)
        weights.append(half * gw)
    return np.concatenate(nodes), np.concatenate(weights)


def radial_integral(g: Callable[[np.ndarray], np.ndarray], decay_rate: float,
                    tol: float, *, r0: Optional[float] = None,
                    poly_degree: float = 0.0, pts: int = 24) -> RadialIntegral:
    """int_0^inf g(r) dr for g decaying like exp(-decay_rate * r).

    g may have an integrable algebraic-times-log singularity at 0 and must
    accept numpy arrays.  poly_degree is the polynomial growth of g used for
    the tail cut.
    """
    if decay_rate <= 0.0:
        raise ValueError("decay_rate must be positive")
    if r0 is None:
        r0 = 1.0 / decay_rate
    big_r = r0 + 46.0 / decay_rate
    for _ in range(4):
        big_r = r0 + (46.0 + max(poly_degree, 0.0) * math.log(max(big_r, 2.0))) / decay_rate
    r1, w1 = _radial_nodes(r0, big_r, pts)
    r2, w2 = _radial_nodes(r0, big_r, 2 * pts)
    v1 = np.sum(w1 * g(r1))
    v2 = np.sum(w2 * g(r2))
    tail = abs(g(np.array([big_r]))[0]) / decay_rate
    err = abs(v1 - v2) + tail
    return RadialIntegral(v2, float(err), r1.size + r2.size)


def radial_k_moment(order: float, a: float, k: int, tol: float = 1e-10) -> float:
    """Numerical moment  int_0^inf 2 t^{k + order/2} K_order(a sqrt(t)) dt.

    For the canonical scaling a = 2 the closed targets are k!^2 (order 0)
    and k! Gamma(k + order + 1) in general.  Raises QuadratureError if the
    certified error bound exceeds tol (relative).
    """
    if a <= 0.0:
        raise ValueError("scaling must be positive")
    if k < 0:
        raise ValueError("k must be nonnegative")
    if order < 0.0:
        raise ValueError("order must be nonnegative")

    # t = r^2 turns the integral into 4 int r^{2k+order+1} K_order(a r) dr
    p = 2 * k + order + 1.0

    def g(r: np.ndarray) -> np.ndarray:
        return 4.0 * r**p * specfun.bessel_k(order, a * r)

    res = radial_integral(g, a, tol, poly_degree=p)
    scale = abs(res.value) + 1e-300
    if res.error_bound > tol * scale:
        raise QuadratureError(
            f"radial moment k={k}, order={order}: bound {res.error_bound:.2e} "
            f"exceeds tol {tol:.2e} * scale")
    return float(np.real(res.value))


def integrate_plane(density: Callable[[np.ndarray], np.ndarray],
                    f: Callable[[np.ndarray], np.ndarray],
                    tol: float, *,
                    decay_rate: Optional[float] = None,
                    variation_rate: Optional[float] = None,
                    poly_degree: int = 8,
                    r0: Optional[float] = None,
                    max_angular: int = 4096,
                    pts: int = 24) -> RadialIntegral:
    """int_C f(w) density(w) dA(w) by an angular-trapezoid x radial product rule.

    The trapezoid rule on equispaced angles is exact for trigonometric
    polynomials of degree below the node count and converges geometrically
    for entire angular dependence; the node count doubles until the result
    stabilizes.  density must decay exponentially in |w| (rate decay_rate,
    estimated from samples along the positive real axis when omitted);
    f must be polynomially bounded.
    """
    if decay_rate is None:
        s1, s2 = 5.0, 10.0
        d1 = abs(density(np.array([s1 + 0j]))[0])
        d2 = abs(density(np.array([s2 + 0j]))[0])
        if d2 > 0 and d1 > 0:
            decay_rate = max(math.log(d1 / d2) / (s2 - s1), 0.05)
        else:
            decay_rate = 1.0
    if variation_rate is None:
        variation_rate = decay_rate
    if r0 is None:
        r0 = 1.0 / variation_rate
    big_r = r0 + 46.0 / decay_rate
    for _ in range(4):
        big_r = r0 + (46.0 + (poly_degree + 1.0) * math.log(max(big_r, 2.0))) / decay_rate

    # radial layout sized by the variation rate (integrand may grow like
    # exp(+b r) before the K-decay wins, which needs finer panels)
    n_pan = min(80, max(8, int(math.ceil((big_r - r0) * variation_rate / 4.0))))
    gn, gw = _leggauss(pts)
    gn2, gw2 = _leggauss(2 * pts)

    def build(nodes, wts):
        rs, ws = [], []
        edges = np.linspace(0.0, 46.0, 15)
        for lo, hi in zip(edges[:-1], edges[1:]):
            half = (hi - lo) / 2.0
            s = (lo + hi) / 2.0 + half * nodes
            r = r0 * np.exp(-s)
            rs.append(r)
            ws.append(half * wts * r)
        edges = np.linspace(r0, big_r, n_pan + 1)
        for lo, hi in zip(edges[:-1], edges[1:]):
            half = (hi - lo) / 2.0
            rs.append((lo + hi) / 2.0 + half * nodes)
            ws.append(half * wts)
        return np.concatenate(rs), np.concatenate(ws)

    r_c, w_c = build(gn, gw)
    r_f, w_f = build(gn2, gw2)

    def polar_value(r, w, m):
        theta = np.arange(m) * (2.0 * math.pi / m)
        zgrid = r[:, None] * np.exp(1j * theta)[None, :]
        vals = f(zgrid) * density(zgrid)
        profile = vals.mean(axis=1) * (2.0 * math.pi)
        return np.sum(w * r * profile)

    # angular adaptivity runs on the coarse radial grid, the final value on
    # the fine one (the angular error is radial-grid independent here)
    m = max(16, 4 * poly_degree + 4)
    prev = polar_value(r_c, w_c, m)
    ang_err = math.inf
    while m < max_angular:
        m *= 2
        cur = polar_value(r_c, w_c, m)
        ang_err = abs(cur - prev)
        prev = cur
        if ang_err <= max(tol, 1e-15 * abs(cur)) / 4.0:
            break
    coarse = prev
    prev = polar_value(r_f, w_f, m)
    rad_err = abs(coarse - prev)
    tail = abs(density(np.array([big_r + 0j]))[0]) * (big_r ** (poly_degree + 1)) / decay_rate
    err = ang_err + rad_err + tail
    scale = abs(prev) + 1e-300
    if err > max(tol * scale, tol):
        raise QuadratureError(
            f"plane integral: bound {err:.2e} exceeds tolerance {tol:.2e}")
    nodes_used = r_f.size * m + r_c.size * m
    return RadialIntegral(complex(prev), float(err), nodes_used)
