"""Legendre elliptic integrals and the seven curve integrals.

The genus-2 spectral curve of this package is determined by a real shift
``lambda0`` and three imaginary parts ``0 < a < b < c`` of its branch points.
All of its period data reduces to seven real definite integrals over the two
elliptic quotient curves.  Each integral is evaluated twice: by
singularity-removing tanh-sinh quadrature of its defining form, and through
an independent closed Legendre reduction (for the final constant ``f_minus``,
which has no closed Legendre form, an algebraically rationalized finite
reformulation integrated by Gauss rules).  A disagreement between the two
routes beyond 1e-8 relative aborts the computation, since it can only come
from a convention bug.

Conventions: every Legendre routine takes the MODULUS ``k`` (not the
parameter ``m = k**2``), and the first argument of the incomplete integral
``legendre_F`` is the sine of the amplitude.  Both conventions were fixed by
requiring the closed forms to reproduce the quadrature values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import ellipkinc, ellipkm1, elliprf, elliprj
from numpy.polynomial.legendre import leggauss

from ._quad import tanh_sinh

__all__ = [
    "CurveParams",
    "EllipticConstants",
    "legendre_K",
    "legendre_F",
    "legendre_Pi",
    "curve_integrals",
]


@dataclass(frozen=True)
class CurveParams:
    """Branch-point data of the spectral curve.

    lambda0 is the common real part of the branch points; a, b, c their
    imaginary parts, required to satisfy 0 < a < b < c.
    """

    lambda0: float
    a: float
    b: float
    c: float

    def __post_init__(self):
        for name in ("lambda0", "a", "b", "c"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")
        if not 0.0 < self.a < self.b < self.c:
            raise ValueError(
                f"need 0 < a < b < c, got a={self.a}, b={self.b}, c={self.c}"
            )


@dataclass(frozen=True)
class EllipticConstants:
    """The seven definite integrals attached to a curve.

    Scale law under (a, b, c) -> (s*a, s*b, s*c):
    a_plus, b_plus scale as 1/s; a_minus, b_minus, b1_minus as 1/s**2;
    d_minus and f_minus are invariant.
    """

    a_plus: float
    b_plus: float
    a_minus: float
    b_minus: float
    b1_minus: float
    d_minus: float
    f_minus: float


# ---------------------------------------------------------------------------
# Legendre integrals (modulus convention)

def _K_from_m1(m1):
    """Complete integral of the first kind from the complementary parameter."""
    if m1 <= 0.0:
        raise ValueError("modulus must satisfy k < 1")
    return float(ellipkm1(m1))


def _Pi_from_m1(n, m1):
    """Complete integral of the third kind via Carlson symmetric forms."""
    if n >= 1.0:
        raise ValueError(f"characteristic must satisfy n < 1, got {n}")
    if m1 <= 0.0:
        raise ValueError("modulus must satisfy k < 1")
    rf = elliprf(0.0, m1, 1.0)
    if n == 0.0:
        return float(rf)
    return float(rf + n / 3.0 * elliprj(0.0, m1, 1.0, 1.0 - n))


def legendre_K(k):
    """Complete elliptic integral of the first kind, modulus convention."""
    if not 0.0 <= k < 1.0:
        raise ValueError(f"modulus must lie in [0, 1), got {k}")
    return _K_from_m1((1.0 - k) * (1.0 + k))


def legendre_F(sin_phi, k):
    """Incomplete integral of the first kind; first argument is sin(phi)."""
    if not 0.0 <= sin_phi <= 1.0:
        raise ValueError(f"sin(phi) must lie in [0, 1], got {sin_phi}")
    if not 0.0 <= k < 1.0:
        raise ValueError(f"modulus must lie in [0, 1), got {k}")
    if sin_phi == 1.0:
        return legendre_K(k)
    return float(ellipkinc(math.asin(sin_phi), k * k))


def legendre_Pi(n, k):
    """Complete elliptic integral of the third kind, modulus convention."""
    if not 0.0 <= k < 1.0:
        raise ValueError(f"modulus must lie in [0, 1), got {k}")
    return _Pi_from_m1(n, (1.0 - k) * (1.0 + k))


# ---------------------------------------------------------------------------
# direct quadrature of the seven integrals

def _quad_integrals(a, b, c, tol):
    a2, b2, c2 = a * a, b * b, c * c
    # pairwise gaps as products of differences; exact to one rounding even
    # when two branch points nearly coincide
    ba = (b - a) * (b + a)
    ca = (c - a) * (c + a)
    cb = (c - b) * (c + b)

    a_plus, _ = tanh_sinh(lambda u, v: 1.0 / np.sqrt(u * v * (cb + v)), ba, tol, scale=0.0)
    b_plus, _ = tanh_sinh(lambda u, v: 1.0 / np.sqrt((ba + u) * u * v), cb, tol, scale=0.0)
    a_minus, _ = tanh_sinh(
        lambda u, v: 1.0 / np.sqrt(u * v * (ba + v) * (ca + v)), a2, tol, scale=0.0
    )
    b_minus, _ = tanh_sinh(
        lambda u, v: 1.0 / np.sqrt((a2 + u) * u * v * (cb + v)), ba, tol,
        scale=0.0,
    )
    d_minus, _ = tanh_sinh(
        lambda u, v: 0.5 * np.sqrt(u) / np.sqrt(v * (ba + v) * (ca + v)), a2, tol, scale=0.0
    )

    # the two integrals over (c**2, inf) after the substitution t = c**2/u**2
    alpha = a2 / c2
    beta = b2 / c2

    def gaps(u, v):
        # 1 - alpha*u**2 and 1 - beta*u**2 without cancellation at u -> 1
        one_m_au2 = v * (1.0 + u) + u * u * (ca / c2)
        one_m_bu2 = v * (1.0 + u) + u * u * (cb / c2)
        return one_m_au2, one_m_bu2

    def f_b1(u, v):
        one_m_au2, one_m_bu2 = gaps(u, v)
        return (2.0 / c2) * u / np.sqrt(one_m_au2 * one_m_bu2 * v * (1.0 + u))

    b1_minus, _ = tanh_sinh(f_b1, 1.0, tol, scale=0.0)

    s1p = 1.0 + alpha + beta
    s2p = alpha + beta + alpha * beta
    s3p = alpha * beta

    def f_fm(u, v):
        one_m_au2, one_m_bu2 = gaps(u, v)
        root = np.sqrt(one_m_au2 * one_m_bu2 * v * (1.0 + u))
        u2 = u * u
        return u * (s1p - s2p * u2 + s3p * u2 * u2) / (root * (1.0 + root))

    f_minus, _ = tanh_sinh(f_fm, 1.0, tol, scale=0.0)

    return EllipticConstants(
        a_plus=a_plus,
        b_plus=b_plus,
        a_minus=a_minus,
        b_minus=b_minus,
        b1_minus=b1_minus,
        d_minus=d_minus,
        f_minus=f_minus,
    )


# ---------------------------------------------------------------------------
# closed Legendre route (and the rationalized Gauss route for f_minus)

def _f_minus_gauss(a, b, c, tol=1e-12, n_max=4096):
    """Second, quadrature-independent route to the tail integral f_minus.

    After t = c**2/v**2 the integral becomes
        int_0^1 P(v) / (sqrt(R) * (1 + sqrt(R))) dv,
    R(v) = (1 - v**2)(1 - alpha v**2)(1 - beta v**2),
    P(v) = v*(s1 - s2 v**2 + s3 v**4).
    The further substitution v = 1 - s**2 turns sqrt(R) into s*g(s) with g
    smooth and positive, leaving the analytic integrand
        2 P(1 - s**2) / (g(s) * (1 + s*g(s)))
    on (0, 1), which Gauss-Legendre handles at spectral accuracy.  Node
    counts double until the result is stable.
    """
    a2, b2, c2 = a * a, b * b, c * c
    alpha, beta = a2 / c2, b2 / c2
    ca = (c - a) * (c + a)
    cb = (c - b) * (c + b)
    s1p = 1.0 + alpha + beta
    s2p = alpha + beta + alpha * beta
    s3p = alpha * beta

    def integrand(s):
        v = 1.0 - s * s
        v2 = v * v
        pv = v * (s1p - s2p * v2 + s3p * v2 * v2)
        one_m_v = s * s
        one_m_av2 = one_m_v * (1.0 + v) + v2 * (ca / c2)
        one_m_bv2 = one_m_v * (1.0 + v) + v2 * (cb / c2)
        g = np.sqrt((1.0 + v) * one_m_av2 * one_m_bv2)
        return 2.0 * pv / (g * (1.0 + s * g))

    # 1/g varies on the scale s ~ sqrt(1 - beta) near s = 0, so the panels
    # are graded dyadically toward that endpoint
    layer = math.sqrt(max(1.0 - beta, 1e-30) / 2.0)
    depth = min(60, max(4, int(math.ceil(-math.log2(layer))) + 2))
    edges = [0.0] + [2.0 ** (-j) for j in range(depth, -1, -1)]

    prev = None
    n = 24
    while n <= n_max:
        xg, wg = leggauss(n)
        value = 0.0
        for lo, hi in zip(edges[:-1], edges[1:]):
            half = 0.5 * (hi - lo)
            value += half * float(np.sum(wg * integrand(lo + half * (xg + 1.0))))
        if prev is not None and abs(value - prev) <= tol * max(1.0, abs(value)):
            return value
        prev = value
        n *= 2
    raise RuntimeError("f_minus Gauss route did not stabilize")


def _closed_integrals(a, b, c):
    a2, b2, c2 = a * a, b * b, c * c
    ba = (b - a) * (b + a)
    ca = (c - a) * (c + a)
    cb = (c - b) * (c + b)
    rca = math.sqrt(ca)

    # complementary parameters written as exact ratios so that moduli close
    # to 1 (nearly degenerate curves) lose no precision
    a_plus = 2.0 * _K_from_m1(cb / ca) / rca
    b_plus = 2.0 * _K_from_m1(ba / ca) / rca
    a_minus = 2.0 * _K_from_m1(c2 * ba / (b2 * ca)) / (b * rca)
    b_minus = 2.0 * _K_from_m1(a2 * cb / (b2 * ca)) / (b * rca)
    b1_minus = 2.0 * float(
        ellipkinc(math.asin(b / c), c2 * ba / (b2 * ca))
    ) / (b * rca)
    # K(k) - Pi(n, k) collapses to a single Carlson R_J term, avoiding the
    # cancellation that would otherwise dominate for small a
    k_am1 = c2 * ba / (b2 * ca)  # complement of the a_minus modulus
    n_char = a2 / (a2 - c2)
    d_minus = c2 * (
        -n_char / 3.0 * float(elliprj(0.0, k_am1, 1.0, 1.0 - n_char))
    ) / (b * rca)
    f_minus = _f_minus_gauss(a, b, c)

    return EllipticConstants(
        a_plus=a_plus,
        b_plus=b_plus,
        a_minus=a_minus,
        b_minus=b_minus,
        b1_minus=b1_minus,
        d_minus=d_minus,
        f_minus=f_minus,
    )


def curve_integrals(params: CurveParams, tol=1e-12, cross_tol=1e-8):
    """Evaluate the seven integrals for ``params`` (lambda0 plays no role).

    Both evaluation routes must agree within ``cross_tol`` relative on every
    integral; the quadrature values are returned.
    """
    a, b, c = params.a, params.b, params.c
    quad = _quad_integrals(a, b, c, tol)
    closed = _closed_integrals(a, b, c)
    for name in (
        "a_plus", "b_plus", "a_minus", "b_minus", "b1_minus", "d_minus",
        "f_minus",
    ):
        q = getattr(quad, name)
        cf = getattr(closed, name)
        rel = abs(q - cf) / max(abs(q), abs(cf))
        if rel > cross_tol:
            raise RuntimeError(
                f"integral {name}: quadrature {q!r} and closed form {cf!r} "
                f"disagree by {rel:.3e} relative"
            )
    return quad
