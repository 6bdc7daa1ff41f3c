"""Jacobi theta functions, the two-factor combination H, and the genus-2
Riemann theta with characteristics.

Series conventions: the nome is h = exp(i*pi*tau) and
    theta3(u|tau) = 1 + 2 * sum_m h**(m**2) * cos(2*pi*m*u),
so the real period in ``u`` is 1 (2 for theta1/theta2 because of their sign
flip).  The genus-2 theta over a symmetric period matrix B with positive
definite imaginary part reduces, for the matrices produced by this package's
curves, to the combination H of products of theta2/theta3 at doubled
arguments; ``theta_reduction_check`` verifies that identity numerically.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "PeriodMatrix",
    "ThetaCharacteristics",
    "jacobi_theta",
    "theta_H",
    "riemann_theta2",
    "theta_reduction_check",
]

_LOG_TERM_CUTOFF = 17.0 * np.log(10.0)
_EXP_LIMIT = 700.0


@dataclass(frozen=True)
class PeriodMatrix:
    """Symmetric 2x2 matrix with positive definite imaginary part."""

    entries: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.entries, dtype=complex)
        if m.shape != (2, 2):
            raise ValueError("period matrix must be 2x2")
        if m[0, 1] != m[1, 0]:
            raise ValueError("period matrix must be symmetric")
        y = m.imag
        if not (y[0, 0] > 0.0 and np.linalg.det(y) > 0.0):
            raise ValueError("imaginary part must be positive definite")
        object.__setattr__(self, "entries", m)

    @classmethod
    def from_ratios(cls, frb_minus, frb_plus):
        """The curve-family matrix [[i*frb-/2, -1/2], [-1/2, i*frb+/2]]."""
        if frb_minus <= 0.0 or frb_plus <= 0.0:
            raise ValueError("period ratios must be positive")
        return cls(np.array(
            [[0.5j * frb_minus, -0.5], [-0.5, 0.5j * frb_plus]]
        ))


@dataclass(frozen=True)
class ThetaCharacteristics:
    """Real characteristics (eta, zeta) of the genus-2 theta."""

    eta: np.ndarray = field(default_factory=lambda: np.zeros(2))
    zeta: np.ndarray = field(default_factory=lambda: np.zeros(2))

    def __post_init__(self):
        for name in ("eta", "zeta"):
            v = np.asarray(getattr(self, name), dtype=float)
            if v.shape != (2,) or not np.all(np.isfinite(v)):
                raise ValueError(f"{name} must be a finite real 2-vector")
            object.__setattr__(self, name, v)


def jacobi_theta(j, u, tau):
    """Jacobi theta function theta_j(u | tau), j in 1..4.

    Vectorized over ``u``.  The argument is first reduced modulo the real
    period and modulo tau (peeling off the quasi-periodicity factor), so
    large |Im u| stays representable; if the peeled factor itself would
    overflow binary64 an OverflowError is raised.
    """
    if j not in (1, 2, 3, 4):
        raise ValueError(f"theta index must be 1..4, got {j}")
    tau = complex(tau)
    if not tau.imag > 0.0:
        raise ValueError("tau must have positive imaginary part")

    u_in = np.asarray(u, dtype=complex)
    scalar = u_in.ndim == 0
    u_arr = np.atleast_1d(u_in)

    # real-period reduction: all four functions have period 2
    shift_re = np.round(u_arr.real / 2.0)
    up = u_arr - 2.0 * shift_re
    # quasi-period reduction in the tau direction
    n = np.round(up.imag / tau.imag)
    up = up - n * tau
    log_fac = -1j * np.pi * n * n * tau - 2j * np.pi * n * up
    if np.any(log_fac.real > _EXP_LIMIT):
        raise OverflowError(
            "theta quasi-periodicity factor exceeds the binary64 range"
        )
    fac = np.exp(log_fac)
    if j in (1, 4):
        fac = fac * np.where(n.astype(int) % 2 == 0, 1.0, -1.0)

    # truncation: with y = Im tau and d = max |Im u'|, the m-th term is
    # bounded by exp(-pi*y*m^2 + 2*pi*d*m + pi*y*m); stop once it falls
    # 1e-17 below the largest possible term
    y = tau.imag
    d = float(np.max(np.abs(up.imag))) if up.size else 0.0
    bc = 2.0 * np.pi * d + np.pi * y
    a_ = np.pi * y
    mmax = int(np.ceil((bc + np.sqrt(bc * bc + 4.0 * a_ * (
        _LOG_TERM_CUTOFF + np.pi * d * d / y))) / (2.0 * a_))) + 2

    m = np.arange(1, mmax + 1, dtype=float)
    flat = up.ravel()
    if j in (2, 1):
        expo = (m - 0.5) ** 2
        ang = np.pi * np.outer(2.0 * m - 1.0, flat)
    else:
        expo = m ** 2
        ang = 2.0 * np.pi * np.outer(m, flat)
    coef = np.exp(1j * np.pi * tau * expo)
    if j == 4:
        coef = coef * (-1.0) ** m
    if j == 1:
        coef = coef * (-1.0) ** (m - 1.0)
    if j in (3, 4):
        val = 1.0 + 2.0 * np.sum(coef[:, None] * np.cos(ang), axis=0)
    elif j == 2:
        val = 2.0 * np.sum(coef[:, None] * np.cos(ang), axis=0)
    else:
        val = 2.0 * np.sum(coef[:, None] * np.sin(ang), axis=0)
    out = val.reshape(up.shape) * fac
    return complex(out[0]) if scalar else out


def theta_H(u1, u2, frb_minus, frb_plus):
    """The combination theta3*theta3 + theta2*theta3 + theta3*theta2
    - theta2*theta2 at moduli 2i*frb_minus, 2i*frb_plus."""
    if frb_minus <= 0.0 or frb_plus <= 0.0:
        raise ValueError("period ratios must be positive")
    tau1 = 2j * frb_minus
    tau2 = 2j * frb_plus
    t31 = jacobi_theta(3, u1, tau1)
    t21 = jacobi_theta(2, u1, tau1)
    t32 = jacobi_theta(3, u2, tau2)
    t22 = jacobi_theta(2, u2, tau2)
    return t31 * t32 + t21 * t32 + t31 * t22 - t21 * t22


def riemann_theta2(u, B: PeriodMatrix, chars: ThetaCharacteristics | None = None,
                   radius_margin=0):
    """Genus-2 Riemann theta with characteristics.

    Theta[eta, zeta](u | B) = sum over m in Z^2 of
        exp{i*pi*(m+eta)^T B (m+eta) + 2*pi*i*(m+eta)^T (u+zeta)}.

    The lattice sum runs over a box centred on the maximizer of the Gaussian
    term, with radius set by the smallest eigenvalue of Im B so the omitted
    tail is below 1e-14 of the retained sum.  ``radius_margin`` enlarges the
    box (used by the truncation-robustness test).
    """
    if chars is None:
        chars = ThetaCharacteristics()
    u = np.asarray(u, dtype=complex)
    if u.shape != (2,):
        raise ValueError("theta argument must be a complex 2-vector")
    Bm = B.entries
    Y = Bm.imag
    lam_min = float(np.min(np.linalg.eigvalsh(Y)))

    eta, zeta = chars.eta, chars.zeta
    center = -eta - np.linalg.solve(Y, (u + zeta).imag)
    radius = int(np.ceil(np.sqrt(14.0 * np.log(10.0) / (np.pi * lam_min)))) + 2
    radius += int(radius_margin)

    r1 = np.arange(np.floor(center[0]) - radius, np.floor(center[0]) + radius + 1)
    r2 = np.arange(np.floor(center[1]) - radius, np.floor(center[1]) + radius + 1)
    m1, m2 = np.meshgrid(r1, r2, indexing="ij")
    n1 = m1 + eta[0]
    n2 = m2 + eta[1]
    w = u + zeta
    expo = 1j * np.pi * (
        Bm[0, 0] * n1 * n1 + 2.0 * Bm[0, 1] * n1 * n2 + Bm[1, 1] * n2 * n2
    ) + 2j * np.pi * (n1 * w[0] + n2 * w[1])
    peak = float(np.max(expo.real))
    return complex(np.exp(peak) * np.sum(np.exp(expo - peak)))


def theta_reduction_check(u, frb_minus, frb_plus):
    """Relative discrepancy between the genus-2 theta over the curve-family
    period matrix and the Jacobi-product combination H at doubled arguments."""
    u = np.asarray(u, dtype=complex)
    B = PeriodMatrix.from_ratios(frb_minus, frb_plus)
    lhs = riemann_theta2(u, B)
    rhs = theta_H(2.0 * u[0], 2.0 * u[1], frb_minus, frb_plus)
    return abs(lhs - rhs) / max(abs(lhs), abs(rhs))
