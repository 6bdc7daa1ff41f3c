"""From curve parameters to the full parameter set of the two-phase solution.

Everything here works on the centred curve w**2 = (mu**2 + a**2)
(mu**2 + b**2)(mu**2 + c**2), obtained by shifting the spectral parameter by
lambda0.  The branch cuts are the vertical segments [ia, ib], [-ib, -ia] and
the two rays [ic, i*inf), [-i*inf, -ic].  The second-kind differentials

    dOmega1 = -i (mu**3 + p1*mu) / w dmu,
    dOmega2 = -i (4*mu**4 + 2*s1*mu**2 + q0) / w dmu,

are normalized to have vanishing a-periods; p1 kills the odd moment over the
a2-type cycle and q0 the even moment over the a1-type cycle.  Their
asymptotic constants K1, K2 give the plane-wave phase of the solution, and
their b-periods must reproduce 2*pi*i times the closed-form wave vectors U
and V, which is what ``b_period_errors`` measures.

The constants are extracted along the path from the branch point i*a down
the imaginary axis to 0 and out the positive real axis, where w**2 > 0 keeps
the principal square root trivially on one sheet.  The tail integrands are
conjugate-rationalized so the subtraction of the growing part costs no
precision.  One-sided paths of this kind determine the constants only up to
half b-periods; the returned values carry the fixed offsets (+pi/A+ for the
first constant, +2*pi/A- for the second) that select the representative
entering the theta-function solution.  Both offsets are pinned down
numerically by an independent PDE-residual fit and by the degenerate limits
of the solution.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ._quad import tanh_sinh
from .elliptic import CurveParams, EllipticConstants, curve_integrals
from .theta import PeriodMatrix

__all__ = [
    "SolutionParams",
    "WaveVectors",
    "PeriodLattice",
    "build_solution_params",
    "phase_constants",
    "second_kind_constants",
    "wave_vectors",
    "period_matrix",
    "period_lattice",
    "reality_check",
    "b_period_errors",
    "connector_vector",
    "connector_calibration",
]


@dataclass(frozen=True)
class SolutionParams:
    """Everything the theta-quotient solution formula needs."""

    frb_minus: float
    frb_plus: float
    kappa1: float
    k: float
    kappa2: float
    delta: float
    K0: complex
    K1: float
    K2: float
    Z: np.ndarray = field(default_factory=lambda: np.zeros(2, dtype=complex))
    curve: CurveParams | None = None
    ell: EllipticConstants | None = None

    def __post_init__(self):
        z = np.asarray(self.Z, dtype=complex)
        if z.shape != (2,):
            raise ValueError("initial phase Z must be a complex 2-vector")
        object.__setattr__(self, "Z", z)
        if self.frb_minus <= 0.0 or self.frb_plus <= 0.0:
            raise ValueError("period ratios must be positive")


@dataclass(frozen=True)
class WaveVectors:
    """Wave vectors U = (0, -1/A+) and V = (2/A-, -4*lambda0/A+)."""

    U: np.ndarray
    V: np.ndarray


@dataclass(frozen=True)
class PeriodLattice:
    """Translations (X_j, T_j) with X_j U + T_j V = e_j, and the basic
    periods X = A+/2, T = A-/4, Tprime = A+/(8*lambda0) (None at lambda0=0).
    """

    X1: float
    T1: float
    X2: float
    T2: float
    X: float
    T: float
    Tprime: float | None


# ---------------------------------------------------------------------------
# moments and the normalization coefficients of the second-kind differentials

def _axis_moment(j, a, b, c, tol=1e-12):
    """int_0^a y**j dy / sqrt((a^2-y^2)(b^2-y^2)(c^2-y^2))."""
    def f(u, v):
        y = u
        return y ** j / np.sqrt(
            v * (2.0 * a - v) * (b - y) * (b + y) * (c - y) * (c + y)
        )
    val, _ = tanh_sinh(f, a, tol, scale=0.0)
    return val


def _gap_moment(j, a, b, c, tol=1e-12):
    """int_a^b y**j dy / sqrt((y^2-a^2)(b^2-y^2)(c^2-y^2))."""
    def f(u, v):
        y = a + u
        return y ** j / np.sqrt(
            u * (y + a) * v * (y + b) * (c - y) * (c + y)
        )
    val, _ = tanh_sinh(f, b - a, tol, scale=0.0)
    return val


def _normalization(a, b, c):
    """Coefficients p1, q0 of the a-cycle-normalized dOmega1, dOmega2."""
    s1 = a * a + b * b + c * c
    p1 = _gap_moment(3, a, b, c) / _gap_moment(1, a, b, c)
    q0 = -(4.0 * _axis_moment(4, a, b, c)
           - 2.0 * s1 * _axis_moment(2, a, b, c)) / _axis_moment(0, a, b, c)
    return p1, q0


def _w_real(x, a, b, c):
    return np.sqrt((x * x + a * a) * (x * x + b * b) * (x * x + c * c))


def _real_axis_tail(near_f, far_f, c, tol=1e-12):
    """Integrate over (0, inf), split at c.  ``near_f(x)`` covers (0, c);
    ``far_f(y)`` is the integrand after x = c/y (Jacobian included), written
    in the reciprocal variable so huge x never appears."""
    near, _ = tanh_sinh(lambda u, v: near_f(u), c, tol)
    far, _ = tanh_sinh(lambda u, v: far_f(u), 1.0, tol)
    return near + far


def second_kind_constants(a, b, c):
    """Asymptotic constants (first, second) of the normalized second-kind
    Abelian integrals on the centred curve, in the representative entering
    the solution formula.  The first constant vanishes identically for this
    symmetric family; it is still computed, as a cross-check."""
    if not 0.0 < a < b < c:
        raise ValueError("need 0 < a < b < c")
    a2, b2, c2 = a * a, b * b, c * c
    s1 = a2 + b2 + c2
    e2 = a2 * b2 + a2 * c2 + b2 * c2
    e3 = a2 * b2 * c2
    p1, q0 = _normalization(a, b, c)

    # vertical leg from i*a to 0 contributes only to the first constant
    k1_vert = p1 * _axis_moment(1, a, b, c) - _axis_moment(3, a, b, c)

    a4_1, a2_1, a0_1 = 2.0 * p1 - s1, p1 * p1 - e2, -e3
    a4_2 = 4.0 * s1 * s1 + 8.0 * q0 - 16.0 * e2
    a2_2 = 4.0 * s1 * q0 - 16.0 * e3
    a0_2 = q0 * q0

    def r1_near(x):
        w = _w_real(x, a, b, c)
        n = x ** 3 + p1 * x
        x2 = x * x
        return ((a4_1 * x2 + a2_1) * x2 + a0_1) / (w * (n + w))

    def r1_far(u):
        # x = c/u; everything divided through by x**6
        y2 = (u / c) ** 2
        W = np.sqrt((1.0 + a * a * y2) * (1.0 + b * b * y2)
                    * (1.0 + c * c * y2))
        num = (a4_1 + y2 * (a2_1 + y2 * a0_1)) / c
        return num / (W * (1.0 + p1 * y2 + W))

    def r2_near(x):
        w = _w_real(x, a, b, c)
        n = 4.0 * x ** 4 + 2.0 * s1 * x * x + q0
        x2 = x * x
        return ((a4_2 * x2 + a2_2) * x2 + a0_2) / (w * (n + 4.0 * x * w))

    def r2_far(u):
        # x = c/u; numerator over x**8, denominator over x**7
        y2 = (u / c) ** 2
        W = np.sqrt((1.0 + a * a * y2) * (1.0 + b * b * y2)
                    * (1.0 + c * c * y2))
        num = (u / (c * c)) * (a4_2 + y2 * (a2_2 + y2 * a0_2))
        den = W * (4.0 + 2.0 * s1 * y2 + q0 * y2 * y2 + 4.0 * W)
        return num / den

    ell = curve_integrals(CurveParams(0.0, a, b, c))
    k1 = k1_vert + _real_axis_tail(r1_near, r1_far, c) + math.pi / ell.a_plus
    k2 = _real_axis_tail(r2_near, r2_far, c) + 2.0 * math.pi / ell.a_minus
    return k1, k2


def phase_constants(a, b, c):
    """The second asymptotic constant (the plane-wave frequency content of
    the solution before the lambda0 shift)."""
    return second_kind_constants(a, b, c)[1]


# ---------------------------------------------------------------------------
# pipeline

def build_solution_params(params: CurveParams, Z=None) -> SolutionParams:
    """Compute every solution parameter from the curve data."""
    ell = curve_integrals(params)
    delta = ell.b1_minus / ell.a_minus
    K0 = 1j * params.c * math.exp(ell.d_minus * delta - ell.f_minus)
    K2 = phase_constants(params.a, params.b, params.c) \
        - 2.0 * params.lambda0 ** 2
    if Z is None:
        Z = np.zeros(2, dtype=complex)
    return SolutionParams(
        frb_minus=ell.b_minus / ell.a_minus,
        frb_plus=ell.b_plus / ell.a_plus,
        kappa1=4.0 / ell.a_minus,
        k=2.0 / ell.a_plus,
        kappa2=8.0 * params.lambda0 / ell.a_plus,
        delta=delta,
        K0=K0,
        K1=-params.lambda0,
        K2=K2,
        Z=np.asarray(Z, dtype=complex),
        curve=params,
        ell=ell,
    )


def wave_vectors(params: CurveParams, ell: EllipticConstants | None = None):
    if ell is None:
        ell = curve_integrals(params)
    U = np.array([0.0, -1.0 / ell.a_plus])
    V = np.array([2.0 / ell.a_minus, -4.0 * params.lambda0 / ell.a_plus])
    return WaveVectors(U=U, V=V)


def period_matrix(params: CurveParams, ell: EllipticConstants | None = None):
    if ell is None:
        ell = curve_integrals(params)
    return PeriodMatrix.from_ratios(
        ell.b_minus / ell.a_minus, ell.b_plus / ell.a_plus
    )


def period_lattice(params: CurveParams, ell: EllipticConstants | None = None):
    """Solve X_j U + T_j V = e_j in closed form."""
    if ell is None:
        ell = curve_integrals(params)
    wv = wave_vectors(params, ell)
    M = np.column_stack([wv.U, wv.V])  # [X_j, T_j] solves M @ (X, T) = e_j
    det = M[0, 0] * M[1, 1] - M[0, 1] * M[1, 0]
    if det == 0.0:
        raise ValueError("wave vectors are linearly dependent")
    inv = np.array([[M[1, 1], -M[0, 1]], [-M[1, 0], M[0, 0]]]) / det
    s1 = inv @ np.array([1.0, 0.0])
    s2 = inv @ np.array([0.0, 1.0])
    lam0 = params.lambda0
    return PeriodLattice(
        X1=s1[0], T1=s1[1], X2=s2[0], T2=s2[1],
        X=ell.a_plus / 2.0,
        T=ell.a_minus / 4.0,
        Tprime=None if lam0 == 0.0 else ell.a_plus / (8.0 * lam0),
    )


def reality_check(Z, B: PeriodMatrix, max_norm=8, tol=1e-9):
    """Search for an integer witness N with 2*Im Z = Im(B N) and
    Re(B N) integral.  Returns (found, N or None)."""
    Z = np.asarray(Z, dtype=complex)
    target = 2.0 * Z.imag
    Bm = B.entries
    rng = range(-max_norm, max_norm + 1)
    for n1 in rng:
        for n2 in rng:
            N = np.array([n1, n2], dtype=float)
            BN = Bm @ N
            if np.max(np.abs(BN.imag - target)) > tol:
                continue
            if np.max(np.abs(BN.real - np.round(BN.real))) > tol:
                continue
            return True, np.array([n1, n2], dtype=int)
    return False, None


# ---------------------------------------------------------------------------
# contour cross-checks on the curve

def _segment_cut(poly, a, b, c, tol=1e-12):
    """2 * int over the cut segment [ia, ib]: 2 int_a^b poly(iy)/sqrt(g) dy,
    g = (y^2-a^2)(b^2-y^2)(c^2-y^2)."""
    def f(u, v):
        y = a + u
        g = u * (y + a) * v * (y + b) * (c - y) * (c + y)
        return poly(1j * y) / np.sqrt(g)
    val, _ = tanh_sinh(f, b - a, tol, scale=1.0)
    return 2.0 * val


def _segment_between(poly, a, b, c, tol=1e-12):
    """2 * int over [ib, ic] (off the cuts, w real there):
    2 int_b^c poly(iy)*i/sqrt(g) dy, g = (y^2-a^2)(y^2-b^2)(c^2-y^2)."""
    def f(u, v):
        y = b + u
        g = (y - a) * (y + a) * u * (y + b) * v * (c + y)
        return poly(1j * y) * 1j / np.sqrt(g)
    val, _ = tanh_sinh(f, c - b, tol, scale=1.0)
    return 2.0 * val


def b_period_errors(params: CurveParams):
    """Absolute errors of the contour b-periods against the closed forms.

    Checks the period matrix columns (holomorphic differentials) and the
    identities b-periods(dOmega1) = 2*pi*i*U, b-periods(dOmega2) = 2*pi*i*V
    in the centred frame (lambda0 = 0 wave vectors)."""
    a, b, c = params.a, params.b, params.c
    ell = curve_integrals(CurveParams(0.0, a, b, c))
    p1, q0 = _normalization(a, b, c)
    s1 = a * a + b * b + c * c
    frbm = ell.b_minus / ell.a_minus
    frbp = ell.b_plus / ell.a_plus

    dU1 = lambda mu: 1j / (2.0 * ell.a_minus) + 0.0 * mu
    dU2 = lambda mu: -1j * mu / (2.0 * ell.a_plus)
    dO1 = lambda mu: -1j * (mu ** 3 + p1 * mu)
    dO2 = lambda mu: -1j * (4.0 * mu ** 4 + 2.0 * s1 * mu * mu + q0)

    errs = {
        "B11": abs(_segment_cut(dU1, a, b, c) - 0.5j * frbm),
        # the symmetric b1 representative is the cut route minus the second
        # a-cycle, whose only nonzero period is the dU2 normalization 1
        "B12": abs(_segment_cut(dU2, a, b, c) - 1.0 - (-0.5)),
        "B21": abs(_segment_between(dU1, a, b, c) - (-0.5)),
        "B22": abs(_segment_between(dU2, a, b, c) - 0.5j * frbp),
        "U1": abs(_segment_cut(dO1, a, b, c) - 0.0),
        "U2": abs(_segment_between(dO1, a, b, c)
                  - 2j * math.pi * (-1.0 / ell.a_plus)),
        "V1": abs(_segment_cut(dO2, a, b, c)
                  - 2j * math.pi * (2.0 / ell.a_minus)),
        "V2": abs(_segment_between(dO2, a, b, c) - 0.0),
    }
    return errs


# ---------------------------------------------------------------------------
# connector vector between the two points at infinity

def connector_vector(a, b, c, tol=1e-12):
    """The vector of normalized holomorphic integrals between the two points
    at infinity, computed as twice the integral from the branch point i*c
    along the straight path i*c + s, s in (0, inf).

    Along that path every factor of w**2 stays in the upper half plane, so
    the principal square root of each factor is continuous and the branch
    with w ~ +mu**3 at infinity is selected automatically."""
    if not 0.0 < a < b < c:
        raise ValueError("need 0 < a < b < c")
    ell = curve_integrals(CurveParams(0.0, a, b, c))

    def w_path(s):
        mu = s + 1j * c
        f_c = np.sqrt(s * (s + 2j * c))
        return mu, f_c * np.sqrt(mu * mu + a * a) * np.sqrt(mu * mu + b * b)

    def f_near(num):
        def f(u, v):
            mu, w = w_path(u)
            return num(mu) / w
        return f

    def g_of(h):
        # w = s**3 * g(h) with h = u/c = 1/s; every factor tends to 1
        one = (1.0 + 1j * c * h) ** 2
        return (np.sqrt(1.0 + 2j * c * h)
                * np.sqrt(one + a * a * h * h)
                * np.sqrt(one + b * b * h * h))

    def f_far_const(u, v):
        # integrand dmu/w after s = c/u, with the Jacobian c/u**2
        h = u / c
        return u / (c * c * g_of(h))

    def f_far_mu(u, v):
        # integrand mu*dmu/w after the same substitution
        h = u / c
        return (1.0 + 1j * c * h) / (c * g_of(h))

    comps = []
    for num, far, coef in (
        (lambda mu: 1.0 + 0.0 * mu, f_far_const, 1j / ell.a_minus),
        (lambda mu: mu, f_far_mu, -1j / ell.a_plus),
    ):
        near, _ = tanh_sinh(f_near(num), c, tol)
        far_v, _ = tanh_sinh(far, 1.0, tol)
        comps.append(coef * (near + far_v))
    return np.array(comps)


def connector_calibration(a, b, c, max_norm=3):
    """Express the computed connector vector as the canonical representative
    (-i*delta/2, -1/2) plus a lattice vector m + B n of the period matrix.

    Returns (D, n, m, residual): the computed vector, the integer lattice
    coordinates, and the leftover after subtracting the decomposition, which
    measures the internal consistency of the contour machinery."""
    ell = curve_integrals(CurveParams(0.0, a, b, c))
    delta = ell.b1_minus / ell.a_minus
    B = period_matrix(CurveParams(0.0, a, b, c), ell).entries
    D = connector_vector(a, b, c)
    target = np.array([-0.5j * delta, -0.5])

    best = None
    for n1 in range(-max_norm, max_norm + 1):
        for n2 in range(-max_norm, max_norm + 1):
            n = np.array([n1, n2], dtype=float)
            r = D - target - B @ n
            m = np.round(r.real)
            err = float(np.max(np.abs(r - m)))
            if best is None or err < best[3]:
                best = (n.astype(int), m.astype(int), r - m, err)
    n, m, resid, err = best
    return D, n, m, err
