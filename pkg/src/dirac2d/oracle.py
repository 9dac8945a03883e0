"""Independent numerical ground truth for the radial solver.

Two deliberately separate routes live here:

* :func:`series_oracle` evaluates the special functions behind the
  closed-form basis from scratch in extended precision: mpmath arithmetic,
  hand-written ascending series, and explicit geometric remainder bounds.
  It shares no code with :mod:`dirac2d.specfun` (double precision, also
  self-contained), so agreement between the two is evidence, not tautology.
  Reference constants frozen into the test-suite were minted here.

* :func:`integrate` and :func:`shooting_determinant` solve the coupled
  first-order radial system directly with an adaptive embedded Runge--Kutta
  pair, touching no special function at all.  Bound states located by
  closed-form interface matching must coincide with sign changes of the
  shooting mismatch determinant.

The oracle favours transparency over speed.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Callable, Sequence

import mpmath as mp
import numpy as np
from numpy.typing import NDArray
from scipy.integrate import solve_ivp
from scipy.optimize import brentq

from .angular import AngularMode
from .model import PhysicalParams, PotentialConfig, shells

log = logging.getLogger(__name__)

FloatArray = NDArray[np.float64]

__all__ = [
    "PrecisionUnreachable",
    "StiffnessFailure",
    "IVPSpec",
    "IntegrationResult",
    "series_oracle",
    "series_oracle_derivative",
    "dirac_rhs",
    "integrate",
    "shooting_determinant",
    "shooting_bound_states",
]


class PrecisionUnreachable(Exception):
    """The requested digit count cannot be certified for these inputs."""


class StiffnessFailure(Exception):
    """The adaptive stepper underflowed its minimum step size."""


# --------------------------------------------------------------------------
# Extended-precision series evaluators
#
# Every series below is summed in mpmath arithmetic with guard digits and is
# only accepted once the term ratio is provably below 1/2, so the dropped
# tail is bounded by the last kept term (geometric bound).  Gamma, exp, sin
# and powers come from mpmath; the special functions themselves are written
# out longhand.

_SERIES_MAX_TERMS = 200_000


def _sum_hyp1f1(a, b, z):
    """Ascending Kummer series sum_n (a)_n z^n / ((b)_n n!)."""
    term = mp.mpf(1)
    total = mp.mpc(1) if isinstance(z, mp.mpc) or isinstance(a, mp.mpc) else mp.mpf(1)
    tol = mp.mpf(10) ** (-(mp.mp.dps + 5))
    a_abs, b_abs, z_abs = abs(a), abs(b), abs(z)
    n = 0
    while n < _SERIES_MAX_TERMS:
        term = term * (a + n) / (b + n) * z / (n + 1)
        total += term
        n += 1
        if n > 2 * b_abs + 2 and abs(term) < tol * (abs(total) + 1):
            # certified geometric tail: ratio <= (n+|a|)|z| / ((n-|b|)(n+1))
            q = (n + a_abs) * z_abs / ((n - b_abs) * (n + 1))
            if q < 0.5:
                return total
    raise PrecisionUnreachable(
        f"Kummer series did not certify at dps={mp.mp.dps} for a={a}, b={b}, z={z}"
    )


def _sum_bessel(nu, x, signed: bool):
    """Ascending series of J_nu (signed) or I_nu (unsigned), x > 0 real."""
    x = mp.mpf(x)
    nu = mp.mpf(nu)
    q4 = x * x / 4
    sgn = -1 if signed else 1
    # leading coefficient (x/2)^nu / Gamma(nu+1); rgamma handles negative
    # integer orders, where the first terms vanish
    term = mp.power(x / 2, nu) * mp.rgamma(nu + 1)
    total = term
    tol = mp.mpf(10) ** (-(mp.mp.dps + 5))
    nu_abs = abs(nu)
    m = 0
    while m < _SERIES_MAX_TERMS:
        denom = (m + 1) * (nu + m + 1)
        if denom == 0:
            # negative integer order: the series restarts after the zero of
            # 1/Gamma; rebuild the coefficient directly
            m += 1
            term = sgn ** m * mp.power(x / 2, nu + 2 * m) * mp.rgamma(nu + m + 1) / mp.factorial(m)
            total += term
            continue
        term = term * sgn * q4 / denom
        total += term
        m += 1
        if m > nu_abs + 2 and abs(term) < tol * (abs(total) + 1):
            q = q4 / ((m + 1) * (m + 1 - nu_abs))
            if q < 0.5:
                return total
    raise PrecisionUnreachable(
        f"Bessel series did not certify at dps={mp.mp.dps} for nu={nu}, x={x}"
    )


def _tricomi(a, b, z):
    """U(a,b,z) by the two-Kummer connection formula, offsetting integer b."""
    b_near = mp.nint(mp.re(b)) if abs(mp.im(b)) < mp.mpf("1e-40") else None
    if b_near is not None and abs(b - b_near) < mp.mpf(10) ** (-(mp.mp.dps // 2)):
        delta = mp.mpf(10) ** (-(mp.mp.dps // 3))
        return (_tricomi(a, b_near + delta, z) + _tricomi(a, b_near - delta, z)) / 2
    t1 = mp.gamma(1 - b) * mp.rgamma(a - b + 1) * _sum_hyp1f1(a, b, z)
    t2 = mp.gamma(b - 1) * mp.rgamma(a) * mp.power(z, 1 - b) * _sum_hyp1f1(a - b + 1, 2 - b, z)
    return t1 + t2


def _whittaker_prefactor(mu, z):
    return mp.exp(-z / 2) * mp.power(z, mu + mp.mpf(1) / 2)


def _ktype(nu, x):
    """pi/(2 sin(pi nu)) * (I_{-nu} - I_nu), offsetting integer nu."""
    nu = mp.mpf(nu)
    if abs(nu - mp.nint(nu)) < mp.mpf(10) ** (-(mp.mp.dps // 2)):
        delta = mp.mpf(10) ** (-(mp.mp.dps // 3))
        return (_ktype(mp.nint(nu) + delta, x) + _ktype(mp.nint(nu) - delta, x)) / 2
    return mp.pi / (2 * mp.sin(mp.pi * nu)) * (_sum_bessel(-nu, x, False) - _sum_bessel(nu, x, False))


def _bessel_y(nu, x):
    """(J_nu cos(pi nu) - J_{-nu}) / sin(pi nu), offsetting integer nu."""
    nu = mp.mpf(nu)
    if abs(nu - mp.nint(nu)) < mp.mpf(10) ** (-(mp.mp.dps // 2)):
        delta = mp.mpf(10) ** (-(mp.mp.dps // 3))
        return (_bessel_y(mp.nint(nu) + delta, x) + _bessel_y(mp.nint(nu) - delta, x)) / 2
    return (_sum_bessel(nu, x, True) * mp.cos(mp.pi * nu) - _sum_bessel(-nu, x, True)) / mp.sin(mp.pi * nu)


def _to_mp(x):
    if isinstance(x, complex):
        return mp.mpc(x)
    return mp.mpf(x)


def series_oracle(function_id: str, params: Sequence[float], z, dps: int = 50):
    """Extended-precision reference value of one special function.

    Supported ids (params in parentheses):

    ==========================  =============================
    ``kummer_M`` (a, b)         confluent M(a, b, z)
    ``tricomi_U`` (a, b)        confluent U(a, b, z)
    ``whittaker_M`` (nu, mu)    M_{nu,mu}(z)
    ``whittaker_W`` (nu, mu)    W_{nu,mu}(z)
    ``bessel_J`` (nu,)          J_nu(z), z real > 0
    ``bessel_I`` (nu,)          I_nu(z), z real > 0
    ``bessel_Y`` (nu,)          second-kind Y_nu(z), z real > 0
    ``decaying_exterior_basis`` (nu,)  K-type combination, z real > 0
    ==========================  =============================

    Returns an mpmath number carrying roughly ``dps`` certified digits.
    Raises :class:`PrecisionUnreachable` outside the |z| <= 40 series policy.
    """
    if abs(z) > 40:
        raise PrecisionUnreachable(
            f"|z| = {abs(z):.3g} outside the series radius policy (<= 40)"
        )
    with mp.workdps(dps + 15):
        zz = _to_mp(z)
        p = [_to_mp(v) for v in params]
        if function_id == "kummer_M":
            out = _sum_hyp1f1(p[0], p[1], zz)
        elif function_id == "tricomi_U":
            out = _tricomi(p[0], p[1], zz)
        elif function_id == "whittaker_M":
            nu, mu = p
            out = _whittaker_prefactor(mu, zz) * _sum_hyp1f1(mu - nu + mp.mpf(1) / 2, 1 + 2 * mu, zz)
        elif function_id == "whittaker_W":
            nu, mu = p
            out = _whittaker_prefactor(mu, zz) * _tricomi(mu - nu + mp.mpf(1) / 2, 1 + 2 * mu, zz)
        elif function_id == "bessel_J":
            out = _sum_bessel(p[0], zz, True)
        elif function_id == "bessel_I":
            out = _sum_bessel(p[0], zz, False)
        elif function_id == "bessel_Y":
            out = _bessel_y(p[0], zz)
        elif function_id == "decaying_exterior_basis":
            out = _ktype(p[0], zz)
        else:
            raise ValueError(f"unknown function id {function_id!r}")
        return +out  # round into the working precision


def series_oracle_derivative(function_id: str, params: Sequence[float], z, dps: int = 50):
    """d/dz of a series_oracle function, by extended-precision differencing.

    A central difference with step 10^(-dps/3) at triple working precision
    leaves ~2*dps/3 valid digits: far more than the double-precision
    comparisons need.
    """
    with mp.workdps(3 * dps):
        h = mp.mpf(10) ** (-dps // 3)
        hi = series_oracle(function_id, params, _to_mp(z) + h, dps=2 * dps)
        lo = series_oracle(function_id, params, _to_mp(z) - h, dps=2 * dps)
        out = (hi - lo) / (2 * h)
    with mp.workdps(dps):
        return +out


# --------------------------------------------------------------------------
# Direct integration of the radial system


def dirac_rhs(
    eps: float, eps_theta: float, m: float, e: float, V: float, W: float, S: float
) -> Callable[[float, FloatArray], FloatArray]:
    """Right-hand side of the coupled first-order radial system.

    With D+ = m + S + eV - eps and D- = m + S - eV + eps the system reads

        dPhi+/dr = (eW + eps_theta/r) Phi+  -  D- Phi-
        dPhi-/dr = -D+ Phi+  -  (eW + eps_theta/r) Phi-

    (obtained by isolating the derivatives in the coupled pair
    ``D+ Phi+ + (d/dr + eW + eps_theta/r) Phi- = 0`` and
    ``(-d/dr + eW + eps_theta/r) Phi+ - D- Phi- = 0``; substituting back
    reproduces both, which the test-suite checks symbolically).

    The state vector is the 4-real split
    [Re Phi+, Im Phi+, Re Phi-, Im Phi-].
    """
    d_plus = m + S + e * V - eps
    d_minus = m + S - e * V + eps
    ew = e * W

    def rhs(r: float, y: FloatArray) -> FloatArray:
        diag = ew + eps_theta / r
        return np.array(
            [
                diag * y[0] - d_minus * y[2],
                diag * y[1] - d_minus * y[3],
                -d_plus * y[0] - diag * y[2],
                -d_plus * y[1] - diag * y[3],
            ]
        )

    return rhs


@dataclass(frozen=True)
class IVPSpec:
    """One constant-coupling integration segment of the radial system."""

    eps: float
    eps_theta: float
    m: float
    e: float = 1.0
    V: float = 0.0
    W: float = 0.0
    S: float = 0.0
    r_span: tuple[float, float] = (0.1, 10.0)
    y0: tuple[complex, complex] = (1.0 + 0.0j, 0.0 + 0.0j)
    rtol: float = 1e-10
    atol: float = 1e-12

    def __post_init__(self) -> None:
        if min(self.r_span) <= 0.0:
            raise ValueError("r_span must stay strictly positive (1/r term)")
        if self.rtol <= 0.0 or self.atol <= 0.0:
            raise ValueError("tolerances must be positive")

    def rhs(self) -> Callable[[float, FloatArray], FloatArray]:
        return dirac_rhs(self.eps, self.eps_theta, self.m, self.e, self.V, self.W, self.S)


@dataclass(frozen=True)
class IntegrationResult:
    r: FloatArray
    phi_plus: NDArray[np.complex128]
    phi_minus: NDArray[np.complex128]
    dense: Callable[[float], tuple[complex, complex]]
    stats: dict

    def at(self, r: float) -> tuple[complex, complex]:
        return self.dense(r)


def integrate(spec: IVPSpec) -> IntegrationResult:
    """Adaptively integrate one segment with dense output.

    Uses an order-8 embedded pair with the spec's tolerances; raises
    :class:`StiffnessFailure` if the stepper gives up.
    """
    y0 = np.array(
        [spec.y0[0].real, spec.y0[0].imag, spec.y0[1].real, spec.y0[1].imag],
        dtype=float,
    )
    sol = solve_ivp(
        spec.rhs(),
        spec.r_span,
        y0,
        method="DOP853",
        rtol=spec.rtol,
        atol=spec.atol,
        dense_output=True,
    )
    if not sol.success:
        raise StiffnessFailure(
            f"integration failed on {spec.r_span}: {sol.message} (nfev={sol.nfev})"
        )

    def dense(r: float) -> tuple[complex, complex]:
        y = sol.sol(r)
        return complex(y[0], y[1]), complex(y[2], y[3])

    stats = {
        "nfev": int(sol.nfev),
        "n_accepted": int(len(sol.t) - 1),
        # DOP853 spends 12 stages per attempted step; the surplus over the
        # accepted count estimates rejections
        "n_rejected_est": max(0, int(round(sol.nfev / 12)) - (len(sol.t) - 1)),
    }
    return IntegrationResult(
        r=sol.t,
        phi_plus=sol.y[0] + 1j * sol.y[1],
        phi_minus=sol.y[2] + 1j * sol.y[3],
        dense=dense,
        stats=stats,
    )


def _step_endpoint(
    eps: float,
    eps_theta: float,
    phys: PhysicalParams,
    V: float,
    W: float,
    S: float,
    r0: float,
    r1: float,
    y: FloatArray,
    rtol: float,
    atol: float,
) -> FloatArray:
    sol = solve_ivp(
        dirac_rhs(eps, eps_theta, phys.m, phys.e, V, W, S),
        (r0, r1),
        y,
        method="DOP853",
        rtol=rtol,
        atol=atol,
    )
    if not sol.success:
        raise StiffnessFailure(f"segment [{r0}, {r1}] failed: {sol.message}")
    return sol.y[:, -1]


def _regular_seed(
    eps: float, eps_theta: float, phys: PhysicalParams, V: float, W: float, S: float, r_in: float
) -> FloatArray:
    """Leading-power seed of the regular solution at small r.

    The driver is the component with the larger index mu_d = |eps_theta|+1/2
    (Phi- for eps_theta > 0, Phi+ for eps_theta < 0); it behaves like
    r^(mu_d + 1/2).  The partner follows from the first-order pair itself,
    evaluated on that monomial — no special functions involved, which keeps
    this route independent of the closed-form basis.  Seeding errors are
    O(r_in) and enter the admixture of the irregular solution suppressed by
    (r_in/a)^(2 mu_d), far below the comparison tolerances.
    """
    d_plus = phys.m + S + phys.e * V - eps
    d_minus = phys.m + S - phys.e * V + eps
    ew = phys.e * W
    p = abs(eps_theta) + 1.0  # mu_d + 1/2
    drv = r_in**p
    ddrv = p * r_in ** (p - 1.0)
    if eps_theta > 0:
        if abs(d_plus) < 1e-12 * (abs(eps) + phys.m + 1.0):
            raise ValueError(f"seed singular: m+S+eV-eps vanishes at eps={eps}")
        phi_minus = drv
        phi_plus = -(ddrv + (ew + eps_theta / r_in) * drv) / d_plus
    else:
        if abs(d_minus) < 1e-12 * (abs(eps) + phys.m + 1.0):
            raise ValueError(f"seed singular: m+S-eV+eps vanishes at eps={eps}")
        phi_plus = drv
        phi_minus = (-ddrv + (ew + eps_theta / r_in) * drv) / d_minus
    y = np.array([phi_plus, 0.0, phi_minus, 0.0])
    return y / np.linalg.norm(y)


def shooting_determinant(
    config: PotentialConfig,
    phys: PhysicalParams,
    mode: AngularMode,
    eps: float,
    *,
    efold: float = 20.0,
    rtol: float = 1e-10,
    atol: float = 1e-12,
) -> float:
    """Normalised interface-mismatch determinant of the two-sided shooting.

    Integrates the regular seed outward from r_in = 1e-3 * a and the
    decaying free seed inward from r_out = c + efold/kappa_out, both to the
    outermost interface; returns det of the two column solutions there,
    normalised by the column magnitudes so values are O(1) and roots in eps
    are bound states.  Requires a decaying exterior, i.e. |eps| < m.
    """
    kappa_sq = phys.m**2 - eps**2
    if kappa_sq <= 0.0:
        raise ValueError(
            f"exterior does not decay at eps={eps} (need eps^2 < m^2)"
        )
    kappa = math.sqrt(kappa_sq)
    shell_list = shells(config)
    r_match = shell_list[-1].r_lo
    eps_theta = mode.eps_theta

    # outward sweep through every interior shell
    r_in = 1e-3 * config.a
    first = shell_list[0]
    y = _regular_seed(eps, eps_theta, phys, first.V, first.W, first.S, r_in)
    r_here = r_in
    for sh in shell_list[:-1]:
        lo, hi = max(r_here, sh.r_lo), min(sh.r_hi, r_match)
        if hi <= lo:
            continue
        y = _step_endpoint(eps, eps_theta, phys, sh.V, sh.W, sh.S, lo, hi, y, rtol, atol)
        r_here = hi
        nrm = np.linalg.norm(y)
        if nrm > 0:
            y = y / nrm
    left = y

    # inward sweep from deep inside the evanescent tail
    r_out = r_match + efold / kappa
    ratio = math.sqrt((phys.m - eps) / (phys.m + eps))
    y = np.array([1.0, 0.0, ratio, 0.0])
    y /= np.linalg.norm(y)
    right = _step_endpoint(eps, eps_theta, phys, 0.0, 0.0, 0.0, r_out, r_match, y, rtol, atol)

    lv = np.array([left[0] + 1j * left[1], left[2] + 1j * left[3]])
    rv = np.array([right[0] + 1j * right[1], right[2] + 1j * right[3]])
    det = lv[0] * rv[1] - lv[1] * rv[0]
    norm = np.linalg.norm(lv) * np.linalg.norm(rv)
    if norm == 0.0:
        return 0.0
    out = det / norm
    if abs(out.imag) > 1e-9 * (abs(out) + 1.0):
        log.warning("shooting determinant picked up an imaginary part: %s", out)
    return float(out.real)


def shooting_bound_states(
    config: PotentialConfig,
    phys: PhysicalParams,
    mode: AngularMode,
    window: tuple[float, float],
    *,
    n_scan: int = 241,
    efold: float = 20.0,
    xtol: float = 1e-12,
) -> list[float]:
    """Roots of the shooting determinant inside an open energy window.

    Scans a uniform grid (nudging any node where the determinant is not
    defined, e.g. seed singularities), then polishes every sign change with
    a bracketing root solver.  The window is clipped to the decaying
    exterior band (-m, m).
    """
    lo = max(window[0], -phys.m)
    hi = min(window[1], phys.m)
    if hi <= lo:
        return []
    pad = 1e-9 * (phys.m + abs(lo) + abs(hi))
    grid = np.linspace(lo + pad, hi - pad, n_scan)

    def det(e_val: float) -> float:
        return shooting_determinant(
            config, phys, mode, e_val, efold=efold, rtol=1e-10, atol=1e-12
        )

    vals = np.empty_like(grid)
    step = grid[1] - grid[0] if len(grid) > 1 else pad
    for i, e_val in enumerate(grid):
        try:
            vals[i] = det(e_val)
        except ValueError:
            grid[i] = e_val + 0.137 * step  # nudge off a singular energy
            vals[i] = det(grid[i])

    roots: list[float] = []
    for i in range(len(grid) - 1):
        v0, v1 = vals[i], vals[i + 1]
        if v0 == 0.0:
            roots.append(float(grid[i]))
            continue
        if v0 * v1 < 0.0:
            roots.append(float(brentq(det, grid[i], grid[i + 1], xtol=xtol)))
    if len(grid) > 1 and vals[-1] == 0.0:
        roots.append(float(grid[-1]))
    # collapse duplicates from nudged nodes
    roots.sort()
    out: list[float] = []
    for r_val in roots:
        if not out or abs(r_val - out[-1]) > 10 * xtol:
            out.append(r_val)
    return out
