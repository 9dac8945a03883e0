"""Angular separation for the planar Dirac problem.

After the unitary rescaling ``chi(r, theta) = sqrt(r) exp(i sigma_3 theta/2)
Psi(r, theta)`` both spinor components share a scalar angle factor

    F(theta) = exp(i * (eps_theta * theta - e * Int_0^theta W(t) dt)),

where ``W`` is the angle-dependent gauge profile (zero for purely radial
layouts).  Single-valuedness of the original spinor requires

    exp(i * (2*pi*eps_theta - e * loop_integral(W))) = -1,

so the separation constant is quantised on a shifted half-odd lattice:

    eps_theta = k/2 + (e / (2*pi)) * loop_integral(W),   k odd integer.

The shift is the gauge holonomy of the loop; an Aharonov-Bohm style offset
that survives even when W integrates against every mode identically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Callable, Union

import numpy as np
from numpy.typing import NDArray

FloatArray = NDArray[np.float64]
ComplexArray = NDArray[np.complex128]

TWO_PI = 2.0 * math.pi

__all__ = [
    "ProfileKind",
    "AngularProfile",
    "AngularMode",
    "quantize_config1",
    "quantize_config2",
    "angular_factor",
    "total_angular_momentum",
]


class ProfileKind(Enum):
    NONE = "none"
    CONSTANT = "constant"
    TABULATED = "tabulated"


@dataclass(frozen=True)
class AngularProfile:
    """An angle-dependent gauge profile W(theta) on [0, 2*pi].

    Tabulated profiles are sampled on a closed uniform grid
    ``theta_j = 2*pi*j/n`` for ``j = 0..n`` and must be periodic
    (first sample equal to last, within rounding).  Integrals use the
    trapezoid rule on that grid; between nodes the profile is linear.
    """

    kind: ProfileKind = ProfileKind.NONE
    w0: float = 0.0
    samples: tuple[float, ...] = ()

    @staticmethod
    def none() -> "AngularProfile":
        return AngularProfile(ProfileKind.NONE)

    @staticmethod
    def constant(w0: float) -> "AngularProfile":
        return AngularProfile(ProfileKind.CONSTANT, w0=float(w0))

    @staticmethod
    def tabulated(samples: tuple[float, ...]) -> "AngularProfile":
        if len(samples) < 2:
            raise ValueError("tabulated profile needs at least 2 samples")
        scale = max(1.0, max(abs(s) for s in samples))
        if abs(samples[0] - samples[-1]) > 1e-12 * scale:
            raise ValueError(
                "tabulated profile must be periodic: first and last sample "
                f"differ by {samples[0] - samples[-1]:.3e}"
            )
        return AngularProfile(ProfileKind.TABULATED, samples=tuple(float(s) for s in samples))

    @staticmethod
    def from_callable(fn: Callable[[float], float], n: int = 1024) -> "AngularProfile":
        """Sample an arbitrary periodic callable on n+1 closed grid points."""
        theta = np.linspace(0.0, TWO_PI, n + 1)
        vals = np.array([float(fn(t)) for t in theta])
        vals[-1] = vals[0]  # enforce periodicity against rounding in fn
        return AngularProfile.tabulated(tuple(vals))

    @cached_property
    def _grid(self) -> tuple[FloatArray, FloatArray]:
        """(theta nodes, cumulative trapezoid integral at the nodes)."""
        vals = np.asarray(self.samples, dtype=float)
        theta = np.linspace(0.0, TWO_PI, len(vals))
        cum = np.concatenate(
            ([0.0], np.cumsum(0.5 * (vals[1:] + vals[:-1]) * np.diff(theta)))
        )
        return theta, cum

    def loop_integral(self) -> float:
        """Integral of W over one full turn."""
        if self.kind is ProfileKind.NONE:
            return 0.0
        if self.kind is ProfileKind.CONSTANT:
            return TWO_PI * self.w0
        return float(self._grid[1][-1])

    def partial_integral(self, theta: Union[float, FloatArray]) -> Union[float, FloatArray]:
        """Integral of W from 0 to theta, valid for any real theta.

        Winding is handled exactly: each full turn adds one loop integral,
        so the result is continuous across theta = 2*pi and the angular
        factor picks up the correct holonomy phase on continuation.
        """
        if self.kind is ProfileKind.NONE:
            return 0.0 * np.asarray(theta) if np.ndim(theta) else 0.0
        if self.kind is ProfileKind.CONSTANT:
            out = self.w0 * np.asarray(theta, dtype=float)
            return out if np.ndim(theta) else float(out)
        th = np.asarray(theta, dtype=float)
        wraps = np.floor(th / TWO_PI)
        rest = th - TWO_PI * wraps
        nodes, cum = self._grid
        out = wraps * cum[-1] + np.interp(rest, nodes, cum)
        return out if np.ndim(theta) else float(out)

    def value(self, theta: Union[float, FloatArray]) -> Union[float, FloatArray]:
        """Pointwise W(theta), periodic continuation."""
        if self.kind is ProfileKind.NONE:
            return 0.0 * np.asarray(theta) if np.ndim(theta) else 0.0
        if self.kind is ProfileKind.CONSTANT:
            out = np.full_like(np.asarray(theta, dtype=float), self.w0)
            return out if np.ndim(theta) else self.w0
        th = np.mod(np.asarray(theta, dtype=float), TWO_PI)
        nodes, _ = self._grid
        vals = np.asarray(self.samples, dtype=float)
        out = np.interp(th, nodes, vals)
        return out if np.ndim(theta) else float(out)


@dataclass(frozen=True)
class AngularMode:
    """One quantised angular channel.

    eps_theta = k/2 + holonomy, with the odd integer label k and the
    holonomy shift (e/(2*pi)) * loop_integral(W) stored separately so the
    gauge-free label survives round trips.  ``holonomy_coincidence`` marks
    modes whose eps_theta lands back on a half-integer lattice (twice the
    holonomy is an integer): the Bessel orders |eps_theta -+ 1/2| in
    coupling-free shells are then integers and the second radial solution
    must be taken from the log-type basis.
    """

    k: int
    eps_theta: float
    holonomy: float
    e: float
    profile: AngularProfile = field(default_factory=AngularProfile.none)
    holonomy_coincidence: bool = False

    def __post_init__(self) -> None:
        if self.k % 2 == 0:
            raise ValueError(
                f"mode label k must be an odd integer, got {self.k} "
                "(even labels violate single-valuedness)"
            )


def _mk_mode(k: int, profile: AngularProfile, e: float) -> AngularMode:
    if not isinstance(k, (int, np.integer)) or isinstance(k, bool):
        raise ValueError(f"mode label k must be an integer, got {k!r}")
    k = int(k)
    if k % 2 == 0:
        raise ValueError(f"mode label k must be odd, got {k}")
    hol = e * profile.loop_integral() / TWO_PI
    eps = 0.5 * k + hol
    twice = 2.0 * hol
    coincide = abs(twice - round(twice)) <= 1e-9
    return AngularMode(
        k=k, eps_theta=eps, holonomy=hol, e=float(e), profile=profile,
        holonomy_coincidence=coincide,
    )


def quantize_config1(k: int) -> AngularMode:
    """Angular channel for a purely radial layout: eps_theta = k/2, k odd."""
    return _mk_mode(k, AngularProfile.none(), 1.0)


def quantize_config2(k: int, profile: AngularProfile, e: float = 1.0) -> AngularMode:
    """Angular channel in the presence of an angle-dependent gauge profile."""
    return _mk_mode(k, profile, e)


def angular_factor(
    mode: AngularMode, theta: Union[float, FloatArray]
) -> Union[complex, ComplexArray]:
    """The common scalar angle factor F(theta) of both spinor components.

    F(0) = 1, and continuation around the loop gives
    F(theta + 2*pi) = F(theta) * exp(i*(2*pi*eps_theta - e*loop)) = -F(theta);
    together with the exp(-+ i*theta/2) spin half-turns this makes the
    physical spinor single-valued.
    """
    phase = mode.eps_theta * np.asarray(theta, dtype=float) - mode.e * np.asarray(
        mode.profile.partial_integral(theta)
    )
    out = np.exp(1j * phase)
    return out if np.ndim(theta) else complex(out)


def total_angular_momentum(mode: AngularMode) -> float:
    """Eigenvalue J_z = k/2 of the conserved total angular momentum.

    Only meaningful when no angle-dependent gauge profile is present; with
    one, J_z no longer commutes with the Hamiltonian and this raises.
    """
    if mode.profile.kind is not ProfileKind.NONE:
        raise ValueError(
            "total angular momentum is not conserved for an angle-dependent "
            "gauge profile"
        )
    return 0.5 * mode.k
