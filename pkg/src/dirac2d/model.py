"""Domain model for planar Dirac fermions in piecewise separable potentials.

Natural units ``hbar = v_F = 1`` throughout.  A single fermion of mass ``m``
and charge ``e`` moves in a combination of an electrostatic coupling ``V``, a
scalar (mass-like) coupling ``S`` and an azimuthal gauge coupling ``W``.  Two
step layouts are supported, plus one continuous layout used for the critical
charge analysis:

``config1``
    All three couplings are radial step functions on three nested rings,

        V(r) = V0 on [a, b),   W(r) = W0 on [a, b),   S(r) = S0 on [a, b),

    and zero elsewhere, so the sample splits into four shells
    ``[0,a) [a,b) [b,c) [c,oo)`` (the outer two shells both carry zero
    coupling but are kept distinct because the classification tables track
    them separately).

``config2``
    ``V`` and ``S`` are radial steps on a disc, ``V(r) = V0`` and
    ``S(r) = S0`` for ``r < a``, zero outside ``c``, while the gauge term is
    a pure angle profile entering as ``W(theta)/r``.  The radial problem
    then has three shells ``[0,a) [a,c) [c,oo)``; the degenerate choice
    ``a == c`` collapses the middle shell and leaves a sharp disc edge.

``coulomb``
    An attractive Coulomb tail ``V = -Z/r`` together with a uniform
    perpendicular magnetic field ``W = B r / 2``.  No step radii are
    involved; this layout only feeds the near-origin criticality analysis.

The module owns the JSON wire format for problem definitions and the
spin/pseudospin symmetry predicates used to pick specialised parameter sets
downstream.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Mapping

from .angular import AngularProfile, ProfileKind

__all__ = [
    "ConfigKind",
    "SymmetryCase",
    "PhysicalParams",
    "ShellPotential",
    "PotentialConfig",
    "shells",
    "check_symmetry",
    "symmetry_is_degenerate",
    "parse_config",
    "emit_config",
    "config_from_json",
    "config_to_json",
]


class ConfigKind(Enum):
    """Which of the separable layouts a problem uses."""

    CONFIG1 = "config1"
    CONFIG2 = "config2"
    COULOMB_MAGNETIC = "coulomb"


class SymmetryCase(Enum):
    """Relation between the electrostatic and scalar couplings.

    ``SPIN`` means ``e*V == S`` in every shell, ``PSEUDOSPIN`` means
    ``e*V == -S`` in every shell, ``NONE`` otherwise.  When both hold at once
    (``V`` and ``S`` both identically zero) the spin label is reported and
    :func:`symmetry_is_degenerate` returns True.
    """

    NONE = "none"
    SPIN = "spin"
    PSEUDOSPIN = "pseudospin"


@dataclass(frozen=True)
class PhysicalParams:
    """Single-particle constants: rest mass and electric charge."""

    m: float
    e: float = 1.0

    def __post_init__(self) -> None:
        if not math.isfinite(self.m) or self.m < 0.0:
            raise ValueError(f"mass must be finite and >= 0, got {self.m}")
        if not math.isfinite(self.e):
            raise ValueError(f"charge must be finite, got {self.e}")


@dataclass(frozen=True)
class ShellPotential:
    """Constant coupling values on one half-open radial shell [r_lo, r_hi).

    The outermost shell of a layout has ``r_hi = inf``.
    """

    index: int
    r_lo: float
    r_hi: float
    V: float
    W: float
    S: float

    def __post_init__(self) -> None:
        if not (0.0 <= self.r_lo < self.r_hi):
            raise ValueError(
                f"shell radii must satisfy 0 <= r_lo < r_hi, got "
                f"[{self.r_lo}, {self.r_hi})"
            )

    def contains(self, r: float) -> bool:
        return self.r_lo <= r < self.r_hi

    @property
    def width(self) -> float:
        return self.r_hi - self.r_lo


def _require_finite(name: str, value: float) -> float:
    # bool is an int subclass; keep it out of numeric slots
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ValueError(f"{name} must be a real number, got {value!r}")
    value = float(value)
    if not math.isfinite(value):
        raise ValueError(f"{name} must be finite, got {value}")
    return value


@dataclass(frozen=True)
class PotentialConfig:
    """A validated problem definition in one of the three layouts.

    Only the fields relevant to ``kind`` may be set; the constructor rejects
    mixed layouts outright rather than ignoring stray values.
    """

    kind: ConfigKind
    V0: float = 0.0
    W0: float = 0.0
    S0: float = 0.0
    a: float = 0.0
    b: float = 0.0
    c: float = 0.0
    Z: float = 0.0
    B: float = 0.0
    wtheta: AngularProfile = field(default_factory=AngularProfile.none)

    def __post_init__(self) -> None:
        for name in ("V0", "W0", "S0", "a", "b", "c", "Z", "B"):
            object.__setattr__(self, name, _require_finite(name, getattr(self, name)))
        if self.kind is ConfigKind.CONFIG1:
            if not (0.0 < self.a < self.b < self.c):
                raise ValueError(
                    f"config1 needs 0 < a < b < c, got a={self.a}, b={self.b}, c={self.c}"
                )
            if self.Z != 0.0 or self.B != 0.0:
                raise ValueError("config1 does not take Z or B")
            if self.wtheta.kind is not ProfileKind.NONE:
                raise ValueError("config1 does not take an angle profile")
        elif self.kind is ConfigKind.CONFIG2:
            if not (0.0 < self.a <= self.c):
                raise ValueError(
                    f"config2 needs 0 < a <= c, got a={self.a}, c={self.c}"
                )
            if self.b != 0.0:
                raise ValueError("config2 has no intermediate radius b")
            if self.Z != 0.0 or self.B != 0.0:
                raise ValueError("config2 does not take Z or B")
            if self.W0 != 0.0:
                raise ValueError(
                    "config2 carries its gauge term in wtheta, not W0"
                )
        elif self.kind is ConfigKind.COULOMB_MAGNETIC:
            if self.V0 != 0.0 or self.W0 != 0.0 or self.S0 != 0.0:
                raise ValueError("coulomb layout does not take step amplitudes")
            if self.a != 0.0 or self.b != 0.0 or self.c != 0.0:
                raise ValueError("coulomb layout does not take step radii")
            if self.wtheta.kind is not ProfileKind.NONE:
                raise ValueError("coulomb layout does not take an angle profile")
            if self.Z < 0.0:
                raise ValueError(f"Z must be >= 0, got {self.Z}")
        else:  # pragma: no cover - enum is closed
            raise ValueError(f"unknown kind {self.kind!r}")

    @property
    def collapsed(self) -> bool:
        """True for a config2 disc with ``a == c`` (no intermediate shell)."""
        return self.kind is ConfigKind.CONFIG2 and self.a == self.c


def shells(config: PotentialConfig) -> list[ShellPotential]:
    """Decompose a step layout into its constant-coupling shells.

    config1 always yields four shells, config2 yields three (two when the
    disc edge is collapsed).  The coulomb layout is not piecewise constant
    and raises ValueError.
    """
    if config.kind is ConfigKind.CONFIG1:
        return [
            ShellPotential(0, 0.0, config.a, 0.0, 0.0, 0.0),
            ShellPotential(1, config.a, config.b, config.V0, config.W0, config.S0),
            ShellPotential(2, config.b, config.c, 0.0, 0.0, 0.0),
            ShellPotential(3, config.c, math.inf, 0.0, 0.0, 0.0),
        ]
    if config.kind is ConfigKind.CONFIG2:
        inner = ShellPotential(0, 0.0, config.a, config.V0, 0.0, config.S0)
        if config.collapsed:
            return [inner, ShellPotential(1, config.c, math.inf, 0.0, 0.0, 0.0)]
        return [
            inner,
            ShellPotential(1, config.a, config.c, 0.0, 0.0, 0.0),
            ShellPotential(2, config.c, math.inf, 0.0, 0.0, 0.0),
        ]
    raise ValueError(f"{config.kind.value} layout has no shell decomposition")


def check_symmetry(config: PotentialConfig, phys: PhysicalParams) -> SymmetryCase:
    """Classify the coupling relation ``e*V`` vs ``S`` across all shells."""
    if config.kind is ConfigKind.COULOMB_MAGNETIC:
        # V = -Z/r with S = 0: spin-symmetric only for Z = 0
        if phys.e * config.Z == 0.0:
            return SymmetryCase.SPIN
        return SymmetryCase.NONE
    spin = all(phys.e * sh.V == sh.S for sh in shells(config))
    pseudo = all(phys.e * sh.V == -sh.S for sh in shells(config))
    if spin:
        return SymmetryCase.SPIN
    if pseudo:
        return SymmetryCase.PSEUDOSPIN
    return SymmetryCase.NONE


def symmetry_is_degenerate(config: PotentialConfig, phys: PhysicalParams) -> bool:
    """True when the spin and pseudospin conditions hold simultaneously.

    That happens exactly when ``e*V`` and ``S`` both vanish in every shell,
    so the two specialised parameter sets coincide and either may be used.
    """
    if config.kind is ConfigKind.COULOMB_MAGNETIC:
        return phys.e * config.Z == 0.0
    return all(phys.e * sh.V == 0.0 and sh.S == 0.0 for sh in shells(config))


# --------------------------------------------------------------------------
# JSON wire format
#
# {"kind": "config1", "m": 1.0, "e": 1.0, "V0": 2.0, "W0": 0.5, "S0": -0.3,
#  "a": 1.0, "b": 2.0, "c": 3.0}
# {"kind": "config2", "m": 1.0, "V0": -5.0, "S0": 0.0, "a": 1.0, "c": 1.0,
#  "Wtheta": {"kind": "constant", "w0": 0.25}}
# {"kind": "coulomb", "m": 1.0, "Z": 0.6, "B": 0.1}
#
# Unknown keys are rejected so that a typo ("WO" for "W0") cannot silently
# produce the free problem.

_KEYS_COMMON = {"kind", "m", "e"}
_KEYS_BY_KIND = {
    ConfigKind.CONFIG1: _KEYS_COMMON | {"V0", "W0", "S0", "a", "b", "c"},
    ConfigKind.CONFIG2: _KEYS_COMMON | {"V0", "S0", "a", "c", "Wtheta"},
    ConfigKind.COULOMB_MAGNETIC: _KEYS_COMMON | {"Z", "B"},
}


def _profile_from_obj(obj: Any) -> AngularProfile:
    if obj is None:
        return AngularProfile.none()
    if not isinstance(obj, Mapping):
        raise ValueError(f"Wtheta must be an object, got {type(obj).__name__}")
    kind = obj.get("kind")
    if kind == "none":
        extra = set(obj) - {"kind"}
        if extra:
            raise ValueError(f"unknown keys in Wtheta: {sorted(extra)}")
        return AngularProfile.none()
    if kind == "constant":
        extra = set(obj) - {"kind", "w0"}
        if extra:
            raise ValueError(f"unknown keys in Wtheta: {sorted(extra)}")
        return AngularProfile.constant(_require_finite("Wtheta.w0", obj.get("w0", 0.0)))
    if kind == "tabulated":
        extra = set(obj) - {"kind", "samples"}
        if extra:
            raise ValueError(f"unknown keys in Wtheta: {sorted(extra)}")
        samples = obj.get("samples")
        if not isinstance(samples, (list, tuple)) or len(samples) < 2:
            raise ValueError("Wtheta.samples must be a list of at least 2 values")
        vals = tuple(
            _require_finite(f"Wtheta.samples[{i}]", s) for i, s in enumerate(samples)
        )
        return AngularProfile.tabulated(vals)
    raise ValueError(f"unknown Wtheta kind {kind!r}")


def _profile_to_obj(profile: AngularProfile) -> Any:
    if profile.kind is ProfileKind.NONE:
        return {"kind": "none"}
    if profile.kind is ProfileKind.CONSTANT:
        return {"kind": "constant", "w0": profile.w0}
    return {"kind": "tabulated", "samples": list(profile.samples)}


def parse_config(obj: Mapping[str, Any]) -> tuple[PotentialConfig, PhysicalParams]:
    """Build a validated (config, params) pair from a decoded JSON object."""
    if not isinstance(obj, Mapping):
        raise ValueError(f"problem definition must be an object, got {type(obj).__name__}")
    kind_str = obj.get("kind")
    try:
        kind = ConfigKind(kind_str)
    except ValueError:
        raise ValueError(
            f"kind must be one of 'config1', 'config2', 'coulomb', got {kind_str!r}"
        ) from None
    allowed = _KEYS_BY_KIND[kind]
    extra = set(obj) - allowed
    if extra:
        raise ValueError(f"unknown keys for {kind.value}: {sorted(extra)}")
    if "m" not in obj:
        raise ValueError("missing required key 'm'")
    phys = PhysicalParams(
        m=_require_finite("m", obj["m"]),
        e=_require_finite("e", obj.get("e", 1.0)),
    )

    def num(key: str, default: float = 0.0) -> float:
        return _require_finite(key, obj.get(key, default))

    if kind is ConfigKind.CONFIG1:
        cfg = PotentialConfig(
            kind=kind, V0=num("V0"), W0=num("W0"), S0=num("S0"),
            a=num("a"), b=num("b"), c=num("c"),
        )
    elif kind is ConfigKind.CONFIG2:
        cfg = PotentialConfig(
            kind=kind, V0=num("V0"), S0=num("S0"), a=num("a"), c=num("c"),
            wtheta=_profile_from_obj(obj.get("Wtheta")),
        )
    else:
        cfg = PotentialConfig(kind=kind, Z=num("Z"), B=num("B"))
    return cfg, phys


def emit_config(config: PotentialConfig, phys: PhysicalParams) -> dict[str, Any]:
    """Inverse of :func:`parse_config`; round-trips exactly."""
    out: dict[str, Any] = {"kind": config.kind.value, "m": phys.m, "e": phys.e}
    if config.kind is ConfigKind.CONFIG1:
        out.update(V0=config.V0, W0=config.W0, S0=config.S0,
                   a=config.a, b=config.b, c=config.c)
    elif config.kind is ConfigKind.CONFIG2:
        out.update(V0=config.V0, S0=config.S0, a=config.a, c=config.c)
        out["Wtheta"] = _profile_to_obj(config.wtheta)
    else:
        out.update(Z=config.Z, B=config.B)
    return out


def config_from_json(text: str) -> tuple[PotentialConfig, PhysicalParams]:
    return parse_config(json.loads(text))


def config_to_json(config: PotentialConfig, phys: PhysicalParams) -> str:
    return json.dumps(emit_config(config, phys), sort_keys=True, indent=2)
