"""Regenerate the frozen reference constants used by the test-suite.

Run from the repository root:

    python tools/mint_reference_values.py

Values are produced exclusively by the extended-precision series oracle and
the direct shooting integrator in :mod:`dirac2d.oracle`; the closed-form
modules under test never participate.  The printed literals are pasted into
tests verbatim, so a re-run must reproduce them bit-for-bit before any are
changed.
"""

from __future__ import annotations

import mpmath as mp

from dirac2d.angular import quantize_config1
from dirac2d.model import ConfigKind, PhysicalParams, PotentialConfig
from dirac2d.oracle import series_oracle, shooting_bound_states, shooting_determinant

SPECIAL = [
    ("kummer_M", (0.25, 1.5), 3.2),
    ("kummer_M", (-0.75, 2.25), 1.1),
    ("tricomi_U", (0.75, 0.5), 2.0),
    ("tricomi_U", (1.25, 3.0), 4.0),
    ("whittaker_M", (-0.4, 0.9), 2.5),
    ("whittaker_W", (-0.4, 0.9), 2.5),
    ("bessel_J", (0.3,), 2.0),
    ("bessel_I", (0.8,), 1.5),
    ("bessel_Y", (0.7,), 2.5),
    ("decaying_exterior_basis", (0.8,), 1.5),
]


def main() -> None:
    print("# special function reference values (25 significant digits)")
    for fid, params, z in SPECIAL:
        val = series_oracle(fid, params, z, dps=50)
        print(f'    ("{fid}", {params!r}, {z!r}): "{mp.nstr(val, 25)}",')

    print("\n# deep disc well, m=1, e=1, V0=-5, a=c=1, k=1, window (-1, 1)")
    cfg = PotentialConfig(kind=ConfigKind.CONFIG2, V0=-5.0, a=1.0, c=1.0)
    phys = PhysicalParams(m=1.0, e=1.0)
    mode = quantize_config1(1)
    roots = shooting_bound_states(cfg, phys, mode, (-1.0, 1.0), n_scan=481, xtol=1e-13)
    for r in roots:
        print(f"    bound state: {r:.15f}")
    print("  cutoff sensitivity (efold 20 -> 30):")
    r25 = shooting_bound_states(cfg, phys, mode, (-1.0, 1.0), n_scan=481, efold=30.0, xtol=1e-13)
    for a, b in zip(roots, r25):
        print(f"    delta = {abs(a - b):.3e}")
    print("  tolerance sensitivity (rtol 1e-10 -> 1e-12 at the root):")
    for r in roots:
        d_lo = shooting_determinant(cfg, phys, mode, r, rtol=1e-12, atol=1e-14)
        print(f"    residual det at frozen root = {d_lo:.3e}")


if __name__ == "__main__":
    main()
