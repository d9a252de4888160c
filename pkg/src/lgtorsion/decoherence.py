"""Photon-scattering decoherence feasibility numbers.

The reference rate gamma_cav (for a comparable dielectric sphere in a
Gaussian beam) is an external input; the contribution here is the geometric
interception ratio zeta and the rescaled rate zeta * gamma_cav, compared
against the coherent coupling.
"""

from __future__ import annotations

from dataclasses import dataclass

from .coupling import transverse_fraction
from .lgmode import LGMode
from .windmill import Windmill

FEASIBLE_THRESHOLD = 0.05


@dataclass(frozen=True)
class DecoherenceInput:
    gamma_cav: float      # reference sphere scattering-decoherence rate
    power_note: str = ""  # informational, e.g. "0.1 mW incident"

    def __post_init__(self):
        if self.gamma_cav < 0:
            raise ValueError(f"gamma_cav must be >= 0, got {self.gamma_cav}")


def scattering_ratio(mode: LGMode, wm: Windmill, rel_tol: float = 1e-10) -> float:
    """zeta: transverse intensity over the rotor footprint / full plane, at z=0.

    Evaluated at the equilibrium pose; always in [0, 1].
    """
    return transverse_fraction(mode, wm, rel_tol)


def decoherence_rate(inp: DecoherenceInput, zeta: float) -> float:
    """Rescaled scattering-decoherence rate zeta * gamma_cav."""
    if not 0.0 <= zeta <= 1.0:
        raise ValueError(f"zeta must lie in [0, 1], got {zeta}")
    return zeta * inp.gamma_cav


def feasibility_margin(g: float, gamma: float) -> float:
    """Gamma / g; a scenario counts as feasible below FEASIBLE_THRESHOLD."""
    if g <= 0:
        raise ValueError(f"coupling must be > 0, got {g}")
    return gamma / g


def is_feasible(margin: float, threshold: float = FEASIBLE_THRESHOLD) -> bool:
    return margin < threshold
