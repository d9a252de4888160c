"""Windmill rotor geometry and material.

The rotor has `spokes` spokes; each spoke is a pair of diametrically opposed
wedges.  A wedge is a circular sector of radius R, outer arc length s and
thickness h, so its half-angle is s / (2 R).  The quoted moment of inertia
I = spokes * m * R^2 takes m as the mass of one spoke.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List

from .lgmode import CylindricalPoint, LGMode


@dataclass(frozen=True)
class Windmill:
    spokes: int        # number of spokes; wedges = 2 * spokes
    radius: float      # wedge radius R (m)
    arc_length: float  # outer arc length s (m)
    thickness: float   # extent along z (m)
    spoke_mass: float  # mass per spoke (kg)
    epsilon: float     # relative dielectric constant

    def __post_init__(self):
        if not isinstance(self.spokes, int) or self.spokes < 1:
            raise ValueError(f"spokes must be a positive integer, got {self.spokes}")
        if self.radius <= 0:
            raise ValueError(f"radius must be > 0, got {self.radius}")
        if self.thickness <= 0:
            raise ValueError(f"thickness must be > 0, got {self.thickness}")
        if self.spoke_mass <= 0:
            raise ValueError(f"spoke mass must be > 0, got {self.spoke_mass}")
        if self.epsilon < 1:
            raise ValueError(f"dielectric constant must be >= 1, got {self.epsilon}")
        # wedges must not overlap: 2*spokes sectors of angular width s/R within 2*pi
        if not 0 < self.arc_length < math.pi * self.radius / self.spokes:
            raise ValueError(
                f"arc length must lie in (0, pi*R/spokes) = "
                f"(0, {math.pi * self.radius / self.spokes:.6e}), got {self.arc_length}"
            )

    @property
    def half_angle(self) -> float:
        """Angular half-width of one wedge, s / (2 R)."""
        return self.arc_length / (2.0 * self.radius)


@dataclass(frozen=True)
class RotorPose:
    """Mechanical angular displacement from equilibrium (rad)."""

    delta: float = 0.0

    def __post_init__(self):
        if not math.isfinite(self.delta):
            raise ValueError(f"pose angle must be finite, got {self.delta}")


def contains(wm: Windmill, pose: RotorPose, pt: CylindricalPoint) -> bool:
    """True iff the point lies inside the rotated rotor volume."""
    if pt.r > wm.radius or abs(pt.z) > wm.thickness / 2.0:
        return False
    pitch = math.pi / wm.spokes  # wedge axes every pi/spokes
    offset = (pt.phi - pose.delta) % pitch
    return min(offset, pitch - offset) <= wm.half_angle


def moment_of_inertia(wm: Windmill) -> float:
    """I = spokes * m * R^2 about the rotor centre (kg m^2)."""
    return wm.spokes * wm.spoke_mass * wm.radius**2


def cross_section_area(wm: Windmill) -> float:
    """Geometric transverse area: 2*spokes sectors of area R*s/2 each (m^2)."""
    return wm.spokes * wm.radius * wm.arc_length


def validate_perturbative(wm: Windmill, mode: LGMode, cavity) -> List[str]:
    """Warnings for rotor dimensions too large for the perturbative regime.

    The frequency-shift treatment assumes s < wavelength, h < cavity length
    and R of order w0/2 or below.  Violations warn, never hard-fail.
    """
    warnings = []
    if wm.arc_length >= mode.wavelength:
        warnings.append(
            f"s >= wavelength: arc length {wm.arc_length:.3e} m is not "
            f"sub-wavelength ({mode.wavelength:.3e} m)"
        )
    if wm.thickness >= cavity.length:
        warnings.append(
            f"h >= cavity length: thickness {wm.thickness:.3e} m reaches the "
            f"mirror spacing ({cavity.length:.3e} m)"
        )
    if wm.radius > 0.6 * mode.w0:
        warnings.append(
            f"R > 0.6 w0: radius {wm.radius:.3e} m is large against the "
            f"beam waist ({mode.w0:.3e} m)"
        )
    return warnings
