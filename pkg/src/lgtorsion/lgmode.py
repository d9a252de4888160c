"""Standing-wave Laguerre-Gaussian cavity field.

The field is the superposition of two degenerate counter-rotating LG modes
with azimuthal index +/- l and radial index p; its intensity profile is

    |psi|^2 = A * (w0/w(z))^2 * u^|l| * exp(-u) * L_p^|l|(u)^2
              * cos^2(k z) * cos^2(l (phi - phi')),   u = 2 r^2 / w(z)^2

with normalization A = 2 p! / [(1 + delta_{l,0}) (|l| + p)!].  The overall
scale is dimensionless: every physical quantity downstream is a ratio of
intensity integrals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .quadrature import integrate_adaptive
from .specfun import assoc_laguerre, log_factorial

TWO_PI = 2.0 * math.pi

# |L| beyond this is squared in log space to dodge overflow at high p
_LOG_SWITCH = 1e100


@dataclass(frozen=True)
class LGMode:
    """One standing-wave mode: indices, wavelength, waist and relative phase."""

    l: int
    p: int
    wavelength: float
    w0: float
    phase_offset: float = 0.0

    def __post_init__(self):
        if not isinstance(self.l, int) or not isinstance(self.p, int):
            raise ValueError("mode indices l, p must be integers")
        if self.p < 0:
            raise ValueError(f"radial index p must be >= 0, got {self.p}")
        if self.wavelength <= 0:
            raise ValueError(f"wavelength must be > 0, got {self.wavelength}")
        if self.w0 <= 0:
            raise ValueError(f"waist w0 must be > 0, got {self.w0}")

    @property
    def k(self) -> float:
        return TWO_PI / self.wavelength

    @property
    def rayleigh_range(self) -> float:
        return math.pi * self.w0**2 / self.wavelength

    @property
    def norm_a(self) -> float:
        """Normalization A = 2 p! / [(1 + delta_{l,0}) (|l| + p)!]."""
        dl0 = 1 if self.l == 0 else 0
        # exact integer ratio before the float conversion
        return 2 * math.factorial(self.p) / ((1 + dl0) * math.factorial(abs(self.l) + self.p))

    @property
    def log_norm_a(self) -> float:
        dl0 = 1 if self.l == 0 else 0
        return math.log(2.0 / (1 + dl0)) + log_factorial(self.p) - log_factorial(abs(self.l) + self.p)


@dataclass(frozen=True)
class CylindricalPoint:
    """Point in (r, phi, z); phi is reduced to [0, 2*pi)."""

    r: float
    phi: float
    z: float

    def __post_init__(self):
        if self.r < 0:
            raise ValueError(f"radius must be >= 0, got {self.r}")
        object.__setattr__(self, "phi", self.phi % TWO_PI)


def beam_width(mode: LGMode, z: float) -> float:
    """w(z) = w0 sqrt(1 + (z/z_R)^2)."""
    return mode.w0 * math.sqrt(1.0 + (z / mode.rayleigh_range) ** 2)


def intensity(mode: LGMode, pt: CylindricalPoint) -> float:
    """Dimensionless |psi|^2 at a point.  Never negative, never NaN."""
    w = beam_width(mode, pt.z)
    u = 2.0 * pt.r**2 / w**2
    al = abs(mode.l)
    axial = math.cos(mode.k * pt.z) ** 2
    angular = math.cos(mode.l * (pt.phi - mode.phase_offset)) ** 2
    lag = assoc_laguerre(mode.p, al, u)
    if abs(lag) > _LOG_SWITCH:
        # compose in log space: L^2 alone may overflow before exp(-u) damps it
        if u == 0.0 or axial == 0.0 or angular == 0.0:
            return 0.0
        log_val = (
            mode.log_norm_a
            + 2.0 * math.log(mode.w0 / w)
            + al * math.log(u)
            - u
            + 2.0 * math.log(abs(lag))
            + math.log(axial)
            + math.log(angular)
        )
        return math.exp(log_val)
    return mode.norm_a * (mode.w0 / w) ** 2 * u**al * math.exp(-u) * lag * lag * axial * angular


def intensity_xy(mode: LGMode, x, y, z: float = 0.0):
    """Vectorized |psi|^2 over cartesian coordinates (arrays broadcast)."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    w = beam_width(mode, z)
    r2 = x * x + y * y
    u = 2.0 * r2 / w**2
    phi = np.arctan2(y, x)
    al = abs(mode.l)
    lag = assoc_laguerre(mode.p, al, u)
    val = (
        mode.norm_a
        * (mode.w0 / w) ** 2
        * u**al
        * np.exp(-u)
        * lag
        * lag
        * math.cos(mode.k * z) ** 2
        * np.cos(mode.l * (phi - mode.phase_offset)) ** 2
    )
    return val


def _radial_envelope(mode: LGMode, u):
    """u^|l| e^-u L_p^|l|(u)^2 -- the radial factor of the z=0 profile."""
    lag = assoc_laguerre(mode.p, abs(mode.l), u)
    return u ** abs(mode.l) * np.exp(-u) * lag * lag


def radial_max(mode: LGMode) -> float:
    """Radius of the innermost intensity maximum at z=0.

    For p=0 the profile has a single maximum at w0 sqrt(|l|/2) (closed form).
    For p>0 the innermost lobe is bracketed by a dense scan and refined by
    golden-section search.  l=0 profiles peak on the axis.
    """
    al = abs(mode.l)
    if al == 0:
        return 0.0
    if mode.p == 0:
        return mode.w0 * math.sqrt(al / 2.0)

    r_hi = mode.w0 * math.sqrt(2.0 * (al + 2 * mode.p + 1))
    rs = np.linspace(0.0, r_hi, 2048)
    u = 2.0 * rs**2 / mode.w0**2
    f = _radial_envelope(mode, u)
    interior = np.nonzero((f[1:-1] > f[:-2]) & (f[1:-1] > f[2:]))[0]
    if interior.size == 0:  # cannot happen for l>0, kept as a guard
        return float(rs[int(np.argmax(f))])
    i = int(interior[0]) + 1
    lo, hi = rs[i - 1], rs[i + 1]

    def profile(r):
        return float(_radial_envelope(mode, 2.0 * r**2 / mode.w0**2))

    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = profile(c), profile(d)
    for _ in range(100):
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = profile(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = profile(d)
        if (b - a) < 1e-14 * r_hi:
            break
    return 0.5 * (a + b)


def outer_radial_max(mode: LGMode) -> float:
    """Radius of the outermost intensity maximum at z=0 (map framing)."""
    al = abs(mode.l)
    if al == 0 and mode.p == 0:
        return 0.0
    r_hi = mode.w0 * math.sqrt(2.0 * (al + 2 * mode.p + 1))
    rs = np.linspace(0.0, r_hi, 4096)
    u = 2.0 * rs**2 / mode.w0**2
    f = _radial_envelope(mode, u)
    interior = np.nonzero((f[1:-1] > f[:-2]) & (f[1:-1] > f[2:]))[0]
    if interior.size == 0:
        return float(rs[int(np.argmax(f))])
    return float(rs[int(interior[-1]) + 1])


def transverse_norm(mode: LGMode, z: float, rel_tol: float = 1e-9) -> float:
    """Full-plane transverse integral of |psi|^2 at fixed z (units m^2).

    Analytically this is (pi w0^2 / 2) cos^2(k z) independent of (l, p);
    here the radial part is integrated numerically so the identity is a
    checkable property rather than an assumption.  Raises QuadratureError
    (with the achieved estimate) if the integral does not converge.
    """
    al = abs(mode.l)
    u_hi = 4.0 * mode.p + 2.0 * al + 2.0 + 80.0
    value, _err = integrate_adaptive(
        lambda u: _radial_envelope(mode, u), 0.0, u_hi, rel_tol=rel_tol
    )
    angular = math.pi * (2.0 if mode.l == 0 else 1.0)
    return mode.norm_a * (mode.w0**2 / 4.0) * value * angular * math.cos(mode.k * z) ** 2


@dataclass(frozen=True)
class GridSpec:
    """Cartesian sampling grid for cross-section maps (z=0 plane)."""

    n: int = 512
    half_extent: Optional[float] = None  # defaults to 1.2 x outermost lobe

    def __post_init__(self):
        if self.n <= 1:
            raise ValueError(f"grid resolution must exceed 1, got {self.n}")
        if self.half_extent is not None and self.half_extent <= 0:
            raise ValueError("grid half_extent must be positive")


@dataclass(frozen=True)
class FieldMap:
    """Sampled intensity over the z=0 plane, row-major in y then x."""

    x: np.ndarray
    y: np.ndarray
    values: np.ndarray


def intensity_map(mode: LGMode, grid: GridSpec = GridSpec()) -> FieldMap:
    """Sample |psi|^2 on the z=0 plane."""
    extent = grid.half_extent
    if extent is None:
        extent = 1.2 * max(outer_radial_max(mode), mode.w0)
    axis = np.linspace(-extent, extent, grid.n)
    xx, yy = np.meshgrid(axis, axis)
    return FieldMap(x=axis, y=axis, values=intensity_xy(mode, xx, yy))
