"""Cavity frequency shift and torsional optomechanical coupling.

The perturbative relative shift of the cavity resonance is

    Delta(delta) = - (eps - 1) * O(delta) / (2 * N),

where O is the intensity integral over the rotor volume and N the integral
over the whole cavity.  O factorizes exactly in the flat-beam regime
(Rayleigh range >> cavity length): an axial cos^2(kz) integral over the
rotor thickness, a closed-form angular integral per wedge, and a 1-D radial
quadrature.  The linear coupling is the frequency derivative at equilibrium
scaled by the torsional zero-point angle sqrt(hbar / (I omega_phi)).

Two independent evaluation paths are kept for the derivative: the Leibniz
boundary form (semi-analytic) and a central finite difference of the shift;
they must agree to 1e-4 relative or the computation is rejected.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from typing import List, Optional, Sequence, Tuple

from .constants import HBAR
from .errors import NumericError, QuadratureError
from .lgmode import LGMode
from .quadrature import integrate_adaptive
from .specfun import factorial, gamma_lower_incomplete
from .windmill import RotorPose, Windmill, moment_of_inertia
from . import lgmode as _lgmode

SEMI_ANALYTIC = "semi-analytic"
FINITE_DIFFERENCE = "finite-difference"
CLOSED_FORM_P0 = "closed-form-p0"


@dataclass(frozen=True)
class Cavity:
    """Cavity geometry plus the two frequencies of the torsional problem."""

    length: float       # mirror separation D (m)
    omega_c0: float     # equilibrium resonance (rad/s)
    omega_phi: float    # torsional trap frequency (rad/s)
    phi0: float = 0.0   # equilibrium angle (rad)

    def __post_init__(self):
        if self.length <= 0:
            raise ValueError(f"cavity length must be > 0, got {self.length}")
        if self.omega_c0 <= 0:
            raise ValueError(f"omega_c0 must be > 0, got {self.omega_c0}")
        if self.omega_phi <= 0:
            raise ValueError(f"omega_phi must be > 0, got {self.omega_phi}")

    def rayleigh_warnings(self, mode: LGMode) -> List[str]:
        """The flat-beam approximation needs z_R above the cavity length."""
        z_r = mode.rayleigh_range
        if z_r <= self.length:
            return [
                f"Rayleigh range {z_r:.3e} m does not exceed the cavity "
                f"length {self.length:.3e} m; the flat-beam approximation is poor"
            ]
        return []


@dataclass(frozen=True)
class CouplingResult:
    g: float                 # linear coupling (rad/s), sign from d omega_c / d delta
    g_ratio: float           # g / B, dimensionless
    method: str              # semi-analytic | finite-difference | closed-form-p0
    quadrature_error: float  # relative error estimate of the radial quadrature

    def __post_init__(self):
        if self.quadrature_error < 0:
            raise ValueError("quadrature_error must be >= 0")

    @property
    def g_hz(self) -> float:
        """Hz-equivalent of the rad/s coupling."""
        return self.g / (2.0 * math.pi)


@dataclass(frozen=True)
class QuadraticCoupling:
    g2: float                 # 0.5 * (hbar / I omega_phi) * d2 omega_c / d delta^2 (rad/s)
    second_derivative: float  # raw d2 omega_c / d delta^2 (rad/s per rad^2)
    noise_estimate: float     # relative stencil-noise estimate


def _wedge_edges(wm: Windmill, delta: float):
    """Angular intervals (lo, hi) of the 2*spokes wedges at pose delta."""
    a = wm.half_angle
    pitch = math.pi / wm.spokes
    return [(delta + j * pitch - a, delta + j * pitch + a) for j in range(2 * wm.spokes)]


def angular_overlap(l: int, phase_offset: float, wm: Windmill, delta: float) -> float:
    """Integral of cos^2(l (phi - phi')) over all wedge sectors (closed form)."""
    total = 0.0
    if l == 0:
        for lo, hi in _wedge_edges(wm, delta):
            total += hi - lo
        return total
    for lo, hi in _wedge_edges(wm, delta):
        total += 0.5 * (hi - lo) + (
            math.sin(2 * l * (hi - phase_offset)) - math.sin(2 * l * (lo - phase_offset))
        ) / (4.0 * l)
    return total


def angular_overlap_derivative(l: int, phase_offset: float, wm: Windmill, delta: float) -> float:
    """d/d(delta) of angular_overlap: the integrand evaluated at wedge edges."""
    if l == 0:
        return 0.0
    total = 0.0
    for lo, hi in _wedge_edges(wm, delta):
        total += (
            math.cos(l * (hi - phase_offset)) ** 2 - math.cos(l * (lo - phase_offset)) ** 2
        )
    return total


def radial_moment(mode: LGMode, r_out: float, rel_tol: float = 1e-10) -> Tuple[float, float]:
    """(J, error): J = integral_0^{2 r_out^2/w0^2} u^|l| e^-u L_p^|l|(u)^2 du."""
    u_out = 2.0 * r_out**2 / mode.w0**2
    return integrate_adaptive(
        lambda u: _lgmode._radial_envelope(mode, u), 0.0, u_out, rel_tol=rel_tol
    )


def axial_overlap(mode: LGMode, thickness: float) -> float:
    """Integral of cos^2(kz) over the rotor thickness: h/2 + sin(kh)/(2k).

    Kept exact rather than the thin-slab h, since k h is not small for the
    reference geometry.
    """
    return thickness / 2.0 + math.sin(mode.k * thickness) / (2.0 * mode.k)


def dielectric_overlap(
    mode: LGMode, wm: Windmill, pose: RotorPose, rel_tol: float = 1e-8
) -> float:
    """Intensity integral over the rotor volume (m^3); (eps-1) applied by callers."""
    j_val, _ = radial_moment(mode, wm.radius, rel_tol)
    return (
        axial_overlap(mode, wm.thickness)
        * mode.norm_a
        * (mode.w0**2 / 4.0)
        * j_val
        * angular_overlap(mode.l, mode.phase_offset, wm, pose.delta)
    )


def mode_norm_total(mode: LGMode, cavity: Cavity) -> float:
    """Intensity integral over the whole cavity volume (m^3).

    Flat-beam closed form: (pi w0^2 / 2) * (D / 2); cos^2(kz) averages to
    one half over the cavity length and the transverse norm is independent
    of (l, p).  The factor 2 of the shift denominator is applied separately.
    """
    return (math.pi * mode.w0**2 / 2.0) * (cavity.length / 2.0)


def frequency_shift(
    mode: LGMode, wm: Windmill, cavity: Cavity, pose: RotorPose, rel_tol: float = 1e-8
) -> float:
    """Relative resonance shift Delta, so omega_c = omega_c0 * (1 + Delta)."""
    overlap = dielectric_overlap(mode, wm, pose, rel_tol)
    return -(wm.epsilon - 1.0) * overlap / (2.0 * mode_norm_total(mode, cavity))


def zero_point_angle(wm: Windmill, cavity: Cavity) -> float:
    """Torsional ground-state angular spread sqrt(hbar / (I omega_phi))."""
    return math.sqrt(HBAR / (moment_of_inertia(wm) * cavity.omega_phi))


def coupling_constant_B(mode: LGMode, wm: Windmill, cavity: Cavity) -> float:
    """Scale constant B = (eps-1) (s h / (pi R D)) omega_c0 sqrt(hbar/(I omega_phi)).

    The mass factor is taken through the rotor moment of inertia (the
    zero-point angle); the derivation note records this reading and the
    identification of the transverse wedge dimensions with s*h.
    """
    return (
        (wm.epsilon - 1.0)
        * (wm.arc_length * wm.thickness / (math.pi * wm.radius * cavity.length))
        * cavity.omega_c0
        * zero_point_angle(wm, cavity)
    )


def _ratio_or_zero(g: float, b: float) -> float:
    if b == 0.0:
        # eps = 1 gives B = 0 and g = 0; the ratio is defined as 0 there
        return 0.0 if g == 0.0 else math.inf
    return g / b


def coupling_linear_fd(
    mode: LGMode, wm: Windmill, cavity: Cavity, fd_step: float = 1e-5, rel_tol: float = 1e-10
) -> CouplingResult:
    """Linear coupling by central finite difference of the frequency shift."""
    j_val, j_err = radial_moment(mode, wm.radius, rel_tol)
    plus = frequency_shift(mode, wm, cavity, RotorPose(fd_step), rel_tol)
    minus = frequency_shift(mode, wm, cavity, RotorPose(-fd_step), rel_tol)
    domega = cavity.omega_c0 * (plus - minus) / (2.0 * fd_step)
    g = zero_point_angle(wm, cavity) * domega
    rel_err = j_err / j_val if j_val != 0.0 else 0.0
    return CouplingResult(
        g=g,
        g_ratio=_ratio_or_zero(g, coupling_constant_B(mode, wm, cavity)),
        method=FINITE_DIFFERENCE,
        quadrature_error=rel_err,
    )


def coupling_linear(
    mode: LGMode, wm: Windmill, cavity: Cavity, fd_step: float = 1e-5, rel_tol: float = 1e-10
) -> CouplingResult:
    """Linear optomechanical coupling g = sqrt(hbar/(I omega_phi)) d omega_c/d delta.

    Reports the semi-analytic (Leibniz boundary) path; the finite-difference
    path is evaluated as a cross-check and a disagreement beyond 1e-4
    relative raises NumericError, flagging a quadrature or geometry bug.
    """
    j_val, j_err = radial_moment(mode, wm.radius, rel_tol)
    shift_scale = (
        -(wm.epsilon - 1.0)
        * axial_overlap(mode, wm.thickness)
        * mode.norm_a
        * (mode.w0**2 / 4.0)
        * j_val
        / (2.0 * mode_norm_total(mode, cavity))
    )
    dphi = angular_overlap_derivative(mode.l, mode.phase_offset, wm, 0.0)
    g_semi = zero_point_angle(wm, cavity) * cavity.omega_c0 * shift_scale * dphi

    g_fd = coupling_linear_fd(mode, wm, cavity, fd_step, rel_tol).g
    # |dPhi/d delta| is bounded by the wedge count; the floor keeps the
    # comparison meaningful at symmetry points where both paths return ~0
    floor = abs(zero_point_angle(wm, cavity) * cavity.omega_c0 * shift_scale) * (
        2 * wm.spokes
    ) * 1e-10
    if abs(g_semi - g_fd) > 1e-4 * max(abs(g_semi), abs(g_fd)) + floor:
        raise NumericError(
            f"derivative paths disagree: semi-analytic {g_semi:.9e} vs "
            f"finite-difference {g_fd:.9e}"
        )
    rel_err = j_err / j_val if j_val != 0.0 else 0.0
    return CouplingResult(
        g=g_semi,
        g_ratio=_ratio_or_zero(g_semi, coupling_constant_B(mode, wm, cavity)),
        method=SEMI_ANALYTIC,
        quadrature_error=rel_err,
    )


def coupling_quadratic(
    mode: LGMode, wm: Windmill, cavity: Cavity, step: float = 1e-4, rel_tol: float = 1e-10
) -> QuadraticCoupling:
    """Second-derivative coupling at equilibrium, for the phi' = 0 configuration.

    Five-point central stencil on omega_c(delta); the noise estimate is the
    relative difference against the three-point stencil.
    """

    def f(delta):
        return cavity.omega_c0 * frequency_shift(mode, wm, cavity, RotorPose(delta), rel_tol)

    fm2, fm1, f0, fp1, fp2 = (f(i * step) for i in (-2, -1, 0, 1, 2))
    d2_5 = (-fm2 + 16.0 * fm1 - 30.0 * f0 + 16.0 * fp1 - fp2) / (12.0 * step**2)
    d2_3 = (fm1 - 2.0 * f0 + fp1) / step**2
    scale = max(abs(d2_5), abs(f0) / step**2 * 1e-12, 1e-300)
    noise = abs(d2_5 - d2_3) / scale
    if noise > 1e-2 and abs(d2_5) > 0:
        raise NumericError(
            f"quadratic stencil noise {noise:.3e} exceeds 1e-2 (d2={d2_5:.6e})"
        )
    i_rot = moment_of_inertia(wm)
    g2 = 0.5 * (HBAR / (i_rot * cavity.omega_phi)) * d2_5
    return QuadraticCoupling(g2=g2, second_derivative=d2_5, noise_estimate=noise)


def coupling_analytic_p0(mode: LGMode, wm: Windmill, cavity: Cavity) -> CouplingResult:
    """Closed-form p=0 coupling through the incomplete-Gamma ratio.

    g/B = |l| * [Gamma(|l|+1) - Gamma(|l|+1, 2 (R/w0)^2)] / (|l|-1)!
    valid for |l| >= 1; the returned g is the magnitude B * ratio.
    """
    if mode.p != 0:
        raise ValueError(f"closed form requires p = 0, got p = {mode.p}")
    al = abs(mode.l)
    if al < 1:
        raise ValueError("closed form requires |l| >= 1")
    x = 2.0 * (wm.radius / mode.w0) ** 2
    ratio = al * gamma_lower_incomplete(al + 1.0, x) / factorial(al - 1)
    b = coupling_constant_B(mode, wm, cavity)
    return CouplingResult(g=b * ratio, g_ratio=ratio, method=CLOSED_FORM_P0, quadrature_error=0.0)


def transverse_fraction(mode: LGMode, wm: Windmill, rel_tol: float = 1e-10) -> float:
    """Fraction of the z=0 transverse intensity intercepted by the rotor.

    Numerator uses the same wedge factorization as the overlap integral at
    the equilibrium pose; the denominator is the closed-form full-plane
    transverse norm pi w0^2 / 2.
    """
    j_val, _ = radial_moment(mode, wm.radius, rel_tol)
    numerator = (
        mode.norm_a
        * (mode.w0**2 / 4.0)
        * j_val
        * angular_overlap(mode.l, mode.phase_offset, wm, 0.0)
    )
    return numerator / (math.pi * mode.w0**2 / 2.0)


@dataclass(frozen=True)
class SweepRow:
    l: int
    p: int
    g: Optional[float]        # |g| in rad/s (magnitude, as plotted)
    g_ratio: Optional[float]  # |g| / B
    zeta: Optional[float]
    gamma: Optional[float]    # zeta * gamma_cav, when gamma_cav is known
    error: Optional[str] = None


@dataclass(frozen=True)
class SweepResult:
    rows: Tuple[SweepRow, ...]

    def row(self, l: int, p: int) -> SweepRow:
        for r in self.rows:
            if r.l == l and r.p == p:
                return r
        raise KeyError(f"no sweep row for (l={l}, p={p})")


def _sweep_cell(args) -> SweepRow:
    mode_template, wm_template, cavity, l, p, gamma_cav, rel_tol, fd_step, match = args
    try:
        wm = replace(wm_template, spokes=l) if match else wm_template
        mode = LGMode(
            l=l,
            p=p,
            wavelength=mode_template.wavelength,
            w0=mode_template.w0,
            phase_offset=math.pi / (4.0 * l),
        )
        res = coupling_linear(mode, wm, cavity, fd_step=fd_step, rel_tol=rel_tol)
        zeta = transverse_fraction(mode, wm, rel_tol)
        gamma = zeta * gamma_cav if gamma_cav is not None else None
        return SweepRow(
            l=l, p=p, g=abs(res.g), g_ratio=abs(res.g_ratio), zeta=zeta, gamma=gamma
        )
    except (ValueError, NumericError, QuadratureError, OverflowError) as exc:
        return SweepRow(l=l, p=p, g=None, g_ratio=None, zeta=None, gamma=None, error=str(exc))


def sweep(
    mode_template: LGMode,
    wm_template: Windmill,
    cavity: Cavity,
    l_values: Sequence[int],
    p_values: Sequence[int],
    gamma_cav: Optional[float] = None,
    threads: int = 1,
    rel_tol: float = 1e-10,
    fd_step: float = 1e-5,
    match_spokes: bool = True,
) -> SweepResult:
    """Coupling/decoherence table over (l, p), l-major then p-minor.

    Each l uses the linear-coupling phase pi/(4 l) and, by default, a rotor
    with the spoke count matched to l (the single-rod comparison passes
    match_spokes=False).  Cell failures are recorded per row and do not
    abort the sweep.  Scheduling across threads cannot change the output:
    rows are merged in input order.
    """
    if not l_values or not p_values:
        raise ValueError("sweep ranges must be non-empty")
    if min(l_values) < 1:
        raise ValueError("sweep requires l >= 1")
    cells = [
        (mode_template, wm_template, cavity, l, p, gamma_cav, rel_tol, fd_step, match_spokes)
        for l in l_values
        for p in p_values
    ]
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(_sweep_cell, cells))
    else:
        rows = [_sweep_cell(c) for c in cells]
    return SweepResult(rows=tuple(rows))


def find_optimal_p(
    mode_template: LGMode,
    wm: Windmill,
    cavity: Cavity,
    l: int,
    p_max: int,
    rel_tol: float = 1e-10,
) -> Tuple[int, float]:
    """Exhaustive scan of |g| over p in [0, p_max]; ties go to smaller p."""
    if p_max < 0:
        raise ValueError(f"p_max must be >= 0, got {p_max}")
    best_p, best_g = 0, -1.0
    for p in range(p_max + 1):
        mode = LGMode(
            l=l,
            p=p,
            wavelength=mode_template.wavelength,
            w0=mode_template.w0,
            phase_offset=math.pi / (4.0 * l),
        )
        g = abs(coupling_linear(mode, wm, cavity, rel_tol=rel_tol).g)
        if g > best_g:
            best_p, best_g = p, g
    return best_p, best_g
