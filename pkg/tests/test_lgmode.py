import math

import numpy as np
import pytest
from scipy import integrate, special

from conftest import find_local_maxima
from lgtorsion.errors import QuadratureError
from lgtorsion.lgmode import (
    CylindricalPoint,
    GridSpec,
    LGMode,
    beam_width,
    intensity,
    intensity_map,
    intensity_xy,
    outer_radial_max,
    radial_max,
    transverse_norm,
)

PAPER_MODE = dict(wavelength=1064e-9, w0=20e-6)


def make_mode(l=3, p=0, phase=0.0):
    return LGMode(l=l, p=p, phase_offset=phase, **PAPER_MODE)


def test_beam_width_at_focus_and_rayleigh():
    mode = make_mode()
    assert beam_width(mode, 0.0) == mode.w0
    assert beam_width(mode, mode.rayleigh_range) == pytest.approx(mode.w0 * math.sqrt(2.0), rel=1e-14)


def test_rayleigh_range_exceeds_cavity_scale():
    mode = make_mode()
    assert mode.rayleigh_range == pytest.approx(math.pi * (20e-6) ** 2 / 1064e-9, rel=1e-14)
    assert mode.rayleigh_range == pytest.approx(1.181e-3, rel=1e-3)
    assert mode.rayleigh_range > 0.5e-3  # flat-beam regime for a 0.5 mm cavity


def test_mode_validation():
    with pytest.raises(ValueError):
        LGMode(l=1, p=-1, wavelength=1e-6, w0=1e-5)
    with pytest.raises(ValueError):
        LGMode(l=1, p=0, wavelength=-1e-6, w0=1e-5)
    with pytest.raises(ValueError):
        LGMode(l=1, p=0, wavelength=1e-6, w0=0.0)


def test_point_phi_reduced():
    pt = CylindricalPoint(r=1.0, phi=-math.pi / 2, z=0.0)
    assert 0.0 <= pt.phi < 2 * math.pi
    assert pt.phi == pytest.approx(1.5 * math.pi)
    with pytest.raises(ValueError):
        CylindricalPoint(r=-1e-9, phi=0.0, z=0.0)


def test_intensity_gaussian_origin_unity():
    # l=0, p=0 at the origin: every factor is one
    mode = make_mode(l=0, p=0)
    assert mode.norm_a == 1.0
    assert intensity(mode, CylindricalPoint(0.0, 0.0, 0.0)) == pytest.approx(1.0, rel=1e-14)


def test_intensity_dark_core():
    for p in (0, 4, 11):
        mode = make_mode(l=3, p=p)
        assert intensity(mode, CylindricalPoint(0.0, 1.0, 0.0)) == 0.0


def test_intensity_nonnegative_random():
    rng = np.random.default_rng(8)
    mode = make_mode(l=4, p=7, phase=0.3)
    for _ in range(200):
        pt = CylindricalPoint(
            r=float(rng.uniform(0, 6e-5)),
            phi=float(rng.uniform(0, 2 * math.pi)),
            z=float(rng.uniform(-1e-4, 1e-4)),
        )
        assert intensity(mode, pt) >= 0.0


def test_intensity_profile_peak_location():
    # the p=0 ring sits at w0 sqrt(|l|/2)
    mode = make_mode(l=3, p=0)
    rs = np.linspace(0.0, 3 * mode.w0, 20001)
    vals = [intensity(mode, CylindricalPoint(float(r), 0.0, 0.0)) for r in rs]
    r_peak = rs[int(np.argmax(vals))]
    assert r_peak == pytest.approx(mode.w0 * math.sqrt(1.5), rel=1e-3)


def test_intensity_log_path_matches_reference():
    # huge Laguerre values route through the log composition
    mode = LGMode(l=200, p=200, wavelength=1e-6, w0=1e-5)
    r = mode.w0 / math.sqrt(2.0)  # u = 1
    val = intensity(mode, CylindricalPoint(r, 0.0, 0.0))
    lag = float(special.eval_genlaguerre(200, 200, 1.0))
    assert abs(lag) > 1e100
    log_ref = (
        math.log(2.0)
        + math.lgamma(201)
        - math.lgamma(401)
        - 1.0
        + 2.0 * math.log(lag)
    )
    assert val > 0.0
    assert math.log(val) == pytest.approx(log_ref, rel=1e-12)


def test_angular_periodicity_and_reflection():
    rng = np.random.default_rng(21)
    mode = make_mode(l=5, p=3, phase=0.22)
    for _ in range(100):
        r = float(rng.uniform(1e-6, 5e-5))
        phi = float(rng.uniform(0, 2 * math.pi))
        z = float(rng.uniform(-1e-4, 1e-4))
        base = intensity(mode, CylindricalPoint(r, phi, z))
        shifted = intensity(mode, CylindricalPoint(r, phi + math.pi / 5, z))
        mirrored = intensity(mode, CylindricalPoint(r, 2 * mode.phase_offset - phi, z))
        assert shifted == pytest.approx(base, rel=1e-9, abs=1e-300)
        assert mirrored == pytest.approx(base, rel=1e-9, abs=1e-300)


def test_l_sign_invariance():
    rng = np.random.default_rng(31)
    plus = make_mode(l=4, p=2, phase=0.1)
    minus = make_mode(l=-4, p=2, phase=0.1)
    for _ in range(50):
        pt = CylindricalPoint(float(rng.uniform(0, 5e-5)), float(rng.uniform(0, 7)), 0.0)
        assert intensity(plus, pt) == pytest.approx(intensity(minus, pt), rel=1e-12, abs=0)


@pytest.mark.parametrize("l,p", [(1, 1), (3, 5), (2, 8), (6, 3)])
def test_radial_node_count_along_bright_ray(l, p):
    mode = make_mode(l=l, p=p, phase=0.4)
    r_hi = mode.w0 * math.sqrt(2.0 * (l + 2 * p + 1))
    rs = np.linspace(1e-9, r_hi, 40001)
    vals = np.array([intensity(mode, CylindricalPoint(float(r), 0.4, 0.0)) for r in rs])
    # grid samples bottom out at ~(spacing/lobe width)^2 of the peak near a
    # true zero, far below any non-nodal structure
    dips = (
        (vals[1:-1] < vals[:-2])
        & (vals[1:-1] < vals[2:])
        & (vals[1:-1] < 1e-4 * vals.max())
    )
    assert int(dips.sum()) == p


def test_radial_max_closed_form():
    assert radial_max(make_mode(l=2, p=0)) == pytest.approx(20e-6, rel=1e-14)  # w0 sqrt(2/2)
    assert radial_max(make_mode(l=0, p=0)) == 0.0


def test_radial_max_innermost_lobe():
    mode = make_mode(l=3, p=5)
    r_in = radial_max(mode)
    assert r_in < mode.w0 * math.sqrt(1.5)
    # dense-scan oracle with the reference Laguerre implementation
    rs = np.linspace(1e-9, 3 * mode.w0, 400001)
    u = 2 * rs**2 / mode.w0**2
    prof = u**3 * np.exp(-u) * special.eval_genlaguerre(5, 3, u) ** 2
    idx = np.nonzero((prof[1:-1] > prof[:-2]) & (prof[1:-1] > prof[2:]))[0]
    assert r_in == pytest.approx(rs[idx[0] + 1], rel=1e-4)


def test_transverse_norm_constant_across_modes():
    expected = math.pi * (20e-6) ** 2 / 2.0
    for l in (0, 1, 3, 7, 10):
        for p in (0, 5, 30):
            mode = make_mode(l=l, p=p)
            assert transverse_norm(mode, 0.0) == pytest.approx(expected, rel=1e-6)


def test_transverse_norm_axial_node():
    mode = make_mode(l=2, p=1)
    z_node = (math.pi / 2.0) / mode.k
    assert transverse_norm(mode, z_node) == pytest.approx(0.0, abs=1e-22)


def test_transverse_norm_against_2d_quadrature():
    # brute-force 2-D quadrature oracle for the fundamental mode
    mode = make_mode(l=0, p=0)
    val, _ = integrate.dblquad(
        lambda r, phi: intensity(mode, CylindricalPoint(r, phi, 0.0)) * r,
        0.0,
        2 * math.pi,
        0.0,
        6 * mode.w0,
        epsabs=1e-18,
    )
    assert transverse_norm(mode, 0.0) == pytest.approx(val, rel=1e-6)


def test_intensity_map_lobe_counts():
    # 2|l| angular lobes for p=0; (p+1) rings of 2|l| lobes once p > 0
    fmap0 = intensity_map(make_mode(l=3, p=0, phase=0.0), GridSpec(n=512))
    rows, _ = find_local_maxima(fmap0.values)
    assert rows.size == 6

    fmap5 = intensity_map(make_mode(l=3, p=5, phase=0.0), GridSpec(n=512))
    rows5, _ = find_local_maxima(fmap5.values)
    assert rows5.size == 36
    assert np.all(fmap0.values >= 0.0)
    assert np.all(fmap5.values >= 0.0)


def test_intensity_map_grid_shapes():
    fmap = intensity_map(make_mode(l=1, p=1), GridSpec(n=64, half_extent=5e-5))
    assert fmap.values.shape == (64, 64)
    assert fmap.x[0] == -5e-5 and fmap.x[-1] == 5e-5
    # row-major over y: values[i, j] belongs to (x[j], y[i])
    probe = intensity_xy(make_mode(l=1, p=1), fmap.x[3], fmap.y[10])
    assert fmap.values[10, 3] == pytest.approx(float(probe), rel=0)


def test_grid_spec_validation():
    with pytest.raises(ValueError):
        GridSpec(n=1)
    with pytest.raises(ValueError):
        GridSpec(n=16, half_extent=-1.0)


def test_outer_radial_max_beyond_inner():
    mode = make_mode(l=3, p=5)
    assert outer_radial_max(mode) > radial_max(mode)


def test_transverse_norm_nonconvergence_signals():
    mode = make_mode(l=2, p=3)
    with pytest.raises(QuadratureError):
        transverse_norm(mode, 0.0, rel_tol=1e-17)
