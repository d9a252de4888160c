"""Command-line surface: scenario ingestion, figure data, sweeps, reports.

Exit codes: 0 success, 2 scenario/config rejection, 3 numeric failure.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from dataclasses import replace
from typing import Optional

from . import __version__
from .coupling import (
    coupling_analytic_p0,
    coupling_linear,
    coupling_linear_fd,
    coupling_quadratic,
    find_optimal_p,
    sweep,
)
from .csvio import write_csv
from .decoherence import decoherence_rate, feasibility_margin, is_feasible, scattering_ratio
from .errors import ConfigError, NumericError
from .lgmode import GridSpec, intensity_map, outer_radial_max
from .model import OmSystem, polaron_shift
from .scenario import Scenario, load_scenario
from .windmill import moment_of_inertia, validate_perturbative

_TWO_PI = 2.0 * math.pi


def _meta(scn: Scenario, command: str):
    return (
        f"lgtorsion {__version__}",
        f"scenario sha256: {scn.sha}",
        f"command: {command}",
    )


def _hz(value: float) -> float:
    return value / _TWO_PI


def _print_warnings(scn: Scenario) -> None:
    warnings = validate_perturbative(scn.windmill(), scn.mode(), scn.cavity())
    warnings += scn.cavity().rayleigh_warnings(scn.mode())
    for w in warnings:
        print(f"warning: {w}")


def cmd_coupling(scn: Scenario, out_dir: str) -> None:
    mode, wm, cavity = scn.mode(), scn.windmill(), scn.cavity()
    _print_warnings(scn)
    res = coupling_linear(mode, wm, cavity, fd_step=scn.fd_step_linear, rel_tol=scn.quad_tol)
    zeta = scattering_ratio(mode, wm, rel_tol=scn.quad_tol)
    gamma = zeta * scn.gamma_cav if scn.gamma_cav is not None else None
    print(
        f"l={mode.l} p={mode.p} g={res.g:.8e} rad/s ({_hz(res.g):.4f} Hz-equivalent) "
        f"g/B={res.g_ratio:.8e} zeta={zeta:.8e} method={res.method}"
    )
    write_csv(
        os.path.join(out_dir, "coupling.csv"),
        ("l", "p", "g_rad_s", "g_over_B", "zeta", "gamma_rad_s", "error"),
        [(mode.l, mode.p, res.g, res.g_ratio, zeta, gamma, None)],
        _meta(scn, "coupling"),
    )


def cmd_fig2(scn: Scenario, out_dir: str) -> None:
    rows = []
    for l in range(1, scn.fig2_l_max + 1):
        try:
            wm = scn.windmill(spokes=l)
            mode = scn.mode(l=l, p=0, phase_offset=math.pi / (4.0 * l))
            closed = coupling_analytic_p0(mode, wm, scn.cavity())
            numeric = coupling_linear(
                mode, wm, scn.cavity(), fd_step=scn.fd_step_linear, rel_tol=scn.quad_tol
            )
            rows.append((l, closed.g_ratio, abs(numeric.g_ratio), None))
        except (ValueError, NumericError, OverflowError) as exc:
            rows.append((l, None, None, str(exc)))
    write_csv(
        os.path.join(out_dir, "fig2.csv"),
        ("l", "g_ratio_closed", "g_ratio_numeric", "error"),
        rows,
        _meta(scn, "fig2"),
    )


def _run_sweep(scn: Scenario):
    return sweep(
        scn.mode(),
        scn.windmill(),
        scn.cavity(),
        l_values=range(scn.l_min, scn.l_max + 1),
        p_values=range(scn.p_min, scn.p_max + 1),
        gamma_cav=scn.gamma_cav,
        threads=scn.threads,
        rel_tol=scn.quad_tol,
        fd_step=scn.fd_step_linear,
    )


def cmd_fig4(scn: Scenario, out_dir: str) -> None:
    result = _run_sweep(scn)
    write_csv(
        os.path.join(out_dir, "fig4.csv"),
        ("l", "p", "g_over_B", "error"),
        [(r.l, r.p, r.g_ratio, r.error) for r in result.rows],
        _meta(scn, "fig4"),
    )


def cmd_fig5(scn: Scenario, out_dir: str) -> None:
    if scn.gamma_cav is None:
        raise ConfigError("key 'gamma_cav' is required for fig5 (decoherence sweep)")
    result = _run_sweep(scn)
    write_csv(
        os.path.join(out_dir, "fig5.csv"),
        ("l", "p", "gamma_rad_s", "error"),
        [(r.l, r.p, r.gamma, r.error) for r in result.rows],
        _meta(scn, "fig5"),
    )


def cmd_fig3(scn: Scenario, out_dir: str) -> None:
    # both maps share the frame of the higher-p mode so they overlay cleanly
    mode_high = scn.mode(p=scn.fig3_p_high, phase_offset=0.0)
    extent = 1.2 * max(outer_radial_max(mode_high), scn.w0)
    grid = GridSpec(n=scn.map_size, half_extent=extent)
    for p in (scn.fig3_p_low, scn.fig3_p_high):
        mode = scn.mode(p=p, phase_offset=0.0)
        fmap = intensity_map(mode, grid)
        rows = []
        for i in range(fmap.y.size):
            y = fmap.y[i]
            row_vals = fmap.values[i]
            rows.extend((fmap.x[j], y, row_vals[j]) for j in range(fmap.x.size))
        write_csv(
            os.path.join(out_dir, f"fig3_map_p{p}.csv"),
            ("x_m", "y_m", "intensity"),
            rows,
            _meta(scn, "fig3"),
        )

    wm = scn.windmill()
    outline_rows = []
    arc_n = 64
    for j in range(2 * wm.spokes):
        centre = j * math.pi / wm.spokes
        lo, hi = centre - wm.half_angle, centre + wm.half_angle
        outline_rows.append((j, 0.0, 0.0))
        for i in range(arc_n + 1):
            ang = lo + (hi - lo) * i / arc_n
            outline_rows.append((j, wm.radius * math.cos(ang), wm.radius * math.sin(ang)))
        outline_rows.append((j, 0.0, 0.0))
    write_csv(
        os.path.join(out_dir, "fig3_windmill.csv"),
        ("wedge", "x_m", "y_m"),
        outline_rows,
        _meta(scn, "fig3"),
    )


def cmd_optimize(scn: Scenario, out_dir: str, l: Optional[int], p_max: Optional[int]) -> None:
    l = scn.l if l is None else l
    p_max = scn.p_max if p_max is None else p_max
    if l < 1:
        raise ConfigError("optimize requires l >= 1")
    p_star, g_star = find_optimal_p(
        scn.mode(), scn.windmill(spokes=l), scn.cavity(), l, p_max, rel_tol=scn.quad_tol
    )
    print(
        f"l={l} p*={p_star} g*={g_star:.8e} rad/s ({_hz(g_star):.4f} Hz-equivalent) "
        f"[scanned p=0..{p_max}]"
    )


def cmd_report(scn: Scenario, out_dir: str) -> None:
    mode, wm, cavity = scn.mode(), scn.windmill(), scn.cavity()
    print(f"lgtorsion {__version__} report  (scenario sha256 {scn.sha})")
    print(
        f"mode:     l={mode.l} p={mode.p} wavelength={mode.wavelength:.6e} m "
        f"w0={mode.w0:.6e} m phase_offset={mode.phase_offset:.6e} rad"
    )
    print(
        f"windmill: spokes={wm.spokes} R={wm.radius:.6e} m s={wm.arc_length:.6e} m "
        f"h={wm.thickness:.6e} m m={wm.spoke_mass:.6e} kg epsilon={wm.epsilon}"
    )
    print(
        f"cavity:   D={cavity.length:.6e} m omega_c0={cavity.omega_c0:.6e} rad/s "
        f"omega_phi={cavity.omega_phi:.6e} rad/s phi0={cavity.phi0:.6e} rad"
    )
    print(f"derived:  z_R={mode.rayleigh_range:.6e} m I={moment_of_inertia(wm):.6e} kg m^2")

    warnings = validate_perturbative(wm, mode, cavity) + cavity.rayleigh_warnings(mode)
    if warnings:
        for w in warnings:
            print(f"warning:  {w}")
    else:
        print("warnings: none")

    res = coupling_linear(mode, wm, cavity, fd_step=scn.fd_step_linear, rel_tol=scn.quad_tol)
    res_fd = coupling_linear_fd(mode, wm, cavity, fd_step=scn.fd_step_linear, rel_tol=scn.quad_tol)
    print("coupling:")
    print(f"  {res.method:<18} g = {res.g:.8e} rad/s ({_hz(res.g):.4f} Hz-equivalent)")
    print(f"  {res_fd.method:<18} g = {res_fd.g:.8e} rad/s ({_hz(res_fd.g):.4f} Hz-equivalent)")
    if mode.p == 0 and abs(mode.l) >= 1:
        closed = coupling_analytic_p0(mode, wm, cavity)
        print(f"  {closed.method:<18} g = {closed.g:.8e} rad/s (magnitude)")
    else:
        print("  closed-form-p0     n/a (p > 0)")
    quad_mode = scn.mode(phase_offset=0.0)
    quad = coupling_quadratic(quad_mode, wm, cavity, step=scn.fd_step_quadratic,
                              rel_tol=scn.quad_tol)
    print(
        f"  quadratic (phi'=0) g2 = {quad.g2:.8e} rad/s "
        f"(d2 omega_c/d delta2 = {quad.second_derivative:.8e})"
    )

    zeta = scattering_ratio(mode, wm, rel_tol=scn.quad_tol)
    print("decoherence:")
    print(f"  zeta = {zeta:.8e}")
    g_mag = abs(res.g)
    dec = scn.decoherence()
    if dec is None:
        print("  gamma = n/a (gamma_cav not set)")
        print("  margin gamma/g = n/a (gamma_cav not set)")
        margin = None
    else:
        gamma = decoherence_rate(dec, zeta)
        print(f"  gamma = {gamma:.8e} rad/s ({_hz(gamma):.4f} Hz-equivalent)")
        if g_mag > 0:
            margin = feasibility_margin(g_mag, gamma)
            print(f"  margin gamma/g = {margin:.8e} (threshold {scn.feasible_threshold})")
        else:
            margin = None
            print("  margin gamma/g = n/a (zero coupling)")

    sys_params = OmSystem(omega_c=cavity.omega_c0, omega_phi=cavity.omega_phi, g=g_mag or 1.0)
    numeric, analytic = polaron_shift(sys_params, n_a=1, n_b_max=80)
    rel = abs(numeric - analytic) / abs(analytic) if analytic != 0 else 0.0
    print(
        f"spectrum: polaron shift n=1 numeric={numeric:.8e} analytic={analytic:.8e} "
        f"rel_err={rel:.2e}"
    )

    if g_mag == 0.0:
        print("verdict: not feasible (zero coupling)")
    elif margin is None:
        print("verdict: n/a (gamma_cav not set)")
    elif is_feasible(margin, scn.feasible_threshold):
        print("verdict: feasible")
    else:
        print("verdict: not feasible")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--scenario", required=True, help="path to the scenario file")
    common.add_argument("--out", default=None, help="output directory (overrides scenario)")
    common.add_argument("--threads", type=int, default=None,
                        help="sweep worker threads (fallback: LGT_THREADS, then scenario)")
    common.add_argument("--tolerance", type=float, default=None,
                        help="relative quadrature tolerance (overrides scenario)")

    parser = argparse.ArgumentParser(prog="lgt", description=__doc__)
    parser.add_argument("--version", action="version", version=f"lgtorsion {__version__}")
    subs = parser.add_subparsers(dest="command", required=True)
    for name, text in (
        ("coupling", "coupling for the scenario (l, p)"),
        ("fig2", "closed-form vs numeric p=0 coupling ratio over l"),
        ("fig3", "cross-section intensity maps and rotor outline"),
        ("fig4", "coupling ratio sweep over (l, p)"),
        ("fig5", "decoherence rate sweep over (l, p)"),
        ("report", "human-readable design report"),
    ):
        subs.add_parser(name, parents=[common], help=text)
    opt = subs.add_parser("optimize", parents=[common], help="optimal radial index for one l")
    opt.add_argument("--l", type=int, default=None, help="azimuthal index (default: scenario)")
    opt.add_argument("--p-max", type=int, default=None,
                     help="largest radial index scanned (default: scenario p_max)")
    return parser


def _resolve(args) -> Scenario:
    scn = load_scenario(args.scenario)
    threads = args.threads
    if threads is None and os.environ.get("LGT_THREADS"):
        try:
            threads = int(os.environ["LGT_THREADS"])
        except ValueError:
            raise ConfigError(f"LGT_THREADS is not an integer: {os.environ['LGT_THREADS']!r}")
    overrides = {}
    if threads is not None:
        if threads < 1:
            raise ConfigError("threads must be >= 1")
        overrides["threads"] = threads
    if args.tolerance is not None:
        if args.tolerance <= 0:
            raise ConfigError("tolerance must be > 0")
        overrides["quad_tol"] = args.tolerance
    if args.out is not None:
        overrides["out_dir"] = args.out
    return replace(scn, **overrides) if overrides else scn


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        scn = _resolve(args)
        out_dir = scn.out_dir
        if args.command == "coupling":
            cmd_coupling(scn, out_dir)
        elif args.command == "fig2":
            cmd_fig2(scn, out_dir)
        elif args.command == "fig3":
            cmd_fig3(scn, out_dir)
        elif args.command == "fig4":
            cmd_fig4(scn, out_dir)
        elif args.command == "fig5":
            cmd_fig5(scn, out_dir)
        elif args.command == "optimize":
            cmd_optimize(scn, out_dir, args.l, args.p_max)
        elif args.command == "report":
            cmd_report(scn, out_dir)
        else:  # pragma: no cover - argparse enforces the choices
            raise ConfigError(f"unknown command {args.command!r}")
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except NumericError as exc:
        print(f"numeric error: {exc}", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
