"""Scenario files: flat key/value text with explicit SI-unit suffixes.

A scenario is the reproducibility artifact: one line per key, for example

    w0 = 20 um
    omega_phi = 50 kHz
    epsilon = 2.1

Unknown and duplicate keys are rejected.  Frequency-suffixed values are
ingested as angular rad/s numerically as printed ("50 kHz" -> 5e4 rad/s),
matching how the source quantities are quoted; the derivation note in docs/
records this convention.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass
from typing import Optional

from .constants import C_LIGHT
from .coupling import Cavity
from .decoherence import DecoherenceInput
from .errors import ConfigError
from .lgmode import LGMode
from .windmill import Windmill

_LENGTH = {"m": 1.0, "mm": 1e-3, "um": 1e-6, "µm": 1e-6, "nm": 1e-9, "pm": 1e-12}
_MASS = {"kg": 1.0, "g": 1e-3, "mg": 1e-6, "ug": 1e-9, "ng": 1e-12}
_ANGLE = {"rad": 1.0, "mrad": 1e-3, "deg": math.pi / 180.0}
_FREQ = {"Hz": 1.0, "kHz": 1e3, "MHz": 1e6, "GHz": 1e9}

_UNIT_TABLES = {"length": _LENGTH, "mass": _MASS, "angle": _ANGLE, "freq": _FREQ}

# key -> (kind, required).  kinds: length/mass/angle/freq carry a unit suffix;
# int/float are bare; str is taken verbatim; auto_* accept the word "auto".
_KEYS = {
    "l": ("int", True),
    "p": ("int", True),
    "wavelength": ("length", True),
    "w0": ("length", True),
    "phase_offset": ("auto_angle", False),
    "spokes": ("int", False),
    "R": ("length", True),
    "s": ("length", True),
    "h": ("length", True),
    "m": ("mass", True),
    "epsilon": ("float", True),
    "D": ("length", True),
    "omega_c0": ("auto_freq", False),
    "omega_phi": ("freq", True),
    "phi0": ("angle", False),
    "gamma_cav": ("freq", False),
    "power_note": ("str", False),
    "l_min": ("int", False),
    "l_max": ("int", False),
    "p_min": ("int", False),
    "p_max": ("int", False),
    "fig2_l_max": ("int", False),
    "fig3_p_low": ("int", False),
    "fig3_p_high": ("int", False),
    "map_size": ("int", False),
    "quad_tol": ("float", False),
    "fd_step_linear": ("angle", False),
    "fd_step_quadratic": ("angle", False),
    "threads": ("int", False),
    "feasible_threshold": ("float", False),
    "out_dir": ("str", False),
}


def _parse_number(key: str, token: str) -> float:
    try:
        return float(token)
    except ValueError:
        raise ConfigError(f"key '{key}': cannot parse number from {token!r}") from None


def _parse_value(key: str, kind: str, raw: str):
    raw = raw.strip()
    if kind == "str":
        return raw
    if kind == "int":
        try:
            return int(raw)
        except ValueError:
            raise ConfigError(f"key '{key}': expected an integer, got {raw!r}") from None
    if kind == "float":
        return _parse_number(key, raw)
    if kind.startswith("auto_"):
        if raw == "auto":
            return "auto"
        kind = kind[len("auto_"):]
    parts = raw.split()
    table = _UNIT_TABLES[kind]
    if len(parts) == 1:
        if _parse_number(key, parts[0]) == 0.0:
            return 0.0  # a bare zero needs no unit
        raise ConfigError(
            f"key '{key}': missing unit suffix (one of {', '.join(sorted(table))})"
        )
    if len(parts) != 2:
        raise ConfigError(f"key '{key}': expected '<number> <unit>', got {raw!r}")
    value, unit = parts
    if unit not in table:
        raise ConfigError(
            f"key '{key}': unknown {kind} unit {unit!r} (expected one of "
            f"{', '.join(sorted(table))})"
        )
    return _parse_number(key, value) * table[unit]


@dataclass(frozen=True)
class Scenario:
    """Validated scenario: parameter set, sweep ranges, numeric knobs."""

    l: int
    p: int
    wavelength: float
    w0: float
    phase_offset: float
    spokes: int
    radius: float
    arc_length: float
    thickness: float
    spoke_mass: float
    epsilon: float
    cavity_length: float
    omega_c0: float
    omega_phi: float
    phi0: float
    gamma_cav: Optional[float]
    power_note: str
    l_min: int
    l_max: int
    p_min: int
    p_max: int
    fig2_l_max: int
    fig3_p_low: int
    fig3_p_high: int
    map_size: int
    quad_tol: float
    fd_step_linear: float
    fd_step_quadratic: float
    threads: int
    feasible_threshold: float
    out_dir: str
    sha: str

    def mode(self, l: Optional[int] = None, p: Optional[int] = None,
             phase_offset: Optional[float] = None) -> LGMode:
        return LGMode(
            l=self.l if l is None else l,
            p=self.p if p is None else p,
            wavelength=self.wavelength,
            w0=self.w0,
            phase_offset=self.phase_offset if phase_offset is None else phase_offset,
        )

    def windmill(self, spokes: Optional[int] = None) -> Windmill:
        return Windmill(
            spokes=self.spokes if spokes is None else spokes,
            radius=self.radius,
            arc_length=self.arc_length,
            thickness=self.thickness,
            spoke_mass=self.spoke_mass,
            epsilon=self.epsilon,
        )

    def cavity(self) -> Cavity:
        return Cavity(
            length=self.cavity_length,
            omega_c0=self.omega_c0,
            omega_phi=self.omega_phi,
            phi0=self.phi0,
        )

    def decoherence(self) -> Optional[DecoherenceInput]:
        if self.gamma_cav is None:
            return None
        return DecoherenceInput(gamma_cav=self.gamma_cav, power_note=self.power_note)


def parse_scenario(text: str) -> Scenario:
    """Parse and validate scenario text; raises ConfigError naming the key."""
    values = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        if "=" not in body:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {line.strip()!r}")
        key, raw = (part.strip() for part in body.split("=", 1))
        if key not in _KEYS:
            raise ConfigError(f"unknown key '{key}' (line {lineno})")
        if key in values:
            raise ConfigError(f"duplicate key '{key}' (line {lineno})")
        kind, _required = _KEYS[key]
        values[key] = _parse_value(key, kind, raw)

    missing = [k for k, (_kind, required) in _KEYS.items() if required and k not in values]
    if missing:
        raise ConfigError(f"missing required key(s): {', '.join(missing)}")

    l = values["l"]
    phase = values.get("phase_offset", "auto")
    if phase == "auto":
        phase = math.pi / (4.0 * l) if l != 0 else 0.0
    omega_c0 = values.get("omega_c0", "auto")
    if omega_c0 == "auto":
        omega_c0 = 2.0 * math.pi * C_LIGHT / values["wavelength"]

    scn = Scenario(
        l=l,
        p=values["p"],
        wavelength=values["wavelength"],
        w0=values["w0"],
        phase_offset=phase,
        spokes=values.get("spokes", max(abs(l), 1)),
        radius=values["R"],
        arc_length=values["s"],
        thickness=values["h"],
        spoke_mass=values["m"],
        epsilon=values["epsilon"],
        cavity_length=values["D"],
        omega_c0=omega_c0,
        omega_phi=values["omega_phi"],
        phi0=values.get("phi0", 0.0),
        gamma_cav=values.get("gamma_cav"),
        power_note=values.get("power_note", ""),
        l_min=values.get("l_min", 1),
        l_max=values.get("l_max", 5),
        p_min=values.get("p_min", 0),
        p_max=values.get("p_max", 30),
        fig2_l_max=values.get("fig2_l_max", 10),
        fig3_p_low=values.get("fig3_p_low", 0),
        fig3_p_high=values.get("fig3_p_high", 5),
        map_size=values.get("map_size", 512),
        quad_tol=values.get("quad_tol", 1e-10),
        fd_step_linear=values.get("fd_step_linear", 1e-5),
        fd_step_quadratic=values.get("fd_step_quadratic", 1e-4),
        threads=values.get("threads", 1),
        feasible_threshold=values.get("feasible_threshold", 0.05),
        out_dir=values.get("out_dir", "out"),
        sha=hashlib.sha256(text.encode()).hexdigest()[:12],
    )

    # constructing the domain objects runs every type invariant now
    try:
        scn.mode()
        scn.windmill()
        scn.cavity()
        scn.decoherence()
    except ValueError as exc:
        raise ConfigError(f"invalid scenario: {exc}") from exc
    if not (scn.l_min <= scn.l_max and scn.p_min <= scn.p_max):
        raise ConfigError("sweep ranges are empty (check l_min/l_max, p_min/p_max)")
    if scn.l_min < 1:
        raise ConfigError("key 'l_min': sweeps require l >= 1")
    if scn.threads < 1:
        raise ConfigError("key 'threads': must be >= 1")
    if scn.quad_tol <= 0:
        raise ConfigError("key 'quad_tol': must be > 0")
    return scn


def load_scenario(path: str) -> Scenario:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read scenario file {path!r}: {exc}") from exc
    return parse_scenario(text)
