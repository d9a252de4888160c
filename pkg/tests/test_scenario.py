import math
from pathlib import Path

import pytest

from lgtorsion.constants import C_LIGHT
from lgtorsion.errors import ConfigError
from lgtorsion.scenario import load_scenario, parse_scenario

REPO = Path(__file__).resolve().parent.parent
PAPER_SCENARIO = REPO / "scenarios" / "paper.scenario"

MINIMAL = """
l = 3
p = 11
wavelength = 1064 nm
w0 = 20 um
R = 10 um
s = 200 nm
h = 200 nm
m = 1e-16 kg
epsilon = 2.1
D = 0.5 mm
omega_phi = 50 kHz
"""


def test_bundled_paper_scenario_loads():
    scn = load_scenario(str(PAPER_SCENARIO))
    assert scn.l == 3 and scn.p == 11
    assert scn.w0 == pytest.approx(20e-6)
    assert scn.wavelength == pytest.approx(1064e-9)
    assert scn.omega_phi == pytest.approx(5e4)  # "50 kHz" ingested as printed
    assert scn.phase_offset == pytest.approx(math.pi / 12)  # auto pi/(4 l)
    assert scn.omega_c0 == pytest.approx(2 * math.pi * C_LIGHT / 1064e-9)
    assert scn.spokes == 3
    assert scn.gamma_cav == pytest.approx(5689.18)
    assert len(scn.sha) == 12


def test_minimal_scenario_defaults():
    scn = parse_scenario(MINIMAL)
    assert scn.spokes == 3          # matches l
    assert scn.phi0 == 0.0
    assert scn.gamma_cav is None
    assert scn.l_min == 1 and scn.l_max == 5
    assert scn.p_min == 0 and scn.p_max == 30
    assert scn.map_size == 512
    assert scn.threads == 1
    assert scn.out_dir == "out"
    scn.mode(), scn.windmill(), scn.cavity()


def test_builders_honor_overrides():
    scn = parse_scenario(MINIMAL)
    mode = scn.mode(l=5, p=0, phase_offset=0.0)
    assert (mode.l, mode.p, mode.phase_offset) == (5, 0, 0.0)
    assert scn.windmill(spokes=1).spokes == 1


@pytest.mark.parametrize(
    "unit,expected",
    [("1 m", 1.0), ("1 mm", 1e-3), ("5 um", 5e-6), ("12 nm", 12e-9)],
)
def test_length_units(unit, expected):
    scn = parse_scenario(MINIMAL.replace("w0 = 20 um", f"w0 = {unit}"))
    assert scn.w0 == pytest.approx(expected)


def test_angle_units():
    scn = parse_scenario(MINIMAL + "phase_offset = 15 deg\n")
    assert scn.phase_offset == pytest.approx(math.radians(15.0))
    scn = parse_scenario(MINIMAL + "phase_offset = 0\n")  # bare zero is fine
    assert scn.phase_offset == 0.0


def test_frequency_ingested_as_printed():
    scn = parse_scenario(MINIMAL.replace("omega_phi = 50 kHz", "omega_phi = 2 MHz"))
    assert scn.omega_phi == pytest.approx(2e6)


def test_unknown_key_rejected():
    with pytest.raises(ConfigError, match="unknown key 'waist'"):
        parse_scenario(MINIMAL + "waist = 3 um\n")


def test_duplicate_key_rejected():
    with pytest.raises(ConfigError, match="duplicate key 'l'"):
        parse_scenario(MINIMAL + "l = 4\n")


def test_missing_required_named():
    text = "\n".join(line for line in MINIMAL.splitlines() if not line.startswith("epsilon"))
    with pytest.raises(ConfigError, match="epsilon"):
        parse_scenario(text)


def test_missing_unit_named():
    with pytest.raises(ConfigError, match="key 'w0'"):
        parse_scenario(MINIMAL.replace("w0 = 20 um", "w0 = 20"))


def test_unknown_unit_named():
    with pytest.raises(ConfigError, match="key 'w0'"):
        parse_scenario(MINIMAL.replace("w0 = 20 um", "w0 = 20 furlong"))


def test_non_numeric_value_named():
    with pytest.raises(ConfigError, match="key 'epsilon'"):
        parse_scenario(MINIMAL.replace("epsilon = 2.1", "epsilon = glass"))
    with pytest.raises(ConfigError, match="key 'p'"):
        parse_scenario(MINIMAL.replace("p = 11", "p = eleven"))


def test_malformed_line_reported():
    with pytest.raises(ConfigError, match="line"):
        parse_scenario(MINIMAL + "just some words\n")


def test_invariant_violations_become_config_errors():
    with pytest.raises(ConfigError, match="invalid scenario"):
        parse_scenario(MINIMAL.replace("epsilon = 2.1", "epsilon = 0.5"))
    with pytest.raises(ConfigError, match="invalid scenario"):
        # wedges overlap: s beyond pi R / spokes
        parse_scenario(MINIMAL.replace("s = 200 nm", "s = 11 um"))


def test_sweep_range_validation():
    with pytest.raises(ConfigError, match="l_min"):
        parse_scenario(MINIMAL + "l_min = 0\n")
    with pytest.raises(ConfigError, match="empty"):
        parse_scenario(MINIMAL + "p_min = 10\np_max = 2\n")
    with pytest.raises(ConfigError, match="threads"):
        parse_scenario(MINIMAL + "threads = 0\n")


def test_comments_and_inline_comments_ignored():
    scn = parse_scenario(MINIMAL + "# a comment line\nspokes = 3  # inline\n")
    assert scn.spokes == 3


def test_missing_file_is_config_error():
    with pytest.raises(ConfigError, match="cannot read"):
        load_scenario("/nonexistent/path.scenario")


def test_hash_tracks_content():
    a = parse_scenario(MINIMAL)
    b = parse_scenario(MINIMAL + "\n# trailing comment\n")
    assert a.sha != b.sha
