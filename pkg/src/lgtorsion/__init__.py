"""Torsional optomechanics of a windmill dielectric in LG cavity modes."""

__version__ = "0.1.0"

from .coupling import (  # noqa: F401
    Cavity,
    CouplingResult,
    QuadraticCoupling,
    SweepResult,
    SweepRow,
    coupling_analytic_p0,
    coupling_linear,
    coupling_linear_fd,
    coupling_quadratic,
    dielectric_overlap,
    find_optimal_p,
    frequency_shift,
    mode_norm_total,
    sweep,
)
from .decoherence import (  # noqa: F401
    DecoherenceInput,
    decoherence_rate,
    feasibility_margin,
    is_feasible,
    scattering_ratio,
)
from .lgmode import (  # noqa: F401
    CylindricalPoint,
    FieldMap,
    GridSpec,
    LGMode,
    beam_width,
    intensity,
    intensity_map,
    radial_max,
    transverse_norm,
)
from .model import OmSystem, TruncatedHamiltonian, assemble, build_matrix, polaron_shift  # noqa: F401
from .scenario import Scenario, load_scenario, parse_scenario  # noqa: F401
from .windmill import (  # noqa: F401
    RotorPose,
    Windmill,
    contains,
    cross_section_area,
    moment_of_inertia,
    validate_perturbative,
)
