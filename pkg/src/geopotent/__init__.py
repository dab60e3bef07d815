"""geopotent: absolute gravitational potential toolkit for spherical bodies.

Closed-form fields of uniform spheres, quadrature over tabulated radial
profiles, the direct (maximum potential) and inverse (characteristic
radius) problems, buried-anomaly detectability, and time-varying cavity
precursor series, with a CLI (`geopotent`) on top.
"""

__version__ = "0.1.0"

from .anomaly import (
    AnomalySignal,
    BackgroundState,
    DetectabilityRow,
    SensitivityPair,
    crossover_radius,
    detectability_report,
    point_mass_signal,
    sensitivity_coefficients,
    sphere_anomaly,
)
from .core import (
    DEFAULT_CONSTANTS,
    AnomalySource,
    CavitySchedule,
    DensityTrend,
    EarthParameters,
    InversionResult,
    PhysicalConstants,
    PotentialBreakdown,
    RadialProfile,
    ScheduleSegment,
    UniformSphere,
    validate_profile,
)
from .field import (
    FieldSample,
    absolute_potential,
    equipotential_velocity,
    first_cosmic_velocity,
    gravity,
    kinetic_potential,
    potential_from_velocity,
    radius_from_velocity,
    sample_field,
    u_infinity_homogeneous,
)
from .profiles import (
    GradPResult,
    core_equilibrium_gravity,
    enclosed_mass,
    interpolate,
    mean_density,
    pressure_gradient_max,
    surface_potential_integral,
)
from .pulse import (
    PulseSample,
    buoyancy_pressure,
    cavity_mass_deficit,
    evaluate_schedule,
    pulsating_potential,
    surface_background,
)
from .solver import (
    BoundaryReference,
    HomogeneityBoundReport,
    compression_potential,
    direct_problem,
    homogeneity_bound,
    inverse_problem,
    locate_boundary,
)

__all__ = [
    "__version__",
    "DEFAULT_CONSTANTS",
    "AnomalySignal",
    "AnomalySource",
    "BackgroundState",
    "BoundaryReference",
    "CavitySchedule",
    "DensityTrend",
    "DetectabilityRow",
    "EarthParameters",
    "FieldSample",
    "GradPResult",
    "HomogeneityBoundReport",
    "InversionResult",
    "PhysicalConstants",
    "PotentialBreakdown",
    "PulseSample",
    "RadialProfile",
    "ScheduleSegment",
    "SensitivityPair",
    "UniformSphere",
    "absolute_potential",
    "buoyancy_pressure",
    "cavity_mass_deficit",
    "compression_potential",
    "core_equilibrium_gravity",
    "crossover_radius",
    "detectability_report",
    "direct_problem",
    "enclosed_mass",
    "equipotential_velocity",
    "evaluate_schedule",
    "first_cosmic_velocity",
    "gravity",
    "homogeneity_bound",
    "interpolate",
    "inverse_problem",
    "kinetic_potential",
    "locate_boundary",
    "mean_density",
    "point_mass_signal",
    "potential_from_velocity",
    "pressure_gradient_max",
    "pulsating_potential",
    "radius_from_velocity",
    "sample_field",
    "sensitivity_coefficients",
    "sphere_anomaly",
    "surface_background",
    "surface_potential_integral",
    "u_infinity_homogeneous",
    "validate_profile",
]
