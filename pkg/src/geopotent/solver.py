"""Direct problem (maximum potential), inverse problem (characteristic radius),
and the homogeneity-bound diagnostic.

The direct problem assembles the at-infinity potential from three surface
parts: the center-to-surface potential of a uniform equivalent, the
surface equipotential term from the first cosmic velocity, and an
aggregate compression potential supplied by the caller (from a pressure
source or a configured override; the two routes are kept separate so a
run stays reproducible either way). The inverse problem divides gm by
that at-infinity value, classifies the implied radial density trend, and
localizes the resulting radius against reference boundaries.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import profiles
from .core import (
    DensityTrend,
    EarthParameters,
    InversionResult,
    PotentialBreakdown,
    RadialProfile,
)
from .errors import NonPhysicalInputError, NonPhysicalValueError

# Relative band around equality for the `uniform` trend; exact float
# comparison would make the branch unreachable.
UNIFORM_TREND_TOL = 1e-6

# Relative margin treated as equality when deciding whether the bound
# holds, so the exact-equality case is not flipped by roundoff.
_BOUND_EQUALITY_MARGIN = 1e-9


@dataclass(frozen=True)
class BoundaryReference:
    """Named reference radius with a tolerance band (a layer half-thickness)."""

    name: str
    radius: float
    layer_half_thickness: float

    def __post_init__(self):
        if not (math.isfinite(self.radius) and self.radius > 0.0):
            raise NonPhysicalValueError(
                f"boundary radius must be positive, got {self.radius!r}")
        if not (math.isfinite(self.layer_half_thickness)
                and self.layer_half_thickness >= 0.0):
            raise NonPhysicalValueError(
                f"layer_half_thickness must be >= 0, got "
                f"{self.layer_half_thickness!r}")


@dataclass(frozen=True)
class HomogeneityBoundReport:
    """Both sides of the surface-potential bound and whether it holds.

    relative_gap = (integral_side - uniform_side) / uniform_side; a
    positive gap means the tabulated body's center-to-surface potential
    exceeds that of its uniform equivalent.
    """

    integral_side: float
    uniform_side: float
    holds: bool
    relative_gap: float


def compression_potential(p_g, rho_g):
    """Aggregate compression potential: characteristic pressure over mean density."""
    if not (math.isfinite(p_g) and p_g > 0.0):
        raise NonPhysicalInputError(f"p_g must be positive, got {p_g!r}")
    if not (math.isfinite(rho_g) and rho_g > 0.0):
        raise NonPhysicalInputError(f"rho_g must be positive, got {rho_g!r}")
    return p_g / rho_g


def direct_problem(earth: EarthParameters, phi_g) -> PotentialBreakdown:
    """Maximum (at-infinity) potential from surface data.

    Parameters
    ----------
    earth : EarthParameters
        Bulk parameters; gamma is recovered as gm / mass.
    phi_g : float
        Compression potential, J/kg; zero selects the homogeneous model.

    Returns
    -------
    PotentialBreakdown
        u_surface = (2/3)*gamma*rho*pi*R^2, equipotential_surface =
        v1k^2/2, and their sum with phi_g as u_infinity.
    """
    if not (math.isfinite(phi_g) and phi_g >= 0.0):
        raise NonPhysicalInputError(f"phi_g must be >= 0, got {phi_g!r}")
    gamma = earth.gm / earth.mass
    rho_gamma_pi = gamma * earth.mean_density * math.pi
    u_r = (2.0 / 3.0) * rho_gamma_pi * earth.mean_radius * earth.mean_radius
    v1k = earth.surface_first_cosmic_velocity
    c_r = 0.5 * v1k * v1k
    return PotentialBreakdown.from_parts(u_r, c_r, phi_g)


def inverse_problem(gm, u_infinity, body_radius,
                    uniform_tol=UNIFORM_TREND_TOL) -> InversionResult:
    """Characteristic radius r0 = gm / u_infinity and its classification.

    The trend is `uniform` when r0 matches the body radius within
    `uniform_tol` relative, `decreasing_outward` when r0 is interior,
    `increasing_outward` when exterior.
    """
    for name, value in (("gm", gm), ("u_infinity", u_infinity),
                        ("body_radius", body_radius)):
        if not (math.isfinite(value) and value > 0.0):
            raise NonPhysicalInputError(f"{name} must be positive, got {value!r}")
    r0 = gm / u_infinity
    depth = body_radius - r0
    if abs(r0 - body_radius) <= uniform_tol * body_radius:
        trend = DensityTrend.UNIFORM
    elif r0 < body_radius:
        trend = DensityTrend.DECREASING_OUTWARD
    else:
        trend = DensityTrend.INCREASING_OUTWARD
    return InversionResult(r0=r0, depth=depth, trend=trend)


def locate_boundary(result: InversionResult, reference: BoundaryReference):
    """Distance from r0 to a reference boundary and whether it falls in the layer.

    Returns
    -------
    (float, bool)
        (|r0 - reference.radius|, offset <= layer_half_thickness)
    """
    offset = abs(result.r0 - reference.radius)
    return offset, offset <= reference.layer_half_thickness


def homogeneity_bound(profile: RadialProfile, gamma,
                      refine=profiles.DEFAULT_REFINE) -> HomogeneityBoundReport:
    """Evaluate both sides of the surface-potential bound on a profile.

    The integral side is the center-to-surface potential of the tabulated
    body; the uniform side is (2/3)*gamma*rho_mean*pi*R^2 of its uniform
    equivalent. Centrally condensed bodies come out above the uniform
    side, so `holds` is reported, never assumed.
    """
    left = profiles.surface_potential_integral(profile, gamma, refine)
    rho0 = profiles.mean_density(profile, refine)
    right = (2.0 / 3.0) * gamma * rho0 * math.pi * profile.body_radius**2
    gap = (left - right) / right
    return HomogeneityBoundReport(
        integral_side=left,
        uniform_side=right,
        holds=gap <= _BOUND_EQUALITY_MARGIN,
        relative_gap=gap,
    )
