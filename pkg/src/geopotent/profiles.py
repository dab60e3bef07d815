"""Numerics over tabulated radial profiles.

Both columns of a profile are interpolated piecewise-linearly (splines
would overshoot at sharp density jumps and could break the monotonicity
and positivity the analysis relies on). Integrals use composite Simpson
on a refined grid, ten substeps per knot interval by default, which is
exact for the piecewise-cubic mass integrand and converges far below
test tolerances for everything else. Below the first sampled radius the
innermost density is extended as a constant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .core import RadialProfile
from .errors import DegenerateProfileError, OutOfDomainError

DEFAULT_REFINE = 10


@dataclass(frozen=True)
class GradPResult:
    """Location and size of the steepest pressure gradient."""

    radius_at_max: float
    pressure_at_max: float
    gradient_magnitude: float


def interpolate(profile: RadialProfile, r):
    """Density and pressure at radius r within the sampled range.

    Returns
    -------
    (float, float)
        (density kg/m^3, pressure Pa), linear between knots, exact at them.
    """
    if not (profile.radii[0] <= r <= profile.body_radius):
        raise OutOfDomainError(
            f"r = {r!r} outside sampled range "
            f"[{profile.radii[0]}, {profile.body_radius}]")
    return (float(np.interp(r, profile.radii, profile.densities)),
            float(np.interp(r, profile.radii, profile.pressures)))


def _mass_to(profile, r, refine):
    # integration knots: 0, every sampled radius below r, then r itself
    inner = profile.radii[profile.radii < r]
    if inner.size == 0 or inner[0] > 0.0:
        inner = np.concatenate(([0.0], inner))
    knots = np.concatenate([inner, [r]])
    grid = kernels.refined_grid(knots, refine)
    mids = 0.5 * (grid[:-1] + grid[1:])
    rho = np.interp(grid, profile.radii, profile.densities)
    rho_mid = np.interp(mids, profile.radii, profile.densities)
    return grid, kernels.cumulative_mass(grid, rho, rho_mid)


def enclosed_mass(profile: RadialProfile, r, refine=DEFAULT_REFINE):
    """Mass inside radius r: integral of 4*pi*s^2*rho(s) from the center.

    Monotone non-decreasing in r; zero at r = 0.
    """
    if not (0.0 <= r <= profile.body_radius):
        raise OutOfDomainError(
            f"r = {r!r} outside [0, {profile.body_radius}]")
    if r == 0.0:
        return 0.0
    _, mass = _mass_to(profile, r, refine)
    return float(mass[-1])


def surface_potential_integral(profile: RadialProfile, gamma,
                               refine=DEFAULT_REFINE):
    """gamma * integral of M(s)/s^2 from the first sampled radius to the surface.

    The center-to-surface potential of the tabulated body. The integrand
    is finite at s -> 0 for bounded density (M ~ s^3), so a profile
    starting at zero radius poses no difficulty.
    """
    first = profile.radii[0]
    if first > 0.0:
        knots = np.concatenate(([0.0], profile.radii))
        skip_blocks = 1
    else:
        knots = profile.radii
        skip_blocks = 0
    grid = kernels.refined_grid(knots, refine)
    mids = 0.5 * (grid[:-1] + grid[1:])
    rho = np.interp(grid, profile.radii, profile.densities)
    rho_mid = np.interp(mids, profile.radii, profile.densities)
    mass = kernels.cumulative_mass(grid, rho, rho_mid)
    f = np.zeros_like(grid)
    nz = grid > 0.0
    f[nz] = mass[nz] / grid[nz] ** 2
    return gamma * kernels.integral_m_over_r2(grid, f, refine, skip_blocks)


def pressure_gradient_max(profile: RadialProfile, refine=DEFAULT_REFINE):
    """Interior radius where |dP/dr| of the interpolant is largest.

    Central differences on a uniform grid with step = (smallest sample
    spacing) / refine. The two boundary grid points are excluded so the
    result is strictly interior; plateau ties resolve toward smaller r.

    Raises
    ------
    DegenerateProfileError
        If the pressure is constant (no gradient maximum exists).
    """
    first = float(profile.radii[0])
    body = profile.body_radius
    step = float(np.min(np.diff(profile.radii))) / refine
    n = max(int(math.ceil((body - first) / step)) + 1, 5)
    grid = np.linspace(first, body, n)
    p = np.interp(grid, profile.radii, profile.pressures)
    idx, grad = kernels.max_abs_gradient(grid, p)
    if grad <= 0.0:
        raise DegenerateProfileError(
            "pressure is constant; the gradient has no maximum")
    return GradPResult(float(grid[idx]), float(p[idx]), grad)


def mean_density(profile: RadialProfile, refine=DEFAULT_REFINE):
    """Total tabulated mass divided by the body volume, kg/m^3."""
    total = enclosed_mass(profile, profile.body_radius, refine)
    return total / ((4.0 / 3.0) * math.pi * profile.body_radius**3)


def core_equilibrium_gravity(profile: RadialProfile, core_radius,
                             refine=DEFAULT_REFINE):
    """Mean field strength balancing the pressure on a core surface.

    P(core) * 4*pi*core^2 / (M_total - M(core)): the force pressing on
    the core boundary divided by the mass outside it.
    """
    if not (0.0 < core_radius < profile.body_radius):
        raise OutOfDomainError(
            f"core_radius = {core_radius!r} must lie strictly inside "
            f"(0, {profile.body_radius})")
    _, pressure = interpolate(profile, core_radius)
    area = 4.0 * math.pi * core_radius**2
    outside = (enclosed_mass(profile, profile.body_radius, refine)
               - enclosed_mass(profile, core_radius, refine))
    return pressure * area / outside
