"""Closed-form field of a uniform sphere, taken as a positive absolute potential.

The potential is gauged so U(0) = 0 at the center of the body and grows
monotonically outward to its at-infinity limit (3/2)*gamma*M/R. The
gravity is its radial derivative; the equipotential velocity is the
circular-orbit speed sqrt(g*r) at every radius, which coincides with the
first cosmic velocity sqrt(gamma*M/r) on and outside the boundary. The
kinetic potential is the specific kinetic energy gained falling from
infinity, so potential + kinetic is the at-infinity value everywhere.

Velocity conversions (`potential_from_velocity`, `radius_from_velocity`)
are the measurement side: they recover potential or radius from an
observed velocity and local gravity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .core import DEFAULT_CONSTANTS, UniformSphere
from .errors import NonPhysicalInputError, OutOfDomainError

_DEFAULT_GAMMA = DEFAULT_CONSTANTS.gamma


@dataclass(frozen=True)
class FieldSample:
    """Field quantities bundled at one radius.

    potential + kinetic_potential equals the generating sphere's
    at-infinity potential by construction.
    """

    radius: float
    potential: float
    gravity: float
    equipotential_velocity: float
    kinetic_potential: float


def _require_radius(r):
    if not (math.isfinite(r) and r >= 0.0):
        raise NonPhysicalInputError(f"radius must be >= 0, got {r!r}")


def u_infinity_homogeneous(sphere: UniformSphere, gamma=_DEFAULT_GAMMA):
    """At-infinity potential (3/2)*gamma*M/R of a homogeneous sphere."""
    return 1.5 * (gamma * sphere.mass) / sphere.radius


def absolute_potential(sphere: UniformSphere, r, gamma=_DEFAULT_GAMMA):
    """Absolute potential at radius r, inside or outside the sphere.

    Parameters
    ----------
    sphere : UniformSphere
    r : float
        Radius of the evaluation point, m; r >= 0.
    gamma : float, optional
        Gravitational constant.

    Returns
    -------
    float
        Potential in J/kg: the interior parabola
        (2/3)*gamma*rho*pi*r^2 for r <= R, continued outside by
        (2/3)*gamma*rho*pi*R^2 - gamma*M/r + gamma*M/R. Continuous at
        r = R, where the curve has its inflection.
    """
    _require_radius(r)
    rho_gamma_pi = gamma * sphere.density * math.pi
    if r <= sphere.radius:
        return (2.0 / 3.0) * rho_gamma_pi * r * r
    gm = gamma * sphere.mass
    radius = sphere.radius
    return ((2.0 / 3.0) * rho_gamma_pi * radius * radius
            + gm / radius - gm / r)


def gravity(sphere: UniformSphere, r, gamma=_DEFAULT_GAMMA):
    """Gravitational field strength at radius r, m/s^2.

    (4/3)*gamma*pi*rho*r inside, gamma*M/r^2 outside; equals dU/dr
    everywhere and peaks at the boundary r = R.
    """
    _require_radius(r)
    if r <= sphere.radius:
        rho_gamma_pi = gamma * sphere.density * math.pi
        return (4.0 / 3.0) * rho_gamma_pi * r
    gm = gamma * sphere.mass
    return gm / (r * r)


def first_cosmic_velocity(sphere: UniformSphere, r, gamma=_DEFAULT_GAMMA):
    """Circular orbital speed sqrt(gamma*M/r), defined for r >= R only."""
    if not (math.isfinite(r) and r >= sphere.radius):
        raise OutOfDomainError(
            f"first cosmic velocity is defined on and outside the boundary "
            f"(r >= {sphere.radius}), got r = {r!r}")
    return math.sqrt(gamma * sphere.mass / r)


def equipotential_velocity(sphere: UniformSphere, r, gamma=_DEFAULT_GAMMA):
    """Circular-orbit speed sqrt(g(r)*r) of the equipotential surface at r.

    Coincides with the first cosmic velocity for r >= R; falls linearly
    to zero toward the center (g is linear in r inside).
    """
    _require_radius(r)
    return math.sqrt(gravity(sphere, r, gamma) * r)


def potential_from_velocity(u_infinity, v_s):
    """Recover the absolute potential from an observed equipotential velocity.

    Returns u_infinity - v_s**2 / 2; raises OutOfDomainError when the
    velocity term exceeds the at-infinity potential (which would imply a
    negative absolute potential).
    """
    half = 0.5 * v_s * v_s
    if half > u_infinity:
        raise OutOfDomainError(
            f"v_s^2/2 = {half!r} exceeds u_infinity = {u_infinity!r}")
    return u_infinity - half


def radius_from_velocity(v_s, g_local):
    """Radius of the equipotential surface from velocity and local gravity.

    v_s**2 / g inverts the circular-orbit relation; both inputs must be
    positive.
    """
    if not (math.isfinite(v_s) and v_s > 0.0):
        raise NonPhysicalInputError(f"v_s must be positive, got {v_s!r}")
    if not (math.isfinite(g_local) and g_local > 0.0):
        raise NonPhysicalInputError(f"g_local must be positive, got {g_local!r}")
    return v_s * v_s / g_local


def kinetic_potential(sphere: UniformSphere, r, gamma=_DEFAULT_GAMMA):
    """Specific kinetic energy of a body fallen from infinity to radius r.

    The complement of the potential: (3/2)*gamma*M/R - U(r). Maximal at
    the center, where it equals the full at-infinity potential; decays to
    zero far from the body.
    """
    _require_radius(r)
    return (u_infinity_homogeneous(sphere, gamma)
            - absolute_potential(sphere, r, gamma))


def sample_field(sphere: UniformSphere, radii, gamma=_DEFAULT_GAMMA):
    """Evaluate the field bundle at every radius in `radii`.

    Returns a list of FieldSample in input order. Raises
    NonPhysicalInputError naming the index of the first negative radius.
    """
    r = np.asarray(list(radii), dtype=np.float64)
    if r.size == 0:
        return []
    bad = np.flatnonzero(~(np.isfinite(r) & (r >= 0.0)))
    if bad.size:
        i = int(bad[0])
        raise NonPhysicalInputError(f"radii[{i}] must be >= 0, got {r[i]!r}")
    gm = gamma * sphere.mass
    rho_gamma_pi = gamma * sphere.density * math.pi
    u_inf = u_infinity_homogeneous(sphere, gamma)
    u, g, vs, kin = kernels.field_arrays(gm, sphere.radius, rho_gamma_pi,
                                         u_inf, r)
    return [FieldSample(float(ri), float(ui), float(gi), float(vi), float(ki))
            for ri, ui, gi, vi, ki in zip(r, u, g, vs, kin)]
