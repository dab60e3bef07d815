import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from geopotent import (
    AnomalySource,
    BackgroundState,
    crossover_radius,
    detectability_report,
    point_mass_signal,
    sensitivity_coefficients,
    sphere_anomaly,
)
from geopotent.errors import NonPhysicalInputError, OutOfDomainError

from conftest import GAMMA

# Background used in the worked examples: compression-free surface
# potential as u0, surface gravity, and the reported at-infinity value.
BACKGROUND = BackgroundState(u0=6.258e7, g0=9.823, u_infinity=11.1652e7)

GAS_CAVITY = AnomalySource(depth=5000.0, radius=500.0,
                           density_contrast=-2700.0)


class TestSensitivityCoefficients:
    def test_crossover_equality_exact(self):
        r0 = 734.2
        pair = sensitivity_coefficients(2.0 * r0, r0)
        assert pair.k1 == pair.k2
        assert pair.k1 == pytest.approx((8.0 / 3.0) * math.pi * GAMMA,
                                        rel=1e-12)

    def test_ratio_grows_linearly(self):
        pair = sensitivity_coefficients(4.0, 1.0)
        assert pair.ratio == pytest.approx(2.0, rel=1e-12)

    def test_near_source_gravity_wins(self):
        pair = sensitivity_coefficients(1.0, 1.0)
        assert pair.k1 < pair.k2
        assert pair.ratio == pytest.approx(0.5, rel=1e-12)

    def test_crossover_biconditional_random_pairs(self):
        rng = np.random.default_rng(67)
        r = 10.0 ** rng.uniform(-3, 6, 10_000)
        r0 = 10.0 ** rng.uniform(-3, 6, 10_000)
        for ri, r0i in zip(r, r0):
            pair = sensitivity_coefficients(ri, r0i)
            assert (pair.k1 > pair.k2) == (ri > 2.0 * r0i)

    @settings(max_examples=300)
    @given(x=st.floats(1e-6, 1e6))
    def test_crossover_in_reduced_coordinate(self, x):
        pair = sensitivity_coefficients(x, 1.0)
        assert (pair.k1 > pair.k2) == (x > 2.0)

    def test_rejects_non_positive(self):
        with pytest.raises(NonPhysicalInputError):
            sensitivity_coefficients(0.0, 1.0)
        with pytest.raises(NonPhysicalInputError):
            sensitivity_coefficients(1.0, -1.0)


class TestCrossoverRadius:
    def test_values(self):
        assert crossover_radius(1.0) == 2.0
        assert crossover_radius(500.0) == 1000.0

    def test_consistent_with_coefficients(self):
        rng = np.random.default_rng(71)
        for r0 in 10.0 ** rng.uniform(-3, 6, 100):
            pair = sensitivity_coefficients(crossover_radius(r0), r0)
            assert pair.ratio == pytest.approx(1.0, rel=1e-12)

    def test_rejects_non_positive(self):
        with pytest.raises(NonPhysicalInputError):
            crossover_radius(0.0)


class TestSphereAnomaly:
    def test_gas_cavity_worked_example(self):
        # oracle values recomputed by hand: dM = (4/3) pi 500^3 (-2700)
        sig = sphere_anomaly(GAS_CAVITY, BACKGROUND)
        delta_m = (4.0 / 3.0) * math.pi * 500.0**3 * (-2700.0)
        assert delta_m == pytest.approx(-1.4137e12, rel=1e-4)
        assert sig.delta_u == pytest.approx(GAMMA * delta_m / 5000.0, rel=1e-12)
        assert sig.delta_u == pytest.approx(-1.887e-2, rel=1e-3)
        assert sig.delta_g == pytest.approx(-3.774e-6, rel=1e-3)
        # first-order oracle for the velocity shift: |delta_u| / v_s0
        v_s0 = math.sqrt(2.0 * (BACKGROUND.u_infinity - BACKGROUND.u0))
        assert sig.delta_v_s == pytest.approx(-sig.delta_u / v_s0, rel=1e-4)
        assert sig.delta_v_s == pytest.approx(1.905e-6, rel=1e-3)

    def test_gas_cavity_sign_pattern(self):
        sig = sphere_anomaly(GAS_CAVITY, BACKGROUND)
        assert sig.delta_u < 0.0
        assert sig.delta_g < 0.0
        assert sig.delta_v_s > 0.0
        assert sig.relative_u < 0.0 and sig.relative_g < 0.0

    def test_dense_body_sign_pattern(self):
        ore = AnomalySource(depth=5000.0, radius=500.0, density_contrast=1500.0)
        sig = sphere_anomaly(ore, BACKGROUND)
        assert sig.delta_u > 0.0
        assert sig.delta_g > 0.0
        assert sig.delta_v_s < 0.0

    def test_zero_mass_gives_zero_signal(self):
        sig = point_mass_signal(0.0, 5000.0, BACKGROUND)
        assert sig.delta_u == 0.0
        assert sig.delta_g == 0.0
        assert sig.delta_v_s == 0.0

    def test_linear_in_contrast(self):
        doubled = AnomalySource(depth=5000.0, radius=500.0,
                                density_contrast=-5400.0)
        one = sphere_anomaly(GAS_CAVITY, BACKGROUND)
        two = sphere_anomaly(doubled, BACKGROUND)
        assert two.delta_u == pytest.approx(2.0 * one.delta_u, rel=1e-12)
        assert two.delta_g == pytest.approx(2.0 * one.delta_g, rel=1e-12)
        # the velocity response is nonlinear; only sign and growth are
        # guaranteed
        assert two.delta_v_s > one.delta_v_s > 0.0

    def test_antisymmetry_exact(self):
        flipped = AnomalySource(depth=5000.0, radius=500.0,
                                density_contrast=2700.0)
        neg = sphere_anomaly(GAS_CAVITY, BACKGROUND)
        pos = sphere_anomaly(flipped, BACKGROUND)
        assert pos.delta_u == -neg.delta_u
        assert pos.delta_g == -neg.delta_g

    def test_perturbation_beyond_u_infinity_rejected(self):
        with pytest.raises(OutOfDomainError):
            point_mass_signal(1e30, 1000.0, BACKGROUND)

    def test_invalid_background_rejected(self):
        upside_down = BackgroundState(u0=2.0, g0=9.8, u_infinity=1.0)
        with pytest.raises(OutOfDomainError):
            point_mass_signal(1.0, 1000.0, upside_down)


class TestDetectabilityReport:
    def test_single_offset_advantage(self):
        rows = detectability_report(GAS_CAVITY, [GAS_CAVITY.depth], BACKGROUND)
        assert len(rows) == 1
        expected = GAS_CAVITY.depth * BACKGROUND.g0 / BACKGROUND.u0
        assert rows[0].advantage == pytest.approx(expected, rel=1e-12)

    def test_advantage_linear_in_offset(self):
        offsets = [5000.0, 10000.0, 20000.0]
        rows = detectability_report(GAS_CAVITY, offsets, BACKGROUND)
        base = rows[0].advantage / offsets[0]
        for row, off in zip(rows, offsets):
            assert row.advantage == pytest.approx(base * off, rel=1e-12)

    def test_raw_ratio_doubles_with_offset(self):
        rows = detectability_report(GAS_CAVITY, [5000.0, 10000.0], BACKGROUND)
        ratio = [r.relative_u / r.relative_g for r in rows]
        assert ratio[1] == pytest.approx(2.0 * ratio[0], rel=1e-12)

    def test_empty_offsets(self):
        assert detectability_report(GAS_CAVITY, [], BACKGROUND) == []

    def test_offset_closer_than_depth_rejected(self):
        with pytest.raises(OutOfDomainError):
            detectability_report(GAS_CAVITY, [1000.0], BACKGROUND)
