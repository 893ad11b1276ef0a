"""Tests for the core value types and mode operations."""

import math
import os
import sys

import numpy as np
import pytest

# Add parent directory to path for imports
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from src.core import (
    ModeState,
    ModelKind,
    PhysicalConstants,
    QuadraticModel,
    SqueezeParams,
    VariancePair,
    bogoliubov_coeffs,
    is_maximally_classical,
    squeeze_mode,
    variances,
    wronskian,
    wronskian_drift,
)
from src.errors import (
    ExpressionSyntaxError,
    ModelEvaluationError,
    OverdampedUnsupported,
    ValidationError,
    WronskianDriftExceeded,
    ZeroAmplitude,
    with_context,
)
from src.models import free_mode, oscillator_mode


class TestValueTypes:
    """Validation of the frozen value types."""

    def test_hbar_must_be_positive(self):
        """A zero or negative hbar is rejected."""
        with pytest.raises(ValidationError):
            PhysicalConstants(hbar=0.0)
        with pytest.raises(ValidationError):
            PhysicalConstants(hbar=-1.0)

    def test_squeeze_magnitude_range(self):
        """r must lie in [0, 50]."""
        with pytest.raises(ValidationError):
            SqueezeParams(r=-0.1)
        with pytest.raises(ValidationError):
            SqueezeParams(r=51.0)
        assert SqueezeParams(r=50.0).r == 50.0

    def test_theta_is_reduced(self):
        """Angles are stored modulo 2 pi in [0, 2 pi)."""
        assert SqueezeParams(r=1.0, theta=2 * math.pi + 0.5).theta == pytest.approx(0.5, abs=1e-12)
        assert SqueezeParams(r=1.0, theta=-math.pi / 2).theta == pytest.approx(1.5 * math.pi, abs=1e-12)
        assert 0.0 <= SqueezeParams(r=1.0, theta=-1e-18).theta < 2 * math.pi

    def test_mode_rejects_zero_state(self):
        """u and du cannot both vanish."""
        with pytest.raises(ValidationError):
            ModeState(t=0.0, u=0, du=0)

    def test_mode_rejects_non_finite(self):
        """NaN amplitudes are rejected."""
        with pytest.raises(ValidationError):
            ModeState(t=0.0, u=complex(float("nan"), 0), du=1)

    def test_variance_pair_positive(self):
        """Standard deviations must be positive."""
        with pytest.raises(ValidationError):
            VariancePair(dx=0.0, dp=1.0)
        assert VariancePair(dx=0.5, dp=1.0).uncertainty_ratio() == pytest.approx(1.0)


class TestQuadraticModel:
    """Factories and evaluation of the Hamiltonian description."""

    def test_named_kinds(self):
        """Factories tag the model kind and keep the parameters."""
        assert QuadraticModel.free_particle(2.0).kind is ModelKind.FREE
        osc = QuadraticModel.oscillator(1.0, 3.0)
        assert osc.kind is ModelKind.OSCILLATOR
        assert osc.evaluate(1.7) == (1.0, 9.0, 0.0)

    def test_caldirola_kanai_mass_grows(self):
        """m(t) = m0 e^(gamma t)."""
        ck = QuadraticModel.caldirola_kanai(2.0, 1.0, 0.6)
        assert ck.mass_at(1.5) == pytest.approx(2.0 * math.exp(0.9), rel=1e-14)
        assert ck.damped_frequency == pytest.approx(math.sqrt(1.0 - 0.09), rel=1e-14)

    def test_overdamped_rejected(self):
        """omega0 <= gamma/2 is outside the supported branch."""
        with pytest.raises(OverdampedUnsupported):
            QuadraticModel.caldirola_kanai(1.0, 0.3, 0.6)
        with pytest.raises(OverdampedUnsupported):
            QuadraticModel.caldirola_kanai(1.0, 1.0, 2.5)

    def test_characteristic_time(self):
        """Time scales used for integration spans."""
        assert QuadraticModel.free_particle(3.0).characteristic_time == 3.0
        assert QuadraticModel.oscillator(1.0, 4.0).characteristic_time == 0.25
        ck = QuadraticModel.caldirola_kanai(1.0, 1.0, 0.6)
        assert ck.characteristic_time == pytest.approx(1.0 / math.sqrt(0.91))

    def test_negative_mass_rejected(self):
        """evaluate refuses m <= 0."""
        model = QuadraticModel.custom(mass=lambda t: 1.0 - t, omega_sq=lambda t: 1.0)
        assert model.evaluate(0.5)[0] == 0.5
        with pytest.raises(ModelEvaluationError):
            model.evaluate(2.0)

    def test_mass_rate_central(self):
        """The difference quotient reproduces gamma m0 e^(gamma t)."""
        model = QuadraticModel.caldirola_kanai(2.0, 1.0, 0.6)
        assert model.mass_rate(1.0) == pytest.approx(0.6 * 2.0 * math.exp(0.6), rel=1e-8)
        assert QuadraticModel.oscillator(1.0, 1.0).mass_rate(3.0) == 0.0

    def test_mass_rate_forward_at_domain_edge(self):
        """A mass undefined before t falls back to a forward difference."""
        model = QuadraticModel.custom(mass=lambda t: math.exp(math.sqrt(t) ** 2), omega_sq=lambda t: 1.0)
        assert model.mass_rate(0.0) == pytest.approx(1.0, rel=1e-6)

    def test_failing_function_wrapped(self):
        """Exceptions from model functions become ModelEvaluationError."""
        model = QuadraticModel.custom(mass=lambda t: math.sqrt(t - 1.0), omega_sq=lambda t: 1.0)
        with pytest.raises(ModelEvaluationError):
            model.evaluate(0.0)


class TestModes:
    """Wronskian, variances and squeezing."""

    def test_closed_form_modes_normalized(self):
        """Closed-form modes satisfy m (u du* - du u*) = i."""
        assert wronskian(free_mode(1.0, 0.0), 1.0) == pytest.approx(1j, abs=1e-15)
        assert wronskian_drift(oscillator_mode(2.0, 3.0, 0.7), 2.0) < 1e-14

    def test_minimum_uncertainty_variances(self):
        """The oscillator ground mode has dx dp = hbar / 2."""
        v = variances(oscillator_mode(1.0, 1.0, 0.0), 1.0)
        assert v.dx == pytest.approx(1 / math.sqrt(2))
        assert v.dp == pytest.approx(1 / math.sqrt(2))
        assert v.dx * v.dp == pytest.approx(0.5)

    def test_variances_scale_with_hbar(self):
        """dx and dp scale with sqrt(hbar)."""
        mode = oscillator_mode(1.0, 1.0, 0.0)
        v = variances(mode, 1.0, PhysicalConstants(hbar=4.0))
        assert v.dx == pytest.approx(2 / math.sqrt(2))
        assert v.uncertainty_ratio(PhysicalConstants(hbar=4.0)) == pytest.approx(1.0)

    def test_zero_amplitude(self):
        """A vanishing u cannot give a variance."""
        with pytest.raises(ZeroAmplitude):
            variances(ModeState(t=0.0, u=0, du=1), 1.0)

    def test_bogoliubov_normalization(self):
        """|alpha|^2 - |beta|^2 = 1."""
        alpha, beta = bogoliubov_coeffs(SqueezeParams(r=1.7, theta=2.2))
        assert abs(alpha) ** 2 - abs(beta) ** 2 == pytest.approx(1.0, rel=1e-12)

    def test_squeeze_preserves_wronskian(self):
        """Squeezing keeps the normalization."""
        squeezed = squeeze_mode(oscillator_mode(1.0, 1.0, 0.3), SqueezeParams(r=1.3, theta=0.7))
        assert wronskian_drift(squeezed, 1.0) < 1e-12

    def test_variances_ignore_global_phase(self):
        """A global phase on the mode leaves dx and dp unchanged."""
        for mode, m in ((free_mode(1.0, 1.3), 1.0), (oscillator_mode(2.0, 0.5, 0.8), 2.0)):
            plain = variances(mode, m)
            for phi in (0.3, math.pi / 2, 4.0):
                rotated = variances(mode.with_phase(phi), m)
                assert rotated.dx == pytest.approx(plain.dx, rel=1e-14)
                assert rotated.dp == pytest.approx(plain.dp, rel=1e-14)

    def test_squeeze_preserves_wronskian_random(self):
        """Random (r <= 5, theta) pairs keep m (u du* - du u*) = i up to rounding."""
        rng = np.random.default_rng(7)
        refs = [(free_mode(1.0, 0.6), 1.0), (oscillator_mode(1.3, 0.8, 2.1), 1.3)]
        for _ in range(200):
            sq = SqueezeParams(r=float(rng.uniform(0.0, 5.0)), theta=float(rng.uniform(0.0, 2 * math.pi)))
            ref, m = refs[int(rng.integers(len(refs)))]
            assert wronskian_drift(squeeze_mode(ref, sq), m) < 1e-13 * math.cosh(sq.r) ** 2

    def test_zero_squeeze_is_identity(self):
        """r = 0 returns the reference mode itself."""
        ref = free_mode(1.0, 0.4)
        assert squeeze_mode(ref, SqueezeParams(r=0.0, theta=1.0)) is ref

    @pytest.mark.parametrize("r", [0.25, 0.5, 1.0])
    def test_squeezed_free_product(self, r):
        """At t = 0 and theta = pi/2 the product dx dp is cosh(2r)/2."""
        v = variances(squeeze_mode(free_mode(1.0, 0.0), SqueezeParams(r=r, theta=math.pi / 2)), 1.0)
        assert v.dx * v.dp == pytest.approx(math.cosh(2 * r) / 2, rel=1e-13)

    def test_maximally_classical(self):
        """r = 0 or theta in {0, pi}."""
        assert is_maximally_classical(SqueezeParams(r=0.0, theta=1.0))
        assert is_maximally_classical(SqueezeParams(r=1.0, theta=0.0))
        assert is_maximally_classical(SqueezeParams(r=1.0, theta=math.pi))
        assert not is_maximally_classical(SqueezeParams(r=1.0, theta=math.pi / 2))


class TestErrorContext:
    """Grid-point context attached to errors."""

    def test_context_keeps_class_and_fields(self):
        """with_context returns the same class with its attributes."""
        error = ExpressionSyntaxError("expected a number", "1 +", 3)
        augmented = with_context(error, r=0.5, t=1.0)
        assert type(augmented) is ExpressionSyntaxError
        assert augmented.offset == 3
        assert "r=0.5" in str(augmented) and "t=1.0" in str(augmented)
        assert augmented.__cause__ is error

    def test_context_on_drift_error(self):
        """Drift details survive the augmentation."""
        error = WronskianDriftExceeded("drift", t=2.0, drift=1e-6)
        augmented = with_context(error, theta=0.1)
        assert augmented.t == 2.0 and augmented.drift == 1e-6


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
