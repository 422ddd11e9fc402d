"""Tests for impact functions, dynamics, penalties and local coefficients."""

import math

import numpy as np
import pytest

from stochimpact_cli.cli.exceptions import ValidationError
from stochimpact_cli.src.core.exceptions import (
    DegenerateZeta,
    NonPositiveTemporaryImpact,
    NotApplicable,
    SingularDenominator,
)
from stochimpact_cli.src.engine.model import (
    DiffusionSpec,
    ImpactFunction,
    ImpactKind,
    MarketModel,
    PenaltyParams,
    Regime,
    feller_check,
    local_coefficients,
    refit_penalties,
)


class TestImpactFunction:
    """ImpactFunction builtins and user-defined callables."""

    def test_linear_value_and_derivative(self):
        f = ImpactFunction.linear(slope=2.0, intercept=0.5)
        assert f.kind is ImpactKind.LINEAR
        assert f.value(3.0) == pytest.approx(6.5)
        assert f.derivative(3.0) == pytest.approx(2.0)

    def test_polynomial_is_vectorized(self):
        f = ImpactFunction.polynomial([1.0, 0.0, 3.0])
        x = np.array([0.0, 1.0, 2.0])
        np.testing.assert_allclose(f.value(x), [1.0, 4.0, 13.0])
        np.testing.assert_allclose(f.derivative(x), [0.0, 6.0, 12.0])

    def test_polynomial_needs_coefficients(self):
        with pytest.raises(ValidationError):
            ImpactFunction.polynomial([])

    def test_user_defined_accepts_consistent_derivative(self):
        f = ImpactFunction.user_defined(np.sqrt, lambda x: 0.5 / np.sqrt(x), [1e-4, 0.5, 2.0])
        assert f.value(4.0) == pytest.approx(2.0)
        assert f.derivative(4.0) == pytest.approx(0.25)

    def test_user_defined_rejects_wrong_derivative(self):
        with pytest.raises(ValidationError) as exc_info:
            ImpactFunction.user_defined(np.square, lambda x: x, [1.0])
        assert exc_info.value.field == "impact.derivative"

    def test_user_defined_needs_both_callables(self):
        with pytest.raises(ValidationError):
            ImpactFunction(ImpactKind.USER, user_value=np.sqrt)


class TestDiffusionSpec:
    """CIR, user-defined and constant dynamics."""

    def test_cir_coefficients(self):
        spec = DiffusionSpec.cir(2.0, 0.5, 0.1)
        assert spec.is_cir
        assert spec.drift(1.0) == pytest.approx(-1.0)
        assert spec.diffusion(0.25) == pytest.approx(0.05)

    def test_cir_diffusion_clips_negative_states(self):
        spec = DiffusionSpec.cir(1.0, 1.0, 1.0)
        assert spec.diffusion(-1.0) == 0.0

    def test_cir_parameters_must_be_positive(self):
        with pytest.raises(ValidationError):
            DiffusionSpec.cir(0.0, 1.0, 1.0)

    def test_constant_dynamics_are_frozen(self):
        spec = DiffusionSpec.constant()
        assert not spec.is_cir
        np.testing.assert_array_equal(spec.drift(np.array([1.0, 2.0])), [0.0, 0.0])
        assert spec.diffusion(3.0) == 0.0

    def test_feller_check(self):
        assert feller_check(DiffusionSpec.cir(1.0, 1e-4, 8e-3))
        assert not feller_check(DiffusionSpec.cir(1.0, 1e-4, 1.0))

    def test_feller_check_not_applicable_for_user_dynamics(self):
        with pytest.raises(NotApplicable):
            feller_check(DiffusionSpec.constant())


class TestParameters:
    """MarketModel and PenaltyParams validation."""

    def test_rho_out_of_range(self, example2_model):
        with pytest.raises(ValidationError) as exc_info:
            MarketModel(
                example2_model.f,
                example2_model.g,
                example2_model.a_dyn,
                example2_model.b_dyn,
                rho=1.5,
                sigma=0.2,
            )
        assert exc_info.value.field == "model.rho"

    def test_zero_sigma_is_allowed(self, example2_model):
        model = MarketModel(
            example2_model.f,
            example2_model.g,
            example2_model.a_dyn,
            example2_model.b_dyn,
            rho=0.0,
            sigma=0.0,
        )
        assert model.sigma == 0.0

    @pytest.mark.parametrize(
        ("kwargs", "field"),
        [
            ({"kappa": 10.0, "phi": 0.01, "T": 0.0}, "penalties.T"),
            ({"kappa": 0.0, "phi": 0.01, "T": 1.0}, "penalties.kappa"),
            ({"kappa": 10.0, "phi": -1.0, "T": 1.0}, "penalties.phi"),
            ({"kappa": 10.0, "phi": 0.0, "T": 1.0}, "penalties.phi"),
        ],
    )
    def test_invalid_penalties(self, kwargs, field):
        with pytest.raises(ValidationError) as exc_info:
            PenaltyParams(**kwargs)
        assert exc_info.value.field == field

    def test_phi_zero_allowed_in_phi_zero_regime(self):
        p = PenaltyParams(kappa=1.0, phi=0.0, T=1.0, regime=Regime.KAPPA_INFINITY_PHI_ZERO)
        assert p.regime.is_limiting
        assert not Regime.NONLIMITING.is_limiting


class TestLocalCoefficients:
    """Taylor data, gamma and zeta."""

    def test_example2_values(self, example2_model, nonlimiting):
        co = local_coefficients(example2_model, nonlimiting, 1e-4, 5e-4)
        assert co.f0 == pytest.approx(1e-4)
        assert co.g0 == pytest.approx(5e-4)
        assert co.df0 == pytest.approx(1.0)
        assert co.dg0 == pytest.approx(1.0)
        assert co.mu0 == pytest.approx(0.0)
        assert co.om0sq_half == pytest.approx(0.5 * 8e-3**2 * 1e-4)
        assert co.rho_om_psi0 == pytest.approx(0.7 * 8e-3**2 * math.sqrt(1e-4 * 5e-4))
        assert co.gamma == pytest.approx(10.0)
        root = math.sqrt(0.01 * 1e-4)
        shifted = 10.0 - 2.5e-4
        assert co.zeta == pytest.approx((shifted + root) / (shifted - root), rel=1e-14)
        assert co.zeta_minus_one == pytest.approx(2 * root / (shifted - root), rel=1e-14)

    def test_limiting_regimes_use_unit_zeta(self, example2_model, kappa_infinity, phi_zero):
        co = local_coefficients(example2_model, kappa_infinity, 1e-4, 5e-4)
        assert co.zeta == 1.0
        assert co.zeta_minus_one == 0.0
        assert co.gamma == pytest.approx(10.0)
        assert local_coefficients(example2_model, phi_zero, 1e-4, 5e-4).gamma == 0.0

    def test_arrays_of_expansion_points(self, example2_model, nonlimiting):
        a = np.array([1e-4, 4e-4])
        co = local_coefficients(example2_model, nonlimiting, a, np.array([5e-4, 5e-4]))
        np.testing.assert_allclose(co.gamma, [10.0, 5.0])

    def test_non_positive_impact_reports_positions(self, example2_model, nonlimiting):
        with pytest.raises(NonPositiveTemporaryImpact) as exc_info:
            local_coefficients(
                example2_model, nonlimiting, np.array([1e-4, -1e-4, 0.0]), np.full(3, 5e-4)
            )
        assert exc_info.value.positions == (1, 2)
        assert exc_info.value.exit_code == 4

    def test_degenerate_zeta(self, example2_model):
        # kappa - g0/2 = sqrt(phi * f0) exactly
        penalties = PenaltyParams(kappa=2.5e-4 + 1e-3, phi=0.01, T=1.0)
        with pytest.raises(DegenerateZeta):
            local_coefficients(example2_model, penalties, 1e-4, 5e-4)

    def test_singular_denominator_inside_horizon(self, example2_model):
        # kappa well below g0/2 puts zeta in (0, 1): theta0 blows up shortly before T
        steep = MarketModel(
            example2_model.f,
            ImpactFunction.linear(slope=100.0),
            example2_model.a_dyn,
            example2_model.b_dyn,
            rho=0.7,
            sigma=0.2,
        )
        penalties = PenaltyParams(kappa=0.005, phi=0.01, T=1.0)
        with pytest.raises(SingularDenominator) as exc_info:
            local_coefficients(steep, penalties, 1e-4, 5e-4)
        assert 0.99 < exc_info.value.blowup_time < 1.0

    def test_refit_penalties_keeps_taylor_data(self, example2_model, nonlimiting):
        co = local_coefficients(example2_model, nonlimiting, 1e-4, 5e-4)
        refit = refit_penalties(co, PenaltyParams(kappa=1e8, phi=0.04, T=1.0))
        assert refit.f0 == co.f0
        assert refit.gamma == pytest.approx(20.0)
        assert refit.zeta_minus_one < co.zeta_minus_one
