import collections
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from aqg_lab.analysis import l2_norm, random_field
from aqg_lab.core.errors import (
    CFLViolation,
    FieldError,
    ParameterError,
    SimulationDiverged,
)
from aqg_lab.dynamics import (
    INTEGRATORS,
    Branch,
    DiagnosticsRecord,
    DissipationParams,
    Integrator,
    Simulation,
    SimulationState,
    SolverConfig,
    classify_region,
    energy_budget,
    get_integrator,
    linear_propagator,
    region_threshold,
    register_integrator,
    run,
    step,
)
from aqg_lab.spectral import Grid, SpectralField

LINEAR = dict(s_diag=(0.0, 1.0), p_diag=(2.0, math.inf), delta_list=(1.0, 2.0), nonlinear=False)


def final_state(theta0, params, config) -> SimulationState:
    simulation = Simulation(theta0, params, config)
    collections.deque(simulation.records(), maxlen=0)
    return simulation.state


class TestRegionGate:
    def test_boundary_is_strict(self):
        region = classify_region(0.75, 1.0 / 6.0)
        assert region.threshold == pytest.approx(1.0 / 6.0, abs=1e-16)
        assert not region.satisfies_11

    def test_margin_inside_high_alpha_branch(self):
        region = classify_region(0.75, 0.75)
        assert region.satisfies_11
        assert region.branch == Branch.HIGH_ALPHA
        assert region.margin == pytest.approx(0.75 - 1.0 / 6.0)
        assert region.margin == pytest.approx(0.583, abs=1e-3)

    def test_low_alpha_branch(self):
        region = classify_region(0.25, 0.7)
        assert region.branch == Branch.LOW_ALPHA
        assert region.threshold == pytest.approx(1.0 / 1.5)
        assert region.satisfies_11
        assert not classify_region(0.25, 0.6).satisfies_11

    def test_threshold_is_continuous_at_one_half(self):
        assert region_threshold(0.5) == pytest.approx(0.5)
        assert region_threshold(0.5 - 1e-9) == pytest.approx(0.5, abs=1e-8)
        assert region_threshold(0.5 + 1e-9) == pytest.approx(0.5, abs=1e-8)
        assert classify_region(0.5, 0.5).branch == Branch.LOW_ALPHA

    def test_admissible_sobolev_index(self):
        high = classify_region(0.75, 0.6)
        assert high.s_min == pytest.approx(0.8)
        assert high.s_min_exclusive
        assert high.admits(1.0) and not high.admits(0.8)
        low = classify_region(0.25, 0.7)
        assert low.s_min == 2.0 and not low.s_min_exclusive
        assert low.admits(2.0) and not low.admits(1.0)
        outside = classify_region(0.25, 0.5)
        assert outside.s_min is None and not outside.admits(3.0)

    @pytest.mark.parametrize("alpha, beta", [(1.0, 0.5), (0.0, 0.5), (0.5, 1.2)])
    def test_orders_outside_unit_interval(self, alpha, beta):
        with pytest.raises(ParameterError, match=r"open interval \(0,1\)"):
            classify_region(alpha, beta)

    @given(
        alpha=st.floats(min_value=1e-3, max_value=1 - 1e-3),
        beta=st.floats(min_value=1e-3, max_value=1 - 1e-3),
    )
    @settings(max_examples=200, deadline=None)
    def test_classification_property(self, alpha, beta):
        region = classify_region(alpha, beta)
        if alpha <= 0.5:
            assert region.branch == Branch.LOW_ALPHA
            assert region.satisfies_11 == (beta > 1.0 / (2.0 * alpha + 1.0))
        else:
            assert region.branch == Branch.HIGH_ALPHA
            assert region.satisfies_11 == (beta > (1.0 - alpha) / (2.0 * alpha))
        assert region.margin == beta - region.threshold


class TestParams:
    def test_isotropic(self):
        assert DissipationParams(mu=2.0, nu=2.0, alpha=0.6, beta=0.6).is_isotropic
        assert not DissipationParams(alpha=0.6, beta=0.7).is_isotropic

    def test_rejects_non_positive_coefficients(self):
        with pytest.raises(ParameterError):
            DissipationParams(mu=0.0)

    def test_symbol(self, grid16):
        params = DissipationParams(mu=2.0, nu=3.0, alpha=0.5, beta=0.25)
        symbol = params.symbol(grid16)
        assert symbol[grid16.mode_slot(2, 4)] == pytest.approx(2.0 * 2.0 + 3.0 * 2.0)

    def test_solver_config_validation(self):
        with pytest.raises(ParameterError):
            SolverConfig(dt=0.0, t_end=1.0)
        with pytest.raises(ParameterError):
            SolverConfig(dt=0.1, t_end=1.0, cfl_safety=1.5)
        with pytest.raises(ParameterError):
            SolverConfig(dt=0.1, t_end=1.0, delta_list=(0.0,))
        assert SolverConfig(dt=0.1, t_end=1.0, s_diag=[0, 2]).s_diag == (0.0, 2.0)


class TestIntegrators:
    def test_registry(self):
        assert get_integrator("IFRK4").order == 4
        assert get_integrator("IFEuler").order == 1
        with pytest.raises(ParameterError):
            get_integrator("RK45")

    def test_linear_propagator(self, sine, grid16):
        theta = sine(grid16, 1, 2)
        params = DissipationParams(alpha=0.5, beta=0.5)
        assert linear_propagator(theta, params, 0.0) is theta
        out = linear_propagator(theta, params, 0.3)
        np.testing.assert_allclose(out.coefficients, math.exp(-0.3 * 3.0) * theta.coefficients)
        with pytest.raises(ParameterError):
            linear_propagator(theta, params, -0.1)

    @pytest.mark.parametrize("name", ["IFRK4", "IFEuler"])
    def test_linear_step_is_exact(self, make_field, grid16, name):
        theta = make_field(grid16)
        params = DissipationParams(alpha=0.4, beta=0.9)
        config = SolverConfig(dt=0.05, t_end=1.0, integrator=name, **LINEAR)
        out = step(SimulationState(t=0.0, theta=theta), params, config)
        expected = linear_propagator(theta, params, 0.05)
        np.testing.assert_allclose(out.theta.coefficients, expected.coefficients, atol=1e-13)
        assert out.t == pytest.approx(0.05)
        assert out.steps == 1

    def test_registered_integrator_is_used(self, make_field, grid16):
        class Broken(Integrator):
            name = "Broken"
            order = 0

            def advance(self, coefficients, h, decay, tendency):
                return np.full_like(coefficients, np.nan)

        register_integrator("Broken", Broken)
        try:
            theta = make_field(grid16)
            state = SimulationState(t=0.0, theta=theta)
            config = SolverConfig(dt=0.1, t_end=1.0, integrator="Broken", **LINEAR)
            with pytest.raises(SimulationDiverged) as excinfo:
                step(state, DissipationParams(), config)
            assert excinfo.value.last_state is state
        finally:
            INTEGRATORS.pop("Broken")


class TestSimulation:
    def test_linear_decay_is_exact(self, sine):
        grid = Grid(64, 64)
        theta0 = sine(grid, 1, 0)
        params = DissipationParams(mu=1.0, nu=1.0, alpha=0.5, beta=0.5)
        config = SolverConfig(dt=0.01, t_end=5.0, diagnostics_every=10, **LINEAR)
        records = list(run(theta0, params, config))
        assert records[-1].t == pytest.approx(5.0)
        for record in records:
            expected = math.exp(-record.t) * records[0].l2
            assert abs(record.l2 - expected) <= 1e-10 * expected

    def test_x1_profile_evolves_linearly_with_advection_on(self, sine, grid32):
        theta0 = sine(grid32, 1, 0) + sine(grid32, 2, 0, amplitude=0.5)
        params = DissipationParams(alpha=0.75, beta=0.75)
        config = SolverConfig(dt=0.05, t_end=1.0, diagnostics_every=20)
        state = final_state(theta0, params, config)
        expected = linear_propagator(theta0, params, 1.0)
        np.testing.assert_allclose(state.theta.coefficients, expected.coefficients, atol=1e-10)

    def test_record_schedule(self, make_field, grid16):
        theta0 = make_field(grid16)
        params = DissipationParams()
        config = SolverConfig(dt=0.1, t_end=1.0, diagnostics_every=3, **LINEAR)
        times = [r.t for r in run(theta0, params, config)]
        assert times == pytest.approx([0.0, 0.3, 0.6, 0.9, 1.0])

    def test_schedule_ends_exactly_at_t_end(self, make_field, grid16):
        config = SolverConfig(dt=0.3, t_end=1.0, **LINEAR)
        times = [r.t for r in run(make_field(grid16), DissipationParams(), config)]
        assert times == pytest.approx([0.0, 0.3, 0.6, 0.9, 1.0])

    def test_zero_initial_data_stays_zero(self, grid16):
        config = SolverConfig(dt=0.1, t_end=0.5)
        records = list(run(SpectralField.zeros(grid16), DissipationParams(), config))
        assert all(r.l2 == 0.0 and r.budget_residual == 0.0 for r in records)

    def test_invalid_initial_data(self, make_field, grid16):
        config = SolverConfig(dt=0.1, t_end=0.5)
        theta = make_field(grid16)
        with_mean = np.array(theta.coefficients)
        with_mean[0, 0] = 1.0
        with pytest.raises(FieldError, match="mean-free"):
            Simulation(SpectralField(grid16, with_mean), DissipationParams(), config)
        out_of_band = np.array(theta.coefficients)
        out_of_band[grid16.mode_slot(7, 0)] = 1.0
        out_of_band[grid16.mode_slot(-7, 0)] = 1.0
        with pytest.raises(FieldError, match="dealiased band"):
            Simulation(SpectralField(grid16, out_of_band), DissipationParams(), config)
        non_finite = np.array(theta.coefficients)
        non_finite[1, 1] = np.nan
        with pytest.raises(FieldError):
            Simulation(SpectralField(grid16, non_finite), DissipationParams(), config)

    def test_cfl_rejection_is_recovered(self, make_field, grid32):
        theta0 = make_field(grid32, amplitude=20.0)
        params = DissipationParams()
        config = SolverConfig(dt=0.1, t_end=0.2)
        with pytest.raises(CFLViolation) as excinfo:
            step(SimulationState(t=0.0, theta=theta0), params, config)
        assert 0.0 < excinfo.value.suggested_dt < 0.1

        simulation = Simulation(theta0, params, config)
        times = [r.t for r in simulation.records()]
        assert times == pytest.approx([0.0, 0.1, 0.2])
        assert simulation.cfl_rejections > 0
        assert simulation.state.steps > 2

    def test_self_convergence_order(self, grid32):
        rng = np.random.default_rng(3)
        theta0 = random_field(grid32, rng, kmax=4)
        params = DissipationParams(mu=0.1, nu=0.1, alpha=0.75, beta=0.75)
        finals = [
            final_state(
                theta0,
                params,
                SolverConfig(dt=dt, t_end=0.4, cfl_safety=1.0, diagnostics_every=1000),
            ).theta
            for dt in (0.02, 0.01, 0.005)
        ]
        coarse = l2_norm(finals[0] - finals[1])
        fine = l2_norm(finals[1] - finals[2])
        assert math.log2(coarse / fine) >= 3.5

    def test_hs_bound_stays_below_initial_energy(self, make_field, grid16):
        theta0 = make_field(grid16)
        config = SolverConfig(dt=0.05, t_end=1.0, diagnostics_every=4, hs_bound=True, **LINEAR)
        records = list(run(theta0, DissipationParams(), config))
        for s in config.s_diag:
            initial = records[0].hs_bound[s]
            assert initial == pytest.approx(records[0].hs[s] ** 2)
            assert all(r.hs_bound[s] <= initial * (1 + 1e-9) for r in records)

    def test_default_records_carry_only_the_documented_keys(self, make_field, grid16):
        config = SolverConfig(dt=0.05, t_end=0.1, **LINEAR)
        (first, *_) = run(make_field(grid16), DissipationParams(), config)
        assert first.hs_bound == {}
        assert set(first.to_flat()) == {
            "t", "l2", "linf", "lp.2", "lp.inf", "hs.0", "hs.1", "hsdot.0", "hsdot.1",
            "diss1", "diss2", "cum1", "cum2",
            "split.1.low", "split.1.high", "split.2.low", "split.2.high",
            "budget_residual",
        }


class TestEnergyBudget:
    @pytest.mark.parametrize("mu", [1.0, 2.0])
    def test_trapezoid_residual_closed_form(self, sine, grid16, mu):
        theta0 = sine(grid16, 1, 0)
        params = DissipationParams(mu=mu, nu=1.0, alpha=0.5, beta=0.5)
        h, n = 0.05, 40
        config = SolverConfig(dt=h, t_end=h * n, diagnostics_every=n, **LINEAR)
        records = list(run(theta0, params, config))
        e0 = records[0].l2 ** 2
        q = math.exp(-2.0 * mu * h)
        expected = e0 * (q**n - 1.0 + mu * h * (1.0 + q) * (1.0 - q**n) / (1.0 - q))
        assert records[-1].budget_residual == pytest.approx(expected, rel=1e-9)
        assert expected > 0.0
        assert energy_budget(records, mu=mu, nu=1.0) == pytest.approx(expected, rel=1e-9)

    def test_empty_records(self):
        with pytest.raises(ParameterError):
            energy_budget([])

    def test_flat_record_layout(self):
        record = DiagnosticsRecord(
            t=0.5,
            l2=1.0,
            linf=2.0,
            diss1=0.1,
            diss2=0.2,
            cum1=0.3,
            cum2=0.4,
            budget_residual=1e-9,
            lp={2.0: 1.0, math.inf: 2.0},
            hs={1.0: 1.5},
            hs_hom={1.0: 1.2},
            split={1.0: (0.6, 0.8)},
            hs_bound={1.0: 2.5},
        )
        flat = record.to_flat()
        assert list(flat)[:5] == ["t", "l2", "linf", "lp.2", "lp.inf"]
        assert flat["split.1.low"] == 0.6 and flat["split.1.high"] == 0.8
        assert flat["hsbound.1"] == 2.5
        assert DiagnosticsRecord.from_flat(flat) == record
