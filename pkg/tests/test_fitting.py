"""Tests for the (p, q, epsilon) noise-parameter fitting pipeline."""

from __future__ import annotations

import math

import pytest

from stabrenyi.estimator import EstimateReport
from stabrenyi.fitting import fit_noise
from stabrenyi.noise import (
    prep_channel,
    readout_dressed_purity,
    w_chi,
)
from stabrenyi.states import gamma_state, zero_state


def _report(n: int, w: float, p: float, w_err=None, p_err=None) -> EstimateReport:
    return EstimateReport(
        method="ustat",
        n=n,
        n_units=100,
        shots=(100,) * 100,
        stab_purity=w,
        stab_purity_err=w_err,
        purity=p,
        purity_err=p_err,
        stab_renyi2=None,
        stab_renyi2_err=None,
        negative_stab_purity=False,
        per_word_stab_purity=(),
        per_word_purity=(),
    )


def _forward_values(state, p, q, eps):
    """Noise-model forward predictions for the two purities and zero-state W."""
    n = state.n
    zero_purity = (q**2 + (1 - q) ** 2) ** n
    zero_w = w_chi(q, eps) ** n
    target_purity = readout_dressed_purity(prep_channel(state, p), q)
    return zero_w, zero_purity, target_purity


class TestExactClosure:
    @pytest.mark.parametrize(
        "p, q, eps",
        [(0.85, 0.95, 0.30), (0.95, 0.90, 0.10), (0.70, 0.99, 0.55), (1.0, 1.0, 0.0)],
    )
    def test_recovers_truth_from_exact_forward_values(self, p, q, eps):
        state = gamma_state(3, 4)
        zero_w, zero_p, target_p = _forward_values(state, p, q, eps)
        fit = fit_noise(
            _report(3, zero_w, zero_p), _report(3, 0.01, target_p), state
        )
        assert abs(fit.q - q) < 1e-9
        assert abs(fit.epsilon - eps) < 1e-7
        assert abs(fit.p - p) < 1e-7

    def test_error_free_inputs_give_none_uncertainties(self):
        state = gamma_state(3, 4)
        zero_w, zero_p, target_p = _forward_values(state, 0.9, 0.95, 0.2)
        fit = fit_noise(
            _report(3, zero_w, zero_p), _report(3, 0.01, target_p), state
        )
        assert fit.p_err is None
        assert fit.q_err is None
        assert fit.epsilon_err is None


class TestUncertainties:
    def test_propagated_errors_scale_with_input_errors(self):
        state = gamma_state(3, 4)
        zero_w, zero_p, target_p = _forward_values(state, 0.9, 0.95, 0.2)
        small = fit_noise(
            _report(3, zero_w, zero_p, w_err=1e-3, p_err=1e-3),
            _report(3, 0.01, target_p, p_err=1e-3),
            state,
        )
        large = fit_noise(
            _report(3, zero_w, zero_p, w_err=2e-3, p_err=2e-3),
            _report(3, 0.01, target_p, p_err=2e-3),
            state,
        )
        for name in ("p_err", "q_err", "epsilon_err"):
            s, l = getattr(small, name), getattr(large, name)
            assert s is not None and l is not None
            assert l == pytest.approx(2 * s, rel=1e-3)

    def test_q_error_matches_analytic_derivative(self):
        # q(P0) = (1 + sqrt(2 P0^{1/n} - 1))/2 has an explicit derivative
        n, q_true = 3, 0.9
        p0 = (q_true**2 + (1 - q_true) ** 2) ** n
        u = p0 ** (1 / n)
        dq_dp0 = (u / p0) / (2 * n * math.sqrt(2 * u - 1))
        state = gamma_state(3, 4)
        zero_w, _, target_p = _forward_values(state, 0.9, q_true, 0.2)
        fit = fit_noise(
            _report(3, zero_w, p0, w_err=1e-3, p_err=1e-3),
            _report(3, 0.01, target_p, p_err=1e-3),
            state,
        )
        assert fit.q_err == pytest.approx(abs(dq_dp0) * 1e-3, rel=1e-3)

    def test_partial_errors_propagate_partially(self):
        # zero-report errors but no target error: p_err must stay None
        state = gamma_state(3, 4)
        zero_w, zero_p, target_p = _forward_values(state, 0.9, 0.95, 0.2)
        fit = fit_noise(
            _report(3, zero_w, zero_p, w_err=1e-3, p_err=1e-3),
            _report(3, 0.01, target_p),
            state,
        )
        assert fit.q_err is not None
        assert fit.epsilon_err is not None
        assert fit.p_err is None


class TestValidation:
    def test_register_size_mismatch(self):
        state = gamma_state(3, 4)
        with pytest.raises(ValueError):
            fit_noise(_report(2, 0.1, 0.9), _report(3, 0.1, 0.8), state)
        with pytest.raises(ValueError):
            fit_noise(_report(3, 0.1, 0.9), _report(2, 0.1, 0.8), state)

    def test_infeasible_zero_data_raises(self):
        # a zero-state W above the noiseless ceiling has no epsilon
        state = zero_state(3)
        from stabrenyi.noise import InfeasibleNoiseError

        with pytest.raises(InfeasibleNoiseError):
            fit_noise(_report(3, 0.2, 1.0), _report(3, 0.1, 0.9), state)
