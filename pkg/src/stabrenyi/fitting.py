"""Fitting the three noise parameters from measured estimates.

The pipeline uses two data sets: one on |0...0> (whose ideal stabilizer
purity and purity are both 1, so any deficit is pure noise) and one on the
target state.  Readout fidelity q comes from the zero-state purity,
displacement epsilon from the zero-state stabilizer purity given q, and
survival probability p from the target-state purity through the
readout-dressed forward model.  Uncertainties are propagated from the
estimates' standard errors by numeric differentiation of each solver.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .estimator import EstimateReport
from .noise import (
    InfeasibleNoiseError,
    solve_epsilon,
    solve_p_readout_aware,
    solve_q,
)
from .states import StateVector

__all__ = ["NoiseFit", "fit_noise"]


@dataclass(frozen=True)
class NoiseFit:
    """Fitted noise parameters with propagated one-sigma uncertainties.

    An uncertainty is None when the input estimates carried no standard
    error or the derivative could not be evaluated inside the feasible
    region.
    """

    p: float
    p_err: float | None
    q: float
    q_err: float | None
    epsilon: float
    epsilon_err: float | None


def _derivative(f: Callable[[float], float], x: float, h: float) -> float | None:
    """Central difference, falling back to one-sided at a feasibility edge."""
    try:
        return (f(x + h) - f(x - h)) / (2 * h)
    except (InfeasibleNoiseError, ValueError):
        pass
    for sign in (1.0, -1.0):
        try:
            return (f(x + sign * h) - f(x)) / (sign * h)
        except (InfeasibleNoiseError, ValueError):
            continue
    return None


def _step(scale: float) -> float:
    return max(1e-7, 1e-4 * abs(scale))


def fit_noise(
    zero_report: EstimateReport,
    target_report: EstimateReport,
    state: StateVector,
) -> NoiseFit:
    """Fit (p, q, epsilon) from zero-state and target-state estimates.

    zero_report must come from measurements of |0...0> on the same register
    size as the target state.
    """
    if zero_report.n != state.n or target_report.n != state.n:
        raise ValueError("register sizes of the reports and state disagree")
    n = state.n
    p0 = zero_report.purity
    w0 = zero_report.stab_purity
    pt = target_report.purity

    q_hat = solve_q(p0, n)
    eps_hat = solve_epsilon(w0, q_hat, n)
    p_hat = solve_p_readout_aware(pt, state, q_hat)

    q_err = None
    if zero_report.purity_err is not None:
        dq = _derivative(lambda x: solve_q(x, n), p0, _step(p0))
        if dq is not None:
            q_err = abs(dq) * zero_report.purity_err

    eps_err = None
    if zero_report.stab_purity_err is not None and q_err is not None:
        de_dw = _derivative(lambda x: solve_epsilon(x, q_hat, n), w0, _step(w0))
        de_dq = _derivative(lambda x: solve_epsilon(w0, x, n), q_hat, _step(q_hat))
        if de_dw is not None and de_dq is not None:
            eps_err = math.hypot(
                de_dw * zero_report.stab_purity_err, de_dq * q_err
            )

    p_err = None
    if target_report.purity_err is not None and q_err is not None:
        dp_dpt = _derivative(
            lambda x: solve_p_readout_aware(x, state, q_hat), pt, _step(pt)
        )
        dp_dq = _derivative(
            lambda x: solve_p_readout_aware(pt, state, x), q_hat, _step(q_hat)
        )
        if dp_dpt is not None and dp_dq is not None:
            p_err = math.hypot(dp_dpt * target_report.purity_err, dp_dq * q_err)

    return NoiseFit(
        p=p_hat, p_err=p_err, q=q_hat, q_err=q_err, epsilon=eps_hat, epsilon_err=eps_err
    )
