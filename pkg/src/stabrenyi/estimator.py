"""Randomized-measurement estimation of stabilizer purity and purity.

An experiment applies a random word of single-qubit Cliffords to the state,
measures in the computational basis for a fixed number of shots, and repeats
over many words.  Per word, the fourth and second moments of all subset-Z
expectation values combine into unbiased (U-statistic) or plugin estimates
of the stabilizer purity W and the purity P; averaging over words and taking
log2(P / (W d)) gives the stabilizer 2-Renyi entropy.

The U-statistic path converts shot counts to subset sums with a Walsh-
Hadamard transform and evaluates the elementary symmetric polynomials e2/e4
of the +-1 shot signs through Newton's identities, which is algebraically
identical to (and vastly cheaper than) summing over all distinct shot
quadruples.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .cliffords import N_CLIFFORD, clifford_element
from .noise import NoiseParams, phase_gate, prep_channel, readout_channel
from .oracle import subset_weights, walsh_z_expectations, word_statistics
from .states import StateVector, apply_local_unitaries, sample_counts

__all__ = [
    "ShotRecord",
    "ExperimentData",
    "EstimateReport",
    "counts_vector",
    "plugin_word_estimates",
    "ustat_word_estimates",
    "estimate",
    "word_outcome_probs",
    "simulate_experiment",
    "variance_bound",
    "bernstein_tail",
]


@dataclass(frozen=True)
class ShotRecord:
    """One measurement unit: the recorded Clifford word and its shot counts."""

    clifford_ids: tuple[int, ...]
    counts: dict[str, int]

    def __post_init__(self) -> None:
        n = len(self.clifford_ids)
        if n == 0:
            raise ValueError("empty Clifford word")
        if any(not 0 <= c < N_CLIFFORD for c in self.clifford_ids):
            raise ValueError("Clifford id outside [0, 24)")
        for bits, count in self.counts.items():
            if len(bits) != n or set(bits) - {"0", "1"}:
                raise ValueError(f"bad bitstring {bits!r} for {n} qubits")
            if not isinstance(count, int) or count <= 0:
                raise ValueError(f"count for {bits!r} must be a positive integer")

    @property
    def n_shots(self) -> int:
        return sum(self.counts.values())


@dataclass(frozen=True)
class ExperimentData:
    """A full randomized-measurement data set on an n-qubit state.

    seed is the master seed the data was simulated from, or None for
    ingested hardware records; it rides along so downstream reports can
    state the provenance of every published number.
    """

    n: int
    state_label: str
    records: tuple[ShotRecord, ...]
    seed: int | None = None

    def __post_init__(self) -> None:
        if any(len(r.clifford_ids) != self.n for r in self.records):
            raise ValueError("record word length disagrees with n")


@dataclass(frozen=True)
class EstimateReport:
    """Point estimates with standard errors over measurement units.

    stab_renyi2 is None (and negative_stab_purity True) when the unbiased
    stabilizer-purity estimate is not positive; the estimate is reported
    as-is, never clamped.  Standard errors are None with fewer than two
    units.
    """

    method: str
    n: int
    n_units: int
    shots: tuple[int, ...]
    stab_purity: float
    stab_purity_err: float | None
    purity: float
    purity_err: float | None
    stab_renyi2: float | None
    stab_renyi2_err: float | None
    negative_stab_purity: bool
    per_word_stab_purity: tuple[float, ...]
    per_word_purity: tuple[float, ...]


def counts_vector(counts: dict[str, int], n: int) -> np.ndarray:
    """Dense outcome-count vector (length 2**n) from a sparse counts dict."""
    vec = np.zeros(2**n, dtype=np.int64)
    for bits, count in counts.items():
        if len(bits) != n or set(bits) - {"0", "1"}:
            raise ValueError(f"bad bitstring {bits!r} for {n} qubits")
        vec[int(bits, 2)] += count
    return vec


def plugin_word_estimates(vec: np.ndarray, n: int) -> tuple[float, float]:
    """Biased plugin (W_C, P_C) from one word's counts: empirical frequencies
    plugged straight into the subset-moment formulas."""
    total = int(vec.sum())
    if total < 1:
        raise ValueError("record has no shots")
    return word_statistics(vec / total, n)


def ustat_word_estimates(vec: np.ndarray, n: int) -> tuple[float, float]:
    """Unbiased (W_C, P_C) from one word's counts.

    Per subset mask A, the shot signs are +-1 with sum S (a Walsh-Hadamard
    component of the counts) and power sums p_k = S (k odd) / N (k even), so
    Newton's identities give the elementary symmetric polynomials
        e2 = (S^2 - N)/2,
        e4 = (S^4 - 6 S^2 N + 8 S^2 + 3 N^2 - 6 N)/24,
    and e4/C(N,4), e2/C(N,2) are the unbiased fourth- and second-moment
    estimators over distinct shot quadruples/pairs.
    """
    total = int(vec.sum())
    if total < 4:
        raise ValueError("unbiased estimates need at least 4 shots per word")
    s = walsh_z_expectations(vec.astype(float), n)
    nn = float(total)
    s2 = s * s
    e2 = (s2 - nn) / 2.0
    e4 = (s2 * s2 - 6.0 * s2 * nn + 8.0 * s2 + 3.0 * nn * nn - 6.0 * nn) / 24.0
    weights = subset_weights(n)
    pairs = math.comb(total, 2)
    quads = math.comb(total, 4)
    p_c = float(weights @ (e2 / pairs)) / 2**n
    w_c = float(weights @ (e4 / quads)) / 4**n
    return w_c, p_c


def estimate(data: ExperimentData, method: str = "ustat") -> EstimateReport:
    """Combine per-word estimates into point estimates with standard errors."""
    if method not in ("ustat", "plugin"):
        raise ValueError(f"unknown method {method!r}; use 'ustat' or 'plugin'")
    if not data.records:
        raise ValueError("no records to estimate from")
    per_word = ustat_word_estimates if method == "ustat" else plugin_word_estimates
    w_vals = []
    p_vals = []
    shots = []
    for record in data.records:
        vec = counts_vector(record.counts, data.n)
        w_c, p_c = per_word(vec, data.n)
        w_vals.append(w_c)
        p_vals.append(p_c)
        shots.append(int(vec.sum()))
    w_arr = np.array(w_vals)
    p_arr = np.array(p_vals)
    n_units = len(w_vals)
    w_est = float(w_arr.mean())
    p_est = float(p_arr.mean())
    if n_units >= 2:
        w_err = float(w_arr.std(ddof=1) / math.sqrt(n_units))
        p_err = float(p_arr.std(ddof=1) / math.sqrt(n_units))
    else:
        w_err = p_err = None
    negative = w_est <= 0.0
    if negative or p_est <= 0.0:
        m2 = m2_err = None
    else:
        m2 = math.log2(p_est / (w_est * 2**data.n))
        if w_err is not None:
            m2_err = math.hypot(w_err / w_est, p_err / p_est) / math.log(2)
        else:
            m2_err = None
    return EstimateReport(
        method=method,
        n=data.n,
        n_units=n_units,
        shots=tuple(shots),
        stab_purity=w_est,
        stab_purity_err=w_err,
        purity=p_est,
        purity_err=p_err,
        stab_renyi2=m2,
        stab_renyi2_err=m2_err,
        negative_stab_purity=negative,
        per_word_stab_purity=tuple(w_vals),
        per_word_purity=tuple(p_vals),
    )


def word_outcome_probs(
    state: StateVector,
    outer_ids: tuple[int, ...],
    *,
    inner_ids: tuple[int, ...] | None = None,
    noise: NoiseParams = NoiseParams(),
) -> np.ndarray:
    """Exact outcome distribution for one measurement unit under the noise
    model: dephasing preparation, per-qubit unitary outer . phase(eps) . inner
    (plain outer Clifford when eps = 0), then readout bit flips."""
    n = state.n
    if len(outer_ids) != n:
        raise ValueError("word length must equal qubit count")
    if noise.epsilon != 0.0:
        if inner_ids is None or len(inner_ids) != n:
            raise ValueError("a nonzero displacement needs an inner Clifford word")
        p_eps = phase_gate(noise.epsilon)
        mats = [
            clifford_element(o) @ p_eps @ clifford_element(i)
            for o, i in zip(outer_ids, inner_ids)
        ]
    else:
        mats = [clifford_element(o) for o in outer_ids]
    probs = np.zeros(2**n)
    for weight, term in prep_channel(state, noise.p).terms:
        amps = apply_local_unitaries(term, mats).amplitudes
        probs += weight * np.abs(amps) ** 2
    if noise.q != 1.0:
        probs = readout_channel(probs, noise.q)
    return probs


def simulate_experiment(
    state: StateVector,
    n_units: int,
    n_shots: int,
    *,
    seed: int,
    noise: NoiseParams = NoiseParams(),
    state_label: str = "custom",
) -> ExperimentData:
    """Sample a full randomized-measurement data set.

    Each measurement unit k draws from its own deterministic substream
    (SeedSequence(seed, spawn_key=(k,))): first the recorded Clifford word,
    then -- only when the displacement is nonzero -- the hidden inner word,
    then the multinomial shot counts.  The noiseless configuration is
    therefore bit-identical to NoiseParams(1, 1, 0).
    """
    if n_units < 1 or n_shots < 1:
        raise ValueError("need at least one unit and one shot")
    records = []
    for k in range(n_units):
        rng = np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(k,)))
        outer = tuple(int(c) for c in rng.integers(0, N_CLIFFORD, size=state.n))
        inner = None
        if noise.epsilon != 0.0:
            inner = tuple(int(c) for c in rng.integers(0, N_CLIFFORD, size=state.n))
        probs = word_outcome_probs(state, outer, inner_ids=inner, noise=noise)
        counts = sample_counts(probs, n_shots, rng)
        records.append(ShotRecord(clifford_ids=outer, counts=counts))
    return ExperimentData(
        n=state.n, state_label=state_label, records=tuple(records), seed=seed
    )


def variance_bound(
    n: int, n_shots: int, value: float, quantity: str = "stab_purity"
) -> float:
    """Upper bound on the per-word variance of the unbiased estimate.

    quantity='stab_purity' bounds Var[W_C] given the true W = value;
    quantity='purity' bounds Var[P_C] given the true P = value.
    """
    d = float(2**n)
    m = float(n_shots)
    if quantity == "stab_purity":
        return (
            8.0 / math.sqrt(d)
            + 192.0 / (d ** (1.0 / 3.0) * m**4)
            + 6792.0 / (math.sqrt(d) * m**4)
            + 5056.0 / m**3
            + 8179.0 / (math.sqrt(d) * m**2)
            + 128.0 / m
            - value**2
        )
    if quantity == "purity":
        return 2.0 ** (n + 1) + (4.0 / m**2) * 3.0**n - value**2
    raise ValueError(f"unknown quantity {quantity!r}")


def bernstein_tail(n_units: int, epsilon: float, variance: float) -> float:
    """Bernstein tail bound 2^(-N_U eps^2 / (var + 2 eps / 3)) on the
    probability that the word average misses the mean by more than eps."""
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    return 2.0 ** (-(n_units * epsilon**2) / (variance + 2.0 * epsilon / 3.0))
