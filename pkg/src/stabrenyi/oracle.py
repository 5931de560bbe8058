"""Exact Pauli-spectrum oracles for small registers.

Everything here is dense linear algebra on at most a few thousand
amplitudes: Pauli expectation tables, the stabilizer purity
W(rho) = d^{-2} sum_P tr(P rho)^4, stabilizer Renyi entropies M_alpha,
state purity, and a brute-force average of the randomized-measurement
protocol over every local Clifford word (tractable for n <= 3).

Results are deterministic: reductions run in fixed index order.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass

import numpy as np
from scipy.linalg import hadamard

from .cliffords import N_CLIFFORD
from .states import (
    CliffordWord,
    MixedState,
    StateVector,
    apply_local_cliffords,
    as_mixture,
)

__all__ = [
    "PauliTable",
    "XiDistribution",
    "pauli_table",
    "xi_distribution",
    "stab_purity_exact",
    "stabilizer_renyi",
    "purity_exact",
    "max_offidentity_pauli",
    "exact_protocol_value",
    "haar_random_state",
    "walsh_z_expectations",
    "subset_weights",
    "word_statistics",
]

#: pauli_table materializes the full density matrix; cap the register width.
MAX_ORACLE_QUBITS = 8

#: Exhaustive word enumeration grows as 24**n; cap it where it stays fast.
MAX_ENUMERATION_QUBITS = 3

# Single-qubit Paulis in index order I, X, Y, Z.
_PAULIS_1Q = np.array(
    [
        [[1, 0], [0, 1]],
        [[0, 1], [1, 0]],
        [[0, -1j], [1j, 0]],
        [[1, 0], [0, -1]],
    ],
    dtype=complex,
)


@dataclass(frozen=True)
class PauliTable:
    """All 4**n Pauli expectations tr(P rho), indexed base-4 (I,X,Y,Z)."""

    n: int
    values: np.ndarray

    def support_sizes(self) -> np.ndarray:
        """Number of non-identity tensor factors for each Pauli index."""
        return _support_sizes(self.n)


@dataclass(frozen=True)
class XiDistribution:
    """The normalized Pauli weight distribution Xi(P) = tr^2(P rho)/(d W_raw).

    ``probabilities`` sums to 1; the identity entry is included.
    """

    n: int
    probabilities: np.ndarray


def _support_sizes(n: int) -> np.ndarray:
    sizes = np.zeros(4**n, dtype=np.int64)
    for qubit in range(n):
        digits = (np.arange(4**n) // 4 ** (n - 1 - qubit)) % 4
        sizes += digits != 0
    return sizes


def _density_matrix(state: StateVector | MixedState) -> np.ndarray:
    mixture = as_mixture(state)
    dim = mixture.dim
    rho = np.zeros((dim, dim), dtype=complex)
    for weight, psi in mixture.terms:
        if weight != 0.0:
            rho += weight * np.outer(psi.amplitudes, psi.amplitudes.conj())
    return rho


def pauli_table(state: StateVector | MixedState) -> PauliTable:
    """Compute all 4**n expectations tr(P rho) in one pass.

    The density matrix, viewed as a (2,2)^n tensor over (row, col) index
    pairs, is contracted qubit by qubit against the conjugated Pauli basis,
    costing O(n 4**n) instead of 8**n.  Expectations of Hermitian Paulis are
    real; the imaginary dust is checked and dropped.
    """
    n = state.n
    if n > MAX_ORACLE_QUBITS:
        raise ValueError(f"pauli_table limited to n <= {MAX_ORACLE_QUBITS}")
    rho = _density_matrix(state)
    # tr(P rho) = sum_{r,c} prod_i sigma_{a_i}[c_i, r_i] rho[r, c], i.e. each
    # sigma row index pairs with rho's column index and vice versa.
    tensor = rho.reshape([2] * (2 * n))  # axes: r_0..r_{n-1}, c_0..c_{n-1}
    for qubit in range(n):
        # Invariant entering step `qubit`: axes are a_0..a_{qubit-1} (first
        # `qubit` positions), then r_qubit..r_{n-1}, then c_qubit..c_{n-1};
        # so r_qubit sits at position `qubit` and c_qubit at position n.
        tensor = np.tensordot(_PAULIS_1Q, tensor, axes=([1, 2], [n, qubit]))
        tensor = np.moveaxis(tensor, 0, qubit)
    values = tensor.reshape(4**n)
    assert np.max(np.abs(values.imag)) < 1e-9, "Pauli expectations must be real"
    return PauliTable(n=n, values=values.real.copy())


def stab_purity_exact(state: StateVector | MixedState) -> float:
    """Stabilizer purity W(rho) = d^{-2} sum_P tr(P rho)^4."""
    table = pauli_table(state)
    d = 2**table.n
    return float(np.sum(table.values**4)) / d**2


def purity_exact(state: StateVector | MixedState) -> float:
    """tr(rho^2) via the Gram matrix of the mixture terms (no d x d matrix)."""
    mixture = as_mixture(state)
    weights = np.array([w for w, _ in mixture.terms])
    vecs = np.stack([psi.amplitudes for _, psi in mixture.terms])
    gram = vecs.conj() @ vecs.T
    return float(np.real(weights @ (np.abs(gram) ** 2) @ weights))


def xi_distribution(state: StateVector | MixedState) -> XiDistribution:
    """Normalized Pauli weights Xi(P) = tr(P rho)^2 / (d tr(rho^2))."""
    table = pauli_table(state)
    d = 2**table.n
    weights = table.values**2 / (d * purity_exact(state))
    total = float(weights.sum())
    assert abs(total - 1.0) < 1e-10, "Xi must normalize to 1"
    return XiDistribution(n=table.n, probabilities=weights / total)


def stabilizer_renyi(state: StateVector | MixedState, alpha: float = 2.0) -> float:
    """Stabilizer Renyi entropy M_alpha = S_alpha(Xi) - log2 purity - log2 d.

    alpha = 1 is the Shannon limit; alpha = inf uses -log2 max Xi.
    """
    if alpha < 0:
        raise ValueError("alpha must be nonnegative")
    xi = xi_distribution(state).probabilities
    if np.isinf(alpha):
        s_alpha = -np.log2(float(xi.max()))
    elif alpha == 1.0:
        nz = xi[xi > 1e-300]
        s_alpha = float(-(nz * np.log2(nz)).sum())
    else:
        s_alpha = float(np.log2(np.sum(xi**alpha))) / (1.0 - alpha)
    d = 2**state.n
    return s_alpha - np.log2(purity_exact(state)) - np.log2(d)


def max_offidentity_pauli(state: StateVector | MixedState) -> float:
    """max_{P != identity} |tr(P rho)|."""
    table = pauli_table(state)
    return float(np.max(np.abs(table.values[1:])))


@functools.lru_cache(maxsize=None)
def subset_weights(n: int) -> np.ndarray:
    """3**|A| for every qubit subset A, indexed by the subset bitmask."""
    masks = np.arange(2**n)
    sizes = np.zeros(2**n, dtype=np.int64)
    for bit in range(n):
        sizes += (masks >> bit) & 1
    out = (3.0**sizes).astype(float)
    out.setflags(write=False)
    return out


@functools.lru_cache(maxsize=None)
def _hadamard_matrix(n: int) -> np.ndarray:
    out = hadamard(2**n, dtype=float)
    out.setflags(write=False)
    return out


def walsh_z_expectations(probs: np.ndarray, n: int) -> np.ndarray:
    """<Z_A> for every subset A at once: the Walsh-Hadamard transform of the
    outcome distribution.  Row A of the Sylvester Hadamard matrix carries
    exactly the signs (-1)^{|A & s|}."""
    return _hadamard_matrix(n) @ np.asarray(probs, dtype=float)


def word_statistics(probs: np.ndarray, n: int) -> tuple[float, float]:
    """Per-word protocol statistics (W_C, P_C) from outcome probabilities.

    W_C = 4^{-n} sum_A 3^{|A|} <Z_A>^4 and P_C = 2^{-n} sum_A 3^{|A|} <Z_A>^2,
    with <Z_A> read off the Walsh spectrum of the distribution.
    """
    weights = subset_weights(n)
    z = walsh_z_expectations(probs, n)
    w_c = float(weights @ z**4) / 4**n
    p_c = float(weights @ z**2) / 2**n
    return w_c, p_c


def exact_protocol_value(
    state: StateVector | MixedState, quantity: str = "stab_purity"
) -> float:
    """Average the protocol statistic over all 24**n local Clifford words.

    Per word C the statistic is the weighted Walsh spectrum of the rotated
    outcome distribution: W_C = 4^{-n} sum_A 3^{|A|} <Z_A>^4 and
    P_C = 2^{-n} sum_A 3^{|A|} <Z_A>^2.  Exhaustive enumeration is capped at
    n <= 3 (13824 words).
    """
    if quantity not in ("stab_purity", "purity"):
        raise ValueError("quantity must be 'stab_purity' or 'purity'")
    n = state.n
    if n > MAX_ENUMERATION_QUBITS:
        raise ValueError(
            f"exhaustive enumeration limited to n <= {MAX_ENUMERATION_QUBITS}"
        )
    mixture = as_mixture(state)
    total = 0.0
    count = 0
    for ids in itertools.product(range(N_CLIFFORD), repeat=n):
        word = CliffordWord(ids=ids)
        probs = np.zeros(2**n)
        for w_k, psi in mixture.terms:
            probs += w_k * np.abs(apply_local_cliffords(psi, word).amplitudes) ** 2
        w_c, p_c = word_statistics(probs, n)
        total += w_c if quantity == "stab_purity" else p_c
        count += 1
    return total / count


def haar_random_state(n: int, seed: int | np.random.Generator) -> StateVector:
    """Haar-random pure state: normalized complex Gaussian amplitudes."""
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    raw = rng.normal(size=2**n) + 1j * rng.normal(size=2**n)
    return StateVector(n=n, amplitudes=raw / np.linalg.norm(raw))
