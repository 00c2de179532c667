"""Scalar diagnostics of a charging state.

Energetics, flip fidelity, reduced spin densities, entanglement measures
and the Bloch angle, all closed-form in the ladder populations |c_k|^2.
The closed forms exist because tracing out the cavity kills every
coherence between different rungs (each rung holds a different photon
number), and the remaining rung-diagonal mixture of symmetric states has
permutation-invariant one- and two-spin marginals.

Basis conventions: single spin (|down>, |up>); spin pair
(|dd>, |du>, |ud>, |uu>), first spin major.
"""

from __future__ import annotations

import math

import numpy as np

from .hilbert import SectorState
from .operators import TridiagonalOperator

_SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]])
_SPIN_FLIP = np.kron(_SIGMA_Y, _SIGMA_Y)


def stored_energy(state: SectorState, omega_a: float) -> float:
    """Battery energy above the discharged level: omega_a * sum_k |c_k|^2 k."""
    if not omega_a > 0:
        raise ValueError(f"spin splitting must be positive, got {omega_a}")
    return float(omega_a * np.dot(state.populations(), state.basis.k_values()))


def average_power(energy: float, elapsed: float) -> float:
    if not elapsed > 0:
        raise ValueError(f"elapsed time must be positive, got {elapsed}")
    return energy / elapsed


def flip_fidelity(state: SectorState, target: SectorState) -> float:
    """|<target|state>|^2; both states must live on the same sector."""
    if state.basis != target.basis:
        raise ValueError(
            f"basis mismatch: state on (N={state.basis.N}, n={state.basis.n}), "
            f"target on (N={target.basis.N}, n={target.basis.n})"
        )
    return float(abs(np.vdot(target.amplitudes, state.amplitudes)) ** 2)


def up_fraction(state: SectorState) -> float:
    """Probability p that any one spin points up: sum_k |c_k|^2 k / N."""
    return float(np.dot(state.populations(), state.basis.k_values()) / state.basis.N)


def single_spin_density(state: SectorState) -> np.ndarray:
    """Reduced density matrix of one spin, diag(1 - p, p).

    Diagonal because the photon trace removes cross-rung coherences and
    every rung is a symmetric state with definite up-fraction.
    """
    p = up_fraction(state)
    return np.diag([1.0 - p, p]).astype(complex)


def von_neumann_entropy(density: np.ndarray) -> float:
    """-Tr rho ln rho in natural-log units, with 0 ln 0 = 0."""
    density = np.asarray(density)
    if density.ndim != 2 or density.shape[0] != density.shape[1]:
        raise ValueError(f"density matrix must be square, got shape {density.shape}")
    eigenvalues = np.clip(np.linalg.eigvalsh(density), 0.0, None)
    positive = eigenvalues[eigenvalues > 0.0]
    return float(-np.sum(positive * np.log(positive)))


def two_spin_density(state: SectorState) -> np.ndarray:
    """Reduced density matrix of a spin pair (any pair, by symmetry).

    An X-shaped state in the (|dd>, |du>, |ud>, |uu>) basis:

        p_uu = sum_k |c_k|^2 k(k-1) / (N(N-1)),
        p_dd = sum_k |c_k|^2 (N-k)(N-k-1) / (N(N-1)),
        p_du = p_ud = z = sum_k |c_k|^2 k(N-k) / (N(N-1)),

    with the single coherence z between |du> and |ud>.
    """
    N = state.basis.N
    if N < 2:
        raise ValueError(f"a spin pair needs N >= 2, got N={N}")
    pops = state.populations()
    k = state.basis.k_values().astype(float)
    pair_norm = N * (N - 1.0)
    p_uu = float(np.dot(pops, k * (k - 1.0)) / pair_norm)
    p_dd = float(np.dot(pops, (N - k) * (N - k - 1.0)) / pair_norm)
    z = float(np.dot(pops, k * (N - k)) / pair_norm)
    rho = np.zeros((4, 4), dtype=complex)
    rho[0, 0] = p_dd
    rho[1, 1] = rho[2, 2] = z
    rho[1, 2] = rho[2, 1] = z
    rho[3, 3] = p_uu
    return rho


def pairwise_concurrence(density: np.ndarray) -> float:
    """Wootters concurrence of a two-spin density matrix.

    max(0, l1 - l2 - l3 - l4) with l_i the descending square roots of the
    eigenvalues of rho (sy x sy) rho* (sy x sy).
    """
    rho = np.asarray(density, dtype=complex)
    if rho.shape != (4, 4):
        raise ValueError(f"two-spin density matrix must be 4x4, got {rho.shape}")
    flipped = _SPIN_FLIP @ rho.conj() @ _SPIN_FLIP
    eigenvalues = np.linalg.eigvals(rho @ flipped)
    # exact eigenvalues are real >= 0; rounding can leave tiny imaginary dust
    lam = np.sqrt(np.clip(eigenvalues.real, 0.0, None))
    lam.sort()
    return float(max(0.0, lam[-1] - lam[-2] - lam[-3] - lam[-4]))


def cos_theta(state: SectorState) -> float:
    """Bloch polar angle cosine of one spin, 2p - 1 (down = -1, up = +1)."""
    return 2.0 * up_fraction(state) - 1.0


def operator_expectation(state: SectorState, operator: TridiagonalOperator) -> float:
    """<state| T |state> for a real symmetric tridiagonal T."""
    if operator.dimension != state.basis.dimension:
        raise ValueError(
            f"dimension mismatch: operator {operator.dimension}, "
            f"state {state.basis.dimension}"
        )
    return float(np.vdot(state.amplitudes, operator.matvec(state.amplitudes)).real)


def energy_variance(state: SectorState, operator: TridiagonalOperator) -> float:
    """Standard deviation sqrt(<T^2> - <T>^2) of a tridiagonal observable."""
    if operator.dimension != state.basis.dimension:
        raise ValueError(
            f"dimension mismatch: operator {operator.dimension}, "
            f"state {state.basis.dimension}"
        )
    applied = operator.matvec(state.amplitudes)
    first = float(np.vdot(state.amplitudes, applied).real)
    second = float(np.vdot(applied, applied).real)
    return math.sqrt(max(second - first * first, 0.0))
