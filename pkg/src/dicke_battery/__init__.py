"""Exact-diagonalization toolkit for collective charging of a Dicke quantum battery.

N two-level systems share one resonant cavity mode prepared with n
photons.  The excitation-conserving coupling confines the dynamics to a
(min(N, n) + 1)-dimensional ladder, which this package diagonalizes
exactly to reproduce the universal flip time pi / (2 g sqrt(n)), the
sqrt(N) collective charging advantage, and the entanglement diagnostics
of the photon-starved regimes.
"""

from .analysis import (
    FlipDetectionError,
    ProtocolReport,
    QslReport,
    compare_protocols,
    detect_flip_time,
    effective_coupling_equivalence,
    qsl_report,
    universal_flip_time,
    verify_algebraic_identity,
)
from .dynamics import (
    OBSERVABLE_NAMES,
    ObservableSeries,
    SimulationConfig,
    evolve,
    run,
    sector_operator,
)
from .hilbert import SectorBasis, SectorState, build_sector, initial_state, target_state
from .observables import (
    average_power,
    cos_theta,
    energy_variance,
    flip_fidelity,
    operator_expectation,
    pairwise_concurrence,
    single_spin_density,
    stored_energy,
    two_spin_density,
    up_fraction,
    von_neumann_entropy,
)
from .operators import (
    ModelParams,
    TridiagonalOperator,
    coupling_commutes_with_rest,
    exact_tc_matrix,
    large_n_matrix,
)
from .spectra import (
    EigenSolverError,
    EigenSystem,
    PseudoHermiteFamily,
    analytic_eigenvalues,
    analytic_eigenvectors,
    binomial_weighted_inner,
    eigendecompose,
    pseudo_hermite,
    pseudo_hermite_family,
    rodrigues_residual,
    scaled_pseudo_hermite,
)

__version__ = "0.1.0"

__all__ = [
    "FlipDetectionError",
    "ProtocolReport",
    "QslReport",
    "compare_protocols",
    "detect_flip_time",
    "effective_coupling_equivalence",
    "qsl_report",
    "universal_flip_time",
    "verify_algebraic_identity",
    "OBSERVABLE_NAMES",
    "ObservableSeries",
    "SimulationConfig",
    "evolve",
    "run",
    "sector_operator",
    "SectorBasis",
    "SectorState",
    "build_sector",
    "initial_state",
    "target_state",
    "average_power",
    "cos_theta",
    "energy_variance",
    "flip_fidelity",
    "operator_expectation",
    "pairwise_concurrence",
    "single_spin_density",
    "stored_energy",
    "two_spin_density",
    "up_fraction",
    "von_neumann_entropy",
    "ModelParams",
    "TridiagonalOperator",
    "coupling_commutes_with_rest",
    "exact_tc_matrix",
    "large_n_matrix",
    "EigenSolverError",
    "EigenSystem",
    "PseudoHermiteFamily",
    "analytic_eigenvalues",
    "analytic_eigenvectors",
    "binomial_weighted_inner",
    "eigendecompose",
    "pseudo_hermite",
    "pseudo_hermite_family",
    "rodrigues_residual",
    "scaled_pseudo_hermite",
    "__version__",
]
