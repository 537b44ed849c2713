"""End-to-end Bell pairs on engineered spin chains.

A chain of an odd number of XX-coupled spins, excited once at its
center, concentrates the excitation on the two end sites at the
length-independent time pi/mu when the couplings follow the engineered
profile; the ends then hold a maximally entangled pair usable as a
teleportation resource.  The package builds and validates such chains,
evolves them in the one-excitation subspace, runs the teleportation
protocol (including with degraded resources), evaluates a hardware
feasibility bound, and searches for alternative entangling profiles.
"""

from ._version import __version__
from .chain import (
    CouplingProfile,
    ProfileViolation,
    ResourceLimitError,
    TridiagonalHamiltonian,
    engineered_couplings,
    engineered_max_coupling,
    excitation_number_operator,
    full_hilbert_hamiltonian,
    halved_hamiltonian,
    one_excitation_hamiltonian,
    one_excitation_indices,
    validate_profile,
)
from .dynamics import (
    ANTISYMMETRIC,
    SYMMETRIC,
    BellDecomposition,
    EigenSystem,
    NumericFailure,
    SiteAmplitudeState,
    analytic_center_to_end,
    analytic_halved_transfer,
    basis_state,
    bell_decomposition,
    bell_time,
    center_excited_state,
    center_to_end_amplitude,
    concurrence_ab,
    eigendecompose,
    end_to_end_amplitude,
    evolve,
)
from .robustness import (
    EntanglementReport,
    FeasibilityReport,
    NoisePerturbation,
    SwapPerturbation,
    SweepRow,
    adjacent_swap_sweep,
    entanglement_at_t0,
    entanglement_at_time,
    feasibility,
    noise_sweep,
    perturb,
    resource_from_profile,
    resource_from_report,
)
from .search import (
    CONVERGED_TOL,
    SearchProblem,
    SearchResult,
    minimize,
    mirror_profile,
    objective,
)
from .teleport import (
    EntangledResource,
    QubitRegisterState,
    TeleportRecord,
    apply_gate,
    correction_for,
    expected_fidelity,
    measure_two,
    prepare_gate_state,
    prepare_phi1,
    teleport,
)

__all__ = [
    "__version__",
    "ANTISYMMETRIC",
    "SYMMETRIC",
    "CONVERGED_TOL",
    "BellDecomposition",
    "CouplingProfile",
    "EigenSystem",
    "EntangledResource",
    "EntanglementReport",
    "FeasibilityReport",
    "NoisePerturbation",
    "NumericFailure",
    "ProfileViolation",
    "QubitRegisterState",
    "ResourceLimitError",
    "SearchProblem",
    "SearchResult",
    "SiteAmplitudeState",
    "SwapPerturbation",
    "SweepRow",
    "TeleportRecord",
    "TridiagonalHamiltonian",
    "adjacent_swap_sweep",
    "analytic_center_to_end",
    "analytic_halved_transfer",
    "apply_gate",
    "basis_state",
    "bell_decomposition",
    "bell_time",
    "center_excited_state",
    "center_to_end_amplitude",
    "concurrence_ab",
    "correction_for",
    "eigendecompose",
    "end_to_end_amplitude",
    "engineered_couplings",
    "engineered_max_coupling",
    "entanglement_at_t0",
    "entanglement_at_time",
    "evolve",
    "excitation_number_operator",
    "expected_fidelity",
    "feasibility",
    "full_hilbert_hamiltonian",
    "halved_hamiltonian",
    "measure_two",
    "minimize",
    "mirror_profile",
    "noise_sweep",
    "objective",
    "one_excitation_hamiltonian",
    "one_excitation_indices",
    "perturb",
    "prepare_gate_state",
    "prepare_phi1",
    "resource_from_profile",
    "resource_from_report",
    "teleport",
    "validate_profile",
]
