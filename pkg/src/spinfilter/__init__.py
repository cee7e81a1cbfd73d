"""State-vector simulator and microcanonical thermodynamics engine for
spin-1/2 Heisenberg chains, built on Gaussian energy filtering of
random-phase states with an exact-diagonalization oracle at small sizes.
"""

__version__ = "0.1.0"

from .evolve import KernelTrace, TrotterPlan, evolve_and_record, trotter_step
from .exact import (
    Spectrum,
    exact_kernel,
    exact_traces,
    filtered_state_coeffs,
    full_diagonalize,
    histogram_and_tau,
)
from .filtering import FilterParams, FilteredPair, quadrature_filtered_pair
from .model import SpinChainModel, build_chain, trace_H_over_D
from .randomstates import (
    RandomStateKind,
    RandomStateSpec,
    draw_angles,
    enumerate_discrete_ensemble,
    prepare_random_state,
)
from .sampling import (
    SampleSet,
    covariance_diagnostic,
    estimate_traces,
    run_samples,
    sample_filtered_norms,
)
from .states import (
    CapacityError,
    StateVector,
    apply_exp_swap,
    apply_hamiltonian,
    apply_phase_diag,
    inner_product,
    new_plus_state,
)
from .thermo import (
    ThermoPoint,
    canonical_from_dos_grid,
    canonical_from_spectrum,
    cumulative_states,
    derive_thermo,
)

__all__ = [name for name in dir() if not name.startswith("_")]
