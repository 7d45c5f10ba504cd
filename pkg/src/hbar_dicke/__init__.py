"""Simulation and analysis of a superconducting qubit coupled to clusters of
near-resonant acoustic modes."""

__version__ = "0.1.0"

from .device import (
    ClusterSpec,
    DeviceConfig,
    ModeSpec,
    QubitSpec,
    combine_clusters,
    intra_cluster_spacings,
    load_device_config,
    load_fixture,
)
from .dicke import (
    CollectiveCouplings,
    TimedDickeState,
    collective_couplings,
    fidelity_closed_form,
    fidelity_exact,
    purity_analytic,
    static_dicke_population,
    tau_min_purity,
    tau_timed,
    timed_dicke_state,
)
from .dynamics import (
    PopulationTrace,
    RabiGrid,
    normalized_collective_population,
    simulate_rabi_grid,
    simulate_trace,
)
from .hamiltonian import SectorHamiltonian, SectorState, build_full_hamiltonian, build_sector_hamiltonian
from .kernels import BACKEND
from .quantum import (
    EigenDecomposition,
    HilbertLayout,
    embed_operator,
    evolve,
    hermitian_eigendecomposition,
    purity,
    reduce_to_qubit,
)
from .readout import ResponseMatrix, apply_response, correct_constrained, invert_unconstrained
from .spectroscopy import SpectroscopySweep, estimate_coupling_from_gap, sweep_spectrum
