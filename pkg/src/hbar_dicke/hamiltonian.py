"""Qubit-cluster Hamiltonians under the rotating-wave approximation.

Two builders share one convention: angular frequencies in rad/us, and a
numerical frame rotating at ``frame_reference`` (default: mean cluster mode
frequency), i.e. ``frame_reference * N_ex`` is subtracted so the 4.7 GHz
carrier drops out. RWA conserves ``N_ex`` so nothing observable changes.

* :func:`build_full_hamiltonian` works on a truncated Fock space described by a
  :class:`~hbar_dicke.quantum.HilbertLayout`.
* :func:`build_sector_hamiltonian` restricts to the single-excitation sector,
  basis ``[|e, 0>, |g, 1_1>, ..., |g, 1_N>]``. The anharmonic term annihilates
  every state of that sector, so it does not appear there.
"""

from dataclasses import dataclass

import numpy as np

from . import kernels
from .device import ghz_to_angular, mhz_to_angular
from .errors import DimensionError, ValidationError
from .quantum import EigenDecomposition, HilbertLayout, create, destroy, embed_operator

NORM_ATOL = 1e-10


def frame_reference_for(cluster):
    return float(np.mean(cluster.frequencies))


def build_full_hamiltonian(qubit, qubit_frequency, cluster, layout=None, frame_reference=None):
    """Truncated-Fock Hamiltonian of one qubit and one cluster (rad/us).

    ``qubit`` supplies the anharmonicity (MHz), which only matters for
    ``layout.qubit_levels >= 3``; pass ``None`` for a two-level qubit.
    """
    if layout is None:
        layout = HilbertLayout(2, (2,) * cluster.n_modes)
    if layout.n_modes != cluster.n_modes:
        raise DimensionError(
            f"layout has {layout.n_modes} mode factors but cluster {cluster.name} has {cluster.n_modes} modes"
        )
    if frame_reference is None:
        frame_reference = frame_reference_for(cluster)

    d = layout.qubit_levels
    a = embed_operator(destroy(d), 0, layout)
    ad = a.conj().T
    H = float(ghz_to_angular(qubit_frequency - frame_reference)) * (ad @ a)
    if d >= 3 and qubit is not None:
        H = H + 0.5 * float(mhz_to_angular(qubit.anharmonicity)) * (ad @ ad @ a @ a)

    detunings = ghz_to_angular(cluster.frequencies - frame_reference)
    couplings = mhz_to_angular(cluster.couplings)
    for n, cutoff in enumerate(layout.mode_cutoffs):
        f = embed_operator(destroy(cutoff), n + 1, layout)
        fd = embed_operator(create(cutoff), n + 1, layout)
        H = H + detunings[n] * (fd @ f) + couplings[n] * (fd @ a + f @ ad)
    return 0.5 * (H + H.conj().T)


def excitation_number_operator(layout):
    return np.diag(layout.excitation_numbers.astype(complex))


def single_excitation_indices(layout):
    """Full-space indices of ``[|e,0>, |g,1_1>, ..., |g,1_N>]`` in sector order."""
    n = layout.n_modes
    idx = [layout.index((1,) + (0,) * n)]
    for k in range(n):
        occ = [0] * (n + 1)
        occ[k + 1] = 1
        idx.append(layout.index(occ))
    return np.array(idx)


@dataclass(frozen=True)
class SectorHamiltonian:
    matrix: np.ndarray  # (N+1, N+1) real symmetric, rad/us
    qubit_frequency: float  # GHz
    cluster: object
    frame_reference: float  # GHz

    @property
    def dim(self):
        return self.matrix.shape[0]

    def eigen(self):
        w, V = np.linalg.eigh(self.matrix)
        return EigenDecomposition(eigenvalues=w, eigenvectors=V)

    def transition_frequencies(self, eig=None):
        """Ground-to-dressed-state transition frequencies in GHz, ascending."""
        if eig is None:
            eig = self.eigen()
        return eig.eigenvalues / (2e3 * np.pi) + self.frame_reference


def build_sector_hamiltonian(qubit_frequency, cluster, frame_reference=None):
    if frame_reference is None:
        frame_reference = frame_reference_for(cluster)
    n = cluster.n_modes
    h = np.zeros((n + 1, n + 1))
    h[0, 0] = ghz_to_angular(qubit_frequency - frame_reference)
    h[np.arange(1, n + 1), np.arange(1, n + 1)] = ghz_to_angular(cluster.frequencies - frame_reference)
    g = mhz_to_angular(cluster.couplings)
    h[0, 1:] = g
    h[1:, 0] = g
    return SectorHamiltonian(h, float(qubit_frequency), cluster, float(frame_reference))


@dataclass(frozen=True)
class SectorState:
    """Single-excitation amplitudes: ``p`` on ``|e,0>``, ``theta[n]`` on ``|g,1_n>``."""

    p: complex
    theta: np.ndarray

    def __post_init__(self):
        norm = abs(self.p) ** 2 + float(np.sum(np.abs(self.theta) ** 2))
        if abs(norm - 1) > NORM_ATOL:
            raise ValidationError(f"sector state norm {norm:.12g} differs from 1")

    @classmethod
    def excited(cls, n_modes):
        return cls(1.0 + 0j, np.zeros(n_modes, dtype=complex))

    def as_vector(self):
        return np.concatenate([[self.p], self.theta])

    @property
    def qubit_population(self):
        return abs(self.p) ** 2


def sector_amplitudes(hs, times, eig=None, initial=None):
    """Evolve a sector state on a time grid.

    Returns an array of shape ``(len(times), N+1)``; column 0 is ``p(t)`` and
    the remaining columns are the mode amplitudes. Default start is ``|e,0>``.
    """
    if eig is None:
        eig = hs.eigen()
    V = eig.eigenvectors
    psi0 = np.zeros(hs.dim, dtype=complex)
    if initial is None:
        psi0[0] = 1.0
    else:
        psi0[:] = initial.as_vector() if isinstance(initial, SectorState) else initial
    weights = V * (V.T @ psi0)
    return kernels.phase_sum_rows(weights, -eig.eigenvalues, times)


def excited_state_amplitude(hs, times, eig=None):
    """``p(t)`` for the start state ``|e,0>`` only (the Rabi-grid hot path)."""
    if eig is None:
        eig = hs.eigen()
    w0 = eig.eigenvectors[0] ** 2
    return kernels.phase_sum(w0, -eig.eigenvalues, times)


def sector_to_full(amplitudes, layout):
    """Embed sector amplitudes ``[p, theta_1..theta_N]`` into the full Fock space."""
    amplitudes = np.asarray(amplitudes, dtype=complex)
    if amplitudes.shape != (layout.n_modes + 1,):
        raise DimensionError("sector vector length does not match layout mode count")
    psi = np.zeros(layout.dim, dtype=complex)
    psi[single_excitation_indices(layout)] = amplitudes
    return psi
