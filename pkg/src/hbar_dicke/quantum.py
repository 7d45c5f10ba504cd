"""Dense state-vector primitives: Hilbert layout, operator embedding,
Hermitian eigendecomposition, exact propagation and the qubit partial trace.

Operators and kets are plain complex ``numpy`` arrays; a :class:`HilbertLayout`
travels alongside them to fix the factor order. The qubit factor always comes
first, followed by the modes in cluster order, and basis indices are row-major
over that factor list (the last mode varies fastest).
"""

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import kernels
from .errors import DimensionError, LeakageError, ValidationError

HERMITIAN_ATOL = 1e-12
LEAKAGE_THRESHOLD = 1e-10


@dataclass(frozen=True)
class HilbertLayout:
    """Factor structure ``qubit (x) mode_1 (x) ... (x) mode_N``.

    ``qubit_levels`` is the transmon truncation ``d``; ``mode_cutoffs[n]`` is
    the number of Fock levels kept for mode ``n`` (max phonon number + 1).
    """

    qubit_levels: int = 2
    mode_cutoffs: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "mode_cutoffs", tuple(int(c) for c in self.mode_cutoffs))
        if int(self.qubit_levels) < 2:
            raise ValidationError("qubit_levels must be >= 2")
        if any(c < 2 for c in self.mode_cutoffs):
            raise ValidationError("every mode cutoff must be >= 2")

    @property
    def dims(self):
        return (int(self.qubit_levels),) + self.mode_cutoffs

    @property
    def dim(self):
        return int(np.prod(self.dims))

    @property
    def n_modes(self):
        return len(self.mode_cutoffs)

    def index(self, occupations):
        """Basis index of an occupation tuple ``(qubit_level, n_1, ..., n_N)``."""
        occupations = tuple(occupations)
        if len(occupations) != len(self.dims):
            raise DimensionError(f"expected {len(self.dims)} occupations, got {len(occupations)}")
        return int(np.ravel_multi_index(occupations, self.dims))

    def occupations(self, index):
        return tuple(int(i) for i in np.unravel_index(index, self.dims))

    @cached_property
    def basis(self):
        """``(dim, n_factors)`` array of occupation tuples in index order."""
        grids = np.indices(self.dims).reshape(len(self.dims), -1)
        return grids.T.copy()

    @cached_property
    def excitation_numbers(self):
        """Total excitation number (qubit level + phonons) of each basis state."""
        return self.basis.sum(axis=1)


def destroy(n):
    """Truncated annihilation operator on an ``n``-level factor."""
    return np.diag(np.sqrt(np.arange(1, n, dtype=float)), k=1).astype(complex)


def create(n):
    return destroy(n).conj().T


def embed_operator(local, factor_index, layout):
    """Return ``I (x) ... (x) local (x) ... (x) I`` in layout ordering."""
    local = np.asarray(local)
    dims = layout.dims
    if not 0 <= factor_index < len(dims):
        raise DimensionError(f"factor index {factor_index} out of range for {len(dims)} factors")
    if local.shape != (dims[factor_index], dims[factor_index]):
        raise DimensionError(
            f"local operator shape {local.shape} does not match factor dimension {dims[factor_index]}"
        )
    left = int(np.prod(dims[:factor_index]))
    right = int(np.prod(dims[factor_index + 1:]))
    return np.kron(np.kron(np.eye(left), local), np.eye(right))


def hermiticity_error(H):
    H = np.asarray(H)
    return float(np.max(np.abs(H - H.conj().T))) if H.size else 0.0


@dataclass(frozen=True)
class EigenDecomposition:
    """Ascending eigenvalues with eigenvectors as columns (``H = V diag(w) V^dagger``)."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def dim(self):
        return self.eigenvalues.shape[0]

    def reconstruct(self):
        V = self.eigenvectors
        return (V * self.eigenvalues) @ V.conj().T


def hermitian_eigendecomposition(H, atol=HERMITIAN_ATOL):
    H = np.asarray(H)
    if H.ndim != 2 or H.shape[0] != H.shape[1]:
        raise DimensionError(f"operator must be square, got shape {H.shape}")
    err = hermiticity_error(H)
    if err > atol:
        raise ValidationError(f"operator is not Hermitian (max |H - H^dagger| = {err:.3e})")
    w, V = np.linalg.eigh(H)
    return EigenDecomposition(eigenvalues=w, eigenvectors=V)


def evolve(psi0, eig, t):
    """Exact propagation ``V exp(-i diag(w) t) V^dagger psi0`` (t in us, w in rad/us)."""
    psi0 = np.asarray(psi0, dtype=complex)
    if psi0.shape != (eig.dim,):
        raise DimensionError(f"state of length {psi0.shape} does not match operator dimension {eig.dim}")
    V = eig.eigenvectors
    coeffs = V.conj().T @ psi0
    return V @ (np.exp(-1j * eig.eigenvalues * t) * coeffs)


def evolve_many(psi0, eig, times):
    """:func:`evolve` on a whole time grid; returns shape ``(len(times), dim)``."""
    psi0 = np.asarray(psi0, dtype=complex)
    if psi0.shape != (eig.dim,):
        raise DimensionError(f"state of length {psi0.shape} does not match operator dimension {eig.dim}")
    V = eig.eigenvectors
    weights = V * (V.conj().T @ psi0)
    return kernels.phase_sum_rows(weights, -eig.eigenvalues, times)


def reduce_to_qubit(psi, layout, leakage_threshold=LEAKAGE_THRESHOLD):
    """Trace out the modes and return the 2x2 qubit density matrix.

    Population above the first excited qubit level counts as leakage; more
    than ``leakage_threshold`` raises :class:`LeakageError`.
    """
    psi = np.asarray(psi, dtype=complex)
    if psi.shape != (layout.dim,):
        raise DimensionError(f"state of length {psi.shape} does not match layout dimension {layout.dim}")
    m = psi.reshape(layout.qubit_levels, -1)
    rho_full = m @ m.conj().T
    if layout.qubit_levels > 2:
        leaked = float(np.real(np.trace(rho_full[2:, 2:])))
        if leaked > leakage_threshold:
            raise LeakageError(leaked)
    rho = rho_full[:2, :2]
    return 0.5 * (rho + rho.conj().T)


def purity(rho):
    """``tr(rho^2)`` of a density matrix."""
    rho = np.asarray(rho)
    # tr(rho^2) = sum |rho_ij|^2 for Hermitian rho
    return float(np.sum(np.abs(rho) ** 2))
