"""Dressed-state spectroscopy of a qubit swept across a mode cluster.

Each grid point diagonalizes the single-excitation sector. The lines are the
transition frequencies from ``|g, 0>`` to the dressed states, sorted ascending,
and each line's visibility weight is its overlap squared with ``|e, 0>``.
Branches are identified purely by sorted order.
"""

from dataclasses import dataclass

import numpy as np

from .errors import InconclusiveExtractionError, ValidationError
from .hamiltonian import build_sector_hamiltonian
from .parallel import ordered_map


@dataclass(frozen=True)
class SpectroscopySweep:
    qubit_frequencies: np.ndarray  # (P,) GHz
    transition_frequencies: np.ndarray  # (P, N+1) GHz, ascending per row
    weights: np.ndarray  # (P, N+1)

    @property
    def n_lines(self):
        return self.transition_frequencies.shape[1]

    def lines(self, i):
        return list(zip(self.transition_frequencies[i], self.weights[i]))

    def csv_rows(self):
        for i, fq in enumerate(self.qubit_frequencies):
            for k in range(self.n_lines):
                yield fq, k, self.transition_frequencies[i, k], self.weights[i, k]


CSV_HEADER = ("qubit_frequency_ghz", "line_index", "transition_frequency_ghz", "weight")


def dressed_lines(cluster, qubit_frequency):
    hs = build_sector_hamiltonian(qubit_frequency, cluster)
    eig = hs.eigen()
    return hs.transition_frequencies(eig), eig.eigenvectors[0] ** 2


def sweep_spectrum(cluster, f_min, f_max, points, threads=1):
    if not f_min < f_max:
        raise ValidationError("f_min must be below f_max")
    if points < 2:
        raise ValidationError("a sweep needs at least 2 points")
    grid = np.linspace(f_min, f_max, int(points))
    rows = ordered_map(lambda f: dressed_lines(cluster, f), grid, threads)
    lines = np.array([r[0] for r in rows])
    weights = np.array([r[1] for r in rows])
    return SpectroscopySweep(grid, lines, weights)


def estimate_coupling_from_gap(sweep, branch_pair=(0, 1)):
    """Coupling (MHz) and resonance point (GHz) from the minimum gap of two branches.

    The coupling is half the minimum separation. Both the separation and its
    location are refined with a parabola through the three grid points around
    the discrete minimum.
    """
    a, b = branch_pair
    if not (0 <= a < sweep.n_lines and 0 <= b < sweep.n_lines) or a == b:
        raise ValidationError(f"invalid branch pair {branch_pair!r} for {sweep.n_lines} lines")
    gap = np.abs(sweep.transition_frequencies[:, b] - sweep.transition_frequencies[:, a]) * 1e3  # MHz
    i = int(np.argmin(gap))
    if i == 0 or i == gap.size - 1:
        raise InconclusiveExtractionError(
            f"gap between branches {a} and {b} is smallest at the sweep boundary; widen the sweep"
        )
    x = sweep.qubit_frequencies
    h_lo = (x[i] - x[i - 1]) * 1e3
    h_hi = (x[i + 1] - x[i]) * 1e3
    y0, y_lo, y_hi = gap[i], gap[i - 1], gap[i + 1]
    # parabola y = y0 + c1*u + c2*u^2 with u in MHz relative to x[i]
    d_lo = (y0 - y_lo) / h_lo
    d_hi = (y_hi - y0) / h_hi
    c2 = (d_hi - d_lo) / (h_lo + h_hi)
    c1 = d_hi - c2 * h_hi
    if c2 <= 0:
        return y0 / 2.0, float(x[i])
    u = -c1 / (2 * c2)
    y_min = y0 + c1 * u + c2 * u * u
    return float(y_min / 2.0), float(x[i] + u * 1e-3)
