"""Vacuum Rabi dynamics from ``|e, 0>``: population and purity traces, and
two-dimensional (qubit frequency x time) Rabi grids.

Evolution is exact within the single-excitation sector. The qubit reduced
state is diagonal there, so the purity follows from the excited population
alone: ``P = 2 p^2 + 1 - 2 p`` with ``p = |p(t)|^2``.
"""

from dataclasses import dataclass

import numpy as np

from .errors import ValidationError
from .hamiltonian import build_sector_hamiltonian, excited_state_amplitude
from .parallel import ordered_map

DEFAULT_T_MAX_US = 1.0
DEFAULT_T_POINTS = 201
MASK_THRESHOLD = 1e-3


def time_grid(t_max, steps):
    """Uniform grid on ``[0, t_max]`` including both endpoints."""
    if steps < 2:
        raise ValidationError("time grid needs at least 2 points")
    if not t_max > 0:
        raise ValidationError("t_max must be positive")
    return np.linspace(0.0, float(t_max), int(steps))


def purity_from_population(p_excited):
    p = np.asarray(p_excited, dtype=float)
    return 2 * p**2 + 1 - 2 * p


@dataclass(frozen=True)
class PopulationTrace:
    times: np.ndarray  # us
    p_excited: np.ndarray
    purity: np.ndarray
    envelope_applied: bool = False

    def first_purity_minimum(self):
        """``(time, purity)`` at the first interior local minimum of the purity."""
        y = self.purity
        interior = (y[1:-1] < y[:-2]) & (y[1:-1] <= y[2:])
        hits = np.flatnonzero(interior)
        i = int(hits[0] + 1) if hits.size else int(np.argmin(y))
        return float(self.times[i]), float(y[i])


def _excited_population(cluster, qubit_frequency, times):
    hs = build_sector_hamiltonian(qubit_frequency, cluster)
    p = excited_state_amplitude(hs, times)
    pop = np.clip(np.abs(p) ** 2, 0.0, 1.0)
    # the propagator is exactly the identity at t = 0; drop eigenvector rounding there
    pop[times == 0] = 1.0
    return pop


def simulate_trace(cluster, qubit_frequency, t_max=DEFAULT_T_MAX_US, steps=DEFAULT_T_POINTS, t1=None):
    """Excited population and qubit purity after starting in ``|e, 0>``.

    With ``t1`` (us) the population is multiplied by ``exp(-t/t1)`` and the
    purity is recomputed from the damped population.
    """
    times = time_grid(t_max, steps)
    pop = _excited_population(cluster, qubit_frequency, times)
    if t1 is not None:
        if not t1 > 0:
            raise ValidationError("t1 must be positive")
        pop = pop * np.exp(-times / t1)
    return PopulationTrace(times, pop, purity_from_population(pop), t1 is not None)


@dataclass(frozen=True)
class RabiGrid:
    qubit_frequencies: np.ndarray  # GHz
    times: np.ndarray  # us
    p_excited: np.ndarray  # (frequencies, times)
    envelope_applied: bool = False

    def csv_rows(self):
        for i, f in enumerate(self.qubit_frequencies):
            for j, t in enumerate(self.times):
                yield f, t, self.p_excited[i, j]


RABI_CSV_HEADER = ("frequency_ghz", "time_us", "p_excited")
TRACE_CSV_HEADER = ("time_us", "p_excited", "purity")


def simulate_rabi_grid(cluster, f_min, f_max, f_points, t_max=DEFAULT_T_MAX_US,
                       t_points=DEFAULT_T_POINTS, t1=None, threads=1):
    if not f_min < f_max:
        raise ValidationError("f_min must be below f_max")
    if f_points < 2:
        raise ValidationError("frequency grid needs at least 2 points")
    freqs = np.linspace(f_min, f_max, int(f_points))
    times = time_grid(t_max, t_points)
    envelope = None
    if t1 is not None:
        if not t1 > 0:
            raise ValidationError("t1 must be positive")
        envelope = np.exp(-times / t1)

    def row(f):
        pop = _excited_population(cluster, f, times)
        return pop if envelope is None else pop * envelope

    rows = ordered_map(row, freqs, threads)
    return RabiGrid(freqs, times, np.vstack(rows), t1 is not None)


def normalized_collective_population(trace, n_modes, mean_coupling, threshold=MASK_THRESHOLD):
    """Excited population divided by ``cos^2(sqrt(N) * 2 pi * g_bar * t)``.

    Samples whose denominator falls below ``threshold`` are returned as NaN.
    """
    if not mean_coupling > 0:
        raise ValidationError("mean_coupling must be positive")
    denom = np.cos(np.sqrt(n_modes) * 2 * np.pi * mean_coupling * trace.times) ** 2
    out = np.full(denom.shape, np.nan)
    ok = denom >= threshold
    out[ok] = trace.p_excited[ok] / denom[ok]
    return out
