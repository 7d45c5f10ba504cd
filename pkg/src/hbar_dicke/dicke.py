"""Closed-form collective quantities for a qubit exchanging one excitation
with a cluster: collective couplings, timed-Dicke states, static/timed
overlap fidelity, the static-to-timed transition time and the purity minimum.

Couplings and spacings are linear frequencies in MHz, times in us; any phase
is ``2 pi * f * t``. Qubit and mode frequencies are in GHz.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from . import kernels
from .device import ghz_to_angular, intra_cluster_spacings
from .errors import ValidationError


@dataclass(frozen=True)
class CollectiveCouplings:
    g_eff: float  # MHz, sqrt(sum g_n^2)
    g_bar: float  # MHz, mean g_n
    n_modes: int


def collective_couplings(cluster):
    g = cluster.couplings
    return CollectiveCouplings(float(np.sqrt(np.sum(g**2))), float(np.mean(g)), cluster.n_modes)


@dataclass(frozen=True)
class TimedDickeState:
    amplitudes: np.ndarray  # complex, one per mode
    detunings: np.ndarray  # rad/us, mode minus qubit
    time: float  # us


def mode_detunings(cluster, qubit_frequency):
    """Mode-minus-qubit detunings in rad/us."""
    # subtract before converting to keep the 4.7 GHz carrier out of the rounding
    return ghz_to_angular(cluster.frequencies - qubit_frequency)


def timed_dicke_state(cluster, qubit_frequency, t):
    g = cluster.couplings
    g_eff = math.sqrt(float(np.sum(g**2)))
    delta = mode_detunings(cluster, qubit_frequency)
    amps = g * np.exp(1j * delta * t) / g_eff
    return TimedDickeState(amps, delta, float(t))


def fidelity_exact(cluster, qubit_frequency, t):
    """``|<D_static|D(t)>|^2`` by direct summation; ``t`` may be an array."""
    g2 = cluster.couplings**2
    delta = mode_detunings(cluster, qubit_frequency)
    overlap = kernels.phase_sum(g2 / g2.sum(), delta, t)
    out = np.clip(np.abs(overlap) ** 2, 0.0, 1.0)
    return float(out[0]) if np.ndim(t) == 0 else out


def fidelity_closed_form(n_modes, spacing, t):
    """Equal-coupling, equal-spacing fidelity ``sin^2(N eta/2) / (N^2 sin^2(eta/2))``.

    ``eta = 2 pi * spacing * t``; identical to ``(1 - cos N eta) / (N^2 (1 - cos eta))``
    but free of cancellation at small ``eta``. Multiples of ``2 pi`` return 1.
    """
    eta = 2 * np.pi * spacing * np.asarray(t, dtype=float)
    s = np.sin(eta / 2)
    num = np.sin(n_modes * eta / 2)
    with np.errstate(divide="ignore", invalid="ignore"):
        f = num**2 / (n_modes**2 * s**2)
    f = np.where(np.abs(s) < 1e-8, 1.0, f)
    return float(f) if f.ndim == 0 else f


def fidelity_series(n_modes, spacing, t):
    """Second-order small-``eta`` expansion of :func:`fidelity_closed_form`."""
    eta = 2 * np.pi * spacing * np.asarray(t, dtype=float)
    return 1 + (1 - n_modes**2) * eta**2 / 12


def tau_timed(n_modes, spacing, fidelity_floor):
    """Static-to-timed transition time (us) from the quadratic fidelity expansion."""
    if not 0 < fidelity_floor < 1:
        raise ValidationError("fidelity_floor must lie in (0, 1)")
    if n_modes < 2:
        raise ValidationError("transition time needs at least 2 modes")
    if not spacing > 0:
        raise ValidationError("spacing must be positive")
    eta = 2 * math.sqrt(3 - 3 * fidelity_floor) / math.sqrt(n_modes**2 - 1)
    return eta / (2 * math.pi * spacing)


def tau_timed_root(n_modes, spacing, fidelity_floor):
    """Exact first crossing of ``fidelity_closed_form = fidelity_floor`` (us)."""
    if not 0 < fidelity_floor < 1:
        raise ValidationError("fidelity_floor must lie in (0, 1)")
    if n_modes < 2:
        raise ValidationError("transition time needs at least 2 modes")
    # fidelity decreases monotonically until its first zero at eta = 2 pi / N
    t_zero = 1.0 / (n_modes * spacing)
    return brentq(lambda t: fidelity_closed_form(n_modes, spacing, t) - fidelity_floor,
                  0.0, t_zero, xtol=1e-15, rtol=1e-14)


def tau_timed_exact(cluster, fidelity_floor, qubit_frequency=None, horizon=None, samples=4096):
    """First time ``fidelity_exact`` falls to ``fidelity_floor``, any spacings/couplings.

    Scans ``[0, horizon]`` for the first sign change and refines it with
    Brent's method. Returns ``None`` when the fidelity never drops that low
    (e.g. degenerate clusters).
    """
    if not 0 < fidelity_floor < 1:
        raise ValidationError("fidelity_floor must lie in (0, 1)")
    if qubit_frequency is None:
        qubit_frequency = float(np.mean(cluster.frequencies))
    spread = (cluster.frequencies.max() - cluster.frequencies.min()) * 1e3  # MHz
    if spread <= 0:
        return None
    if horizon is None:
        horizon = 4.0 / spread
    t = np.linspace(0.0, horizon, samples)
    f = fidelity_exact(cluster, qubit_frequency, t) - fidelity_floor
    below = np.flatnonzero(f < 0)
    if below.size == 0:
        return None
    j = int(below[0])
    return brentq(lambda x: fidelity_exact(cluster, qubit_frequency, x) - fidelity_floor,
                  t[j - 1], t[j], xtol=1e-15, rtol=1e-14)


def static_dicke_population(n_modes, mean_coupling, t):
    """``cos^2(sqrt(N) * 2 pi * g_bar * t)``."""
    if not mean_coupling > 0:
        raise ValidationError("mean_coupling must be positive")
    return np.cos(math.sqrt(n_modes) * 2 * math.pi * mean_coupling * np.asarray(t, dtype=float)) ** 2


def purity_analytic(g_eff, t):
    """``(3 + cos(4 * 2 pi * g_eff * t)) / 4``."""
    if not g_eff > 0:
        raise ValidationError("g_eff must be positive")
    return (3 + np.cos(4 * 2 * math.pi * g_eff * np.asarray(t, dtype=float))) / 4


def tau_min_purity(collective, use_mean=False):
    """First purity minimum, ``pi / (4 * 2 pi * g)`` in us.

    ``g`` is ``g_eff`` by default, or ``sqrt(N) * g_bar`` with ``use_mean``.
    """
    g = math.sqrt(collective.n_modes) * collective.g_bar if use_mean else collective.g_eff
    if not g > 0:
        raise ValidationError("couplings must be positive")
    return math.pi / (4 * 2 * math.pi * g)


def mean_spacing(cluster):
    return float(np.mean(intra_cluster_spacings(cluster)))


def bright_mode_frequency(cluster):
    """Coupling-weighted centre ``sum g_n^2 f_n / sum g_n^2`` (GHz).

    At this qubit frequency the first-order phase drift of the timed-Dicke
    overlap vanishes.
    """
    g2 = cluster.couplings**2
    return float(np.sum(g2 * cluster.frequencies) / g2.sum())
